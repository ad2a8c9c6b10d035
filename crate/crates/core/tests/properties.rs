use std::collections::BTreeSet;

use proptest::prelude::*;
use rgb_tiling::atlas::{equal_parity, SymmetryGroup};
use rgb_tiling::coloring;
use rgb_tiling::corpus;
use rgb_tiling::dual::{ecs_canal, extract_canal_system};
use rgb_tiling::format;
use rgb_tiling::tiling::{self, permute, synonym_canonical, Color, EdgeColor, Mode, PERMUTATIONS};
use rgb_tiling::{Embedding, Vertex};

/// A random MPG grown from K4 by vertex insertions into faces and edge flips.
fn random_mpg(choices: &[u32], inserts: usize) -> Embedding {
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]];
    let mut n = 4;
    let mut it = choices.iter().map(|&c| c as usize).cycle();
    for _ in 0..inserts {
        let f = it.next().unwrap() % faces.len();
        let [a, b, c] = faces[f];
        faces[f] = [a, b, n];
        faces.push([b, c, n]);
        faces.push([c, a, n]);
        n += 1;
    }
    for _ in 0..choices.len() {
        let f1 = it.next().unwrap() % faces.len();
        let k = it.next().unwrap() % 3;
        let (u, v, p) = (faces[f1][k], faces[f1][(k + 1) % 3], faces[f1][(k + 2) % 3]);
        let f2 = faces
            .iter()
            .position(|f| (0..3).any(|m| f[m] == v && f[(m + 1) % 3] == u))
            .unwrap();
        let m = (0..3).find(|&m| faces[f2][m] == v).unwrap();
        let q = faces[f2][(m + 2) % 3];
        let adjacent = faces.iter().any(|f| f.contains(&p) && f.contains(&q));
        if !adjacent {
            faces[f1] = [u, q, p];
            faces[f2] = [v, p, q];
        }
    }
    let faces: Vec<Vec<Vertex>> = faces.iter().map(|f| f.to_vec()).collect();
    Embedding::from_faces(n, &faces, &[]).unwrap()
}

fn mpg_strategy() -> impl Strategy<Value = Embedding> {
    (prop::collection::vec(any::<u32>(), 1..12), 0usize..5).prop_map(|(c, k)| random_mpg(&c, k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_triangulations_are_mpgs(e in mpg_strategy()) {
        prop_assert!(e.is_mpg());
        prop_assert_eq!(e.edge_count(), 3 * e.vertex_count() - 6);
    }

    #[test]
    fn colorings_are_four_times_clean_tilings(e in mpg_strategy()) {
        let clean = tiling::enumerate(&e, Mode::Rgb, None)
            .iter()
            .filter(|t| !tiling::has_mono_odd_cycle(&e, t))
            .count();
        prop_assert_eq!(coloring::count(&e), 4 * clean);
    }

    #[test]
    fn induced_tilings_are_clean_and_give_back_a_coloring(e in mpg_strategy(), pick in any::<usize>()) {
        let all = coloring::enumerate(&e, Some(64));
        let f = &all[pick % all.len()];
        let t = tiling::induce_tiling(&e, f).unwrap();
        tiling::validate(&e, &t).unwrap();
        prop_assert!(!tiling::has_mono_odd_cycle(&e, &t));
        let g = tiling::coloring_from_rgb(&e, &t).unwrap();
        prop_assert!(g.is_proper(&e));
        // extraction fixes one color class; the other two follow the chosen 2-colorings
        let back = tiling::induce_tiling(&e, &g).unwrap();
        prop_assert!(Color::ALL.iter().any(|&c| PERMUTATIONS.iter().any(|p| permute(&back, p).single_view(c) == t.single_view(c))));
    }

    #[test]
    fn synonyms_share_a_canonical_form(e in mpg_strategy(), pick in any::<usize>(), p in 0usize..6) {
        let all = tiling::enumerate(&e, Mode::Rgb, Some(64));
        let t = &all[pick % all.len()];
        let s = permute(t, &PERMUTATIONS[p]);
        tiling::validate(&e, &s).unwrap();
        prop_assert_eq!(synonym_canonical(&s), synonym_canonical(t));
        prop_assert_eq!(synonym_canonical(&synonym_canonical(t)), synonym_canonical(t));
    }

    #[test]
    fn canal_ecs_is_a_valid_involution(e in mpg_strategy(), pick in any::<usize>(), c in 0usize..3) {
        let all = tiling::enumerate(&e, Mode::Rgb, Some(64));
        let t = &all[pick % all.len()];
        let c = Color::ALL[c];
        for line in extract_canal_system(&e, t, c).unwrap().lines {
            let s = ecs_canal(&e, t, &line).unwrap();
            tiling::validate(&e, &s).unwrap();
            prop_assert_eq!(&ecs_canal(&e, &s, &line).unwrap(), t);
        }
    }

    #[test]
    fn graph_format_round_trips(e in mpg_strategy()) {
        let text = format::write_graph(&e);
        let back = format::parse_graph(&text).unwrap();
        prop_assert_eq!(format::write_graph(&back), text);
    }

    #[test]
    fn tiling_format_round_trips(e in mpg_strategy(), pick in any::<usize>()) {
        let all = tiling::enumerate(&e, Mode::Rgb, Some(64));
        let t = &all[pick % all.len()];
        prop_assert_eq!(&format::parse_tiling(&e, &format::write_tiling(&e, t)).unwrap(), t);
    }

    #[test]
    fn word_classes_are_invariants(word in prop::collection::vec(0usize..3, 6), g in 0usize..4, p in 0usize..6) {
        let word: Vec<EdgeColor> = word.into_iter().map(|i| Color::ALL[i].edge()).collect();
        let sym = SymmetryGroup::klein4();
        let map = &sym.maps[g];
        let perm = sym.edge_perm(map);
        let mut image = word.clone();
        for (i, &c) in word.iter().enumerate() {
            image[perm[i]] = tiling::permute_color(&PERMUTATIONS[p], c);
        }
        prop_assert_eq!(sym.word_class(&image), sym.word_class(&word));
        prop_assert_eq!(equal_parity(&image), equal_parity(&word));
    }
}

#[test]
fn corpus_tiling_boundaries_have_equal_parity() {
    // every facet-bounded triangle and every vertex link is a tiled disk
    for g in corpus::mpgs() {
        let e = &g.embedding;
        if e.vertex_count() > 12 {
            continue;
        }
        for t in tiling::enumerate(e, Mode::Rgb, Some(200)) {
            for v in 0..e.vertex_count() {
                let w = tiling::boundary_word(e, &t, e.rotation(v)).unwrap();
                assert!(w.equal_parity(), "{} at {v}", g.name);
            }
        }
    }
}

#[test]
fn corpus_names_cover_the_shipped_graphs() {
    let names: BTreeSet<&str> = corpus::all().iter().map(|g| g.name).collect();
    for n in ["k4", "octahedron", "icosahedron", "seven-semi", "annular"] {
        assert!(names.contains(n), "{n}");
    }
}
