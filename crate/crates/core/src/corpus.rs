//! Built-in graphs: small MPGs, the 7-semi-MPG and annular reconstructions, and
//! hosts carrying the reducible-configuration templates.

use alloc::vec;
use alloc::vec::Vec;

use crate::embedding::{Embedding, Vertex};
use crate::template;
use crate::tiling::{Color, EdgeColor, Mode, Tiling};

#[derive(Clone, Debug)]
pub struct CorpusGraph {
    pub name: &'static str,
    pub embedding: Embedding,
}

fn build(n: usize, faces: &[Vec<Vertex>], outer: &[usize]) -> Embedding {
    Embedding::from_faces(n, faces, outer).expect("built-in graph is a valid embedding")
}

pub fn k4() -> Embedding {
    build(
        4,
        &[vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1], vec![1, 3, 2]],
        &[],
    )
}

pub fn octahedron() -> Embedding {
    bipyramid(4)
}

/// Two poles `0` and `k + 1` over the equator `1..=k`.
pub fn bipyramid(k: usize) -> Embedding {
    assert!(k >= 3);
    let s = k + 1;
    let mut faces = Vec::new();
    for i in 0..k {
        let (a, b) = (1 + i, 1 + (i + 1) % k);
        faces.push(vec![0, a, b]);
        faces.push(vec![s, b, a]);
    }
    build(k + 2, &faces, &[])
}

/// Top `0`, upper ring `1..=5`, lower ring `6..=10`, bottom `11`.
pub fn icosahedron() -> Embedding {
    build(12, &icosahedron_faces(), &[])
}

fn icosahedron_faces() -> Vec<Vec<Vertex>> {
    let u = |i: usize| 1 + i % 5;
    let l = |i: usize| 6 + i % 5;
    let mut faces = Vec::new();
    for i in 0..5 {
        faces.push(vec![0, u(i), u(i + 1)]);
        faces.push(vec![u(i), l(i), u(i + 1)]);
        faces.push(vec![u(i + 1), l(i), l(i + 1)]);
        faces.push(vec![11, l(i + 1), l(i)]);
    }
    faces
}

/// The icosahedron with its top vertex deleted: a 5-semi-MPG on 11 vertices.
pub fn icosahedron_minus_vertex() -> Embedding {
    let mut faces: Vec<Vec<Vertex>> = icosahedron_faces()
        .into_iter()
        .filter(|f| !f.contains(&0))
        .map(|f| f.into_iter().map(|v| v - 1).collect())
        .collect();
    faces.push(vec![0, 1, 2, 3, 4]);
    let outer = faces.len() - 1;
    build(11, &faces, &[outer])
}

/// A 7-semi-MPG: outer 7-gon `v0..v6`, interior `v7, v8, va = 9, vb = 10, vc = 11`.
pub fn seven_semi() -> Embedding {
    let (a, b, c) = (9, 10, 11);
    let faces = vec![
        vec![0, 1, 8],
        vec![1, 2, 8],
        vec![2, c, 8],
        vec![2, a, c],
        vec![2, 3, a],
        vec![3, 4, a],
        vec![4, 5, a],
        vec![5, b, a],
        vec![5, 6, b],
        vec![6, 7, b],
        vec![7, c, b],
        vec![a, b, c],
        vec![7, 8, c],
        vec![0, 8, 7],
        vec![6, 0, 7],
        vec![6, 5, 4, 3, 2, 1, 0],
    ];
    build(12, &faces, &[15])
}

/// The green edges of the seeded single(green) tiling of [`seven_semi`]; they
/// contain the 5-cycle `v5-v6-v7-vc-va`.
pub const SEVEN_SEMI_GREEN: [(Vertex, Vertex); 8] =
    [(5, 6), (6, 7), (7, 11), (9, 11), (5, 9), (2, 8), (0, 8), (3, 9)];

/// A (7,5)-semi-MPG: outer 7-gon `0..=6`, inner 5-gon `7..=11`, interior
/// vertices `12..=15`.
pub fn annular() -> Embedding {
    let faces = vec![
        vec![0, 1, 7],
        vec![0, 7, 6],
        vec![1, 2, 7],
        vec![2, 3, 7],
        vec![3, 4, 15],
        vec![3, 15, 7],
        vec![4, 5, 7],
        vec![4, 7, 15],
        vec![5, 6, 12],
        vec![5, 12, 14],
        vec![5, 14, 10],
        vec![5, 10, 9],
        vec![5, 9, 8],
        vec![5, 8, 7],
        vec![6, 7, 11],
        vec![6, 11, 10],
        vec![6, 10, 13],
        vec![6, 13, 12],
        vec![10, 14, 12],
        vec![10, 12, 13],
        vec![0, 6, 5, 4, 3, 2, 1],
        vec![7, 8, 9, 10, 11],
    ];
    build(16, &faces, &[20, 21])
}

/// The seeded single(green) tiling of [`annular`]; the outer 7-gon is a green
/// odd cycle.
pub const ANNULAR_GREEN: [(Vertex, Vertex); 15] = [
    (0, 1),
    (0, 6),
    (1, 2),
    (2, 3),
    (3, 4),
    (4, 5),
    (5, 6),
    (5, 8),
    (5, 14),
    (6, 13),
    (7, 11),
    (7, 15),
    (9, 10),
    (10, 11),
    (10, 12),
];

/// The single(green) tiling whose green edges are `green`.
pub fn seeded_green(e: &Embedding, green: &[(Vertex, Vertex)]) -> Tiling {
    let colors = e
        .edges()
        .iter()
        .map(|p| if green.contains(p) { EdgeColor::Green } else { EdgeColor::Black })
        .collect();
    Tiling::new(e, Mode::Single(Color::Green), colors).expect("seeded tiling is valid")
}

pub fn all() -> Vec<CorpusGraph> {
    let mut out = vec![
        CorpusGraph { name: "k4", embedding: k4() },
        CorpusGraph { name: "bipyramid3", embedding: bipyramid(3) },
        CorpusGraph { name: "octahedron", embedding: octahedron() },
        CorpusGraph { name: "bipyramid5", embedding: bipyramid(5) },
        CorpusGraph { name: "icosahedron", embedding: icosahedron() },
        CorpusGraph { name: "icosahedron-minus-vertex", embedding: icosahedron_minus_vertex() },
        CorpusGraph { name: "seven-semi", embedding: seven_semi() },
        CorpusGraph { name: "annular", embedding: annular() },
    ];
    out.extend(template::hosts());
    out
}

/// Corpus graphs that are MPGs.
pub fn mpgs() -> Vec<CorpusGraph> {
    all().into_iter().filter(|g| g.embedding.is_mpg()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::{self, Color};

    #[test]
    fn annular_shape_and_seed() {
        let e = annular();
        let sizes: Vec<usize> = e.outer_facets().iter().map(|f| f.len()).collect();
        assert_eq!(sizes, vec![7, 5]);
        assert_eq!(e.vertex_count(), 16);
        let t = seeded_green(&e, &ANNULAR_GREEN);
        let cyc = tiling::find_mono_odd_cycle(&e, &t, Color::Green).unwrap();
        assert!(crate::embedding::same_cycle(&cyc, &[0, 1, 2, 3, 4, 5, 6]) || cyc.len() == 7);
    }

    #[test]
    fn seven_semi_shape() {
        let e = seven_semi();
        assert_eq!((e.vertex_count(), e.edge_count(), e.triangle_count()), (12, 26, 15));
        assert_eq!(e.outer_facets()[0].len(), 7);
    }

    #[test]
    fn seeded_green_tiling_is_valid_and_holds_the_five_cycle() {
        let e = seven_semi();
        let t = seeded_green(&e, &SEVEN_SEMI_GREEN);
        let mut cyc = tiling::find_mono_odd_cycle(&e, &t, Color::Green).unwrap();
        cyc.sort();
        assert_eq!(cyc, vec![5, 6, 7, 9, 11]);
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = all().iter().map(|g| g.name).collect();
        names.sort();
        let n = names.len();
        names.dedup();
        assert_eq!(names.len(), n);
    }
}
