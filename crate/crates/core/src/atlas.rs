//! Atlases: boundary colorings and tiling states around a region, classified up
//! to synonyms and the region's symmetries.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{Embedding, Vertex};
use crate::explore::{self, ExploreConfig, Move};
use crate::kempe::{self, ChainStatus, DiamondClass, KempeError};
use crate::region::RegionSpec;
use crate::template::Instance;
use crate::tiling::{self, permute_color, Color, EdgeColor, Mode, Tiling, PERMUTATIONS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtlasError {
    #[error("the region has no inner edges")]
    EmptyRegion,
    #[error("more than {0} tilings enumerated")]
    CapExceeded(usize),
    #[error("atlases are over different regions")]
    RegionMismatch,
    #[error(transparent)]
    Kempe(#[from] KempeError),
}

/// Permutations of a region's vertices: Ω positions `0..n`, then TD vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryGroup {
    pub name: String,
    pub n: usize,
    pub maps: Vec<Vec<usize>>,
}

impl SymmetryGroup {
    pub fn trivial(n: usize) -> Self {
        SymmetryGroup {
            name: "trivial".into(),
            n,
            maps: vec![(0..n).collect()],
        }
    }

    pub fn cyclic(n: usize) -> Self {
        SymmetryGroup {
            name: "cyclic".into(),
            n,
            maps: (0..n).map(|s| (0..n).map(|i| (i + s) % n).collect()).collect(),
        }
    }

    pub fn dihedral(n: usize) -> Self {
        let mut maps = SymmetryGroup::cyclic(n).maps;
        maps.extend((0..n).map(|s| (0..n).map(|i| (s + n - i) % n).collect()));
        SymmetryGroup {
            name: "dihedral".into(),
            n,
            maps,
        }
    }

    /// The reflections of the hexagon d v1 v2 c v4 v5 around an adjacent
    /// degree-5 pair: vertical (fixes d and c), horizontal (swaps them) and both.
    pub fn klein4() -> Self {
        SymmetryGroup {
            name: "klein4".into(),
            n: 6,
            maps: vec![
                vec![0, 1, 2, 3, 4, 5],
                vec![0, 5, 4, 3, 2, 1],
                vec![3, 2, 1, 0, 5, 4],
                vec![3, 4, 5, 0, 1, 2],
            ],
        }
    }

    pub fn parse(name: &str, n: usize) -> Option<Self> {
        match name {
            "trivial" | "none" => Some(SymmetryGroup::trivial(n)),
            "cyclic" => Some(SymmetryGroup::cyclic(n)),
            "dihedral" => Some(SymmetryGroup::dihedral(n)),
            "klein4" if n == 6 => Some(SymmetryGroup::klein4()),
            _ => None,
        }
    }

    /// Dihedral maps of Ω that extend to automorphisms of Σ.
    pub fn of_region(e: &Embedding, r: &RegionSpec) -> Self {
        let n = r.omega.len();
        let m = r.td.len();
        let local = local_ids(r);
        let edges: BTreeSet<(usize, usize)> = r
            .sigma_edges()
            .iter()
            .map(|&x| {
                let (u, v) = e.endpoints(x);
                sorted_pair(local[&u], local[&v])
            })
            .collect();
        let mut maps = Vec::new();
        for d in SymmetryGroup::dihedral(n).maps {
            let mut perm: Vec<usize> = (0..m).collect();
            loop {
                let g: Vec<usize> = d.iter().copied().chain(perm.iter().map(|&j| n + j)).collect();
                if edges.iter().all(|&(u, v)| edges.contains(&sorted_pair(g[u], g[v]))) {
                    maps.push(g);
                }
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
        SymmetryGroup {
            name: "region".into(),
            n,
            maps,
        }
    }

    pub fn order(&self) -> usize {
        self.maps.len()
    }

    /// Where each Ω edge position goes; edge `i` joins positions `i` and `i + 1`.
    pub fn edge_perm(&self, g: &[usize]) -> Vec<usize> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let (a, b) = (g[i], g[(i + 1) % n]);
                if (a + 1) % n == b {
                    a
                } else {
                    b
                }
            })
            .collect()
    }

    pub fn is_closed(&self) -> bool {
        let set: BTreeSet<&Vec<usize>> = self.maps.iter().collect();
        self.maps.iter().all(|f| {
            self.maps
                .iter()
                .all(|g| set.contains(&f.iter().map(|&i| g[i]).collect::<Vec<_>>()))
        })
    }

    fn act_word(&self, g: &[usize], word: &[EdgeColor]) -> Vec<EdgeColor> {
        let p = self.edge_perm(g);
        let mut out = word.to_vec();
        for (i, &c) in word.iter().enumerate() {
            out[p[i]] = c;
        }
        out
    }

    /// The least image of `word` under synonyms and the group.
    pub fn word_class(&self, word: &[EdgeColor]) -> Vec<EdgeColor> {
        self.maps
            .iter()
            .flat_map(|g| {
                let w = self.act_word(g, word);
                PERMUTATIONS
                    .iter()
                    .map(move |p| w.iter().map(|&c| permute_color(p, c)).collect::<Vec<_>>())
            })
            .min()
            .expect("the group contains the identity")
    }
}

fn sorted_pair(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("a larger element");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn local_ids(r: &RegionSpec) -> BTreeMap<Vertex, usize> {
    r.omega
        .iter()
        .chain(&r.td)
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect()
}

/// Color counts sorted ascending.
pub fn sorted_counts(word: &[EdgeColor]) -> [usize; 3] {
    let mut c = [0; 3];
    for x in word {
        if let Some(k) = x.color() {
            c[k as usize] += 1;
        }
    }
    c.sort_unstable();
    c
}

pub fn equal_parity(word: &[EdgeColor]) -> bool {
    let c = sorted_counts(word);
    word.iter().all(|x| x.color().is_some()) && c[0] % 2 == c[1] % 2 && c[1] % 2 == c[2] % 2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryClass {
    pub representative: Vec<EdgeColor>,
    pub counts: [usize; 3],
    /// Raw words in the orbit.
    pub size: usize,
    /// For three colors used twice each: whether each color's pair is adjacent,
    /// sorted with `false` (N) first.
    pub signature: Option<[bool; 3]>,
}

fn pair_signature(word: &[EdgeColor]) -> Option<[bool; 3]> {
    let n = word.len();
    let mut sig = [false; 3];
    for c in Color::ALL {
        let pos: Vec<usize> = (0..n).filter(|&i| word[i] == c.edge()).collect();
        let [i, j] = pos.as_slice() else {
            return None;
        };
        sig[c as usize] = j - i == 1 || (i + n - j) == 1;
    }
    sig.sort_unstable();
    Some(sig)
}

/// All equal-parity rgb words of length `n`, split into orbits under synonyms
/// and `sym`. Classes come in order of representative.
pub fn enumerate_boundary_classes(n: usize, sym: &SymmetryGroup) -> Vec<BoundaryClass> {
    assert_eq!(sym.n, n, "group acts on a cycle of a different length");
    let mut orbits: BTreeMap<Vec<EdgeColor>, usize> = BTreeMap::new();
    let mut word = vec![EdgeColor::Red; n];
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        for x in word.iter_mut() {
            *x = Color::ALL[c % 3].edge();
            c /= 3;
        }
        if equal_parity(&word) {
            *orbits.entry(sym.word_class(&word)).or_default() += 1;
        }
    }
    orbits
        .into_iter()
        .map(|(representative, size)| BoundaryClass {
            counts: sorted_counts(&representative),
            signature: pair_signature(&representative),
            representative,
            size,
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Provenance {
    /// A single abandoned inner edge of Σ.
    Primary,
    /// Reached from a primary state by ECS moves.
    Secondary,
    /// A primary state with a second diamond abandoned.
    Tertiary,
    /// A full rgb tiling of Σ alone.
    Four,
}

impl Provenance {
    pub fn parse(s: &str) -> Option<Provenance> {
        match s {
            "primary" => Some(Provenance::Primary),
            "secondary" => Some(Provenance::Secondary),
            "tertiary" => Some(Provenance::Tertiary),
            "4" | "four" => Some(Provenance::Four),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ChainKind {
    Verified,
    Refuted,
    Unverified,
}

/// A Kempe-chain constraint in region-local vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ConstraintShape {
    pub color: EdgeColor,
    pub kind: ChainKind,
    /// The witnessed pair when verified, otherwise every alternative.
    pub ends: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Step {
    Ecs(Move),
    Abandon((usize, usize)),
}

/// One atlas state in region-local ids: Ω positions `0..n`, then TD vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasEntry {
    pub name: String,
    pub provenance: Provenance,
    /// Co(Ω) in this entry's canonical frame.
    pub word: Vec<EdgeColor>,
    /// Co(Ω) up to synonyms and symmetry.
    pub word_class: Vec<EdgeColor>,
    pub counts: [usize; 3],
    pub abandoned: Vec<(usize, usize)>,
    pub diamonds: Vec<DiamondClass>,
    /// Colors of the inner edges of Σ.
    pub interior: Vec<(usize, usize, EdgeColor)>,
    pub constraints: Vec<ConstraintShape>,
    pub parent: Option<usize>,
    pub step: Option<Step>,
}

type EntryKey = (
    Vec<EdgeColor>,
    Vec<(usize, usize, EdgeColor)>,
    Vec<(usize, usize)>,
    Vec<ConstraintShape>,
);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atlas {
    pub omega: Vec<Vertex>,
    pub td: Vec<Vertex>,
    pub group: SymmetryGroup,
    pub entries: Vec<AtlasEntry>,
    /// The ECS closure hit its state cap.
    pub truncated: bool,
}

impl Atlas {
    /// Derivation of entry `i` back to its primary ancestor, `i` first.
    pub fn chain(&self, i: usize) -> Vec<usize> {
        let mut out = vec![i];
        while let Some(p) = self.entries[*out.last().expect("nonempty")].parent {
            out.push(p);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasConfig {
    /// Total tilings enumerated before giving up.
    pub max_tilings: usize,
    pub explore: ExploreConfig,
}

impl Default for AtlasConfig {
    fn default() -> Self {
        AtlasConfig {
            max_tilings: 200_000,
            explore: ExploreConfig {
                max_states: 3000,
                max_abandoned: 2,
                ..ExploreConfig::default()
            },
        }
    }
}

struct Builder<'a> {
    e: &'a Embedding,
    r: &'a RegionSpec,
    group: SymmetryGroup,
    local: BTreeMap<Vertex, usize>,
    keys: BTreeMap<EntryKey, usize>,
    entries: Vec<AtlasEntry>,
    seeds: Vec<Tiling>,
}

impl<'a> Builder<'a> {
    fn raw(&self, t: &Tiling) -> (EntryKey, Vec<DiamondClass>) {
        let l = |v: Vertex| self.local[&v];
        let word = self.r.omega_edges.iter().map(|&x| t.color(x)).collect();
        let interior = self
            .r
            .inner_edges
            .iter()
            .map(|&x| {
                let (u, v) = self.e.endpoints(x);
                (l(u), l(v), t.color(x))
            })
            .collect();
        let abandoned: Vec<(usize, usize)> = t
            .abandoned()
            .into_iter()
            .filter(|&x| self.r.is_inner_edge(x))
            .map(|x| {
                let (u, v) = self.e.endpoints(x);
                (l(u), l(v))
            })
            .collect();
        let mut diamonds: Vec<DiamondClass> = t
            .abandoned()
            .into_iter()
            .filter_map(|x| kempe::classify_diamond(self.e, t, x).ok().map(|d| d.class))
            .collect();
        diamonds.sort_unstable();
        let constraints = kempe::chain_constraints(self.e, t, self.r)
            .into_iter()
            .map(|k| {
                let (kind, ends) = match k.status {
                    ChainStatus::Verified(_) => (ChainKind::Verified, vec![k.endpoints]),
                    ChainStatus::Refuted(_) => (ChainKind::Refuted, k.alternatives),
                    ChainStatus::Unverified => (ChainKind::Unverified, k.alternatives),
                };
                ConstraintShape {
                    color: k.color.edge(),
                    kind,
                    ends: ends.into_iter().map(|(a, b)| (l(a), l(b))).collect(),
                }
            })
            .collect();
        ((word, interior, abandoned, constraints), diamonds)
    }

    fn image(&self, key: &EntryKey, g: &[usize], p: &[Color; 3]) -> EntryKey {
        let pc = |c: EdgeColor| permute_color(p, c);
        let word = self.group.act_word(g, &key.0).into_iter().map(pc).collect();
        let mut interior: Vec<_> = key
            .1
            .iter()
            .map(|&(u, v, c)| {
                let (a, b) = sorted_pair(g[u], g[v]);
                (a, b, pc(c))
            })
            .collect();
        interior.sort_unstable();
        let mut abandoned: Vec<_> = key.2.iter().map(|&(u, v)| sorted_pair(g[u], g[v])).collect();
        abandoned.sort_unstable();
        let mut constraints: Vec<ConstraintShape> = key
            .3
            .iter()
            .map(|k| {
                let mut ends: Vec<_> = k.ends.iter().map(|&(u, v)| sorted_pair(g[u], g[v])).collect();
                ends.sort_unstable();
                ends.dedup();
                ConstraintShape {
                    color: pc(k.color),
                    kind: k.kind,
                    ends,
                }
            })
            .collect();
        constraints.sort_unstable();
        constraints.dedup();
        (word, interior, abandoned, constraints)
    }

    fn canonical(&self, key: &EntryKey) -> EntryKey {
        self.group
            .maps
            .iter()
            .flat_map(|g| PERMUTATIONS.iter().map(move |p| self.image(key, g, p)))
            .min()
            .expect("the group contains the identity")
    }

    /// Adds the state of `t` unless an equal entry exists; returns its index and
    /// whether it is new.
    fn add(&mut self, t: &Tiling, provenance: Provenance, parent: Option<usize>, step: Option<Step>) -> (usize, bool) {
        let (raw, diamonds) = self.raw(t);
        let key = self.canonical(&raw);
        if let Some(&i) = self.keys.get(&key) {
            return (i, false);
        }
        let i = self.entries.len();
        let word_class = self.group.word_class(&key.0);
        self.entries.push(AtlasEntry {
            name: format!("E{i}"),
            provenance,
            counts: sorted_counts(&key.0),
            word_class,
            word: key.0.clone(),
            abandoned: key.2.clone(),
            diamonds,
            interior: key.1.clone(),
            constraints: key.3.clone(),
            parent,
            step,
        });
        self.keys.insert(key, i);
        self.seeds.push(t.clone());
        (i, true)
    }

    fn primary(&mut self, cap: usize) -> Result<(), AtlasError> {
        let mut seen = 0usize;
        for &x in &self.r.inner_edges {
            let mut found = Vec::new();
            kempe::for_each_with_abandoned(self.e, x, |t| {
                seen += 1;
                if seen > cap {
                    return ControlFlow::Break(());
                }
                if kempe::classify_diamond(self.e, t, x).is_ok_and(|d| d.class != DiamondClass::TypeC) {
                    found.push(tiling::synonym_canonical(t));
                }
                ControlFlow::Continue(())
            })?;
            if seen > cap {
                return Err(AtlasError::CapExceeded(cap));
            }
            found.sort_unstable();
            found.dedup();
            for t in found {
                self.add(&t, Provenance::Primary, None, None);
            }
        }
        Ok(())
    }

    fn secondary(&mut self, cfg: &ExploreConfig) -> Result<bool, AtlasError> {
        let mut visited: BTreeSet<Tiling> = BTreeSet::new();
        let mut queue: VecDeque<(Tiling, usize)> = VecDeque::new();
        for (i, t) in self.seeds.iter().enumerate() {
            let c = tiling::synonym_canonical(t);
            if visited.insert(c.clone()) {
                queue.push_back((c, i));
            }
        }
        let mut truncated = false;
        while let Some((t, from)) = queue.pop_front() {
            for (s, mv) in explore::successors(self.e, &t, self.r, cfg)? {
                let c = tiling::synonym_canonical(&s);
                if visited.contains(&c) {
                    continue;
                }
                if visited.len() >= cfg.max_states {
                    truncated = true;
                    continue;
                }
                visited.insert(c.clone());
                let (j, _) = self.add(&c, Provenance::Secondary, Some(from), Some(Step::Ecs(mv)));
                queue.push_back((c, j));
            }
        }
        Ok(truncated)
    }

    fn tertiary(&mut self) {
        let primaries = self.seeds.clone();
        for (i, t) in primaries.iter().enumerate() {
            let x = t.abandoned()[0];
            let near: BTreeSet<_> = self.e.edge_faces(x).into_iter().collect();
            for &y in &self.r.inner_edges {
                if y == x || self.e.edge_faces(y).iter().any(|f| near.contains(f)) {
                    continue;
                }
                let mut s = t.clone();
                s.set(y, EdgeColor::Abandoned);
                if kempe::classify_diamond(self.e, &s, y).is_ok_and(|d| d.class != DiamondClass::TypeC) {
                    let (u, v) = self.e.endpoints(y);
                    let step = Step::Abandon((self.local[&u], self.local[&v]));
                    self.add(&s, Provenance::Tertiary, Some(i), Some(step));
                }
            }
        }
    }

    fn four(&mut self, cap: usize) -> Result<(), AtlasError> {
        let (sub, back) = sigma_embedding(self.e, self.r)?;
        let mut found = BTreeSet::new();
        let mut seen = 0usize;
        tiling::for_each_tiling(&sub, Mode::Rgb, |t| {
            seen += 1;
            if seen > cap {
                return ControlFlow::Break(());
            }
            found.insert(tiling::synonym_canonical(t));
            ControlFlow::Continue(())
        });
        if seen > cap {
            return Err(AtlasError::CapExceeded(cap));
        }
        for t in found {
            // lift to the host with Σ′ left red; only Σ edges are read
            let mut colors = vec![EdgeColor::Red; self.e.edge_count()];
            for (i, &(u, v)) in sub.edges().iter().enumerate() {
                let x = self.e.edge_between(back[u], back[v]).expect("Σ edge in host");
                colors[x.0] = t.color(crate::EdgeId(i));
            }
            let lifted = Tiling::new_unchecked(Mode::Rgb, colors);
            self.add(&lifted, Provenance::Four, None, None);
        }
        Ok(())
    }
}

/// Σ as a disc of its own, with Ω as the outer facet. Returns the disc and the
/// host vertex of each disc vertex.
fn sigma_embedding(e: &Embedding, r: &RegionSpec) -> Result<(Embedding, Vec<Vertex>), AtlasError> {
    let local = local_ids(r);
    let back: Vec<Vertex> = r.omega.iter().chain(&r.td).copied().collect();
    let mut faces: Vec<Vec<Vertex>> = r
        .sigma_faces
        .iter()
        .map(|&f| e.face(f).vertices.iter().map(|v| local[v]).collect())
        .collect();
    faces.push((0..r.omega.len()).collect());
    let outer = faces.len() - 1;
    let sub = Embedding::from_faces(back.len(), &faces, &[outer])
        .map_err(|_| AtlasError::EmptyRegion)?;
    Ok((sub, back))
}

/// Builds the atlas of the given provenance. Secondary and tertiary atlases
/// include the primary entries their derivations start from.
pub fn build_atlas(e: &Embedding, r: &RegionSpec, provenance: Provenance, cfg: &AtlasConfig) -> Result<Atlas, AtlasError> {
    if r.inner_edges.is_empty() {
        return Err(AtlasError::EmptyRegion);
    }
    let mut b = Builder {
        e,
        r,
        group: SymmetryGroup::of_region(e, r),
        local: local_ids(r),
        keys: BTreeMap::new(),
        entries: Vec::new(),
        seeds: Vec::new(),
    };
    let mut truncated = false;
    match provenance {
        Provenance::Four => b.four(cfg.max_tilings)?,
        _ => {
            b.primary(cfg.max_tilings)?;
            match provenance {
                Provenance::Secondary => truncated = b.secondary(&cfg.explore)?,
                Provenance::Tertiary => b.tertiary(),
                _ => {}
            }
        }
    }
    Ok(Atlas {
        omega: r.omega.clone(),
        td: r.td.clone(),
        group: b.group,
        entries: b.entries,
        truncated,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MatchLevel {
    /// Same boundary class.
    Boundary,
    /// Same boundary, interior, abandoned set and constraints.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasMatch {
    pub a: usize,
    pub b: usize,
    pub level: MatchLevel,
}

/// Pairs of entries that agree on their boundary class, and those that agree
/// entirely. An empty result at a level certifies disjointness at that level.
pub fn intersect_atlases(a: &Atlas, b: &Atlas) -> Result<Vec<AtlasMatch>, AtlasError> {
    if a.omega != b.omega || a.td != b.td {
        return Err(AtlasError::RegionMismatch);
    }
    let mut out = Vec::new();
    for (i, x) in a.entries.iter().enumerate() {
        for (j, y) in b.entries.iter().enumerate() {
            if x.word_class != y.word_class {
                continue;
            }
            let full = x.word == y.word
                && x.interior == y.interior
                && x.abandoned == y.abandoned
                && x.constraints == y.constraints;
            out.push(AtlasMatch {
                a: i,
                b: j,
                level: if full { MatchLevel::Full } else { MatchLevel::Boundary },
            });
        }
    }
    Ok(out)
}

/// A named state shape: one abandoned edge between two labeled vertices, its
/// diamond class and Co(Ω) read along the template's boundary labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogPattern {
    pub name: String,
    pub template_omega: Vec<String>,
    pub abandoned: (String, String),
    pub class: DiamondClass,
    pub word: Vec<EdgeColor>,
}

fn letters(s: &str) -> Vec<EdgeColor> {
    s.chars()
        .map(|c| Color::from_name(&format!("{c}")).expect("r, g or b").edge())
        .collect()
}

/// The two TypeA starts at ab around an adjacent degree-5 pair. Both boundary
/// words are invariant under the Klein four-group; T_alpha repeats with period
/// three, T_beta is a palindrome.
pub fn td55_catalog() -> Vec<CatalogPattern> {
    let omega: Vec<String> = ["d", "v1", "v2", "c", "v4", "v5"].iter().map(|s| String::from(*s)).collect();
    [("S0=T_alpha", "gbrgbr"), ("S5=T_beta", "gbrrbg")]
        .into_iter()
        .map(|(name, w)| CatalogPattern {
            name: name.into(),
            template_omega: omega.clone(),
            abandoned: ("a".into(), "b".into()),
            class: DiamondClass::TypeA,
            word: letters(w),
        })
        .collect()
}

/// Renames entries that match a catalog pattern; returns how many matched.
pub fn label_entries(atlas: &mut Atlas, inst: &Instance, catalog: &[CatalogPattern]) -> usize {
    let n = atlas.omega.len();
    let pos = |label: &str| -> Option<usize> {
        let v = *inst.labels.get(label)?;
        atlas.omega.iter().chain(&atlas.td).position(|&w| w == v)
    };
    let mut named = 0;
    for pat in catalog {
        if pat.template_omega.len() != n || pat.word.len() != n {
            continue;
        }
        let Some(ids) = pat.template_omega.iter().map(|l| pos(l)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let mut word = vec![EdgeColor::Red; n];
        for i in 0..n {
            let (a, b) = (ids[i], ids[(i + 1) % n]);
            let j = if (a + 1) % n == b { a } else { b };
            word[j] = pat.word[i];
        }
        let class = atlas.group.word_class(&word);
        let (Some(u), Some(v)) = (pos(&pat.abandoned.0), pos(&pat.abandoned.1)) else {
            continue;
        };
        let orbit: BTreeSet<(usize, usize)> = atlas.group.maps.iter().map(|g| sorted_pair(g[u], g[v])).collect();
        for entry in atlas.entries.iter_mut() {
            if entry.word_class == class
                && entry.diamonds == [pat.class]
                && entry.abandoned.len() == 1
                && orbit.contains(&entry.abandoned[0])
            {
                entry.name = pat.name.clone();
                named += 1;
            }
        }
    }
    named
}
