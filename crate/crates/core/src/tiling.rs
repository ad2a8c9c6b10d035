//! Edge tilings: rgb, single-color and partial (with abandoned edges).

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::FourColoring;
use crate::dsu::Dsu;
use crate::embedding::{EdgeId, Embedding, FaceId, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Color {
    Red,
    Green,
    Blue,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Red, Color::Green, Color::Blue];

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Green => "green",
            Color::Blue => "blue",
        }
    }

    pub fn edge(self) -> EdgeColor {
        match self {
            Color::Red => EdgeColor::Red,
            Color::Green => EdgeColor::Green,
            Color::Blue => EdgeColor::Blue,
        }
    }

    /// The two other colors, in r<g<b order.
    pub fn others(self) -> (Color, Color) {
        match self {
            Color::Red => (Color::Green, Color::Blue),
            Color::Green => (Color::Red, Color::Blue),
            Color::Blue => (Color::Red, Color::Green),
        }
    }

    /// Klein-group element: red = 1, green = 2, blue = 3.
    pub fn klein(self) -> u8 {
        match self {
            Color::Red => 1,
            Color::Green => 2,
            Color::Blue => 3,
        }
    }

    pub fn from_klein(x: u8) -> Option<Color> {
        match x {
            1 => Some(Color::Red),
            2 => Some(Color::Green),
            3 => Some(Color::Blue),
            _ => None,
        }
    }

    pub fn from_name(s: &str) -> Option<Color> {
        match s {
            "red" | "r" => Some(Color::Red),
            "green" | "g" => Some(Color::Green),
            "blue" | "b" => Some(Color::Blue),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeColor {
    Red,
    Green,
    Blue,
    Black,
    Abandoned,
}

impl EdgeColor {
    pub fn letter(self) -> char {
        match self {
            EdgeColor::Red => 'r',
            EdgeColor::Green => 'g',
            EdgeColor::Blue => 'b',
            EdgeColor::Black => 'k',
            EdgeColor::Abandoned => 'y',
        }
    }

    pub fn color(self) -> Option<Color> {
        match self {
            EdgeColor::Red => Some(Color::Red),
            EdgeColor::Green => Some(Color::Green),
            EdgeColor::Blue => Some(Color::Blue),
            _ => None,
        }
    }
}

impl From<Color> for EdgeColor {
    fn from(c: Color) -> Self {
        c.edge()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Mode {
    Rgb,
    Single(Color),
    Partial,
}

impl Mode {
    fn palette(self) -> &'static [EdgeColor] {
        match self {
            Mode::Rgb => &[EdgeColor::Red, EdgeColor::Green, EdgeColor::Blue],
            Mode::Single(Color::Red) => &[EdgeColor::Red, EdgeColor::Black],
            Mode::Single(Color::Green) => &[EdgeColor::Green, EdgeColor::Black],
            Mode::Single(Color::Blue) => &[EdgeColor::Blue, EdgeColor::Black],
            Mode::Partial => &[
                EdgeColor::Red,
                EdgeColor::Green,
                EdgeColor::Blue,
                EdgeColor::Abandoned,
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("tiling has {got} edge colors but the graph has {expected} edges")]
    Length { expected: usize, got: usize },
    #[error("edge {0:?} carries {1:?}, which mode {2:?} does not allow")]
    ColorNotInMode(EdgeId, EdgeColor, Mode),
    #[error("triangle {vertices:?} violates the {mode:?} rule")]
    Triangle { face: FaceId, vertices: Vec<Vertex>, mode: Mode },
    #[error("operation needs mode {expected}, tiling is {got:?}")]
    WrongMode { expected: &'static str, got: Mode },
    #[error("edge {0:?} is on the cycle but is not colored red, green or blue")]
    UncoloredBoundary(EdgeId),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAnEdge(Vertex, Vertex),
    #[error("black conflict graph has an odd cycle through edges {0:?}")]
    OddConflictCycle(Vec<EdgeId>),
    #[error("no grand witness: {0}")]
    NotGrand(&'static str),
    #[error("the {0:?} subgraph has an odd cycle")]
    OddCycle(Color),
    #[error("coloring is not proper on edge {0}-{1}")]
    Improper(Vertex, Vertex),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tiling {
    mode: Mode,
    colors: Vec<EdgeColor>,
}

impl Tiling {
    /// Builds a tiling and checks it against the mode's invariants.
    pub fn new(e: &Embedding, mode: Mode, colors: Vec<EdgeColor>) -> Result<Self, TilingError> {
        let t = Tiling { mode, colors };
        validate(e, &t)?;
        Ok(t)
    }

    /// Builds a tiling without validation. Callers are expected to validate.
    pub fn new_unchecked(mode: Mode, colors: Vec<EdgeColor>) -> Self {
        Tiling { mode, colors }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn colors(&self) -> &[EdgeColor] {
        &self.colors
    }

    pub fn color(&self, e: EdgeId) -> EdgeColor {
        self.colors[e.0]
    }

    pub fn set(&mut self, e: EdgeId, c: EdgeColor) {
        self.colors[e.0] = c;
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn abandoned(&self) -> Vec<EdgeId> {
        self.edges_of(EdgeColor::Abandoned)
    }

    pub fn edges_of(&self, c: EdgeColor) -> Vec<EdgeId> {
        self.colors
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == c)
            .map(|(i, _)| EdgeId(i))
            .collect()
    }

    /// The single(c) view: every edge other than `c` (and abandoned) becomes black.
    pub fn single_view(&self, c: Color) -> Tiling {
        let colors = self
            .colors
            .iter()
            .map(|&x| match x {
                EdgeColor::Abandoned => EdgeColor::Abandoned,
                x if x == c.edge() => x,
                _ => EdgeColor::Black,
            })
            .collect();
        Tiling {
            mode: Mode::Single(c),
            colors,
        }
    }

    pub fn count(&self, c: EdgeColor) -> usize {
        self.colors.iter().filter(|&&x| x == c).count()
    }
}

/// Returns the first violation: wrong color for the mode, or a bad triangle.
pub fn validate(e: &Embedding, t: &Tiling) -> Result<(), TilingError> {
    if t.colors.len() != e.edge_count() {
        return Err(TilingError::Length {
            expected: e.edge_count(),
            got: t.colors.len(),
        });
    }
    let palette = t.mode.palette();
    for (i, c) in t.colors.iter().enumerate() {
        if !palette.contains(c) {
            return Err(TilingError::ColorNotInMode(EdgeId(i), *c, t.mode));
        }
    }
    match violations(e, t).first() {
        None => Ok(()),
        Some(&face) => Err(TilingError::Triangle {
            face,
            vertices: e.face(face).vertices.clone(),
            mode: t.mode,
        }),
    }
}

fn triangle_ok(mode: Mode, c: [EdgeColor; 3]) -> bool {
    match mode {
        Mode::Rgb => c[0] != c[1] && c[1] != c[2] && c[0] != c[2],
        Mode::Single(k) => c.iter().filter(|&&x| x == k.edge()).count() == 1,
        Mode::Partial => {
            let y = c.iter().filter(|&&x| x == EdgeColor::Abandoned).count();
            match y {
                0 => c[0] != c[1] && c[1] != c[2] && c[0] != c[2],
                1 => true,
                _ => false,
            }
        }
    }
}

/// All triangles that break the mode's rule.
pub fn violations(e: &Embedding, t: &Tiling) -> Vec<FaceId> {
    e.triangles()
        .filter(|(_, f)| {
            let c = [
                t.colors[f.edges[0].0],
                t.colors[f.edges[1].0],
                t.colors[f.edges[2].0],
            ];
            !triangle_ok(t.mode, c)
        })
        .map(|(id, _)| id)
        .collect()
}

/// Partial-mode check used by the Kempe engine: like [`validate`] but single(c)
/// tilings may also carry abandoned edges (a triangle with an abandoned edge is
/// exempt, two abandoned edges in a triangle are not allowed).
pub fn validate_single_with_abandoned(e: &Embedding, t: &Tiling, c: Color) -> bool {
    e.triangles().all(|(_, f)| {
        let cs = [
            t.colors[f.edges[0].0],
            t.colors[f.edges[1].0],
            t.colors[f.edges[2].0],
        ];
        let y = cs.iter().filter(|&&x| x == EdgeColor::Abandoned).count();
        match y {
            0 => cs.iter().filter(|&&x| x == c.edge()).count() == 1,
            1 => cs.iter().filter(|&&x| x == c.edge()).count() <= 1,
            _ => false,
        }
    })
}

/// Visits every tiling of the given mode once, in a deterministic order. Edges
/// are assigned so that each new edge lies in a triangle that is as complete as
/// possible, which lets the triangle rules prune early.
pub fn for_each_tiling<F>(e: &Embedding, mode: Mode, mut visit: F)
where
    F: FnMut(&Tiling) -> ControlFlow<()>,
{
    let m = e.edge_count();
    let palette = mode.palette();
    let tri_edges: Vec<[usize; 3]> = e
        .triangles()
        .map(|(_, f)| [f.edges[0].0, f.edges[1].0, f.edges[2].0])
        .collect();
    let mut tris_of: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (k, tri) in tri_edges.iter().enumerate() {
        for &x in tri {
            tris_of[x].push(k);
        }
    }
    let order = search_order(m, &tri_edges, &tris_of);
    const UNSET: EdgeColor = EdgeColor::Black;
    let mut assigned = vec![false; m];
    let mut t = Tiling {
        mode,
        colors: vec![UNSET; m],
    };
    // partial consistency of one triangle given the assigned edges
    let consistent = |t: &Tiling, assigned: &[bool], tri: &[usize; 3]| -> bool {
        let set: Vec<EdgeColor> = tri
            .iter()
            .filter(|&&x| assigned[x])
            .map(|&x| t.colors[x])
            .collect();
        if set.len() == 3 {
            return triangle_ok(mode, [set[0], set[1], set[2]]);
        }
        match mode {
            Mode::Rgb => set.len() < 2 || set[0] != set[1],
            Mode::Single(c) => set.iter().filter(|&&x| x == c.edge()).count() <= 1,
            Mode::Partial => {
                let y = set.iter().filter(|&&x| x == EdgeColor::Abandoned).count();
                y <= 1 && (y == 1 || set.len() < 2 || set[0] != set[1])
            }
        }
    };
    let mut choice = vec![0usize; m];
    let mut i = 0usize;
    loop {
        if i == m {
            if let ControlFlow::Break(()) = visit(&t) {
                return;
            }
            if m == 0 {
                return;
            }
            i -= 1;
            choice[i] += 1;
            assigned[order[i]] = false;
            continue;
        }
        let x = order[i];
        if choice[i] >= palette.len() {
            choice[i] = 0;
            assigned[x] = false;
            if i == 0 {
                return;
            }
            i -= 1;
            choice[i] += 1;
            assigned[order[i]] = false;
            continue;
        }
        t.colors[x] = palette[choice[i]];
        assigned[x] = true;
        if tris_of[x]
            .iter()
            .all(|&k| consistent(&t, &assigned, &tri_edges[k]))
        {
            i += 1;
        } else {
            assigned[x] = false;
            choice[i] += 1;
        }
    }
}

fn search_order(m: usize, tri_edges: &[[usize; 3]], tris_of: &[Vec<usize>]) -> Vec<usize> {
    let mut placed = vec![false; m];
    let mut filled = vec![0usize; tri_edges.len()];
    let mut order = Vec::with_capacity(m);
    for _ in 0..m {
        let x = (0..m)
            .filter(|&x| !placed[x])
            .max_by_key(|&x| {
                let best = tris_of[x].iter().map(|&k| filled[k]).max().unwrap_or(0);
                (best, core::cmp::Reverse(x))
            })
            .expect("an unplaced edge");
        placed[x] = true;
        for &k in &tris_of[x] {
            filled[k] += 1;
        }
        order.push(x);
    }
    order
}

/// Collects tilings up to `limit`.
pub fn enumerate(e: &Embedding, mode: Mode, limit: Option<usize>) -> Vec<Tiling> {
    let mut out = Vec::new();
    for_each_tiling(e, mode, |t| {
        out.push(t.clone());
        if limit.is_some_and(|l| out.len() >= l) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}

pub fn count(e: &Embedding, mode: Mode) -> usize {
    let mut n = 0;
    for_each_tiling(e, mode, |_| {
        n += 1;
        ControlFlow::Continue(())
    });
    n
}

/// An odd cycle of `c`-colored edges, as a closed vertex walk without the repeated
/// start vertex.
pub fn find_mono_odd_cycle(e: &Embedding, t: &Tiling, c: Color) -> Option<Vec<Vertex>> {
    let n = e.vertex_count();
    let ce = c.edge();
    let mut depth = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for (i, &v) in e.rotation(u).iter().enumerate() {
                if t.colors[e.incident_edges(u)[i].0] != ce {
                    continue;
                }
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if depth[v] % 2 == depth[u] % 2 {
                    return Some(tree_cycle(&depth, &parent, u, v));
                }
            }
        }
    }
    None
}

/// The cycle closed by the non-tree edge `u-v` in a BFS forest.
fn tree_cycle(depth: &[usize], parent: &[usize], u: Vertex, v: Vertex) -> Vec<Vertex> {
    let (mut a, mut b) = (u, v);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// Whether the tiling has a monochromatic odd cycle in any of its colors.
pub fn has_mono_odd_cycle(e: &Embedding, t: &Tiling) -> bool {
    match t.mode {
        Mode::Single(c) => find_mono_odd_cycle(e, t, c).is_some(),
        _ => Color::ALL
            .iter()
            .any(|&c| find_mono_odd_cycle(e, t, c).is_some()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrandWitness {
    pub v1: Vec<Vertex>,
    pub v2: Vec<Vertex>,
}

/// Grandness of the single(c) view: the non-`c` edges form a bipartite graph on
/// (V1, V2) and no `c` edge joins V1 to V2.
pub fn check_grand(e: &Embedding, t: &Tiling, c: Color) -> Option<GrandWitness> {
    let n = e.vertex_count();
    let ce = c.edge();
    if t.colors.contains(&EdgeColor::Abandoned) {
        return None;
    }
    let mut dsu = Dsu::new(n);
    for (i, &(u, v)) in e.edges().iter().enumerate() {
        if t.colors[i] == ce {
            dsu.union(u, v);
        }
    }
    let comp: Vec<usize> = (0..n).map(|v| dsu.find(v)).collect();
    // bipartition of the quotient graph whose links are the black edges
    let mut side = vec![u8::MAX; n];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(u, v)) in e.edges().iter().enumerate() {
        if t.colors[i] != ce {
            let (a, b) = (comp[u], comp[v]);
            if a == b {
                return None;
            }
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    for v in 0..n {
        let r = comp[v];
        if side[r] != u8::MAX {
            continue;
        }
        side[r] = 0;
        let mut stack = vec![r];
        while let Some(a) = stack.pop() {
            for &b in &adj[a] {
                if side[b] == u8::MAX {
                    side[b] = 1 - side[a];
                    stack.push(b);
                } else if side[b] == side[a] {
                    return None;
                }
            }
        }
    }
    let (mut v1, mut v2) = (Vec::new(), Vec::new());
    for v in 0..n {
        if side[comp[v]] == 0 {
            v1.push(v);
        } else {
            v2.push(v);
        }
    }
    Some(GrandWitness { v1, v2 })
}

/// Completes a single(c) tiling to rgb by 2-coloring the black conflict graph.
pub fn complete_to_rgb(e: &Embedding, t: &Tiling) -> Result<Tiling, TilingError> {
    let Mode::Single(c) = t.mode else {
        return Err(TilingError::WrongMode {
            expected: "single",
            got: t.mode,
        });
    };
    let (a, b) = c.others();
    let m = e.edge_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (_, f) in e.triangles() {
        let blacks: Vec<usize> = f
            .edges
            .iter()
            .map(|x| x.0)
            .filter(|&x| t.colors[x] == EdgeColor::Black)
            .collect();
        if blacks.len() == 2 {
            adj[blacks[0]].push(blacks[1]);
            adj[blacks[1]].push(blacks[0]);
        }
    }
    let mut side = vec![u8::MAX; m];
    let mut parent = vec![usize::MAX; m];
    let mut depth = vec![0usize; m];
    for s in 0..m {
        if t.colors[s] != EdgeColor::Black || side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if side[y] == u8::MAX {
                    side[y] = 1 - side[x];
                    parent[y] = x;
                    depth[y] = depth[x] + 1;
                    queue.push_back(y);
                } else if side[y] == side[x] {
                    let cyc = tree_cycle(&depth, &parent, x, y);
                    return Err(TilingError::OddConflictCycle(
                        cyc.into_iter().map(EdgeId).collect(),
                    ));
                }
            }
        }
    }
    let colors = (0..m)
        .map(|i| match t.colors[i] {
            EdgeColor::Black if side[i] == 0 => a.edge(),
            EdgeColor::Black => b.edge(),
            x => x,
        })
        .collect();
    Tiling::new(e, Mode::Rgb, colors)
}

/// The 4-coloring induced by a grand, `c`-odd-cycle-free single(c) tiling:
/// V1 takes one pair of `c`'s pair class and V2 the other.
pub fn extract_four_coloring(
    e: &Embedding,
    t: &Tiling,
    c: Color,
    w: &GrandWitness,
) -> Result<FourColoring, TilingError> {
    let n = e.vertex_count();
    let ce = c.edge();
    let mut part = vec![u8::MAX; n];
    for &v in &w.v1 {
        part[v] = 0;
    }
    for &v in &w.v2 {
        part[v] = 1;
    }
    if part.contains(&u8::MAX) {
        return Err(TilingError::NotGrand("witness does not cover every vertex"));
    }
    // pair classes: (first pair, second pair) with colors 0..3 standing for 1..4
    let pairs = match c {
        Color::Red => [[0u8, 1], [2, 3]],
        Color::Green => [[0, 2], [1, 3]],
        Color::Blue => [[0, 3], [1, 2]],
    };
    let mut parity = vec![u8::MAX; n];
    for root in 0..n {
        if parity[root] != u8::MAX {
            continue;
        }
        parity[root] = 0;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for (i, &v) in e.rotation(u).iter().enumerate() {
                if t.colors[e.incident_edges(u)[i].0] != ce {
                    continue;
                }
                if part[u] != part[v] {
                    return Err(TilingError::NotGrand("a colored edge crosses the partition"));
                }
                if parity[v] == u8::MAX {
                    parity[v] = 1 - parity[u];
                    stack.push(v);
                } else if parity[v] == parity[u] {
                    return Err(TilingError::OddCycle(c));
                }
            }
        }
    }
    let f = FourColoring::new(
        (0..n)
            .map(|v| pairs[part[v] as usize][parity[v] as usize] + 1)
            .collect(),
    );
    if let Some((u, v)) = f.first_conflict(e) {
        return Err(TilingError::Improper(u, v));
    }
    Ok(f)
}

/// A proper 4-coloring read off an rgb tiling through any color whose single view
/// is grand and odd-cycle free. `None` when no color works.
pub fn coloring_from_rgb(e: &Embedding, t: &Tiling) -> Option<FourColoring> {
    if t.mode != Mode::Rgb || validate(e, t).is_err() {
        return None;
    }
    Color::ALL.iter().find_map(|&c| {
        let s = t.single_view(c);
        let w = check_grand(e, &s, c)?;
        extract_four_coloring(e, &s, c, &w).ok()
    })
}

/// Edge `uv` gets the color of the pair class of `{f(u), f(v)}`.
pub fn induce_tiling(e: &Embedding, f: &FourColoring) -> Result<Tiling, TilingError> {
    if let Some((u, v)) = f.first_conflict(e) {
        return Err(TilingError::Improper(u, v));
    }
    let colors = e
        .edges()
        .iter()
        .map(|&(u, v)| {
            let x = (f.color(u) - 1) ^ (f.color(v) - 1);
            Color::from_klein(x).expect("proper coloring").edge()
        })
        .collect();
    Ok(Tiling {
        mode: Mode::Rgb,
        colors,
    })
}

pub const PERMUTATIONS: [[Color; 3]; 6] = [
    [Color::Red, Color::Green, Color::Blue],
    [Color::Red, Color::Blue, Color::Green],
    [Color::Green, Color::Red, Color::Blue],
    [Color::Green, Color::Blue, Color::Red],
    [Color::Blue, Color::Red, Color::Green],
    [Color::Blue, Color::Green, Color::Red],
];

/// Applies a color permutation (`p[c]` is the image of `c`); black and abandoned are fixed.
pub fn permute_color(p: &[Color; 3], x: EdgeColor) -> EdgeColor {
    match x.color() {
        Some(c) => p[c as usize].edge(),
        None => x,
    }
}

pub fn permute(t: &Tiling, p: &[Color; 3]) -> Tiling {
    let mode = match t.mode {
        Mode::Single(c) => Mode::Single(p[c as usize]),
        m => m,
    };
    Tiling {
        mode,
        colors: t.colors.iter().map(|&x| permute_color(p, x)).collect(),
    }
}

/// The lexicographically smallest tiling among the six color permutations.
pub fn synonym_canonical(t: &Tiling) -> Tiling {
    if let Mode::Single(_) = t.mode {
        return t.clone();
    }
    PERMUTATIONS
        .iter()
        .map(|p| permute(t, p))
        .min_by(|a, b| a.colors.cmp(&b.colors))
        .expect("six permutations")
}

/// Smallest word in the synonym orbit of a color word.
pub fn canonical_word(word: &[EdgeColor]) -> Vec<EdgeColor> {
    PERMUTATIONS
        .iter()
        .map(|p| word.iter().map(|&x| permute_color(p, x)).collect::<Vec<_>>())
        .min()
        .expect("six permutations")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryWord {
    pub cycle: Vec<Vertex>,
    pub word: Vec<EdgeColor>,
    /// (#r, #g, #b)
    pub counts: (usize, usize, usize),
}

impl BoundaryWord {
    pub fn equal_parity(&self) -> bool {
        let (r, g, b) = self.counts;
        r % 2 == g % 2 && g % 2 == b % 2
    }

    pub fn sorted_counts(&self) -> [usize; 3] {
        let mut c = [self.counts.0, self.counts.1, self.counts.2];
        c.sort_unstable();
        c
    }
}

/// Colors along a closed vertex cycle; edge `i` joins `cycle[i]` and `cycle[i+1]`.
pub fn boundary_word(e: &Embedding, t: &Tiling, cycle: &[Vertex]) -> Result<BoundaryWord, TilingError> {
    let k = cycle.len();
    let mut word = Vec::with_capacity(k);
    let mut counts = (0, 0, 0);
    for i in 0..k {
        let (u, v) = (cycle[i], cycle[(i + 1) % k]);
        let id = e.edge_between(u, v).ok_or(TilingError::NotAnEdge(u, v))?;
        let c = t.colors[id.0];
        match c {
            EdgeColor::Red => counts.0 += 1,
            EdgeColor::Green => counts.1 += 1,
            EdgeColor::Blue => counts.2 += 1,
            _ => return Err(TilingError::UncoloredBoundary(id)),
        }
        word.push(c);
    }
    Ok(BoundaryWord {
        cycle: cycle.to_vec(),
        word,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring;
    use crate::corpus;

    fn k4_green(edges: &[(usize, usize)]) -> Tiling {
        let e = corpus::k4();
        let colors = e
            .edges()
            .iter()
            .map(|p| {
                if edges.contains(p) {
                    EdgeColor::Green
                } else {
                    EdgeColor::Black
                }
            })
            .collect();
        Tiling::new_unchecked(Mode::Single(Color::Green), colors)
    }

    #[test]
    fn k4_tiling_counts() {
        let e = corpus::k4();
        assert_eq!(count(&e, Mode::Rgb), 6);
        assert_eq!(count(&e, Mode::Single(Color::Green)), 3);
    }

    #[test]
    fn matching_is_valid_single_edge_is_not() {
        let e = corpus::k4();
        assert!(validate(&e, &k4_green(&[(0, 1), (2, 3)])).is_ok());
        let bad = k4_green(&[(0, 1)]);
        assert_eq!(violations(&e, &bad).len(), 2);
        assert!(matches!(validate(&e, &bad), Err(TilingError::Triangle { .. })));
    }

    #[test]
    fn enumerated_tilings_validate() {
        for g in corpus::all() {
            for t in enumerate(&g.embedding, Mode::Rgb, Some(50)) {
                assert!(validate(&g.embedding, &t).is_ok(), "{}", g.name);
            }
        }
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let e = corpus::octahedron();
        let all = enumerate(&e, Mode::Rgb, None);
        assert!(all.windows(2).all(|w| w[0].colors < w[1].colors));
    }

    #[test]
    fn k4_grand_witness() {
        let e = corpus::k4();
        let t = k4_green(&[(0, 1), (2, 3)]).with_mode(Mode::Single(Color::Red));
        let t = Tiling::new_unchecked(
            Mode::Single(Color::Red),
            t.colors
                .iter()
                .map(|&c| if c == EdgeColor::Green { EdgeColor::Red } else { c })
                .collect(),
        );
        let w = check_grand(&e, &t, Color::Red).unwrap();
        assert_eq!((w.v1, w.v2), (vec![0, 1], vec![2, 3]));
        let f = extract_four_coloring(&e, &t, Color::Red, &check_grand(&e, &t, Color::Red).unwrap())
            .unwrap();
        let mut used: Vec<u8> = (0..4).map(|v| f.color(v)).collect();
        used.sort();
        assert_eq!(used, vec![1, 2, 3, 4]);
    }

    #[test]
    fn k4_completion_and_induced_tiling() {
        let e = corpus::k4();
        let full = complete_to_rgb(&e, &k4_green(&[(0, 1), (2, 3)])).unwrap();
        assert!(enumerate(&e, Mode::Rgb, None).contains(&full));

        let f = FourColoring::new(vec![1, 2, 3, 4]);
        let t = induce_tiling(&e, &f).unwrap();
        let of = |c| {
            t.edges_of(c)
                .iter()
                .map(|&x| e.endpoints(x))
                .collect::<Vec<_>>()
        };
        assert_eq!(of(EdgeColor::Red), vec![(0, 1), (2, 3)]);
        assert_eq!(of(EdgeColor::Green), vec![(0, 2), (1, 3)]);
        assert_eq!(of(EdgeColor::Blue), vec![(0, 3), (1, 2)]);
    }

    #[test]
    fn k4_colorings_hit_each_tiling_four_times() {
        let e = corpus::k4();
        let mut hits: Vec<(Tiling, usize)> = Vec::new();
        for f in coloring::enumerate(&e, None) {
            let t = induce_tiling(&e, &f).unwrap();
            match hits.iter_mut().find(|(x, _)| *x == t) {
                Some((_, n)) => *n += 1,
                None => hits.push((t, 1)),
            }
        }
        assert_eq!(hits.len(), 6);
        assert!(hits.iter().all(|&(_, n)| n == 4));
    }

    #[test]
    fn k4_rgb_tilings_are_one_synonym_class() {
        let e = corpus::k4();
        let mut canon: Vec<Tiling> = enumerate(&e, Mode::Rgb, None)
            .iter()
            .map(synonym_canonical)
            .collect();
        canon.sort();
        canon.dedup();
        assert_eq!(canon.len(), 1);
    }

    #[test]
    fn bipyramid_single_tiling_with_odd_conflict_cycle() {
        // every triangle of the triangular bipyramid keeps its equator edge black
        // when the green edges are the three spokes alternating poles
        let e = corpus::bipyramid(3);
        let mut found = None;
        for_each_tiling(&e, Mode::Single(Color::Green), |t| {
            if complete_to_rgb(&e, t).is_err() {
                found = Some(t.clone());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        let t = found.expect("an uncompletable single tiling exists");
        match complete_to_rgb(&e, &t) {
            Err(TilingError::OddConflictCycle(cyc)) => assert!(cyc.len() % 2 == 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn odd_cycle_found_in_triangle_of_one_color() {
        let e = corpus::octahedron();
        // color every edge green: any triangle is an odd green cycle
        let t = Tiling::new_unchecked(Mode::Single(Color::Green), vec![EdgeColor::Green; e.edge_count()]);
        let cyc = find_mono_odd_cycle(&e, &t, Color::Green).unwrap();
        assert_eq!(cyc.len() % 2, 1);
        for i in 0..cyc.len() {
            assert!(e.edge_between(cyc[i], cyc[(i + 1) % cyc.len()]).is_some());
        }
    }

    #[test]
    fn triangle_word_is_rainbow() {
        let e = corpus::icosahedron();
        let t = enumerate(&e, Mode::Rgb, Some(1)).remove(0);
        let f = &e.faces()[0];
        let w = boundary_word(&e, &t, &f.vertices).unwrap();
        assert_eq!(w.counts, (1, 1, 1));
    }
}
