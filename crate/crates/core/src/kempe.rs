//! Abandoned-edge machinery: e-diamond types, Kempe-chain constraints,
//! generalized canal rings and their ECS, and Σ-adjustments.
//!
//! A partial tiling is an rgb tiling in which some edges are abandoned. A
//! triangle holding one abandoned edge is exempt from the rainbow rule.

use alloc::collections::{BTreeSet, VecDeque};
use core::ops::ControlFlow;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::FourColoring;
use crate::dual::{build_dual, DualGraph};
use crate::embedding::{same_cycle, trace_faces, EdgeId, Embedding, Surround, Vertex};
use crate::region::RegionSpec;
use crate::tiling::{self, Color, EdgeColor, Mode, Tiling, TilingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KempeError {
    #[error("edge {0:?} is not abandoned")]
    NotAbandoned(EdgeId),
    #[error("edge {0:?} has no diamond")]
    NoDiamond(EdgeId),
    #[error("tiling mode {0:?} is not rgb or partial")]
    Mode(Mode),
    #[error("permitted edge {0:?} lies outside Σ")]
    PermitOutsideSigma(EdgeId),
    #[error("edge {0:?} is not on Ω")]
    NotOnOmega(EdgeId),
    #[error("ring crosses edge {0:?}, which is not inside Σ")]
    RingLeavesSigma(EdgeId),
    #[error("ring does not match the tiling at edge {0:?}")]
    Stale(EdgeId),
    #[error("triangle {0:?} does not get exactly one edge of the new color")]
    RetileCount(Vec<Vertex>),
    #[error("assignment disagrees with the boundary at edge {0:?}")]
    RetileBoundary(EdgeId),
    #[error("the tiling needs exactly one abandoned edge, of TypeA, inside Σ")]
    NoTypeAStart,
    #[error("ECS result is invalid: {0}")]
    Invalid(#[from] TilingError),
}

fn check_mode(t: &Tiling) -> Result<(), KempeError> {
    match t.mode() {
        Mode::Rgb | Mode::Partial => Ok(()),
        m => Err(KempeError::Mode(m)),
    }
}

/// Mode that fits the colors: partial iff something is abandoned.
fn settle(mut t: Tiling) -> Tiling {
    let mode = if t.colors().contains(&EdgeColor::Abandoned) {
        Mode::Partial
    } else {
        Mode::Rgb
    };
    t = t.with_mode(mode);
    t
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DiamondClass {
    TypeA,
    TypeB2,
    TypeB3,
    TypeC,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiamondType {
    pub edge: EdgeId,
    /// The diamond u-x-v-y of edge uv with apexes x, y.
    pub corners: [Vertex; 4],
    /// Edges ux, xv, vy, yu.
    pub quad_edges: [EdgeId; 4],
    pub quad: [EdgeColor; 4],
    pub class: DiamondClass,
    /// Colors whose single view stays valid when the edge takes that color.
    pub chains: Vec<Color>,
    /// For TypeC: the tiling with the edge filled so both triangles are rainbow.
    pub completion: Option<Tiling>,
}

/// Types the diamond of an abandoned edge by its quad pattern. Chain colors are
/// checked: each one gives a valid single view once the edge takes it.
pub fn classify_diamond(e: &Embedding, t: &Tiling, x: EdgeId) -> Result<DiamondType, KempeError> {
    check_mode(t)?;
    if t.color(x) != EdgeColor::Abandoned {
        return Err(KempeError::NotAbandoned(x));
    }
    let Surround::Diamond { apexes: (p, q), .. } = e.surround(x) else {
        return Err(KempeError::NoDiamond(x));
    };
    let (u, v) = e.endpoints(x);
    let corners = [u, p, v, q];
    let quad_edges = [0, 1, 2, 3].map(|i| {
        e.edge_between(corners[i], corners[(i + 1) % 4])
            .expect("diamond side")
    });
    let quad = quad_edges.map(|y| t.color(y));
    let first = [quad[0], quad[1]];
    let second = [quad[2], quad[3]];
    let fits = |k: Color| {
        [first, second]
            .iter()
            .all(|side| side.iter().filter(|&&z| z == k.edge()).count() == 0)
    };
    let rainbow = |k: Color| {
        [first, second]
            .iter()
            .all(|side| side[0] != side[1] && side.iter().all(|&z| z != k.edge()))
    };
    let chains: Vec<Color> = Color::ALL
        .iter()
        .copied()
        .filter(|&k| {
            let mut s = t.clone();
            s.set(x, k.edge());
            fits(k) && tiling::validate_single_with_abandoned(e, &s.single_view(k), k)
        })
        .collect();
    let fill = Color::ALL.iter().copied().find(|&k| rainbow(k));
    let (class, completion) = if let Some(k) = fill {
        let mut s = t.clone();
        s.set(x, k.edge());
        (DiamondClass::TypeC, Some(settle(s)))
    } else if quad.iter().all(|&z| z == quad[0]) {
        (DiamondClass::TypeA, None)
    } else if chains.len() == 1 {
        (DiamondClass::TypeB2, None)
    } else {
        (DiamondClass::TypeB3, None)
    };
    if class == DiamondClass::TypeC {
        let s = completion.as_ref().expect("completion");
        tiling::validate(e, s)?;
    }
    Ok(DiamondType {
        edge: x,
        corners,
        quad_edges,
        quad,
        class,
        chains: if class == DiamondClass::TypeB3 {
            Vec::new()
        } else {
            chains
        },
        completion,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainStatus {
    /// A path in the chain color through Σ′ edges only.
    Verified(Vec<Vertex>),
    /// Filling the edge with the chain color leaves no odd cycle and gives this coloring.
    Refuted(FourColoring),
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KempeConstraint {
    pub edge: EdgeId,
    pub color: Color,
    pub endpoints: (Vertex, Vertex),
    /// Every Ω pair that would satisfy the constraint; any one of them suffices.
    pub alternatives: Vec<(Vertex, Vertex)>,
    pub status: ChainStatus,
}

impl KempeConstraint {
    pub fn is_verified(&self) -> bool {
        matches!(self.status, ChainStatus::Verified(_))
    }
}

/// Ω vertices reachable from `w` along inner edges of color `k` (or `w` itself on Ω).
fn anchors(e: &Embedding, t: &Tiling, r: &RegionSpec, k: Color, w: Vertex) -> Vec<Vertex> {
    if r.omega.contains(&w) {
        return vec![w];
    }
    let mut seen = BTreeSet::from([w]);
    let mut stack = vec![w];
    let mut out = BTreeSet::new();
    while let Some(a) = stack.pop() {
        for (i, &b) in e.rotation(a).iter().enumerate() {
            let y = e.incident_edges(a)[i];
            if t.color(y) != k.edge() || !r.is_inner_edge(y) || !seen.insert(b) {
                continue;
            }
            if r.omega.contains(&b) {
                out.insert(b);
            } else {
                stack.push(b);
            }
        }
    }
    out.into_iter().collect()
}

/// Shortest `k`-colored path from `a` to `b` using Σ′ edges.
fn outside_path(e: &Embedding, t: &Tiling, r: &RegionSpec, k: Color, a: Vertex, b: Vertex) -> Option<Vec<Vertex>> {
    let n = e.vertex_count();
    let mut prev = vec![usize::MAX; n];
    prev[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        if u == b {
            let mut path = vec![b];
            let mut cur = b;
            while cur != a {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for (i, &w) in e.rotation(u).iter().enumerate() {
            let y = e.incident_edges(u)[i];
            if prev[w] == usize::MAX && t.color(y) == k.edge() && !r.is_inner_edge(y) {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Fills `x` with `k` and tries to read a proper 4-coloring off the single(k) view.
pub fn escape_by_filling(e: &Embedding, t: &Tiling, x: EdgeId, k: Color) -> Option<FourColoring> {
    let mut s = t.single_view(k);
    s.set(x, k.edge());
    if s.colors().contains(&EdgeColor::Abandoned) || tiling::validate(e, &s).is_err() {
        return None;
    }
    let w = tiling::check_grand(e, &s, k)?;
    tiling::extract_four_coloring(e, &s, k, &w).ok()
}

/// One constraint per (abandoned diamond, chain color) for TypeA and TypeB2
/// diamonds of abandoned edges inside Σ.
pub fn chain_constraints(e: &Embedding, t: &Tiling, r: &RegionSpec) -> Vec<KempeConstraint> {
    let mut out = Vec::new();
    for x in t.abandoned() {
        if !r.is_inner_edge(x) {
            continue;
        }
        let Ok(d) = classify_diamond(e, t, x) else {
            continue;
        };
        if !matches!(d.class, DiamondClass::TypeA | DiamondClass::TypeB2) {
            continue;
        }
        let (u, v) = e.endpoints(x);
        for &k in &d.chains {
            let (au, av) = (anchors(e, t, r, k, u), anchors(e, t, r, k, v));
            let mut alternatives: Vec<(Vertex, Vertex)> = au
                .iter()
                .flat_map(|&a| av.iter().map(move |&b| (a, b)))
                .filter(|(a, b)| a != b)
                .collect();
            alternatives.sort_unstable();
            let found = alternatives
                .iter()
                .find_map(|&(a, b)| outside_path(e, t, r, k, a, b).map(|p| ((a, b), p)));
            let (endpoints, status) = match found {
                Some((ends, path)) => (ends, ChainStatus::Verified(path)),
                None => {
                    let ends = alternatives.first().copied().unwrap_or((u, v));
                    match escape_by_filling(e, t, x, k) {
                        Some(f) => (ends, ChainStatus::Refuted(f)),
                        None => (ends, ChainStatus::Unverified),
                    }
                }
            };
            out.push(KempeConstraint {
                edge: x,
                color: k,
                endpoints,
                alternatives,
                status,
            });
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Crossing {
    /// One of the two non-`c` colors; ECS swaps them.
    Normal,
    /// A `c` or abandoned edge; ECS toggles the two.
    Generalized,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralizedRing {
    pub color: Color,
    /// Dual nodes in walk order; `edges[i]` joins `nodes[i]` and `nodes[i + 1]` cyclically.
    pub nodes: Vec<usize>,
    pub edges: Vec<EdgeId>,
    pub crossings: Vec<Crossing>,
}

impl GeneralizedRing {
    pub fn generalized_edges(&self) -> Vec<EdgeId> {
        self.edges
            .iter()
            .zip(&self.crossings)
            .filter(|(_, &k)| k == Crossing::Generalized)
            .map(|(&x, _)| x)
            .collect()
    }

    fn key(&self) -> Vec<EdgeId> {
        let mut k = self.edges.clone();
        k.sort_unstable();
        k
    }
}

/// Abandoned edges plus `c` edges at a TD vertex.
pub fn default_permit(e: &Embedding, t: &Tiling, c: Color, r: &RegionSpec) -> Vec<EdgeId> {
    (0..e.edge_count())
        .map(EdgeId)
        .filter(|&x| {
            let (u, v) = e.endpoints(x);
            match t.color(x) {
                EdgeColor::Abandoned => r.is_inner_edge(x) || r.is_omega_edge(x),
                col => col == c.edge() && (r.is_td(u) || r.is_td(v)),
            }
        })
        .collect()
}

struct RingSearch<'a> {
    e: &'a Embedding,
    t: &'a Tiling,
    c: Color,
    dg: DualGraph,
    permit: Vec<bool>,
    /// Dual nodes the walk may use.
    allowed: Vec<bool>,
    used_node: Vec<bool>,
    used_edge: Vec<bool>,
    nodes: Vec<usize>,
    edges: Vec<EdgeId>,
    seen: BTreeSet<Vec<EdgeId>>,
    found: Vec<GeneralizedRing>,
    limit: usize,
    budget: usize,
}

impl RingSearch<'_> {
    fn kind(&self, x: EdgeId) -> Option<Crossing> {
        match self.t.color(x) {
            EdgeColor::Black => None,
            _ if self.permit[x.0] => Some(Crossing::Generalized),
            EdgeColor::Abandoned => None,
            col if col == self.c.edge() => None,
            _ => Some(Crossing::Normal),
        }
    }

    /// Two normal crossings through one triangle must alternate.
    fn passage_ok(&self, a: EdgeId, b: EdgeId) -> bool {
        match (self.kind(a), self.kind(b)) {
            (Some(Crossing::Normal), Some(Crossing::Normal)) => self.t.color(a) != self.t.color(b),
            _ => true,
        }
    }

    fn ring(&self) -> GeneralizedRing {
        GeneralizedRing {
            color: self.c,
            nodes: self.nodes.clone(),
            edges: self.edges.clone(),
            crossings: self
                .edges
                .iter()
                .map(|&x| self.kind(x).expect("crossable"))
                .collect(),
        }
    }

    fn done(&self) -> bool {
        self.found.len() >= self.limit || self.budget == 0
    }

    fn dfs(&mut self, node: usize) {
        if self.done() {
            return;
        }
        self.budget -= 1;
        let last = *self.edges.last().expect("walk has a first edge");
        let links = self.dg.node_links[node].clone();
        for y in links {
            if self.done() {
                return;
            }
            if y == last || self.used_edge[y.0] || self.kind(y).is_none() || !self.passage_ok(last, y) {
                continue;
            }
            let next = self.dg.other_end(y, node);
            if next == self.nodes[0] {
                if !self.passage_ok(y, self.edges[0]) {
                    continue;
                }
                self.edges.push(y);
                let r = self.ring();
                self.edges.pop();
                if self.seen.insert(r.key()) && ecs_generalized(self.e, self.t, &r).is_ok() {
                    self.found.push(r);
                }
                continue;
            }
            if self.used_node[next] || !self.allowed[next] || self.dg.is_pseudo(next) {
                continue;
            }
            self.used_node[next] = true;
            self.used_edge[y.0] = true;
            self.nodes.push(next);
            self.edges.push(y);
            self.dfs(next);
            self.nodes.pop();
            self.edges.pop();
            self.used_node[next] = false;
            self.used_edge[y.0] = false;
        }
    }
}

const RING_BUDGET: usize = 200_000;

/// Generalized `c`-rings through `through` whose ECS gives a valid tiling, in
/// search order, deduplicated by crossed-edge set. With `inside` the walk stays
/// in Σ triangles.
pub fn generalized_rings(
    e: &Embedding,
    t: &Tiling,
    c: Color,
    r: &RegionSpec,
    through: EdgeId,
    permit: &[EdgeId],
    inside: bool,
    limit: usize,
) -> Result<Vec<GeneralizedRing>, KempeError> {
    check_mode(t)?;
    if let Some(&x) = permit.iter().find(|&&x| !(r.is_inner_edge(x) || r.is_omega_edge(x))) {
        return Err(KempeError::PermitOutsideSigma(x));
    }
    let dg = build_dual(e, t);
    let mut permit_mask = vec![false; e.edge_count()];
    for &x in permit {
        permit_mask[x.0] = true;
    }
    let allowed = (0..dg.nodes.len())
        .map(|n| match dg.nodes[n] {
            crate::dual::DualNode::Triangle(f) => !inside || r.is_sigma_face(f),
            crate::dual::DualNode::Pseudo { .. } => false,
        })
        .collect();
    let (a, b) = dg.links[through.0];
    let mut s = RingSearch {
        e,
        t,
        c,
        used_node: vec![false; dg.nodes.len()],
        used_edge: vec![false; e.edge_count()],
        dg,
        permit: permit_mask,
        allowed,
        nodes: vec![a],
        edges: vec![through],
        seen: BTreeSet::new(),
        found: Vec::new(),
        limit,
        budget: RING_BUDGET,
    };
    if s.kind(through).is_none() || !s.allowed[a] || !s.allowed[b] {
        return Ok(Vec::new());
    }
    s.used_node[a] = true;
    s.used_node[b] = true;
    s.used_edge[through.0] = true;
    s.nodes.push(b);
    s.dfs(b);
    Ok(s.found)
}

/// First generalized `c`-ring leaving Σ through the Ω edge `exit`.
pub fn find_generalized_ring(
    e: &Embedding,
    t: &Tiling,
    c: Color,
    r: &RegionSpec,
    exit: EdgeId,
    permit: &[EdgeId],
) -> Result<Option<GeneralizedRing>, KempeError> {
    if !r.is_omega_edge(exit) {
        return Err(KempeError::NotOnOmega(exit));
    }
    Ok(generalized_rings(e, t, c, r, exit, permit, false, 1)?.pop())
}

/// Normal crossings swap the two non-`c` colors; generalized ones toggle `c`
/// and abandoned.
pub fn ecs_generalized(e: &Embedding, t: &Tiling, ring: &GeneralizedRing) -> Result<Tiling, KempeError> {
    check_mode(t)?;
    let (a, b) = ring.color.others();
    let c = ring.color.edge();
    let mut out = t.clone();
    for (&x, &k) in ring.edges.iter().zip(&ring.crossings) {
        let col = t.color(x);
        let new = match k {
            Crossing::Normal if col == a.edge() => b.edge(),
            Crossing::Normal if col == b.edge() => a.edge(),
            Crossing::Generalized if col == c => EdgeColor::Abandoned,
            Crossing::Generalized if col == EdgeColor::Abandoned => c,
            _ => return Err(KempeError::Stale(x)),
        };
        out.set(x, new);
    }
    let out = settle(out);
    tiling::validate(e, &out)?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SigmaMethod {
    /// ECS on a generalized ring that stays inside Σ.
    Ring(GeneralizedRing),
    /// New `color` edges inside Σ; the rest of Σ is recompleted.
    Retile { color: Color, assignment: Vec<EdgeId> },
}

/// Re-colors inside Σ only. Σ′ and Co(Ω) are left as they are; a retile that
/// cannot be completed abandons inner edges until it can.
pub fn sigma_adjust(e: &Embedding, t: &Tiling, r: &RegionSpec, method: &SigmaMethod) -> Result<Tiling, KempeError> {
    check_mode(t)?;
    let out = match method {
        SigmaMethod::Ring(ring) => {
            if let Some(&x) = ring.edges.iter().find(|&&x| !r.is_inner_edge(x)) {
                return Err(KempeError::RingLeavesSigma(x));
            }
            ecs_generalized(e, t, ring)?
        }
        SigmaMethod::Retile { color, assignment } => retile(e, t, r, *color, assignment)?,
    };
    debug_assert!(r.sigma_prime_edges.iter().all(|&x| out.color(x) == t.color(x)));
    Ok(out)
}

fn retile(e: &Embedding, t: &Tiling, r: &RegionSpec, c: Color, assignment: &[EdgeId]) -> Result<Tiling, KempeError> {
    let m = e.edge_count();
    let mut is_c = vec![false; m];
    for &x in assignment {
        if !(r.is_inner_edge(x) || r.is_omega_edge(x)) {
            return Err(KempeError::PermitOutsideSigma(x));
        }
        is_c[x.0] = true;
    }
    if let Some(&x) = r
        .omega_edges
        .iter()
        .find(|&&x| is_c[x.0] != (t.color(x) == c.edge()))
    {
        return Err(KempeError::RetileBoundary(x));
    }
    for &f in &r.sigma_faces {
        let face = e.face(f);
        if face.edges.iter().filter(|x| is_c[x.0]).count() != 1 {
            return Err(KempeError::RetileCount(face.vertices.clone()));
        }
    }
    let mut abandoned: Vec<bool> = (0..m).map(|i| t.colors()[i] == EdgeColor::Abandoned && !r.is_inner_edge(EdgeId(i))).collect();
    loop {
        match complete_inside(e, t, r, c, &is_c, &abandoned) {
            Ok(colors) => {
                let out = settle(Tiling::new_unchecked(Mode::Partial, colors));
                tiling::validate(e, &out)?;
                return Ok(out);
            }
            Err(conflict) => {
                let pick = conflict.into_iter().find(|&x| {
                    r.is_inner_edge(x)
                        && !abandoned[x.0]
                        && e.edge_faces(x).iter().all(|&f| {
                            e.face(f).edges.iter().all(|y| !abandoned[y.0])
                        })
                });
                match pick {
                    Some(x) => abandoned[x.0] = true,
                    None => return Err(KempeError::Invalid(TilingError::OddConflictCycle(Vec::new()))),
                }
            }
        }
    }
}

/// 2-colors the non-`c` inner edges so every Σ triangle is rainbow; triangles
/// with an abandoned edge are skipped. On failure returns the edges involved.
fn complete_inside(
    e: &Embedding,
    t: &Tiling,
    r: &RegionSpec,
    c: Color,
    is_c: &[bool],
    abandoned: &[bool],
) -> Result<Vec<EdgeColor>, Vec<EdgeId>> {
    let (a, b) = c.others();
    let m = e.edge_count();
    let mut colors = t.colors().to_vec();
    let free = |x: EdgeId| r.is_inner_edge(x) && !is_c[x.0] && !abandoned[x.0];
    for i in 0..m {
        let x = EdgeId(i);
        if r.is_inner_edge(x) {
            colors[i] = if abandoned[i] {
                EdgeColor::Abandoned
            } else if is_c[i] {
                c.edge()
            } else {
                EdgeColor::Black
            };
        }
    }
    // pairs of edges that must differ
    let mut adj: Vec<Vec<EdgeId>> = vec![Vec::new(); m];
    for &f in &r.sigma_faces {
        let face = e.face(f);
        if face.edges.iter().any(|x| abandoned[x.0]) {
            continue;
        }
        let pair: Vec<EdgeId> = face.edges.iter().copied().filter(|x| !is_c[x.0]).collect();
        adj[pair[0].0].push(pair[1]);
        adj[pair[1].0].push(pair[0]);
    }
    let other = |x: EdgeColor| if x == a.edge() { b.edge() } else { a.edge() };
    let mut queue = VecDeque::new();
    // fixed edges seed the propagation first
    for i in 0..m {
        let x = EdgeId(i);
        if !free(x) && colors[i] != EdgeColor::Black && !adj[i].is_empty() {
            queue.push_back(x);
        }
    }
    loop {
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x.0] {
                let want = other(colors[x.0]);
                if colors[y.0] == EdgeColor::Black {
                    colors[y.0] = want;
                    queue.push_back(y);
                } else if colors[y.0] != want {
                    return Err(vec![x, y]);
                }
            }
        }
        match (0..m).find(|&i| colors[i] == EdgeColor::Black && free(EdgeId(i))) {
            Some(i) => {
                colors[i] = a.edge();
                queue.push_back(EdgeId(i));
            }
            None => break,
        }
    }
    Ok(colors)
}

/// Visits every partial tiling whose only abandoned edge is `x`: the rgb tilings
/// of the graph with `x` deleted, where the diamond becomes a quad facet.
pub fn for_each_with_abandoned<F>(e: &Embedding, x: EdgeId, mut visit: F) -> Result<(), KempeError>
where
    F: FnMut(&Tiling) -> ControlFlow<()>,
{
    let Surround::Diamond { apexes: (p, q), .. } = e.surround(x) else {
        return Err(KempeError::NoDiamond(x));
    };
    let (u, v) = e.endpoints(x);
    let mut rot = e.rotations().to_vec();
    rot[u].retain(|&w| w != v);
    rot[v].retain(|&w| w != u);
    let quad = [u, p, v, q];
    let mut outer: Vec<Vec<Vertex>> = e.outer_facets().to_vec();
    let face = trace_faces(&rot)
        .into_iter()
        .find(|f| f.len() == 4 && quad.iter().all(|w| f.contains(w)) && !outer.iter().any(|o| same_cycle(o, f)))
        .ok_or(KempeError::NoDiamond(x))?;
    outer.push(face);
    let reduced = Embedding::new(rot, outer).map_err(|_| KempeError::NoDiamond(x))?;
    let map: Vec<EdgeId> = e
        .edges()
        .iter()
        .map(|&(a, b)| reduced.edge_between(a, b).unwrap_or(EdgeId(usize::MAX)))
        .collect();
    let mut colors = vec![EdgeColor::Abandoned; e.edge_count()];
    tiling::for_each_tiling(&reduced, Mode::Rgb, |t| {
        for (i, &y) in map.iter().enumerate() {
            if y.0 != usize::MAX {
                colors[i] = t.color(y);
            }
        }
        visit(&Tiling::new_unchecked(Mode::Partial, colors.clone()))
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::template::{host, Instance, TemplateName};
    use crate::tiling::{boundary_word, canonical_word};

    fn ptg() -> (Instance, RegionSpec, Vec<EdgeId>) {
        let h = host(TemplateName::Ptg);
        let r = h.region().unwrap();
        let v = h.vertex("v");
        let spokes = ["v1", "v2", "v3", "v4", "v5"]
            .iter()
            .map(|l| h.embedding.edge_between(v, h.vertex(l)).unwrap())
            .collect();
        (h, r, spokes)
    }

    fn partials(e: &Embedding, x: EdgeId) -> Vec<Tiling> {
        let mut out = Vec::new();
        for_each_with_abandoned(e, x, |t| {
            out.push(t.clone());
            ControlFlow::Continue(())
        })
        .unwrap();
        out
    }

    fn class_of(e: &Embedding, t: &Tiling) -> (Vec<EdgeColor>, BTreeSet<(Color, Vertex, Vertex)>) {
        let r = ptg().1;
        let word = canonical_word(&boundary_word(e, t, &r.omega).unwrap().word);
        let chains = chain_constraints(e, t, &r)
            .into_iter()
            .filter(|k| k.is_verified())
            .map(|k| (k.color, k.endpoints.0, k.endpoints.1))
            .collect();
        (word, chains)
    }

    #[test]
    fn ptg_partial_tilings_split_into_a_b2_c() {
        let (h, _, spokes) = ptg();
        let e = &h.embedding;
        let all = partials(e, spokes[0]);
        assert_eq!(all.len(), 108);
        let mut counts = [0usize; 4];
        for t in &all {
            let d = classify_diamond(e, t, spokes[0]).unwrap();
            counts[d.class as usize] += 1;
            match d.class {
                DiamondClass::TypeA => {
                    let q = d.quad[0].color().unwrap();
                    let (a, b) = q.others();
                    assert_eq!(d.chains, vec![a, b]);
                }
                DiamondClass::TypeB2 => {
                    assert_eq!(d.chains.len(), 1);
                    assert!(d.quad.iter().all(|&z| z != d.chains[0].edge()));
                }
                DiamondClass::TypeC => {
                    let full = d.completion.unwrap();
                    assert_eq!(full.mode(), Mode::Rgb);
                    tiling::validate(e, &full).unwrap();
                }
                DiamondClass::TypeB3 => unreachable!("one abandoned edge never leaves three quad colors"),
            }
        }
        assert_eq!(counts, [12, 36, 0, 60]);
    }

    #[test]
    fn quad_patterns_give_the_expected_types() {
        let (h, _, spokes) = ptg();
        let e = &h.embedding;
        let all = partials(e, spokes[0]);
        let find = |pat: &dyn Fn(&[EdgeColor; 4]) -> bool| {
            all.iter()
                .map(|t| classify_diamond(e, t, spokes[0]).unwrap())
                .find(|d| pat(&d.quad))
                .expect("pattern occurs")
        };
        let (b, g, r) = (EdgeColor::Blue, EdgeColor::Green, EdgeColor::Red);
        let d = find(&|q| *q == [b, b, b, b]);
        assert_eq!(d.class, DiamondClass::TypeA);
        assert_eq!(d.chains, vec![Color::Red, Color::Green]);
        let d = find(&|q| *q == [g, g, b, b]);
        assert_eq!(d.class, DiamondClass::TypeB2);
        assert_eq!(d.chains, vec![Color::Red]);
        let d = find(&|q| *q == [r, g, r, g]);
        assert_eq!(d.class, DiamondClass::TypeC);
        let full = d.completion.unwrap();
        assert_eq!(full.color(spokes[0]), EdgeColor::Blue);
    }

    #[test]
    fn non_abandoned_edge_is_rejected() {
        let (h, _, spokes) = ptg();
        let t = tiling::enumerate(&h.embedding, Mode::Rgb, Some(1)).remove(0);
        assert_eq!(
            classify_diamond(&h.embedding, &t, spokes[0]).unwrap_err(),
            KempeError::NotAbandoned(spokes[0])
        );
    }

    #[test]
    fn rings_are_involutions_and_conserve_c_plus_abandoned() {
        let (h, r, spokes) = ptg();
        let e = &h.embedding;
        let mut seen = 0;
        for t in partials(e, spokes[0]) {
            for c in Color::ALL {
                let permit = default_permit(e, &t, c, &r);
                for ring in generalized_rings(e, &t, c, &r, spokes[0], &permit, false, 8).unwrap() {
                    seen += 1;
                    let s = ecs_generalized(e, &t, &ring).unwrap();
                    let back = ecs_generalized(e, &s, &ring).unwrap();
                    assert_eq!(back.colors(), t.colors());
                    let cy = |u: &Tiling| u.count(c.edge()) + u.count(EdgeColor::Abandoned);
                    assert_eq!(cy(&s), cy(&t));
                    for &x in &r.sigma_prime_edges {
                        if t.color(x) == c.edge() {
                            assert_eq!(s.color(x), c.edge());
                        }
                    }
                }
            }
        }
        assert!(seen > 100);
    }

    #[test]
    fn typea_on_icosahedron_escapes_through_either_chain() {
        let (h, r, spokes) = ptg();
        let e = &h.embedding;
        for t in partials(e, spokes[0]) {
            let d = classify_diamond(e, &t, spokes[0]).unwrap();
            if d.class != DiamondClass::TypeA {
                continue;
            }
            let cs = chain_constraints(e, &t, &r);
            assert_eq!(cs.len(), 2);
            for k in &cs {
                let ChainStatus::Refuted(f) = &k.status else {
                    panic!("expected a refuted chain, got {:?}", k.status);
                };
                assert!(f.is_proper(e));
            }
        }
    }

    #[test]
    fn typeb2_chain_is_verified_outside() {
        // a hub over the TD55 hexagon leaves room for real Kempe chains
        let h = crate::template::instantiate(
            &crate::template::template(TemplateName::TD55),
            &crate::template::wheel_cap(6),
            0,
            0,
        )
        .unwrap();
        let e = &h.embedding;
        let r = h.region().unwrap();
        let ab = e.edge_between(h.vertex("a"), h.vertex("b")).unwrap();
        let mut verified = 0;
        for t in partials(e, ab) {
            if classify_diamond(e, &t, ab).unwrap().class != DiamondClass::TypeB2 {
                continue;
            }
            for k in chain_constraints(e, &t, &r) {
                if let ChainStatus::Verified(path) = &k.status {
                    verified += 1;
                    assert_eq!((path[0], *path.last().unwrap()), k.endpoints);
                    for w in path.windows(2) {
                        let x = e.edge_between(w[0], w[1]).unwrap();
                        assert_eq!(t.color(x), k.color.edge());
                        assert!(!r.is_inner_edge(x));
                    }
                }
            }
        }
        assert_eq!(verified, 24);
    }

    #[test]
    fn typeb3_gives_no_constraint() {
        let (h, r, spokes) = ptg();
        let e = &h.embedding;
        let mut hit = false;
        for t in partials(e, spokes[0]) {
            let d = classify_diamond(e, &t, spokes[0]).unwrap();
            if d.class != DiamondClass::TypeA {
                continue;
            }
            // a ring of the quad color abandons two spokes with three-colored quads
            let q = d.quad[0].color().unwrap();
            let permit = default_permit(e, &t, q, &r);
            for ring in generalized_rings(e, &t, q, &r, spokes[0], &permit, false, 8).unwrap() {
                let s = ecs_generalized(e, &t, &ring).unwrap();
                let b3 = s
                    .abandoned()
                    .iter()
                    .all(|&x| classify_diamond(e, &s, x).unwrap().class == DiamondClass::TypeB3);
                if s.abandoned().len() == 2 && b3 {
                    hit = true;
                    assert!(chain_constraints(e, &s, &r).is_empty());
                }
            }
        }
        assert!(hit);
    }

    #[test]
    fn abandoned_spoke_moves_to_the_next_spoke() {
        let (h, r, spokes) = ptg();
        let e = &h.embedding;
        // leaves Σ through v5v1, comes back through v2v3 and crosses vv2
        let exit = e.edge_between(h.vertex("v5"), h.vertex("v1")).unwrap();
        let moved = partials(e, spokes[0]).iter().any(|t| {
            Color::ALL.iter().any(|&c| {
                let permit = default_permit(e, t, c, &r);
                generalized_rings(e, t, c, &r, spokes[0], &permit, false, 8)
                    .unwrap()
                    .iter()
                    .filter(|g| g.edges.contains(&exit))
                    .any(|g| ecs_generalized(e, t, g).unwrap().abandoned() == vec![spokes[1]])
            })
        });
        assert!(moved);
    }

    #[test]
    fn conjugate_rings_give_equivalent_results() {
        let (h, r, spokes) = ptg();
        let e = &h.embedding;
        let mut pairs = 0;
        for t in partials(e, spokes[0]) {
            for c in Color::ALL {
                let permit = default_permit(e, &t, c, &r);
                let outs: Vec<Tiling> = generalized_rings(e, &t, c, &r, spokes[0], &permit, false, 8)
                    .unwrap()
                    .iter()
                    .filter(|g| g.edges.iter().any(|&y| r.is_omega_edge(y)))
                    .map(|g| ecs_generalized(e, &t, g).unwrap())
                    .filter(|s| s.abandoned().is_empty())
                    .collect();
                for w in outs.windows(2) {
                    pairs += 1;
                    assert_eq!(class_of(e, &w[0]), class_of(e, &w[1]));
                }
            }
        }
        assert!(pairs > 0);
    }

    #[test]
    fn empty_permit_without_normal_ring_finds_nothing() {
        let (h, r, spokes) = ptg();
        let e = &h.embedding;
        let t = &partials(e, spokes[0])[0];
        // the abandoned edge itself is not crossable without a permit
        for c in Color::ALL {
            assert!(generalized_rings(e, t, c, &r, spokes[0], &[], false, 8).unwrap().is_empty());
        }
    }

    #[test]
    fn permit_outside_sigma_is_an_error() {
        let (h, r, spokes) = ptg();
        let e = &h.embedding;
        let t = &partials(e, spokes[0])[0];
        let far = r.sigma_prime_edges.iter().copied().find(|&x| !r.is_omega_edge(x)).unwrap();
        assert_eq!(
            generalized_rings(e, t, Color::Red, &r, spokes[0], &[far], false, 1).unwrap_err(),
            KempeError::PermitOutsideSigma(far)
        );
    }

    #[test]
    fn ring_inside_sigma_keeps_the_boundary_word() {
        let (h, r, spokes) = ptg();
        let e = &h.embedding;
        let mut done = 0;
        for t in partials(e, spokes[0]) {
            for c in Color::ALL {
                let permit = default_permit(e, &t, c, &r);
                for ring in generalized_rings(e, &t, c, &r, spokes[0], &permit, true, 4).unwrap() {
                    let s = sigma_adjust(e, &t, &r, &SigmaMethod::Ring(ring)).unwrap();
                    for &x in &r.sigma_prime_edges {
                        assert_eq!(s.color(x), t.color(x));
                    }
                    done += 1;
                }
            }
        }
        assert!(done > 0);
    }

    fn retile_runs(name: TemplateName, red: &[(&str, &str)]) -> Vec<Tiling> {
        let h = host(name);
        let e = &h.embedding;
        let r = h.region().unwrap();
        let assignment: Vec<EdgeId> = red
            .iter()
            .map(|(a, b)| e.edge_between(h.vertex(a), h.vertex(b)).unwrap())
            .collect();
        let mut out = Vec::new();
        for t in tiling::enumerate(e, Mode::Rgb, None) {
            for p in &tiling::PERMUTATIONS {
                let t = tiling::permute(&t, p);
                if r.omega_edges.iter().any(|&x| t.color(x) == EdgeColor::Red) {
                    continue;
                }
                let method = SigmaMethod::Retile {
                    color: Color::Red,
                    assignment: assignment.clone(),
                };
                let s = sigma_adjust(e, &t, &r, &method).unwrap();
                assert_eq!(
                    boundary_word(e, &s, &r.omega).unwrap().word,
                    boundary_word(e, &t, &r.omega).unwrap().word
                );
                for &x in &assignment {
                    assert_eq!(s.color(x), EdgeColor::Red);
                }
                out.push(s);
            }
        }
        assert!(!out.is_empty());
        out
    }

    #[test]
    fn five_cubed_retile_is_valid_and_red_even() {
        let h = host(TemplateName::TD5cubed);
        let red = [("d", "a"), ("a", "v2"), ("v3", "c"), ("c", "b"), ("b", "v5")];
        for s in retile_runs(TemplateName::TD5cubed, &red) {
            assert!(tiling::find_mono_odd_cycle(&h.embedding, &s.single_view(Color::Red), Color::Red).is_none());
        }
    }

    #[test]
    fn five_fourth_clean_retile_has_only_even_red_cycles() {
        let h = host(TemplateName::TD5fourth);
        let red = [("d", "v1"), ("d", "v5"), ("a", "v2"), ("a", "b"), ("b", "v4"), ("c", "v3")];
        let runs = retile_runs(TemplateName::TD5fourth, &red);
        let clean: Vec<&Tiling> = runs.iter().filter(|s| s.abandoned().is_empty()).collect();
        assert!(!clean.is_empty());
        for s in clean {
            assert!(tiling::find_mono_odd_cycle(&h.embedding, &s.single_view(Color::Red), Color::Red).is_none());
        }
    }

    #[test]
    fn retile_with_two_reds_in_a_triangle_is_rejected() {
        let h = host(TemplateName::TD5cubed);
        let e = &h.embedding;
        let r = h.region().unwrap();
        let t = tiling::enumerate(e, Mode::Rgb, Some(1)).remove(0);
        let x = e.edge_between(h.vertex("a"), h.vertex("b")).unwrap();
        let y = e.edge_between(h.vertex("b"), h.vertex("c")).unwrap();
        let method = SigmaMethod::Retile {
            color: Color::Red,
            assignment: vec![x, y],
        };
        assert!(matches!(
            sigma_adjust(e, &t, &r, &method),
            Err(KempeError::RetileBoundary(_) | KempeError::RetileCount(_))
        ));
    }
}
