//! Diamond routes, diamond rings, their ECS and orientation sets.
//!
//! A directed route `e1 -> e2 -> ... -> ek` walks the dual graph: it starts in
//! the in-triangle of `e1`, crosses `e1` into the out-triangle, leaves through
//! one of that triangle's black edges into the in-triangle of `e2`, and so on.
//! In an rgb tiling the two non-`c` colors count as black.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{EdgeId, Embedding, FaceId, Vertex};
use crate::tiling::{self, Color, EdgeColor, Mode, Tiling, TilingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RouteError {
    #[error("edge {0:?} is not {1:?}")]
    NotColored(EdgeId, Color),
    #[error("vertex {1} is not an apex of edge {0:?}")]
    BadApex(EdgeId, Vertex),
    #[error("tiling mode {0:?} does not support diamond routes")]
    Mode(Mode),
    #[error("open route ends at an interior edge {0:?}")]
    InteriorTerminal(EdgeId),
    #[error("route does not match the tiling at edge {0:?}")]
    Stale(EdgeId),
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiamondRoute {
    pub color: Color,
    /// The distinct `c`-edges `e1..ek`.
    pub edges: Vec<EdgeId>,
    /// `connectors[i]` is the black edge leaving the out-triangle of `edges[i]`.
    /// A ring has `k` connectors (the last one returns to `e1`), an open route `k - 1`.
    pub connectors: Vec<EdgeId>,
    /// In-face and out-face of every `edges[i]`, in walk order. End faces may be outer facets.
    pub faces: Vec<(FaceId, FaceId)>,
    pub ring: bool,
}

impl DiamondRoute {
    /// Every edge whose color the ECS toggles.
    pub fn crossed(&self) -> Vec<EdgeId> {
        let mut v = self.edges.clone();
        v.extend(self.connectors.iter().copied());
        v
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RouteTarget {
    Edge(EdgeId),
    /// Any `c`-edge on an outer facet, crossed outward.
    Outer,
    /// Back into the initial in-triangle.
    Ring,
}

fn is_c(t: &Tiling, c: Color, x: EdgeId) -> bool {
    t.color(x) == c.edge()
}

fn is_black(t: &Tiling, c: Color, x: EdgeId) -> bool {
    !matches!(t.color(x), EdgeColor::Abandoned) && !is_c(t, c, x)
}

fn check_mode(t: &Tiling, c: Color) -> Result<(), RouteError> {
    match t.mode() {
        Mode::Rgb => Ok(()),
        Mode::Single(k) if k == c => Ok(()),
        m => Err(RouteError::Mode(m)),
    }
}

/// Out-triangle of `(x, apex)` and the face across `x` from it.
fn initial_faces(e: &Embedding, x: EdgeId, apex: Vertex) -> Result<(FaceId, FaceId), RouteError> {
    let out = e.triangle_at(x, apex).ok_or(RouteError::BadApex(x, apex))?;
    Ok((e.across(x, out), out))
}

/// The unique `c`-edge of a triangle, if exactly one.
fn c_edge_of(e: &Embedding, t: &Tiling, c: Color, f: FaceId) -> Option<EdgeId> {
    let face = e.face(f);
    if !face.is_triangle() {
        return None;
    }
    let mut it = face.edges.iter().copied().filter(|&y| is_c(t, c, y));
    let first = it.next()?;
    it.next().is_none().then_some(first)
}

struct Search<'a> {
    e: &'a Embedding,
    t: &'a Tiling,
    c: Color,
    max_len: usize,
    budget: usize,
    used: Vec<bool>,
    route: DiamondRoute,
}

enum Step {
    Found,
    Continue,
    Stop,
}

impl Search<'_> {
    /// Depth-first extension from the current out-triangle; `visit` sees every
    /// route prefix (with its last edge) and decides whether to stop.
    fn dfs(&mut self, visit: &mut dyn FnMut(&DiamondRoute, Option<EdgeId>) -> Step) -> bool {
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        let (_, out) = *self.route.faces.last().expect("non-empty route");
        if !self.e.face(out).is_triangle() || self.route.edges.len() >= self.max_len {
            return false;
        }
        let mut blacks: Vec<EdgeId> = self
            .e
            .face(out)
            .edges
            .iter()
            .copied()
            .filter(|&y| is_black(self.t, self.c, y))
            .collect();
        blacks.sort_unstable();
        for b in blacks {
            let inn = self.e.across(b, out);
            let Some(next) = c_edge_of(self.e, self.t, self.c, inn) else {
                continue;
            };
            if next == self.route.edges[0] && inn == self.route.faces[0].0 {
                self.route.connectors.push(b);
                self.route.ring = true;
                let step = visit(&self.route, None);
                self.route.ring = false;
                self.route.connectors.pop();
                if let Step::Found | Step::Stop = step {
                    return true;
                }
                continue;
            }
            if self.used[next.0] {
                continue;
            }
            let nout = self.e.across(next, inn);
            self.used[next.0] = true;
            self.route.edges.push(next);
            self.route.connectors.push(b);
            self.route.faces.push((inn, nout));
            let stop = match visit(&self.route, Some(next)) {
                Step::Found | Step::Stop => true,
                Step::Continue => self.dfs(visit),
            };
            if stop {
                return true;
            }
            self.route.faces.pop();
            self.route.connectors.pop();
            self.route.edges.pop();
            self.used[next.0] = false;
        }
        false
    }
}

/// Finds a route from the out-triangle `(edge, apex)` to the target; exhaustive
/// backtracking, lower edge ids first.
pub fn search_diamond_route(
    e: &Embedding,
    t: &Tiling,
    c: Color,
    from: (EdgeId, Vertex),
    to: RouteTarget,
    max_len: usize,
) -> Result<Option<DiamondRoute>, RouteError> {
    check_mode(t, c)?;
    let (e1, apex) = from;
    if !is_c(t, c, e1) {
        return Err(RouteError::NotColored(e1, c));
    }
    let (inn, out) = initial_faces(e, e1, apex)?;
    let start = DiamondRoute {
        color: c,
        edges: vec![e1],
        connectors: Vec::new(),
        faces: vec![(inn, out)],
        ring: false,
    };
    let done = |r: &DiamondRoute, last: Option<EdgeId>| -> bool {
        match to {
            RouteTarget::Ring => r.ring,
            RouteTarget::Edge(x) => !r.ring && last == Some(x),
            RouteTarget::Outer => {
                !r.ring && last.is_some() && !e.face(r.faces.last().expect("face").1).is_triangle()
            }
        }
    };
    // the singleton route
    let outward = !e.face(out).is_triangle();
    if matches!(to, RouteTarget::Edge(x) if x == e1) || (to == RouteTarget::Outer && outward) {
        return Ok(Some(start));
    }
    let mut used = vec![false; e.edge_count()];
    used[e1.0] = true;
    let mut s = Search {
        e,
        t,
        c,
        max_len,
        budget: usize::MAX,
        used,
        route: start,
    };
    let mut found = None;
    s.dfs(&mut |r, last| {
        if done(r, last) {
            found = Some(r.clone());
            Step::Found
        } else {
            Step::Continue
        }
    });
    Ok(found)
}

/// Every diamond ring of color `c` (up to `max_len` edges), each reported once:
/// starting at its smallest edge, in the direction of the smaller first connector.
pub fn enumerate_rings(
    e: &Embedding,
    t: &Tiling,
    c: Color,
    max_len: usize,
    limit: Option<usize>,
) -> Result<Vec<DiamondRoute>, RouteError> {
    check_mode(t, c)?;
    let mut out: Vec<DiamondRoute> = Vec::new();
    let mut seen: BTreeSet<Vec<EdgeId>> = BTreeSet::new();
    for i in 0..e.edge_count() {
        let e1 = EdgeId(i);
        if !is_c(t, c, e1) {
            continue;
        }
        for f in e.edge_faces(e1) {
            if !e.face(f).is_triangle() {
                continue;
            }
            let inn = e.across(e1, f);
            let mut used = vec![false; e.edge_count()];
            // only edges above e1 may follow it
            for u in used.iter_mut().take(i + 1) {
                *u = true;
            }
            let mut s = Search {
                e,
                t,
                c,
                max_len,
                budget: usize::MAX,
                used,
                route: DiamondRoute {
                    color: c,
                    edges: vec![e1],
                    connectors: Vec::new(),
                    faces: vec![(inn, f)],
                    ring: false,
                },
            };
            let mut stop = false;
            s.dfs(&mut |r, _| {
                if r.ring {
                    let mut key = r.crossed();
                    key.sort_unstable();
                    if seen.insert(key) {
                        out.push(r.clone());
                        if limit.is_some_and(|l| out.len() >= l) {
                            stop = true;
                            return Step::Stop;
                        }
                    }
                }
                Step::Continue
            });
            if stop {
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// Toggles `c <-> black` along the route's dual walk.
pub fn ecs_diamond_route(e: &Embedding, t: &Tiling, r: &DiamondRoute) -> Result<Tiling, RouteError> {
    let c = r.color;
    let t = match t.mode() {
        Mode::Single(k) if k == c => t.clone(),
        Mode::Rgb => t.single_view(c),
        m => return Err(RouteError::Mode(m)),
    };
    if r.edges.is_empty() {
        return Err(RouteError::Stale(EdgeId(usize::MAX)));
    }
    if !r.ring {
        let first = r.edges[0];
        let last = *r.edges.last().expect("non-empty");
        if e.face(r.faces[0].0).is_triangle() {
            return Err(RouteError::InteriorTerminal(first));
        }
        if e.face(r.faces.last().expect("non-empty").1).is_triangle() {
            return Err(RouteError::InteriorTerminal(last));
        }
    }
    let mut out = t.clone();
    for &x in &r.edges {
        if !is_c(&t, c, x) {
            return Err(RouteError::Stale(x));
        }
        out.set(x, EdgeColor::Black);
    }
    for &x in &r.connectors {
        if t.color(x) != EdgeColor::Black {
            return Err(RouteError::Stale(x));
        }
        out.set(x, c.edge());
    }
    tiling::validate(e, &out)?;
    Ok(out)
}

/// The same walk read in the tiling produced by its ECS: the former connectors
/// become the `c`-edges. Applying ECS along it restores the original tiling.
pub fn reverse_after_ecs(r: &DiamondRoute) -> DiamondRoute {
    // walk nodes: In(e1) Out(e1) In(e2) ... ; after ECS connectors carry c
    let k = r.edges.len();
    if r.ring {
        let edges: Vec<EdgeId> = r.connectors.clone();
        let mut connectors: Vec<EdgeId> = r.edges[1..].to_vec();
        connectors.push(r.edges[0]);
        let faces = (0..k)
            .map(|i| (r.faces[i].1, r.faces[(i + 1) % k].0))
            .collect();
        DiamondRoute {
            color: r.color,
            edges,
            connectors,
            faces,
            ring: true,
        }
    } else {
        r.clone()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationSets {
    pub initial: (EdgeId, Vertex),
    pub out_triangles: Vec<FaceId>,
    pub in_triangles: Vec<FaceId>,
    pub bi: Vec<FaceId>,
    pub non: Vec<FaceId>,
    pub uni: Vec<FaceId>,
    /// In-triangles whose edge lies on an outer facet (no matching out-triangle).
    pub exceptional_in: Vec<FaceId>,
    /// False when the search hit its node budget before finishing.
    pub complete: bool,
}

/// OT / IT by exhaustive enumeration of directed routes with distinct edges
/// (length capped at `max_len`, expansions at `budget`).
pub fn orientation_sets(
    e: &Embedding,
    t: &Tiling,
    c: Color,
    initial: (EdgeId, Vertex),
    max_len: usize,
    budget: usize,
) -> Result<OrientationSets, RouteError> {
    check_mode(t, c)?;
    let (e1, apex) = initial;
    if !is_c(t, c, e1) {
        return Err(RouteError::NotColored(e1, c));
    }
    let (inn, out) = initial_faces(e, e1, apex)?;
    let nf = e.face_count();
    let mut ot = vec![false; nf];
    let mut it = vec![false; nf];
    let mut exc = vec![false; nf];
    ot[out.0] = true;
    if e.face(inn).is_triangle() {
        it[inn.0] = true;
    }
    // plain reachability over (edge, out-face) states bounds what the search can find
    let bound = plain_reach(e, t, c, inn, out);
    let target = bound.iter().filter(|&&b| b).count();
    let mut reached = (0..nf).filter(|&i| ot[i] || it[i]).count();
    let mut used = vec![false; e.edge_count()];
    used[e1.0] = true;
    let mut s = Search {
        e,
        t,
        c,
        max_len,
        budget,
        used,
        route: DiamondRoute {
            color: c,
            edges: vec![e1],
            connectors: Vec::new(),
            faces: vec![(inn, out)],
            ring: false,
        },
    };
    let finished_early = s.dfs(&mut |r, last| {
        if last.is_some() {
            let (i, o) = *r.faces.last().expect("face");
            if !it[i.0] {
                if !ot[i.0] {
                    reached += 1;
                }
                it[i.0] = true;
            }
            if e.face(o).is_triangle() {
                if !ot[o.0] {
                    if !it[o.0] {
                        reached += 1;
                    }
                    ot[o.0] = true;
                }
            } else {
                exc[i.0] = true;
            }
            if reached >= target {
                return Step::Stop;
            }
        }
        Step::Continue
    });
    let complete = finished_early || s.budget > 0;
    let tri: Vec<FaceId> = e.triangles().map(|(f, _)| f).collect();
    let pick = |p: &dyn Fn(usize) -> bool| tri.iter().copied().filter(|f| p(f.0)).collect::<Vec<_>>();
    Ok(OrientationSets {
        initial,
        out_triangles: pick(&|i| ot[i]),
        in_triangles: pick(&|i| it[i]),
        bi: pick(&|i| ot[i] && it[i]),
        non: pick(&|i| !ot[i] && !it[i]),
        uni: pick(&|i| ot[i] != it[i]),
        exceptional_in: pick(&|i| exc[i]),
        complete,
    })
}

/// Faces reachable as in- or out-triangles if edge repetition were allowed.
fn plain_reach(e: &Embedding, t: &Tiling, c: Color, inn: FaceId, out: FaceId) -> Vec<bool> {
    let nf = e.face_count();
    let mut mark = vec![false; nf];
    if e.face(inn).is_triangle() {
        mark[inn.0] = true;
    }
    mark[out.0] = true;
    let mut seen_out = vec![false; nf];
    seen_out[out.0] = true;
    let mut stack = vec![out];
    while let Some(f) = stack.pop() {
        for &b in &e.face(f).edges {
            if !is_black(t, c, b) {
                continue;
            }
            let i = e.across(b, f);
            let Some(x) = c_edge_of(e, t, c, i) else {
                continue;
            };
            mark[i.0] = true;
            let o = e.across(x, i);
            if e.face(o).is_triangle() {
                mark[o.0] = true;
                if !seen_out[o.0] {
                    seen_out[o.0] = true;
                    stack.push(o);
                }
            }
        }
    }
    mark
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::tiling::enumerate;

    fn seeded() -> (Embedding, Tiling) {
        let e = corpus::seven_semi();
        let t = corpus::seeded_green(&e, &corpus::SEVEN_SEMI_GREEN);
        (e, t)
    }

    #[test]
    fn annular_amending_passes_through_a_non_grand_tiling() {
        let e = corpus::annular();
        let g = Color::Green;
        let t = corpus::seeded_green(&e, &corpus::ANNULAR_GREEN);
        assert!(tiling::find_mono_odd_cycle(&e, &t, g).is_some());
        let edge = |u, v| e.edge_between(u, v).unwrap();
        // outer 7-gon to the inner 5-gon
        let r1 = search_diamond_route(&e, &t, g, (edge(0, 6), 7), RouteTarget::Edge(edge(7, 11)), 40)
            .unwrap()
            .unwrap();
        let t1 = ecs_diamond_route(&e, &t, &r1).unwrap();
        assert!(tiling::check_grand(&e, &t1, g).is_none());
        let r2 = search_diamond_route(&e, &t1, g, (edge(0, 1), 7), RouteTarget::Edge(edge(10, 11)), 40)
            .unwrap()
            .unwrap();
        let t2 = ecs_diamond_route(&e, &t1, &r2).unwrap();
        assert!(tiling::check_grand(&e, &t2, g).is_some());
        assert!(tiling::find_mono_odd_cycle(&e, &t2, g).is_none());
    }

    #[test]
    fn singleton_route() {
        let (e, t) = seeded();
        let x = e.edge_between(9, 11).unwrap();
        let r = search_diamond_route(&e, &t, Color::Green, (x, 10), RouteTarget::Edge(x), 40)
            .unwrap()
            .unwrap();
        assert_eq!(r.edges, vec![x]);
    }

    #[test]
    fn non_green_start_is_rejected() {
        let (e, t) = seeded();
        let x = e.edge_between(9, 10).unwrap();
        assert!(matches!(
            search_diamond_route(&e, &t, Color::Green, (x, 11), RouteTarget::Ring, 40),
            Err(RouteError::NotColored(..))
        ));
    }

    #[test]
    fn ring_through_va_vc_tears_the_five_cycle() {
        let (e, t) = seeded();
        let x = e.edge_between(9, 11).unwrap();
        let mut torn = false;
        for apex in [2, 10] {
            if let Some(r) = search_diamond_route(&e, &t, Color::Green, (x, apex), RouteTarget::Ring, 40).unwrap() {
                let once = ecs_diamond_route(&e, &t, &r).unwrap();
                assert_eq!(ecs_diamond_route(&e, &once, &reverse_after_ecs(&r)).unwrap(), t);
                torn |= tiling::find_mono_odd_cycle(&e, &once, Color::Green).is_none();
            }
        }
        assert!(torn);
    }

    #[test]
    fn rings_preserve_validity_and_are_involutions() {
        let e = corpus::icosahedron();
        for t in enumerate(&e, Mode::Rgb, Some(3)) {
            let view = t.single_view(Color::Red);
            for r in enumerate_rings(&e, &view, Color::Red, 40, Some(50)).unwrap() {
                let once = ecs_diamond_route(&e, &view, &r).unwrap();
                let back = ecs_diamond_route(&e, &once, &reverse_after_ecs(&r)).unwrap();
                assert_eq!(back, view);
            }
        }
    }

    #[test]
    fn open_route_needs_outer_terminals() {
        let (e, t) = seeded();
        let x = e.edge_between(9, 11).unwrap();
        let r = DiamondRoute {
            color: Color::Green,
            edges: vec![x],
            connectors: vec![],
            faces: vec![(e.triangle_at(x, 2).unwrap(), e.triangle_at(x, 10).unwrap())],
            ring: false,
        };
        assert!(matches!(ecs_diamond_route(&e, &t, &r), Err(RouteError::InteriorTerminal(_))));
    }

    #[test]
    fn orientation_sets_partition_triangles() {
        let (e, t) = seeded();
        for (i, &c) in t.colors().iter().enumerate() {
            if c != EdgeColor::Green {
                continue;
            }
            let x = EdgeId(i);
            for f in e.edge_faces(x) {
                if !e.face(f).is_triangle() {
                    continue;
                }
                let apex = e.face(f).vertices.iter().copied().find(|&v| {
                    let (a, b) = e.endpoints(x);
                    v != a && v != b
                });
                let o = orientation_sets(&e, &t, Color::Green, (x, apex.unwrap()), 40, 1 << 22).unwrap();
                assert!(o.complete);
                assert!(o.out_triangles.contains(&f));
                assert_eq!(o.bi.len() + o.non.len() + o.uni.len(), e.triangle_count());
            }
        }
    }
}
