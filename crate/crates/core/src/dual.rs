//! The dual graph with pseudo nodes, canal lines and canal-line ECS.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{EdgeId, Embedding, FaceId};
use crate::tiling::{self, Color, EdgeColor, Mode, Tiling, TilingError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DualNode {
    Triangle(FaceId),
    /// One node per edge of an outer facet.
    Pseudo { facet: usize, edge: EdgeId },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualGraph {
    pub nodes: Vec<DualNode>,
    /// `links[e]` joins the two nodes separated by edge `e`.
    pub links: Vec<(usize, usize)>,
    pub colors: Vec<EdgeColor>,
    pub node_links: Vec<Vec<EdgeId>>,
    face_node: Vec<Option<usize>>,
    link_faces: Vec<[FaceId; 2]>,
}

impl DualGraph {
    pub fn node_of_face(&self, f: FaceId) -> Option<usize> {
        self.face_node[f.0]
    }

    /// Node on the side of edge `x` given by the face `f`.
    pub fn node_at(&self, x: EdgeId, f: FaceId) -> usize {
        if self.link_faces[x.0][0] == f {
            self.links[x.0].0
        } else {
            self.links[x.0].1
        }
    }

    pub fn other_end(&self, x: EdgeId, node: usize) -> usize {
        let (a, b) = self.links[x.0];
        if a == node {
            b
        } else {
            a
        }
    }

    pub fn is_pseudo(&self, n: usize) -> bool {
        matches!(self.nodes[n], DualNode::Pseudo { .. })
    }

    pub fn triangle_nodes(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, DualNode::Triangle(_)))
            .count()
    }
}

pub fn build_dual(e: &Embedding, t: &Tiling) -> DualGraph {
    let mut nodes = Vec::new();
    let mut face_node = vec![None; e.face_count()];
    for (id, _) in e.triangles() {
        face_node[id.0] = Some(nodes.len());
        nodes.push(DualNode::Triangle(id));
    }
    // pseudo node index per (outer face, edge)
    let mut pseudo: Vec<(FaceId, EdgeId, usize)> = Vec::new();
    for (fi, f) in e.faces().iter().enumerate() {
        if let Some(facet) = f.outer_index {
            for &x in &f.edges {
                pseudo.push((FaceId(fi), x, nodes.len()));
                nodes.push(DualNode::Pseudo { facet, edge: x });
            }
        }
    }
    let side = |f: FaceId, x: EdgeId| -> usize {
        face_node[f.0].unwrap_or_else(|| {
            pseudo
                .iter()
                .find(|&&(g, y, _)| g == f && y == x)
                .map(|p| p.2)
                .expect("pseudo node for outer edge")
        })
    };
    let mut links = Vec::with_capacity(e.edge_count());
    let mut node_links = vec![Vec::new(); nodes.len()];
    for i in 0..e.edge_count() {
        let x = EdgeId(i);
        let [f0, f1] = e.edge_faces(x);
        let (a, b) = (side(f0, x), side(f1, x));
        node_links[a].push(x);
        node_links[b].push(x);
        links.push((a, b));
    }
    DualGraph {
        nodes,
        links,
        colors: t.colors().to_vec(),
        node_links,
        face_node,
        link_faces: (0..e.edge_count()).map(|i| e.edge_faces(EdgeId(i))).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LineKind {
    Ring,
    Path,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanalLine {
    pub color: Color,
    pub kind: LineKind,
    /// Dual nodes in walk order. A ring does not repeat its first node.
    pub nodes: Vec<usize>,
    /// Crossed edges; `edges[i]` joins `nodes[i]` and `nodes[i + 1]` (cyclically for rings).
    pub edges: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryMatching {
    /// Pairs of positions along the outer facet (index of the facet edge).
    pub pairs: Vec<(usize, usize)>,
    pub non_crossing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanalSystem {
    pub lines: Vec<CanalLine>,
    /// Present when the embedding has exactly one outer facet.
    pub boundary_matching: Option<BoundaryMatching>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanalError {
    #[error("tiling mode {0:?} has no canal system")]
    Mode(Mode),
    #[error("canal line does not match the tiling (edge {0:?})")]
    Stale(EdgeId),
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

fn is_canal_link(t: &Tiling, c: Color, x: EdgeId) -> bool {
    match t.color(x) {
        EdgeColor::Abandoned => false,
        col => col != c.edge(),
    }
}

/// Splits the non-`c` links into canal lines: paths between pseudo nodes first
/// (in pseudo-node order), then rings from their lowest edge.
pub fn extract_canal_system(e: &Embedding, t: &Tiling, c: Color) -> Result<CanalSystem, CanalError> {
    match t.mode() {
        Mode::Rgb => {}
        Mode::Single(k) if k == c => {}
        m => return Err(CanalError::Mode(m)),
    }
    let dg = build_dual(e, t);
    let m = e.edge_count();
    let mut used = vec![false; m];
    let mut lines = Vec::new();
    let walk = |start: usize, first: EdgeId, used: &mut Vec<bool>| -> (Vec<usize>, Vec<EdgeId>, bool) {
        let mut nodes = vec![start];
        let mut edges = Vec::new();
        let mut node = start;
        let mut x = first;
        loop {
            used[x.0] = true;
            edges.push(x);
            node = dg.other_end(x, node);
            if node == start {
                return (nodes, edges, true);
            }
            nodes.push(node);
            let next = dg.node_links[node]
                .iter()
                .copied()
                .find(|&y| y != x && !used[y.0] && is_canal_link(t, c, y));
            match next {
                Some(y) => x = y,
                None => return (nodes, edges, false),
            }
        }
    };
    for n in 0..dg.nodes.len() {
        if !dg.is_pseudo(n) {
            continue;
        }
        let x = dg.node_links[n][0];
        if used[x.0] || !is_canal_link(t, c, x) {
            continue;
        }
        let (nodes, edges, _) = walk(n, x, &mut used);
        lines.push(CanalLine {
            color: c,
            kind: LineKind::Path,
            nodes,
            edges,
        });
    }
    for i in 0..m {
        let x = EdgeId(i);
        if used[i] || !is_canal_link(t, c, x) {
            continue;
        }
        let start = dg.links[i].0;
        let (nodes, edges, closed) = walk(start, x, &mut used);
        lines.push(CanalLine {
            color: c,
            kind: if closed { LineKind::Ring } else { LineKind::Path },
            nodes,
            edges,
        });
    }

    let boundary_matching = (e.outer_facets().len() == 1).then(|| {
        let facet = e
            .faces()
            .iter()
            .find(|f| f.outer_index == Some(0))
            .expect("outer facet traced");
        let pos = |n: usize| match dg.nodes[n] {
            DualNode::Pseudo { edge, .. } => facet.edges.iter().position(|&y| y == edge),
            DualNode::Triangle(_) => None,
        };
        let mut pairs: Vec<(usize, usize)> = lines
            .iter()
            .filter(|l| l.kind == LineKind::Path)
            .filter_map(|l| {
                let a = pos(l.nodes[0])?;
                let b = pos(*l.nodes.last()?)?;
                Some((a.min(b), a.max(b)))
            })
            .collect();
        pairs.sort_unstable();
        let non_crossing = pairs.iter().all(|&(a, b)| {
            pairs
                .iter()
                .all(|&(c2, d)| !((a < c2 && c2 < b && b < d) || (c2 < a && a < d && d < b)))
        });
        BoundaryMatching {
            pairs,
            non_crossing,
        }
    });

    Ok(CanalSystem {
        lines,
        boundary_matching,
    })
}

/// Swaps the two non-`c` colors on every edge crossed by the line.
pub fn ecs_canal(e: &Embedding, t: &Tiling, line: &CanalLine) -> Result<Tiling, CanalError> {
    let (a, b) = line.color.others();
    let mut out = t.clone();
    for &x in &line.edges {
        let col = t.color(x);
        let new = if col == a.edge() {
            b.edge()
        } else if col == b.edge() {
            a.edge()
        } else if col == EdgeColor::Black && t.mode() == Mode::Single(line.color) {
            EdgeColor::Black
        } else {
            return Err(CanalError::Stale(x));
        };
        out.set(x, new);
    }
    tiling::validate(e, &out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::tiling::enumerate;

    #[test]
    fn k4_dual_counts() {
        let e = corpus::k4();
        let t = enumerate(&e, Mode::Rgb, Some(1)).remove(0);
        let dg = build_dual(&e, &t);
        assert_eq!(dg.nodes.len(), 4);
        assert_eq!(dg.links.len(), 6);
    }

    #[test]
    fn five_semi_has_five_pseudo_nodes_of_degree_one() {
        let e = corpus::icosahedron_minus_vertex();
        let t = enumerate(&e, Mode::Rgb, Some(1)).remove(0);
        let dg = build_dual(&e, &t);
        let pseudo: Vec<usize> = (0..dg.nodes.len()).filter(|&n| dg.is_pseudo(n)).collect();
        assert_eq!(pseudo.len(), 5);
        assert!(pseudo.iter().all(|&n| dg.node_links[n].len() == 1));
        let mut lc = dg.colors.clone();
        let mut ec = t.colors().to_vec();
        lc.sort();
        ec.sort();
        assert_eq!(lc, ec);
    }

    #[test]
    fn icosahedron_canal_lines_are_rings_and_cover_links() {
        let e = corpus::icosahedron();
        for t in enumerate(&e, Mode::Rgb, Some(10)) {
            for c in Color::ALL {
                let sys = extract_canal_system(&e, &t, c).unwrap();
                assert!(sys.lines.iter().all(|l| l.kind == LineKind::Ring));
                let covered: usize = sys.lines.iter().map(|l| l.edges.len()).sum();
                assert_eq!(covered, 30 - t.count(c.edge()));
                for l in &sys.lines {
                    let once = ecs_canal(&e, &t, l).unwrap();
                    assert_eq!(ecs_canal(&e, &once, l).unwrap(), t);
                }
            }
        }
    }

    #[test]
    fn five_semi_matching_is_non_crossing() {
        let e = corpus::icosahedron_minus_vertex();
        for t in enumerate(&e, Mode::Rgb, Some(20)) {
            for c in Color::ALL {
                let sys = extract_canal_system(&e, &t, c).unwrap();
                let bm = sys.boundary_matching.unwrap();
                assert!(bm.non_crossing);
                assert!(bm.pairs.len() * 2 <= 5);
            }
        }
    }
}
