//! The region around a topic-for-discussion vertex set: its boundary cycle Ω,
//! the inside Σ and the outside Σ′.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{EdgeId, Embedding, FaceId, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegionError {
    #[error("the vertex set is empty")]
    Empty,
    #[error("vertex {0} is out of range")]
    OutOfRange(Vertex),
    #[error("the vertex set does not induce a connected subgraph")]
    Disconnected,
    #[error("vertex {0} lies on an outer facet")]
    OnOuterFacet(Vertex),
    #[error("the surrounding neighbours do not form a simple cycle (vertex {0} repeats)")]
    NotSimple(Vertex),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub td: Vec<Vertex>,
    /// Ω in cyclic order, oriented with Σ on the right.
    pub omega: Vec<Vertex>,
    /// `omega_edges[i]` joins `omega[i]` and `omega[i + 1]`.
    pub omega_edges: Vec<EdgeId>,
    pub sigma_faces: Vec<FaceId>,
    /// Edges of Σ not on Ω.
    pub inner_edges: Vec<EdgeId>,
    /// Edges of Σ′ (including Ω).
    pub sigma_prime_edges: Vec<EdgeId>,
    in_sigma: Vec<bool>,
    inner: Vec<bool>,
}

impl RegionSpec {
    pub fn is_sigma_face(&self, f: FaceId) -> bool {
        self.in_sigma[f.0]
    }

    pub fn is_inner_edge(&self, x: EdgeId) -> bool {
        self.inner[x.0]
    }

    pub fn is_omega_edge(&self, x: EdgeId) -> bool {
        self.omega_edges.contains(&x)
    }

    pub fn is_td(&self, v: Vertex) -> bool {
        self.td.contains(&v)
    }

    /// Every edge of Σ (inner edges and Ω).
    pub fn sigma_edges(&self) -> Vec<EdgeId> {
        let mut v: Vec<EdgeId> = self.inner_edges.iter().chain(&self.omega_edges).copied().collect();
        v.sort_unstable();
        v
    }

    /// Same region with Ω rotated to start at `v`.
    pub fn rotated_to(&self, v: Vertex) -> Option<RegionSpec> {
        let k = self.omega.iter().position(|&w| w == v)?;
        let mut r = self.clone();
        r.omega.rotate_left(k);
        r.omega_edges.rotate_left(k);
        Some(r)
    }
}

pub fn region_of(e: &Embedding, td: &[Vertex]) -> Result<RegionSpec, RegionError> {
    if td.is_empty() {
        return Err(RegionError::Empty);
    }
    let n = e.vertex_count();
    let mut is_td = vec![false; n];
    for &v in td {
        if v >= n {
            return Err(RegionError::OutOfRange(v));
        }
        is_td[v] = true;
    }
    // connectivity inside td
    let mut seen = vec![false; n];
    let mut stack = vec![td[0]];
    seen[td[0]] = true;
    while let Some(u) = stack.pop() {
        for &w in e.rotation(u) {
            if is_td[w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if td.iter().any(|&v| !seen[v]) {
        return Err(RegionError::Disconnected);
    }
    let mut in_sigma = vec![false; e.face_count()];
    for &v in td {
        for &w in e.rotation(v) {
            let f = e.left_face(v, w).expect("dart exists");
            if !e.face(f).is_triangle() {
                return Err(RegionError::OnOuterFacet(v));
            }
            in_sigma[f.0] = true;
        }
    }
    // boundary darts with Σ on the left, reversed so Σ is on the right
    let mut next = vec![usize::MAX; n];
    let mut boundary = Vec::new();
    let mut inner = vec![false; e.edge_count()];
    for (fi, f) in e.faces().iter().enumerate() {
        if !in_sigma[fi] {
            continue;
        }
        for i in 0..3 {
            let (u, v) = (f.vertices[i], f.vertices[(i + 1) % 3]);
            let x = f.edges[i];
            if in_sigma[e.across(x, FaceId(fi)).0] {
                inner[x.0] = true;
            } else {
                if next[v] != usize::MAX {
                    return Err(RegionError::NotSimple(v));
                }
                next[v] = u;
                boundary.push(v);
            }
        }
    }
    let start = *boundary.iter().min().ok_or(RegionError::NotSimple(td[0]))?;
    let mut omega = vec![start];
    let mut cur = next[start];
    while cur != start {
        if cur == usize::MAX || omega.len() > boundary.len() {
            return Err(RegionError::NotSimple(start));
        }
        omega.push(cur);
        cur = next[cur];
    }
    if omega.len() != boundary.len() {
        return Err(RegionError::NotSimple(omega[0]));
    }
    if omega.iter().any(|&v| is_td[v]) {
        return Err(RegionError::NotSimple(omega[0]));
    }
    let k = omega.len();
    let omega_edges = (0..k)
        .map(|i| e.edge_between(omega[i], omega[(i + 1) % k]).expect("boundary edge"))
        .collect();
    let inner_edges: Vec<EdgeId> = (0..e.edge_count()).filter(|&i| inner[i]).map(EdgeId).collect();
    let sigma_prime_edges = (0..e.edge_count()).filter(|&i| !inner[i]).map(EdgeId).collect();
    let sigma_faces = (0..e.face_count()).filter(|&i| in_sigma[i]).map(FaceId).collect();
    let mut td = td.to_vec();
    td.sort_unstable();
    Ok(RegionSpec {
        td,
        omega,
        omega_edges,
        sigma_faces,
        inner_edges,
        sigma_prime_edges,
        in_sigma,
        inner,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::embedding::same_cycle;

    #[test]
    fn icosahedron_vertex_region_is_its_pentagon() {
        let e = corpus::icosahedron();
        let r = region_of(&e, &[0]).unwrap();
        assert!(same_cycle(&r.omega, e.rotation(0)));
        assert_eq!(r.sigma_faces.len(), 5);
        assert_eq!(r.inner_edges.len(), 5);
        assert_eq!(r.sigma_prime_edges.len() + r.inner_edges.len(), 30);
    }

    #[test]
    fn empty_and_disconnected_sets_are_rejected() {
        let e = corpus::icosahedron();
        assert_eq!(region_of(&e, &[]).unwrap_err(), RegionError::Empty);
        assert_eq!(region_of(&e, &[0, 11]).unwrap_err(), RegionError::Disconnected);
    }

    #[test]
    fn non_simple_boundary_is_rejected() {
        // three equator vertices of the octahedron touch every face, leaving no boundary
        let e = corpus::octahedron();
        assert!(matches!(region_of(&e, &[1, 2, 3]), Err(RegionError::NotSimple(_))));
    }
}
