//! Rotation-system embeddings of maximal planar graphs and semi-MPGs.
//!
//! Every vertex stores its neighbours in counterclockwise order. Faces are
//! recovered by face tracing: the face to the left of the dart `u -> v` continues
//! with `v -> w`, where `w` precedes `u` in the rotation of `v`. Faces that are
//! not declared as outer facets must be triangles.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FaceId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("embedding has no vertices")]
    Empty,
    #[error("vertex {0} lists neighbour {1} which is out of range")]
    OutOfRange(Vertex, Vertex),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(Vertex, Vertex),
    #[error("asymmetric adjacency: {0} lists {1} but {1} does not list {0}")]
    Asymmetric(Vertex, Vertex),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("Euler formula violated: V - E + F = {0}")]
    Euler(i64),
    #[error("inner face {0:?} is not a triangle")]
    NonTriangleFace(Vec<Vertex>),
    #[error("declared outer facet {0:?} is not a face of the rotation system")]
    UnknownOuterFacet(Vec<Vertex>),
    #[error("outer facet {0:?} declared twice")]
    DuplicateOuterFacet(Vec<Vertex>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FacetKind {
    Triangle,
    Outer,
}

/// A traced face. `vertices` run with the face on the left.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    pub kind: FacetKind,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
    /// Index into the declared outer facets, for outer faces.
    pub outer_index: Option<usize>,
}

impl Facet {
    pub fn is_triangle(&self) -> bool {
        self.kind == FacetKind::Triangle
    }
}

/// What surrounds an edge: two triangles, one triangle and an outer facet, or
/// outer facets on both sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Surround {
    Diamond {
        edge: EdgeId,
        apexes: (Vertex, Vertex),
        triangles: (FaceId, FaceId),
    },
    Triangle {
        edge: EdgeId,
        apex: Vertex,
        triangle: FaceId,
        outer: FaceId,
    },
    Bare {
        edge: EdgeId,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    rotation: Vec<Vec<Vertex>>,
    outer_facets: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
    rot_edges: Vec<Vec<EdgeId>>,
    faces: Vec<Facet>,
    /// `dart_face[u][i]` is the face to the left of `u -> rotation[u][i]`.
    dart_face: Vec<Vec<FaceId>>,
    /// Left face of `lo -> hi` and of `hi -> lo`.
    edge_faces: Vec<[FaceId; 2]>,
}

impl Embedding {
    /// Validates a rotation system together with its declared outer facets.
    pub fn new(
        rotation: Vec<Vec<Vertex>>,
        outer_facets: Vec<Vec<Vertex>>,
    ) -> Result<Self, EmbeddingError> {
        let n = rotation.len();
        if n == 0 {
            return Err(EmbeddingError::Empty);
        }
        for (u, rot) in rotation.iter().enumerate() {
            for (i, &v) in rot.iter().enumerate() {
                if v >= n {
                    return Err(EmbeddingError::OutOfRange(u, v));
                }
                if v == u {
                    return Err(EmbeddingError::SelfLoop(u));
                }
                if rot[..i].contains(&v) {
                    return Err(EmbeddingError::ParallelEdge(u, v));
                }
                if !rotation[v].contains(&u) {
                    return Err(EmbeddingError::Asymmetric(u, v));
                }
            }
        }

        let mut edges: Vec<(Vertex, Vertex)> = rotation
            .iter()
            .enumerate()
            .flat_map(|(u, rot)| rot.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        edges.sort_unstable();
        let rot_edges: Vec<Vec<EdgeId>> = rotation
            .iter()
            .enumerate()
            .map(|(u, rot)| {
                rot.iter()
                    .map(|&v| {
                        let key = if u < v { (u, v) } else { (v, u) };
                        EdgeId(edges.binary_search(&key).expect("edge listed"))
                    })
                    .collect()
            })
            .collect();

        // connectivity
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &rotation[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        if n > 1 && seen.iter().any(|s| !s) {
            return Err(EmbeddingError::Disconnected);
        }

        // face tracing
        let mut dart_face: Vec<Vec<FaceId>> =
            rotation.iter().map(|r| vec![FaceId(usize::MAX); r.len()]).collect();
        let mut traced: Vec<(Vec<Vertex>, Vec<EdgeId>)> = Vec::new();
        for u in 0..n {
            for i in 0..rotation[u].len() {
                if dart_face[u][i].0 != usize::MAX {
                    continue;
                }
                let id = FaceId(traced.len());
                let mut verts = Vec::new();
                let mut fedges = Vec::new();
                let (mut x, mut j) = (u, i);
                while dart_face[x][j].0 == usize::MAX {
                    dart_face[x][j] = id;
                    verts.push(x);
                    fedges.push(rot_edges[x][j]);
                    let y = rotation[x][j];
                    let back = rotation[y].iter().position(|&w| w == x).expect("symmetric");
                    let deg = rotation[y].len();
                    j = (back + deg - 1) % deg;
                    x = y;
                }
                traced.push((verts, fedges));
            }
        }

        let v = n as i64;
        let e = edges.len() as i64;
        let f = traced.len() as i64;
        if v - e + f != 2 {
            return Err(EmbeddingError::Euler(v - e + f));
        }

        let mut outer_of: Vec<Option<usize>> = vec![None; traced.len()];
        for (k, cycle) in outer_facets.iter().enumerate() {
            let hit = traced
                .iter()
                .position(|(verts, _)| same_cycle(verts, cycle))
                .ok_or_else(|| EmbeddingError::UnknownOuterFacet(cycle.clone()))?;
            if outer_of[hit].is_some() {
                return Err(EmbeddingError::DuplicateOuterFacet(cycle.clone()));
            }
            outer_of[hit] = Some(k);
        }

        let mut faces = Vec::with_capacity(traced.len());
        for ((verts, fedges), outer_index) in traced.into_iter().zip(outer_of) {
            let kind = if outer_index.is_some() {
                FacetKind::Outer
            } else if verts.len() == 3 {
                FacetKind::Triangle
            } else {
                return Err(EmbeddingError::NonTriangleFace(verts));
            };
            faces.push(Facet {
                kind,
                vertices: verts,
                edges: fedges,
                outer_index,
            });
        }

        let mut edge_faces = vec![[FaceId(usize::MAX); 2]; edges.len()];
        for u in 0..n {
            for (i, &w) in rotation[u].iter().enumerate() {
                let eid = rot_edges[u][i];
                edge_faces[eid.0][usize::from(u > w)] = dart_face[u][i];
            }
        }

        Ok(Embedding {
            rotation,
            outer_facets,
            edges,
            rot_edges,
            faces,
            dart_face,
            edge_faces,
        })
    }

    /// Builds an embedding from its faces. Each face is listed with the face on
    /// the left of its traversal; `outer` marks which of them are outer facets.
    pub fn from_faces(
        n: usize,
        faces: &[Vec<Vertex>],
        outer: &[usize],
    ) -> Result<Self, EmbeddingError> {
        if n == 0 {
            return Err(EmbeddingError::Empty);
        }
        // succ[v] maps a neighbour w to the neighbour following it counterclockwise
        let mut succ: Vec<BTreeMap<Vertex, Vertex>> = vec![BTreeMap::new(); n];
        for f in faces {
            let k = f.len();
            for i in 0..k {
                let (prev, v, next) = (f[(i + k - 1) % k], f[i], f[(i + 1) % k]);
                if v >= n {
                    return Err(EmbeddingError::OutOfRange(v, v));
                }
                if prev >= n || next >= n {
                    return Err(EmbeddingError::OutOfRange(v, prev.max(next)));
                }
                if prev == v || next == v {
                    return Err(EmbeddingError::SelfLoop(v));
                }
                if succ[v].insert(next, prev).is_some() {
                    return Err(EmbeddingError::ParallelEdge(v, next));
                }
            }
        }
        let mut rotation = Vec::with_capacity(n);
        for (v, map) in succ.iter().enumerate() {
            let Some((&start, _)) = map.iter().next() else {
                return Err(EmbeddingError::Disconnected);
            };
            let mut rot = vec![start];
            let mut cur = start;
            loop {
                let Some(&nx) = map.get(&cur) else {
                    return Err(EmbeddingError::Asymmetric(v, cur));
                };
                if nx == start {
                    break;
                }
                if rot.len() > map.len() {
                    return Err(EmbeddingError::ParallelEdge(v, nx));
                }
                rot.push(nx);
                cur = nx;
            }
            if rot.len() != map.len() {
                // the corners around v do not close into a single disc
                return Err(EmbeddingError::Euler(0));
            }
            rotation.push(rot);
        }
        let outer_facets = outer.iter().map(|&i| faces[i].clone()).collect();
        Embedding::new(rotation, outer_facets)
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.rotation
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotation[v].len()
    }

    pub fn outer_facets(&self) -> &[Vec<Vertex>] {
        &self.outer_facets
    }

    pub fn is_mpg(&self) -> bool {
        self.outer_facets.is_empty()
    }

    /// Edges in canonical `(min, max)` form, sorted; the index is the [`EdgeId`].
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e.0]
    }

    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).ok().map(EdgeId)
    }

    /// Edge ids incident to `v`, parallel to its rotation.
    pub fn incident_edges(&self, v: Vertex) -> &[EdgeId] {
        &self.rot_edges[v]
    }

    pub fn faces(&self) -> &[Facet] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Facet {
        &self.faces[f.0]
    }

    pub fn triangles(&self) -> impl Iterator<Item = (FaceId, &Facet)> + '_ {
        self.faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.is_triangle())
            .map(|(i, f)| (FaceId(i), f))
    }

    pub fn triangle_count(&self) -> usize {
        self.faces.iter().filter(|f| f.is_triangle()).count()
    }

    /// Face to the left of the dart `u -> v`.
    pub fn left_face(&self, u: Vertex, v: Vertex) -> Option<FaceId> {
        let i = self.rotation[u].iter().position(|&w| w == v)?;
        Some(self.dart_face[u][i])
    }

    /// The two faces on either side of an edge (left of `lo -> hi`, then left of `hi -> lo`).
    pub fn edge_faces(&self, e: EdgeId) -> [FaceId; 2] {
        self.edge_faces[e.0]
    }

    /// The face across `e` from `f`.
    pub fn across(&self, e: EdgeId, f: FaceId) -> FaceId {
        let [a, b] = self.edge_faces[e.0];
        if a == f {
            b
        } else {
            a
        }
    }

    pub fn is_boundary_edge(&self, e: EdgeId) -> bool {
        self.edge_faces[e.0]
            .iter()
            .any(|&f| !self.faces[f.0].is_triangle())
    }

    pub fn surround(&self, e: EdgeId) -> Surround {
        let (u, v) = self.edges[e.0];
        let [f0, f1] = self.edge_faces[e.0];
        let apex = |f: FaceId| {
            self.faces[f.0]
                .vertices
                .iter()
                .copied()
                .find(|&x| x != u && x != v)
                .expect("triangle has a third vertex")
        };
        match (self.faces[f0.0].is_triangle(), self.faces[f1.0].is_triangle()) {
            (true, true) => Surround::Diamond {
                edge: e,
                apexes: (apex(f0), apex(f1)),
                triangles: (f0, f1),
            },
            (true, false) => Surround::Triangle {
                edge: e,
                apex: apex(f0),
                triangle: f0,
                outer: f1,
            },
            (false, true) => Surround::Triangle {
                edge: e,
                apex: apex(f1),
                triangle: f1,
                outer: f0,
            },
            (false, false) => Surround::Bare { edge: e },
        }
    }

    /// The triangle `(e, apex)`, if it exists.
    pub fn triangle_at(&self, e: EdgeId, apex: Vertex) -> Option<FaceId> {
        self.edge_faces[e.0]
            .iter()
            .copied()
            .find(|&f| self.faces[f.0].is_triangle() && self.faces[f.0].vertices.contains(&apex))
    }

    pub fn neighbors_of_set(&self, set: &[Vertex]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = set
            .iter()
            .flat_map(|&v| self.rotation[v].iter().copied())
            .filter(|w| !set.contains(w))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Traces the faces of a symmetric rotation system without validating it. Each
/// face is listed with the face on the left.
pub fn trace_faces(rotation: &[Vec<Vertex>]) -> Vec<Vec<Vertex>> {
    let mut done: Vec<Vec<bool>> = rotation.iter().map(|r| vec![false; r.len()]).collect();
    let mut faces = Vec::new();
    for u in 0..rotation.len() {
        for i in 0..rotation[u].len() {
            if done[u][i] {
                continue;
            }
            let mut face = Vec::new();
            let (mut x, mut j) = (u, i);
            while !done[x][j] {
                done[x][j] = true;
                face.push(x);
                let y = rotation[x][j];
                let Some(back) = rotation[y].iter().position(|&w| w == x) else {
                    break;
                };
                let deg = rotation[y].len();
                j = (back + deg - 1) % deg;
                x = y;
            }
            faces.push(face);
        }
    }
    faces
}

/// Whether two vertex cycles are equal up to rotation and reversal.
pub fn same_cycle(a: &[Vertex], b: &[Vertex]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    if n == 0 {
        return true;
    }
    (0..n).any(|s| {
        (0..n).all(|i| a[(s + i) % n] == b[i]) || (0..n).all(|i| a[(s + n - i) % n] == b[i])
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub is_mpg: bool,
    pub is_semi_mpg: bool,
    pub outer_sizes: Vec<usize>,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub all_inner_faces_triangles: bool,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub degree5_count: usize,
    pub min_degree: usize,
}

pub fn validate_semi_mpg(e: &Embedding) -> ValidationReport {
    let mut hist = BTreeMap::new();
    for v in 0..e.vertex_count() {
        *hist.entry(e.degree(v)).or_insert(0) += 1;
    }
    let outer_sizes: Vec<usize> = e.outer_facets().iter().map(Vec::len).collect();
    ValidationReport {
        is_mpg: e.is_mpg(),
        is_semi_mpg: !e.is_mpg(),
        outer_sizes,
        vertices: e.vertex_count(),
        edges: e.edge_count(),
        faces: e.face_count(),
        euler_characteristic: e.vertex_count() as i64 - e.edge_count() as i64
            + e.face_count() as i64,
        all_inner_faces_triangles: e
            .faces()
            .iter()
            .all(|f| f.outer_index.is_some() || f.vertices.len() == 3),
        degree5_count: hist.get(&5).copied().unwrap_or(0),
        min_degree: hist.keys().next().copied().unwrap_or(0),
        degree_histogram: hist,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn k4_counts() {
        let k4 = corpus::k4();
        assert_eq!(k4.vertex_count(), 4);
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(k4.triangle_count(), 4);
        assert!(k4.is_mpg());
    }

    #[test]
    fn icosahedron_counts() {
        let ico = corpus::icosahedron();
        assert_eq!(ico.vertex_count(), 12);
        assert_eq!(ico.edge_count(), 30);
        assert_eq!(ico.face_count(), 20);
        assert!((0..12).all(|v| ico.degree(v) == 5));
        let r = validate_semi_mpg(&ico);
        assert_eq!(r.degree5_count, 12);
        assert_eq!(r.euler_characteristic, 2);
    }

    #[test]
    fn asymmetric_rotation_rejected() {
        let rot = vec![vec![1, 2, 3], vec![2, 3], vec![0, 3, 1], vec![0, 1, 2]];
        assert_eq!(
            Embedding::new(rot, vec![]).unwrap_err(),
            EmbeddingError::Asymmetric(0, 1)
        );
    }

    #[test]
    fn inconsistent_rotation_violates_euler() {
        // swapping two neighbours of a degree-4 vertex breaks planarity
        let mut rot = corpus::octahedron().rotations().to_vec();
        rot[0].swap(0, 1);
        let err = Embedding::new(rot, vec![]).unwrap_err();
        assert!(matches!(
            err,
            EmbeddingError::Euler(_) | EmbeddingError::NonTriangleFace(_)
        ));
    }

    #[test]
    fn k4_edge_01_is_diamond_with_apexes_2_3() {
        let k4 = corpus::k4();
        let e = k4.edge_between(0, 1).unwrap();
        match k4.surround(e) {
            Surround::Diamond { apexes: (x, y), .. } => {
                let mut a = [x, y];
                a.sort();
                assert_eq!(a, [2, 3]);
            }
            other => panic!("expected diamond, got {other:?}"),
        }
    }

    #[test]
    fn boundary_edge_of_five_semi_mpg_is_a_triangle() {
        let p = corpus::icosahedron_minus_vertex();
        let r = validate_semi_mpg(&p);
        assert_eq!(r.outer_sizes, vec![5]);
        let outer = &p.outer_facets()[0];
        let e = p.edge_between(outer[0], outer[1]).unwrap();
        assert!(matches!(p.surround(e), Surround::Triangle { .. }));
    }

    #[test]
    fn every_edge_on_two_facets_and_lengths_sum_to_2e() {
        for g in corpus::all() {
            let total: usize = g.embedding.faces().iter().map(|f| f.vertices.len()).sum();
            assert_eq!(total, 2 * g.embedding.edge_count(), "{}", g.name);
            for e in 0..g.embedding.edge_count() {
                let [a, b] = g.embedding.edge_faces(EdgeId(e));
                assert!(a.0 != usize::MAX && b.0 != usize::MAX);
            }
        }
    }

    #[test]
    fn min_degree_five_mpgs_have_twelve_degree_five_vertices() {
        for g in corpus::all() {
            let r = validate_semi_mpg(&g.embedding);
            if r.is_mpg && r.min_degree >= 5 {
                assert!(r.degree5_count >= 12, "{}", g.name);
            }
        }
    }
}
