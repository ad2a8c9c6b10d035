//! Vertex removal, vertex merging and edge insertion on rotation systems.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::embedding::{same_cycle, trace_faces, Embedding, EmbeddingError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("vertex {0} is out of range or already removed")]
    BadVertex(Vertex),
    #[error("cannot merge adjacent vertices {0} and {1}")]
    MergeAdjacent(Vertex, Vertex),
    #[error("vertices {0} and {1} share no face")]
    NoCommonFace(Vertex, Vertex),
    #[error("merging creates a parallel edge at {0}")]
    ParallelEdge(Vertex),
    #[error("edge {0}-{1} already exists")]
    EdgeExists(Vertex, Vertex),
    #[error("invalid result: {0}")]
    Invalid(#[from] EmbeddingError),
}

/// Removes `remove`, merges `absorb` into `keep`, then inserts `add_edges`; the
/// surviving vertices are renumbered densely in their original order. Non-triangle
/// faces of the result become outer facets.
pub fn merge_surgery(
    e: &Embedding,
    remove: &[Vertex],
    merge: Option<(Vertex, Vertex)>,
    add_edges: &[(Vertex, Vertex)],
) -> Result<(Embedding, Vec<Option<Vertex>>), SurgeryError> {
    let n = e.vertex_count();
    let mut rot: Vec<Vec<Vertex>> = e.rotations().to_vec();
    let mut alive = vec![true; n];
    for &r in remove {
        if r >= n || !alive[r] {
            return Err(SurgeryError::BadVertex(r));
        }
        alive[r] = false;
    }
    for v in 0..n {
        if alive[v] {
            rot[v].retain(|&w| alive[w]);
        } else {
            rot[v].clear();
        }
    }

    if let Some((keep, absorb)) = merge {
        for v in [keep, absorb] {
            if v >= n || !alive[v] {
                return Err(SurgeryError::BadVertex(v));
            }
        }
        if keep == absorb || rot[keep].contains(&absorb) {
            return Err(SurgeryError::MergeAdjacent(keep, absorb));
        }
        let faces = trace_faces(&rot);
        let face = faces
            .iter()
            .find(|f| f.contains(&keep) && f.contains(&absorb))
            .ok_or(SurgeryError::NoCommonFace(keep, absorb))?;
        // corner p -> v -> q of the face at v
        let corner = |v: Vertex| {
            let k = face.len();
            let i = face.iter().position(|&w| w == v).expect("on face");
            (face[(i + k - 1) % k], face[(i + 1) % k])
        };
        let arc = |rot: &[Vertex], from: Vertex, to: Vertex| -> Vec<Vertex> {
            let d = rot.len();
            let s = rot.iter().position(|&w| w == from).expect("neighbour");
            let mut out = Vec::new();
            for j in 0..d {
                let w = rot[(s + j) % d];
                out.push(w);
                if w == to {
                    break;
                }
            }
            out
        };
        let (pk, qk) = corner(keep);
        let (pa, qa) = corner(absorb);
        let mut merged = arc(&rot[keep], pk, qk);
        merged.extend(arc(&rot[absorb], pa, qa));
        rot[keep] = merged;
        rot[absorb].clear();
        alive[absorb] = false;
        for v in 0..n {
            if v != keep {
                for w in rot[v].iter_mut() {
                    if *w == absorb {
                        *w = keep;
                    }
                }
            }
        }
        // collapse digons between keep and a common neighbour
        for v in 0..n {
            if !alive[v] || v == keep {
                continue;
            }
            let copies = rot[v].iter().filter(|&&w| w == keep).count();
            if copies < 2 {
                continue;
            }
            if copies > 2 || !adjacent_pair(&rot[v], keep) || !adjacent_pair(&rot[keep], v) {
                return Err(SurgeryError::ParallelEdge(v));
            }
            remove_one(&mut rot[v], keep);
            remove_one(&mut rot[keep], v);
        }
    }

    for &(u, v) in add_edges {
        for x in [u, v] {
            if x >= n || !alive[x] {
                return Err(SurgeryError::BadVertex(x));
            }
        }
        if rot[u].contains(&v) {
            return Err(SurgeryError::EdgeExists(u, v));
        }
        let faces = trace_faces(&rot);
        let face = faces
            .iter()
            .find(|f| f.len() > 3 && f.contains(&u) && f.contains(&v))
            .ok_or(SurgeryError::NoCommonFace(u, v))?
            .clone();
        for (x, y) in [(u, v), (v, u)] {
            let k = face.len();
            let i = face.iter().position(|&w| w == x).expect("on face");
            let p = face[(i + k - 1) % k];
            // the face occupies the wedge right after p's predecessor q; insert before p
            let at = rot[x].iter().position(|&w| w == p).expect("neighbour");
            rot[x].insert(at, y);
        }
    }

    let mut map = vec![None; n];
    let mut next = 0;
    for v in 0..n {
        if alive[v] {
            map[v] = Some(next);
            next += 1;
        }
    }
    let rotation: Vec<Vec<Vertex>> = (0..n)
        .filter(|&v| alive[v])
        .map(|v| rot[v].iter().map(|&w| map[w].expect("alive neighbour")).collect())
        .collect();
    let declared: Vec<Vec<Vertex>> = e
        .outer_facets()
        .iter()
        .filter_map(|c| c.iter().map(|&v| map[v]).collect::<Option<Vec<_>>>())
        .collect();
    let outer: Vec<Vec<Vertex>> = trace_faces(&rotation)
        .into_iter()
        .filter(|f| f.len() != 3 || declared.iter().any(|d| same_cycle(d, f)))
        .collect();
    Ok((Embedding::new(rotation, outer)?, map))
}

fn adjacent_pair(rot: &[Vertex], w: Vertex) -> bool {
    let d = rot.len();
    (0..d).any(|i| rot[i] == w && rot[(i + 1) % d] == w)
}

fn remove_one(rot: &mut Vec<Vertex>, w: Vertex) {
    if let Some(i) = rot.iter().position(|&x| x == w) {
        rot.remove(i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn deleting_a_vertex_opens_a_facet() {
        let (p, _) = merge_surgery(&corpus::icosahedron(), &[0], None, &[]).unwrap();
        assert_eq!(p.vertex_count(), 11);
        assert_eq!(p.outer_facets().len(), 1);
        assert_eq!(p.outer_facets()[0].len(), 5);
    }

    #[test]
    fn merging_adjacent_vertices_fails() {
        let e = corpus::icosahedron();
        assert_eq!(
            merge_surgery(&e, &[0], Some((1, 2)), &[]).unwrap_err(),
            SurgeryError::MergeAdjacent(1, 2)
        );
    }

    #[test]
    fn adding_an_existing_edge_fails() {
        let e = corpus::icosahedron();
        assert!(matches!(
            merge_surgery(&e, &[0], None, &[(1, 2)]),
            Err(SurgeryError::EdgeExists(1, 2))
        ));
    }

    #[test]
    fn remove_then_refill_pentagon() {
        // removing the top and fanning the pentagon from vertex 1 gives an MPG on 11 vertices
        let e = corpus::icosahedron();
        let (m, map) = merge_surgery(&e, &[0], None, &[(1, 3), (1, 4)]).unwrap();
        assert!(m.is_mpg());
        assert_eq!(m.edge_count(), 3 * 11 - 6);
        assert_eq!(map[1], Some(0));
    }

    #[test]
    fn td55_merge_drops_three_vertices() {
        let h = crate::template::host(crate::template::TemplateName::TD55);
        let e = &h.embedding;
        let v = |l: &str| h.vertex(l);
        let (m, map) = merge_surgery(
            e,
            &[v("a"), v("b")],
            Some((v("v2"), v("v4"))),
            &[(v("v1"), v("v5"))],
        )
        .unwrap();
        assert_eq!(m.vertex_count(), e.vertex_count() - 3);
        assert!(m.is_mpg());
        assert!(map[v("v4")].is_none() && map[v("v2")].is_some());
        assert!(crate::coloring::find(&m).is_some_and(|f| f.is_proper(&m)));
    }
}
