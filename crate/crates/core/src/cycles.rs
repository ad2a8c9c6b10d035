//! Simple cycles of bounded length and the disks they bound.

use alloc::vec;
use alloc::vec::Vec;

use crate::embedding::{Embedding, FaceId, Vertex};

/// Every simple cycle with `3 <= len <= max_len`, each reported once, starting at
/// its smallest vertex and oriented so the second vertex is below the last.
pub fn simple_cycles(e: &Embedding, max_len: usize) -> Vec<Vec<Vertex>> {
    let n = e.vertex_count();
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    for s in 0..n {
        let mut path = vec![s];
        on_path[s] = true;
        // stack of (vertex, next rotation index to try)
        let mut stack: Vec<(Vertex, usize)> = vec![(s, 0)];
        while let Some(&mut (u, ref mut i)) = stack.last_mut() {
            let rot = e.rotation(u);
            if *i >= rot.len() {
                stack.pop();
                path.pop();
                on_path[u] = false;
                continue;
            }
            let v = rot[*i];
            *i += 1;
            if v == s && path.len() >= 3 && path[1] < path[path.len() - 1] {
                out.push(path.clone());
            } else if v > s && !on_path[v] && path.len() < max_len {
                on_path[v] = true;
                path.push(v);
                stack.push((v, 0));
            }
        }
        on_path[s] = false;
    }
    out
}

/// Faces on the left of the cycle (walking `cycle[0] -> cycle[1] -> ...`) and on
/// the right.
pub fn cycle_sides(e: &Embedding, cycle: &[Vertex]) -> Option<(Vec<FaceId>, Vec<FaceId>)> {
    let k = cycle.len();
    let mut on_cycle = vec![false; e.edge_count()];
    let mut seeds = Vec::with_capacity(k);
    for i in 0..k {
        let (u, v) = (cycle[i], cycle[(i + 1) % k]);
        on_cycle[e.edge_between(u, v)?.0] = true;
        seeds.push(e.left_face(u, v)?);
    }
    let mut left = vec![false; e.face_count()];
    let mut stack = seeds;
    while let Some(f) = stack.pop() {
        if left[f.0] {
            continue;
        }
        left[f.0] = true;
        for &x in &e.face(f).edges {
            if !on_cycle[x.0] {
                let g = e.across(x, f);
                if !left[g.0] {
                    stack.push(g);
                }
            }
        }
    }
    let (mut l, mut r) = (Vec::new(), Vec::new());
    for (i, &is_left) in left.iter().enumerate() {
        if is_left {
            l.push(FaceId(i));
        } else {
            r.push(FaceId(i));
        }
    }
    Some((l, r))
}

/// The sides of the cycle made of triangles only (zero, one or two of them).
pub fn tiled_disks(e: &Embedding, cycle: &[Vertex]) -> Vec<Vec<FaceId>> {
    let Some((l, r)) = cycle_sides(e, cycle) else {
        return Vec::new();
    };
    [l, r]
        .into_iter()
        .filter(|side| !side.is_empty() && side.iter().all(|&f| e.face(f).is_triangle()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn k4_has_seven_cycles() {
        // four triangles and three 4-cycles
        let c = simple_cycles(&corpus::k4(), 8);
        assert_eq!(c.iter().filter(|x| x.len() == 3).count(), 4);
        assert_eq!(c.iter().filter(|x| x.len() == 4).count(), 3);
        assert_eq!(c.len(), 7);
    }

    #[test]
    fn sides_partition_faces() {
        let e = corpus::icosahedron();
        for cyc in simple_cycles(&e, 6) {
            let (l, r) = cycle_sides(&e, &cyc).unwrap();
            assert_eq!(l.len() + r.len(), 20);
            assert!(!l.is_empty() && !r.is_empty());
        }
    }

    #[test]
    fn outer_facet_side_is_not_a_tiled_disk() {
        let e = corpus::icosahedron_minus_vertex();
        let outer = e.outer_facets()[0].clone();
        let disks = tiled_disks(&e, &outer);
        assert_eq!(disks.len(), 1);
        assert_eq!(disks[0].len(), e.triangle_count());
    }
}
