//! Brute-force proper 4-colorings, used as the reference oracle.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::embedding::{Embedding, Vertex};

/// Vertex colors in `1..=4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FourColoring(Vec<u8>);

impl FourColoring {
    pub fn new(colors: Vec<u8>) -> Self {
        FourColoring(colors)
    }

    pub fn color(&self, v: Vertex) -> u8 {
        self.0[v]
    }

    pub fn colors(&self) -> &[u8] {
        &self.0
    }

    /// The first edge whose endpoints share a color (or carry a value outside 1..=4).
    pub fn first_conflict(&self, e: &Embedding) -> Option<(Vertex, Vertex)> {
        if self.0.len() != e.vertex_count() {
            return Some((0, 0));
        }
        if let Some(v) = self.0.iter().position(|&c| !(1..=4).contains(&c)) {
            return Some((v, v));
        }
        e.edges()
            .iter()
            .copied()
            .find(|&(u, v)| self.0[u] == self.0[v])
    }

    pub fn is_proper(&self, e: &Embedding) -> bool {
        self.first_conflict(e).is_none()
    }
}

/// Visits every proper 4-coloring in lexicographic order.
pub fn for_each_coloring<F>(e: &Embedding, mut visit: F)
where
    F: FnMut(&FourColoring) -> ControlFlow<()>,
{
    let n = e.vertex_count();
    let mut c = FourColoring(vec![0; n]);
    let mut v = 0usize;
    loop {
        if v == n {
            if visit(&c).is_break() {
                return;
            }
            v -= 1;
            continue;
        }
        let next = (c.0[v] + 1..=4).find(|&k| e.rotation(v).iter().all(|&u| u >= v || c.0[u] != k));
        match next {
            Some(k) => {
                c.0[v] = k;
                v += 1;
            }
            None => {
                c.0[v] = 0;
                if v == 0 {
                    return;
                }
                v -= 1;
            }
        }
    }
}

pub fn enumerate(e: &Embedding, limit: Option<usize>) -> Vec<FourColoring> {
    let mut out = Vec::new();
    for_each_coloring(e, |c| {
        out.push(c.clone());
        if limit.is_some_and(|l| out.len() >= l) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}

pub fn count(e: &Embedding) -> usize {
    let mut n = 0;
    for_each_coloring(e, |_| {
        n += 1;
        ControlFlow::Continue(())
    });
    n
}

pub fn find(e: &Embedding) -> Option<FourColoring> {
    enumerate(e, Some(1)).pop()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn k4_has_24_colorings() {
        assert_eq!(count(&corpus::k4()), 24);
    }

    #[test]
    fn octahedron_colorings_match_chromatic_polynomial() {
        // P(octahedron, k) = k(k-1)(k-2)(k^3 - 9k^2 + 29k - 32)
        let k: i64 = 4;
        let p = k * (k - 1) * (k - 2) * (k * k * k - 9 * k * k + 29 * k - 32);
        assert_eq!(count(&corpus::octahedron()) as i64, p);
    }

    #[test]
    fn colorings_are_proper_and_distinct() {
        let e = corpus::icosahedron();
        let all = enumerate(&e, Some(200));
        assert!(all.iter().all(|c| c.is_proper(&e)));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }
}
