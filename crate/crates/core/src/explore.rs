//! Congruence exploration: the graph of states reachable by ECS moves.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::dsu::Dsu;
use crate::embedding::{EdgeId, Embedding, Vertex};
use crate::kempe::{self, KempeError};
use crate::region::RegionSpec;
use crate::rotation::State;
use crate::tiling::{self, permute_color, Color, EdgeColor, Tiling, PERMUTATIONS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    /// A ring with normal crossings only.
    CanalEcs,
    /// A generalized ring through an abandoned edge.
    GeneralizedEcs,
    /// A generalized ring that stays inside Σ.
    SigmaAdjust,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    pub color: Color,
    pub edges: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExploreConfig {
    pub moves: Vec<MoveKind>,
    pub max_states: usize,
    /// States with more abandoned edges are not entered.
    pub max_abandoned: usize,
    /// Rings tried per (move kind, color, start edge).
    pub ring_limit: usize,
}

impl Default for ExploreConfig {
    fn default() -> Self {
        ExploreConfig {
            moves: alloc::vec![MoveKind::CanalEcs, MoveKind::GeneralizedEcs, MoveKind::SigmaAdjust],
            max_states: 2000,
            max_abandoned: 1,
            ring_limit: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateGraph {
    /// Node tilings are synonym-canonical.
    pub states: Vec<State>,
    pub edges: Vec<(usize, usize, Move)>,
    /// Component id per state; components are the congruence classes.
    pub component: Vec<usize>,
    /// The state cap was hit and the graph is partial.
    pub truncated: bool,
}

impl StateGraph {
    pub fn component_count(&self) -> usize {
        self.component.iter().collect::<BTreeSet<_>>().len()
    }

    /// Same Co(Ω) class and same verified chains, up to synonyms.
    pub fn equivalent(&self, i: usize, j: usize) -> bool {
        equivalence_key(&self.states[i]) == equivalence_key(&self.states[j])
    }

    /// States without abandoned edges whose tiling gives a proper 4-coloring.
    pub fn escapes(&self, e: &Embedding) -> Vec<usize> {
        (0..self.states.len())
            .filter(|&i| {
                self.states[i].abandoned.is_empty() && tiling::coloring_from_rgb(e, &self.states[i].tiling).is_some()
            })
            .collect()
    }
}

type EquivalenceKey = (Vec<EdgeColor>, Vec<(EdgeColor, Vertex, Vertex)>);

/// Boundary word plus verified chains, minimized over the six color permutations.
pub fn equivalence_key(s: &State) -> EquivalenceKey {
    PERMUTATIONS
        .iter()
        .map(|p| {
            let word = s.word.iter().map(|&x| permute_color(p, x)).collect();
            let mut chains: Vec<(EdgeColor, Vertex, Vertex)> = s
                .constraints
                .iter()
                .filter(|k| k.is_verified())
                .map(|k| {
                    let (a, b) = k.endpoints;
                    (permute_color(p, k.color.edge()), a.min(b), a.max(b))
                })
                .collect();
            chains.sort_unstable();
            chains.dedup();
            (word, chains)
        })
        .min()
        .expect("six permutations")
}

/// Every tiling one move away from `t`, with the move that produced it.
pub fn successors(e: &Embedding, t: &Tiling, r: &RegionSpec, cfg: &ExploreConfig) -> Result<Vec<(Tiling, Move)>, KempeError> {
    let mut out = Vec::new();
    let mut seen: BTreeSet<(MoveKind, Color, Vec<EdgeId>)> = BTreeSet::new();
    let mut push = |kind: MoveKind, ring: kempe::GeneralizedRing, out: &mut Vec<(Tiling, Move)>| -> Result<(), KempeError> {
        let mut key = ring.edges.clone();
        key.sort_unstable();
        if !seen.insert((kind, ring.color, key)) {
            return Ok(());
        }
        let s = kempe::ecs_generalized(e, t, &ring)?;
        if s.abandoned().len() <= cfg.max_abandoned {
            out.push((
                s,
                Move {
                    kind,
                    color: ring.color,
                    edges: ring.edges,
                },
            ));
        }
        Ok(())
    };
    for &kind in &cfg.moves {
        for c in Color::ALL {
            let permit = kempe::default_permit(e, t, c, r);
            let starts: Vec<EdgeId> = match kind {
                MoveKind::CanalEcs => (0..e.edge_count())
                    .map(EdgeId)
                    .filter(|&x| matches!(t.color(x).color(), Some(k) if k != c))
                    .collect(),
                MoveKind::GeneralizedEcs => t.abandoned().into_iter().filter(|x| permit.contains(x)).collect(),
                MoveKind::SigmaAdjust => permit.iter().copied().filter(|&x| r.is_inner_edge(x)).collect(),
            };
            let (permit, inside): (&[EdgeId], bool) = match kind {
                MoveKind::CanalEcs => (&[], false),
                MoveKind::GeneralizedEcs => (&permit, false),
                MoveKind::SigmaAdjust => (&permit, true),
            };
            for x in starts {
                for ring in kempe::generalized_rings(e, t, c, r, x, permit, inside, cfg.ring_limit)? {
                    let leaves = ring.edges.iter().any(|&y| !r.is_inner_edge(y));
                    if kind == MoveKind::SigmaAdjust && leaves {
                        continue;
                    }
                    push(kind, ring, &mut out)?;
                }
            }
        }
    }
    Ok(out)
}

/// Breadth-first closure of `t0` under the configured moves. States are keyed by
/// their synonym-canonical tiling.
pub fn congruence_explore(e: &Embedding, t0: &Tiling, r: &RegionSpec, cfg: &ExploreConfig) -> Result<StateGraph, KempeError> {
    let mut index: BTreeMap<Tiling, usize> = BTreeMap::new();
    let mut tilings: Vec<Tiling> = Vec::new();
    let mut edges = Vec::new();
    let mut truncated = false;
    let start = tiling::synonym_canonical(t0);
    index.insert(start.clone(), 0);
    tilings.push(start);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let t = tilings[i].clone();
        for (s, mv) in successors(e, &t, r, cfg)? {
            let key = tiling::synonym_canonical(&s);
            let j = match index.get(&key) {
                Some(&j) => j,
                None => {
                    if tilings.len() >= cfg.max_states {
                        truncated = true;
                        continue;
                    }
                    let j = tilings.len();
                    index.insert(key.clone(), j);
                    tilings.push(key);
                    queue.push_back(j);
                    j
                }
            };
            if i != j {
                edges.push((i, j, mv));
            }
        }
    }
    let mut dsu = Dsu::new(tilings.len());
    for &(a, b, _) in &edges {
        dsu.union(a, b);
    }
    let roots: Vec<usize> = (0..tilings.len()).map(|i| dsu.find(i)).collect();
    let mut ids = BTreeMap::new();
    let component = roots
        .iter()
        .map(|&root| {
            let next = ids.len();
            *ids.entry(root).or_insert(next)
        })
        .collect();
    let states = tilings
        .iter()
        .enumerate()
        .map(|(i, t)| State::new(e, t, r, format!("X{i}")))
        .collect();
    Ok(StateGraph {
        states,
        edges,
        component,
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kempe::{classify_diamond, for_each_with_abandoned, DiamondClass};
    use crate::template::{host, Instance, TemplateName};
    use core::ops::ControlFlow;

    fn ptg_start() -> (Instance, Tiling, Vec<EdgeId>) {
        let h = host(TemplateName::Ptg);
        let e = &h.embedding;
        let v = h.vertex("v");
        let spokes: Vec<EdgeId> = ["v1", "v2", "v3", "v4", "v5"]
            .iter()
            .map(|l| e.edge_between(v, h.vertex(l)).unwrap())
            .collect();
        let mut t0 = None;
        for_each_with_abandoned(e, spokes[0], |t| {
            if classify_diamond(e, t, spokes[0]).unwrap().class == DiamondClass::TypeA {
                t0 = Some(t.clone());
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        })
        .unwrap();
        (h, t0.unwrap(), spokes)
    }

    #[test]
    fn pentagon_reaches_every_spoke_in_one_component() {
        let (h, t0, spokes) = ptg_start();
        let e = &h.embedding;
        let g = congruence_explore(e, &t0, &h.region().unwrap(), &ExploreConfig::default()).unwrap();
        assert!(!g.truncated);
        assert_eq!(g.component_count(), 1);
        let reached: BTreeSet<EdgeId> = g.states.iter().filter(|s| s.abandoned.len() == 1).map(|s| s.abandoned[0]).collect();
        assert!(spokes.iter().all(|x| reached.contains(x)));
        assert!(!g.escapes(e).is_empty());
        for s in &g.states {
            tiling::validate(e, &s.tiling).unwrap();
            assert!(s.abandoned.len() <= 1);
        }
    }

    #[test]
    fn no_moves_is_a_singleton() {
        let (h, t0, _) = ptg_start();
        let cfg = ExploreConfig {
            moves: Vec::new(),
            ..ExploreConfig::default()
        };
        let g = congruence_explore(&h.embedding, &t0, &h.region().unwrap(), &cfg).unwrap();
        assert_eq!(g.states.len(), 1);
        assert_eq!(g.component_count(), 1);
        assert!(g.edges.is_empty());
        assert!(g.equivalent(0, 0));
    }

    #[test]
    fn state_cap_truncates() {
        let (h, t0, _) = ptg_start();
        let cfg = ExploreConfig {
            max_states: 3,
            ..ExploreConfig::default()
        };
        let g = congruence_explore(&h.embedding, &t0, &h.region().unwrap(), &cfg).unwrap();
        assert_eq!(g.states.len(), 3);
        assert!(g.truncated);
    }

    #[test]
    fn canal_moves_alone_keep_the_abandoned_count() {
        let (h, t0, _) = ptg_start();
        let cfg = ExploreConfig {
            moves: alloc::vec![MoveKind::CanalEcs],
            ..ExploreConfig::default()
        };
        let g = congruence_explore(&h.embedding, &t0, &h.region().unwrap(), &cfg).unwrap();
        assert!(g.states.iter().all(|s| s.abandoned.len() == 1));
    }
}
