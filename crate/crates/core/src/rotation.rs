//! Rotating the abandoned edge around a TD region by generalized-ring ECS.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::coloring::FourColoring;
use crate::embedding::{EdgeId, Embedding};
use crate::kempe::{self, chain_constraints, classify_diamond, DiamondClass, KempeConstraint, KempeError};
use crate::region::RegionSpec;
use crate::tiling::{self, canonical_word, Color, EdgeColor, Tiling};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct State {
    pub label: String,
    pub tiling: Tiling,
    /// Co(Ω), read along `region.omega`.
    pub word: Vec<EdgeColor>,
    pub abandoned: Vec<EdgeId>,
    pub diamond: Option<DiamondClass>,
    pub constraints: Vec<KempeConstraint>,
}

impl State {
    pub fn new(e: &Embedding, t: &Tiling, r: &RegionSpec, label: String) -> State {
        let word = r.omega_edges.iter().map(|&x| t.color(x)).collect();
        let abandoned = t.abandoned();
        let diamond = match abandoned.as_slice() {
            [x] => classify_diamond(e, t, *x).ok().map(|d| d.class),
            _ => None,
        };
        State {
            label,
            tiling: t.clone(),
            word,
            abandoned,
            diamond,
            constraints: chain_constraints(e, t, r),
        }
    }

    /// Co(Ω) up to synonyms.
    pub fn word_class(&self) -> Vec<EdgeColor> {
        canonical_word(&self.word)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RunEnd {
    /// The whole schedule ran; `restored` compares the final Co(Ω) class with the first.
    Closed { restored: bool },
    /// A step removed the abandoned edge or left a TypeC diamond; the coloring is verified.
    Escaped { step: usize, coloring: FourColoring },
    /// No ring of the scheduled color leaves Σ through the abandoned edge.
    NoRing { step: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationRun {
    pub states: Vec<State>,
    pub end: RunEnd,
}

impl RotationRun {
    /// Closed with the boundary class restored, or escaped with a coloring.
    pub fn is_success(&self) -> bool {
        matches!(self.end, RunEnd::Closed { restored: true } | RunEnd::Escaped { .. })
    }
}

/// The alternating schedule k1, k2, k1, ... over the two chain colors of a TypeA diamond.
pub fn alternating_schedule(e: &Embedding, t: &Tiling, steps: usize) -> Result<Vec<Color>, KempeError> {
    let d = start_diamond(e, t)?;
    Ok((0..steps).map(|i| d.chains[i % 2]).collect())
}

fn start_diamond(e: &Embedding, t: &Tiling) -> Result<kempe::DiamondType, KempeError> {
    let ab = t.abandoned();
    let [x] = ab.as_slice() else {
        return Err(KempeError::NoTypeAStart);
    };
    let d = classify_diamond(e, t, *x)?;
    if d.class != DiamondClass::TypeA {
        return Err(KempeError::NoTypeAStart);
    }
    Ok(d)
}

fn escape_coloring(e: &Embedding, t: &Tiling) -> Option<FourColoring> {
    let full = match t.abandoned().as_slice() {
        [] => t.clone(),
        [x] => classify_diamond(e, t, *x).ok()?.completion?,
        _ => return None,
    };
    tiling::coloring_from_rgb(e, &full)
}

/// Runs the schedule from a tiling with one TypeA abandoned edge inside Σ. Each
/// step takes the generalized rings of the scheduled color through the current
/// abandoned edge that cross Ω; a ring that moves the abandoned edge to another
/// non-TypeC diamond is preferred, otherwise a ring that escapes is taken.
pub fn rotate_td(e: &Embedding, t: &Tiling, r: &RegionSpec, schedule: &[Color]) -> Result<RotationRun, KempeError> {
    let d = start_diamond(e, t)?;
    if !r.is_inner_edge(d.edge) {
        return Err(KempeError::NoTypeAStart);
    }
    let first = State::new(e, t, r, String::from("S0"));
    let start_class = first.word_class();
    let mut states = alloc::vec![first];
    let mut cur = t.clone();
    for (i, &c) in schedule.iter().enumerate() {
        let step = i + 1;
        let x = cur.abandoned()[0];
        let permit = kempe::default_permit(e, &cur, c, r);
        let outs: Vec<Tiling> = kempe::generalized_rings(e, &cur, c, r, x, &permit, false, 16)?
            .iter()
            .filter(|g| g.edges.iter().any(|&y| r.is_omega_edge(y)))
            .map(|g| kempe::ecs_generalized(e, &cur, g))
            .collect::<Result<_, _>>()?;
        let rotated = outs.iter().find(|s| match s.abandoned().as_slice() {
            [y] => {
                *y != x
                    && r.is_inner_edge(*y)
                    && classify_diamond(e, s, *y).is_ok_and(|d| d.class != DiamondClass::TypeC)
            }
            _ => false,
        });
        if let Some(s) = rotated {
            cur = s.clone();
            states.push(State::new(e, &cur, r, format!("S{step}")));
            continue;
        }
        let escape = outs.iter().find_map(|s| escape_coloring(e, s).map(|f| (s, f)));
        return Ok(match escape {
            Some((s, coloring)) => {
                states.push(State::new(e, s, r, format!("S{step}")));
                RotationRun {
                    states,
                    end: RunEnd::Escaped { step, coloring },
                }
            }
            None => RotationRun {
                states,
                end: RunEnd::NoRing { step },
            },
        });
    }
    let restored = states.last().expect("initial state").word_class() == start_class;
    Ok(RotationRun {
        states,
        end: RunEnd::Closed { restored },
    })
}

impl RotationRun {
    pub fn end_kind(&self) -> &'static str {
        match self.end {
            RunEnd::Closed { restored: true } => "closed",
            RunEnd::Closed { restored: false } => "closed-unrestored",
            RunEnd::Escaped { .. } => "escaped",
            RunEnd::NoRing { .. } => "no-ring",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kempe::for_each_with_abandoned;
    use crate::template::{host, instantiate, template, wheel_cap, TemplateName};
    use core::ops::ControlFlow;

    fn typea_starts(e: &Embedding, x: EdgeId) -> Vec<Tiling> {
        let mut out = Vec::new();
        for_each_with_abandoned(e, x, |t| {
            if classify_diamond(e, t, x).unwrap().class == DiamondClass::TypeA {
                out.push(t.clone());
            }
            ControlFlow::Continue(())
        })
        .unwrap();
        out
    }

    #[test]
    fn icosahedron_pentagon_runs_close_or_escape() {
        let h = host(TemplateName::Ptg);
        let e = &h.embedding;
        let r = h.region().unwrap();
        let v = h.vertex("v");
        let mut runs = 0;
        for l in ["v1", "v2", "v3", "v4", "v5"] {
            let x = e.edge_between(v, h.vertex(l)).unwrap();
            for t in typea_starts(e, x) {
                let run = rotate_td(e, &t, &r, &alternating_schedule(e, &t, 5).unwrap()).unwrap();
                assert!(run.is_success(), "{:?}", run.end);
                if let RunEnd::Escaped { coloring, .. } = &run.end {
                    assert!(coloring.is_proper(e));
                }
                runs += 1;
            }
        }
        assert_eq!(runs, 60);
    }

    #[test]
    fn empty_schedule_returns_the_initial_state() {
        let h = host(TemplateName::Ptg);
        let e = &h.embedding;
        let x = e.edge_between(h.vertex("v"), h.vertex("v1")).unwrap();
        let t = typea_starts(e, x).remove(0);
        let run = rotate_td(e, &t, &h.region().unwrap(), &[]).unwrap();
        assert_eq!(run.states.len(), 1);
        assert_eq!(run.states[0].label, "S0");
        assert_eq!(run.end, RunEnd::Closed { restored: true });
    }

    #[test]
    fn start_must_be_type_a() {
        let h = host(TemplateName::Ptg);
        let e = &h.embedding;
        let t = crate::tiling::enumerate(e, crate::tiling::Mode::Rgb, Some(1)).remove(0);
        assert_eq!(
            rotate_td(e, &t, &h.region().unwrap(), &[Color::Red]).unwrap_err(),
            KempeError::NoTypeAStart
        );
    }

    #[test]
    fn td55_hub_host_rotates_around_the_hexagon() {
        let h = instantiate(&template(TemplateName::TD55), &wheel_cap(6), 0, 0).unwrap();
        let e = &h.embedding;
        let r = h.region().unwrap();
        let ab = e.edge_between(h.vertex("a"), h.vertex("b")).unwrap();
        let mut longest = 0;
        for t in typea_starts(e, ab) {
            let run = rotate_td(e, &t, &r, &alternating_schedule(e, &t, 10).unwrap()).unwrap();
            for s in &run.states {
                crate::tiling::validate(e, &s.tiling).unwrap();
                let (x, y, z) = crate::tiling::boundary_word(e, &s.tiling, &r.omega).unwrap().counts;
                assert!(x % 2 == y % 2 && y % 2 == z % 2);
            }
            longest = longest.max(run.states.len() - 1);
        }
        // five steps bring the abandoned edge back to ab
        assert!(longest >= 5);
    }
}
