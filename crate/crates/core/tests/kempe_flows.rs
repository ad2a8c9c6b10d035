use std::ops::ControlFlow;

use rgb_tiling::explore::{congruence_explore, ExploreConfig};
use rgb_tiling::kempe::{
    classify_diamond, default_permit, ecs_generalized, for_each_with_abandoned, generalized_rings, DiamondClass,
};
use rgb_tiling::rotation::{alternating_schedule, rotate_td, RunEnd};
use rgb_tiling::template::{host, instantiate, template, wheel_cap, TemplateName};
use rgb_tiling::tiling::{self, Color, EdgeColor};
use rgb_tiling::{EdgeId, Embedding, Tiling};

fn type_a(e: &Embedding, x: EdgeId, limit: usize) -> Vec<Tiling> {
    let mut out = Vec::new();
    for_each_with_abandoned(e, x, |t| {
        if classify_diamond(e, t, x).unwrap().class == DiamondClass::TypeA {
            out.push(t.clone());
        }
        if out.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .unwrap();
    out
}

#[test]
fn congruence_states_keep_equal_parity() {
    let h = host(TemplateName::Ptg);
    let e = &h.embedding;
    let r = h.region().unwrap();
    let x = e.edge_between(h.vertex("v"), h.vertex("v1")).unwrap();
    for t in type_a(e, x, 3) {
        let g = congruence_explore(e, &t, &r, &ExploreConfig::default()).unwrap();
        for s in &g.states {
            let w = tiling::boundary_word(e, &s.tiling, &r.omega).unwrap();
            assert!(w.equal_parity());
        }
    }
}

#[test]
fn generalized_ecs_is_an_involution_that_keeps_the_union() {
    let h = instantiate(&template(TemplateName::TD55), &wheel_cap(6), 0, 0).unwrap();
    let e = &h.embedding;
    let r = h.region().unwrap();
    let ab = e.edge_between(h.vertex("a"), h.vertex("b")).unwrap();
    let mut rings = 0;
    for t in type_a(e, ab, 4) {
        for c in Color::ALL {
            let permit = default_permit(e, &t, c, &r);
            for ring in generalized_rings(e, &t, c, &r, ab, &permit, false, 32).unwrap() {
                let s = ecs_generalized(e, &t, &ring).unwrap();
                tiling::validate(e, &s).unwrap();
                assert_eq!(ecs_generalized(e, &s, &ring).unwrap(), t);
                let union = |u: &Tiling| {
                    (0..e.edge_count())
                        .filter(|&i| matches!(u.color(EdgeId(i)), k if k == c.edge() || k == EdgeColor::Abandoned))
                        .collect::<Vec<_>>()
                };
                assert_eq!(union(&s), union(&t));
                // Σ′ c-edges survive when every Σ′ crossing is normal
                let normal_outside = ring
                    .edges
                    .iter()
                    .all(|&y| r.is_inner_edge(y) || t.color(y).color().is_some_and(|k| k != c));
                if normal_outside {
                    for &y in &r.sigma_prime_edges {
                        if t.color(y) == c.edge() {
                            assert_eq!(s.color(y), c.edge());
                        }
                    }
                }
                rings += 1;
            }
        }
    }
    assert!(rings > 0);
}

#[test]
fn pentagon_runs_end_closed_or_with_a_coloring() {
    let h = host(TemplateName::Ptg);
    let e = &h.embedding;
    let r = h.region().unwrap();
    let x = e.edge_between(h.vertex("v"), h.vertex("v3")).unwrap();
    for t in type_a(e, x, usize::MAX) {
        let run = rotate_td(e, &t, &r, &alternating_schedule(e, &t, 5).unwrap()).unwrap();
        match run.end {
            RunEnd::Closed { restored } => assert!(restored),
            RunEnd::Escaped { coloring, .. } => assert!(coloring.is_proper(e)),
            RunEnd::NoRing { step } => panic!("no ring at step {step}"),
        }
    }
}
