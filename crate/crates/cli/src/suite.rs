//! Check suites: each check re-derives one claimed property over the shipped corpus.

use std::fmt::Write;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use anyhow::{bail, Result};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rgb_tiling::atlas::{enumerate_boundary_classes, sorted_counts, SymmetryGroup};
use rgb_tiling::corpus::{self, CorpusGraph};
use rgb_tiling::cycles::{simple_cycles, tiled_disks};
use rgb_tiling::dual::{ecs_canal, extract_canal_system, LineKind};
use rgb_tiling::kempe::{
    classify_diamond, default_permit, ecs_generalized, for_each_with_abandoned, generalized_rings, DiamondClass,
};
use rgb_tiling::rotation::{alternating_schedule, rotate_td, RunEnd};
use rgb_tiling::route::{
    ecs_diamond_route, enumerate_rings, orientation_sets, reverse_after_ecs, search_diamond_route, RouteTarget,
};
use rgb_tiling::surgery::merge_surgery;
use rgb_tiling::template::{self, host, TemplateName};
use rgb_tiling::{coloring, format, tiling, Color, EdgeColor, EdgeId, Embedding, Mode, Tiling, Vertex};
use serde::Serialize;
use serde_json::json;

use crate::render::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub graph: String,
    pub tiling: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// Objects examined.
    pub count: usize,
    pub status: Status,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
    pub detail: String,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub max_vertices: Option<usize>,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

/// Outcome of a check body before timing is attached.
struct Outcome {
    count: usize,
    failure: Option<(String, Option<Counterexample>)>,
    detail: String,
}

impl Outcome {
    fn pass(count: usize, detail: impl Into<String>) -> Self {
        Outcome {
            count,
            failure: None,
            detail: detail.into(),
        }
    }

    fn fail(count: usize, why: impl Into<String>, cx: Option<Counterexample>) -> Self {
        Outcome {
            count,
            failure: Some((why.into(), cx)),
            detail: String::new(),
        }
    }
}

fn cx(e: &Embedding, t: Option<&Tiling>) -> Option<Counterexample> {
    Some(Counterexample {
        graph: format::write_graph(e),
        tiling: t.map(|t| format::write_tiling(e, t)),
    })
}

/// Names of the numbered checks, in order.
pub const CRITERIA: [&str; 10] = [
    "coloring-tiling-correspondence",
    "extraction-soundness",
    "boundary-parity",
    "canal-rings",
    "ecs-involution",
    "odd-cycle-amending",
    "orientation-partition",
    "rotation-closure",
    "atlas-counts",
    "td55-surgery",
];

/// Time budget per numbered check, in seconds.
pub const LIMITS: [u64; 10] = [10, 30, 60, 30, 60, 10, 60, 120, 5, 10];

/// Runs numbered check `i` (1-based). Exceeding its time budget is a failure.
pub fn criterion(i: usize, max_vertices: Option<usize>) -> CheckResult {
    let corpus = corpus_upto(max_vertices);
    let start = Instant::now();
    let out = match i {
        1 => correspondence(&corpus),
        2 => extraction(&corpus),
        3 => parity(&corpus),
        4 => canal_rings(&corpus),
        5 => ecs_involution(&corpus),
        6 => amending(),
        7 => orientation(&corpus),
        8 => rotation(),
        9 => atlas_counts(),
        10 => td55_surgery(),
        _ => Outcome::fail(0, format!("no check {i}"), None),
    };
    finish(CRITERIA.get(i - 1).copied().unwrap_or("unknown"), start.elapsed(), LIMITS.get(i - 1).copied().unwrap_or(0), out)
}

fn finish(name: &str, elapsed: Duration, limit_s: u64, out: Outcome) -> CheckResult {
    let limit = Duration::from_secs(limit_s);
    let (status, detail, counterexample) = match out.failure {
        Some((why, cx)) => (Status::Fail, why, cx),
        None if elapsed > limit => (
            Status::Fail,
            format!("took {:.2}s, budget {}s", elapsed.as_secs_f64(), limit_s),
            None,
        ),
        None if out.count == 0 => (Status::Skip, String::from("nothing to check under --max-vertices"), None),
        None => (Status::Pass, out.detail, None),
    };
    CheckResult {
        name: name.to_string(),
        count: out.count,
        status,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.as_millis(),
        detail,
        counterexample,
    }
}

fn corpus_upto(max_vertices: Option<usize>) -> Vec<CorpusGraph> {
    corpus::all()
        .into_iter()
        .filter(|g| max_vertices.is_none_or(|m| g.embedding.vertex_count() <= m))
        .collect()
}

pub fn run_suite(name: &str, max_vertices: Option<usize>, seed: u64) -> Result<SuiteReport> {
    let ids: Vec<usize> = match name {
        "core" => vec![1, 2, 3],
        "canal" => vec![4, 5, 6, 7],
        "kempe" => vec![8, 10],
        "atlas" => vec![9],
        "all" => (1..=10).collect(),
        other => bail!("unknown suite `{other}` (expected core, canal, kempe, atlas or all)"),
    };
    let mut checks: Vec<CheckResult> = ids.iter().map(|&i| criterion(i, max_vertices)).collect();
    if matches!(name, "core" | "all") {
        checks.push(random_sample(seed, max_vertices));
    }
    let passed = checks.iter().all(|c| c.status != Status::Fail);
    Ok(SuiteReport {
        suite: name.to_string(),
        seed,
        max_vertices,
        checks,
        passed,
    })
}

pub fn to_report(r: &SuiteReport, timings: bool) -> Report {
    let mut text = String::new();
    for c in &r.checks {
        let status = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        let _ = writeln!(text, "{status} {} ({} checked, {} ms) {}", c.name, c.count, c.elapsed_ms, c.detail);
    }
    let mut j = serde_json::to_value(r).unwrap_or(json!(null));
    if !timings {
        // elapsed times are the only run-dependent field
        if let Some(checks) = j.get_mut("checks").and_then(|c| c.as_array_mut()) {
            for c in checks {
                if let Some(m) = c.as_object_mut() {
                    m.remove("elapsed_ms");
                }
            }
        }
    }
    Report::new(j, text).ok(r.passed)
}

fn all_tilings(e: &Embedding, mode: Mode) -> Vec<Tiling> {
    tiling::enumerate(e, mode, None)
}

fn correspondence(corpus: &[CorpusGraph]) -> Outcome {
    let mut n = 0;
    for name in ["k4", "octahedron", "icosahedron"] {
        let Some(g) = corpus.iter().find(|g| g.name == name) else {
            continue;
        };
        let e = &g.embedding;
        let colorings = coloring::count(e);
        let tilings = all_tilings(e, Mode::Rgb);
        let clean = tilings.iter().filter(|t| !tiling::has_mono_odd_cycle(e, t)).count();
        if colorings != 4 * clean {
            return Outcome::fail(n, format!("{name}: {colorings} colorings, {clean} clean tilings"), cx(e, None));
        }
        if name == "k4" && (colorings, tilings.len(), clean) != (24, 6, 6) {
            return Outcome::fail(n, format!("k4: ({colorings}, {}, {clean})", tilings.len()), None);
        }
        n += 1;
    }
    Outcome::pass(n, "")
}

fn extraction(corpus: &[CorpusGraph]) -> Outcome {
    let mut verified = 0;
    for g in corpus {
        let e = &g.embedding;
        for c in Color::ALL {
            let mut bad = None;
            tiling::for_each_tiling(e, Mode::Single(c), |t| {
                let Some(w) = tiling::check_grand(e, t, c) else {
                    return ControlFlow::Continue(());
                };
                if tiling::find_mono_odd_cycle(e, t, c).is_some() {
                    return ControlFlow::Continue(());
                }
                match tiling::extract_four_coloring(e, t, c, &w) {
                    Ok(f) if f.is_proper(e) => {
                        verified += 1;
                        ControlFlow::Continue(())
                    }
                    _ => {
                        bad = Some(t.clone());
                        ControlFlow::Break(())
                    }
                }
            });
            if let Some(t) = bad {
                return Outcome::fail(verified, format!("{}: extraction failed", g.name), cx(e, Some(&t)));
            }
        }
    }
    Outcome::pass(verified, "")
}

const HEXAGON: [[usize; 3]; 3] = [[0, 0, 6], [0, 2, 4], [2, 2, 2]];

fn parity(corpus: &[CorpusGraph]) -> Outcome {
    let mut checked = 0;
    for g in corpus {
        let e = &g.embedding;
        let cycles: Vec<Vec<EdgeId>> = simple_cycles(e, 8)
            .into_iter()
            .filter(|c| !tiled_disks(e, c).is_empty())
            .map(|c| {
                (0..c.len())
                    .map(|i| e.edge_between(c[i], c[(i + 1) % c.len()]).expect("cycle edge"))
                    .collect()
            })
            .collect();
        for t in all_tilings(e, Mode::Rgb) {
            for cyc in &cycles {
                let word: Vec<EdgeColor> = cyc.iter().map(|&x| t.color(x)).collect();
                let k = sorted_counts(&word);
                let equal = k[0] % 2 == k[1] % 2 && k[1] % 2 == k[2] % 2;
                if !equal || (cyc.len() == 6 && !HEXAGON.contains(&k)) {
                    return Outcome::fail(checked, format!("{}: counts {k:?} on a {}-cycle", g.name, cyc.len()), cx(e, Some(&t)));
                }
                checked += 1;
            }
        }
    }
    Outcome::pass(checked, "boundary words")
}

/// The five-semi-MPGs used for the matching half of the canal check.
fn five_semis(corpus: &[CorpusGraph]) -> Vec<(String, Embedding)> {
    let mut v: Vec<(String, Embedding)> = corpus
        .iter()
        .filter(|g| matches!(g.embedding.outer_facets(), [f] if f.len() == 5))
        .map(|g| (g.name.to_string(), g.embedding.clone()))
        .collect();
    v.push(("wheel-cap-5".into(), template::wheel_cap(5)));
    v
}

fn canal_rings(corpus: &[CorpusGraph]) -> Outcome {
    let mut lines = 0;
    for g in corpus.iter().filter(|g| g.embedding.is_mpg()) {
        let e = &g.embedding;
        for t in all_tilings(e, Mode::Rgb) {
            for c in Color::ALL {
                let sys = match extract_canal_system(e, &t, c) {
                    Ok(s) => s,
                    Err(err) => return Outcome::fail(lines, format!("{}: {err}", g.name), cx(e, Some(&t))),
                };
                if sys.lines.iter().any(|l| l.kind != LineKind::Ring) {
                    return Outcome::fail(lines, format!("{}: open canal line", g.name), cx(e, Some(&t)));
                }
                lines += sys.lines.len();
            }
        }
    }
    let mut matchings = 0;
    for (name, e) in five_semis(corpus) {
        for t in all_tilings(&e, Mode::Rgb) {
            for c in Color::ALL {
                let sys = match extract_canal_system(&e, &t, c) {
                    Ok(s) => s,
                    Err(err) => return Outcome::fail(lines, format!("{name}: {err}"), cx(&e, Some(&t))),
                };
                match &sys.boundary_matching {
                    Some(m) if m.non_crossing => matchings += 1,
                    _ => return Outcome::fail(lines, format!("{name}: crossing matching"), cx(&e, Some(&t))),
                }
            }
        }
    }
    Outcome::pass(lines + matchings, format!("{lines} rings, {matchings} matchings"))
}

/// Tilings per graph for the heavier move checks.
const SAMPLE: usize = 24;

fn ecs_involution(corpus: &[CorpusGraph]) -> Outcome {
    let mut moves = 0;
    for g in corpus {
        let e = &g.embedding;
        for t in tiling::enumerate(e, Mode::Rgb, Some(SAMPLE)) {
            for c in Color::ALL {
                let sys = extract_canal_system(e, &t, c).expect("rgb tilings have canal systems");
                for line in sys.lines.iter().filter(|l| l.kind == LineKind::Ring) {
                    let ok = ecs_canal(e, &t, line)
                        .ok()
                        .filter(|s| tiling::validate(e, s).is_ok())
                        .and_then(|s| ecs_canal(e, &s, line).ok())
                        .is_some_and(|back| back == t);
                    if !ok {
                        return Outcome::fail(moves, format!("{}: canal ring ECS", g.name), cx(e, Some(&t)));
                    }
                    moves += 1;
                }
                let view = t.single_view(c);
                let rings = enumerate_rings(e, &view, c, 40, Some(64)).expect("single view");
                for r in rings {
                    let ok = ecs_diamond_route(e, &view, &r)
                        .ok()
                        .filter(|s| tiling::validate(e, s).is_ok())
                        .and_then(|s| ecs_diamond_route(e, &s, &reverse_after_ecs(&r)).ok())
                        .is_some_and(|back| back == view);
                    if !ok {
                        return Outcome::fail(moves, format!("{}: diamond ring ECS", g.name), cx(e, Some(&view)));
                    }
                    moves += 1;
                }
            }
        }
    }
    // generalized rings through an abandoned inner edge of each template region
    for name in TemplateName::ALL {
        let h = host(name);
        let e = &h.embedding;
        let Ok(r) = h.region() else { continue };
        for &x in &r.inner_edges {
            let mut starts = Vec::new();
            let _ = for_each_with_abandoned(e, x, |t| {
                starts.push(t.clone());
                if starts.len() >= 4 {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            for t in &starts {
                for c in Color::ALL {
                    let permit = default_permit(e, t, c, &r);
                    let Ok(rings) = generalized_rings(e, t, c, &r, x, &permit, false, 8) else {
                        return Outcome::fail(moves, format!("{}: ring search failed", name.as_str()), cx(e, Some(t)));
                    };
                    for ring in rings {
                        let ok = ecs_generalized(e, t, &ring)
                            .ok()
                            .filter(|s| tiling::validate(e, s).is_ok())
                            .and_then(|s| ecs_generalized(e, &s, &ring).ok())
                            .is_some_and(|back| &back == t);
                        if !ok {
                            return Outcome::fail(moves, format!("{}: generalized ECS", name.as_str()), cx(e, Some(t)));
                        }
                        moves += 1;
                    }
                }
            }
        }
    }
    Outcome::pass(moves, "switches")
}

/// Every route target worth trying from a start: rings, then each outer c-edge.
fn targets(e: &Embedding, t: &Tiling, c: Color) -> Vec<RouteTarget> {
    let mut v = vec![RouteTarget::Ring];
    v.extend(
        (0..e.edge_count())
            .map(EdgeId)
            .filter(|&x| e.is_boundary_edge(x) && t.color(x) == c.edge())
            .map(RouteTarget::Edge),
    );
    v
}

fn starts(e: &Embedding, t: &Tiling, c: Color) -> Vec<(EdgeId, Vertex)> {
    let mut v = Vec::new();
    for i in 0..e.edge_count() {
        let x = EdgeId(i);
        if t.color(x) != c.edge() {
            continue;
        }
        for f in e.edge_faces(x) {
            let face = e.face(f);
            if !face.is_triangle() {
                continue;
            }
            let (a, b) = e.endpoints(x);
            if let Some(&apex) = face.vertices.iter().find(|&&w| w != a && w != b) {
                v.push((x, apex));
            }
        }
    }
    v
}

/// Tilings one diamond-route ECS away from `t`.
fn one_step(e: &Embedding, t: &Tiling, c: Color) -> Vec<Tiling> {
    let mut out = Vec::new();
    for from in starts(e, t, c) {
        for to in targets(e, t, c) {
            if let Ok(Some(r)) = search_diamond_route(e, t, c, from, to, 40) {
                if let Ok(s) = ecs_diamond_route(e, t, &r) {
                    if !out.contains(&s) {
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}

fn amended(e: &Embedding, t: &Tiling, c: Color) -> bool {
    tiling::find_mono_odd_cycle(e, t, c).is_none() && tiling::check_grand(e, t, c).is_some()
}

fn amending() -> Outcome {
    let g = Color::Green;
    let e = corpus::seven_semi();
    let t = corpus::seeded_green(&e, &corpus::SEVEN_SEMI_GREEN);
    if tiling::find_mono_odd_cycle(&e, &t, g).map(|c| c.len()) != Some(5) {
        return Outcome::fail(0, "seven-semi: seed has no green 5-cycle", cx(&e, Some(&t)));
    }
    let first = one_step(&e, &t, g);
    let direct = first.iter().filter(|s| amended(&e, s, g)).count();
    if direct == 0 {
        return Outcome::fail(first.len(), "seven-semi: no single route amends the seed", cx(&e, Some(&t)));
    }
    let e2 = corpus::annular();
    let t2 = corpus::seeded_green(&e2, &corpus::ANNULAR_GREEN);
    if tiling::find_mono_odd_cycle(&e2, &t2, g).is_none() {
        return Outcome::fail(direct, "annular: seed is already odd-cycle free", None);
    }
    let mut tried = first.len();
    for mid in one_step(&e2, &t2, g) {
        if tiling::check_grand(&e2, &mid, g).is_some() {
            continue;
        }
        let next = one_step(&e2, &mid, g);
        tried += next.len();
        if next.iter().any(|s| amended(&e2, s, g)) {
            return Outcome::pass(tried, format!("{direct} direct amendments; annular in two steps"));
        }
    }
    Outcome::fail(tried, "annular: no two-step amendment through a non-grand tiling", cx(&e2, Some(&t2)))
}

fn orientation(corpus: &[CorpusGraph]) -> Outcome {
    let mut checked = 0;
    let mut incomplete = 0;
    for g in corpus {
        let e = &g.embedding;
        let all: Vec<_> = e.triangles().map(|(f, _)| f).collect();
        for c in Color::ALL {
            for t in tiling::enumerate(e, Mode::Single(c), Some(2)) {
                for (x, apex) in starts(e, &t, c) {
                    let o = match orientation_sets(e, &t, c, (x, apex), 40, 200_000) {
                        Ok(o) => o,
                        Err(err) => return Outcome::fail(checked, format!("{}: {err}", g.name), cx(e, Some(&t))),
                    };
                    let mut seen = vec![0u8; e.face_count()];
                    for f in o.bi.iter().chain(&o.non).chain(&o.uni) {
                        seen[f.0] += 1;
                    }
                    let partition = all.iter().all(|f| seen[f.0] == 1) && seen.iter().sum::<u8>() as usize == all.len();
                    let initial = e.triangle_at(x, apex).is_some_and(|f| o.out_triangles.contains(&f));
                    let consistent = o.bi.iter().all(|f| o.out_triangles.contains(f) && o.in_triangles.contains(f))
                        && o.non.iter().all(|f| !o.out_triangles.contains(f) && !o.in_triangles.contains(f));
                    if !(partition && initial && consistent) {
                        return Outcome::fail(checked, format!("{}: sets do not partition", g.name), cx(e, Some(&t)));
                    }
                    incomplete += usize::from(!o.complete);
                    checked += 1;
                }
            }
        }
    }
    Outcome::pass(checked, format!("{incomplete} searches hit the node budget"))
}

fn rotation() -> Outcome {
    let h = host(TemplateName::Ptg);
    let e = &h.embedding;
    let Ok(r) = h.region() else {
        return Outcome::fail(0, "Ptg host has no region", None);
    };
    let v = h.vertex("v");
    let mut runs = 0;
    for l in ["v1", "v2", "v3", "v4", "v5"] {
        let x = e.edge_between(v, h.vertex(l)).expect("spoke");
        let mut starts = Vec::new();
        let _ = for_each_with_abandoned(e, x, |t| {
            if classify_diamond(e, t, x).is_ok_and(|d| d.class == DiamondClass::TypeA) {
                starts.push(t.clone());
            }
            ControlFlow::Continue(())
        });
        for t in starts {
            let ok = alternating_schedule(e, &t, 5)
                .and_then(|s| rotate_td(e, &t, &r, &s))
                .is_ok_and(|run| match &run.end {
                    RunEnd::Closed { restored } => *restored,
                    RunEnd::Escaped { coloring, .. } => coloring.is_proper(e),
                    RunEnd::NoRing { .. } => false,
                });
            if !ok {
                return Outcome::fail(runs, format!("run from spoke {l} neither closed nor escaped"), cx(e, Some(&t)));
            }
            runs += 1;
        }
    }
    if runs == 0 {
        return Outcome::fail(0, "no TypeA starts", None);
    }
    Outcome::pass(runs, "runs")
}

fn atlas_counts() -> Outcome {
    // raw counts straight from all 3^6 words
    let mut raw = [0usize; 3];
    for code in 0..729usize {
        let mut k = [0usize; 3];
        let mut c = code;
        for _ in 0..6 {
            k[c % 3] += 1;
            c /= 3;
        }
        k.sort_unstable();
        if let Some(i) = HEXAGON.iter().position(|h| *h == k) {
            raw[i] += 1;
        }
    }
    if raw != [3, 90, 90] {
        return Outcome::fail(0, format!("raw counts {raw:?}"), None);
    }
    let classes = enumerate_boundary_classes(6, &SymmetryGroup::trivial(6));
    let mut lib = [0usize; 3];
    for cl in &classes {
        if let Some(i) = HEXAGON.iter().position(|h| *h == cl.counts) {
            lib[i] += cl.size;
        }
    }
    if lib != raw {
        return Outcome::fail(classes.len(), format!("class sizes sum to {lib:?}"), None);
    }
    let klein = enumerate_boundary_classes(6, &SymmetryGroup::klein4());
    let yyy = klein.iter().filter(|c| c.signature == Some([true; 3])).count();
    if yyy != 1 {
        return Outcome::fail(klein.len(), format!("{yyy} (Y,Y,Y) classes"), None);
    }
    Outcome::pass(classes.len() + klein.len(), "(3, 90, 90); one (Y,Y,Y) class")
}

fn td55_surgery() -> Outcome {
    let h = host(TemplateName::TD55);
    let e = &h.embedding;
    let v = |l: &str| h.vertex(l);
    let res = merge_surgery(e, &[v("a"), v("b")], Some((v("v2"), v("v4"))), &[(v("v1"), v("v5"))]);
    let (m, _) = match res {
        Ok(x) => x,
        Err(err) => return Outcome::fail(0, format!("surgery failed: {err}"), cx(e, None)),
    };
    if m.vertex_count() + 3 != e.vertex_count() {
        return Outcome::fail(1, format!("{} -> {} vertices", e.vertex_count(), m.vertex_count()), cx(&m, None));
    }
    if !m.is_mpg() || m.edge_count() != 3 * m.vertex_count() - 6 {
        return Outcome::fail(1, "result is not an MPG", cx(&m, None));
    }
    match coloring::find(&m) {
        Some(f) if f.is_proper(&m) => Outcome::pass(1, format!("{} -> {} vertices", e.vertex_count(), m.vertex_count())),
        _ => Outcome::fail(1, "result has no 4-coloring", cx(&m, None)),
    }
}

/// A random MPG grown from K4 by face insertions and edge flips.
pub fn random_mpg(rng: &mut StdRng, vertices: usize) -> Embedding {
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]];
    for n in 4..vertices.max(4) {
        let f = rng.random_range(0..faces.len());
        let [a, b, c] = faces[f];
        faces[f] = [a, b, n];
        faces.push([b, c, n]);
        faces.push([c, a, n]);
    }
    for _ in 0..2 * vertices {
        let f1 = rng.random_range(0..faces.len());
        let k = rng.random_range(0..3);
        let (u, v, p) = (faces[f1][k], faces[f1][(k + 1) % 3], faces[f1][(k + 2) % 3]);
        let f2 = faces
            .iter()
            .position(|f| (0..3).any(|m| f[m] == v && f[(m + 1) % 3] == u))
            .expect("every edge has two faces");
        let m = (0..3).find(|&m| faces[f2][m] == v).expect("shared vertex");
        let q = faces[f2][(m + 2) % 3];
        if !faces.iter().any(|f| f.contains(&p) && f.contains(&q)) {
            faces[f1] = [u, q, p];
            faces[f2] = [v, p, q];
        }
    }
    let n = vertices.max(4);
    let faces: Vec<Vec<Vertex>> = faces.iter().map(|f| f.to_vec()).collect();
    Embedding::from_faces(n, &faces, &[]).expect("flips keep a triangulation")
}

/// The correspondence check on seeded random triangulations.
pub fn random_sample(seed: u64, max_vertices: Option<usize>) -> CheckResult {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(seed);
    let top = max_vertices.unwrap_or(11).clamp(4, 11);
    let mut out = Outcome::pass(0, format!("seed {seed}"));
    for i in 0..12 {
        let n = rng.random_range(4..=top);
        let e = random_mpg(&mut rng, n);
        let clean = tiling::enumerate(&e, Mode::Rgb, None)
            .iter()
            .filter(|t| !tiling::has_mono_odd_cycle(&e, t))
            .count();
        if coloring::count(&e) != 4 * clean {
            out = Outcome::fail(i, format!("seed {seed}, sample {i}"), cx(&e, None));
            break;
        }
        out.count = i + 1;
    }
    finish("random-correspondence", start.elapsed(), 30, out)
}
