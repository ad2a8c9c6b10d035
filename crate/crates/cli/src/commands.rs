//! One function per subcommand.

use std::fmt::Write;
use std::ops::ControlFlow;

use anyhow::{anyhow, bail, Result};
use rgb_tiling::atlas::{
    build_atlas, enumerate_boundary_classes, intersect_atlases, label_entries, td55_catalog, AtlasConfig, MatchLevel,
    Provenance, SymmetryGroup,
};
use rgb_tiling::dual::{ecs_canal, extract_canal_system, LineKind};
use rgb_tiling::embedding::validate_semi_mpg;
use rgb_tiling::explore::{congruence_explore, ExploreConfig, MoveKind};
use rgb_tiling::kempe::{
    chain_constraints, classify_diamond, default_permit, ecs_generalized, for_each_with_abandoned, generalized_rings,
    sigma_adjust, ChainStatus, DiamondClass, SigmaMethod,
};
use rgb_tiling::rotation::{alternating_schedule, rotate_td, RunEnd, State};
use rgb_tiling::route::{
    ecs_diamond_route, enumerate_rings, orientation_sets, search_diamond_route, DiamondRoute, RouteTarget,
};
use rgb_tiling::surgery::{merge_surgery, SurgeryError};
use rgb_tiling::template::TemplateName;
use rgb_tiling::{coloring, format, tiling, Color, EdgeId, Embedding, Mode, Tiling};
use serde_json::{json, Value};

use crate::input::{self, Graph};
use crate::render::{self, Report};
use crate::{Cmd, Common, GraphTiling, RouteStart};

/// Enumeration cap when `--limit` is absent.
const DEFAULT_LIMIT: usize = 16;

pub fn run(cmd: &Cmd, c: &Common) -> Result<Report> {
    match cmd {
        Cmd::Validate { graph } => validate(&input::load_graph(graph)?),
        Cmd::Tile {
            graph,
            mode,
            count,
            abandon,
            class,
        } => tile(&input::load_graph(graph)?, mode, *count, abandon.as_deref(), class.as_deref(), c.limit),
        Cmd::Color { graph, count } => color(&input::load_graph(graph)?, *count, c.limit),
        Cmd::OddCycle { io, color } => with_tiling(io, |g, t| odd_cycle(g, t, color.as_deref())),
        Cmd::Grand { io, color } => with_tiling(io, |g, t| grand(g, t, color.as_deref())),
        Cmd::Complete { io } => with_tiling(io, complete),
        Cmd::Canals { io, color } => with_tiling(io, |g, t| canals(g, t, color.as_deref())),
        Cmd::Routes { io, color, start } => with_tiling(io, |g, t| routes(g, t, color.as_deref(), start, c.limit)),
        Cmd::Orient {
            io,
            color,
            start,
            budget,
        } => with_tiling(io, |g, t| orient(g, t, color.as_deref(), start, *budget)),
        Cmd::Ecs {
            io,
            color,
            canal,
            ring,
            start,
        } => with_tiling(io, |g, t| ecs(g, t, color.as_deref(), *canal, *ring, start)),
        Cmd::DiamondType { io, edge } => with_tiling(io, |g, t| diamond_type(g, t, edge.as_deref())),
        Cmd::Chains { io, td } => with_tiling(io, |g, t| chains(g, t, td.as_deref())),
        Cmd::Gring {
            io,
            td,
            color,
            through,
            permit,
            apply,
        } => with_tiling(io, |g, t| {
            gring(g, t, td.as_deref(), color.as_deref(), through, permit, *apply, c.limit)
        }),
        Cmd::SigmaAdjust {
            io,
            td,
            color,
            through,
            retile,
            index,
        } => with_tiling(io, |g, t| {
            sigma(g, t, td.as_deref(), color.as_deref(), through.as_deref(), retile.as_deref(), *index)
        }),
        Cmd::Rotate {
            io,
            td,
            steps,
            schedule,
        } => with_tiling(io, |g, t| rotate(g, t, td.as_deref(), *steps, schedule.as_deref())),
        Cmd::Explore {
            io,
            td,
            moves,
            max_states,
            max_abandoned,
            ring_limit,
        } => with_tiling(io, |g, t| {
            let cfg = ExploreConfig {
                moves: parse_moves(moves)?,
                max_states: *max_states,
                max_abandoned: *max_abandoned,
                ring_limit: *ring_limit,
            };
            explore(g, t, td.as_deref(), &cfg)
        }),
        Cmd::Atlas {
            graph,
            n,
            sym,
            td,
            provenance,
            intersect,
        } => match (graph, n) {
            (None, Some(n)) => classes(*n, sym),
            (Some(graph), None) => atlas(
                &input::load_graph(graph)?,
                td.as_deref(),
                provenance,
                intersect.as_deref(),
                c.limit,
            ),
            _ => bail!("atlas takes either --n or a graph"),
        },
        Cmd::Surgery {
            graph,
            remove,
            merge,
            add,
        } => surgery(&input::load_graph(graph)?, remove, merge.as_deref(), add),
        Cmd::Check { suite, timings } => {
            let report = crate::suite::run_suite(suite, c.max_vertices, c.seed)?;
            Ok(crate::suite::to_report(&report, *timings))
        }
    }
}

fn with_tiling(io: &GraphTiling, f: impl FnOnce(&Graph, &Tiling) -> Result<Report>) -> Result<Report> {
    let g = input::load_graph(&io.graph)?;
    let t = input::load_tiling(&g, &io.tiling)?;
    f(&g, &t)
}

fn tiling_report(e: &Embedding, t: &Tiling, extra: Value) -> Report {
    let mut j = json!({ "tiling": render::tiling(e, t) });
    if let (Value::Object(m), Value::Object(x)) = (&mut j, extra) {
        m.extend(x);
    }
    Report::new(j, format::write_tiling(e, t)).dot(render::dot(e, Some(t), &[]))
}

fn validate(g: &Graph) -> Result<Report> {
    let r = validate_semi_mpg(&g.embedding);
    let text = format!(
        "vertices {}\nedges {}\nmpg {}\nsemi-mpg {}\nouter {:?}\n",
        r.vertices, r.edges, r.is_mpg, r.is_semi_mpg, r.outer_sizes
    );
    let ok = r.is_mpg || r.is_semi_mpg;
    Ok(Report::new(serde_json::to_value(&r)?, text)
        .dot(render::dot(&g.embedding, None, &[]))
        .ok(ok))
}

fn parse_class(s: &str) -> Result<DiamondClass> {
    Ok(match s.to_ascii_uppercase().trim_start_matches("TYPE") {
        "A" => DiamondClass::TypeA,
        "B2" => DiamondClass::TypeB2,
        "B3" => DiamondClass::TypeB3,
        "C" => DiamondClass::TypeC,
        _ => bail!("unknown diamond class `{s}` (expected A, B2, B3 or C)"),
    })
}

fn tile(
    g: &Graph,
    mode: &str,
    count: bool,
    abandon: Option<&str>,
    class: Option<&str>,
    limit: Option<usize>,
) -> Result<Report> {
    let e = &g.embedding;
    let class = class.map(parse_class).transpose()?;
    let cap = match (count, limit) {
        (_, Some(l)) => l,
        (true, None) => usize::MAX,
        (false, None) => DEFAULT_LIMIT,
    };
    let mut found: Vec<Tiling> = Vec::new();
    let mut total = 0usize;
    let mut visit = |t: &Tiling| {
        if total >= cap {
            return ControlFlow::Break(());
        }
        total += 1;
        if !count {
            found.push(t.clone());
        }
        ControlFlow::Continue(())
    };
    let mode_name = match abandon {
        Some(x) => {
            let x = g.edge(x)?;
            for_each_with_abandoned(e, x, |t| {
                if let Some(k) = class {
                    if classify_diamond(e, t, x).map(|d| d.class) != Ok(k) {
                        return ControlFlow::Continue(());
                    }
                }
                visit(t)
            })?;
            "partial".to_string()
        }
        None => {
            if class.is_some() {
                bail!("--class needs --abandon");
            }
            let m = input::mode(mode)?;
            tiling::for_each_tiling(e, m, &mut visit);
            format::mode_name(m)
        }
    };
    let capped = total >= cap && cap != usize::MAX;
    if count {
        let j = json!({ "mode": mode_name, "count": total, "capped": capped });
        return Ok(Report::new(j, format!("{total}\n")).ok(total > 0));
    }
    let text = found.iter().map(|t| format::write_tiling(e, t)).collect::<Vec<_>>().join("\n");
    let j = json!({
        "mode": mode_name,
        "capped": capped,
        "tilings": found.iter().map(|t| render::tiling(e, t)).collect::<Vec<_>>(),
    });
    let mut r = Report::new(j, text);
    if let Some(t) = found.first() {
        r = r.dot(render::dot(e, Some(t), &[]));
    }
    Ok(r.ok(!found.is_empty()))
}

fn color(g: &Graph, count: bool, limit: Option<usize>) -> Result<Report> {
    let e = &g.embedding;
    if count {
        let n = match limit {
            Some(l) => coloring::enumerate(e, Some(l)).len(),
            None => coloring::count(e),
        };
        return Ok(Report::new(json!({ "count": n }), format!("{n}\n")).ok(n > 0));
    }
    let all = coloring::enumerate(e, Some(limit.unwrap_or(DEFAULT_LIMIT)));
    let text: String = all
        .iter()
        .map(|f| render::cycle_str(&f.colors().iter().map(|&c| c as usize).collect::<Vec<_>>()) + "\n")
        .collect();
    let j = json!({ "colorings": all.iter().map(|f| f.colors().to_vec()).collect::<Vec<_>>() });
    Ok(Report::new(j, text).ok(!all.is_empty()))
}

fn odd_cycle(g: &Graph, t: &Tiling, color: Option<&str>) -> Result<Report> {
    let e = &g.embedding;
    let mut cycles = serde_json::Map::new();
    let mut text = String::new();
    let mut any = false;
    let mut highlight = Vec::new();
    for c in input::colors_for(t, color)? {
        let cyc = tiling::find_mono_odd_cycle(e, t, c);
        match &cyc {
            Some(v) => {
                any = true;
                let _ = writeln!(text, "{} {}", c.name(), render::cycle_str(v));
                for i in 0..v.len() {
                    highlight.extend(e.edge_between(v[i], v[(i + 1) % v.len()]));
                }
            }
            None => {
                let _ = writeln!(text, "{} none", c.name());
            }
        }
        cycles.insert(c.name().to_string(), json!(cyc));
    }
    Ok(Report::new(json!({ "odd_cycles": cycles, "odd_cycle_free": !any }), text)
        .dot(render::dot(e, Some(t), &highlight))
        .ok(!any))
}

fn grand(g: &Graph, t: &Tiling, color: Option<&str>) -> Result<Report> {
    let e = &g.embedding;
    if t.mode() == Mode::Rgb && color.is_none() {
        let f = tiling::coloring_from_rgb(e, t);
        let ok = f.as_ref().is_some_and(|f| f.is_proper(e));
        let j = json!({ "grand": ok, "coloring": f.as_ref().map(|f| f.colors().to_vec()) });
        let text = match &f {
            Some(f) => format!("grand\ncoloring {:?}\n", f.colors()),
            None => "not grand in any color\n".to_string(),
        };
        return Ok(Report::new(j, text).ok(ok));
    }
    let c = input::one_color(t, color)?;
    let s = if t.mode() == Mode::Single(c) { t.clone() } else { t.single_view(c) };
    let w = tiling::check_grand(e, &s, c);
    let odd = tiling::find_mono_odd_cycle(e, &s, c);
    let f = match (&w, &odd) {
        (Some(w), None) => Some(tiling::extract_four_coloring(e, &s, c, w)?),
        _ => None,
    };
    let verified = f.as_ref().is_some_and(|f| f.is_proper(e));
    let j = json!({
        "color": c.name(),
        "grand": w.is_some(),
        "witness": w,
        "odd_cycle": odd,
        "coloring": f.as_ref().map(|f| f.colors().to_vec()),
        "verified": verified,
    });
    let mut text = format!("grand {}\n", w.is_some());
    if let Some(w) = &w {
        let _ = writeln!(text, "V1 {}\nV2 {}", render::cycle_str(&w.v1), render::cycle_str(&w.v2));
    }
    if let Some(f) = &f {
        let _ = writeln!(text, "coloring {:?}", f.colors());
    }
    Ok(Report::new(j, text).ok(w.is_some()))
}

fn complete(g: &Graph, t: &Tiling) -> Result<Report> {
    let e = &g.embedding;
    match tiling::complete_to_rgb(e, t) {
        Ok(s) => Ok(tiling_report(e, &s, json!({}))),
        Err(err) => Ok(Report::new(json!({ "error": err.to_string() }), format!("{err}\n")).ok(false)),
    }
}

fn canals(g: &Graph, t: &Tiling, color: Option<&str>) -> Result<Report> {
    let e = &g.embedding;
    let c = input::one_color(t, color)?;
    let sys = extract_canal_system(e, t, c)?;
    let mut text = String::new();
    let lines: Vec<Value> = sys
        .lines
        .iter()
        .map(|l| {
            let kind = if l.kind == LineKind::Ring { "ring" } else { "path" };
            let names: Vec<String> = l.edges.iter().map(|&x| render::edge_str(e, x)).collect();
            let _ = writeln!(text, "{kind} {}", names.join(" "));
            json!({ "kind": kind, "edges": render::edges(e, &l.edges) })
        })
        .collect();
    let rings_only = sys.lines.iter().all(|l| l.kind == LineKind::Ring);
    let non_crossing = sys.boundary_matching.as_ref().is_none_or(|m| m.non_crossing);
    if let Some(m) = &sys.boundary_matching {
        let _ = writeln!(text, "matching {:?} non-crossing {}", m.pairs, m.non_crossing);
    }
    let ok = (rings_only || !e.is_mpg()) && non_crossing;
    let j = json!({
        "color": c.name(),
        "lines": lines,
        "boundary_matching": sys.boundary_matching,
        "all_rings": rings_only,
    });
    Ok(Report::new(j, text).dot(render::dot(e, Some(t), &[])).ok(ok))
}

fn route_json(e: &Embedding, r: &DiamondRoute) -> Value {
    json!({
        "color": r.color.name(),
        "ring": r.ring,
        "edges": render::edges(e, &r.edges),
        "connectors": render::edges(e, &r.connectors),
    })
}

fn route_text(e: &Embedding, r: &DiamondRoute) -> String {
    let names: Vec<String> = r.edges.iter().map(|&x| render::edge_str(e, x)).collect();
    format!("{} {}\n", if r.ring { "ring" } else { "route" }, names.join(" "))
}

fn target(g: &Graph, s: &str) -> Result<RouteTarget> {
    Ok(match s {
        "ring" => RouteTarget::Ring,
        "outer" => RouteTarget::Outer,
        x => RouteTarget::Edge(g.edge(x)?),
    })
}

fn start_of(g: &Graph, s: &RouteStart) -> Result<Option<(EdgeId, usize)>> {
    match (&s.from, &s.apex) {
        (Some(f), Some(a)) => Ok(Some((g.edge(f)?, g.vertex(a)?))),
        (None, None) => Ok(None),
        _ => bail!("--from and --apex go together"),
    }
}

fn routes(g: &Graph, t: &Tiling, color: Option<&str>, s: &RouteStart, limit: Option<usize>) -> Result<Report> {
    let e = &g.embedding;
    let c = input::one_color(t, color)?;
    if let Some(from) = start_of(g, s)? {
        let r = search_diamond_route(e, t, c, from, target(g, &s.to)?, s.max_len)?;
        return Ok(match r {
            Some(r) => Report::new(json!({ "route": route_json(e, &r) }), route_text(e, &r))
                .dot(render::dot(e, Some(t), &r.crossed())),
            None => Report::new(json!({ "route": null }), "none\n".into()).ok(false),
        });
    }
    let rings = enumerate_rings(e, t, c, s.max_len, Some(limit.unwrap_or(DEFAULT_LIMIT)))?;
    let text: String = rings.iter().map(|r| route_text(e, r)).collect();
    let j = json!({ "rings": rings.iter().map(|r| route_json(e, r)).collect::<Vec<_>>() });
    Ok(Report::new(j, text).dot(render::dot(e, Some(t), &[])))
}

fn orient(g: &Graph, t: &Tiling, color: Option<&str>, s: &RouteStart, budget: usize) -> Result<Report> {
    let e = &g.embedding;
    let c = input::one_color(t, color)?;
    let from = start_of(g, s)?.ok_or_else(|| anyhow!("orient needs --from and --apex"))?;
    let o = orientation_sets(e, t, c, from, s.max_len, budget)?;
    let tri = e.triangle_count();
    let partition = o.bi.len() + o.non.len() + o.uni.len() == tri;
    let initial = e.triangle_at(from.0, from.1).is_some_and(|f| o.out_triangles.contains(&f));
    let j = json!({
        "out": render::faces(e, &o.out_triangles),
        "in": render::faces(e, &o.in_triangles),
        "bi": render::faces(e, &o.bi),
        "non": render::faces(e, &o.non),
        "uni": render::faces(e, &o.uni),
        "exceptional_in": render::faces(e, &o.exceptional_in),
        "complete": o.complete,
        "partition": partition,
        "initial_in_out": initial,
    });
    let text = format!(
        "out {}\nin {}\nbi {}\nnon {}\nuni {}\ncomplete {}\n",
        o.out_triangles.len(),
        o.in_triangles.len(),
        o.bi.len(),
        o.non.len(),
        o.uni.len(),
        o.complete
    );
    Ok(Report::new(j, text).ok(partition && initial))
}

fn ecs(
    g: &Graph,
    t: &Tiling,
    color: Option<&str>,
    canal: Option<usize>,
    ring: Option<usize>,
    s: &RouteStart,
) -> Result<Report> {
    let e = &g.embedding;
    let c = input::one_color(t, color)?;
    let start = start_of(g, s)?;
    match (canal, ring, start) {
        (Some(i), None, None) => {
            let sys = extract_canal_system(e, t, c)?;
            let line = sys.lines.get(i).ok_or_else(|| anyhow!("no canal line {i} ({} lines)", sys.lines.len()))?;
            let out = ecs_canal(e, t, line)?;
            Ok(tiling_report(e, &out, json!({ "switched": render::edges(e, &line.edges) })))
        }
        (None, Some(i), None) => {
            let rings = enumerate_rings(e, t, c, s.max_len, Some(i + 1))?;
            let r = rings.get(i).ok_or_else(|| anyhow!("no diamond ring {i} ({} rings)", rings.len()))?;
            let out = ecs_diamond_route(e, t, r)?;
            Ok(tiling_report(e, &out, json!({ "route": route_json(e, r) })))
        }
        (None, None, Some(from)) => match search_diamond_route(e, t, c, from, target(g, &s.to)?, s.max_len)? {
            Some(r) => {
                let out = ecs_diamond_route(e, t, &r)?;
                Ok(tiling_report(e, &out, json!({ "route": route_json(e, &r) })))
            }
            None => Ok(Report::new(json!({ "route": null }), "none\n".into()).ok(false)),
        },
        _ => bail!("ecs takes exactly one of --canal, --ring or --from/--apex"),
    }
}

fn diamond_type(g: &Graph, t: &Tiling, edge: Option<&str>) -> Result<Report> {
    let e = &g.embedding;
    let xs = match edge {
        Some(x) => vec![g.edge(x)?],
        None => t.abandoned(),
    };
    let mut text = String::new();
    let mut out = Vec::new();
    for x in xs {
        let d = classify_diamond(e, t, x)?;
        let _ = writeln!(text, "{} {:?} {}", render::edge_str(e, x), d.class, render::word(&d.quad));
        out.push(json!({
            "edge": render::edge(e, x),
            "corners": d.corners,
            "quad": render::word(&d.quad),
            "class": d.class,
            "chains": d.chains.iter().map(|c| c.name()).collect::<Vec<_>>(),
            "completion": d.completion.as_ref().map(|s| render::tiling(e, s)),
        }));
    }
    Ok(Report::new(json!({ "diamonds": out }), text))
}

fn state_json(e: &Embedding, s: &State) -> Value {
    json!({
        "label": s.label,
        "word": render::word(&s.word),
        "abandoned": render::edges(e, &s.abandoned),
        "diamond": s.diamond,
        "tiling": render::tiling(e, &s.tiling),
    })
}

fn chains(g: &Graph, t: &Tiling, td: Option<&str>) -> Result<Report> {
    let e = &g.embedding;
    let r = g.region(td)?;
    let ks = chain_constraints(e, t, &r);
    let mut text = String::new();
    let list: Vec<Value> = ks
        .iter()
        .map(|k| {
            let (status, detail) = match &k.status {
                ChainStatus::Verified(p) => ("verified", json!(p)),
                ChainStatus::Refuted(f) => ("refuted", json!(f.colors())),
                ChainStatus::Unverified => ("unverified", Value::Null),
            };
            let _ = writeln!(
                text,
                "{} {} {}-{} {status}",
                render::edge_str(e, k.edge),
                k.color.name(),
                k.endpoints.0,
                k.endpoints.1
            );
            json!({
                "edge": render::edge(e, k.edge),
                "color": k.color.name(),
                "endpoints": k.endpoints,
                "alternatives": k.alternatives,
                "status": status,
                "witness": detail,
            })
        })
        .collect();
    Ok(Report::new(json!({ "omega": r.omega, "constraints": list }), text))
}

#[allow(clippy::too_many_arguments)]
fn gring(
    g: &Graph,
    t: &Tiling,
    td: Option<&str>,
    color: Option<&str>,
    through: &str,
    permit: &str,
    apply: Option<usize>,
    limit: Option<usize>,
) -> Result<Report> {
    let e = &g.embedding;
    let r = g.region(td)?;
    let c = match color {
        Some(c) => input::color(c)?,
        None => bail!("gring needs --color"),
    };
    let x = g.edge(through)?;
    let permit = match permit {
        "default" => default_permit(e, t, c, &r),
        "none" => Vec::new(),
        list => g.edges(list)?,
    };
    let rings = generalized_rings(e, t, c, &r, x, &permit, false, limit.unwrap_or(DEFAULT_LIMIT))?;
    if let Some(i) = apply {
        let ring = rings.get(i).ok_or_else(|| anyhow!("no ring {i} ({} rings)", rings.len()))?;
        let out = ecs_generalized(e, t, ring)?;
        return Ok(tiling_report(e, &out, json!({ "ring": render::edges(e, &ring.edges) })));
    }
    let mut text = String::new();
    let list: Vec<Value> = rings
        .iter()
        .map(|ring| {
            let names: Vec<String> = ring.edges.iter().map(|&y| render::edge_str(e, y)).collect();
            let _ = writeln!(text, "{}", names.join(" "));
            json!({
                "edges": render::edges(e, &ring.edges),
                "generalized": render::edges(e, &ring.generalized_edges()),
            })
        })
        .collect();
    let found = !rings.is_empty();
    Ok(Report::new(json!({ "color": c.name(), "rings": list }), text).ok(found))
}

fn sigma(
    g: &Graph,
    t: &Tiling,
    td: Option<&str>,
    color: Option<&str>,
    through: Option<&str>,
    retile: Option<&str>,
    index: usize,
) -> Result<Report> {
    let e = &g.embedding;
    let r = g.region(td)?;
    let c = match color {
        Some(c) => input::color(c)?,
        None => bail!("sigma-adjust needs --color"),
    };
    let method = match (through, retile) {
        (Some(x), None) => {
            let x = g.edge(x)?;
            let permit = default_permit(e, t, c, &r);
            let rings: Vec<_> = generalized_rings(e, t, c, &r, x, &permit, true, index + 8)?
                .into_iter()
                .filter(|ring| ring.edges.iter().all(|&y| r.is_inner_edge(y)))
                .collect();
            let ring = rings
                .into_iter()
                .nth(index)
                .ok_or_else(|| anyhow!("no inner ring {index} through {}", render::edge_str(e, x)))?;
            SigmaMethod::Ring(ring)
        }
        (None, Some(list)) => SigmaMethod::Retile {
            color: c,
            assignment: g.edges(list)?,
        },
        _ => bail!("sigma-adjust takes exactly one of --through or --retile"),
    };
    let out = sigma_adjust(e, t, &r, &method)?;
    Ok(tiling_report(e, &out, json!({})))
}

fn rotate(g: &Graph, t: &Tiling, td: Option<&str>, steps: usize, schedule: Option<&str>) -> Result<Report> {
    let e = &g.embedding;
    let r = g.region(td)?;
    let schedule: Vec<Color> = match schedule {
        Some(s) => s.chars().map(|ch| input::color(&ch.to_string())).collect::<Result<_>>()?,
        None => alternating_schedule(e, t, steps)?,
    };
    let run = rotate_td(e, t, &r, &schedule)?;
    let mut text = String::new();
    for s in &run.states {
        let ab: Vec<String> = s.abandoned.iter().map(|&x| render::edge_str(e, x)).collect();
        let _ = writeln!(text, "{} {} {}", s.label, render::word(&s.word), ab.join(","));
    }
    let _ = writeln!(text, "end {}", run.end_kind());
    let coloring = match &run.end {
        RunEnd::Escaped { coloring, .. } => Some(coloring.colors().to_vec()),
        _ => None,
    };
    let j = json!({
        "schedule": schedule.iter().map(|c| c.name()).collect::<Vec<_>>(),
        "states": run.states.iter().map(|s| state_json(e, s)).collect::<Vec<_>>(),
        "end": run.end_kind(),
        "coloring": coloring,
    });
    Ok(Report::new(j, text).ok(run.is_success()))
}

fn parse_moves(s: &str) -> Result<Vec<MoveKind>> {
    s.split(',')
        .filter(|m| !m.is_empty())
        .map(|m| match m.trim() {
            "canal" => Ok(MoveKind::CanalEcs),
            "generalized" => Ok(MoveKind::GeneralizedEcs),
            "sigma" => Ok(MoveKind::SigmaAdjust),
            other => Err(anyhow!("unknown move `{other}` (expected canal, generalized or sigma)")),
        })
        .collect()
}

fn explore(g: &Graph, t: &Tiling, td: Option<&str>, cfg: &ExploreConfig) -> Result<Report> {
    let e = &g.embedding;
    let r = g.region(td)?;
    let sg = congruence_explore(e, t, &r, cfg)?;
    let escapes = sg.escapes(e);
    let states: Vec<Value> = sg
        .states
        .iter()
        .zip(&sg.component)
        .map(|(s, &k)| {
            json!({
                "label": s.label,
                "word": render::word(&s.word),
                "abandoned": render::edges(e, &s.abandoned),
                "diamond": s.diamond,
                "component": k,
            })
        })
        .collect();
    let edges: Vec<Value> = sg
        .edges
        .iter()
        .map(|(a, b, m)| json!({ "from": a, "to": b, "kind": m.kind, "color": m.color.name() }))
        .collect();
    let j = json!({
        "states": states,
        "moves": edges,
        "components": sg.component_count(),
        "escapes": escapes,
        "truncated": sg.truncated,
    });
    let text = format!(
        "states {}\nmoves {}\ncomponents {}\nescapes {}\ntruncated {}\n",
        sg.states.len(),
        sg.edges.len(),
        sg.component_count(),
        escapes.len(),
        sg.truncated
    );
    let mut dot = String::from("digraph S {\n  node [shape=box, fontsize=10];\n");
    for (i, s) in sg.states.iter().enumerate() {
        let _ = writeln!(dot, "  {i} [label=\"{} {}\"];", s.label, render::word(&s.word));
    }
    for (a, b, m) in &sg.edges {
        let _ = writeln!(dot, "  {a} -> {b} [color={}];", dot_name(m.color));
    }
    dot.push_str("}\n");
    Ok(Report::new(j, text).dot(dot))
}

fn dot_name(c: Color) -> &'static str {
    match c {
        Color::Red => "red",
        Color::Green => "green3",
        Color::Blue => "blue",
    }
}

fn classes(n: usize, sym: &str) -> Result<Report> {
    if n < 3 {
        bail!("--n must be at least 3");
    }
    let group = SymmetryGroup::parse(sym, n).ok_or_else(|| anyhow!("unknown group `{sym}` for n={n}"))?;
    let cls = enumerate_boundary_classes(n, &group);
    let mut text = String::new();
    let list: Vec<Value> = cls
        .iter()
        .map(|c| {
            let sig = c
                .signature
                .map(|s| s.iter().map(|&b| if b { 'Y' } else { 'N' }).collect::<String>());
            let _ = writeln!(
                text,
                "{} {:?} {} {}",
                render::word(&c.representative),
                c.counts,
                c.size,
                sig.clone().unwrap_or_default()
            );
            json!({
                "representative": render::word(&c.representative),
                "counts": c.counts,
                "size": c.size,
                "signature": sig,
            })
        })
        .collect();
    let j = json!({ "n": n, "group": group.name, "order": group.order(), "classes": list });
    Ok(Report::new(j, text))
}

fn atlas(
    g: &Graph,
    td: Option<&str>,
    provenance: &str,
    intersect: Option<&str>,
    limit: Option<usize>,
) -> Result<Report> {
    let e = &g.embedding;
    let r = g.region(td)?;
    let prov = |s: &str| Provenance::parse(s).ok_or_else(|| anyhow!("unknown provenance `{s}`"));
    let mut cfg = AtlasConfig::default();
    if let Some(l) = limit {
        cfg.max_tilings = l;
    }
    let build = |p: Provenance| -> Result<_> {
        let mut a = build_atlas(e, &r, p, &cfg)?;
        if let Some(inst) = g.instance.as_ref().filter(|i| i.template == TemplateName::TD55) {
            label_entries(&mut a, inst, &td55_catalog());
        }
        Ok(a)
    };
    let a = build(prov(provenance)?)?;
    let entry = |x: &rgb_tiling::atlas::AtlasEntry| {
        json!({
            "name": x.name,
            "provenance": x.provenance,
            "word": render::word(&x.word),
            "word_class": render::word(&x.word_class),
            "counts": x.counts,
            "abandoned": x.abandoned,
            "diamonds": x.diamonds,
            "constraints": x.constraints,
            "parent": x.parent,
        })
    };
    let mut text = String::new();
    for x in &a.entries {
        let _ = writeln!(text, "{} {} {:?} {:?}", x.name, render::word(&x.word), x.abandoned, x.diamonds);
    }
    let mut j = json!({
        "omega": a.omega,
        "td": a.td,
        "group": a.group.name,
        "group_order": a.group.order(),
        "truncated": a.truncated,
        "entries": a.entries.iter().map(entry).collect::<Vec<_>>(),
    });
    if let Some(other) = intersect {
        let b = build(prov(other)?)?;
        let m = intersect_atlases(&a, &b)?;
        let full = m.iter().filter(|x| x.level == MatchLevel::Full).count();
        let _ = writeln!(text, "matches {} full {}", m.len(), full);
        j["intersection"] = json!({
            "other": other,
            "other_entries": b.entries.len(),
            "matches": m,
            "full": full,
        });
    }
    Ok(Report::new(j, text))
}

fn surgery(g: &Graph, remove: &str, merge: Option<&str>, add: &str) -> Result<Report> {
    let e = &g.embedding;
    let remove = g.vertices(remove)?;
    let merge = match merge {
        Some(m) => match g.vertices(m)?.as_slice() {
            [k, a] => Some((*k, *a)),
            _ => bail!("--merge takes `keep,absorb`"),
        },
        None => None,
    };
    let add = g.pairs(add)?;
    match merge_surgery(e, &remove, merge, &add) {
        Ok((m, map)) => {
            let report = validate_semi_mpg(&m);
            let f = if m.is_mpg() { coloring::find(&m) } else { None };
            let j = json!({
                "graph": format::write_graph(&m),
                "map": map,
                "report": report,
                "coloring": f.as_ref().map(|f| f.colors().to_vec()),
            });
            Ok(Report::new(j, format::write_graph(&m)).dot(render::dot(&m, None, &[])))
        }
        Err(SurgeryError::BadVertex(v)) => bail!("bad vertex {v}"),
        Err(err) => Ok(Report::new(json!({ "error": err.to_string() }), format!("{err}\n")).ok(false)),
    }
}
