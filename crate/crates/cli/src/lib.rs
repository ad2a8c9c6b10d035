//! Command-line front end for `rgb-tiling`.
//!
//! Exit codes: 0 success, 1 a checked property fails or the requested object does
//! not exist, 2 bad input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod input;
pub mod render;
pub mod suite;

#[derive(Parser, Debug)]
#[command(name = "rgbt", version, about = "RGB tilings, canal lines and Kempe moves on maximal planar graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Cap on enumerated objects.
    #[arg(long, global = true)]
    pub limit: Option<usize>,
    /// Skip corpus graphs with more vertices (check suites).
    #[arg(long, global = true)]
    pub max_vertices: Option<usize>,
    /// Seed for randomized samples.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Dot,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct GraphTiling {
    /// Graph file, or @name for a built-in graph.
    pub graph: String,
    /// Tiling file.
    pub tiling: String,
}

#[derive(Args, Debug, Clone)]
pub struct RouteStart {
    /// Initial c-edge `u-v`.
    #[arg(long)]
    pub from: Option<String>,
    /// Apex of the initial out-triangle.
    #[arg(long)]
    pub apex: Option<String>,
    /// `ring`, `outer` or an edge `u-v`.
    #[arg(long, default_value = "ring")]
    pub to: String,
    #[arg(long, default_value_t = 40)]
    pub max_len: usize,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Check that a graph is an MPG or semi-MPG.
    Validate { graph: String },
    /// Enumerate or count tilings.
    Tile {
        graph: String,
        #[arg(long, default_value = "rgb")]
        mode: String,
        #[arg(long)]
        count: bool,
        /// Fix this edge as abandoned (partial tilings with one abandoned edge).
        #[arg(long)]
        abandon: Option<String>,
        /// Keep only this diamond class of the abandoned edge: A, B2, B3 or C.
        #[arg(long)]
        class: Option<String>,
    },
    /// Enumerate or count proper 4-colorings.
    Color {
        graph: String,
        #[arg(long)]
        count: bool,
    },
    /// Look for monochromatic odd cycles; fails when one exists.
    OddCycle {
        #[command(flatten)]
        io: GraphTiling,
        #[arg(long)]
        color: Option<String>,
    },
    /// Grandness test and 4-coloring extraction.
    Grand {
        #[command(flatten)]
        io: GraphTiling,
        #[arg(long)]
        color: Option<String>,
    },
    /// Complete a single-color tiling to an rgb tiling.
    Complete {
        #[command(flatten)]
        io: GraphTiling,
    },
    /// Canal lines of one color.
    Canals {
        #[command(flatten)]
        io: GraphTiling,
        #[arg(long)]
        color: Option<String>,
    },
    /// Diamond routes: one search from --from/--apex, or every ring.
    Routes {
        #[command(flatten)]
        io: GraphTiling,
        #[arg(long)]
        color: Option<String>,
        #[command(flatten)]
        start: RouteStart,
    },
    /// Out- and in-triangle sets of an initial triangle.
    Orient {
        #[command(flatten)]
        io: GraphTiling,
        #[arg(long)]
        color: Option<String>,
        #[command(flatten)]
        start: RouteStart,
        #[arg(long, default_value_t = 2_000_000)]
        budget: usize,
    },
    /// Edge-color switch along a canal line, a diamond route or a generalized ring.
    Ecs {
        #[command(flatten)]
        io: GraphTiling,
        #[arg(long)]
        color: Option<String>,
        /// Index into the canal system.
        #[arg(long)]
        canal: Option<usize>,
        /// Index into the diamond rings.
        #[arg(long)]
        ring: Option<usize>,
        #[command(flatten)]
        start: RouteStart,
    },
    /// Diamond class of abandoned edges.
    DiamondType {
        #[command(flatten)]
        io: GraphTiling,
        /// Edge `u-v`; defaults to every abandoned edge.
        #[arg(long)]
        edge: Option<String>,
    },
    /// Kempe-chain constraints across Ω.
    Chains {
        #[command(flatten)]
        io: GraphTiling,
        /// TD vertices, comma separated (defaults to the template's).
        #[arg(long)]
        td: Option<String>,
    },
    /// Generalized canal rings through an edge.
    Gring {
        #[command(flatten)]
        io: GraphTiling,
        #[arg(long)]
        td: Option<String>,
        #[arg(long)]
        color: Option<String>,
        /// Edge the ring passes through.
        #[arg(long)]
        through: String,
        /// `default`, `none` or a list of edges.
        #[arg(long, default_value = "default")]
        permit: String,
        /// Apply the ECS of ring number N.
        #[arg(long)]
        apply: Option<usize>,
    },
    /// Re-color inside Σ by an inner generalized ring or a retile.
    SigmaAdjust {
        #[command(flatten)]
        io: GraphTiling,
        #[arg(long)]
        td: Option<String>,
        #[arg(long)]
        color: Option<String>,
        /// Inner edge for an inside ring.
        #[arg(long)]
        through: Option<String>,
        /// New c-edges inside Σ, comma separated.
        #[arg(long)]
        retile: Option<String>,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Rotate the abandoned edge around the region.
    Rotate {
        #[command(flatten)]
        io: GraphTiling,
        #[arg(long)]
        td: Option<String>,
        /// Alternating schedule length.
        #[arg(long, default_value_t = 5)]
        steps: usize,
        /// Explicit schedule such as `gbgbg`.
        #[arg(long)]
        schedule: Option<String>,
    },
    /// Congruence classes reachable by ECS moves.
    Explore {
        #[command(flatten)]
        io: GraphTiling,
        #[arg(long)]
        td: Option<String>,
        /// Comma separated: canal, generalized, sigma.
        #[arg(long, default_value = "canal,generalized,sigma")]
        moves: String,
        #[arg(long, default_value_t = 2000)]
        max_states: usize,
        #[arg(long, default_value_t = 1)]
        max_abandoned: usize,
        #[arg(long, default_value_t = 4)]
        ring_limit: usize,
    },
    /// Boundary classes (--n) or a region atlas (graph).
    Atlas {
        graph: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// trivial, cyclic, dihedral or klein4; a region atlas uses the region's own group.
        #[arg(long, default_value = "dihedral")]
        sym: String,
        #[arg(long)]
        td: Option<String>,
        #[arg(long, default_value = "primary")]
        provenance: String,
        /// Intersect with the atlas of this provenance.
        #[arg(long)]
        intersect: Option<String>,
    },
    /// Remove vertices, merge two, add edges.
    Surgery {
        graph: String,
        #[arg(long, default_value = "")]
        remove: String,
        /// `keep,absorb`
        #[arg(long)]
        merge: Option<String>,
        /// Edges `u-v`, comma separated.
        #[arg(long, default_value = "")]
        add: String,
    },
    /// Run a check suite: core, canal, kempe, atlas or all.
    Check {
        suite: String,
        /// Include elapsed times in JSON (which makes it run-dependent).
        #[arg(long)]
        timings: bool,
    },
}

/// Parses `argv` (program name first), runs the command and writes the result.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            return code;
        }
    };
    let report = match commands::run(&cli.cmd, &cli.common) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            return 2;
        }
    };
    let body = match cli.common.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).expect("json values serialize");
            s.push('\n');
            s
        }
        OutputFormat::Text => report.text.clone(),
        OutputFormat::Dot => match &report.dot {
            Some(d) => d.clone(),
            None => {
                let _ = writeln!(err, "error: this command has no DOT output");
                return 2;
            }
        },
    };
    let written = match &cli.common.out {
        Some(p) => std::fs::write(p, &body).map_err(|e| format!("writing {}: {e}", p.display())),
        None => out.write_all(body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    if report.ok {
        0
    } else {
        1
    }
}
