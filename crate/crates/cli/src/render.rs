//! JSON values, text and DOT for graphs, tilings and routes.

use std::fmt::Write;

use rgb_tiling::{format, EdgeColor, EdgeId, Embedding, FaceId, Tiling, Vertex};
use serde_json::{json, Value};

/// What a command produced. `ok == false` maps to exit code 1.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub dot: Option<String>,
    pub ok: bool,
}

impl Report {
    pub fn new(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            dot: None,
            ok: true,
        }
    }

    pub fn dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }

    pub fn ok(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }
}

pub fn letter(c: EdgeColor) -> String {
    c.letter().to_string()
}

pub fn word(w: &[EdgeColor]) -> String {
    w.iter().map(|c| c.letter()).collect()
}

pub fn edge(e: &Embedding, x: EdgeId) -> Value {
    let (u, v) = e.endpoints(x);
    json!([u, v])
}

pub fn edges(e: &Embedding, xs: &[EdgeId]) -> Value {
    Value::Array(xs.iter().map(|&x| edge(e, x)).collect())
}

pub fn edge_str(e: &Embedding, x: EdgeId) -> String {
    let (u, v) = e.endpoints(x);
    format!("{u}-{v}")
}

pub fn faces(e: &Embedding, fs: &[FaceId]) -> Value {
    Value::Array(fs.iter().map(|&f| json!(e.face(f).vertices)).collect())
}

pub fn tiling(e: &Embedding, t: &Tiling) -> Value {
    let colored: Vec<Value> = e
        .edges()
        .iter()
        .zip(t.colors())
        .map(|(&(u, v), &c)| json!([u, v, letter(c)]))
        .collect();
    json!({ "mode": format::mode_name(t.mode()), "edges": colored })
}

fn dot_color(c: EdgeColor) -> &'static str {
    match c {
        EdgeColor::Red => "color=red",
        EdgeColor::Green => "color=green3",
        EdgeColor::Blue => "color=blue",
        EdgeColor::Black => "color=black",
        // two parallel strokes
        EdgeColor::Abandoned => "color=\"gold:invis:gold\", penwidth=2",
    }
}

/// An undirected graph; edges take their tiling color, `highlight` edges are drawn bold.
pub fn dot(e: &Embedding, t: Option<&Tiling>, highlight: &[EdgeId]) -> String {
    let mut s = String::from("graph G {\n  node [shape=circle, fontsize=10];\n");
    for v in 0..e.vertex_count() {
        let _ = writeln!(s, "  {v};");
    }
    for (i, &(u, v)) in e.edges().iter().enumerate() {
        let mut attrs = match t {
            Some(t) => dot_color(t.colors()[i]).to_string(),
            None => String::from("color=gray40"),
        };
        if highlight.contains(&EdgeId(i)) {
            attrs.push_str(", style=bold, penwidth=3");
        }
        let _ = writeln!(s, "  {u} -- {v} [{attrs}];");
    }
    s.push_str("}\n");
    s
}

pub fn cycle_str(c: &[Vertex]) -> String {
    c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}
