//! Line-based text formats for embeddings and tilings.
//!
//! Graph files:
//!
//! ```text
//! semimpg v1
//! n 4
//! rot 0: 1 2 3
//! ...
//! outer: 0 1 2 3 4
//! ```
//!
//! Tiling files start with `tiling v1 mode=<rgb|single:red|single:green|single:blue|partial>`
//! followed by one `e <u> <v> <r|g|b|k|y>` line per edge. `#` starts a comment.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use thiserror::Error;

use crate::embedding::{Embedding, EmbeddingError, Vertex};
use crate::tiling::{Color, EdgeColor, Mode, Tiling, TilingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Meaningful lines with their 1-based line numbers, comments stripped.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim_end();
        if l.trim().is_empty() {
            None
        } else {
            Some((i + 1, l))
        }
    })
}

/// Splits a line into whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn number(lno: usize, (col, tok): (usize, &str)) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| syntax(lno, col, format!("expected a vertex number, found `{tok}`")))
}

pub fn parse_graph(text: &str) -> Result<Embedding, ParseError> {
    let mut it = lines(text);
    let (lno, header) = it.next().ok_or_else(|| syntax(1, 1, "empty graph file"))?;
    if tokens(header).iter().map(|t| t.1).collect::<Vec<_>>() != ["semimpg", "v1"] {
        return Err(syntax(lno, 1, "expected header `semimpg v1`"));
    }
    let (lno, nline) = it.next().ok_or_else(|| syntax(lno + 1, 1, "missing `n <V>` line"))?;
    let toks = tokens(nline);
    if toks.len() != 2 || toks[0].1 != "n" {
        return Err(syntax(lno, 1, "expected `n <V>`"));
    }
    let n = number(lno, toks[1])?;
    let mut rotation: Vec<Option<Vec<Vertex>>> = vec![None; n];
    let mut outer = Vec::new();
    for (lno, line) in it {
        let toks = tokens(line);
        match toks[0].1 {
            "rot" => {
                let (col, vtok) = *toks
                    .get(1)
                    .ok_or_else(|| syntax(lno, line.len() + 1, "missing vertex after `rot`"))?;
                let vstr = vtok
                    .strip_suffix(':')
                    .ok_or_else(|| syntax(lno, col, "expected `<v>:`"))?;
                let v = number(lno, (col, vstr))?;
                if v >= n {
                    return Err(syntax(lno, col, format!("vertex {v} out of range 0..{n}")));
                }
                if rotation[v].is_some() {
                    return Err(syntax(lno, col, format!("duplicate rotation for vertex {v}")));
                }
                let nbrs = toks[2..]
                    .iter()
                    .map(|&t| {
                        let u = number(lno, t)?;
                        if u >= n {
                            Err(syntax(lno, t.0, format!("vertex {u} out of range 0..{n}")))
                        } else {
                            Ok(u)
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                rotation[v] = Some(nbrs);
            }
            "outer:" => {
                let cyc = toks[1..]
                    .iter()
                    .map(|&t| number(lno, t))
                    .collect::<Result<Vec<_>, _>>()?;
                outer.push(cyc);
            }
            other => {
                return Err(syntax(
                    lno,
                    toks[0].0,
                    format!("unknown directive `{other}`"),
                ))
            }
        }
    }
    let rotation = rotation
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| syntax(0, 0, format!("no rotation given for vertex {v}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Embedding::new(rotation, outer)?)
}

pub fn write_graph(e: &Embedding) -> String {
    let mut s = String::from("semimpg v1\n");
    let _ = writeln!(s, "n {}", e.vertex_count());
    for v in 0..e.vertex_count() {
        let _ = write!(s, "rot {v}:");
        for u in e.rotation(v) {
            let _ = write!(s, " {u}");
        }
        s.push('\n');
    }
    for cyc in e.outer_facets() {
        s.push_str("outer:");
        for u in cyc {
            let _ = write!(s, " {u}");
        }
        s.push('\n');
    }
    s
}

pub fn mode_from_str(s: &str) -> Option<Mode> {
    Some(match s {
        "rgb" => Mode::Rgb,
        "partial" => Mode::Partial,
        "single:red" => Mode::Single(Color::Red),
        "single:green" => Mode::Single(Color::Green),
        "single:blue" => Mode::Single(Color::Blue),
        _ => return None,
    })
}

pub fn mode_name(m: Mode) -> String {
    match m {
        Mode::Rgb => "rgb".to_string(),
        Mode::Partial => "partial".to_string(),
        Mode::Single(c) => format!("single:{}", c.name()),
    }
}

/// Parses a tiling over `e`. Every edge must be listed exactly once; the result
/// is checked against the mode's invariants.
pub fn parse_tiling(e: &Embedding, text: &str) -> Result<Tiling, ParseError> {
    let mut it = lines(text);
    let (lno, header) = it.next().ok_or_else(|| syntax(1, 1, "empty tiling file"))?;
    let toks = tokens(header);
    if toks.len() != 3 || toks[0].1 != "tiling" || toks[1].1 != "v1" {
        return Err(syntax(lno, 1, "expected header `tiling v1 mode=...`"));
    }
    let mode = toks[2]
        .1
        .strip_prefix("mode=")
        .and_then(mode_from_str)
        .ok_or_else(|| syntax(lno, toks[2].0, "unknown tiling mode"))?;
    let mut colors: Vec<Option<EdgeColor>> = vec![None; e.edge_count()];
    for (lno, line) in it {
        let toks = tokens(line);
        if toks.len() != 4 || toks[0].1 != "e" {
            return Err(syntax(lno, 1, "expected `e <u> <v> <color>`"));
        }
        let u = number(lno, toks[1])?;
        let v = number(lno, toks[2])?;
        let id = e
            .edge_between(u, v)
            .filter(|_| u < e.vertex_count() && v < e.vertex_count())
            .ok_or_else(|| syntax(lno, toks[1].0, format!("no edge {u}-{v} in the graph")))?;
        let c = match toks[3].1 {
            "r" => EdgeColor::Red,
            "g" => EdgeColor::Green,
            "b" => EdgeColor::Blue,
            "k" => EdgeColor::Black,
            "y" => EdgeColor::Abandoned,
            other => {
                return Err(syntax(lno, toks[3].0, format!("unknown edge color `{other}`")))
            }
        };
        if colors[id.0].replace(c).is_some() {
            return Err(syntax(lno, 1, format!("edge {u}-{v} listed twice")));
        }
    }
    if let Some(missing) = colors.iter().position(Option::is_none) {
        let (u, v) = e.edges()[missing];
        return Err(syntax(0, 0, format!("edge {u}-{v} has no color")));
    }
    let colors = colors.into_iter().map(|c| c.expect("checked")).collect();
    Ok(Tiling::new(e, mode, colors)?)
}

pub fn write_tiling(e: &Embedding, t: &Tiling) -> String {
    let mut s = format!("tiling v1 mode={}\n", mode_name(t.mode()));
    for (i, &(u, v)) in e.edges().iter().enumerate() {
        let _ = writeln!(s, "e {u} {v} {}", t.colors()[i].letter());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    const K4: &str = "semimpg v1\n# tetrahedron\nn 4\nrot 0: 1 2 3\nrot 1: 0 3 2\nrot 2: 0 1 3\nrot 3: 0 2 1\n";

    #[test]
    fn parses_k4() {
        let e = parse_graph(K4).unwrap();
        assert_eq!((e.vertex_count(), e.edge_count(), e.triangle_count()), (4, 6, 4));
    }

    #[test]
    fn asymmetric_file_is_rejected() {
        let text = "semimpg v1\nn 4\nrot 0: 1 2 3\nrot 1: 3 2\nrot 2: 0 1 3\nrot 3: 0 2 1\n";
        assert_eq!(
            parse_graph(text).unwrap_err(),
            ParseError::Embedding(EmbeddingError::Asymmetric(0, 1))
        );
    }

    #[test]
    fn syntax_error_reports_position() {
        let text = "semimpg v1\nn 4\nrot 0: 1 x 3\n";
        match parse_graph(text).unwrap_err() {
            ParseError::Syntax { line, column, .. } => assert_eq!((line, column), (3, 10)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn graph_round_trip_over_corpus() {
        for g in corpus::all() {
            let text = write_graph(&g.embedding);
            assert_eq!(parse_graph(&text).unwrap(), g.embedding, "{}", g.name);
        }
    }

    #[test]
    fn tiling_round_trip() {
        let e = corpus::icosahedron();
        let t = crate::tiling::enumerate(&e, Mode::Rgb, Some(1)).remove(0);
        let text = write_tiling(&e, &t);
        assert_eq!(parse_tiling(&e, &text).unwrap(), t);
    }

    #[test]
    fn invalid_tiling_file_is_rejected() {
        let e = parse_graph(K4).unwrap();
        let text = "tiling v1 mode=single:green\ne 0 1 g\ne 0 2 k\ne 0 3 k\ne 1 2 k\ne 1 3 k\ne 2 3 k\n";
        assert!(matches!(parse_tiling(&e, text), Err(ParseError::Tiling(_))));
    }
}
