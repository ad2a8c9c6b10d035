//! Graph references, tiling files and the small argument grammars (edges, colors, modes).

use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use rgb_tiling::format;
use rgb_tiling::region::{region_of, RegionSpec};
use rgb_tiling::template::{self, Instance, TemplateName};
use rgb_tiling::{corpus, Color, EdgeId, Embedding, Mode, Tiling, Vertex};

/// A loaded graph with its vertex labels, when it came from a template.
pub struct Graph {
    pub name: String,
    pub embedding: Embedding,
    pub instance: Option<Instance>,
}

impl Graph {
    /// A label of the template instance, or a plain vertex number.
    pub fn vertex(&self, s: &str) -> Result<Vertex> {
        if let Some(v) = self.instance.as_ref().and_then(|i| i.labels.get(s)) {
            return Ok(*v);
        }
        let v: Vertex = s.parse().map_err(|_| anyhow!("unknown vertex `{s}`"))?;
        if v >= self.embedding.vertex_count() {
            bail!("vertex {v} out of range (graph has {})", self.embedding.vertex_count());
        }
        Ok(v)
    }

    pub fn vertices(&self, s: &str) -> Result<Vec<Vertex>> {
        s.split(',').filter(|p| !p.is_empty()).map(|p| self.vertex(p.trim())).collect()
    }

    /// `u-v` naming an existing edge.
    pub fn edge(&self, s: &str) -> Result<EdgeId> {
        let (u, v) = self.pair(s)?;
        self.embedding
            .edge_between(u, v)
            .ok_or_else(|| anyhow!("{u}-{v} is not an edge"))
    }

    pub fn edges(&self, s: &str) -> Result<Vec<EdgeId>> {
        s.split(',').filter(|p| !p.is_empty()).map(|p| self.edge(p.trim())).collect()
    }

    pub fn pair(&self, s: &str) -> Result<(Vertex, Vertex)> {
        let (a, b) = s.split_once('-').ok_or_else(|| anyhow!("expected `u-v`, found `{s}`"))?;
        Ok((self.vertex(a)?, self.vertex(b)?))
    }

    pub fn pairs(&self, s: &str) -> Result<Vec<(Vertex, Vertex)>> {
        s.split(',').filter(|p| !p.is_empty()).map(|p| self.pair(p.trim())).collect()
    }

    /// The region around `td`, or the template's own region when `td` is absent.
    pub fn region(&self, td: Option<&str>) -> Result<RegionSpec> {
        match (td, &self.instance) {
            (Some(td), _) => Ok(region_of(&self.embedding, &self.vertices(td)?)?),
            (None, Some(inst)) => Ok(inst.region()?),
            (None, None) => bail!("--td is required for graphs without a template"),
        }
    }
}

/// Built-in names accepted after `@`.
pub fn builtin_names() -> Vec<String> {
    let mut v: Vec<String> = corpus::all().iter().map(|g| g.name.to_string()).collect();
    for t in TemplateName::ALL {
        v.push(t.as_str().to_string());
        v.push(format!("{}:wheel", t.as_str()));
    }
    v
}

/// A file path, or `@name` for a corpus graph, `@Template` for a template host and
/// `@Template:wheel` for the template glued into a wheel cap.
pub fn load_graph(r: &str) -> Result<Graph> {
    if let Some(name) = r.strip_prefix('@') {
        let (base, cap) = match name.split_once(':') {
            Some((b, c)) => (b, Some(c)),
            None => (name, None),
        };
        if let Some(t) = TemplateName::parse(base) {
            let inst = match cap {
                None => template::host(t),
                Some("wheel") => {
                    let tpl = template::template(t);
                    let k = tpl.boundary().len();
                    template::instantiate(&tpl, &template::wheel_cap(k), 0, 0)?
                }
                Some(c) => bail!("unknown cap `{c}` (expected `wheel`)"),
            };
            return Ok(Graph {
                name: name.to_string(),
                embedding: inst.embedding.clone(),
                instance: Some(inst),
            });
        }
        if cap.is_none() {
            if let Some(g) = corpus::all().into_iter().find(|g| g.name == base) {
                return Ok(Graph {
                    name: name.to_string(),
                    embedding: g.embedding,
                    instance: None,
                });
            }
        }
        bail!("unknown built-in graph `@{name}`; known: {}", builtin_names().join(", "));
    }
    let text = fs::read_to_string(r).with_context(|| format!("reading {r}"))?;
    let embedding = format::parse_graph(&text).with_context(|| format!("parsing {r}"))?;
    Ok(Graph {
        name: r.to_string(),
        embedding,
        instance: None,
    })
}

pub fn load_tiling(g: &Graph, path: &str) -> Result<Tiling> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    format::parse_tiling(&g.embedding, &text).with_context(|| format!("parsing {path}"))
}

pub fn color(s: &str) -> Result<Color> {
    Color::from_name(s).ok_or_else(|| anyhow!("unknown color `{s}` (expected red, green or blue)"))
}

/// `rgb`, `partial`, `single:<color>` or a bare color for its single mode.
pub fn mode(s: &str) -> Result<Mode> {
    if let Some(m) = format::mode_from_str(s) {
        return Ok(m);
    }
    if let Some(c) = s.strip_prefix("single:").or(Some(s)).and_then(Color::from_name) {
        return Ok(Mode::Single(c));
    }
    bail!("unknown mode `{s}`")
}

/// Colors to examine: the requested one, the tiling's single color, or all three.
pub fn colors_for(t: &Tiling, requested: Option<&str>) -> Result<Vec<Color>> {
    match (requested, t.mode()) {
        (Some(c), _) => Ok(vec![color(c)?]),
        (None, Mode::Single(c)) => Ok(vec![c]),
        (None, _) => Ok(Color::ALL.to_vec()),
    }
}

/// The one color a command needs.
pub fn one_color(t: &Tiling, requested: Option<&str>) -> Result<Color> {
    match colors_for(t, requested)?.as_slice() {
        [c] => Ok(*c),
        _ => bail!("--color is required for {} tilings", format::mode_name(t.mode())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_and_colors() {
        assert_eq!(mode("rgb").unwrap(), Mode::Rgb);
        assert_eq!(mode("single:green").unwrap(), Mode::Single(Color::Green));
        assert_eq!(mode("b").unwrap(), Mode::Single(Color::Blue));
        assert!(mode("plaid").is_err());
        assert!(color("cyan").is_err());
    }

    #[test]
    fn labels_resolve_before_numbers() {
        let g = load_graph("@TD55").unwrap();
        let a = g.vertex("a").unwrap();
        assert_eq!(g.vertex(&a.to_string()).unwrap(), a);
        let x = g.edge("a-b").unwrap();
        assert_eq!(g.edges("b-a").unwrap(), vec![x]);
        assert!(g.edge("a-v4").is_err());
        assert!(g.vertex("99").is_err());
    }

    #[test]
    fn builtin_references() {
        assert!(load_graph("@icosahedron").unwrap().instance.is_none());
        assert!(load_graph("@Ptg:wheel").unwrap().instance.is_some());
        assert!(load_graph("@icosahedron:wheel").is_err());
        assert!(builtin_names().iter().any(|n| n == "annular"));
        let g = load_graph("@k4").unwrap();
        assert!(g.region(None).is_err());
    }
}
