//! Configuration templates and their host graphs.
//!
//! A template is a fragment semi-MPG whose single outer facet is the boundary
//! to glue along. Gluing identifies that boundary with a non-triangle face of a
//! host, reversing orientation so that the fragment fills the face.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::CorpusGraph;
use crate::embedding::{Embedding, EmbeddingError, Vertex};
use crate::format;
use crate::region::{self, RegionSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TemplateName {
    Ptg,
    TD55,
    TD5cubed,
    TD5fourth,
    HatTD,
    M1,
    M2,
}

impl TemplateName {
    pub const ALL: [TemplateName; 7] = [
        TemplateName::Ptg,
        TemplateName::TD55,
        TemplateName::TD5cubed,
        TemplateName::TD5fourth,
        TemplateName::HatTD,
        TemplateName::M1,
        TemplateName::M2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TemplateName::Ptg => "Ptg",
            TemplateName::TD55 => "TD55",
            TemplateName::TD5cubed => "TD5cubed",
            TemplateName::TD5fourth => "TD5fourth",
            TemplateName::HatTD => "HatTD",
            TemplateName::M1 => "M1",
            TemplateName::M2 => "M2",
        }
    }

    pub fn parse(s: &str) -> Option<TemplateName> {
        TemplateName::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("site {0} is not a non-triangle face of the host")]
    NoSuchSite(usize),
    #[error("template boundary has {template} vertices, site has {site}")]
    LengthMismatch { template: usize, site: usize },
    #[error("degree requirement for {label} is {required}, achieved {achieved}")]
    Degree {
        label: &'static str,
        required: usize,
        achieved: usize,
    },
    #[error("glued graph is invalid: {0}")]
    Invalid(#[from] EmbeddingError),
    #[error("region of the template is invalid: {0}")]
    Region(#[from] region::RegionError),
}

#[derive(Clone, Debug)]
pub struct Template {
    pub name: TemplateName,
    pub fragment: Embedding,
    /// Vertex labels of the fragment, by fragment vertex id.
    pub labels: &'static [&'static str],
    pub td: &'static [&'static str],
    pub omega: &'static [&'static str],
    pub requirements: &'static [(&'static str, usize)],
}

impl Template {
    pub fn vertex(&self, label: &str) -> Vertex {
        self.labels
            .iter()
            .position(|&l| l == label)
            .expect("known template label")
    }

    pub fn boundary(&self) -> &[Vertex] {
        &self.fragment.outer_facets()[0]
    }
}

const TD55_LABELS: &[&str] = &["a", "b", "d", "v1", "v2", "c", "v4", "v5"];
const TD55_OMEGA: &[&str] = &["d", "v1", "v2", "c", "v4", "v5"];
const AB: &[&str] = &["a", "b"];
const AB5: &[(&str, usize)] = &[("a", 5), ("b", 5)];
const CUBED_LABELS: &[&str] = &["a", "b", "c", "d", "v1", "v2", "v3", "v4", "v5"];
const CUBED_OMEGA: &[&str] = &["d", "v1", "v2", "v3", "v4", "v5"];
const ABC: &[&str] = &["a", "b", "c"];

pub fn template(name: TemplateName) -> Template {
    let (text, labels, td, omega, requirements): (
        &str,
        &'static [&'static str],
        &'static [&'static str],
        &'static [&'static str],
        &'static [(&'static str, usize)],
    ) = match name {
        TemplateName::Ptg => (
            include_str!("../templates/ptg.graph"),
            &["v", "v1", "v2", "v3", "v4", "v5"],
            &["v"],
            &["v1", "v2", "v3", "v4", "v5"],
            &[("v", 5)],
        ),
        TemplateName::TD55 => (include_str!("../templates/td55.graph"), TD55_LABELS, AB, TD55_OMEGA, AB5),
        TemplateName::M1 => (include_str!("../templates/m1.graph"), TD55_LABELS, AB, TD55_OMEGA, AB5),
        TemplateName::M2 => (include_str!("../templates/m2.graph"), TD55_LABELS, AB, TD55_OMEGA, AB5),
        TemplateName::TD5cubed => (
            include_str!("../templates/td5cubed.graph"),
            CUBED_LABELS,
            ABC,
            CUBED_OMEGA,
            &[("a", 5), ("b", 5), ("c", 5)],
        ),
        TemplateName::TD5fourth => (
            include_str!("../templates/td5fourth.graph"),
            &["a", "b", "c", "d", "v1", "v2", "v3", "v4", "v5", "v6"],
            &["a", "b", "c", "d"],
            &["v1", "v2", "v3", "v4", "v5", "v6"],
            &[("a", 5), ("b", 5), ("c", 5), ("d", 5)],
        ),
        TemplateName::HatTD => (
            include_str!("../templates/hat.graph"),
            &[
                "a", "b", "c", "d", "v1", "v2", "v3", "v4", "v5", "u1", "u2", "u3", "u4", "u5", "u6",
            ],
            ABC,
            CUBED_OMEGA,
            &[
                ("a", 5),
                ("b", 5),
                ("c", 5),
                ("d", 6),
                ("v1", 5),
                ("v2", 6),
                ("v3", 5),
                ("v4", 6),
                ("v5", 5),
            ],
        ),
    };
    Template {
        name,
        fragment: format::parse_graph(text).expect("shipped template parses"),
        labels,
        td,
        omega,
        requirements,
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub template: TemplateName,
    pub embedding: Embedding,
    /// Template label to vertex of the glued graph.
    pub labels: BTreeMap<String, Vertex>,
    pub degrees: Vec<(&'static str, usize)>,
}

impl Instance {
    pub fn vertex(&self, label: &str) -> Vertex {
        self.labels[label]
    }

    pub fn td(&self) -> Vec<Vertex> {
        template(self.template).td.iter().map(|l| self.labels[*l]).collect()
    }

    /// The region of the template with Ω starting at its first labeled vertex.
    pub fn region(&self) -> Result<RegionSpec, region::RegionError> {
        let t = template(self.template);
        let r = region::region_of(&self.embedding, &self.td())?;
        let start = self.labels[t.omega[0]];
        let mut r = r.rotated_to(start).expect("Ω contains its first label");
        if r.omega[1] != self.labels[t.omega[1]] {
            // orientation follows the embedding; relabel if the template reads the other way
            r.omega[1..].reverse();
            let k = r.omega.len();
            r.omega_edges = (0..k)
                .map(|i| {
                    self.embedding
                        .edge_between(r.omega[i], r.omega[(i + 1) % k])
                        .expect("Ω edge")
                })
                .collect();
        }
        Ok(r)
    }
}

/// Glues the template into the `site`-th non-triangle face of `host`, boundary
/// vertex 0 of the fragment landing on position `offset` of that face.
pub fn instantiate(
    t: &Template,
    host: &Embedding,
    site: usize,
    offset: usize,
) -> Result<Instance, TemplateError> {
    let holes: Vec<&Vec<Vertex>> = host
        .faces()
        .iter()
        .filter(|f| !f.is_triangle())
        .map(|f| &f.vertices)
        .collect();
    let hole = *holes.get(site).ok_or(TemplateError::NoSuchSite(site))?;
    let bd = t.boundary().to_vec();
    let k = bd.len();
    if hole.len() != k {
        return Err(TemplateError::LengthMismatch {
            template: k,
            site: hole.len(),
        });
    }
    let hn = host.vertex_count();
    let mut map = vec![usize::MAX; t.fragment.vertex_count()];
    for (j, &b) in bd.iter().enumerate() {
        map[b] = hole[(offset + k - j) % k];
    }
    let mut next = hn;
    for m in map.iter_mut() {
        if *m == usize::MAX {
            *m = next;
            next += 1;
        }
    }
    let mut faces: Vec<Vec<Vertex>> = Vec::new();
    let mut outer = Vec::new();
    for f in host.faces() {
        if core::ptr::eq(&f.vertices, hole) {
            continue;
        }
        if !f.is_triangle() {
            outer.push(faces.len());
        }
        faces.push(f.vertices.clone());
    }
    for f in t.fragment.faces() {
        if f.is_triangle() {
            faces.push(f.vertices.iter().map(|&v| map[v]).collect());
        }
    }
    let embedding = Embedding::from_faces(next, &faces, &outer)?;
    let labels: BTreeMap<String, Vertex> = t
        .labels
        .iter()
        .enumerate()
        .map(|(i, &l)| (l.to_owned(), map[i]))
        .collect();
    let mut degrees = Vec::new();
    for &(label, required) in t.requirements {
        let achieved = embedding.degree(labels[label]);
        if achieved != required {
            return Err(TemplateError::Degree {
                label,
                required,
                achieved,
            });
        }
        degrees.push((label, achieved));
    }
    Ok(Instance {
        template: t.name,
        embedding,
        labels,
        degrees,
    })
}

/// A wheel missing its outer side: hub `0` and rim `1..=k`, with the rim as the
/// single outer facet.
pub fn wheel_cap(k: usize) -> Embedding {
    let mut faces: Vec<Vec<Vertex>> = (0..k).map(|i| vec![1 + i, 1 + (i + 1) % k, 0]).collect();
    faces.push((1..=k).rev().collect());
    Embedding::from_faces(k + 1, &faces, &[k]).expect("wheel cap")
}

/// An antiprism band around a hub: rim `1..=k` (the outer facet), inner ring
/// `k+1..=2k`, hub `0`. Rim vertices gain two neighbours, ring vertices have degree 5.
pub fn band_cap(k: usize) -> Embedding {
    let w = |i: usize| 1 + i % k;
    let u = |i: usize| 1 + k + i % k;
    let mut faces = Vec::new();
    for i in 0..k {
        faces.push(vec![w(i), w(i + 1), u(i)]);
        faces.push(vec![u(i), w(i + 1), u(i + 1)]);
        faces.push(vec![u(i), u(i + 1), 0]);
    }
    faces.push((1..=k).rev().collect());
    Embedding::from_faces(2 * k + 1, &faces, &[3 * k]).expect("band cap")
}

/// Host MPG for a template: the template glued into its standard cap.
pub fn host(name: TemplateName) -> Instance {
    let t = template(name);
    match name {
        TemplateName::TD55 | TemplateName::M1 | TemplateName::M2 => {
            instantiate(&t, &band_cap(6), 0, 0).expect("TD55 host")
        }
        TemplateName::Ptg => instantiate(&t, &crate::corpus::icosahedron_minus_vertex(), 0, 0)
            .expect("Ptg host"),
        _ => {
            let k = t.boundary().len();
            instantiate(&t, &wheel_cap(k), 0, 0).expect("wheel host")
        }
    }
}

pub fn hosts() -> Vec<CorpusGraph> {
    [
        ("td55-host", TemplateName::TD55),
        ("m1-host", TemplateName::M1),
        ("m2-host", TemplateName::M2),
        ("td5cubed-host", TemplateName::TD5cubed),
        ("td5fourth-host", TemplateName::TD5fourth),
        ("hat-host", TemplateName::HatTD),
    ]
    .into_iter()
    .map(|(n, t)| CorpusGraph {
        name: n,
        embedding: host(t).embedding,
    })
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring;

    #[test]
    fn templates_parse_with_one_boundary() {
        for name in TemplateName::ALL {
            let t = template(name);
            assert_eq!(t.fragment.outer_facets().len(), 1, "{name:?}");
            assert_eq!(t.labels.len(), t.fragment.vertex_count(), "{name:?}");
            let bd: Vec<&str> = t.boundary().iter().map(|&v| t.labels[v]).collect();
            if name != TemplateName::HatTD {
                assert_eq!(bd, t.omega, "{name:?}");
            }
        }
    }

    #[test]
    fn hosts_are_four_colorable_mpgs() {
        for name in TemplateName::ALL {
            let h = host(name);
            assert!(h.embedding.is_mpg(), "{name:?}");
            assert!(coloring::find(&h.embedding).is_some(), "{name:?}");
        }
    }

    #[test]
    fn td55_host_region_is_the_hexagon() {
        let h = host(TemplateName::TD55);
        assert_eq!(h.embedding.vertex_count(), 15);
        assert!((0..15).all(|v| h.embedding.degree(v) >= 5));
        let r = h.region().unwrap();
        let names: Vec<Vertex> = TD55_OMEGA.iter().map(|l| h.vertex(l)).collect();
        assert_eq!(r.omega, names);
    }

    #[test]
    fn hat_degrees() {
        let h = host(TemplateName::HatTD);
        let d: BTreeMap<&str, usize> = h.degrees.iter().copied().collect();
        assert_eq!(d["d"], 6);
        assert_eq!(d["v2"], 6);
        assert_eq!(d["v4"], 6);
        assert_eq!(d["v1"], 5);
        assert_eq!(d["v3"], 5);
        assert_eq!(d["v5"], 5);
    }

    #[test]
    fn ptg_into_icosahedron_gives_icosahedron_shape() {
        let h = host(TemplateName::Ptg);
        assert_eq!(h.embedding.vertex_count(), 12);
        assert!((0..12).all(|v| h.embedding.degree(v) == 5));
    }

    #[test]
    fn length_mismatch_is_reported() {
        let t = template(TemplateName::Ptg);
        assert_eq!(
            instantiate(&t, &wheel_cap(6), 0, 0).unwrap_err(),
            TemplateError::LengthMismatch { template: 5, site: 6 }
        );
    }

    #[test]
    fn degree_requirement_violation_is_reported() {
        // 5^3 in a bare wheel cap leaves v1 at degree 4
        let t = template(TemplateName::HatTD);
        let mut bad = t.clone();
        bad.requirements = &[("u1", 7)];
        assert!(matches!(
            instantiate(&bad, &wheel_cap(6), 0, 0),
            Err(TemplateError::Degree { label: "u1", .. })
        ));
    }
}
