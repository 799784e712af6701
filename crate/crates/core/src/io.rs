//! Graph serialization: JSON (readable back), Graphviz DOT and an edge list.
//!
//! JSON layout: `{"family", "params", "ground", "vertices", "edges"}` with
//! vertices as sorted element lists in canonical order and edges as
//! `[u, v, label]` triples sorted by `(u, v)`.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{Color, FamilyId, LabelKind, LabeledGraph};
use crate::setcore::{Block, GroundSize};

/// Family name written for graphs that are not a whole family member. Labeled
/// ones append their color rule: `custom-odd`, `custom-bipartite`.
pub const CUSTOM_FAMILY: &str = "custom";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Edges,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            "edges" | "csv" => Ok(Format::Edges),
            other => Err(Error::Format(format!(
                "unknown format {other:?} (json, dot, edges)"
            ))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    family: String,
    params: Vec<usize>,
    ground: usize,
    vertices: Vec<Vec<usize>>,
    edges: Vec<(usize, usize, Option<Color>)>,
}

pub fn export(g: &LabeledGraph, format: Format) -> String {
    match format {
        Format::Json => to_json(g),
        Format::Dot => to_dot(g),
        Format::Edges => to_edge_list(g),
    }
}

pub fn to_json(g: &LabeledGraph) -> String {
    let (family, params) = match g.family() {
        Some(f) => (f.name().to_string(), f.params()),
        None => (custom_name(g.label_kind()), Vec::new()),
    };
    let doc = GraphDoc {
        family,
        params,
        ground: g.ground().get(),
        vertices: g.vertices().iter().map(|v| v.elements()).collect(),
        edges: g.edges().collect(),
    };
    let mut s = serde_json::to_string(&doc).expect("graph documents always serialize");
    s.push('\n');
    s
}

/// Reads a graph written by [`to_json`]. Edge labels must agree with the
/// family's color rule, or the rule named in a custom family string.
pub fn from_json(text: &str) -> Result<LabeledGraph> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let ground = GroundSize::new(doc.ground)?;
    let (family, custom_kind) = match doc.family.as_str() {
        CUSTOM_FAMILY => (None, None),
        name => match name.strip_prefix("custom-") {
            Some(rule) => (None, Some(parse_label_kind(rule)?)),
            None => (Some(FamilyId::from_name(name, &doc.params)?), None),
        },
    };
    if let Some(f) = family {
        if f.ground_size() != doc.ground {
            return Err(Error::Format(format!(
                "{f} lives on [{}], not [{}]",
                f.ground_size(),
                doc.ground
            )));
        }
    }
    let vertices = doc
        .vertices
        .iter()
        .map(|elems| Block::from_elements(ground, elems))
        .collect::<Result<Vec<_>>>()?;
    let sorted = vertices.windows(2).all(|w| w[0] < w[1]);
    if !sorted {
        return Err(Error::Format("vertices are not in canonical order".into()));
    }
    let pairs: Vec<(usize, usize)> = doc.edges.iter().map(|&(u, v, _)| (u, v)).collect();
    let label_kind = match family {
        Some(f) => f.label_kind(),
        None => custom_kind,
    };
    let g = LabeledGraph::from_parts(ground, vertices, &pairs, label_kind, family)?;
    for &(u, v, label) in &doc.edges {
        let stored = g.edge(u, v).and_then(|nb| nb.color);
        if stored != label {
            return Err(Error::Format(format!(
                "edge ({u},{v}) has label {label:?}, expected {stored:?}"
            )));
        }
    }
    Ok(g)
}

fn custom_name(kind: Option<LabelKind>) -> String {
    match kind {
        Some(k) => format!("{CUSTOM_FAMILY}-{}", k.name()),
        None => CUSTOM_FAMILY.to_string(),
    }
}

fn parse_label_kind(rule: &str) -> Result<LabelKind> {
    [LabelKind::Odd, LabelKind::Bipartite]
        .into_iter()
        .find(|k| k.name() == rule)
        .ok_or_else(|| Error::Format(format!("unknown color rule {rule:?}")))
}

/// Hyphen-joined element list, the DOT node name of a vertex.
pub fn node_name(v: Block) -> String {
    v.elements()
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join("-")
}

pub fn to_dot(g: &LabeledGraph) -> String {
    let title = g
        .family()
        .map_or_else(|| custom_name(g.label_kind()), |f| f.to_string());
    let mut out = format!("graph \"{title}\" {{\n");
    for &v in g.vertices() {
        let _ = writeln!(out, "  \"{}\";", node_name(v));
    }
    for (u, v, c) in g.edges() {
        let (a, b) = (node_name(g.vertex(u)), node_name(g.vertex(v)));
        match c {
            Some(c) => {
                let _ = writeln!(out, "  \"{a}\" -- \"{b}\" [label={c}];");
            }
            None => {
                let _ = writeln!(out, "  \"{a}\" -- \"{b}\";");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// `u,v,label` rows of vertex indices, label empty when uncolored.
pub fn to_edge_list(g: &LabeledGraph) -> String {
    let mut out = String::from("u,v,label\n");
    for (u, v, c) in g.edges() {
        let label = c.map(|c| c.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{u},{v},{label}");
    }
    out
}
