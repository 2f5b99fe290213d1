use std::fmt::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{DiGraph, GLabel, GraphError, NodeId, Ooldg};
use crate::term::Symbol;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyGraph {
    Labelled(Ooldg),
    Plain(DiGraph),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Json,
    Dot,
}

impl FromStr for GraphFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<GraphFormat, String> {
        match s {
            "json" => Ok(GraphFormat::Json),
            "dot" => Ok(GraphFormat::Dot),
            _ => Err(format!("unknown format `{s}` (expected json or dot)")),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
enum LabelJson {
    #[serde(rename = "sym")]
    Sym { name: Symbol },
    #[serde(rename = "t")]
    T,
    #[serde(rename = "f")]
    F,
    #[serde(rename = "c")]
    C,
    #[serde(rename = "g")]
    G,
    #[serde(rename = "z")]
    Z,
    #[serde(rename = "nat")]
    Nat { value: u32 },
}

impl From<&GLabel> for LabelJson {
    fn from(l: &GLabel) -> LabelJson {
        match l {
            GLabel::Sym(s) => LabelJson::Sym { name: s.clone() },
            GLabel::T => LabelJson::T,
            GLabel::F => LabelJson::F,
            GLabel::C => LabelJson::C,
            GLabel::Gmark => LabelJson::G,
            GLabel::Zmark => LabelJson::Z,
            GLabel::Nat(n) => LabelJson::Nat { value: *n },
        }
    }
}

impl From<LabelJson> for GLabel {
    fn from(l: LabelJson) -> GLabel {
        match l {
            LabelJson::Sym { name } => GLabel::Sym(name),
            LabelJson::T => GLabel::T,
            LabelJson::F => GLabel::F,
            LabelJson::C => GLabel::C,
            LabelJson::G => GLabel::Gmark,
            LabelJson::Z => GLabel::Zmark,
            LabelJson::Nat { value } => GLabel::Nat(value),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeJson {
    id: String,
    label: LabelJson,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeJson {
    src: String,
    dst: String,
    label: LabelJson,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OoldgJson {
    nodes: Vec<NodeJson>,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiGraphJson {
    nodes: Vec<String>,
    edges: Vec<(String, String)>,
}

fn node_name(id: NodeId) -> String {
    format!("n{id}")
}

fn node_id(s: &str) -> Result<NodeId, GraphError> {
    s.strip_prefix('n')
        .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| GraphError::BadNodeId(s.to_string()))
}

/// Parses either JSON graph format; the shape of the node list decides which.
pub fn parse_graph(text: &str) -> Result<AnyGraph, GraphError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
    let plain = value
        .get("nodes")
        .and_then(|n| n.as_array())
        .map_or(false, |n| n.iter().all(|v| v.is_string()));
    let has_nodes = value.get("nodes").and_then(|n| n.as_array()).map_or(false, |n| !n.is_empty());
    let edges_are_pairs = value
        .get("edges")
        .and_then(|e| e.as_array())
        .map_or(false, |e| !e.is_empty() && e.iter().all(|v| v.is_array()));
    if plain && (has_nodes || edges_are_pairs) {
        let j: DiGraphJson = serde_json::from_value(value).map_err(|e| GraphError::Json(e.to_string()))?;
        let edges: Vec<(&str, &str)> = j.edges.iter().map(|(s, d)| (s.as_str(), d.as_str())).collect();
        let nodes: Vec<&str> = j.nodes.iter().map(String::as_str).collect();
        return DiGraph::new(&nodes, &edges).map(AnyGraph::Plain);
    }
    let j: OoldgJson = serde_json::from_value(value).map_err(|e| GraphError::Json(e.to_string()))?;
    let mut g = Ooldg::new();
    for n in j.nodes {
        g.add_node(node_id(&n.id)?, n.label.into())?;
    }
    for e in j.edges {
        g.add_edge(node_id(&e.src)?, node_id(&e.dst)?, e.label.into())?;
    }
    Ok(AnyGraph::Labelled(g))
}

fn ooldg_json(g: &Ooldg) -> String {
    let j = OoldgJson {
        nodes: g.nodes().iter().map(|(&id, l)| NodeJson { id: node_name(id), label: l.into() }).collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeJson { src: node_name(e.src), dst: node_name(e.dst), label: (&e.label).into() })
            .collect(),
    };
    serde_json::to_string_pretty(&j).expect("serializable")
}

fn digraph_json(g: &DiGraph) -> String {
    let j = DiGraphJson {
        nodes: g.nodes().map(str::to_string).collect(),
        edges: g.edges().map(|(s, d)| (s.to_string(), d.to_string())).collect(),
    };
    serde_json::to_string_pretty(&j).expect("serializable")
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn ooldg_dot(g: &Ooldg) -> String {
    let mut out = String::from("digraph G {\n");
    for (&id, l) in g.nodes() {
        writeln!(out, "  n{id} [label=\"{}\"];", dot_escape(&l.to_string())).unwrap();
    }
    for e in g.edges() {
        writeln!(out, "  n{} -> n{} [label=\"{}\"];", e.src, e.dst, dot_escape(&e.label.to_string())).unwrap();
    }
    out.push_str("}\n");
    out
}

fn digraph_dot(g: &DiGraph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in g.nodes() {
        writeln!(out, "  \"{}\";", dot_escape(v)).unwrap();
    }
    for (s, d) in g.edges() {
        writeln!(out, "  \"{}\" -> \"{}\";", dot_escape(s), dot_escape(d)).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn emit_graph(g: &AnyGraph, format: GraphFormat) -> String {
    match (g, format) {
        (AnyGraph::Labelled(g), GraphFormat::Json) => ooldg_json(g),
        (AnyGraph::Labelled(g), GraphFormat::Dot) => ooldg_dot(g),
        (AnyGraph::Plain(g), GraphFormat::Json) => digraph_json(g),
        (AnyGraph::Plain(g), GraphFormat::Dot) => digraph_dot(g),
    }
}
