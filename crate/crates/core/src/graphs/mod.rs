//! Outgoing-ordered labelled directed graphs and the TRS encodings.

mod digraph;
mod encode;
mod io;
mod solver;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::term::Symbol;

pub use digraph::{digraph_iso_bruteforce, graph_to_trs_funcs, graph_to_trs_vars, DiGraph, DIGRAPH_GUARD};
pub use encode::{encode, graph_f, graph_full, graph_v, join, rule_tree, term_tree, trs_forest, Encoded, Encoding};
pub use io::{emit_graph, parse_graph, AnyGraph, GraphFormat};
pub use solver::{strong_iso, strong_iso_bruteforce, STRONG_BRUTE_GUARD};
pub(crate) use solver::permutations;

pub type NodeId = usize;

/// Node and edge labels. The derived order (variant, then payload) is the
/// total order used by the solver.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GLabel {
    Sym(Symbol),
    T,
    F,
    C,
    Gmark,
    Zmark,
    Nat(u32),
}

impl fmt::Display for GLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GLabel::Sym(s) => write!(f, "{s}"),
            GLabel::T => f.write_str("T"),
            GLabel::F => f.write_str("F"),
            GLabel::C => f.write_str("C"),
            GLabel::Gmark => f.write_str("g"),
            GLabel::Zmark => f.write_str("z"),
            GLabel::Nat(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub src: NodeId,
    pub label: GLabel,
    pub dst: NodeId,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("node id {0} is used twice")]
    NodeCollision(NodeId),
    #[error("edge endpoint {0} does not exist")]
    MissingNode(NodeId),
    #[error("node {src} has two outgoing edges labelled {label}")]
    OutgoingOrder { src: NodeId, label: GLabel },
    #[error("subgraph is not a tree with a unique root")]
    NotATree,
    #[error("vertex `{0}` is isolated")]
    IsolatedVertex(String),
    #[error("vertex name `{0}` cannot be used in a symbol name")]
    InvalidName(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("graph has {nodes} nodes, the limit is {limit}")]
    SizeGuard { nodes: usize, limit: usize },
    #[error("bad node id `{0}` (expected n<number>)")]
    BadNodeId(String),
    #[error("invalid graph JSON: {0}")]
    Json(String),
}

/// Outgoing-ordered labelled directed graph: at most one outgoing edge
/// per (source, label).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ooldg {
    nodes: BTreeMap<NodeId, GLabel>,
    edges: BTreeSet<Edge>,
}

impl Ooldg {
    pub fn new() -> Ooldg {
        Ooldg::default()
    }

    pub fn from_parts(
        nodes: impl IntoIterator<Item = (NodeId, GLabel)>,
        edges: impl IntoIterator<Item = (NodeId, NodeId, GLabel)>,
    ) -> Result<Ooldg, GraphError> {
        let mut g = Ooldg::new();
        for (id, l) in nodes {
            g.add_node(id, l)?;
        }
        for (s, d, l) in edges {
            g.add_edge(s, d, l)?;
        }
        Ok(g)
    }

    pub fn add_node(&mut self, id: NodeId, label: GLabel) -> Result<(), GraphError> {
        if self.nodes.contains_key(&id) {
            return Err(GraphError::NodeCollision(id));
        }
        self.nodes.insert(id, label);
        Ok(())
    }

    pub fn add_edge(&mut self, src: NodeId, dst: NodeId, label: GLabel) -> Result<(), GraphError> {
        for n in [src, dst] {
            if !self.nodes.contains_key(&n) {
                return Err(GraphError::MissingNode(n));
            }
        }
        if self.out_edge(src, &label).is_some() {
            return Err(GraphError::OutgoingOrder { src, label });
        }
        self.edges.insert(Edge { src, label, dst });
        Ok(())
    }

    pub(crate) fn relabel(&mut self, id: NodeId, label: GLabel) {
        *self.nodes.get_mut(&id).expect("existing node") = label;
    }

    /// The target of the edge leaving `src` with `label`, if any.
    pub fn out_edge(&self, src: NodeId, label: &GLabel) -> Option<NodeId> {
        let lo = Edge { src, label: label.clone(), dst: 0 };
        self.edges
            .range(lo..)
            .next()
            .filter(|e| e.src == src && &e.label == label)
            .map(|e| e.dst)
    }

    pub fn nodes(&self) -> &BTreeMap<NodeId, GLabel> {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn label(&self, id: NodeId) -> Option<&GLabel> {
        self.nodes.get(&id)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn count_label(&self, l: &GLabel) -> usize {
        self.nodes.values().filter(|x| *x == l).count()
    }

    /// Nodes without incoming edges.
    pub fn roots(&self) -> Vec<NodeId> {
        let targets: BTreeSet<NodeId> = self.edges.iter().map(|e| e.dst).collect();
        self.nodes.keys().filter(|n| !targets.contains(n)).copied().collect()
    }

    /// Smallest id above every node id.
    pub fn next_id(&self) -> NodeId {
        self.nodes.keys().next_back().map_or(0, |m| m + 1)
    }

    /// Checks the outgoing-order property from scratch.
    pub fn is_outgoing_ordered(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| seen.insert((e.src, e.label.clone())))
    }
}
