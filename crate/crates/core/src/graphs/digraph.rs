use indexmap::IndexSet;

use super::solver::permutations;
use super::GraphError;
use crate::term::{Rule, Symbol, Term};
use crate::trs::{Signature, Trs, TrsMode, VarSet};

/// Node limit for [`digraph_iso_bruteforce`].
pub const DIGRAPH_GUARD: usize = 8;

/// Unlabelled directed graph with named vertices. Edge order is kept and
/// determines rule order in the TRS encodings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiGraph {
    nodes: IndexSet<String>,
    edges: IndexSet<(usize, usize)>,
}

impl DiGraph {
    pub fn new<S: AsRef<str>>(nodes: &[S], edges: &[(S, S)]) -> Result<DiGraph, GraphError> {
        let mut g = DiGraph::default();
        for n in nodes {
            if !g.nodes.insert(n.as_ref().to_string()) {
                return Err(GraphError::DuplicateVertex(n.as_ref().to_string()));
            }
        }
        for (s, d) in edges {
            let idx = |v: &S| {
                g.nodes
                    .get_index_of(v.as_ref())
                    .ok_or_else(|| GraphError::UnknownVertex(v.as_ref().to_string()))
            };
            let e = (idx(s)?, idx(d)?);
            g.edges.insert(e);
        }
        Ok(g)
    }

    /// Builds from vertex count and index pairs; vertices are named 1..=n.
    pub fn from_indices(n: usize, edges: &[(usize, usize)]) -> DiGraph {
        DiGraph {
            nodes: (1..=n).map(|i| i.to_string()).collect(),
            edges: edges.iter().copied().filter(|&(s, d)| s < n && d < n).collect(),
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = &str> + '_ {
        self.nodes.iter().map(String::as_str)
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges.iter().map(|&(s, d)| (self.nodes[s].as_str(), self.nodes[d].as_str()))
    }

    pub fn edge_indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// First vertex without incoming or outgoing edges.
    pub fn isolated_vertex(&self) -> Option<&str> {
        (0..self.nodes.len())
            .find(|&v| !self.edges.iter().any(|&(s, d)| s == v || d == v))
            .map(|v| self.nodes[v].as_str())
    }

    fn check_encodable(&self) -> Result<(), GraphError> {
        if let Some(v) = self.isolated_vertex() {
            return Err(GraphError::IsolatedVertex(v.to_string()));
        }
        for v in &self.nodes {
            if v.is_empty() || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
                return Err(GraphError::InvalidName(v.clone()));
            }
        }
        Ok(())
    }
}

fn named(prefix: &str, v: &str) -> Symbol {
    Symbol::from_static(&format!("{prefix}_{v}"))
}

/// One unary symbol `f_v` per vertex and one rule `f_v(f_w(x)) -> c` per edge.
pub fn graph_to_trs_funcs(g: &DiGraph) -> Result<Trs, GraphError> {
    g.check_encodable()?;
    let mut sig = Signature::new();
    for v in g.nodes() {
        sig.declare(named("f", v), 1).map_err(|_| GraphError::DuplicateVertex(v.to_string()))?;
    }
    let c = Symbol::from_static("c");
    sig.declare(c.clone(), 0).map_err(|_| GraphError::InvalidName("c".into()))?;
    let x = Symbol::from_static("x");
    let vars: VarSet = [x.clone()].into_iter().collect();
    let rules = g
        .edges()
        .map(|(s, d)| {
            let inner = Term::App(named("f", d), vec![Term::Var(x.clone())]);
            Rule::new(Term::App(named("f", s), vec![inner]), Term::App(c.clone(), vec![]))
        })
        .collect();
    Trs::new(sig, vars, rules, TrsMode::Strict).map_err(|e| GraphError::InvalidName(e.to_string()))
}

/// One variable `x_v` per vertex and one rule `f(x_v,x_w) -> c` per edge.
pub fn graph_to_trs_vars(g: &DiGraph) -> Result<Trs, GraphError> {
    g.check_encodable()?;
    let f = Symbol::from_static("f");
    let c = Symbol::from_static("c");
    let sig = Signature::from_pairs([(f.clone(), 2), (c.clone(), 0)]).expect("distinct");
    let vars: VarSet = g.nodes().map(|v| named("x", v)).collect();
    let rules = g
        .edges()
        .map(|(s, d)| {
            let lhs = Term::App(f.clone(), vec![Term::Var(named("x", s)), Term::Var(named("x", d))]);
            Rule::new(lhs, Term::App(c.clone(), vec![]))
        })
        .collect();
    Trs::new(sig, vars, rules, TrsMode::Strict).map_err(|e| GraphError::InvalidName(e.to_string()))
}

/// Exhaustive isomorphism test for small digraphs; a test oracle.
pub fn digraph_iso_bruteforce(a: &DiGraph, b: &DiGraph) -> Result<bool, GraphError> {
    let n = a.node_count().max(b.node_count());
    if n > DIGRAPH_GUARD {
        return Err(GraphError::SizeGuard { nodes: n, limit: DIGRAPH_GUARD });
    }
    if a.node_count() != b.node_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(permutations(a.node_count(), &mut |p| {
        a.edges.iter().all(|&(s, d)| b.edges.contains(&(p[s], p[d])))
    }))
}
