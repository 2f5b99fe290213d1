use std::collections::HashMap;

use super::{GLabel, GraphError, NodeId, Ooldg};
use crate::term::{Rule, Symbol, Term};
use crate::trs::Trs;

/// Which graph a TRS is encoded into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Encoding {
    Forest,
    /// Function symbols anchored, variable labels kept.
    F,
    /// Variables anchored, function labels kept.
    V,
    /// Both anchored.
    Full,
}

/// An encoded TRS together with its anchor nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoded {
    pub graph: Ooldg,
    pub func_anchors: Vec<(Symbol, NodeId)>,
    pub var_anchors: Vec<(Symbol, NodeId)>,
}

/// A fresh root over node-disjoint trees, with edges labelled 1..n.
pub fn join(root_label: GLabel, subtrees: Vec<Ooldg>) -> Result<Ooldg, GraphError> {
    let mut g = Ooldg::new();
    let mut roots = Vec::new();
    for t in subtrees {
        let r = t.roots();
        if r.len() != 1 || t.edge_count() + 1 != t.node_count() {
            return Err(GraphError::NotATree);
        }
        roots.push(r[0]);
        for (&id, l) in t.nodes() {
            g.add_node(id, l.clone())?;
        }
        for e in t.edges() {
            g.add_edge(e.src, e.dst, e.label.clone())?;
        }
    }
    let root = g.next_id();
    g.add_node(root, root_label)?;
    for (i, r) in roots.into_iter().enumerate() {
        g.add_edge(root, r, GLabel::Nat(i as u32 + 1))?;
    }
    Ok(g)
}

#[derive(Default)]
struct Builder {
    g: Ooldg,
    next: NodeId,
    func_nodes: Vec<(NodeId, Symbol)>,
    var_nodes: Vec<(NodeId, Symbol)>,
}

impl Builder {
    fn fresh(&mut self, label: GLabel) -> NodeId {
        let id = self.next;
        self.next += 1;
        self.g.add_node(id, label).expect("fresh id");
        id
    }

    fn term(&mut self, t: &Term) -> NodeId {
        match t {
            Term::Var(x) => {
                let id = self.fresh(GLabel::Sym(x.clone()));
                self.var_nodes.push((id, x.clone()));
                id
            }
            Term::App(f, args) => {
                let id = self.fresh(GLabel::Sym(f.clone()));
                self.func_nodes.push((id, f.clone()));
                for (i, a) in args.iter().enumerate() {
                    let c = self.term(a);
                    self.g.add_edge(id, c, GLabel::Nat(i as u32 + 1)).expect("tree edge");
                }
                id
            }
        }
    }

    fn rule(&mut self, r: &Rule) -> NodeId {
        let root = self.fresh(GLabel::T);
        let l = self.term(&r.lhs);
        let rr = self.term(&r.rhs);
        self.g.add_edge(root, l, GLabel::Nat(1)).expect("tree edge");
        self.g.add_edge(root, rr, GLabel::Nat(2)).expect("tree edge");
        root
    }

    fn anchor(
        &mut self,
        symbols: Vec<Symbol>,
        occurrences: &[(NodeId, Symbol)],
        anchor_label: GLabel,
        node_label: GLabel,
    ) -> Vec<(Symbol, NodeId)> {
        let anchors: Vec<(Symbol, NodeId)> =
            symbols.into_iter().map(|s| (s, self.fresh(anchor_label.clone()))).collect();
        let index: HashMap<&Symbol, NodeId> = anchors.iter().map(|(s, n)| (s, *n)).collect();
        for (node, s) in occurrences {
            let a = index[s];
            self.g.relabel(*node, node_label.clone());
            self.g.add_edge(*node, a, GLabel::Nat(0)).expect("anchor edge");
        }
        anchors
    }
}

/// Tree of a term, node ids 0.. in pre-order.
pub fn term_tree(t: &Term) -> Ooldg {
    let mut b = Builder::default();
    b.term(t);
    b.g
}

/// T-labelled root with the lhs under edge 1 and the rhs under edge 2.
pub fn rule_tree(r: &Rule) -> Ooldg {
    let mut b = Builder::default();
    b.rule(r);
    b.g
}

pub fn encode(trs: &Trs, encoding: Encoding) -> Encoded {
    let mut b = Builder::default();
    for r in trs.rules() {
        b.rule(r);
    }
    let func_nodes = std::mem::take(&mut b.func_nodes);
    let var_nodes = std::mem::take(&mut b.var_nodes);
    let funcs: Vec<Symbol> = trs.sig().symbols().cloned().collect();
    let vars: Vec<Symbol> = trs.vars().iter().cloned().collect();
    let (mut fa, mut va) = (Vec::new(), Vec::new());
    match encoding {
        Encoding::Forest => {}
        Encoding::F => fa = b.anchor(funcs, &func_nodes, GLabel::F, GLabel::Nat(0)),
        Encoding::V => va = b.anchor(vars, &var_nodes, GLabel::C, GLabel::Nat(0)),
        Encoding::Full => {
            fa = b.anchor(funcs, &func_nodes, GLabel::F, GLabel::Gmark);
            va = b.anchor(vars, &var_nodes, GLabel::C, GLabel::Zmark);
        }
    }
    debug_assert!(b.g.is_outgoing_ordered());
    Encoded { graph: b.g, func_anchors: fa, var_anchors: va }
}

pub fn trs_forest(trs: &Trs) -> Ooldg {
    encode(trs, Encoding::Forest).graph
}

pub fn graph_f(trs: &Trs) -> Ooldg {
    encode(trs, Encoding::F).graph
}

pub fn graph_v(trs: &Trs) -> Ooldg {
    encode(trs, Encoding::V).graph
}

pub fn graph_full(trs: &Trs) -> Ooldg {
    encode(trs, Encoding::Full).graph
}
