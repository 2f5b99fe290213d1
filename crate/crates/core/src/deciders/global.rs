use std::collections::{BTreeMap, HashMap};

use super::{complete_fmap, complete_vmap, symbol_sets_compatible, verify_witness, DecideError, Decision, GlobalKind, Relation, Verdict, Witness};
use crate::graphs::{encode, strong_iso, Encoding, NodeId, Ooldg};
use crate::iso::TermIso;
use crate::term::Symbol;
use crate::trs::Trs;

fn in_degrees(g: &Ooldg) -> HashMap<NodeId, usize> {
    let mut d = HashMap::new();
    for e in g.edges() {
        *d.entry(e.dst).or_insert(0) += 1;
    }
    d
}

/// Reads the symbol correspondence off the anchors of occurring symbols.
fn read_anchors(
    a: &[(Symbol, NodeId)],
    b: &[(Symbol, NodeId)],
    node_map: &BTreeMap<NodeId, NodeId>,
    indeg: &HashMap<NodeId, usize>,
) -> BTreeMap<Symbol, Symbol> {
    let b_by_node: HashMap<NodeId, &Symbol> = b.iter().map(|(s, n)| (*n, s)).collect();
    a.iter()
        .filter(|(_, n)| indeg.get(n).copied().unwrap_or(0) > 0)
        .map(|(s, n)| (s.clone(), b_by_node[&node_map[n]].clone()))
        .collect()
}

/// Global relations through strong isomorphism of the graph encodings.
pub fn decide_global(a: &Trs, b: &Trs, kind: GlobalKind) -> Result<Decision, DecideError> {
    let r = Relation::from(kind);
    let mut trail = Vec::new();
    if a.rules().len() != b.rules().len() {
        return Ok(Decision::not_iso(r, trail, "rule counts differ"));
    }
    if let Err(why) = symbol_sets_compatible(a, b, r) {
        return Ok(Decision::not_iso(r, trail, why));
    }
    let encoding = match kind {
        GlobalKind::Ge => Encoding::Full,
        GlobalKind::Gve => Encoding::V,
        GlobalKind::Gfe => Encoding::F,
    };
    let ea = encode(a, encoding);
    let eb = encode(b, encoding);
    trail.push(format!("encoded as graphs with {} nodes", ea.graph.node_count()));
    let Some(node_map) = strong_iso(&ea.graph, &eb.graph) else {
        return Ok(Decision::not_iso(r, trail, "encodings are not strongly isomorphic"));
    };
    let indeg = in_degrees(&ea.graph);
    let fmap = match kind {
        GlobalKind::Gve => TermIso::identity_on(a).fmap,
        _ => complete_fmap(read_anchors(&ea.func_anchors, &eb.func_anchors, &node_map, &indeg), a.sig(), b.sig()),
    };
    let vmap = match kind {
        GlobalKind::Gfe => TermIso::identity_on(a).vmap,
        _ => complete_vmap(read_anchors(&ea.var_anchors, &eb.var_anchors, &node_map, &indeg), a.vars(), b.vars()),
    };
    let witness = Witness::Global(TermIso::new(fmap, vmap));
    if !verify_witness(a, b, r, &witness)? {
        return Err(DecideError::WitnessRejected(format!("{r} renaming")));
    }
    trail.push("renaming read off the anchor correspondence".into());
    Ok(Decision { relation: r, verdict: Verdict::Iso, witness: Some(witness), trail })
}
