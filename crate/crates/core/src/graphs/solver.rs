//! Strong isomorphism of OOLDGs by colour refinement with
//! individualization and backtracking.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::{GLabel, GraphError, NodeId, Ooldg};

/// Node limit for [`strong_iso_bruteforce`].
pub const STRONG_BRUTE_GUARD: usize = 8;

type Color = u32;
type Signature = (Color, Vec<(Color, Color)>, Vec<(Color, Color)>);

/// Both graphs laid out over one index space: nodes of `a` are 0..n,
/// nodes of `b` are n..2n.
struct Joint {
    n: usize,
    ids: Vec<NodeId>,
    init: Vec<Color>,
    out: Vec<Vec<(Color, usize)>>,
    inc: Vec<Vec<(Color, usize)>>,
    b_edges: HashSet<(usize, Color, usize)>,
    a_edges: Vec<(usize, Color, usize)>,
}

impl Joint {
    fn new(a: &Ooldg, b: &Ooldg) -> Joint {
        let labels: BTreeSet<&GLabel> = a
            .nodes()
            .values()
            .chain(b.nodes().values())
            .chain(a.edges().iter().map(|e| &e.label))
            .chain(b.edges().iter().map(|e| &e.label))
            .collect();
        let code: BTreeMap<&GLabel, Color> = labels.into_iter().zip(0..).collect();
        let n = a.node_count();
        let mut ids = Vec::with_capacity(2 * n);
        let mut index = BTreeMap::new();
        for (side, g) in [a, b].into_iter().enumerate() {
            for &id in g.nodes().keys() {
                index.insert((side, id), ids.len());
                ids.push(id);
            }
        }
        let mut init = Vec::with_capacity(2 * n);
        for g in [a, b] {
            init.extend(g.nodes().values().map(|l| code[l]));
        }
        let mut out = vec![Vec::new(); 2 * n];
        let mut inc = vec![Vec::new(); 2 * n];
        let mut a_edges = Vec::new();
        let mut b_edges = HashSet::new();
        for (side, g) in [a, b].into_iter().enumerate() {
            for e in g.edges() {
                let (s, d, l) = (index[&(side, e.src)], index[&(side, e.dst)], code[&e.label]);
                out[s].push((l, d));
                inc[d].push((l, s));
                if side == 0 {
                    a_edges.push((s, l, d));
                } else {
                    b_edges.insert((s, l, d));
                }
            }
        }
        Joint { n, ids, init, out, inc, b_edges, a_edges }
    }

    /// Refines to the coarsest stable colouring. Colours are renumbered by
    /// sorted signature so both graphs share one palette. Returns false as
    /// soon as the two halves disagree on some class size.
    fn refine(&self, colors: &mut Vec<Color>) -> bool {
        let mut classes = count_classes(colors);
        loop {
            if !self.balanced(colors) {
                return false;
            }
            let sigs: Vec<Signature> = (0..2 * self.n)
                .map(|v| {
                    let mut o: Vec<(Color, Color)> = self.out[v].iter().map(|&(l, w)| (l, colors[w])).collect();
                    let mut i: Vec<(Color, Color)> = self.inc[v].iter().map(|&(l, w)| (l, colors[w])).collect();
                    o.sort_unstable();
                    i.sort_unstable();
                    (colors[v], o, i)
                })
                .collect();
            let palette: BTreeMap<&Signature, Color> = sigs
                .iter()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .zip(0..)
                .collect();
            let next: Vec<Color> = sigs.iter().map(|s| palette[s]).collect();
            let next_classes = palette.len();
            *colors = next;
            if next_classes == classes {
                return self.balanced(colors);
            }
            classes = next_classes;
        }
    }

    fn balanced(&self, colors: &[Color]) -> bool {
        let mut count: BTreeMap<Color, isize> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            *count.entry(c).or_insert(0) += if v < self.n { 1 } else { -1 };
        }
        count.values().all(|&k| k == 0)
    }

    fn verify(&self, map: &[usize]) -> bool {
        (0..self.n).all(|v| self.init[v] == self.init[map[v]])
            && self.a_edges.iter().all(|&(s, l, d)| self.b_edges.contains(&(map[s], l, map[d])))
    }

    fn search(&self, mut colors: Vec<Color>) -> Option<Vec<usize>> {
        if !self.refine(&mut colors) {
            return None;
        }
        let mut cells: BTreeMap<Color, Vec<usize>> = BTreeMap::new();
        for v in 0..self.n {
            cells.entry(colors[v]).or_default().push(v);
        }
        let target = cells
            .iter()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(&col, c)| (c.len(), col))
            .map(|(&col, c)| (col, c[0]));
        let Some((col, v)) = target else {
            let mut by_color = BTreeMap::new();
            for w in self.n..2 * self.n {
                by_color.insert(colors[w], w);
            }
            let map: Vec<usize> = (0..self.n).map(|v| by_color[&colors[v]]).collect();
            return self.verify(&map).then_some(map);
        };
        let fresh = colors.iter().max().copied().unwrap_or(0) + 1;
        for w in (self.n..2 * self.n).filter(|&w| colors[w] == col) {
            let mut c = colors.clone();
            c[v] = fresh;
            c[w] = fresh;
            if let Some(m) = self.search(c) {
                return Some(m);
            }
        }
        None
    }
}

fn count_classes(colors: &[Color]) -> usize {
    colors.iter().collect::<BTreeSet<_>>().len()
}

/// A node bijection `a → b` preserving node labels and labelled edges
/// exactly, or `None`.
pub fn strong_iso(a: &Ooldg, b: &Ooldg) -> Option<BTreeMap<NodeId, NodeId>> {
    if a.node_count() != b.node_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    let joint = Joint::new(a, b);
    let map = joint.search(joint.init.clone())?;
    Some(map.iter().enumerate().map(|(v, &w)| (joint.ids[v], joint.ids[w])).collect())
}

/// Exhaustive enumeration of node bijections; a test oracle.
pub fn strong_iso_bruteforce(a: &Ooldg, b: &Ooldg) -> Result<bool, GraphError> {
    let n = a.node_count().max(b.node_count());
    if n > STRONG_BRUTE_GUARD {
        return Err(GraphError::SizeGuard { nodes: n, limit: STRONG_BRUTE_GUARD });
    }
    if a.node_count() != b.node_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let an: Vec<NodeId> = a.nodes().keys().copied().collect();
    let bn: Vec<NodeId> = b.nodes().keys().copied().collect();
    let mut found = false;
    permutations(an.len(), &mut |perm| {
        let m: BTreeMap<NodeId, NodeId> = an.iter().zip(perm).map(|(&x, &i)| (x, bn[i])).collect();
        let ok = an.iter().all(|x| a.label(*x) == b.label(m[x]))
            && a.edges().iter().all(|e| b.out_edge(m[&e.src], &e.label) == Some(m[&e.dst]));
        found |= ok;
        found
    });
    Ok(found)
}

/// Calls `f` on every permutation of 0..n until it returns true.
pub(crate) fn permutations(n: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn go(k: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if k == used.len() {
            return f(perm);
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                perm.push(i);
                if go(k + 1, perm, used, f) {
                    return true;
                }
                perm.pop();
                used[i] = false;
            }
        }
        false
    }
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    go(0, &mut perm, &mut used, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{graph_f, graph_full, graph_v};
    use crate::syntax::parse_trs;
    use crate::term::Symbol;
    use crate::trs::TrsMode;

    fn sym(s: &str) -> GLabel {
        GLabel::Sym(Symbol::from_static(s))
    }

    fn path(labels: [&str; 3]) -> Ooldg {
        Ooldg::from_parts(
            labels.iter().enumerate().map(|(i, l)| (i, sym(l))),
            [(0, 1, GLabel::Nat(1)), (1, 2, GLabel::Nat(1))],
        )
        .unwrap()
    }

    #[test]
    fn reflexive() {
        let t = parse_trs("(VAR x y)(RULES f(h(x,y),x) -> h(x,y)  h(y,x) -> f(x,y))", TrsMode::Strict).unwrap();
        for g in [graph_f(&t), graph_v(&t), graph_full(&t)] {
            let m = strong_iso(&g, &g).unwrap();
            assert_eq!(m.len(), g.node_count());
        }
    }

    #[test]
    fn differing_label_paths() {
        let a = path(["a", "b", "c"]);
        let b = path(["a", "b", "d"]);
        assert!(strong_iso(&a, &b).is_none());
        assert!(!strong_iso_bruteforce(&a, &b).unwrap());
        assert!(strong_iso(&a, &a).is_some());
    }

    #[test]
    fn mirrored_constants_are_not_isomorphic() {
        let a = parse_trs("(VAR x)(RULES f(x,c) -> f(x,c))", TrsMode::Strict).unwrap();
        let b = parse_trs("(VAR x)(RULES f(c,x) -> f(c,x))", TrsMode::Strict).unwrap();
        let (ga, gb) = (graph_full(&a), graph_full(&b));
        assert!(strong_iso(&ga, &gb).is_none());
    }

    #[test]
    fn symmetric_graph_needs_individualization() {
        // Two disjoint 2-cycles against one 4-cycle: refinement alone
        // cannot separate them.
        let node = |i| (i, GLabel::T);
        let e = |s, d| (s, d, GLabel::Nat(1));
        let two = Ooldg::from_parts((0..4).map(node), [e(0, 1), e(1, 0), e(2, 3), e(3, 2)]).unwrap();
        let four = Ooldg::from_parts((0..4).map(node), [e(0, 1), e(1, 2), e(2, 3), e(3, 0)]).unwrap();
        assert!(strong_iso(&two, &four).is_none());
        let m = strong_iso(&four, &four).unwrap();
        for ed in four.edges() {
            assert_eq!(four.out_edge(m[&ed.src], &ed.label), Some(m[&ed.dst]));
        }
    }
}
