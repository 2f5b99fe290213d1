//! Seeded generators for random TRSs, TRS pairs and digraphs.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graphs::DiGraph;
use crate::iso::{Kind, TermIso};
use crate::templates::rule_template_iso;
use crate::term::{Rule, Symbol, Term};
use crate::trs::{Signature, Trs, TrsMode, VarSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub funcs: usize,
    pub vars: usize,
    pub max_rules: usize,
    pub max_depth: usize,
    pub max_arity: usize,
}

impl Default for GenParams {
    fn default() -> GenParams {
        GenParams { funcs: 4, vars: 2, max_rules: 3, max_depth: 3, max_arity: 2 }
    }
}

/// How the second TRS of a pair is derived from the first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairShape {
    Independent,
    /// One renaming for all rules.
    Global { keep_funcs: bool, keep_vars: bool },
    /// One renaming per rule; the flags pin the part shared by all rules.
    Local { common_funcs: bool, common_vars: bool, keep_funcs: bool, keep_vars: bool },
    /// A renamed copy with one rule changed.
    NearMiss,
}

impl PairShape {
    pub fn random<R: Rng>(rng: &mut R) -> PairShape {
        match rng.gen_range(0..6) {
            0 => PairShape::Independent,
            1 | 2 => PairShape::Global { keep_funcs: rng.gen_bool(0.3), keep_vars: rng.gen_bool(0.3) },
            3 | 4 => {
                let common_funcs = rng.gen_bool(0.4);
                let common_vars = !common_funcs && rng.gen_bool(0.4);
                PairShape::Local {
                    common_funcs,
                    common_vars,
                    keep_funcs: rng.gen_bool(0.25),
                    keep_vars: rng.gen_bool(0.25),
                }
            }
            _ => PairShape::NearMiss,
        }
    }
}

fn sym(s: String) -> Symbol {
    Symbol::new(&s).expect("generated names are identifiers")
}

/// `funcs` symbols named `<prefix><i>` with random arities, at least one
/// constant and at least one symbol of positive arity when possible.
pub fn random_signature<R: Rng>(rng: &mut R, funcs: usize, max_arity: usize, prefix: &str) -> Signature {
    let mut sig = Signature::new();
    for i in 0..funcs {
        let l = match i {
            0 => 0,
            1 if max_arity > 0 => rng.gen_range(1..=max_arity),
            _ => rng.gen_range(0..=max_arity),
        };
        sig.declare(sym(format!("{prefix}{i}")), l).expect("fresh");
    }
    sig
}

pub fn random_vars(n: usize, prefix: &str) -> VarSet {
    (1..=n).map(|i| sym(format!("{prefix}{i}"))).collect()
}

/// Random term of depth at most `depth` over the given symbols; variables
/// are drawn from `vars`.
pub fn random_term<R: Rng>(rng: &mut R, sig: &Signature, vars: &[Symbol], depth: usize, leaf_bias: f64) -> Term {
    let consts: Vec<&Symbol> = sig.iter().filter(|(_, l)| *l == 0).map(|(f, _)| f).collect();
    let inner: Vec<(&Symbol, usize)> = sig.iter().filter(|(_, l)| *l > 0).collect();
    if depth == 0 || inner.is_empty() || rng.gen_bool(leaf_bias) {
        let pick_var = !vars.is_empty() && (consts.is_empty() || rng.gen_bool(0.6));
        if pick_var {
            return Term::Var(vars.choose(rng).expect("nonempty").clone());
        }
        if let Some(c) = consts.choose(rng) {
            return Term::App((*c).clone(), vec![]);
        }
    }
    let (f, l) = *inner.choose(rng).expect("signature has a non-constant");
    Term::App(f.clone(), (0..l).map(|_| random_term(rng, sig, vars, depth - 1, leaf_bias)).collect())
}

/// A rule meeting the standard restrictions.
pub fn random_rule<R: Rng>(rng: &mut R, sig: &Signature, vars: &VarSet, depth: usize) -> Rule {
    let all: Vec<Symbol> = vars.iter().cloned().collect();
    let lhs = loop {
        let t = random_term(rng, sig, &all, depth, 0.35);
        if !t.is_var() {
            break t;
        }
    };
    let lv: Vec<Symbol> = lhs.vars().into_iter().collect();
    let rhs = random_term(rng, sig, &lv, depth, 0.45);
    Rule::new(lhs, rhs)
}

/// Random strict TRS with 1..=max_rules distinct rules over the full
/// generated symbol sets.
pub fn random_trs<R: Rng>(rng: &mut R, p: &GenParams) -> Trs {
    let sig = random_signature(rng, p.funcs.max(1), p.max_arity, "f");
    let vars = random_vars(p.vars, "x");
    let n = rng.gen_range(1..=p.max_rules.max(1));
    random_trs_over(rng, &sig, &vars, n, p.max_depth)
}

pub fn random_trs_over<R: Rng>(rng: &mut R, sig: &Signature, vars: &VarSet, rules: usize, depth: usize) -> Trs {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for _ in 0..rules * 4 {
        if out.len() == rules {
            break;
        }
        let r = random_rule(rng, sig, vars, depth);
        if seen.insert(r.clone()) {
            out.push(r);
        }
    }
    Trs::new(sig.clone(), vars.clone(), out, TrsMode::Strict).expect("generated rules are valid")
}

/// Random arity-respecting bijection of `sig` onto a signature with the
/// same profile.
fn random_fmap<R: Rng>(rng: &mut R, sig: &Signature, target: &Signature) -> BTreeMap<Symbol, Symbol> {
    let mut pools: BTreeMap<usize, Vec<Symbol>> = BTreeMap::new();
    for (g, l) in target.iter() {
        pools.entry(l).or_default().push(g.clone());
    }
    for v in pools.values_mut() {
        v.shuffle(rng);
    }
    sig.iter()
        .map(|(f, l)| (f.clone(), pools.get_mut(&l).and_then(Vec::pop).expect("same profile")))
        .collect()
}

fn random_vmap<R: Rng>(rng: &mut R, vars: &VarSet, target: &VarSet) -> BTreeMap<Symbol, Symbol> {
    let mut pool: Vec<Symbol> = target.iter().cloned().collect();
    pool.shuffle(rng);
    vars.iter().cloned().zip(pool).collect()
}

/// Random renaming of the symbols of `t` onto themselves.
pub fn random_iso<R: Rng>(rng: &mut R, t: &Trs) -> TermIso {
    TermIso { fmap: random_fmap(rng, t.sig(), t.sig()), vmap: random_vmap(rng, t.vars(), t.vars()) }
}

fn renamed_sig(sig: &Signature, prefix: &str) -> Signature {
    Signature::from_pairs(sig.iter().enumerate().map(|(i, (_, l))| (sym(format!("{prefix}{i}")), l))).expect("fresh")
}

/// Applies one renaming per rule (or one shared part) and shuffles rules.
/// Returns `None` when two rules collapse onto the same image.
pub fn perturb<R: Rng>(rng: &mut R, t: &Trs, shape: PairShape) -> Option<Trs> {
    let (keep_f, keep_v, common_f, common_v, global) = match shape {
        PairShape::Global { keep_funcs, keep_vars } => (keep_funcs, keep_vars, true, true, true),
        PairShape::Local { common_funcs, common_vars, keep_funcs, keep_vars } => {
            (keep_funcs, keep_vars, common_funcs, common_vars, false)
        }
        _ => (false, false, true, true, true),
    };
    let fresh_f = !keep_f && rng.gen_bool(0.5);
    let fresh_v = !keep_v && rng.gen_bool(0.5);
    let dst_sig = if fresh_f { renamed_sig(t.sig(), "g") } else { t.sig().clone() };
    let dst_vars = if fresh_v { random_vars(t.vars().len(), "y") } else { t.vars().clone() };
    let id = TermIso::identity_on(t);
    let draw = |rng: &mut R| TermIso {
        fmap: if keep_f { id.fmap.clone() } else { random_fmap(rng, t.sig(), &dst_sig) },
        vmap: if keep_v { id.vmap.clone() } else { random_vmap(rng, t.vars(), &dst_vars) },
    };
    let shared = draw(rng);
    let mut rules = Vec::with_capacity(t.rules().len());
    for r in t.rules() {
        let mut phi = if global { shared.clone() } else { draw(rng) };
        if common_f {
            phi.fmap = shared.fmap.clone();
        }
        if common_v {
            phi.vmap = shared.vmap.clone();
        }
        rules.push(phi.apply_rule(r).expect("total"));
    }
    rules.shuffle(rng);
    Trs::new(dst_sig, dst_vars, rules, TrsMode::Strict).ok()
}

/// Appends renamed copies of some rules, each related to its original by a
/// renaming of the given kind, so the result is usually not in normal form.
pub fn with_equivalent_copies<R: Rng>(rng: &mut R, t: &Trs, kind: Kind, copies: usize) -> Trs {
    let mut rules = t.rules().to_vec();
    for _ in 0..copies {
        let Some(r) = t.rules().choose(rng) else { break };
        let mut phi = random_iso(rng, t);
        match kind {
            Kind::V => phi.fmap = TermIso::identity_on(t).fmap,
            Kind::F => phi.vmap = TermIso::identity_on(t).vmap,
            Kind::Full => {}
        }
        let img = phi.apply_rule(r).expect("total");
        if !rules.contains(&img) {
            rules.push(img);
        }
    }
    Trs::new(t.sig().clone(), t.vars().clone(), rules, TrsMode::Strict).expect("distinct strict rules")
}

/// Changes one rule: swaps two arguments, or regrows a subterm.
fn mutate<R: Rng>(rng: &mut R, t: &Trs, depth: usize) -> Option<Trs> {
    let mut rules = t.rules().to_vec();
    let i = rng.gen_range(0..rules.len());
    let r = &rules[i];
    let positions = r.rhs.positions();
    let new_rhs = {
        let pos = positions.choose(rng)?;
        let lv: Vec<Symbol> = r.lhs.vars().into_iter().collect();
        let sub = random_term(rng, t.sig(), &lv, depth.saturating_sub(pos.len()), 0.5);
        r.rhs.replace_at(pos, sub)?
    };
    rules[i] = Rule::new(r.lhs.clone(), new_rhs);
    Trs::new(t.sig().clone(), t.vars().clone(), rules, TrsMode::Strict).ok()
}

/// A seeded pair of the given shape. Shapes that cannot be realised on the
/// drawn TRS fall back to an independent pair.
pub fn random_pair<R: Rng>(rng: &mut R, p: &GenParams, shape: PairShape) -> (Trs, Trs) {
    let a = random_trs(rng, p);
    let b = match shape {
        PairShape::Independent => None,
        PairShape::NearMiss => perturb(rng, &a, PairShape::Global { keep_funcs: false, keep_vars: false })
            .and_then(|b| mutate(rng, &b, p.max_depth)),
        s => perturb(rng, &a, s),
    };
    let b = b.unwrap_or_else(|| {
        let sig = a.sig().clone();
        random_trs_over(rng, &sig, a.vars(), a.rules().len(), p.max_depth)
    });
    (a, b)
}

/// A TRS with `rules` pairwise inequivalent rules (full normal form),
/// grown by rejecting rules whose full template was already seen.
pub fn random_normal_form_trs<R: Rng>(
    rng: &mut R,
    sig: &Signature,
    vars: &VarSet,
    rules: usize,
    max_size: usize,
    depth: usize,
) -> Trs {
    let mut templates = HashSet::new();
    let mut out = Vec::with_capacity(rules);
    let mut attempts = 0;
    while out.len() < rules && attempts < rules * 200 {
        attempts += 1;
        let r = random_rule(rng, sig, vars, depth);
        if r.lhs.len() > max_size || r.rhs.len() > max_size {
            continue;
        }
        let t = rule_template_iso(&r, Kind::Full, sig, vars).apply_rule(&r).expect("total");
        if templates.insert(t) {
            out.push(r);
        }
    }
    Trs::new(sig.clone(), vars.clone(), out, TrsMode::Strict).expect("distinct templates give distinct rules")
}

/// Random digraph on `n` vertices without isolated vertices.
pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, density: f64) -> DiGraph {
    let mut edges = Vec::new();
    for s in 0..n {
        for d in 0..n {
            if rng.gen_bool(density) {
                edges.push((s, d));
            }
        }
    }
    for v in 0..n {
        if !edges.iter().any(|&(s, d)| s == v || d == v) {
            let w = rng.gen_range(0..n);
            edges.push(if rng.gen_bool(0.5) { (v, w) } else { (w, v) });
        }
    }
    edges.shuffle(rng);
    DiGraph::from_indices(n, &edges)
}

/// The same digraph with vertices permuted and edges reordered.
pub fn permuted_digraph<R: Rng>(rng: &mut R, g: &DiGraph) -> DiGraph {
    let n = g.node_count();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = g.edge_indices().map(|(s, d)| (perm[s], perm[d])).collect();
    edges.shuffle(rng);
    DiGraph::from_indices(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_normal_form;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_trss_are_strict_and_seeded() {
        let p = GenParams::default();
        let a = random_trs(&mut ChaCha8Rng::seed_from_u64(7), &p);
        let b = random_trs(&mut ChaCha8Rng::seed_from_u64(7), &p);
        assert_eq!(a, b);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let t = random_trs(&mut rng, &p);
            assert!(t.is_strict() && !t.rules().is_empty() && t.sig().len() == p.funcs);
        }
    }

    #[test]
    fn normal_form_generator() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sig = random_signature(&mut rng, 6, 2, "f");
        let vars = random_vars(3, "x");
        let t = random_normal_form_trs(&mut rng, &sig, &vars, 40, 9, 3);
        assert_eq!(t.rules().len(), 40);
        assert!(is_normal_form(&t, Kind::Full));
    }

    #[test]
    fn digraphs_have_no_isolated_vertices() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=6 {
            let g = random_digraph(&mut rng, n, 0.1);
            assert_eq!(g.isolated_vertex(), None);
            let h = permuted_digraph(&mut rng, &g);
            assert_eq!((h.node_count(), h.edge_count()), (g.node_count(), g.edge_count()));
        }
    }
}
