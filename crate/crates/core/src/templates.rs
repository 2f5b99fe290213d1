//! Canonical per-rule renamings and maximal normal forms.

use std::collections::{BTreeMap, HashMap};

use crate::iso::{Kind, TermIso};
use crate::term::{Rule, Symbol};
use crate::trs::{Signature, Trs, VarSet};

/// The k-th standardized variable, `x<k>` (1-based).
pub fn std_var(k: usize) -> Symbol {
    Symbol::from_static(&format!("x{k}"))
}

/// The k-th standardized function symbol of arity l, `f_<k>_<l>`.
pub fn std_func(k: usize, l: usize) -> Symbol {
    Symbol::from_static(&format!("f_{k}_{l}"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardizedSets {
    pub vstd: VarSet,
    /// Ordered by arity, then occurrence index.
    pub fstd: Signature,
}

pub fn standardized_sets(trs: &Trs) -> StandardizedSets {
    StandardizedSets { vstd: std_vars(trs.vars().len()), fstd: std_sig(trs.sig()) }
}

fn std_vars(n: usize) -> VarSet {
    (1..=n).map(std_var).collect()
}

fn std_sig(sig: &Signature) -> Signature {
    let mut out = Signature::new();
    for (l, p) in sig.arity_profile() {
        for k in 1..=p {
            out.declare(std_func(k, l), l).expect("fresh");
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateResult {
    /// One renaming per rule, same indexing as the source rules.
    pub family: Vec<TermIso>,
    /// May hold identical rules when the source is not in normal form.
    pub templated: Trs,
    pub kind: Kind,
}

/// ν_j: variables of the rule to x1, x2, ... by first occurrence; function
/// symbols fixed.
fn nu(rule: &Rule, sig: &Signature, vars: &VarSet) -> TermIso {
    let mut vmap = BTreeMap::new();
    let occurring = rule.vars();
    for (k, x) in occurring.iter().enumerate() {
        vmap.insert(x.clone(), std_var(k + 1));
    }
    let mut next = occurring.len() + 1;
    for x in vars {
        if !vmap.contains_key(x) {
            vmap.insert(x.clone(), std_var(next));
            next += 1;
        }
    }
    let fmap = sig.symbols().map(|f| (f.clone(), f.clone())).collect();
    TermIso { fmap, vmap }
}

/// μ_j: function symbols of the rule to f_k_l by first occurrence per
/// arity; variables fixed.
fn mu(rule: &Rule, sig: &Signature, vars: &VarSet) -> TermIso {
    let mut fmap = BTreeMap::new();
    let mut count: BTreeMap<usize, usize> = BTreeMap::new();
    for (f, l) in rule.funcs() {
        let k = count.entry(l).or_insert(0);
        *k += 1;
        fmap.insert(f, std_func(*k, l));
    }
    for (f, l) in sig.iter() {
        if !fmap.contains_key(f) {
            let k = count.entry(l).or_insert(0);
            *k += 1;
            fmap.insert(f.clone(), std_func(*k, l));
        }
    }
    let vmap = vars.iter().map(|x| (x.clone(), x.clone())).collect();
    TermIso { fmap, vmap }
}

/// The template renaming of one rule of `trs`.
pub fn rule_template_iso(rule: &Rule, kind: Kind, sig: &Signature, vars: &VarSet) -> TermIso {
    match kind {
        Kind::V => nu(rule, sig, vars),
        Kind::F => mu(rule, sig, vars),
        Kind::Full => TermIso { fmap: mu(rule, sig, vars).fmap, vmap: nu(rule, sig, vars).vmap },
    }
}

pub fn template(trs: &Trs, kind: Kind) -> TemplateResult {
    let (sig, vars) = (trs.sig(), trs.vars());
    let family: Vec<TermIso> = trs.rules().iter().map(|r| rule_template_iso(r, kind, sig, vars)).collect();
    let rules = trs
        .rules()
        .iter()
        .zip(&family)
        .map(|(r, iso)| iso.apply_rule(r).expect("total on the TRS symbols"))
        .collect();
    let out_sig = match kind {
        Kind::V => sig.clone(),
        Kind::F | Kind::Full => std_sig(sig),
    };
    let out_vars = match kind {
        Kind::F => vars.clone(),
        Kind::V | Kind::Full => std_vars(vars.len()),
    };
    TemplateResult { family, templated: Trs::assemble(out_sig, out_vars, rules), kind }
}

pub fn v_template(trs: &Trs) -> TemplateResult {
    template(trs, Kind::V)
}

pub fn f_template(trs: &Trs) -> TemplateResult {
    template(trs, Kind::F)
}

pub fn full_template(trs: &Trs) -> TemplateResult {
    template(trs, Kind::Full)
}

/// Classes of rule indices sharing a kind-template, ordered by first member.
pub fn template_classes(trs: &Trs, kind: Kind) -> Vec<Vec<usize>> {
    let t = template(trs, kind);
    let mut index: HashMap<&Rule, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, r) in t.templated.rules().iter().enumerate() {
        match index.get(r) {
            Some(&c) => classes[c].push(i),
            None => {
                index.insert(r, classes.len());
                classes.push(vec![i]);
            }
        }
    }
    classes
}

/// Keeps the first rule of every template class, in input order, over the
/// unchanged symbol sets. Returns the classes as 0-based rule indices.
///
/// For `Kind::Full` the classes are those of the full template, that is the
/// function-symbol template of the variable template.
pub fn maximal_normal_form(trs: &Trs, kind: Kind) -> (Trs, Vec<Vec<usize>>) {
    let classes = template_classes(trs, kind);
    let keep: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    (trs.select_rules(&keep), classes)
}
