//! Exhaustive search over renamings, straight from the definitions. Only
//! for small inputs; used to cross-check the deciders.

use std::collections::BTreeMap;

use thiserror::Error;

use super::generalised::pad_to_common;
use super::Relation;
use crate::iso::{Kind, TermIso};
use crate::term::{Rule, Symbol, Term};
use crate::trs::{Signature, Trs, VarSet};

pub const ORACLE_MAX_FUNCS: usize = 6;
pub const ORACLE_MAX_VARS: usize = 4;
pub const ORACLE_MAX_RULES: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("input exceeds the oracle limits ({ORACLE_MAX_FUNCS} function symbols, {ORACLE_MAX_VARS} variables, {ORACLE_MAX_RULES} rules)")]
    SizeGuard,
    #[error("a TRS is not in the {0}-normal form the relation requires")]
    NormalForm(Kind),
}

type Map = BTreeMap<Symbol, Symbol>;

/// Calls `f` on every arity-respecting injection `src → dst` until it
/// returns true.
fn injections(src: &[(Symbol, usize)], dst: &[(Symbol, usize)], f: &mut dyn FnMut(&Map) -> bool) -> bool {
    fn go(
        k: usize,
        src: &[(Symbol, usize)],
        dst: &[(Symbol, usize)],
        used: &mut Vec<bool>,
        cur: &mut Map,
        f: &mut dyn FnMut(&Map) -> bool,
    ) -> bool {
        let Some((s, l)) = src.get(k) else { return f(cur) };
        for (j, (t, m)) in dst.iter().enumerate() {
            if !used[j] && l == m {
                used[j] = true;
                cur.insert(s.clone(), t.clone());
                if go(k + 1, src, dst, used, cur, f) {
                    return true;
                }
                cur.remove(s);
                used[j] = false;
            }
        }
        false
    }
    let mut used = vec![false; dst.len()];
    go(0, src, dst, &mut used, &mut Map::new(), f)
}

fn sig_list(sig: &Signature) -> Vec<(Symbol, usize)> {
    sig.iter().map(|(f, l)| (f.clone(), l)).collect()
}

fn var_list(vars: &VarSet) -> Vec<(Symbol, usize)> {
    vars.iter().map(|x| (x.clone(), 0)).collect()
}

fn rule_funcs(r: &Rule) -> Vec<(Symbol, usize)> {
    let mut out: Vec<(Symbol, usize)> = Vec::new();
    for p in r.funcs() {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn rule_vars(r: &Rule) -> Vec<(Symbol, usize)> {
    r.vars().into_iter().map(|x| (x, 0)).collect()
}

fn identity(list: &[(Symbol, usize)]) -> Map {
    list.iter().map(|(s, _)| (s.clone(), s.clone())).collect()
}

/// Same tree shape, ignoring symbol names. Renamings preserve it.
fn same_shape(a: &Term, b: &Term) -> bool {
    match (a, b) {
        (Term::Var(_), Term::Var(_)) => true,
        (Term::App(_, xs), Term::App(_, ys)) => xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| same_shape(x, y)),
        _ => false,
    }
}

/// Whether some renaming maps rule `a` onto rule `b`. `fixed_f`/`fixed_v`
/// pin that part (to a given map, or to the identity when the map is
/// `None` and the flag is set); otherwise injections from the rule's own
/// symbols into the target sets are enumerated. Any such injection extends
/// to a bijection once the symbol counts per arity agree.
struct RuleSearch<'a> {
    dst_f: &'a [(Symbol, usize)],
    dst_v: &'a [(Symbol, usize)],
    fixed_f: Option<&'a Map>,
    fixed_v: Option<&'a Map>,
    f_identity: bool,
    v_identity: bool,
}

impl RuleSearch<'_> {
    fn maps(&self, a: &Rule, b: &Rule) -> bool {
        if !same_shape(&a.lhs, &b.lhs) || !same_shape(&a.rhs, &b.rhs) {
            return false;
        }
        let fs = rule_funcs(a);
        let vs = rule_vars(a);
        let try_v = |fm: &Map| -> bool {
            let check = |vm: &Map| TermIso::new(fm.clone(), vm.clone()).apply_rule(a).ok().as_ref() == Some(b);
            if let Some(vm) = self.fixed_v {
                check(vm)
            } else if self.v_identity {
                check(&identity(&vs))
            } else {
                injections(&vs, self.dst_v, &mut |vm| check(vm))
            }
        };
        if let Some(fm) = self.fixed_f {
            try_v(fm)
        } else if self.f_identity {
            try_v(&identity(&fs))
        } else {
            injections(&fs, self.dst_f, &mut |fm| try_v(fm))
        }
    }
}

fn permutation_exists(ok: &[Vec<bool>]) -> bool {
    crate::graphs::permutations(ok.len(), &mut |p| p.iter().enumerate().all(|(i, &j)| ok[i][j]))
}

fn guard(t: &Trs) -> Result<(), OracleError> {
    if t.sig().len() > ORACLE_MAX_FUNCS || t.vars().len() > ORACLE_MAX_VARS || t.rules().len() > ORACLE_MAX_RULES {
        return Err(OracleError::SizeGuard);
    }
    Ok(())
}

/// No two distinct rules related by a kind-renaming of the TRS onto itself.
fn brute_normal_form(t: &Trs, kind: Kind) -> bool {
    let fs = sig_list(t.sig());
    let vs = var_list(t.vars());
    let search = RuleSearch {
        dst_f: &fs,
        dst_v: &vs,
        fixed_f: None,
        fixed_v: None,
        f_identity: kind == Kind::V,
        v_identity: kind == Kind::F,
    };
    let rules = t.rules();
    (0..rules.len()).all(|i| (i + 1..rules.len()).all(|j| !search.maps(&rules[i], &rules[j])))
}

fn global(a: &Trs, b: &Trs, r: Relation) -> bool {
    if a.rules().len() != b.rules().len() {
        return false;
    }
    let (af, bf) = (sig_list(a.sig()), sig_list(b.sig()));
    let (av, bv) = (var_list(a.vars()), var_list(b.vars()));
    let test = |fm: &Map, vm: &Map| {
        let phi = TermIso::new(fm.clone(), vm.clone());
        let target: std::collections::HashSet<&Rule> = b.rules().iter().collect();
        let image: std::collections::HashSet<Rule> =
            a.rules().iter().map(|x| phi.apply_rule(x).expect("total")).collect();
        image.len() == target.len() && image.iter().all(|x| target.contains(x))
    };
    let with_f = |fm: &Map| -> bool {
        if r == Relation::Gfe {
            a.vars().iter().collect::<std::collections::BTreeSet<_>>() == b.vars().iter().collect()
                && test(fm, &identity(&av))
        } else {
            av.len() == bv.len() && injections(&av, &bv, &mut |vm| test(fm, vm))
        }
    };
    if r == Relation::Gve {
        a.sig() == b.sig() && with_f(&identity(&af))
    } else {
        af.len() == bf.len() && injections(&af, &bf, &mut |fm| with_f(fm))
    }
}

fn per_rule(a: &Trs, b: &Trs, r: Relation) -> bool {
    let n = a.rules().len();
    if b.rules().len() != n
        || a.sig().arity_profile() != b.sig().arity_profile()
        || a.vars().len() != b.vars().len()
    {
        return false;
    }
    let (bf, bv) = (sig_list(b.sig()), var_list(b.vars()));
    let matrix = |search: &RuleSearch| -> Vec<Vec<bool>> {
        a.rules().iter().map(|x| b.rules().iter().map(|y| search.maps(x, y)).collect()).collect()
    };
    let base = RuleSearch { dst_f: &bf, dst_v: &bv, fixed_f: None, fixed_v: None, f_identity: false, v_identity: false };
    match r {
        Relation::Le => permutation_exists(&matrix(&base)),
        Relation::Lve => a.sig() == b.sig() && permutation_exists(&matrix(&RuleSearch { f_identity: true, ..base })),
        Relation::Lfe => {
            a.vars().iter().collect::<std::collections::BTreeSet<_>>() == b.vars().iter().collect()
                && permutation_exists(&matrix(&RuleSearch { v_identity: true, ..base }))
        }
        Relation::Se => injections(&sig_list(a.sig()), &bf, &mut |fm| {
            permutation_exists(&matrix(&RuleSearch { fixed_f: Some(fm), ..base }))
        }),
        Relation::Sve => injections(&var_list(a.vars()), &bv, &mut |vm| {
            permutation_exists(&matrix(&RuleSearch { fixed_v: Some(vm), ..base }))
        }),
        _ => unreachable!("per-rule relation"),
    }
}

/// Keeps every rule not equivalent to an earlier kept one.
fn brute_maximal_normal_form(t: &Trs, kind: Kind) -> Trs {
    let fs = sig_list(t.sig());
    let vs = var_list(t.vars());
    let search = RuleSearch {
        dst_f: &fs,
        dst_v: &vs,
        fixed_f: None,
        fixed_v: None,
        f_identity: kind == Kind::V,
        v_identity: kind == Kind::F,
    };
    let mut keep: Vec<usize> = Vec::new();
    for (i, r) in t.rules().iter().enumerate() {
        if !keep.iter().any(|&k| search.maps(&t.rules()[k], r)) {
            keep.push(i);
        }
    }
    t.select_rules(&keep)
}

/// Decides `r` by exhaustive enumeration of renamings.
///
/// Generalised relations are reduced to their base relation on the padded
/// maximal normal forms first, computed here by pairwise search; the size
/// guard applies after padding.
pub fn brute_force_decide(a: &Trs, b: &Trs, r: Relation) -> Result<bool, OracleError> {
    if let (Some(base), Some(kind)) = (r.generalises(), r.normalizing_kind()) {
        guard(a)?;
        guard(b)?;
        let na = brute_maximal_normal_form(a, kind).minimized();
        let nb = brute_maximal_normal_form(b, kind).minimized();
        let (pa, pb) = pad_to_common(&na, &nb);
        return brute_force_decide(&pa, &pb, base);
    }
    guard(a)?;
    guard(b)?;
    if let Some(k) = r.required_normal_form() {
        if !brute_normal_form(a, k) || !brute_normal_form(b, k) {
            return Err(OracleError::NormalForm(k));
        }
    }
    Ok(if r.is_global() { global(a, b, r) } else { per_rule(a, b, r) })
}
