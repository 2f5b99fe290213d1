use std::collections::BTreeMap;

use super::{decide_any, DecideError, Decision, GeneralisedKind, Relation};
use crate::templates::maximal_normal_form;
use crate::term::Symbol;
use crate::trs::{Signature, Trs, VarSet};

fn pad_func(k: usize, l: usize) -> Symbol {
    Symbol::from_static(&format!("_pad_{k}_{l}"))
}

fn pad_var(k: usize) -> Symbol {
    Symbol::from_static(&format!("_padv_{k}"))
}

fn padded(t: &Trs, profile: &BTreeMap<usize, usize>, nvars: usize) -> Trs {
    let mut sig: Signature = t.sig().clone();
    let own = t.sig().arity_profile();
    for (&l, &want) in profile {
        let have = own.get(&l).copied().unwrap_or(0);
        for k in 1..=want.saturating_sub(have) {
            sig.declare(pad_func(k, l), l).expect("reserved names are fresh");
        }
    }
    let mut vars: VarSet = t.vars().clone();
    for k in 1..=nvars.saturating_sub(t.vars().len()) {
        vars.insert(pad_var(k));
    }
    t.with_symbols(sig, vars).expect("padding only adds fresh symbols")
}

/// Pads both TRSs with dummy symbols to equal counts per arity and equal
/// variable counts.
pub(crate) fn pad_to_common(na: &Trs, nb: &Trs) -> (Trs, Trs) {
    let mut profile = na.sig().arity_profile();
    for (l, n) in nb.sig().arity_profile() {
        let e = profile.entry(l).or_insert(0);
        *e = (*e).max(n);
    }
    let nvars = na.vars().len().max(nb.vars().len());
    (padded(na, &profile, nvars), padded(nb, &profile, nvars))
}

/// Maximal normal forms of both TRSs with minimal symbol sets, padded with
/// dummy symbols to equal counts per arity and equal variable counts.
pub fn padded_pair(a: &Trs, b: &Trs, r: Relation) -> Option<(Trs, Trs)> {
    let kind = r.normalizing_kind()?;
    let na = maximal_normal_form(a, kind).0.minimized();
    let nb = maximal_normal_form(b, kind).0.minimized();
    Some(pad_to_common(&na, &nb))
}

/// Generalised relations: normalize, minimize, pad, then decide the base
/// relation. A witness relates the padded normal forms.
pub fn decide_generalised(a: &Trs, b: &Trs, kind: GeneralisedKind) -> Result<Decision, DecideError> {
    let r = Relation::from(kind);
    let base = r.generalises().expect("generalised relation");
    let (pa, pb) = padded_pair(a, b, r).expect("generalised relation");
    let mut d = decide_any(&pa, &pb, base)?;
    d.trail.insert(
        0,
        format!(
            "maximal {}-normal forms keep {} and {} rules",
            r.normalizing_kind().expect("generalised relation"),
            pa.rules().len(),
            pb.rules().len()
        ),
    );
    d.relation = r;
    Ok(d)
}
