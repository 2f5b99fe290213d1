use std::collections::HashSet;

use super::{padded_pair, symbol_sets_compatible, DecideError, Relation, Witness};
use crate::iso::{Kind, TermIso};
use crate::templates::template_classes;
use crate::term::Rule;
use crate::trs::Trs;

/// Normal form through template classes, linear in the rule count.
fn in_normal_form(t: &Trs, k: Kind) -> bool {
    template_classes(t, k).iter().all(|c| c.len() == 1)
}

fn valid(phi: &TermIso, a: &Trs, b: &Trs) -> bool {
    phi.validate(a.sig(), a.vars(), b.sig(), b.vars()).is_ok()
}

fn maps_onto(phi: &TermIso, a: &Trs, b: &Trs) -> bool {
    let target: HashSet<&Rule> = b.rules().iter().collect();
    let mut image = HashSet::new();
    for r in a.rules() {
        match phi.apply_rule(r) {
            Ok(x) if target.contains(&x) => {
                image.insert(x);
            }
            _ => return false,
        }
    }
    image.len() == target.len()
}

/// Checks a witness against the definition of `r`.
///
/// For generalised relations the witness is checked on the padded maximal
/// normal forms, which is what the generalised deciders return.
pub fn verify_witness(a: &Trs, b: &Trs, r: Relation, w: &Witness) -> Result<bool, DecideError> {
    if r.is_generalised() {
        let (pa, pb) = padded_pair(a, b, r).expect("generalised relation");
        return verify_witness(&pa, &pb, r.generalises().expect("generalised relation"), w);
    }
    match (r.is_global(), w) {
        (true, Witness::Global(phi)) => Ok(valid(phi, a, b)
            && match r {
                Relation::Gve => phi.is_f_invariant(),
                Relation::Gfe => phi.is_v_invariant(),
                _ => true,
            }
            && maps_onto(phi, a, b)),
        (false, Witness::Family { members, rule_matching }) => {
            let n = a.rules().len();
            if members.len() != n || rule_matching.len() != n || b.rules().len() != n {
                return Ok(false);
            }
            let mut hit = vec![false; n];
            for &j in rule_matching {
                if j >= n || std::mem::replace(&mut hit[j], true) {
                    return Ok(false);
                }
            }
            if symbol_sets_compatible(a, b, r).is_err() {
                return Ok(false);
            }
            if let Some(k) = r.required_normal_form() {
                if !in_normal_form(a, k) || !in_normal_form(b, k) {
                    return Ok(false);
                }
            }
            for (i, phi) in members.iter().enumerate() {
                if !valid(phi, a, b) || phi.apply_rule(&a.rules()[i]).ok().as_ref() != Some(&b.rules()[rule_matching[i]]) {
                    return Ok(false);
                }
            }
            let first = members.first();
            let common = match r {
                Relation::Se => members.iter().all(|m| Some(&m.fmap) == first.map(|f| &f.fmap)),
                Relation::Sve => members.iter().all(|m| Some(&m.vmap) == first.map(|f| &f.vmap)),
                Relation::Lve => members.iter().all(TermIso::is_f_invariant),
                Relation::Lfe => members.iter().all(TermIso::is_v_invariant),
                _ => true,
            };
            Ok(common)
        }
        _ => Err(DecideError::ShapeMismatch(r)),
    }
}
