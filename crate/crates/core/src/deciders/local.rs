use std::collections::HashMap;

use super::{require_normal_form, symbol_sets_compatible, verify_witness, DecideError, Decision, LocalKind, Relation, Side, Verdict, Witness};
use crate::iso::Kind;
use crate::templates::template;
use crate::term::Rule;
use crate::trs::Trs;

fn template_kind(k: LocalKind) -> Kind {
    match k {
        LocalKind::Le => Kind::Full,
        LocalKind::Lve => Kind::V,
        LocalKind::Lfe => Kind::F,
    }
}

/// Local relations by template matching.
pub fn decide_local(a: &Trs, b: &Trs, kind: LocalKind) -> Result<Decision, DecideError> {
    let r = Relation::from(kind);
    let tk = template_kind(kind);
    require_normal_form(a, tk, Side::A)?;
    require_normal_form(b, tk, Side::B)?;
    let mut trail = vec![format!("both TRSs are in {tk}-normal form")];
    if a.rules().len() != b.rules().len() {
        return Ok(Decision::not_iso(r, trail, "rule counts differ"));
    }
    if let Err(why) = symbol_sets_compatible(a, b, r) {
        return Ok(Decision::not_iso(r, trail, why));
    }
    let ta = template(a, tk);
    let tb = template(b, tk);
    let index: HashMap<&Rule, usize> = tb.templated.rules().iter().enumerate().map(|(j, r)| (r, j)).collect();
    let mut matching = Vec::with_capacity(a.rules().len());
    for (i, t) in ta.templated.rules().iter().enumerate() {
        match index.get(t) {
            Some(&j) => matching.push(j),
            None => return Ok(Decision::not_iso(r, trail, format!("template of rule {} ({t}) has no counterpart", i + 1))),
        }
    }
    trail.push("template sets coincide".into());
    let members = matching
        .iter()
        .enumerate()
        .map(|(i, &j)| {
            let back = tb.family[j].invert().expect("template renamings are bijective");
            back.compose(&ta.family[i]).map_err(|e| DecideError::WitnessRejected(e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let witness = Witness::Family { members, rule_matching: matching };
    if !verify_witness(a, b, r, &witness)? {
        return Err(DecideError::WitnessRejected(format!("{r} family")));
    }
    Ok(Decision { relation: r, verdict: Verdict::Iso, witness: Some(witness), trail })
}
