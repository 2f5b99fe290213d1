use std::collections::HashMap;

use super::{
    decide_global, require_normal_form, symbol_sets_compatible, verify_witness, DecideError, Decision, GlobalKind,
    Relation, Side, StandardKind, Verdict, Witness,
};
use crate::iso::Kind;
use crate::templates::template;
use crate::term::Rule;
use crate::trs::Trs;

/// Standard relations as global relations on templates: SE is GFE on
/// V-templates, SVE is GVE on F-templates.
pub fn decide_standard(a: &Trs, b: &Trs, kind: StandardKind) -> Result<Decision, DecideError> {
    let r = Relation::from(kind);
    let (tk, global) = match kind {
        StandardKind::Se => (Kind::V, GlobalKind::Gfe),
        StandardKind::Sve => (Kind::F, GlobalKind::Gve),
    };
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
    let inner = decide_global(&ta.templated, &tb.templated, global)?;
    trail.extend(inner.trail.iter().map(|t| format!("{}: {t}", Relation::from(global))));
    let Some(Witness::Global(phi)) = inner.witness else {
        return Ok(Decision::not_iso(r, trail, format!("{tk}-templates are not {}-equivalent", Relation::from(global))));
    };
    let index: HashMap<&Rule, usize> = tb.templated.rules().iter().enumerate().map(|(j, r)| (r, j)).collect();
    let mut members = Vec::with_capacity(a.rules().len());
    let mut matching = Vec::with_capacity(a.rules().len());
    for (i, t) in ta.templated.rules().iter().enumerate() {
        let image = phi.apply_rule(t).map_err(|e| DecideError::WitnessRejected(e.to_string()))?;
        let j = *index
            .get(&image)
            .ok_or_else(|| DecideError::WitnessRejected(format!("image of template {} missing", i + 1)))?;
        let back = tb.family[j].invert().expect("template renamings are bijective");
        let m = phi
            .compose(&ta.family[i])
            .and_then(|x| back.compose(&x))
            .map_err(|e| DecideError::WitnessRejected(e.to_string()))?;
        members.push(m);
        matching.push(j);
    }
    let witness = Witness::Family { members, rule_matching: matching };
    if !verify_witness(a, b, r, &witness)? {
        return Err(DecideError::WitnessRejected(format!("{r} family")));
    }
    Ok(Decision { relation: r, verdict: Verdict::Iso, witness: Some(witness), trail })
}
