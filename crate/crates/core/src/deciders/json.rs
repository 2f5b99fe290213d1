use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::{Decision, Verdict, Witness};
use crate::iso::TermIso;
use crate::term::Symbol;

fn iso_json(phi: &TermIso) -> Value {
    json!({ "fmap": phi.fmap, "vmap": phi.vmap })
}

pub fn witness_to_json(w: &Witness) -> Value {
    match w {
        Witness::Global(phi) => json!({ "kind": "global", "fmap": phi.fmap, "vmap": phi.vmap }),
        Witness::Family { members, rule_matching } => json!({
            "kind": "family",
            "members": members.iter().map(iso_json).collect::<Vec<_>>(),
            "rule_matching": rule_matching,
        }),
    }
}

pub fn decision_to_json(d: &Decision) -> Value {
    let mut v = json!({
        "relation": d.relation.name(),
        "verdict": match d.verdict {
            Verdict::Iso => "iso",
            Verdict::NotIso => "not_iso",
        },
    });
    if let Some(w) = &d.witness {
        v["witness"] = witness_to_json(w);
    }
    v
}

fn map(v: &Value, key: &str) -> Result<BTreeMap<Symbol, Symbol>, String> {
    let m = v.get(key).ok_or_else(|| format!("missing `{key}`"))?;
    serde_json::from_value(m.clone()).map_err(|e| format!("`{key}`: {e}"))
}

fn iso_from(v: &Value) -> Result<TermIso, String> {
    Ok(TermIso::new(map(v, "fmap")?, map(v, "vmap")?))
}

/// Accepts a bare witness object or a whole decision with a `witness` field.
pub fn witness_from_json(v: &Value) -> Result<Witness, String> {
    let w = v.get("witness").unwrap_or(v);
    match w.get("kind").and_then(Value::as_str) {
        Some("global") => Ok(Witness::Global(iso_from(w)?)),
        Some("family") => {
            let members = w
                .get("members")
                .and_then(Value::as_array)
                .ok_or("missing `members`")?
                .iter()
                .map(iso_from)
                .collect::<Result<Vec<_>, _>>()?;
            let rule_matching: Vec<usize> = serde_json::from_value(
                w.get("rule_matching").cloned().ok_or("missing `rule_matching`")?,
            )
            .map_err(|e| format!("`rule_matching`: {e}"))?;
            Ok(Witness::Family { members, rule_matching })
        }
        Some(k) => Err(format!("unknown witness kind `{k}`")),
        None => Err("missing witness `kind`".into()),
    }
}
