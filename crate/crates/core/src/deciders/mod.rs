//! Deciders for the renaming relations between TRSs, witness checking and
//! a brute-force oracle.

mod generalised;
mod global;
mod json;
mod local;
mod oracle;
mod semantic;
mod standard;
mod verify;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::iso::{Kind, TermIso};
use crate::term::{Rule, Symbol};
use crate::templates::template;
use crate::trs::{Signature, Trs, VarSet};

pub use generalised::{decide_generalised, padded_pair};
pub use global::decide_global;
pub use json::{decision_to_json, witness_from_json, witness_to_json};
pub use local::decide_local;
pub use oracle::{brute_force_decide, OracleError, ORACLE_MAX_FUNCS, ORACLE_MAX_RULES, ORACLE_MAX_VARS};
pub use semantic::{
    check_semantic_compatibility, sample_terms, step_violations, SemanticReport, Violation, SAMPLE_COUNT,
    SAMPLE_DEPTH,
};
pub use standard::decide_standard;
pub use verify::verify_witness;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Le,
    Lve,
    Lfe,
    Se,
    Sve,
    Ge,
    Gve,
    Gfe,
    LeG,
    LveG,
    LfeG,
    SeG,
    SveG,
}

impl Relation {
    pub const ALL: [Relation; 13] = [
        Relation::Le,
        Relation::Lve,
        Relation::Lfe,
        Relation::Se,
        Relation::Sve,
        Relation::Ge,
        Relation::Gve,
        Relation::Gfe,
        Relation::LeG,
        Relation::LveG,
        Relation::LfeG,
        Relation::SeG,
        Relation::SveG,
    ];

    pub const UNGENERALISED: [Relation; 8] = [
        Relation::Le,
        Relation::Lve,
        Relation::Lfe,
        Relation::Se,
        Relation::Sve,
        Relation::Ge,
        Relation::Gve,
        Relation::Gfe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Relation::Le => "le",
            Relation::Lve => "lve",
            Relation::Lfe => "lfe",
            Relation::Se => "se",
            Relation::Sve => "sve",
            Relation::Ge => "ge",
            Relation::Gve => "gve",
            Relation::Gfe => "gfe",
            Relation::LeG => "le*",
            Relation::LveG => "lve*",
            Relation::LfeG => "lfe*",
            Relation::SeG => "se*",
            Relation::SveG => "sve*",
        }
    }

    pub fn is_global(self) -> bool {
        matches!(self, Relation::Ge | Relation::Gve | Relation::Gfe)
    }

    pub fn is_generalised(self) -> bool {
        self.generalises().is_some()
    }

    /// The relation a generalised relation is built on.
    pub fn generalises(self) -> Option<Relation> {
        match self {
            Relation::LeG => Some(Relation::Le),
            Relation::LveG => Some(Relation::Lve),
            Relation::LfeG => Some(Relation::Lfe),
            Relation::SeG => Some(Relation::Se),
            Relation::SveG => Some(Relation::Sve),
            _ => None,
        }
    }

    /// The normal form the relation presupposes, if any.
    pub fn required_normal_form(self) -> Option<Kind> {
        match self {
            Relation::Le => Some(Kind::Full),
            Relation::Lve | Relation::Se => Some(Kind::V),
            Relation::Lfe | Relation::Sve => Some(Kind::F),
            _ => None,
        }
    }

    /// The normal form a generalised relation computes first.
    pub fn normalizing_kind(self) -> Option<Kind> {
        self.generalises().and_then(Relation::required_normal_form)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Relation {
    type Err = String;
    fn from_str(s: &str) -> Result<Relation, String> {
        let lower = s.to_ascii_lowercase();
        Relation::ALL
            .into_iter()
            .find(|r| r.name() == lower)
            .ok_or_else(|| format!("unknown relation `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalKind {
    Le,
    Lve,
    Lfe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlobalKind {
    Ge,
    Gve,
    Gfe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Se,
    Sve,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneralisedKind {
    LeG,
    LveG,
    LfeG,
    SeG,
    SveG,
}

impl From<LocalKind> for Relation {
    fn from(k: LocalKind) -> Relation {
        match k {
            LocalKind::Le => Relation::Le,
            LocalKind::Lve => Relation::Lve,
            LocalKind::Lfe => Relation::Lfe,
        }
    }
}

impl From<GlobalKind> for Relation {
    fn from(k: GlobalKind) -> Relation {
        match k {
            GlobalKind::Ge => Relation::Ge,
            GlobalKind::Gve => Relation::Gve,
            GlobalKind::Gfe => Relation::Gfe,
        }
    }
}

impl From<StandardKind> for Relation {
    fn from(k: StandardKind) -> Relation {
        match k {
            StandardKind::Se => Relation::Se,
            StandardKind::Sve => Relation::Sve,
        }
    }
}

impl From<GeneralisedKind> for Relation {
    fn from(k: GeneralisedKind) -> Relation {
        match k {
            GeneralisedKind::LeG => Relation::LeG,
            GeneralisedKind::LveG => Relation::LveG,
            GeneralisedKind::LfeG => Relation::LfeG,
            GeneralisedKind::SeG => Relation::SeG,
            GeneralisedKind::SveG => Relation::SveG,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Global(TermIso),
    /// `members[i]` maps rule i of the first TRS onto rule
    /// `rule_matching[i]` of the second.
    Family { members: Vec<TermIso>, rule_matching: Vec<usize> },
}

impl Witness {
    /// Every renaming in the witness.
    pub fn members(&self) -> &[TermIso] {
        match self {
            Witness::Global(phi) => std::slice::from_ref(phi),
            Witness::Family { members, .. } => members,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Iso,
    NotIso,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub relation: Relation,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub trail: Vec<String>,
}

impl Decision {
    pub fn is_iso(&self) -> bool {
        self.verdict == Verdict::Iso
    }

    fn not_iso(relation: Relation, mut trail: Vec<String>, why: impl Into<String>) -> Decision {
        trail.push(why.into());
        Decision { relation, verdict: Verdict::NotIso, witness: None, trail }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "first",
            Side::B => "second",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error(
        "{side} TRS is not in {kind}-normal form: rules {} and {} are equivalent via {witness}",
        first + 1,
        second + 1
    )]
    NormalForm { side: Side, kind: Kind, first: usize, second: usize, witness: TermIso },
    #[error("witness shape does not fit relation {0}")]
    ShapeMismatch(Relation),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal error: constructed witness was rejected ({0})")]
    WitnessRejected(String),
}

/// Dispatches to the decider responsible for `r`.
pub fn decide_any(a: &Trs, b: &Trs, r: Relation) -> Result<Decision, DecideError> {
    match r {
        Relation::Le => decide_local(a, b, LocalKind::Le),
        Relation::Lve => decide_local(a, b, LocalKind::Lve),
        Relation::Lfe => decide_local(a, b, LocalKind::Lfe),
        Relation::Se => decide_standard(a, b, StandardKind::Se),
        Relation::Sve => decide_standard(a, b, StandardKind::Sve),
        Relation::Ge => decide_global(a, b, GlobalKind::Ge),
        Relation::Gve => decide_global(a, b, GlobalKind::Gve),
        Relation::Gfe => decide_global(a, b, GlobalKind::Gfe),
        Relation::LeG => decide_generalised(a, b, GeneralisedKind::LeG),
        Relation::LveG => decide_generalised(a, b, GeneralisedKind::LveG),
        Relation::LfeG => decide_generalised(a, b, GeneralisedKind::LfeG),
        Relation::SeG => decide_generalised(a, b, GeneralisedKind::SeG),
        Relation::SveG => decide_generalised(a, b, GeneralisedKind::SveG),
    }
}

/// Fails with the first pair of rules sharing a kind-template.
pub(crate) fn require_normal_form(trs: &Trs, kind: Kind, side: Side) -> Result<(), DecideError> {
    let t = template(trs, kind);
    let mut seen: HashMap<&Rule, usize> = HashMap::new();
    for (j, r) in t.templated.rules().iter().enumerate() {
        if let Some(&i) = seen.get(r) {
            let back = t.family[j].invert().expect("template renamings are bijective");
            let witness = back.compose(&t.family[i]).expect("same template codomain");
            return Err(DecideError::NormalForm { side, kind, first: i, second: j, witness });
        }
        seen.insert(r, j);
    }
    Ok(())
}

fn var_set(v: &VarSet) -> BTreeSet<&Symbol> {
    v.iter().collect()
}

/// Symbol-set conditions every witness of the relation needs: a bijection
/// must exist, and the untouched kind must coincide literally.
pub(crate) fn symbol_sets_compatible(a: &Trs, b: &Trs, r: Relation) -> Result<(), String> {
    if a.sig().arity_profile() != b.sig().arity_profile() {
        return Err("function symbol counts per arity differ".into());
    }
    if a.vars().len() != b.vars().len() {
        return Err("variable counts differ".into());
    }
    match r {
        Relation::Lve | Relation::Gve if a.sig() != b.sig() => Err("function symbol sets differ".into()),
        Relation::Lfe | Relation::Gfe if var_set(a.vars()) != var_set(b.vars()) => {
            Err("variable sets differ".into())
        }
        _ => Ok(()),
    }
}

/// Extends an arity-respecting injection to a bijection `src → dst`,
/// pairing leftovers per arity in declaration order.
pub(crate) fn complete_fmap(
    mut partial: BTreeMap<Symbol, Symbol>,
    src: &Signature,
    dst: &Signature,
) -> BTreeMap<Symbol, Symbol> {
    let taken: BTreeSet<Symbol> = partial.values().cloned().collect();
    let mut free: BTreeMap<usize, Vec<Symbol>> = BTreeMap::new();
    for (g, l) in dst.iter() {
        if !taken.contains(g) {
            free.entry(l).or_default().push(g.clone());
        }
    }
    for v in free.values_mut() {
        v.reverse();
    }
    for (f, l) in src.iter() {
        if !partial.contains_key(f) {
            if let Some(g) = free.get_mut(&l).and_then(Vec::pop) {
                partial.insert(f.clone(), g);
            }
        }
    }
    partial
}

pub(crate) fn complete_vmap(
    mut partial: BTreeMap<Symbol, Symbol>,
    src: &VarSet,
    dst: &VarSet,
) -> BTreeMap<Symbol, Symbol> {
    let taken: BTreeSet<Symbol> = partial.values().cloned().collect();
    let mut free = dst.iter().filter(|y| !taken.contains(*y)).cloned();
    for x in src {
        if !partial.contains_key(x) {
            if let Some(y) = free.next() {
                partial.insert(x.clone(), y);
            }
        }
    }
    partial
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_names_round_trip() {
        for r in Relation::ALL {
            assert_eq!(r.name().parse::<Relation>().unwrap(), r);
        }
        assert_eq!("SE*".parse::<Relation>().unwrap(), Relation::SeG);
        assert!("xe".parse::<Relation>().is_err());
    }

    #[test]
    fn normal_form_requirements() {
        assert_eq!(Relation::Lve.required_normal_form(), Some(Kind::V));
        assert_eq!(Relation::Lfe.required_normal_form(), Some(Kind::F));
        assert_eq!(Relation::Le.required_normal_form(), Some(Kind::Full));
        assert_eq!(Relation::Ge.required_normal_form(), None);
        assert_eq!(Relation::SveG.normalizing_kind(), Some(Kind::F));
    }
}
