use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::term::{Rule, Symbol, Term};
use crate::trs::{Signature, Trs, VarSet};

/// Which symbols a renaming may touch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    /// Variables only.
    V,
    /// Function symbols only.
    F,
    /// Both.
    Full,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::V => "v",
            Kind::F => "f",
            Kind::Full => "full",
        })
    }
}

impl FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Kind, String> {
        match s.to_ascii_lowercase().as_str() {
            "v" => Ok(Kind::V),
            "f" => Ok(Kind::F),
            "full" => Ok(Kind::Full),
            _ => Err(format!("unknown kind `{s}` (expected v, f or full)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("symbol `{0}` is outside the domain")]
    OutsideDomain(Symbol),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("map is not injective: two symbols map to `{0}`")]
    NotInjective(Symbol),
    #[error("arity mismatch: `{from}`/{from_arity} mapped to `{to}`/{to_arity}")]
    Arity { from: Symbol, from_arity: usize, to: Symbol, to_arity: usize },
}

/// A pair of bijections renaming function symbols and variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermIso {
    pub fmap: BTreeMap<Symbol, Symbol>,
    pub vmap: BTreeMap<Symbol, Symbol>,
}

impl TermIso {
    pub fn new(fmap: BTreeMap<Symbol, Symbol>, vmap: BTreeMap<Symbol, Symbol>) -> TermIso {
        TermIso { fmap, vmap }
    }

    pub fn identity(sig: &Signature, vars: &VarSet) -> TermIso {
        TermIso {
            fmap: sig.symbols().map(|f| (f.clone(), f.clone())).collect(),
            vmap: vars.iter().map(|x| (x.clone(), x.clone())).collect(),
        }
    }

    pub fn identity_on(trs: &Trs) -> TermIso {
        TermIso::identity(trs.sig(), trs.vars())
    }

    pub fn apply(&self, t: &Term) -> Result<Term, IsoError> {
        match t {
            Term::Var(x) => self
                .vmap
                .get(x)
                .map(|y| Term::Var(y.clone()))
                .ok_or_else(|| IsoError::OutsideDomain(x.clone())),
            Term::App(f, args) => {
                let g = self.fmap.get(f).ok_or_else(|| IsoError::OutsideDomain(f.clone()))?;
                let args = args.iter().map(|a| self.apply(a)).collect::<Result<_, _>>()?;
                Ok(Term::App(g.clone(), args))
            }
        }
    }

    pub fn apply_rule(&self, r: &Rule) -> Result<Rule, IsoError> {
        Ok(Rule::new(self.apply(&r.lhs)?, self.apply(&r.rhs)?))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &TermIso) -> Result<TermIso, IsoError> {
        let check = |outer: &BTreeMap<Symbol, Symbol>, inner: &BTreeMap<Symbol, Symbol>, what: &str| {
            let dom: BTreeSet<&Symbol> = outer.keys().collect();
            let cod: BTreeSet<&Symbol> = inner.values().collect();
            if dom != cod {
                return Err(IsoError::DomainMismatch(format!(
                    "{what}: codomain of the inner map differs from the domain of the outer map"
                )));
            }
            Ok(inner.iter().map(|(k, v)| (k.clone(), outer[v].clone())).collect())
        };
        Ok(TermIso {
            fmap: check(&self.fmap, &other.fmap, "functions")?,
            vmap: check(&self.vmap, &other.vmap, "variables")?,
        })
    }

    pub fn invert(&self) -> Result<TermIso, IsoError> {
        let inv = |m: &BTreeMap<Symbol, Symbol>| {
            let mut out = BTreeMap::new();
            for (k, v) in m {
                if out.insert(v.clone(), k.clone()).is_some() {
                    return Err(IsoError::NotInjective(v.clone()));
                }
            }
            Ok(out)
        };
        Ok(TermIso { fmap: inv(&self.fmap)?, vmap: inv(&self.vmap)? })
    }

    /// Checks that this is an arity-respecting bijection between the given
    /// source and target symbol sets.
    pub fn validate(
        &self,
        src_sig: &Signature,
        src_vars: &VarSet,
        dst_sig: &Signature,
        dst_vars: &VarSet,
    ) -> Result<(), IsoError> {
        let src_f: BTreeSet<&Symbol> = src_sig.symbols().collect();
        let dom_f: BTreeSet<&Symbol> = self.fmap.keys().collect();
        if src_f != dom_f {
            return Err(IsoError::DomainMismatch("function map domain differs from source signature".into()));
        }
        let dst_f: BTreeSet<&Symbol> = dst_sig.symbols().collect();
        let img_f: BTreeSet<&Symbol> = self.fmap.values().collect();
        if img_f.len() != self.fmap.len() {
            return Err(self.invert().err().unwrap_or(IsoError::DomainMismatch("function map".into())));
        }
        if dst_f != img_f {
            return Err(IsoError::DomainMismatch("function map image differs from target signature".into()));
        }
        for (f, g) in &self.fmap {
            let (a, b) = (src_sig.arity(f).unwrap(), dst_sig.arity(g).unwrap());
            if a != b {
                return Err(IsoError::Arity { from: f.clone(), from_arity: a, to: g.clone(), to_arity: b });
            }
        }
        let src_v: BTreeSet<&Symbol> = src_vars.iter().collect();
        let dom_v: BTreeSet<&Symbol> = self.vmap.keys().collect();
        if src_v != dom_v {
            return Err(IsoError::DomainMismatch("variable map domain differs from source variables".into()));
        }
        let img_v: BTreeSet<&Symbol> = self.vmap.values().collect();
        if img_v.len() != self.vmap.len() {
            return Err(self.invert().err().unwrap_or(IsoError::DomainMismatch("variable map".into())));
        }
        let dst_v: BTreeSet<&Symbol> = dst_vars.iter().collect();
        if dst_v != img_v {
            return Err(IsoError::DomainMismatch("variable map image differs from target variables".into()));
        }
        Ok(())
    }

    /// Identity on function symbols.
    pub fn is_f_invariant(&self) -> bool {
        self.fmap.iter().all(|(k, v)| k == v)
    }

    /// Identity on variables.
    pub fn is_v_invariant(&self) -> bool {
        self.vmap.iter().all(|(k, v)| k == v)
    }
}

impl fmt::Display for TermIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        f.write_str("{")?;
        for (k, v) in self.fmap.iter().chain(&self.vmap) {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{k}↦{v}")?;
        }
        f.write_str("}")
    }
}

pub fn apply_term_iso(iso: &TermIso, t: &Term) -> Result<Term, IsoError> {
    iso.apply(t)
}

pub fn compose_iso(a: &TermIso, b: &TermIso) -> Result<TermIso, IsoError> {
    a.compose(b)
}

pub fn invert_iso(a: &TermIso) -> Result<TermIso, IsoError> {
    a.invert()
}

/// Partial injective map built up during simultaneous matching.
#[derive(Default)]
struct Partial {
    fwd: BTreeMap<Symbol, Symbol>,
    bwd: BTreeMap<Symbol, Symbol>,
}

impl Partial {
    fn bind(&mut self, a: &Symbol, b: &Symbol) -> bool {
        match (self.fwd.get(a), self.bwd.get(b)) {
            (Some(x), _) if x != b => false,
            (_, Some(y)) if y != a => false,
            (Some(_), Some(_)) => true,
            _ => {
                self.fwd.insert(a.clone(), b.clone());
                self.bwd.insert(b.clone(), a.clone());
                true
            }
        }
    }
}

fn match_simultaneous(a: &Term, b: &Term, kind: Kind, fm: &mut Partial, vm: &mut Partial) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => {
            if kind == Kind::F && x != y {
                return false;
            }
            vm.bind(x, y)
        }
        (Term::App(f, fa), Term::App(g, ga)) => {
            if fa.len() != ga.len() || (kind == Kind::V && f != g) || !fm.bind(f, g) {
                return false;
            }
            fa.iter().zip(ga).all(|(s, t)| match_simultaneous(s, t, kind, fm, vm))
        }
        _ => false,
    }
}

/// Extends a partial arity-respecting injection on `sig` to a bijection,
/// pairing leftover symbols per arity in declaration order.
fn complete_funcs(partial: BTreeMap<Symbol, Symbol>, sig: &Signature) -> BTreeMap<Symbol, Symbol> {
    let used: BTreeSet<Symbol> = partial.values().cloned().collect();
    let mut free: BTreeMap<usize, Vec<Symbol>> = BTreeMap::new();
    for (f, a) in sig.iter() {
        if !used.contains(f) {
            free.entry(a).or_default().push(f.clone());
        }
    }
    let mut free: BTreeMap<usize, std::vec::IntoIter<Symbol>> =
        free.into_iter().map(|(a, v)| (a, v.into_iter())).collect();
    let mut out = partial;
    for (f, a) in sig.iter() {
        if !out.contains_key(f) {
            let g = free.get_mut(&a).and_then(Iterator::next).expect("arity counts agree");
            out.insert(f.clone(), g);
        }
    }
    out
}

fn complete_vars(partial: BTreeMap<Symbol, Symbol>, vars: &VarSet) -> BTreeMap<Symbol, Symbol> {
    let used: BTreeSet<Symbol> = partial.values().cloned().collect();
    let mut free = vars.iter().filter(|x| !used.contains(*x)).cloned();
    let mut out = partial;
    for x in vars {
        if !out.contains_key(x) {
            out.insert(x.clone(), free.next().expect("same size"));
        }
    }
    out
}

/// Decides whether two rules over the same symbol sets are equivalent up
/// to renaming of the given kind; returns a witness mapping `a` onto `b`.
pub fn rule_equivalent(a: &Rule, b: &Rule, kind: Kind, sig: &Signature, vars: &VarSet) -> Option<TermIso> {
    let mut fm = Partial::default();
    let mut vm = Partial::default();
    if !match_simultaneous(&a.lhs, &b.lhs, kind, &mut fm, &mut vm)
        || !match_simultaneous(&a.rhs, &b.rhs, kind, &mut fm, &mut vm)
    {
        return None;
    }
    let fmap = match kind {
        Kind::V => TermIso::identity(sig, vars).fmap,
        _ => complete_funcs(fm.fwd, sig),
    };
    let vmap = match kind {
        Kind::F => TermIso::identity(sig, vars).vmap,
        _ => complete_vars(vm.fwd, vars),
    };
    Some(TermIso { fmap, vmap })
}

/// The rule with every symbol a renaming of this kind may change replaced
/// by a placeholder. Equivalent rules share it.
fn skeleton(t: &Term, kind: Kind, hole: &Symbol) -> Term {
    match t {
        Term::Var(x) => Term::Var(if kind == Kind::F { x.clone() } else { hole.clone() }),
        Term::App(f, args) => Term::App(
            if kind == Kind::V { f.clone() } else { hole.clone() },
            args.iter().map(|a| skeleton(a, kind, hole)).collect(),
        ),
    }
}

/// The first pair (in lexicographic index order) of distinct
/// kind-equivalent rules, with a witness.
pub fn normal_form_violation(trs: &Trs, kind: Kind) -> Option<(usize, usize, TermIso)> {
    let rules = trs.rules();
    let hole = Symbol::from_static("_");
    let mut buckets: HashMap<Rule, Vec<usize>> = HashMap::new();
    for (i, r) in rules.iter().enumerate() {
        let key = Rule::new(skeleton(&r.lhs, kind, &hole), skeleton(&r.rhs, kind, &hole));
        buckets.entry(key).or_default().push(i);
    }
    let mut best: Option<(usize, usize, TermIso)> = None;
    for bucket in buckets.values() {
        'outer: for (p, &i) in bucket.iter().enumerate() {
            for &j in &bucket[p + 1..] {
                if best.as_ref().is_some_and(|(bi, bj, _)| (*bi, *bj) < (i, j)) {
                    break 'outer;
                }
                if let Some(w) = rule_equivalent(&rules[i], &rules[j], kind, trs.sig(), trs.vars()) {
                    best = Some((i, j, w));
                    break 'outer;
                }
            }
        }
    }
    best
}

pub fn is_normal_form(trs: &Trs, kind: Kind) -> bool {
    normal_form_violation(trs, kind).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_trs;
    use crate::trs::TrsMode;

    fn sym(s: &str) -> Symbol {
        Symbol::from_static(s)
    }

    fn map(pairs: &[(&str, &str)]) -> BTreeMap<Symbol, Symbol> {
        pairs.iter().map(|(a, b)| (sym(a), sym(b))).collect()
    }

    fn trs1() -> Trs {
        parse_trs(
            "(VAR x y)(RULES f(g(x),y) -> h(x)  f(h(x),y) -> g(x)  f(g(y),x) -> h(y))",
            TrsMode::Strict,
        )
        .unwrap()
    }

    #[test]
    fn swap_g_h_on_example_term() {
        let phi2 = TermIso::new(map(&[("h", "g"), ("g", "h"), ("f", "f")]), map(&[("x", "x"), ("y", "y")]));
        let t = Term::app("f", vec![Term::app("g", vec![Term::var("x")]), Term::var("y")]);
        assert_eq!(phi2.apply(&t).unwrap().to_string(), "f(h(x),y)");
        let outside = Term::app("k", vec![]);
        assert_eq!(phi2.apply(&outside), Err(IsoError::OutsideDomain(sym("k"))));
    }

    #[test]
    fn composition_swaps_both() {
        let phi1 = TermIso::new(map(&[("f", "f"), ("g", "g"), ("h", "h")]), map(&[("x", "y"), ("y", "x")]));
        let phi2 = TermIso::new(map(&[("f", "f"), ("g", "h"), ("h", "g")]), map(&[("x", "x"), ("y", "y")]));
        let both = phi1.compose(&phi2).unwrap();
        assert_eq!(both.fmap, map(&[("f", "f"), ("g", "h"), ("h", "g")]));
        assert_eq!(both.vmap, map(&[("x", "y"), ("y", "x")]));
        let t = trs1();
        let r = &t.rules()[0];
        assert_eq!(both.apply_rule(r).unwrap().to_string(), "f(h(y),x) -> g(y)");
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let phi = TermIso::new(map(&[("f", "g"), ("g", "f")]), map(&[("x", "z")]));
        let id = phi.compose(&phi.invert().unwrap()).unwrap();
        assert_eq!(id.fmap, map(&[("f", "f"), ("g", "g")]));
        assert_eq!(id.vmap, map(&[("z", "z")]));
        assert!(matches!(phi.compose(&phi), Err(IsoError::DomainMismatch(_))));
    }

    #[test]
    fn example_equivalences() {
        let t = trs1();
        let r = t.rules();
        let w = rule_equivalent(&r[0], &r[2], Kind::V, t.sig(), t.vars()).unwrap();
        assert_eq!(w.vmap, map(&[("x", "y"), ("y", "x")]));
        assert!(w.is_f_invariant());
        let w = rule_equivalent(&r[0], &r[1], Kind::F, t.sig(), t.vars()).unwrap();
        assert_eq!(w.fmap, map(&[("f", "f"), ("g", "h"), ("h", "g")]));
        assert!(w.is_v_invariant());
        assert!(!is_normal_form(&t, Kind::V));
        assert!(!is_normal_form(&t, Kind::F));
    }

    #[test]
    fn non_linear_is_not_equivalent() {
        let t = parse_trs("(VAR x y)(RULES f(x,y) -> c  f(x,x) -> c)", TrsMode::Strict).unwrap();
        let r = t.rules();
        assert!(rule_equivalent(&r[0], &r[1], Kind::Full, t.sig(), t.vars()).is_none());
        assert!(rule_equivalent(&r[1], &r[0], Kind::Full, t.sig(), t.vars()).is_none());
    }

    #[test]
    fn simple_normal_forms() {
        let t = parse_trs("(VAR x y)(RULES f(x,y) -> c  g(x) -> c)", TrsMode::Strict).unwrap();
        for k in [Kind::V, Kind::F, Kind::Full] {
            assert!(is_normal_form(&t, k));
        }
        let one = parse_trs("(VAR x)(RULES f(x) -> x)", TrsMode::Strict).unwrap();
        assert!(is_normal_form(&one, Kind::Full));
    }

    #[test]
    fn validation_catches_arity() {
        let t = parse_trs("(VAR x)(RULES f(x) -> c)", TrsMode::Strict).unwrap();
        let bad = TermIso::new(map(&[("f", "c"), ("c", "f")]), map(&[("x", "x")]));
        assert!(matches!(
            bad.validate(t.sig(), t.vars(), t.sig(), t.vars()),
            Err(IsoError::Arity { .. })
        ));
        let good = TermIso::identity_on(&t);
        assert!(good.validate(t.sig(), t.vars(), t.sig(), t.vars()).is_ok());
    }
}
