use std::collections::{BTreeMap, HashMap};

use indexmap::{IndexMap, IndexSet};
use thiserror::Error;

use crate::term::{Rule, Symbol, Term};

pub type VarSet = IndexSet<Symbol>;

/// Function symbols with arities, in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    funcs: IndexMap<Symbol, usize>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    /// Adds a symbol; returns the previously declared arity if it differs.
    pub fn declare(&mut self, f: Symbol, arity: usize) -> Result<(), usize> {
        match self.funcs.get(&f) {
            Some(&a) if a != arity => Err(a),
            Some(_) => Ok(()),
            None => {
                self.funcs.insert(f, arity);
                Ok(())
            }
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (Symbol, usize)>>(pairs: I) -> Result<Signature, TrsError> {
        let mut sig = Signature::new();
        for (f, a) in pairs {
            sig.declare(f.clone(), a).map_err(|declared| TrsError::ArityConflict {
                symbol: f,
                declared,
                used: a,
            })?;
        }
        Ok(sig)
    }

    pub fn arity(&self, f: &Symbol) -> Option<usize> {
        self.funcs.get(f).copied()
    }

    pub fn contains(&self, f: &Symbol) -> bool {
        self.funcs.contains_key(f)
    }

    pub fn len(&self) -> usize {
        self.funcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.funcs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, usize)> + '_ {
        self.funcs.iter().map(|(f, &a)| (f, a))
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> + '_ {
        self.funcs.keys()
    }

    /// Number of symbols per arity.
    pub fn arity_profile(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &a in self.funcs.values() {
            *out.entry(a).or_insert(0) += 1;
        }
        out
    }

    /// Same symbols with the same arities, ignoring declaration order.
    pub fn same_symbols(&self, other: &Signature) -> bool {
        self == other
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TrsMode {
    #[default]
    Strict,
    /// Lifts the non-variable lhs and rhs-variable restrictions.
    Permissive,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrsError {
    #[error("symbol `{0}` is declared both as variable and function symbol")]
    VarFuncClash(Symbol),
    #[error("symbol `{0}` is not declared")]
    Undeclared(Symbol),
    #[error("arity conflict for `{symbol}`: declared {declared}, used with {used}")]
    ArityConflict { symbol: Symbol, declared: usize, used: usize },
    #[error("rule {rule}: left-hand side is a variable")]
    VariableLhs { rule: usize },
    #[error("rule {rule}: variable `{var}` of the right-hand side does not occur on the left")]
    UnboundRhsVar { rule: usize, var: Symbol },
    #[error("rules {first} and {second} are identical")]
    DuplicateRule { first: usize, second: usize },
}

/// A term rewriting system. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trs {
    sig: Signature,
    vars: VarSet,
    rules: Vec<Rule>,
    minimal: bool,
}

impl Trs {
    /// Validates and builds a TRS. Rule indices in errors are 0-based.
    pub fn new(sig: Signature, vars: VarSet, rules: Vec<Rule>, mode: TrsMode) -> Result<Trs, TrsError> {
        for x in &vars {
            if sig.contains(x) {
                return Err(TrsError::VarFuncClash(x.clone()));
            }
        }
        for (i, rule) in rules.iter().enumerate() {
            check_term(&rule.lhs, &sig, &vars)?;
            check_term(&rule.rhs, &sig, &vars)?;
            if mode == TrsMode::Strict {
                if rule.lhs.is_var() {
                    return Err(TrsError::VariableLhs { rule: i });
                }
                let lv = rule.lhs.vars();
                if let Some(x) = rule.rhs.vars().into_iter().find(|x| !lv.contains(x)) {
                    return Err(TrsError::UnboundRhsVar { rule: i, var: x });
                }
            }
        }
        let mut seen: HashMap<&Rule, usize> = HashMap::new();
        for (i, rule) in rules.iter().enumerate() {
            if let Some(&first) = seen.get(rule) {
                return Err(TrsError::DuplicateRule { first, second: i });
            }
            seen.insert(rule, i);
        }
        Ok(Trs::assemble(sig, vars, rules))
    }

    /// Builds a TRS whose symbol sets are exactly those occurring in `rules`.
    pub fn from_rules(rules: Vec<Rule>, mode: TrsMode) -> Result<Trs, TrsError> {
        let mut sig = Signature::new();
        let mut vars = VarSet::new();
        for rule in &rules {
            for (f, a) in rule.funcs() {
                sig.declare(f.clone(), a).map_err(|declared| TrsError::ArityConflict {
                    symbol: f,
                    declared,
                    used: a,
                })?;
            }
            rule.lhs.collect_vars(&mut vars);
            rule.rhs.collect_vars(&mut vars);
        }
        Trs::new(sig, vars, rules, mode)
    }

    /// Assembles a TRS without the duplicate-rule check.
    ///
    /// Template outputs of a TRS that is not in normal form contain
    /// identical rules at distinct indices; they are built through here.
    pub(crate) fn assemble(sig: Signature, vars: VarSet, rules: Vec<Rule>) -> Trs {
        let mut used_f = IndexSet::new();
        let mut used_v = IndexSet::new();
        for rule in &rules {
            for (f, _) in rule.funcs() {
                used_f.insert(f);
            }
            rule.lhs.collect_vars(&mut used_v);
            rule.rhs.collect_vars(&mut used_v);
        }
        let minimal = used_f.len() == sig.len() && used_v.len() == vars.len();
        Trs { sig, vars, rules, minimal }
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn minimal(&self) -> bool {
        self.minimal
    }

    /// Whether every rule meets the standard restrictions.
    pub fn is_strict(&self) -> bool {
        self.rules.iter().all(Rule::is_strict)
    }

    /// Largest term length over all rule sides.
    pub fn size(&self) -> usize {
        self.rules
            .iter()
            .map(|r| r.lhs.len().max(r.rhs.len()))
            .max()
            .unwrap_or(0)
    }

    /// Function symbols occurring in rules, in declaration order.
    pub fn used_funcs(&self) -> Signature {
        let mut used = IndexSet::new();
        for rule in &self.rules {
            for (f, _) in rule.funcs() {
                used.insert(f);
            }
        }
        let mut sig = Signature::new();
        for (f, a) in self.sig.iter() {
            if used.contains(f) {
                sig.declare(f.clone(), a).expect("fresh");
            }
        }
        sig
    }

    /// Variables occurring in rules, in declaration order.
    pub fn used_vars(&self) -> VarSet {
        let mut used = IndexSet::new();
        for rule in &self.rules {
            rule.lhs.collect_vars(&mut used);
            rule.rhs.collect_vars(&mut used);
        }
        self.vars.iter().filter(|x| used.contains(*x)).cloned().collect()
    }

    /// Same rules with symbol sets cut down to what occurs in them.
    pub fn minimized(&self) -> Trs {
        Trs::assemble(self.used_funcs(), self.used_vars(), self.rules.clone())
    }

    /// Same rules over extended symbol sets.
    pub fn with_symbols(&self, sig: Signature, vars: VarSet) -> Result<Trs, TrsError> {
        for (f, a) in self.sig.iter() {
            match sig.arity(f) {
                Some(b) if a == b => {}
                Some(b) => {
                    return Err(TrsError::ArityConflict { symbol: f.clone(), declared: b, used: a })
                }
                None if self.used_funcs().contains(f) => return Err(TrsError::Undeclared(f.clone())),
                None => {}
            }
        }
        for x in self.used_vars() {
            if !vars.contains(&x) {
                return Err(TrsError::Undeclared(x));
            }
        }
        for x in &vars {
            if sig.contains(x) {
                return Err(TrsError::VarFuncClash(x.clone()));
            }
        }
        Ok(Trs::assemble(sig, vars, self.rules.clone()))
    }

    /// Keeps the rules at the given indices, in the given order.
    pub fn select_rules(&self, keep: &[usize]) -> Trs {
        let rules = keep.iter().map(|&i| self.rules[i].clone()).collect();
        Trs::assemble(self.sig.clone(), self.vars.clone(), rules)
    }

    /// True if some pair of distinct indices holds identical rules.
    pub fn has_duplicate_rules(&self) -> bool {
        let set: std::collections::HashSet<&Rule> = self.rules.iter().collect();
        set.len() != self.rules.len()
    }
}

fn check_term(t: &Term, sig: &Signature, vars: &VarSet) -> Result<(), TrsError> {
    match t {
        Term::Var(x) => {
            if vars.contains(x) {
                Ok(())
            } else {
                Err(TrsError::Undeclared(x.clone()))
            }
        }
        Term::App(f, args) => {
            if vars.contains(f) {
                return Err(TrsError::VarFuncClash(f.clone()));
            }
            match sig.arity(f) {
                None => return Err(TrsError::Undeclared(f.clone())),
                Some(a) if a != args.len() => {
                    return Err(TrsError::ArityConflict {
                        symbol: f.clone(),
                        declared: a,
                        used: args.len(),
                    })
                }
                Some(_) => {}
            }
            args.iter().try_for_each(|a| check_term(a, sig, vars))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(l: Term, r: Term) -> Rule {
        Rule::new(l, r)
    }

    #[test]
    fn minimal_flag() {
        let rules = vec![r(Term::app("f", vec![Term::var("x")]), Term::constant("c"))];
        let t = Trs::from_rules(rules.clone(), TrsMode::Strict).unwrap();
        assert!(t.minimal());
        let mut sig = t.sig().clone();
        sig.declare(Symbol::from_static("d"), 0).unwrap();
        let t2 = Trs::new(sig, t.vars().clone(), rules, TrsMode::Strict).unwrap();
        assert!(!t2.minimal());
        assert_eq!(t2.minimized(), t);
    }

    #[test]
    fn rejects_violations() {
        let x = Term::var("x");
        let lhs_var = vec![r(x.clone(), Term::app("f", vec![x.clone()]))];
        assert_eq!(
            Trs::from_rules(lhs_var.clone(), TrsMode::Strict),
            Err(TrsError::VariableLhs { rule: 0 })
        );
        assert!(Trs::from_rules(lhs_var, TrsMode::Permissive).is_ok());
        let dup = vec![
            r(Term::app("f", vec![x.clone()]), x.clone()),
            r(Term::app("f", vec![x.clone()]), x.clone()),
        ];
        assert_eq!(
            Trs::from_rules(dup, TrsMode::Strict),
            Err(TrsError::DuplicateRule { first: 0, second: 1 })
        );
        let arity = vec![r(Term::app("f", vec![x.clone()]), Term::app("f", vec![x.clone(), x.clone()]))];
        assert!(matches!(
            Trs::from_rules(arity, TrsMode::Strict),
            Err(TrsError::ArityConflict { .. })
        ));
    }

    #[test]
    fn profile_counts_arities() {
        let sig = Signature::from_pairs([
            (Symbol::from_static("c"), 0),
            (Symbol::from_static("g"), 1),
            (Symbol::from_static("h"), 1),
            (Symbol::from_static("f"), 2),
        ])
        .unwrap();
        let p = sig.arity_profile();
        assert_eq!(p.get(&0), Some(&1));
        assert_eq!(p.get(&1), Some(&2));
        assert_eq!(p.get(&2), Some(&1));
    }
}
