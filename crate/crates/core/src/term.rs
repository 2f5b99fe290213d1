use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// An identifier naming a function symbol or a variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid identifier `{0}`")]
pub struct InvalidSymbol(pub String);

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Symbol {
    pub fn new(name: &str) -> Result<Symbol, InvalidSymbol> {
        if is_identifier(name) {
            Ok(Symbol(Arc::from(name)))
        } else {
            Err(InvalidSymbol(name.to_string()))
        }
    }

    /// Builds a symbol from a name known to be a valid identifier.
    ///
    /// Panics on invalid input; meant for literals and generated names.
    pub fn from_static(name: &str) -> Symbol {
        Symbol::new(name).expect("valid identifier")
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Symbol, D::Error> {
        let s = String::deserialize(d)?;
        Symbol::new(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Symbol),
    App(Symbol, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Symbol::from_static(name))
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(Symbol::from_static(name), args)
    }

    pub fn constant(name: &str) -> Term {
        Term::app(name, Vec::new())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn head(&self) -> &Symbol {
        match self {
            Term::Var(x) => x,
            Term::App(f, _) => f,
        }
    }

    /// Number of symbol occurrences.
    pub fn len(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::len).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    /// Variables in order of first occurrence (pre-order).
    pub fn vars(&self) -> IndexSet<Symbol> {
        let mut out = IndexSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_vars(&self, out: &mut IndexSet<Symbol>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Function symbols with their arities in order of first occurrence.
    pub fn funcs(&self) -> Vec<(Symbol, usize)> {
        let mut out = Vec::new();
        self.collect_funcs(&mut out);
        out
    }

    pub fn collect_funcs(&self, out: &mut Vec<(Symbol, usize)>) {
        if let Term::App(f, args) = self {
            if !out.iter().any(|(g, _)| g == f) {
                out.push((f.clone(), args.len()));
            }
            args.iter().for_each(|a| a.collect_funcs(out));
        }
    }

    /// Subterm at a position given as 1-based argument indices.
    pub fn subterm(&self, pos: &[usize]) -> Option<&Term> {
        match pos.split_first() {
            None => Some(self),
            Some((&i, rest)) => match self {
                Term::App(_, args) if i >= 1 && i <= args.len() => args[i - 1].subterm(rest),
                _ => None,
            },
        }
    }

    /// Replaces the subterm at `pos`; `None` if the position is invalid.
    pub fn replace_at(&self, pos: &[usize], with: Term) -> Option<Term> {
        match pos.split_first() {
            None => Some(with),
            Some((&i, rest)) => match self {
                Term::App(f, args) if i >= 1 && i <= args.len() => {
                    let mut args = args.clone();
                    args[i - 1] = args[i - 1].replace_at(rest, with)?;
                    Some(Term::App(f.clone(), args))
                }
                _ => None,
            },
        }
    }

    /// All positions in pre-order.
    pub fn positions(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn walk(t: &Term, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(cur.clone());
            if let Term::App(_, args) = t {
                for (i, a) in args.iter().enumerate() {
                    cur.push(i + 1);
                    walk(a, cur, out);
                    cur.pop();
                }
            }
        }
        walk(self, &mut cur, &mut out);
        out
    }

    /// The canonical total order: by length, then pre-order symbol
    /// comparison with functions before variables.
    pub fn canonical_cmp(&self, other: &Term) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.preorder_cmp(other))
    }

    fn preorder_cmp(&self, other: &Term) -> Ordering {
        match (self, other) {
            (Term::App(..), Term::Var(_)) => Ordering::Less,
            (Term::Var(_), Term::App(..)) => Ordering::Greater,
            (Term::Var(x), Term::Var(y)) => x.cmp(y),
            (Term::App(f, fa), Term::App(g, ga)) => f
                .cmp(g)
                .then(fa.len().cmp(&ga.len()))
                .then_with(|| {
                    fa.iter()
                        .zip(ga)
                        .map(|(a, b)| a.preorder_cmp(b))
                        .find(|o| o.is_ne())
                        .unwrap_or(Ordering::Equal)
                }),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => write!(f, "{x}"),
            Term::App(g, args) if args.is_empty() => write!(f, "{g}"),
            Term::App(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub lhs: Term,
    pub rhs: Term,
}

impl Rule {
    pub fn new(lhs: Term, rhs: Term) -> Rule {
        Rule { lhs, rhs }
    }

    pub fn len(&self) -> usize {
        self.lhs.len() + self.rhs.len()
    }

    pub fn canonical_cmp(&self, other: &Rule) -> Ordering {
        self.lhs
            .canonical_cmp(&other.lhs)
            .then_with(|| self.rhs.canonical_cmp(&other.rhs))
    }

    /// Variables in first-occurrence order, lhs before rhs.
    pub fn vars(&self) -> IndexSet<Symbol> {
        let mut out = self.lhs.vars();
        self.rhs.collect_vars(&mut out);
        out
    }

    /// Function symbols with arities in first-occurrence order, lhs before rhs.
    pub fn funcs(&self) -> Vec<(Symbol, usize)> {
        let mut out = self.lhs.funcs();
        self.rhs.collect_funcs(&mut out);
        out
    }

    pub fn is_strict(&self) -> bool {
        let lv = self.lhs.vars();
        !self.lhs.is_var() && self.rhs.vars().iter().all(|x| lv.contains(x))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
