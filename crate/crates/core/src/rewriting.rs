//! One-step rewriting and fuel-bounded probes.

use std::collections::{BTreeMap, HashMap, HashSet};

use indexmap::IndexSet;
use thiserror::Error;

use crate::term::{Symbol, Term};
use crate::trs::Trs;

pub type Substitution = BTreeMap<Symbol, Term>;

/// Argument indices from the root, 1-based.
pub type Position = Vec<usize>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeVerdict {
    Proven,
    Refuted,
    /// The fuel ran out before either answer was established.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("rewriting requires a TRS meeting the standard rule restrictions")]
    Permissive,
}

/// One reported step `C[σ(ℓ)] → C[σ(r)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub rule: usize,
    pub position: Position,
    pub subst: Substitution,
    pub result: Term,
}

pub fn match_term(pattern: &Term, subject: &Term) -> Option<Substitution> {
    let mut sigma = Substitution::new();
    match_into(pattern, subject, &mut sigma).then_some(sigma)
}

fn match_into(pattern: &Term, subject: &Term, sigma: &mut Substitution) -> bool {
    match pattern {
        Term::Var(x) => match sigma.get(x) {
            Some(t) => t == subject,
            None => {
                sigma.insert(x.clone(), subject.clone());
                true
            }
        },
        Term::App(f, pa) => match subject {
            Term::App(g, sa) if f == g && pa.len() == sa.len() => {
                pa.iter().zip(sa).all(|(p, s)| match_into(p, s, sigma))
            }
            _ => false,
        },
    }
}

/// Applies a substitution; unbound variables stay in place.
pub fn substitute(t: &Term, sigma: &Substitution) -> Term {
    match t {
        Term::Var(x) => sigma.get(x).cloned().unwrap_or_else(|| t.clone()),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| substitute(a, sigma)).collect()),
    }
}

/// Every step from `t`, one entry per (rule, position) redex.
pub fn rewrite_steps(trs: &Trs, t: &Term) -> Result<Vec<Step>, RewriteError> {
    if !trs.is_strict() {
        return Err(RewriteError::Permissive);
    }
    let mut out = Vec::new();
    for position in t.positions() {
        let sub = t.subterm(&position).expect("own position");
        for (i, rule) in trs.rules().iter().enumerate() {
            if let Some(subst) = match_term(&rule.lhs, sub) {
                let result = t
                    .replace_at(&position, substitute(&rule.rhs, &subst))
                    .expect("own position");
                out.push(Step { rule: i, position: position.clone(), subst, result });
            }
        }
    }
    Ok(out)
}

/// The set of one-step successors, in discovery order.
pub fn rewrite_step_all(trs: &Trs, t: &Term) -> Result<IndexSet<Term>, RewriteError> {
    Ok(rewrite_steps(trs, t)?.into_iter().map(|s| s.result).collect())
}

/// Finite set of one-step predecessors reachable by reversing rules whose
/// left-hand variables all occur on the right; other rules have infinitely
/// many predecessors and are skipped.
fn reverse_steps(trs: &Trs, t: &Term) -> Vec<Term> {
    let mut out = Vec::new();
    for rule in trs.rules() {
        let rv = rule.rhs.vars();
        if !rule.lhs.vars().iter().all(|x| rv.contains(x)) {
            continue;
        }
        for position in t.positions() {
            let sub = t.subterm(&position).expect("own position");
            if let Some(subst) = match_term(&rule.rhs, sub) {
                out.push(t.replace_at(&position, substitute(&rule.lhs, &subst)).expect("own position"));
            }
        }
    }
    out
}

fn neighbours(trs: &Trs, t: &Term) -> Vec<Term> {
    let mut out: Vec<Term> = rewrite_step_all(trs, t).expect("checked strict").into_iter().collect();
    out.extend(reverse_steps(trs, t));
    out
}

/// Searches for a conversion `s ↔* t` of length at most `fuel` by growing
/// breadth-first balls around both ends.
///
/// Backward steps are taken only along rules whose reversal is finitely
/// branching, so `Unknown` may hide a conversion through the other rules.
pub fn convertible_bounded(trs: &Trs, s: &Term, t: &Term, fuel: usize) -> Result<ProbeVerdict, RewriteError> {
    if !trs.is_strict() {
        return Err(RewriteError::Permissive);
    }
    if s == t {
        return Ok(ProbeVerdict::Proven);
    }
    let mut dist: [HashMap<Term, usize>; 2] = [HashMap::new(), HashMap::new()];
    let mut frontier: [Vec<Term>; 2] = [vec![s.clone()], vec![t.clone()]];
    dist[0].insert(s.clone(), 0);
    dist[1].insert(t.clone(), 0);
    let mut radius = [0usize, 0usize];
    while radius[0] + radius[1] < fuel {
        let side = match (frontier[0].is_empty(), frontier[1].is_empty()) {
            (true, true) => break,
            (false, true) => 0,
            (true, false) => 1,
            _ if frontier[0].len() <= frontier[1].len() => 0,
            _ => 1,
        };
        let mut next = Vec::new();
        for u in std::mem::take(&mut frontier[side]) {
            for v in neighbours(trs, &u) {
                if dist[1 - side].contains_key(&v) {
                    return Ok(ProbeVerdict::Proven);
                }
                if !dist[side].contains_key(&v) {
                    dist[side].insert(v.clone(), radius[side] + 1);
                    next.push(v);
                }
            }
        }
        radius[side] += 1;
        frontier[side] = next;
    }
    Ok(ProbeVerdict::Unknown)
}

/// Explores all rewrite sequences from `t` depth-first.
///
/// `Refuted` when a term recurs on the current path, `Proven` when the
/// whole reachable set is exhausted within `fuel` expansions.
pub fn terminates_bounded(trs: &Trs, t: &Term, fuel: usize) -> Result<ProbeVerdict, RewriteError> {
    if !trs.is_strict() {
        return Err(RewriteError::Permissive);
    }
    // Terms whose every sequence is known to be finite.
    let mut done: HashSet<Term> = HashSet::new();
    let mut on_path: HashSet<Term> = HashSet::new();
    let mut stack: Vec<(Term, std::vec::IntoIter<Term>)> = Vec::new();
    let mut expansions = 0usize;

    let expand = |u: &Term, expansions: &mut usize| -> Option<std::vec::IntoIter<Term>> {
        if *expansions >= fuel {
            return None;
        }
        *expansions += 1;
        let succ: Vec<Term> = rewrite_step_all(trs, u).expect("checked strict").into_iter().collect();
        Some(succ.into_iter())
    };

    let Some(it) = expand(t, &mut expansions) else {
        return Ok(ProbeVerdict::Unknown);
    };
    on_path.insert(t.clone());
    stack.push((t.clone(), it));
    while let Some((_, it)) = stack.last_mut() {
        match it.next() {
            Some(v) => {
                if on_path.contains(&v) {
                    return Ok(ProbeVerdict::Refuted);
                }
                if done.contains(&v) {
                    continue;
                }
                let Some(it) = expand(&v, &mut expansions) else {
                    return Ok(ProbeVerdict::Unknown);
                };
                on_path.insert(v.clone());
                stack.push((v, it));
            }
            None => {
                let (u, _) = stack.pop().expect("non-empty");
                on_path.remove(&u);
                done.insert(u);
            }
        }
    }
    Ok(ProbeVerdict::Proven)
}
