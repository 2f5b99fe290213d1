use indexmap::IndexSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{verify_witness, DecideError, Relation, Witness};
use crate::iso::TermIso;
use crate::rewriting::{rewrite_step_all, substitute, Substitution};
use crate::term::{Symbol, Term};
use crate::trs::Trs;

pub const SAMPLE_COUNT: usize = 32;
pub const SAMPLE_DEPTH: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Index of the family member (0 for a global witness).
    pub member: usize,
    pub sample: Term,
    /// Successors of the sample, mapped by the member, that the second TRS
    /// does not produce from the mapped sample.
    pub missing: Vec<Term>,
    /// Successors of the mapped sample under the second TRS with no
    /// preimage among the successors of the sample.
    pub extra: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemanticReport {
    pub relation: Relation,
    pub samples: usize,
    pub violations: Vec<Violation>,
}

fn random_term(rng: &mut ChaCha8Rng, trs: &Trs, depth: usize) -> Option<Term> {
    let funcs: Vec<(&Symbol, usize)> = trs.sig().iter().collect();
    let leaves: Vec<Term> = trs
        .vars()
        .iter()
        .map(|x| Term::Var(x.clone()))
        .chain(funcs.iter().filter(|(_, l)| *l == 0).map(|(f, _)| Term::App((*f).clone(), vec![])))
        .collect();
    fn go(rng: &mut ChaCha8Rng, funcs: &[(&Symbol, usize)], leaves: &[Term], depth: usize) -> Option<Term> {
        let inner: Vec<&(&Symbol, usize)> = funcs.iter().filter(|(_, l)| *l > 0).collect();
        if depth == 0 || inner.is_empty() || (!leaves.is_empty() && rng.gen_bool(0.3)) {
            return leaves.choose(rng).cloned();
        }
        let (f, l) = **inner.choose(rng)?;
        let args = (0..l).map(|_| go(rng, funcs, leaves, depth - 1)).collect::<Option<Vec<_>>>()?;
        Some(Term::App(f.clone(), args))
    }
    go(rng, &funcs, &leaves, depth)
}

/// Seeded sample terms over the symbols of `trs`. Half of them are
/// instances of left-hand sides so that rules actually fire.
pub fn sample_terms(trs: &Trs, count: usize, depth: usize, seed: u64) -> Vec<Term> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < 4 * count {
        attempts += 1;
        let lhs = trs.rules().choose(&mut rng).map(|r| r.lhs.clone());
        let t = match lhs {
            Some(l) if rng.gen_bool(0.5) => {
                let mut sigma = Substitution::new();
                for x in l.vars() {
                    match random_term(&mut rng, trs, 1) {
                        Some(s) => sigma.insert(x, s),
                        None => sigma.insert(x.clone(), Term::Var(x)),
                    };
                }
                Some(substitute(&l, &sigma))
            }
            _ => random_term(&mut rng, trs, depth),
        };
        if let Some(t) = t {
            out.push(t);
        }
    }
    out
}

/// Compares one-step successors of every sample under `a`, mapped by each
/// renaming, with the successors of the mapped sample under `b`.
pub fn step_violations(
    a: &Trs,
    b: &Trs,
    isos: &[TermIso],
    samples: &[Term],
) -> Result<Vec<Violation>, DecideError> {
    let rw = |e: crate::rewriting::RewriteError| DecideError::Precondition(e.to_string());
    let mut out = Vec::new();
    for (member, phi) in isos.iter().enumerate() {
        for s in samples {
            let image = phi.apply(s).map_err(|e| DecideError::Precondition(e.to_string()))?;
            let from_a: IndexSet<Term> = rewrite_step_all(a, s)
                .map_err(rw)?
                .iter()
                .map(|t| phi.apply(t))
                .collect::<Result<_, _>>()
                .map_err(|e| DecideError::Precondition(e.to_string()))?;
            let from_b = rewrite_step_all(b, &image).map_err(rw)?;
            let missing: Vec<Term> = from_a.iter().filter(|t| !from_b.contains(*t)).cloned().collect();
            let extra: Vec<Term> = from_b.iter().filter(|t| !from_a.contains(*t)).cloned().collect();
            if !missing.is_empty() || !extra.is_empty() {
                out.push(Violation { member, sample: s.clone(), missing, extra });
            }
        }
    }
    Ok(out)
}

/// Runtime check that a verified witness preserves one-step rewriting.
pub fn check_semantic_compatibility(
    a: &Trs,
    b: &Trs,
    r: Relation,
    w: &Witness,
    seed: u64,
) -> Result<SemanticReport, DecideError> {
    if !matches!(r, Relation::Ge | Relation::Gve | Relation::Gfe | Relation::Se | Relation::Lve) {
        return Err(DecideError::Precondition(format!("{r} witnesses need not preserve rewriting")));
    }
    if !verify_witness(a, b, r, w)? {
        return Err(DecideError::Precondition("witness does not verify".into()));
    }
    let samples = sample_terms(a, SAMPLE_COUNT, SAMPLE_DEPTH, seed);
    let violations = step_violations(a, b, w.members(), &samples)?;
    Ok(SemanticReport { relation: r, samples: samples.len(), violations })
}
