//! Runs every acceptance criterion and prints one PASS/FAIL line each.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use trsiso::deciders::{
    brute_force_decide, check_semantic_compatibility, decide_any, decide_global, decide_local, decide_standard,
    step_violations, verify_witness, DecideError, GlobalKind, LocalKind, OracleError, Relation, StandardKind, Witness,
};
use trsiso::graphs::{digraph_iso_bruteforce, graph_to_trs_funcs, graph_to_trs_vars, parse_graph, AnyGraph};
use trsiso::random::{
    perturb, permuted_digraph, random_digraph, random_normal_form_trs, random_pair, random_signature, random_trs,
    random_vars, with_equivalent_copies, GenParams, PairShape,
};
use trsiso::rewriting::{terminates_bounded, ProbeVerdict};
use trsiso::templates::{f_template, full_template, v_template};
use trsiso::{is_normal_form, parse_term, Kind, Symbol, TermIso, Trs};

type Outcome = Result<String, String>;

/// Positive verdicts collected for the witness and semantic criteria.
#[derive(Default)]
struct Positives {
    /// (criterion, first, second, relation, witness)
    all: Vec<(u8, Trs, Trs, Relation, Witness)>,
}

impl Positives {
    fn record(&mut self, criterion: u8, a: &Trs, b: &Trs, r: Relation, w: &Witness) {
        self.all.push((criterion, a.clone(), b.clone(), r, w.clone()));
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn decide(a: &Trs, b: &Trs, r: Relation, pos: &mut Positives, criterion: u8) -> Result<Option<bool>, String> {
    match decide_any(a, b, r) {
        Ok(d) => {
            if let Some(w) = &d.witness {
                pos.record(criterion, a, b, r, w);
            }
            Ok(Some(d.is_iso()))
        }
        Err(DecideError::NormalForm { .. }) => Ok(None),
        Err(e) => Err(format!("{r}: {e}")),
    }
}

fn c1(pos: &mut Positives) -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for (row, yes, no) in STRICTNESS {
        let (a, b) = strictness_pair(row);
        let (yes, no): (Relation, Relation) = (yes.parse().unwrap(), no.parse().unwrap());
        check(decide(&a, &b, yes, pos, 1)? == Some(true), || format!("row {row}: {yes} should hold"))?;
        check(decide(&a, &b, no, pos, 1)? == Some(false), || format!("row {row}: {no} should fail"))?;
        n += 2;
    }
    let t = start.elapsed();
    check(t < Duration::from_secs(1), || format!("took {t:?}"))?;
    Ok(format!("{n} assertions exact in {t:?}"))
}

fn c2(pos: &mut Positives) -> Outcome {
    let mut n = 0;
    for (x, y, r, holds) in EXAMPLE_CLAIMS {
        let r: Relation = r.parse().unwrap();
        let got = decide(&example(x), &example(y), r, pos, 2)?;
        check(got == Some(holds), || format!("{x} {r} {y}: expected {holds}, got {got:?}"))?;
        n += 1;
    }
    Ok(format!("{n} claims reproduced"))
}

fn c3(pos: &mut Positives) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let (mut checked, mut skipped, mut positives) = (0, 0, 0);
    for i in 0..500 {
        let p = GenParams {
            funcs: rng.gen_range(2..=6),
            vars: rng.gen_range(1..=4),
            max_rules: 3,
            max_depth: 3,
            max_arity: 2,
        };
        let shape = PairShape::random(&mut rng);
        let (a, b) = random_pair(&mut rng, &p, shape);
        for r in Relation::UNGENERALISED {
            let fast = decide(&a, &b, r, pos, 3)?;
            let slow = match brute_force_decide(&a, &b, r) {
                Ok(v) => Some(v),
                Err(OracleError::NormalForm(_)) => None,
                Err(e) => return Err(format!("pair {i}: {e}")),
            };
            check(fast == slow, || format!("pair {i} {r}: decider {fast:?}, oracle {slow:?}\n{a:?}\n{b:?}"))?;
            match fast {
                Some(v) => {
                    checked += 1;
                    positives += v as usize;
                }
                None => skipped += 1,
            }
        }
    }
    let t = start.elapsed();
    check(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("500 pairs, {checked} decisions agree ({positives} positive), {skipped} skipped by both, {t:?}"))
}

/// Pairs where both sides are in full normal form.
fn normal_form_pairs(seed: u64, n: usize) -> Vec<(Trs, Trs)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = GenParams { funcs: 5, vars: 3, max_rules: 3, max_depth: 3, max_arity: 2 };
    let mut out = Vec::new();
    while out.len() < n {
        let shape = PairShape::random(&mut rng);
        let (a, b) = random_pair(&mut rng, &p, shape);
        if is_normal_form(&a, Kind::Full) && is_normal_form(&b, Kind::Full) {
            out.push((a, b));
        }
    }
    out
}

const ARROWS: [(Relation, Relation); 10] = [
    (Relation::Gfe, Relation::Lfe),
    (Relation::Gfe, Relation::Ge),
    (Relation::Gve, Relation::Ge),
    (Relation::Gve, Relation::Lve),
    (Relation::Lfe, Relation::Sve),
    (Relation::Ge, Relation::Sve),
    (Relation::Ge, Relation::Se),
    (Relation::Lve, Relation::Se),
    (Relation::Sve, Relation::Le),
    (Relation::Se, Relation::Le),
];

fn c4(pos: &mut Positives) -> Outcome {
    let mut fired = 0;
    for (i, (a, b)) in normal_form_pairs(4, 200).iter().enumerate() {
        let mut v = std::collections::HashMap::new();
        for r in Relation::UNGENERALISED {
            let got = decide(a, b, r, pos, 4)?.ok_or_else(|| format!("pair {i}: {r} refused a normal form"))?;
            v.insert(r, got);
        }
        for (from, to) in ARROWS {
            if v[&from] {
                fired += 1;
                check(v[&to], || format!("pair {i}: {from} holds but {to} does not"))?;
            }
        }
    }
    Ok(format!("200 pairs, {fired} implications checked, none violated"))
}

fn c5(pos: &mut Positives) -> Outcome {
    let mut positives = 0;
    for (i, (a, b)) in normal_form_pairs(5, 200).iter().enumerate() {
        let se = decide_standard(a, b, StandardKind::Se).map_err(|e| e.to_string())?;
        let via = decide_global(&v_template(a).templated, &v_template(b).templated, GlobalKind::Gfe)
            .map_err(|e| e.to_string())?;
        check(se.is_iso() == via.is_iso(), || format!("pair {i}: se {} vs gfe on V-templates {}", se.is_iso(), via.is_iso()))?;
        let sve = decide_standard(a, b, StandardKind::Sve).map_err(|e| e.to_string())?;
        let via = decide_global(&f_template(a).templated, &f_template(b).templated, GlobalKind::Gve)
            .map_err(|e| e.to_string())?;
        check(sve.is_iso() == via.is_iso(), || format!("pair {i}: sve {} vs gve on F-templates {}", sve.is_iso(), via.is_iso()))?;
        for d in [&se, &sve] {
            if let Some(w) = &d.witness {
                pos.record(5, a, b, d.relation, w);
                positives += 1;
            }
        }
    }
    Ok(format!("200 pairs, standard and template-global verdicts equal ({positives} positive)"))
}

fn c6(pos: &Positives) -> Outcome {
    let mut ok = 0;
    for (c, a, b, r, w) in &pos.all {
        let v = verify_witness(a, b, *r, w).map_err(|e| e.to_string())?;
        check(v, || format!("criterion {c}: {r} witness rejected\n{a:?}\n{b:?}"))?;
        ok += 1;
    }
    check(ok > 0, || "no positives collected".into())?;
    Ok(format!("{ok}/{} witnesses verified", pos.all.len()))
}

fn fmap(pairs: &[(&str, &str)]) -> std::collections::BTreeMap<Symbol, Symbol> {
    pairs.iter().map(|(a, b)| (Symbol::from_static(a), Symbol::from_static(b))).collect()
}

fn c7(pos: &Positives) -> Outcome {
    let semantic = [Relation::Ge, Relation::Gve, Relation::Gfe, Relation::Se, Relation::Lve];
    let mut checked = 0;
    for (k, (c, a, b, r, w)) in pos.all.iter().enumerate() {
        if *c > 3 || !semantic.contains(r) {
            continue;
        }
        let rep = check_semantic_compatibility(a, b, *r, w, k as u64).map_err(|e| format!("{r}: {e}"))?;
        check(rep.violations.is_empty(), || format!("{r}: {:?}\n{a:?}\n{b:?}", rep.violations))?;
        checked += 1;
    }
    // Counterexamples for per-rule renamings.
    let (a, b) = (load("semantic/i_a.trs"), load("semantic/i_b.trs"));
    let vid = TermIso::identity_on(&a).vmap;
    let v = step_violations(&a, &b, &[TermIso::identity_on(&a)], &[parse_term("f(x)", a.vars()).unwrap()])
        .map_err(|e| e.to_string())?;
    let lost = parse_term("h(x,x,x)", a.vars()).unwrap();
    check(v.len() == 1 && v[0].missing == vec![lost], || format!("first counterexample: {v:?}"))?;
    let (a, b) = (load("semantic/ii_a.trs"), load("semantic/ii_b.trs"));
    let phi1 = TermIso::new(fmap(&[("f", "g"), ("g", "f"), ("a", "a")]), vid.clone());
    let v = step_violations(&a, &b, &[phi1], &[parse_term("f(x)", a.vars()).unwrap()]).map_err(|e| e.to_string())?;
    let spurious = parse_term("g(a)", a.vars()).unwrap();
    check(v.len() == 1 && v[0].extra == vec![spurious], || format!("second counterexample: {v:?}"))?;
    let (a, b) = (load("semantic/iii_a.trs"), load("semantic/iii_b.trs"));
    let phi2 = TermIso::new(fmap(&[("h", "g"), ("g", "f"), ("f", "h"), ("a", "a")]), vid);
    let w = Witness::Family { members: vec![TermIso::identity_on(&a), phi2], rule_matching: vec![0, 1] };
    check(verify_witness(&a, &b, Relation::Lfe, &w).unwrap(), || "termination witness rejected".into())?;
    let fa = parse_term("f(a)", a.vars()).unwrap();
    let (ta, tb) = (terminates_bounded(&a, &fa, 10_000).unwrap(), terminates_bounded(&b, &fa, 10_000).unwrap());
    check(ta == ProbeVerdict::Proven && tb == ProbeVerdict::Refuted, || format!("termination: {ta:?} {tb:?}"))?;
    Ok(format!("{checked} witnesses preserve one-step rewriting; 3 counterexamples reproduced"))
}

fn c8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut isos = 0;
    for i in 0..100 {
        let n = rng.gen_range(1..=6);
        let density = rng.gen_range(0.1..0.5);
        let g1 = random_digraph(&mut rng, n, density);
        let g2 = if rng.gen_bool(0.5) {
            permuted_digraph(&mut rng, &g1)
        } else {
            loop {
                let g = random_digraph(&mut rng, n, density);
                if g.edge_count() == g1.edge_count() || rng.gen_bool(0.2) {
                    break g;
                }
            }
        };
        let brute = digraph_iso_bruteforce(&g1, &g2).map_err(|e| e.to_string())?;
        let (r1, r2) = (graph_to_trs_funcs(&g1).unwrap(), graph_to_trs_funcs(&g2).unwrap());
        let (s1, s2) = (graph_to_trs_vars(&g1).unwrap(), graph_to_trs_vars(&g2).unwrap());
        let ge = decide_any(&r1, &r2, Relation::Ge).map_err(|e| e.to_string())?.is_iso();
        let se = decide_any(&r1, &r2, Relation::Se).map_err(|e| e.to_string())?.is_iso();
        let sve = decide_any(&s1, &s2, Relation::Sve).map_err(|e| e.to_string())?.is_iso();
        check(brute == ge && ge == se && se == sve, || format!("pair {i}: brute {brute} ge {ge} se {se} sve {sve}"))?;
        isos += brute as usize;
    }
    let AnyGraph::Plain(fig) = parse_graph(&fixture_text("graphs/five_cycle.json")).map_err(|e| e.to_string())? else {
        return Err("five-cycle graph parsed as labelled".into());
    };
    let rules: Vec<String> = graph_to_trs_funcs(&fig).unwrap().rules().iter().map(|r| r.to_string()).collect();
    let expected = [
        "f_1(f_2(x)) -> c",
        "f_1(f_5(x)) -> c",
        "f_2(f_3(x)) -> c",
        "f_3(f_4(x)) -> c",
        "f_4(f_1(x)) -> c",
        "f_5(f_2(x)) -> c",
    ];
    check(rules == expected, || format!("five-cycle rules {rules:?}"))?;
    Ok(format!("100 digraph pairs ({isos} isomorphic) agree on all four decisions; five-cycle rules exact"))
}

fn c9() -> Outcome {
    let t = trs("(VAR x y)(RULES f(g(x),y) -> h(x))");
    let show = |t: &Trs| t.rules()[0].to_string();
    check(show(&v_template(&t).templated) == "f(g(x1),x2) -> h(x1)", || "V-template".into())?;
    check(show(&f_template(&t).templated) == "f_1_2(f_1_1(x),y) -> f_2_1(x)", || "F-template".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let p = GenParams { funcs: 6, vars: 3, max_rules: 6, max_depth: 3, max_arity: 3 };
    for i in 0..200 {
        let t = random_trs(&mut rng, &p);
        let once = full_template(&t).templated;
        let twice = full_template(&once).templated;
        check(once.rules() == twice.rules(), || format!("TRS {i}: full template not idempotent"))?;
    }
    let sig = random_signature(&mut rng, 20, 3, "f");
    let vars = random_vars(8, "x");
    let a = random_normal_form_trs(&mut rng, &sig, &vars, 1000, 15, 4);
    check(a.rules().len() == 1000 && a.size() <= 15, || format!("generated {} rules", a.rules().len()))?;
    let shape = PairShape::Local { common_funcs: false, common_vars: false, keep_funcs: false, keep_vars: false };
    let b = perturb(&mut rng, &a, shape).ok_or("perturbation collapsed rules")?;
    let start = Instant::now();
    let d = decide_local(&a, &b, LocalKind::Le).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    check(d.is_iso(), || "1000-rule pair should be LE".into())?;
    check(t < Duration::from_secs(2), || format!("1000-rule decision took {t:?}"))?;
    Ok(format!("templates exact, 200 idempotent, 1000-rule LE decided in {t:?}"))
}

fn c10() -> Outcome {
    for (x, y) in [("trs18", "trs19"), ("trs13", "trs14")] {
        let d = decide_any(&example(x), &example(y), Relation::LfeG).map_err(|e| e.to_string())?;
        check(d.is_iso(), || format!("{x} lfe* {y} should hold"))?;
    }
    let generalised = [Relation::LeG, Relation::LveG, Relation::LfeG, Relation::SeG, Relation::SveG];
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let p = GenParams { funcs: 3, vars: 2, max_rules: 2, max_depth: 2, max_arity: 2 };
    let (mut pairs, mut positives) = (0, 0);
    while pairs < 200 {
        let shape = PairShape::random(&mut rng);
        let (a, b) = random_pair(&mut rng, &p, shape);
        let kind = [Kind::V, Kind::F, Kind::Full][rng.gen_range(0..3)];
        let (ca, cb) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        let a = with_equivalent_copies(&mut rng, &a, kind, ca);
        let b = with_equivalent_copies(&mut rng, &b, kind, cb);
        let mut results = Vec::new();
        for r in generalised {
            match brute_force_decide(&a, &b, r) {
                Ok(v) => results.push((r, v)),
                Err(OracleError::SizeGuard) => break,
                Err(e) => return Err(e.to_string()),
            }
        }
        if results.len() < generalised.len() {
            continue;
        }
        for (r, oracle) in results {
            let d = decide_any(&a, &b, r).map_err(|e| e.to_string())?;
            check(d.is_iso() == oracle, || format!("pair {pairs} {r}: decider {} oracle {oracle}\n{a:?}\n{b:?}", d.is_iso()))?;
            if let Some(w) = &d.witness {
                check(verify_witness(&a, &b, r, w).unwrap(), || format!("pair {pairs} {r}: witness rejected"))?;
            }
            positives += oracle as usize;
        }
        pairs += 1;
    }
    Ok(format!("example pairs positive; 200 pairs x 5 relations agree with the oracle ({positives} positive)"))
}

#[test]
fn acceptance() {
    let mut pos = Positives::default();
    let mut results: Vec<(u8, Outcome)> = Vec::new();
    results.push((1, c1(&mut pos)));
    results.push((2, c2(&mut pos)));
    results.push((3, c3(&mut pos)));
    results.push((4, c4(&mut pos)));
    results.push((5, c5(&mut pos)));
    results.push((6, c6(&pos)));
    results.push((7, c7(&pos)));
    results.push((8, c8()));
    results.push((9, c9()));
    results.push((10, c10()));
    let mut failed = Vec::new();
    for (n, r) in &results {
        match r {
            Ok(msg) => println!("criterion {n:>2}: PASS  {msg}"),
            Err(msg) => {
                println!("criterion {n:>2}: FAIL  {msg}");
                failed.push(*n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
