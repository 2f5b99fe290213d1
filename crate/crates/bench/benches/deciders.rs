use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use trsiso::deciders::{decide_global, decide_local, decide_standard, GlobalKind, LocalKind, StandardKind};
use trsiso::graphs::graph_to_trs_funcs;
use trsiso::random::{permuted_digraph, perturb, random_digraph, random_normal_form_trs, random_signature, random_vars, PairShape};
use trsiso::templates::full_template;
use trsiso::Trs;

fn pair(rules: usize, seed: u64, shape: PairShape) -> (Trs, Trs) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sig = random_signature(&mut rng, 20, 3, "f");
    let vars = random_vars(8, "x");
    let a = random_normal_form_trs(&mut rng, &sig, &vars, rules, 15, 4);
    let b = perturb(&mut rng, &a, shape).expect("renaming keeps rules apart");
    (a, b)
}

fn local(c: &mut Criterion) {
    let shape = PairShape::Local { common_funcs: false, common_vars: false, keep_funcs: false, keep_vars: false };
    let mut g = c.benchmark_group("le");
    for n in [10, 100, 1000] {
        let (a, b) = pair(n, 1, shape);
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, _| {
            bench.iter(|| decide_local(&a, &b, LocalKind::Le).unwrap())
        });
    }
    g.finish();
}

fn standard(c: &mut Criterion) {
    let shape = PairShape::Local { common_funcs: true, common_vars: false, keep_funcs: false, keep_vars: false };
    let mut g = c.benchmark_group("sve");
    for n in [10, 50, 200] {
        let (a, b) = pair(n, 2, shape);
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, _| {
            bench.iter(|| decide_standard(&a, &b, StandardKind::Sve).unwrap())
        });
    }
    g.finish();
}

fn global(c: &mut Criterion) {
    let shape = PairShape::Global { keep_funcs: false, keep_vars: false };
    let mut g = c.benchmark_group("ge");
    for n in [10, 50, 200] {
        let (a, b) = pair(n, 3, shape);
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, _| {
            bench.iter(|| decide_global(&a, &b, GlobalKind::Ge).unwrap())
        });
    }
    g.finish();
}

fn digraphs(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut g = c.benchmark_group("ge_digraph");
    for n in [8, 16, 32] {
        let d1 = random_digraph(&mut rng, n, 0.2);
        let d2 = permuted_digraph(&mut rng, &d1);
        let (a, b) = (graph_to_trs_funcs(&d1).unwrap(), graph_to_trs_funcs(&d2).unwrap());
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, _| {
            bench.iter(|| decide_global(&a, &b, GlobalKind::Ge).unwrap())
        });
    }
    g.finish();
}

fn templates(c: &mut Criterion) {
    let (a, _) = pair(1000, 5, PairShape::Independent);
    c.bench_function("full_template_1000", |bench| bench.iter(|| full_template(&a)));
}

criterion_group!(benches, local, standard, global, digraphs, templates);
criterion_main!(benches);
