use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use secretary_bench::{laminar_coverage, random_graph, transversal_coverage};
use secretary_core::algorithms::{greedy, Pruner};
use secretary_core::matroid::maximum_matching;
use secretary_core::process::{g_p, g_p_enumerated, CoinStream};
use secretary_core::seed::trial_rng;
use secretary_core::{run_algorithm, simulate, Algorithm, ElementSet};

fn bench_greedy(c: &mut Criterion) {
    let mut group = c.benchmark_group("greedy");
    for n in [16, 64, 256] {
        let inst = laminar_coverage(n, 1);
        let all = ElementSet::full(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| greedy(inst.system(), inst.valuation(), black_box(&all)))
        });
    }
    group.finish();
}

fn bench_runs(c: &mut Criterion) {
    let mut group = c.benchmark_group("run");
    let inst = laminar_coverage(64, 2);
    let pruner = Pruner::for_system(inst.system()).unwrap();
    let mut trial = 0u64;
    group.bench_function("simulate/64", |b| {
        b.iter(|| {
            trial += 1;
            let mut coins = CoinStream::new(0.9, trial_rng(7, trial)).unwrap();
            simulate(inst.system(), inst.valuation(), &mut coins, &pruner)
        })
    });
    group.bench_function("online/64", |b| {
        b.iter(|| {
            trial += 1;
            run_algorithm(&inst, Algorithm::Online, 0.9, &mut trial_rng(7, trial)).unwrap()
        })
    });
    let tv = transversal_coverage(24, 3);
    group.bench_function("online-sbvm/24", |b| {
        b.iter(|| {
            trial += 1;
            run_algorithm(&tv, Algorithm::OnlineSbvm, 0.9, &mut trial_rng(7, trial)).unwrap()
        })
    });
    group.finish();
}

fn bench_matching(c: &mut Criterion) {
    let mut group = c.benchmark_group("maximum_matching");
    for n in [16, 64, 128] {
        let g = random_graph(n, n / 2, 0.1, n as u64);
        let left = ElementSet::full(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| maximum_matching(&g, black_box(&left)))
        });
    }
    group.finish();
}

fn bench_gp(c: &mut Criterion) {
    let mut group = c.benchmark_group("g_p");
    group.bench_function("closed/40x40", |b| {
        b.iter(|| g_p(black_box(40), 40, 0.9794))
    });
    group.bench_function("closed/64x64", |b| {
        b.iter(|| g_p(black_box(64), 64, 0.9794))
    });
    group.bench_function("enumerated/8x8", |b| {
        b.iter(|| g_p_enumerated(black_box(8), 8, 0.5))
    });
    group.finish();
}

criterion_group!(benches, bench_greedy, bench_runs, bench_matching, bench_gp);
criterion_main!(benches);
