use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polar_zeros::verify::{
    evaluate_instance, run_property_suite_with, sample_instance, SuiteConfig, Tolerances,
};
use polar_zeros::{roots_of, s_poly, solve_polar, solve_polar_shifted, Execution, PolarProblem};

fn property_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("property_suite");
    group.sample_size(20);
    for cases in [100, 500] {
        let cfg = SuiteConfig {
            cases,
            ..SuiteConfig::default()
        };
        for exec in [Execution::Sequential, Execution::Parallel] {
            group.bench_with_input(
                BenchmarkId::new(format!("{exec:?}"), cases),
                &cfg,
                |b, cfg| b.iter(|| run_property_suite_with(black_box(cfg), exec)),
            );
        }
    }
    group.finish();
}

fn kernels(c: &mut Criterion) {
    let cfg = SuiteConfig {
        n_range: (12, 12),
        k_range: (5, 5),
        ..SuiteConfig::default()
    };
    let inst = sample_instance(&cfg, 0);
    let mut group = c.benchmark_group("kernels_n12_k5");
    group.bench_function("solve_polar_shifted", |b| {
        b.iter(|| solve_polar_shifted(black_box(&inst.p), inst.xi, inst.k))
    });
    let problem = PolarProblem::shifted(inst.p.clone(), inst.xi, inst.k);
    group.bench_function("solve_polar", |b| {
        b.iter(|| solve_polar(black_box(&problem)))
    });
    let s = s_poly(12, 5);
    group.bench_function("roots_of_s", |b| b.iter(|| roots_of(black_box(&s))));
    let tol = Tolerances::default();
    group.bench_function("evaluate_instance", |b| {
        b.iter(|| evaluate_instance(black_box(&inst), &tol))
    });
    group.finish();
}

criterion_group!(benches, property_suite, kernels);
criterion_main!(benches);
