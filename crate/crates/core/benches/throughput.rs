//! Throughput comparison for the work-heavy entry points.
//!
//! Run once with the default features and once with
//! `--no-default-features` to compare the rayon-backed and sequential
//! builds; the benchmark IDs carry the active mode.

use criterion::{criterion_group, criterion_main, Criterion};
use samplan::{optimize, oracle, SamplingPlan, TwoPointCriterion};

fn mode() -> &'static str {
    if cfg!(feature = "parallel") {
        "parallel"
    } else {
        "sequential"
    }
}

fn bench_monte_carlo(c: &mut Criterion) {
    let plan = SamplingPlan::new(65, 1).unwrap();
    let mut group = c.benchmark_group("monte_carlo_oc");
    group.sample_size(10);
    group.bench_function(format!("100k-trials/{}", mode()), |b| {
        b.iter(|| oracle::monte_carlo_oc(70, 1000, plan, 100_000, 0xBEEF).unwrap());
    });
    group.finish();
}

fn bench_profile(c: &mut Criterion) {
    let criterion = TwoPointCriterion::default();
    let mut group = c.benchmark_group("min_sample_profile");
    group.sample_size(20);
    group.bench_function(format!("600-lots/{}", mode()), |b| {
        b.iter(|| optimize::min_sample_profile(200, 799, 0, &criterion).unwrap());
    });
    group.finish();
}

fn bench_table(c: &mut Criterion) {
    let criterion = TwoPointCriterion::default();
    let mut group = c.benchmark_group("interval_table");
    group.sample_size(10);
    group.bench_function(format!("c0/{}", mode()), |b| {
        b.iter(|| optimize::interval_table(0, &criterion, None).unwrap());
    });
    group.finish();
}

criterion_group!(benches, bench_monte_carlo, bench_profile, bench_table);
criterion_main!(benches);
