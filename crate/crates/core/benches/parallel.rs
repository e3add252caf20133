use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pbwcalc::calculus::{calculus, check_pbw_conditions_with};
use pbwcalc::exec::Exec;
use pbwcalc::liealg::{sl2, Window};
use pbwcalc::rewrite::confluence_report_with;
use pbwcalc::solver::refute_random_with;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn conditions(c: &mut Criterion) {
    let witt = calculus("witt:mu").unwrap();
    let window = Window::range(-12, 12);
    let mut group = c.benchmark_group("conditions/witt:mu");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| check_pbw_conditions_with(black_box(&witt), &window, exec).unwrap())
        });
    }
    group.finish();
}

fn confluence(c: &mut Criterion) {
    let witt = calculus("witt:mu").unwrap();
    let window = Window::range(-6, 6);
    let mut group = c.benchmark_group("confluence/witt:mu");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| confluence_report_with(black_box(&witt), &window, exec).unwrap())
        });
    }
    group.finish();
}

fn refutation(c: &mut Criterion) {
    let g = sl2();
    let mut group = c.benchmark_group("refute/sl2");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| refute_random_with(black_box(&g), 200, 42, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, conditions, confluence, refutation);
criterion_main!(benches);
