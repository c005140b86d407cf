//! Sequential vs. parallel execution of the brute-force oracles.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ulrc::{gabidulin_lrc, pyramid_unequal, simulate, Execution, Field, LinearCode, OracleConfig};

fn codes() -> Vec<(&'static str, LinearCode)> {
    let f16 = Field::with_order(16).unwrap();
    let pyramid = pyramid_unequal(&"1,2,3".parse().unwrap(), 4, &f16).unwrap();
    let large = pyramid_unequal(&"0,4,3,4".parse().unwrap(), 4, &f16).unwrap();
    let gabidulin = gabidulin_lrc(4, &"0,3,4".parse().unwrap(), 4, 5).unwrap();
    vec![
        ("pyramid-12-6", pyramid.code),
        ("pyramid-17-11", large.code),
        ("gabidulin-7-4", gabidulin.code),
    ]
}

fn modes() -> [(&'static str, OracleConfig); 2] {
    [
        (
            "sequential",
            OracleConfig::default().with_execution(Execution::Sequential),
        ),
        ("parallel", OracleConfig::default().with_execution(Execution::Parallel)),
    ]
}

fn min_distance(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_distance");
    for (name, code) in codes() {
        for (mode, cfg) in modes() {
            group.bench_with_input(BenchmarkId::new(mode, name), &code, |b, code| {
                b.iter(|| black_box(code.min_distance(&cfg).unwrap()))
            });
        }
    }
    group.finish();
}

fn localities(c: &mut Criterion) {
    let mut group = c.benchmark_group("localities");
    for (name, code) in codes() {
        for (mode, cfg) in modes() {
            group.bench_with_input(BenchmarkId::new(mode, name), &code, |b, code| {
                b.iter(|| black_box(code.localities(&cfg).unwrap()))
            });
        }
    }
    group.finish();
}

fn simulation(c: &mut Criterion) {
    let mut group = c.benchmark_group("simulate");
    group.sample_size(20);
    for (name, code) in codes() {
        for (mode, cfg) in modes() {
            group.bench_with_input(BenchmarkId::new(mode, name), &code, |b, code| {
                b.iter(|| black_box(simulate(code, 2_000, 2, 7, &cfg).unwrap()))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, min_distance, localities, simulation);
criterion_main!(benches);
