use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use acnet::batch::{necessity_check, synthesize_all};
use acnet::characterize::random_admissible;
use acnet::numerics::Tolerances;
use acnet::parallel::Execution;
use acnet::random::random_network;
use acnet::response::response_matrix_oracle_with;
use acnet::synthesize::{synthesize_network, SynthesisOptions};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn synthesis_batch(c: &mut Criterion) {
    let tol = Tolerances::default();
    let matrices: Vec<_> = (0..64)
        .map(|s| random_admissible(2 + (s % 11) as usize, s).unwrap())
        .collect();
    let mut group = c.benchmark_group("synthesize_batch_64");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                synthesize_all(
                    black_box(&matrices),
                    SynthesisOptions::default(),
                    &tol,
                    exec,
                )
            })
        });
    }
    group.finish();
}

fn necessity_batch(c: &mut Criterion) {
    let tol = Tolerances::default();
    let networks: Vec<_> = (0..64).map(|s| random_network(s, 20).unwrap()).collect();
    let mut group = c.benchmark_group("necessity_batch_64");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| necessity_check(black_box(&networks), &tol, exec))
        });
    }
    group.finish();
}

fn oracle_columns(c: &mut Criterion) {
    let tol = Tolerances::default();
    let rm = random_admissible(40, 1).unwrap();
    let net = synthesize_network(&rm, SynthesisOptions::default(), &tol)
        .unwrap()
        .network;
    let mut group = c.benchmark_group("oracle_b40");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| response_matrix_oracle_with(black_box(&net), exec).unwrap())
        });
    }
    group.finish();
}

fn single_synthesis(c: &mut Criterion) {
    let tol = Tolerances::default();
    let rm = random_admissible(50, 7).unwrap();
    c.bench_function("synthesize_b50", |b| {
        b.iter(|| synthesize_network(black_box(&rm), SynthesisOptions::default(), &tol).unwrap())
    });
}

criterion_group!(
    benches,
    synthesis_batch,
    necessity_batch,
    oracle_columns,
    single_synthesis
);
criterion_main!(benches);
