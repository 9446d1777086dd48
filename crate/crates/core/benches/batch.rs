use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use mcs_core::sim::verify::{verify_branches, verify_filter, verify_stabilizer, Target};
use mcs_core::{random_clifford, synthesize, Execution, Stage};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn branches(c: &mut Criterion) {
    let (t, gates) = random_clifford(3, 1).unwrap();
    let circuit = synthesize(&t).unwrap();
    let target = Target::Gates(gates);
    let mut g = c.benchmark_group("verify_branches_n3_16_trials");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify_branches(&circuit, &target, 16, 1e-10, 0, exec).unwrap())
        });
    }
    g.finish();
}

fn stabilizer(c: &mut Criterion) {
    let (t, _) = random_clifford(32, 2).unwrap();
    let circuit = synthesize(&t).unwrap();
    let mut g = c.benchmark_group("verify_stabilizer_n32_8_seeds");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify_stabilizer(&circuit, &t, 8, 0, exec).unwrap())
        });
    }
    g.finish();
}

fn synthesis_batch(c: &mut Criterion) {
    let mut g = c.benchmark_group("synthesize_64_tableaus_n16");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                exec.map_range(64, |i| {
                    let (t, _) = random_clifford(16, i as u64).unwrap();
                    black_box(synthesize(&t).unwrap().two_qubit_gate_count(&[Stage::CPn]))
                })
            })
        });
    }
    g.finish();
}

fn filter(c: &mut Criterion) {
    let mut g = c.benchmark_group("filter_32_channels");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify_filter(4, 32, 1e-10, 0, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, branches, stabilizer, synthesis_batch, filter);
criterion_main!(benches);
