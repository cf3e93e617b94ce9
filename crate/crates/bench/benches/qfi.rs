use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use spinqfi_bench::{random_hermitian, random_params};
use spinqfi_core::sweep::{AxisSpec, SweepParam, SweepSpec};
use spinqfi_core::{
    build_hamiltonian, closed_form_state, direction_grid_max, eigh, fidelity_qfi_oracle,
    gibbs_state, qfi, run_sweep, Direction, ModelParams,
};

fn bench_eigh(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigh");
    for dim in [4usize, 16, 64] {
        let m = random_hermitian(dim, dim as u64);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &m, |b, m| {
            b.iter(|| eigh(black_box(m)).unwrap())
        });
    }
    group.finish();
}

fn bench_thermal_state(c: &mut Criterion) {
    let params = random_params(17);
    let h = build_hamiltonian(&params).unwrap();
    c.bench_function("closed_form_state", |b| {
        b.iter(|| closed_form_state(black_box(&params)).unwrap())
    });
    c.bench_function("gibbs_state", |b| {
        b.iter(|| gibbs_state(black_box(&h), params.temperature).unwrap())
    });
}

fn bench_qfi_point(c: &mut Criterion) {
    let params = random_params(23);
    c.bench_function("qfi_point", |b| b.iter(|| qfi(black_box(&params)).unwrap()));
}

fn bench_oracles(c: &mut Criterion) {
    let params = random_params(31);
    let state = closed_form_state(&params).unwrap();
    c.bench_function("fidelity_qfi_oracle", |b| {
        b.iter(|| fidelity_qfi_oracle(black_box(&state), &Direction::X, 2, 1e-3).unwrap())
    });
    c.bench_function("direction_grid_max_128", |b| {
        b.iter(|| direction_grid_max(black_box(&state), 2, 128).unwrap())
    });
}

fn bench_sweep(c: &mut Criterion) {
    let spec = SweepSpec {
        axis1: AxisSpec::new(SweepParam::DmCoupling, 0.0, 3.0, 16),
        axis2: AxisSpec::new(SweepParam::StaggeredField, 0.0, 3.0, 16),
        fixed: ModelParams::default(),
        label: "bench 16x16".into(),
    };
    c.bench_function("sweep_16x16", |b| {
        b.iter(|| run_sweep(black_box(&spec)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_eigh,
    bench_thermal_state,
    bench_qfi_point,
    bench_oracles,
    bench_sweep
);
criterion_main!(benches);
