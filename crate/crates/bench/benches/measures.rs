use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use bsens_bench::{block_formula, low_sensitivity, random_table};
use bsens_core::families::{ambainis_sun, rubinstein};
use bsens_core::lowsens::reconstruct_majority;
use bsens_core::measures::bs_capped;
use bsens_core::witness::{witness_onesbound, zero_witness_block};
use bsens_core::{
    block_sensitivity_report, check_compact_form, normalize, sensitivity_report, BallValues,
    Limits,
};

const L: Limits = Limits::DEFAULT;

fn sensitivity(c: &mut Criterion) {
    let mut group = c.benchmark_group("sensitivity");
    for n in [12, 16, 20] {
        let f = random_table(n, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| {
            b.iter(|| sensitivity_report(black_box(f), &L).unwrap())
        });
    }
    group.finish();
}

fn block_sensitivity(c: &mut Criterion) {
    let mut group = c.benchmark_group("block_sensitivity");
    group.sample_size(10);
    for n in [8, 10, 12] {
        let f = random_table(n, 2);
        group.bench_with_input(BenchmarkId::new("random", n), &f, |b, f| {
            b.iter(|| block_sensitivity_report(black_box(f), &L).unwrap())
        });
        let d = block_formula(n, 3);
        let g = d.to_truth_table(&L).unwrap();
        group.bench_with_input(BenchmarkId::new("block_dnf", n), &g, |b, g| {
            b.iter(|| block_sensitivity_report(black_box(g), &L).unwrap())
        });
    }
    let f = random_table(10, 4);
    group.bench_function("bs_capped_2/10", |b| b.iter(|| bs_capped(black_box(&f), 2, &L).unwrap()));
    group.finish();
}

fn formulas(c: &mut Criterion) {
    let mut group = c.benchmark_group("formulas");
    group.sample_size(10);
    let d = block_formula(12, 5);
    group.bench_function("compact_form/12", |b| b.iter(|| check_compact_form(black_box(&d), &L).unwrap()));
    group.bench_function("witnesses/12", |b| {
        b.iter(|| (zero_witness_block(black_box(&d)).unwrap(), witness_onesbound(black_box(&d)).unwrap()))
    });
    let f = random_table(8, 6);
    group.bench_function("normalize/8", |b| b.iter(|| normalize(black_box(&f), &L).unwrap()));
    group.bench_function("ambainis_sun(2)", |b| b.iter(|| ambainis_sun(2, &L).unwrap()));
    group.bench_function("rubinstein(3)", |b| b.iter(|| rubinstein(3, &L).unwrap()));
    group.finish();
}

fn reconstruction(c: &mut Criterion) {
    let f = low_sensitivity(12, 7);
    let s = sensitivity_report(&f, &L).unwrap().s();
    let ball = BallValues::from_table(&f, 0, (2 * s).min(12)).unwrap();
    c.bench_function("reconstruct_majority/12", |b| {
        b.iter(|| reconstruct_majority(black_box(&ball), s, &L).unwrap())
    });
}

criterion_group!(benches, sensitivity, block_sensitivity, formulas, reconstruction);
criterion_main!(benches);
