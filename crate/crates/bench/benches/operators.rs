use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wop_core::hurwitz::build_hhat_series;
use wop_core::wop::{apply_operator, monomials_of_weight};
use wop_core::xmatrix::{apply_w_truncated, p_to_x_subst};
use wop_core::{HurwitzTable, OperatorSpec, PPolynomial};

fn all_of_weight(w: u32) -> PPolynomial {
    monomials_of_weight(w)
        .into_iter()
        .map(PPolynomial::from)
        .fold(PPolynomial::zero(), |a, b| a + b)
}

fn analytic_vs_group(c: &mut Criterion) {
    let mut group = c.benchmark_group("delta_d");
    for w in [6u32, 8] {
        let f = all_of_weight(w);
        for d in [2u32, 3, 4] {
            let delta = OperatorSpec::delta(d).unwrap();
            let route = OperatorSpec::group(d).unwrap();
            group.bench_with_input(BenchmarkId::new(format!("analytic_d{d}"), w), &f, |b, f| {
                b.iter(|| apply_operator(&delta, black_box(f)).unwrap())
            });
            group.bench_with_input(BenchmarkId::new(format!("group_d{d}"), w), &f, |b, f| {
                b.iter(|| apply_operator(&route, black_box(f)).unwrap())
            });
        }
    }
    group.finish();
}

fn matrix_operator(c: &mut Criterion) {
    let mut group = c.benchmark_group("w_truncated");
    let f = p_to_x_subst(&all_of_weight(3), 3);
    for d in [2usize, 3] {
        group.bench_with_input(BenchmarkId::from_parameter(d), &f, |b, f| {
            b.iter(|| apply_w_truncated(d, black_box(f)))
        });
    }
    group.finish();
}

fn hurwitz(c: &mut Criterion) {
    let mut group = c.benchmark_group("hurwitz");
    group.sample_size(10);
    group.bench_function("table_n6_d2_k3", |b| {
        b.iter(|| HurwitzTable::compute(black_box(6), 2, 3))
    });
    group.bench_function("table_n6_d3_k3", |b| {
        b.iter(|| HurwitzTable::compute(black_box(6), 3, 3))
    });
    group.bench_function("flow_w6_k3", |b| {
        b.iter(|| build_hhat_series(2, black_box(6), 3).unwrap())
    });
    group.finish();
}

criterion_group!(benches, analytic_vs_group, matrix_operator, hurwitz);
criterion_main!(benches);
