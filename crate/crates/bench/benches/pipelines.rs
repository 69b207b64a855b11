//! Timings for the hot paths: subdivision, coset enumeration, cover
//! search, and certificate saturation.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use gcat_cli::corpus;
use gcat_core::{
    barycentric_subdivision, cat_upper, todd_coxeter, Budget, GroupPresentation, Strategy,
};

fn subdivision(c: &mut Criterion) {
    let torus = corpus::torus().expect("corpus torus");
    c.bench_function("subdivide torus once", |b| {
        b.iter(|| barycentric_subdivision(black_box(&torus)))
    });
    let sd = barycentric_subdivision(&torus).complex;
    c.bench_function("subdivide torus twice", |b| {
        b.iter(|| barycentric_subdivision(black_box(&sd)))
    });
}

fn coset_enumeration(c: &mut Criterion) {
    let quaternion = GroupPresentation::new(
        2,
        vec![vec![1, 1, 1, 1], vec![1, 1, -2, -2], vec![-2, 1, 2, 1]],
    )
    .expect("presentation");
    c.bench_function("coset table for the order-8 quaternion group", |b| {
        b.iter(|| todd_coxeter(black_box(&quaternion), &[], 10_000))
    });

    let klein = corpus::klein().expect("corpus klein");
    let (pres, _) = gcat_core::edge_path_presentation(&klein, 0).expect("presentation");
    c.bench_function("edge-path presentation of the Klein bottle", |b| {
        b.iter(|| gcat_core::edge_path_presentation(black_box(&klein), 0))
    });
    c.bench_function("abelianization of the Klein bottle group", |b| {
        b.iter(|| black_box(&pres).abelianization())
    });
}

fn cover_search(c: &mut Criterion) {
    let budget = Budget::default();
    let torus = corpus::torus().expect("corpus torus");
    let amenable = "amenable".parse().expect("class");
    c.bench_function("greedy amenable cover of the torus", |b| {
        b.iter(|| cat_upper(black_box(&torus), &amenable, Strategy::Greedy, &budget))
    });
    let trivial = "trivial".parse().expect("class");
    c.bench_function("star cover of the subdivided torus", |b| {
        b.iter(|| cat_upper(black_box(&torus), &trivial, Strategy::Stars, &budget))
    });
}

fn certificates(c: &mut Criterion) {
    let budget = Budget::default();
    c.bench_function("saturate the torus fact store", |b| {
        b.iter(|| {
            let mut store = corpus::torus_facts().expect("corpus facts");
            store.saturate(&budget).expect("saturation");
            store
        })
    });
}

criterion_group!(
    benches,
    subdivision,
    coset_enumeration,
    cover_search,
    certificates
);
criterion_main!(benches);
