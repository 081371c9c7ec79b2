use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mukai_core::{
    enumerate_p_type, isotropic_classes, smith_normal_form, IntMatrix, IntVector, IntegralLattice,
    MukaiSetup, PointedSublattice,
};

fn snf(c: &mut Criterion) {
    let m = IntMatrix::from_i64(&[
        &[12, -7, 30, 4, 9],
        &[5, 18, -2, 11, -6],
        &[-9, 3, 14, 0, 21],
        &[8, -15, 6, 13, 2],
        &[1, 10, -20, 7, 16],
    ]);
    c.bench_function("snf_5x5", |b| b.iter(|| smith_normal_form(black_box(&m))));
    let bbf = IntegralLattice::kummer_bbf(20);
    c.bench_function("discriminant_kummer_bbf_20", |b| {
        b.iter(|| black_box(&bbf).discriminant_group().unwrap())
    });
}

fn census(c: &mut Criterion) {
    let ns6 = MukaiSetup::ns_rank_one(6.into()).unwrap();
    let ambient = ns6.ambient();
    let v = IntVector::from([0, 1, -3]);
    let h = PointedSublattice::spanned_by(ambient, &v, &IntVector::from([1, 0, 0])).unwrap();
    c.bench_function("isotropic_classes_ns6", |b| {
        b.iter(|| isotropic_classes(black_box(&h)).unwrap())
    });
}

fn enumerate(c: &mut Criterion) {
    let ns6 = MukaiSetup::ns_rank_one(6.into()).unwrap();
    let v = IntVector::from([0, 1, -3]);
    c.bench_function("enumerate_p_type_ns6_bound6", |b| {
        b.iter(|| enumerate_p_type(ns6.ambient(), black_box(&v), 6).unwrap())
    });
}

criterion_group!(benches, snf, census, enumerate);
criterion_main!(benches);
