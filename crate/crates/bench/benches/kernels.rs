use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use fqrack::criteria::{find_type_d, find_type_f, Order};
use fqrack::matgrp::orbit::conjugacy_orbit;
use fqrack::matgrp::unipotent::class_representative;
use fqrack::rack::MemoRack;
use fqrack::{field_of_order, ClassRack, Family, GroupCtx, Matrix, Partition};

fn ctx(family: Family, n: usize, q: u32) -> GroupCtx {
    GroupCtx::new(family, n, &field_of_order(q).unwrap()).unwrap()
}

fn rep(g: &GroupCtx, parts: &[usize]) -> Matrix {
    let lambda = Partition::new(parts.to_vec()).unwrap();
    g.element(class_representative(g, &lambda, 1).unwrap()).unwrap()
}

fn matrix_mul(c: &mut Criterion) {
    let f = field_of_order(9).unwrap();
    let g = ctx(Family::SL, 6, 9);
    let a = rep(&g, &[6]);
    let b = Matrix::from_ints(&f, &[
        &[1, 2, 0, 1, 0, 0],
        &[0, 1, 3, 0, 0, 1],
        &[0, 0, 1, 4, 0, 0],
        &[0, 0, 0, 1, 5, 0],
        &[0, 0, 0, 0, 1, 6],
        &[0, 0, 0, 0, 0, 1],
    ]);
    c.bench_function("mul 6x6 over F_9", |bn| bn.iter(|| black_box(&a).mul(black_box(&b))));
}

fn orbit(c: &mut Criterion) {
    let g = ctx(Family::PSL, 3, 5);
    let x = rep(&g, &[3]);
    c.bench_function("regular class of PSL_3(5)", |bn| {
        bn.iter(|| conjugacy_orbit(&g, black_box(&x), 1_000_000).unwrap().len())
    });
}

fn searches(c: &mut Criterion) {
    let g = ctx(Family::PSL, 4, 2);
    let x = rep(&g, &[2, 1, 1]);
    let class = ClassRack::new(g.clone(), &x, 1_000_000).unwrap();
    c.bench_function("exhaustive D scan, PSL_4(2) type (2,1,1)", |bn| {
        bn.iter(|| find_type_d(&class, &[class.base()], Order::Exhaustive, 1_000_000).budget_spent)
    });
    let g3 = ctx(Family::PSL, 3, 2);
    let t = rep(&g3, &[2, 1]);
    let small = ClassRack::new(g3, &t, 1_000).unwrap();
    let memo = MemoRack::new(&small);
    c.bench_function("exhaustive F scan, PSL_3(2) type (2,1)", |bn| {
        bn.iter(|| find_type_f(&memo, &[small.base()], 10_000_000, 1_000_000).budget_spent)
    });
}

criterion_group!(benches, matrix_mul, orbit, searches);
criterion_main!(benches);
