use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use homog_bench::ideal_pair;
use homog_core::classify::classify_ideal;
use homog_core::homog::factor_principal;
use homog_core::{Domain, Element, StarOp};

fn lattice_ops(c: &mut Criterion) {
    for d in [-5, -1001, 10007] {
        let (dom, i, j) = ideal_pair(d);
        c.bench_function(&format!("product d={d}"), |b| b.iter(|| dom.product(black_box(&i), black_box(&j)).unwrap()));
        c.bench_function(&format!("colon d={d}"), |b| b.iter(|| dom.colon(black_box(&i), black_box(&j)).unwrap()));
    }
}

fn factoring(c: &mut Criterion) {
    let dom = Domain::quadratic(-5, 1).unwrap();
    let x = Element::quadratic(41, 12);
    c.bench_function("factor_principal Z[√-5]", |b| {
        b.iter(|| factor_principal(&dom, black_box(&x), StarOp::T).unwrap())
    });
    let m = Domain::krull_monoid(&[2, 4], &[("p", &[1, 0]), ("q", &[0, 1]), ("r", &[1, 3])]).unwrap();
    let y = m.divisor_element(&[("p", 3), ("q", 5), ("r", 5)]).unwrap();
    c.bench_function("factor_principal monoid", |b| {
        b.iter(|| factor_principal(&m, black_box(&y), StarOp::T).unwrap())
    });
}

fn classification(c: &mut Criterion) {
    let dom = Domain::quadratic(-5, 1).unwrap();
    let two = dom.principal(&Element::integer(2)).unwrap();
    let eight = dom.principal(&Element::integer(8)).unwrap();
    c.bench_function("classify 2D", |b| b.iter(|| classify_ideal(&dom, black_box(&two), StarOp::D, 32).unwrap()));
    c.bench_function("classify 8D", |b| b.iter(|| classify_ideal(&dom, black_box(&eight), StarOp::D, 32).unwrap()));
    c.bench_function("class group d=-1001", |b| {
        b.iter(|| Domain::quadratic(-1001, 1).unwrap().class_group(StarOp::D).unwrap())
    });
}

criterion_group!(benches, lattice_ops, factoring, classification);
criterion_main!(benches);
