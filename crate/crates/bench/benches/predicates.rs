use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use crescent_bench::{grid_points, table_eight};
use crescent_core::predicates::{concyclic4, is_linelike, is_strong_crescent, linf_square};
use crescent_core::{NormSpec, Point};

fn strong_crescent(c: &mut Criterion) {
    let cfg = table_eight();
    c.bench_function("strong_crescent_size_8", |b| b.iter(|| is_strong_crescent(black_box(&cfg)).unwrap()));
    c.bench_function("linelike_size_8", |b| b.iter(|| is_linelike(black_box(&cfg)).unwrap()));
}

fn square_tests(c: &mut Criterion) {
    let pts = grid_points(5);
    let ip: Vec<Point<i64>> = pts.iter().map(|&(x, y)| Point::new(x, y)).collect();
    let ex: Vec<Point> = pts.iter().map(|&(x, y)| Point::from_ints(x, y)).collect();
    let quads: Vec<[usize; 4]> = (0..pts.len())
        .step_by(3)
        .flat_map(|a| (a + 1..pts.len()).step_by(2).map(move |b| [a, b, (b + 3) % 25, (a + 7) % 25]))
        .filter(|q| q[0] != q[2] && q[0] != q[3] && q[1] != q[2] && q[1] != q[3] && q[2] != q[3])
        .collect();
    c.bench_function("linf_square_integer", |b| {
        b.iter(|| quads.iter().filter(|q| linf_square(&q.map(|i| &ip[i])).is_some()).count())
    });
    c.bench_function("concyclic4_exact_linf", |b| {
        b.iter(|| {
            quads
                .iter()
                .filter(|q| concyclic4(&NormSpec::Linf, q.map(|i| &ex[i])).unwrap().is_some())
                .count()
        })
    });
}

criterion_group!(benches, strong_crescent, square_tests);
criterion_main!(benches);
