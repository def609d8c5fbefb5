use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use arithcap::algebra::IntPoly;
use arithcap::family::{family_members, random_seeds};
use arithcap::integerization::{
    exponent_u64, integerizing_exponent, minimal_integerizing_exponent,
};
use arithcap::patching::clear_fractional_parts;
use arithcap::potential::{solve_green, Curve, DomainSpec};
use arithcap::text::parse_polynomial;
use arithcap::Complex64;

fn green(c: &mut Criterion) {
    let origin = Complex64::new(0.0, 0.0);
    let ellipse =
        DomainSpec::new(vec![Curve::ellipse(origin, 2.0, 1.0, 0.3).unwrap()], origin).unwrap();
    let mut group = c.benchmark_group("solve_green");
    group.sample_size(10);
    for n in [64usize, 128, 256] {
        group.bench_with_input(BenchmarkId::new("ellipse", n), &n, |b, &n| {
            b.iter(|| solve_green(black_box(&ellipse), n).unwrap())
        });
    }
    group.finish();
}

fn greedy(c: &mut Criterion) {
    let f = parse_polynomial("(x - 1/2)^2").unwrap();
    let mut group = c.benchmark_group("greedy");
    group.sample_size(10);
    for n in [2usize, 4] {
        let m = exponent_u64(&minimal_integerizing_exponent(&f, n, 1 << 12).unwrap()).unwrap();
        group.bench_with_input(BenchmarkId::new("square", n), &m, |b, &m| {
            b.iter(|| clear_fractional_parts(black_box(&f), m, n).unwrap())
        });
    }
    group.finish();
}

fn integerization(c: &mut Criterion) {
    let f = parse_polynomial("x^3 - 1/6*x^2 + 5/4*x - 2/9").unwrap();
    c.bench_function("integerize/formula", |b| {
        b.iter(|| integerizing_exponent(black_box(&f), 4).unwrap())
    });
    let g = parse_polynomial("x^2 + 1/2*x + 1/3").unwrap();
    c.bench_function("integerize/search", |b| {
        b.iter(|| minimal_integerizing_exponent(black_box(&g), 3, 1 << 12).unwrap())
    });
}

fn family(c: &mut Criterion) {
    let p = IntPoly::from_i64s(&[-3, 0, 1]);
    let seeds = random_seeds(32, 32, 2, 7);
    c.bench_function("family/32x64", |b| {
        b.iter(|| family_members(black_box(&p), &seeds, 64).unwrap())
    });
}

criterion_group!(benches, green, greedy, integerization, family);
criterion_main!(benches);
