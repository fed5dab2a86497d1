use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cubicq_core::qfuncs::{genfun, PartitionFamily};
use cubicq_core::{CoefficientRing, TruncatedSeries};
use std::hint::black_box;

fn pseudo_random(ring: CoefficientRing, order: usize) -> TruncatedSeries {
    let mut x = 0x2545_f491_4f6c_dd1du64;
    let v: Vec<i64> = (0..order)
        .map(|i| {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            if i == 0 {
                1
            } else {
                (x % 2001) as i64 - 1000
            }
        })
        .collect();
    TruncatedSeries::from_i64s(ring, &v)
}

fn mul(c: &mut Criterion) {
    let mut g = c.benchmark_group("mul_mod_961");
    for order in [1_000, 10_000, 100_000] {
        let a = pseudo_random(CoefficientRing::Mod(961), order);
        let b = pseudo_random(CoefficientRing::Mod(961), order);
        g.bench_with_input(BenchmarkId::from_parameter(order), &order, |bench, _| {
            bench.iter(|| black_box(a.mul(&b).unwrap()))
        });
    }
    g.finish();
    let a = pseudo_random(CoefficientRing::ExactInteger, 500);
    let b = pseudo_random(CoefficientRing::ExactInteger, 500);
    c.bench_function("mul_exact_500", |bench| bench.iter(|| black_box(a.mul(&b).unwrap())));
}

fn invert(c: &mut Criterion) {
    let mut g = c.benchmark_group("invert_mod_43");
    for order in [1_000, 20_000] {
        let a = pseudo_random(CoefficientRing::Mod(43), order);
        g.bench_with_input(BenchmarkId::from_parameter(order), &order, |bench, _| {
            bench.iter(|| black_box(a.invert().unwrap()))
        });
    }
    g.finish();
}

fn expand(c: &mut Criterion) {
    let mut g = c.benchmark_group("genfun");
    g.sample_size(10);
    g.bench_function("a37_mod_43_order_21600", |bench| {
        bench.iter(|| black_box(genfun(PartitionFamily::cubic(37), CoefficientRing::Mod(43), 21_600)))
    });
    g.bench_function("abar2_mod_9_order_50000", |bench| {
        bench.iter(|| black_box(genfun(PartitionFamily::overcubic(2), CoefficientRing::Mod(9), 50_000)))
    });
    g.bench_function("abar6_exact_order_400", |bench| {
        bench.iter(|| black_box(genfun(PartitionFamily::overcubic(6), CoefficientRing::ExactInteger, 400)))
    });
    g.finish();
}

criterion_group!(benches, mul, invert, expand);
criterion_main!(benches);
