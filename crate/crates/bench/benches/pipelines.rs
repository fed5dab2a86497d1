use criterion::{criterion_group, criterion_main, Criterion};
use cubicq_core::engine::claims::{builtin_claims, run_claims, RunOptions};
use cubicq_core::hecke::{cubic_rows, verify_row_at_sturm};
use std::hint::black_box;

fn claim(c: &mut Criterion) {
    let catalog = builtin_claims();
    let mut g = c.benchmark_group("claim");
    g.sample_size(10);
    for id in ["a37-43n+12", "abar2i-8n+7-mod8"] {
        let opts = RunOptions { ids: Some(vec![id.to_string()]), ..Default::default() };
        g.bench_function(id, |b| b.iter(|| black_box(run_claims(&catalog, &opts).unwrap())));
    }
    g.finish();
}

fn hecke(c: &mut Criterion) {
    let mut g = c.benchmark_group("hecke_row");
    g.sample_size(10);
    for row in cubic_rows().into_iter().filter(|r| [53, 61].contains(&r.c)) {
        g.bench_function(format!("a{}_mod_{}", row.c, row.p), |b| {
            b.iter(|| black_box(verify_row_at_sturm(&row).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, claim, hecke);
criterion_main!(benches);
