//! Sequential versus rayon-backed evaluation of a batch of Klein volumes.
//! Build with `--no-default-features` to make `par::map` sequential as well.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use slopesmith::par;
use slopesmith::volume::{klein_volume, regular_tet};

fn volumes(c: &mut Criterion) {
    let tets: Vec<_> = (0..32).map(|k| regular_tet(0.5 + 0.4 * k as f64).unwrap()).collect();
    let mut group = c.benchmark_group("klein_volume_batch");
    group.sample_size(20);
    group.bench_with_input(BenchmarkId::new("sequential", tets.len()), &tets, |b, tets| {
        b.iter(|| tets.iter().map(|t| klein_volume(black_box(t), 1e-10).unwrap().value).sum::<f64>())
    });
    let label = if par::PARALLEL { "par_map_rayon" } else { "par_map_fallback" };
    group.bench_with_input(BenchmarkId::new(label, tets.len()), &tets, |b, tets| {
        b.iter(|| par::map(tets, |t| klein_volume(black_box(t), 1e-10).unwrap().value).into_iter().sum::<f64>())
    });
    group.finish();
}

criterion_group!(benches, volumes);
criterion_main!(benches);
