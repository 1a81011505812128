//! Benchmarks for the hot paths: catalog construction, axiom checking,
//! canonical frames, congruence lattices and tense extensions.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use whb_core::{
    all_congruences_oracle, canonical_frame, congruence_transfer, dwh_catalog, enumerate_bdls,
    enumerate_frames, representation_embedding, tense_extension, whb_catalog, FrameKind,
};

fn catalogs(c: &mut Criterion) {
    // the catalogs themselves are cached after first use, so benchmark
    // the uncached building blocks
    c.bench_function("enumerate_bdls(6)", |b| {
        b.iter(|| enumerate_bdls(black_box(6)).unwrap().len())
    });
    c.bench_function("enumerate_frames(3, whb)", |b| {
        b.iter(|| enumerate_frames(black_box(3), FrameKind::Whb).unwrap().len())
    });
}

fn per_algebra(c: &mut Criterion) {
    let cat = whb_catalog(8);
    let biggest = cat.iter().max_by_key(|a| a.size()).unwrap().clone();
    c.bench_function("classify, size 8", |b| b.iter(|| black_box(&biggest).classify().len()));
    c.bench_function("canonical_frame, size 8", |b| {
        b.iter(|| canonical_frame(black_box(&biggest)).size())
    });
    c.bench_function("representation_embedding, size 8", |b| {
        b.iter(|| representation_embedding(black_box(&biggest)).unwrap().len())
    });
    c.bench_function("all_congruences_oracle, size 8", |b| {
        b.iter(|| all_congruences_oracle(black_box(&biggest)).unwrap().len())
    });
    c.bench_function("tense_extension + transfer, size 8", |b| {
        b.iter(|| {
            let t = tense_extension(black_box(&biggest)).unwrap();
            let rep = congruence_transfer(black_box(&biggest)).unwrap();
            (t.atoms(), rep.con_a)
        })
    });
}

fn batch(c: &mut Criterion) {
    let whb = whb_catalog(6);
    let dwh = dwh_catalog(4);
    c.bench_function("stone embedding over the size-6 catalog", |b| {
        b.iter(|| {
            whb.iter().map(|a| representation_embedding(a).unwrap().len()).sum::<usize>()
        })
    });
    c.bench_function("classification over the size-4 dwh catalog", |b| {
        b.iter(|| dwh.iter().map(|a| a.classify().len()).sum::<usize>())
    });
}

criterion_group!(benches, catalogs, per_algebra, batch);
criterion_main!(benches);
