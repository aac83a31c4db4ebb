use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use itpda_core::automata::{accepts_contour_exact, accepts_fibonacci_exact, ContourParams};
use itpda_core::disc::generate_tiles;
use itpda_core::grammar::{contour_word, expand_level, Grammar, Preset};
use itpda_core::recurrence::{Component, Family, LazyRecurrence};
use itpda_core::word::NodeColor;
use itpda_core::Store;

fn store_ops(c: &mut Criterion) {
    let mut base: Store<u8> = Store::leaf(0);
    for i in 0..64u8 {
        base = base.push(2, &[i % 3, i % 5]).unwrap();
    }
    c.bench_function("store/push2_pop2", |b| {
        b.iter(|| black_box(&base).push(2, &[1, 2]).unwrap().pop(2).unwrap())
    });
    c.bench_function("store/push1_pop1", |b| {
        b.iter(|| black_box(&base).push(1, &[1, 2, 3]).unwrap().pop(1).unwrap())
    });
}

fn deciders(c: &mut Criterion) {
    let mut group = c.benchmark_group("fibonacci");
    for m in [89u64, 233, 377, 400] {
        group.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| b.iter(|| accepts_fibonacci_exact(m)));
    }
    group.finish();

    let cp = ContourParams::pentagrid();
    let g = Grammar::preset(Preset::G0).unwrap();
    let mut group = c.benchmark_group("contour");
    group.sample_size(10);
    for n in [3usize, 5, 6] {
        let word = contour_word(&g, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &word, |b, w| b.iter(|| accepts_contour_exact(&cp, w)));
    }
    group.finish();
}

fn words(c: &mut Criterion) {
    let g = Grammar::preset(Preset::G0).unwrap();
    c.bench_function("expand_level/12", |b| b.iter(|| expand_level(&g, NodeColor::White, black_box(12))));
    let lazy = LazyRecurrence::new(Family::Uw, 90).unwrap();
    c.bench_function("lazy_letter/90", |b| {
        b.iter(|| lazy.letter_at(90, Component::Second, black_box(123_456_789_012_345)).unwrap())
    });
}

fn tiling(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate_tiles");
    group.sample_size(10);
    for (p, q) in [(5usize, 4usize), (7, 3)] {
        group.bench_function(format!("{{{p},{q}}}/4"), |b| b.iter(|| generate_tiles(p, q, 4).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, store_ops, deciders, words, tiling);
criterion_main!(benches);
