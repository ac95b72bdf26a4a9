use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ntl_bench::{presentation, realized};
use ntl_core::enumerate::{realize_with, EnumerationBudget, Strategy};
use ntl_core::group::DEFAULT_ORDER_CAP;
use ntl_core::suite::nu_options;
use ntl_core::tensor::{build_nu, tensor_direct, CompatibleActionPair};

fn enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("realize");
    for name in ["S4", "C2x2x4", "D12", "S5"] {
        let p = presentation(name);
        for (label, strategy) in [("hlt", Strategy::Hlt), ("felsch", Strategy::Felsch)] {
            group.bench_with_input(BenchmarkId::new(label, name), &p, |b, p| {
                b.iter(|| realize_with(black_box(p), EnumerationBudget::default(), strategy, DEFAULT_ORDER_CAP).unwrap())
            });
        }
    }
    group.finish();
}

fn nu(c: &mut Criterion) {
    let mut group = c.benchmark_group("nu");
    group.sample_size(10);
    for name in ["S3", "D4", "Q8", "C2x2x2", "A4", "D6", "C16"] {
        let g = realized(name);
        let opts = nu_options(g.order(), EnumerationBudget::default());
        group.bench_function(name, |b| b.iter(|| build_nu(black_box(&g), &opts).unwrap()));
    }
    group.finish();
}

fn direct(c: &mut Criterion) {
    let mut group = c.benchmark_group("tensor_direct");
    for name in ["S3", "D4", "Q8"] {
        let pair = CompatibleActionPair::conjugation(realized(name)).unwrap();
        group.bench_function(name, |b| b.iter(|| tensor_direct(black_box(&pair), &EnumerationBudget::default()).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, enumerate, nu, direct);
criterion_main!(benches);
