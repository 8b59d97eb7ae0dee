use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use linkdiag::eqtheory::check_all;
use linkdiag::{canonical, delink, flatten, interpret, FreeDecls, Mode, Signature};
use linkdiag_bench::corpus;

fn interpretation(c: &mut Criterion) {
    let sig = Signature::law_default();
    let mut group = c.benchmark_group("interpret");
    for size in [10, 40, 160] {
        let terms = corpus(Mode::Spider, size, 20);
        group.bench_with_input(BenchmarkId::from_parameter(size), &terms, |b, terms| {
            b.iter(|| {
                for (t, _) in terms {
                    black_box(interpret(t, Mode::Spider, &sig, &FreeDecls::new()).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn canonical_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonical");
    for size in [10, 40, 160] {
        let diagrams = corpus(Mode::Biflow, size, 20);
        group.bench_with_input(BenchmarkId::from_parameter(size), &diagrams, |b, ds| {
            b.iter(|| {
                for (_, d) in ds {
                    black_box(canonical(d));
                }
            })
        });
    }
    group.finish();
}

fn normal_forms(c: &mut Criterion) {
    let diagrams = corpus(Mode::Comonoid, 40, 20);
    c.bench_function("flatten/40", |b| {
        b.iter(|| {
            for (_, d) in &diagrams {
                black_box(flatten(d, Mode::Comonoid).unwrap());
            }
        })
    });
    c.bench_function("delink/40", |b| {
        b.iter(|| {
            for (_, d) in &diagrams {
                black_box(delink(d, Mode::Comonoid).unwrap());
            }
        })
    });
}

fn law_suite(c: &mut Criterion) {
    let sig = Signature::law_default();
    let mut group = c.benchmark_group("laws");
    group.sample_size(10);
    for mode in Mode::ALL {
        group.bench_function(mode.as_str(), |b| {
            b.iter(|| black_box(check_all(mode, &sig, 10, 20, 1)))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    interpretation,
    canonical_form,
    normal_forms,
    law_suite
);
criterion_main!(benches);
