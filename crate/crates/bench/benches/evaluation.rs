use criterion::{black_box, criterion_group, criterion_main, Criterion};
use fracgreen_bench::regimes;
use fracgreen_core::specials::{mittag_leffler, wright_m};
use fracgreen_core::{fourier_oracle, mellin_oracle, quadrature_moment, reduced_green};

fn bench_reduced_green(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduced_green");
    for (name, t) in regimes() {
        for x in [0.1, 1.0, 25.0] {
            group.bench_function(format!("{name}/x={x}"), |b| {
                b.iter(|| reduced_green(black_box(&t), black_box(x), 1e-8).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_specials(c: &mut Criterion) {
    let mut group = c.benchmark_group("specials");
    for x in [0.5, 3.0, 12.0] {
        group.bench_function(format!("wright_m/nu=0.4/x={x}"), |b| {
            b.iter(|| wright_m(black_box(0.4), black_box(x)).unwrap())
        });
    }
    for z in [-0.5, -5.0, -80.0] {
        group.bench_function(format!("mittag_leffler/beta=0.7/z={z}"), |b| {
            b.iter(|| mittag_leffler(black_box(0.7), black_box(z)).unwrap())
        });
    }
    group.finish();
}

fn bench_oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracles");
    group.sample_size(20);
    for (name, t) in regimes() {
        // the kernel degenerates when alpha = beta; the oracle rejects those
        if t.alpha() == t.beta() {
            continue;
        }
        group.bench_function(format!("mellin/{name}"), |b| {
            let gamma = 0.5 * t.alpha().min(1.0);
            b.iter(|| mellin_oracle(black_box(&t), 1.3, gamma, 1e-9).unwrap())
        });
    }
    let (name, t) = ("stable", regimes()[2].1.clone());
    group.bench_function(format!("fourier/{name}"), |b| {
        b.iter(|| fourier_oracle(black_box(&t), 1.3, 1e-8).unwrap())
    });
    group.bench_function(format!("moment/{name}"), |b| {
        b.iter(|| quadrature_moment(black_box(&t), 0.0, 1e-6).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_reduced_green, bench_specials, bench_oracles);
criterion_main!(benches);
