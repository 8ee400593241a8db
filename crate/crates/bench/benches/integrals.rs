use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hyperholo_bench::{ctx, fourier, quad, unit_circle};
use hyperholo_core::potential::{area_integral, cauchy_integral, singular_integral};
use hyperholo_core::Point2;

fn cauchy(c: &mut Criterion) {
    let curve = unit_circle();
    let f = fourier();
    let k = ctx(1.0, 0.0);
    let mut g = c.benchmark_group("cauchy_integral");
    g.sample_size(20);
    for n in [256, 1024, 4096] {
        let q = quad(n, 64);
        g.bench_with_input(BenchmarkId::new("interior", n), &q, |b, q| {
            b.iter(|| cauchy_integral(&k, &curve, &f, black_box(Point2::new(0.3, 0.2)), q).unwrap())
        });
    }
    let q = quad(1024, 64);
    g.bench_function("near_boundary", |b| {
        b.iter(|| cauchy_integral(&k, &curve, &f, black_box(Point2::new(0.999, 0.0)), &q).unwrap())
    });
    g.finish();
}

fn singular(c: &mut Criterion) {
    let curve = unit_circle();
    let f = fourier();
    let k = ctx(1.0, 0.0);
    let q = quad(1024, 64);
    let mut g = c.benchmark_group("singular_integral");
    g.sample_size(10);
    g.bench_function("n=1024", |b| {
        b.iter(|| singular_integral(&k, &curve, &f, black_box(Point2::new(1.0, 0.0)), &q).unwrap())
    });
    g.finish();
}

fn area(c: &mut Criterion) {
    let curve = unit_circle();
    let k = ctx(1.0, 0.5);
    let mut g = c.benchmark_group("area_integral");
    g.sample_size(10);
    for m in [128, 256, 512] {
        let q = quad(256, m);
        g.bench_with_input(BenchmarkId::from_parameter(m), &q, |b, q| {
            b.iter(|| area_integral(&k, &curve, black_box(Point2::new(0.3, 0.2)), q).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, cauchy, singular, area);
criterion_main!(benches);
