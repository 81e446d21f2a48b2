use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use uea_core::exec::Exec;
use uea_core::fixtures;
use uea_core::permutahedra::verify_permutahedron;
use uea_core::uea::{compute_products, stasheff_check, Caps};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn products(c: &mut Criterion) {
    let mut g = c.benchmark_group("products_sl2_3x3");
    g.sample_size(10);
    let l = fixtures::sl2();
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            Exec::set_current(mode);
            b.iter(|| black_box(compute_products(&l, Caps::new(3, 3).unwrap()).unwrap()))
        });
    }
    g.finish();
}

fn stasheff(c: &mut Criterion) {
    let mut g = c.benchmark_group("stasheff_heisenberg_3x4");
    g.sample_size(10);
    let l = fixtures::heisenberg();
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            Exec::set_current(mode);
            b.iter(|| {
                let a = compute_products(&l, Caps::new(3, 4).unwrap()).unwrap();
                black_box(stasheff_check(&a).unwrap())
            })
        });
    }
    g.finish();
}

fn permutahedron(c: &mut Criterion) {
    let mut g = c.benchmark_group("permutahedron_4");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            Exec::set_current(mode);
            b.iter(|| black_box(verify_permutahedron(4, true).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, products, stasheff, permutahedron);
criterion_main!(benches);
