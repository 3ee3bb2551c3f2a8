use criterion::{black_box, criterion_group, criterion_main, Criterion};

use minfaith_bench::bench_rings;
use minfaith_core::groups::{structure_scan, Heisenberg, Metacyclic};
use minfaith_core::mackey::irrep_catalog;
use minfaith_core::oracle::{character_table_with, min_faithful_exhaustive, DEFAULT_CAP};
use minfaith_core::solver::{construct_faithful_heisenberg, formula_heisenberg, solve_heisenberg};

fn closed_forms_and_greedy(c: &mut Criterion) {
    let mut group = c.benchmark_group("heisenberg");
    for (name, r) in bench_rings() {
        group.bench_function(format!("formula/{name}"), |b| b.iter(|| formula_heisenberg(black_box(r.params()), 1)));
        group.bench_function(format!("greedy/{name}"), |b| b.iter(|| solve_heisenberg(black_box(&r), 1).unwrap()));
        group.bench_function(format!("catalog/{name}"), |b| b.iter(|| irrep_catalog(black_box(&r), 1).unwrap()));
    }
    group.finish();
}

fn constructions(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct");
    group.sample_size(10);
    for (name, r) in bench_rings().into_iter().take(3) {
        let h = Heisenberg::new(r, 1).unwrap();
        group.bench_function(name, |b| b.iter(|| construct_faithful_heisenberg(&h, DEFAULT_CAP).unwrap()));
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    let (_, f5) = bench_rings().remove(0);
    let h = Heisenberg::new(f5, 1).unwrap();
    let m = Metacyclic::new(9, 6, 2, 0).unwrap();
    for (name, g) in [("Hei3(F5)", &h as &dyn minfaith_core::FiniteGroup), ("Z/9 x| units", &m)] {
        let s = structure_scan(g, DEFAULT_CAP).unwrap();
        group.bench_function(name, |b| b.iter(|| min_faithful_exhaustive(&character_table_with(g, &s).unwrap()).value));
    }
    group.finish();
}

criterion_group!(benches, closed_forms_and_greedy, constructions, oracle);
criterion_main!(benches);
