use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use nimrep_core::classify::{brute_force_irreducible, neargroup_brute, BruteOptions};
use nimrep_core::fusion::{group_ring, su2_half_ring};
use nimrep_core::groups::{all_subgroups, builtin_group};

fn brute_force(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force_irreducible");
    group.sample_size(10);
    let cases = [
        ("R(D_3) dim 6", Arc::new(group_ring(&builtin_group("D_3").unwrap())), 6),
        ("R(D_4) dim 4", Arc::new(group_ring(&builtin_group("D_4").unwrap())), 4),
        ("A(1,9)_1/2 dim 5", Arc::new(su2_half_ring(9).unwrap()), 5),
    ];
    for (name, ring, dim) in cases {
        for parallel in [false, true] {
            let opts = BruteOptions { parallel, ..BruteOptions::default() };
            let label = if parallel { "parallel" } else { "sequential" };
            group.bench_with_input(BenchmarkId::new(label, name), &dim, |b, &dim| {
                b.iter(|| brute_force_irreducible(ring.clone(), dim, &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn near_group(c: &mut Criterion) {
    let mut group = c.benchmark_group("neargroup_brute");
    group.sample_size(10);
    let g = builtin_group("Z_3").unwrap();
    group.bench_function("K(Z_3,2) p<=4", |b| b.iter(|| neargroup_brute(&g, 2, 4, None).unwrap()));
    group.finish();
}

fn subgroups(c: &mut Criterion) {
    let g = builtin_group("Z_4 x Z_4").unwrap();
    c.bench_function("all_subgroups Z_4 x Z_4", |b| b.iter(|| all_subgroups(&g)));
}

criterion_group!(benches, brute_force, near_group, subgroups);
criterion_main!(benches);
