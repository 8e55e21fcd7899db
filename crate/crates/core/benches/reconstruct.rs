//! Criterion benches over the three enumeration kernels. With the default
//! `parallel` feature each workload is measured twice: on the default rayon
//! pool and pinned to a single thread, so the data-parallel speedup is
//! visible next to the sequential baseline. Built with
//! `--no-default-features` the crate itself is sequential and a single
//! fallback series is recorded.

use criterion::{criterion_group, criterion_main, Criterion};

use kset_recon::{
    bd_enumerate, brute_force_consistent, connected_ksets, pendant_pairs,
    random_triangle_free_connected, tf_enumerate, BruteForceFilter, Graph, KSetInstance,
};

fn bench_modes<F>(c: &mut Criterion, name: &str, task: F)
where
    F: Fn() + Sync,
{
    let mut group = c.benchmark_group(name);
    group.sample_size(10);
    #[cfg(feature = "parallel")]
    {
        group.bench_function("parallel", |b| b.iter(&task));
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        group.bench_function("sequential", |b| pool.install(|| b.iter(&task)));
    }
    #[cfg(not(feature = "parallel"))]
    group.bench_function("sequential-fallback", |b| b.iter(&task));
    group.finish();
}

fn tf_workload() -> KSetInstance {
    connected_ksets(&random_triangle_free_connected(16, 7), 3).unwrap()
}

fn bd_workload() -> KSetInstance {
    connected_ksets(&pendant_pairs(6), 3).unwrap()
}

fn brute_workload() -> KSetInstance {
    connected_ksets(&Graph::cycle(7), 3).unwrap()
}

fn benches(c: &mut Criterion) {
    let tf = tf_workload();
    bench_modes(c, "tf_enumerate/n16", || {
        tf_enumerate(&tf).unwrap();
    });

    let bd = bd_workload();
    bench_modes(c, "bd_enumerate/pendant6_d4", || {
        bd_enumerate(&bd, 4).unwrap();
    });

    let bf = brute_workload();
    bench_modes(c, "brute_force/c7_connected_tf", || {
        brute_force_consistent(&bf, &BruteForceFilter::connected_triangle_free()).unwrap();
    });
}

criterion_group!(reconstruct, benches);
criterion_main!(reconstruct);
