use criterion::{criterion_group, criterion_main, Criterion};
use p5_algebra::par::Exec;
use p5_toprec::{free_energy, Store};
use std::hint::black_box;

fn bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("free_energy_g6");
    group.sample_size(10);
    for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        group.bench_function(name, |b| {
            b.iter(|| {
                let store = Store::new(exec, None);
                black_box(free_energy(&store, black_box(6)).unwrap())
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
