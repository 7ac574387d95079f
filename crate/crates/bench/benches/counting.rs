use corrset_bench::bernoulli_third;
use corrset_core::{generic_stream, intersection_density};
use criterion::{criterion_group, criterion_main, Criterion};

fn counting(c: &mut Criterion) {
    let mut stream = generic_stream(&bernoulli_third()).unwrap();
    stream.ensure_stages(10).unwrap();
    let n = 1u64 << 22;
    let prefix = stream.prefix(n + 8).unwrap();

    c.bench_function("packed_intersection_density_4M", |b| {
        b.iter(|| intersection_density(&prefix, &[0, 2, 5], n as usize).unwrap())
    });

    let far = stream.schedule().stages()[9].s;
    c.bench_function("structural_density_stage_10", |b| {
        b.iter(|| stream.intersection_density(&[0, 2, 5], far).unwrap())
    });
}

criterion_group!(benches, counting);
criterion_main!(benches);
