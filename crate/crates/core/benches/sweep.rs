//! Benchmarks for the batch sweeps, comparing the rayon path against the
//! sequential fallback on the same workloads, plus kernel microbenchmarks.
//!
//! Run with `cargo bench -p cfsphere-core`; add
//! `--no-default-features` to measure the sequential-only build.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use cfsphere_core::{
    evaluate_samples_sequential, pose_min_clearance, segment_segment_distance, shell_samples,
    ArchitectureParams, LegPair, Pose, SampleSet, Segment, ValidationConfig, Vec3,
};

fn example_arch() -> ArchitectureParams {
    ArchitectureParams::new(
        150.0,
        75.0,
        30.5f64.to_radians(),
        40.5f64.to_radians(),
        8.5,
        300.0,
    )
    .unwrap()
}

fn workload(
    pairs: Vec<LegPair>,
    orientation: Vec3,
    radius: f64,
    step: f64,
) -> (ValidationConfig, SampleSet) {
    let config = ValidationConfig::new(example_arch(), orientation, radius, step, 2500, pairs);
    let samples = shell_samples(&config.shell().unwrap(), config.samples_per_sphere).unwrap();
    (config, samples)
}

fn bench_sweeps(c: &mut Criterion) {
    let narrow = workload(
        LegPair::all(),
        Vec3::new(0.2534, 0.6740, 0.2653),
        13.5,
        1.0,
    );
    let single_pair = workload(
        vec![LegPair::new(1, 2).unwrap()],
        Vec3::new(-0.2301, 0.0413, 3.0209),
        188.4,
        10.0,
    );

    let mut group = c.benchmark_group("shell_sweep");
    group.sample_size(30);
    for (name, (config, samples)) in [("all_pairs_7500", &narrow), ("one_pair_10000", &single_pair)]
    {
        group.bench_with_input(BenchmarkId::new("sequential", name), &(), |b, ()| {
            b.iter(|| {
                evaluate_samples_sequential(
                    &config.arch,
                    config.orientation,
                    black_box(samples),
                    &config.pairs,
                )
                .unwrap()
            })
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", name), &(), |b, ()| {
            b.iter(|| {
                cfsphere_core::evaluate_samples(
                    &config.arch,
                    config.orientation,
                    black_box(samples),
                    &config.pairs,
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

fn bench_kernel(c: &mut Criterion) {
    let s1 = Segment::new(Vec3::new(129.2, -76.1, 0.0), Vec3::new(57.0, -48.7, 300.0));
    let s2 = Segment::new(Vec3::new(129.2, 76.1, 0.0), Vec3::new(21.3, 70.4, 295.0));
    c.bench_function("segment_segment_distance", |b| {
        b.iter(|| segment_segment_distance(black_box(&s1), black_box(&s2)))
    });

    let arch = example_arch();
    let pose = Pose::new(
        Vec3::new(10.0, -4.0, 290.0),
        Vec3::new(0.2534, 0.6740, 0.2653),
    );
    let pairs = LegPair::all();
    c.bench_function("pose_min_clearance_15_pairs", |b| {
        b.iter(|| pose_min_clearance(&arch, black_box(&pose), &pairs).unwrap())
    });
}

criterion_group!(benches, bench_sweeps, bench_kernel);
criterion_main!(benches);
