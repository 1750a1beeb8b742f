//! Pipeline stage benchmarks: family construction, exact minrank, the
//! relaxation solve, rounding, and spectra. Sizes are chosen so a full run
//! stays in the minutes range; raise them locally when profiling.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use idxcode::graph::gen_bounded_minrank_instance;
use idxcode::rounding::{self, RoundingParams, AUGMENTATION_C};
use idxcode::{coloring, gf2, gk, sdp, spectral};

fn family_construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_gk");
    for k in [3usize, 4, 5] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| gk::build_gk(k).unwrap())
        });
    }
    group.finish();
}

fn exact_minrank(c: &mut Criterion) {
    let g3 = gk::build_gk(3).unwrap();
    let complement = g3.graph().complement();
    let instance = gen_bounded_minrank_instance(12, 3, 0.5, 7).complement();
    let mut group = c.benchmark_group("minrank_oracle");
    group.sample_size(10);
    group.bench_function("complement_g3", |b| {
        b.iter(|| gf2::minrank_oracle(&complement, 4))
    });
    group.bench_function("instance_n12_k3", |b| {
        b.iter(|| gf2::minrank_oracle(&instance, 4))
    });
    group.finish();
}

fn relaxation_solve(c: &mut Criterion) {
    let g3 = gk::build_gk(3).unwrap();
    let mut group = c.benchmark_group("solve_vector_coloring");
    group.sample_size(10);
    group.bench_function("g3_strict", |b| {
        b.iter(|| sdp::solve_vector_coloring(g3.graph(), true, 1e-5, 1).unwrap())
    });
    group.finish();
}

fn threshold_rounding(c: &mut Criterion) {
    let g3 = gk::build_gk(3).unwrap();
    let g = g3.graph();
    let vc = sdp::solve_vector_coloring(g, true, 1e-5, 1).unwrap();
    let params = RoundingParams::standard(g, vc.sigma(), AUGMENTATION_C, 1);
    let mut group = c.benchmark_group("rounding");
    group.bench_function("kms_prime_g3", |b| {
        b.iter(|| rounding::kms_prime(g, &vc, &params))
    });
    group.sample_size(10);
    group.bench_function("augmented_kms_g3", |b| {
        b.iter(|| rounding::augmented_kms(g, 1e-5, 1).unwrap())
    });
    group.finish();
}

fn coloring_pipeline(c: &mut Criterion) {
    let instance = gen_bounded_minrank_instance(60, 3, 0.5, 3);
    let mut group = c.benchmark_group("coloring");
    group.sample_size(10);
    group.bench_function("color_graph_n60_k3", |b| {
        b.iter(|| coloring::color_graph(&instance, 3, 5).unwrap())
    });
    group.finish();
}

fn adjacency_spectrum(c: &mut Criterion) {
    let g3 = gk::build_gk(3).unwrap();
    let m = spectral::SymmetricMatrix::adjacency(g3.graph());
    c.bench_function("spectrum_g3", |b| {
        b.iter(|| spectral::eigenvalues_sym(&m, 1e-10).unwrap())
    });
}

criterion_group!(
    benches,
    family_construction,
    exact_minrank,
    relaxation_solve,
    threshold_rounding,
    coloring_pipeline,
    adjacency_spectrum
);
criterion_main!(benches);
