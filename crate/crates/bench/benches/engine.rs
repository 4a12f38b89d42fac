//! Engine benchmarks: ring construction (Groebner bases and Hilbert
//! series), resolutions, homology both ways, and the full checker path.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use omega2_bench::{coker, cone_ring, cusp_ring, cyclic, node_ring};
use omega2_core::homology::tor;
use omega2_core::invariants::theta;
use omega2_core::oracle::tor_length_profile;
use omega2_core::resolution::Resolution;
use omega2_core::verifier::{derive_seed, run_check, CheckInput, CheckerId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ring_construction(c: &mut Criterion) {
    c.bench_function("ring/node", |b| b.iter(|| black_box(node_ring())));
    c.bench_function("ring/cone", |b| b.iter(|| black_box(cone_ring())));
}

fn module_construction(c: &mut Criterion) {
    let cone = cone_ring();
    c.bench_function("module/cone_mf", |b| {
        b.iter(|| black_box(coker(&cone, vec![0, 0], &[&["x", "z"], &["z", "y"]])))
    });
}

fn resolutions(c: &mut Criterion) {
    let node = node_ring();
    let k = cyclic(&node, &["x", "y"]);
    c.bench_function("resolve/node_k_len8", |b| {
        b.iter(|| black_box(Resolution::of(&k, 8).unwrap()))
    });

    let cusp = cusp_ring();
    let mf = coker(&cusp, vec![0, 1], &[&["y", "x^2"], &["x", "y"]]);
    c.bench_function("resolve/cusp_mf_len8", |b| {
        b.iter(|| black_box(Resolution::of(&mf, 8).unwrap()))
    });
}

fn homology(c: &mut Criterion) {
    let node = node_ring();
    let mx = cyclic(&node, &["x"]);
    let my = cyclic(&node, &["y"]);
    let mxy = mx.direct_sum(&my).unwrap();

    c.bench_function("tor/groebner_mx_mxy_2", |b| {
        b.iter(|| black_box(tor(&mx, &mxy, 2).unwrap()))
    });
    c.bench_function("tor/oracle_mx_mxy_2_deg12", |b| {
        b.iter(|| black_box(tor_length_profile(&mx, &mxy, 2, 12).unwrap()))
    });
    c.bench_function("theta/mx_my", |b| {
        b.iter(|| {
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            black_box(theta(&mx, &my, 16, &mut rng).unwrap())
        })
    });
}

fn checkers(c: &mut Criterion) {
    let node = node_ring();
    let mx = cyclic(&node, &["x"]);
    let my = cyclic(&node, &["y"]);
    let mxy = mx.direct_sum(&my).unwrap();

    c.bench_function("check/torsion_t4_mxy", |b| {
        b.iter(|| {
            let input = CheckInput {
                case_id: "bench",
                left_name: "Mxy",
                left: &mxy,
                right_name: None,
                right: None,
                q: 2,
                trials: 16,
                max_degree: 12,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(1, "bench", "T4", &["t4", "Mxy"]));
            black_box(run_check(CheckerId::T4, &input, &mut rng).unwrap())
        })
    });
    c.bench_function("check/exact_sequence_ab_mx_my", |b| {
        b.iter(|| {
            let input = CheckInput {
                case_id: "bench",
                left_name: "Mx",
                left: &mx,
                right_name: Some("My"),
                right: Some(&my),
                q: 2,
                trials: 16,
                max_degree: 12,
            };
            let mut rng =
                ChaCha8Rng::seed_from_u64(derive_seed(1, "bench", "AB", &["ab", "Mx", "My"]));
            black_box(run_check(CheckerId::Ab, &input, &mut rng).unwrap())
        })
    });
}

criterion_group!(
    benches,
    ring_construction,
    module_construction,
    resolutions,
    homology,
    checkers
);
criterion_main!(benches);
