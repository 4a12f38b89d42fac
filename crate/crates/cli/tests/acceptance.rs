//! Acceptance gate: one test per release criterion. Each test name carries
//! its criterion number, so the test listing doubles as the pass/fail
//! scorecard for the whole deliverable.

mod common;

use common::*;
use serde_json::Value;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use omega2_core::functor::{dual, hom, tensor};
use omega2_core::homology::{ext, tor};
use omega2_core::invariants::{theta, torsion_of_tensor, torsion_submodule};
use omega2_core::iso::is_isomorphic;
use omega2_core::oracle::{
    ext_length_profile, multiplication_kernel_profile, profile_matches_series, tor_length_profile,
};
use omega2_core::parse::parse_polynomial;
use omega2_core::resolution::{depth, Resolution};
use omega2_core::{Depth, FPModule, FreeVector, IsoResult, PrimeField, RingSpec, Vars};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xACCE97)
}

fn node_ring() -> RingSpec {
    let field = PrimeField::default_field();
    let vars = Vars::standard(&["x", "y"]).unwrap();
    let (ideal, primes, nzds) = {
        let p = |s: &str| parse_polynomial(s, &field, &vars).unwrap();
        (
            vec![p("x*y")],
            vec![vec![p("x")], vec![p("y")]],
            vec![p("x + y")],
        )
    };
    RingSpec::new(field, vars, ideal, 1, primes, nzds, true).unwrap()
}

fn cusp_ring() -> RingSpec {
    let field = PrimeField::default_field();
    let vars = Vars::new(vec!["x".into(), "y".into()], vec![2, 3]).unwrap();
    let (ideal, primes, nzds) = {
        let p = |s: &str| parse_polynomial(s, &field, &vars).unwrap();
        (
            vec![p("y^2 - x^3")],
            vec![vec![p("y^2 - x^3")]],
            vec![p("x")],
        )
    };
    RingSpec::new(field, vars, ideal, 1, primes, nzds, true).unwrap()
}

fn cone_ring() -> RingSpec {
    let field = PrimeField::default_field();
    let vars = Vars::standard(&["x", "y", "z"]).unwrap();
    let (ideal, primes, nzds) = {
        let p = |s: &str| parse_polynomial(s, &field, &vars).unwrap();
        (
            vec![p("x*y - z^2")],
            vec![vec![p("x*y - z^2")]],
            vec![p("x + y")],
        )
    };
    RingSpec::new(field, vars, ideal, 2, primes, nzds, true).unwrap()
}

fn nonreduced_ring() -> RingSpec {
    let field = PrimeField::default_field();
    let vars = Vars::standard(&["x", "y"]).unwrap();
    let (ideal, primes, nzds) = {
        let p = |s: &str| parse_polynomial(s, &field, &vars).unwrap();
        (vec![p("x^2")], vec![vec![p("x")]], vec![p("y")])
    };
    RingSpec::new(field, vars, ideal, 1, primes, nzds, false).unwrap()
}

/// Cyclic module R/(gens), generated in degree zero.
fn cyclic(r: &RingSpec, gens: &[&str]) -> FPModule {
    let cols = gens
        .iter()
        .map(|g| FreeVector::single(0, parse_polynomial(g, r.field(), r.vars()).unwrap()))
        .collect();
    FPModule::new(r, vec![0], cols).unwrap()
}

/// Cokernel of a square matrix given by rows, as in the corpus case files.
fn coker(r: &RingSpec, twists: Vec<i64>, rows: &[&[&str]]) -> FPModule {
    let parse = |s: &str| parse_polynomial(s, r.field(), r.vars()).unwrap();
    let n = rows.len();
    let cols = (0..n)
        .map(|j| {
            FreeVector::from_components(
                (0..n)
                    .map(|i| (i, parse(rows[i][j])))
                    .filter(|(_, p)| !p.is_zero()),
            )
        })
        .collect();
    FPModule::new(r, twists, cols).unwrap()
}

#[test]
fn criterion_1_worked_example_reproduction() {
    let start = Instant::now();
    let r = node_ring();
    let m = cyclic(&r, &["x"]);

    // The resolution alternates multiplication by x and by y, one
    // generator per stage.
    let res = Resolution::of(&m, 6).unwrap();
    for i in 0..=6 {
        assert_eq!(res.betti(i), 1, "betti {i}");
    }
    for i in 1..=6 {
        let d = res.differential(i);
        assert_eq!((d.rows, d.cols), (1, 1));
        let entry = d.get(0, 0).display(r.vars());
        let expected = if i % 2 == 1 { "x" } else { "y" };
        assert_eq!(entry, expected, "differential {i}");
    }

    // Hom(M, R) is M again up to twist, with an exact isomorphism witness.
    let star = dual(&m).unwrap();
    let iso = is_isomorphic(&star.module, &m, true, 32, &mut rng()).unwrap();
    assert!(
        matches!(iso, IsoResult::Yes { .. }),
        "Hom(M, R) is not isomorphic to a twist of M: {iso:?}"
    );

    // Hom(M, syzygy(M)) vanishes.
    let syz = res.syzygy_module(1).unwrap();
    let h = hom(&m, &syz).unwrap();
    assert!(h.module.is_zero_module(), "Hom(M, syzygy M) is nonzero");

    // Ext^1(M, M) vanishes.
    let e1 = ext(&m, &m, 1).unwrap();
    assert!(e1.is_zero_module(), "Ext^1(M, M) is nonzero");

    // M tensor M-dual is torsion-free.
    let (t, _product) = torsion_of_tensor(&m, &star.module).unwrap();
    assert!(t.module.is_zero_module(), "M tensor M* has nonzero torsion");

    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(1),
        "worked example took {elapsed:?}"
    );
    println!("criterion 1: PASS ({elapsed:?})");
}

#[test]
fn criterion_2_theorem_suite_on_the_corpus() {
    let report_path = std::env::temp_dir().join(format!(
        "omega2-acceptance-suite-{}.json",
        std::process::id()
    ));
    let start = Instant::now();
    let out = omega2(&[
        "corpus",
        "--dir",
        corpus_dir().to_str().unwrap(),
        "--seed",
        "7",
        "--trials",
        "32",
        "--report",
        report_path.to_str().unwrap(),
    ]);
    let elapsed = start.elapsed();
    let stdout = stdout_of(&out);
    assert_eq!(exit_code(&out), 0, "corpus run failed:\n{stdout}");
    assert!(elapsed < Duration::from_secs(60), "corpus took {elapsed:?}");

    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    std::fs::remove_file(&report_path).ok();

    // Size of the corpus: at least 8 cases over at least 3 distinct rings.
    let cases = report["cases"].as_array().unwrap();
    assert!(cases.len() >= 8, "only {} cases", cases.len());
    let mut rings = BTreeSet::new();
    for entry in std::fs::read_dir(corpus_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "case") {
            let text = std::fs::read_to_string(&path).unwrap();
            let ring_block: String = text
                .lines()
                .skip_while(|l| l.trim() != "[ring]")
                .skip(1)
                .take_while(|l| !l.trim_start().starts_with('['))
                .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
                .collect::<Vec<_>>()
                .join("\n");
            rings.insert(ring_block);
        }
    }
    assert!(rings.len() >= 3, "only {} distinct rings", rings.len());

    // Every one of the twelve checkers appears, every fully-hypothesized
    // check verifies, and nothing is refuted or inconclusive.
    assert_eq!(report["summary"]["refuted"], 0);
    assert_eq!(report["summary"]["inconclusive"], 0);
    assert_eq!(report["summary"]["expectation_mismatches"], 0);
    let mut checkers = BTreeSet::new();
    let mut total = 0;
    for case in cases {
        for check in case["checks"].as_array().unwrap() {
            total += 1;
            let rep = &check["report"];
            checkers.insert(rep["checker"].as_str().unwrap().to_owned());
            let all_met = rep["hypotheses"]
                .as_array()
                .unwrap()
                .iter()
                .all(|h| h["outcome"] == "met");
            if all_met {
                assert_eq!(
                    rep["status"], "verified",
                    "{}/{} has its hypotheses met but is not verified",
                    case["case"], check["check"]
                );
            }
        }
    }
    let expected: BTreeSet<String> = [
        "T1", "T2", "T4", "T5", "L21", "L22", "P23", "L24", "L32", "P33", "AB", "ARC",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    assert_eq!(checkers, expected, "checker coverage");
    println!(
        "criterion 2: PASS ({total} checks, {} rings, {elapsed:?})",
        rings.len()
    );
}

#[test]
fn criterion_3_hypothesis_sharpness() {
    let report_path = std::env::temp_dir().join(format!(
        "omega2-acceptance-sharpness-{}.json",
        std::process::id()
    ));
    let case = case_path("node_sharpness.case");
    let out = omega2(&[
        "verify",
        "--case",
        case.to_str().unwrap(),
        "--report",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0, "stdout:\n{}", stdout_of(&out));

    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    std::fs::remove_file(&report_path).ok();
    let checks = report["cases"][0]["checks"].as_array().unwrap();

    // Every sharpness check must stop at hypothesis_not_met; none may be
    // promoted to verified.
    for check in checks {
        assert_eq!(
            check["report"]["status"], "hypothesis_not_met",
            "{} was not flagged",
            check["check"]
        );
    }

    // Dropping the rank hypothesis makes the torsion conclusion genuinely
    // false: the axis module's self product is torsion-free.
    let t4 = checks
        .iter()
        .find(|c| c["report"]["checker"] == "T4")
        .expect("a T4 sharpness check");
    let conclusion = t4["report"]["conclusion"].as_str().unwrap();
    assert!(
        conclusion.contains("fails"),
        "expected the evaluated conclusion to fail, got: {conclusion}"
    );
    assert_eq!(t4["report"]["witnesses"]["torsion_length"], "0");

    // The natural-map check must be stopped by Tor-dependence.
    let t1 = checks
        .iter()
        .find(|c| c["report"]["checker"] == "T1")
        .expect("a T1 sharpness check");
    let tor_hyp = t1["report"]["hypotheses"]
        .as_array()
        .unwrap()
        .iter()
        .find(|h| h["name"] == "Tor-independent pair")
        .expect("a Tor-independence hypothesis");
    assert_eq!(tor_hyp["outcome"], "not_met");
    println!("criterion 3: PASS ({} sharpness checks)", checks.len());
}

#[test]
fn criterion_4_oracle_equivalence_across_the_corpus() {
    let node = node_ring();
    let mx = cyclic(&node, &["x"]);
    let my = cyclic(&node, &["y"]);
    let mxy = mx.direct_sum(&my).unwrap();
    let k = cyclic(&node, &["x", "y"]);
    let mu = cyclic(&node, &["x + y"]);
    let rn = FPModule::ring_module(&node);

    let cusp = cusp_ring();
    let c = coker(&cusp, vec![0, 1], &[&["y", "x^2"], &["x", "y"]]);
    let kc = cyclic(&cusp, &["x", "y"]);
    let rc = FPModule::ring_module(&cusp);

    let cone = cone_ring();
    let q = coker(&cone, vec![0, 0], &[&["x", "z"], &["z", "y"]]);
    let kq = cyclic(&cone, &["x", "y", "z"]);
    let rq = FPModule::ring_module(&cone);

    let nr = nonreduced_ring();
    let m_nr = cyclic(&nr, &["x"]);
    let n_nr = cyclic(&nr, &["y"]);
    let r_nr = FPModule::ring_module(&nr);

    let max_degree = 12;
    let mut computations = 0usize;

    let tor_pairs: Vec<(&FPModule, &FPModule)> = vec![
        (&mx, &my),
        (&mx, &mx),
        (&mx, &mxy),
        (&mxy, &mxy),
        (&mx, &k),
        (&k, &k),
        (&mu, &mx),
        (&my, &mxy),
        (&c, &c),
        (&c, &kc),
        (&kc, &kc),
        (&q, &q),
        (&q, &kq),
        (&m_nr, &n_nr),
        (&m_nr, &m_nr),
    ];
    for (m, n) in &tor_pairs {
        for i in [1usize, 2] {
            let groebner = tor(m, n, i).unwrap();
            let oracle = tor_length_profile(m, n, i, max_degree).unwrap();
            assert!(
                profile_matches_series(&oracle, &groebner, max_degree),
                "Tor_{i} disagrees with the slice oracle"
            );
            computations += 1;
        }
    }

    let ext_pairs: Vec<(&FPModule, &FPModule)> = vec![
        (&mx, &mx),
        (&mx, &my),
        (&k, &mx),
        (&mxy, &mx),
        (&mx, &rn),
        (&c, &c),
        (&c, &rc),
        (&q, &rq),
        (&m_nr, &r_nr),
    ];
    for (m, n) in &ext_pairs {
        for i in [1usize, 2] {
            let groebner = ext(m, n, i).unwrap();
            let oracle = ext_length_profile(m, n, i, max_degree).unwrap();
            assert!(
                profile_matches_series(&oracle, &groebner, max_degree),
                "Ext^{i} disagrees with the slice oracle"
            );
            computations += 1;
        }
    }

    let torsion_modules: Vec<&FPModule> = vec![&mx, &mxy, &mu, &k, &c, &kc, &m_nr, &n_nr];
    for m in &torsion_modules {
        let t = torsion_submodule(m).unwrap();
        let oracle = multiplication_kernel_profile(m, &t.witness, t.power, max_degree).unwrap();
        assert!(
            profile_matches_series(&oracle, &t.module, max_degree),
            "torsion disagrees with the multiplication-kernel oracle"
        );
        computations += 1;
    }

    assert!(computations >= 40, "only {computations} oracle comparisons");
    println!("criterion 4: PASS ({computations} oracle-checked homology computations)");
}

#[test]
fn criterion_5_quantitative_spot_values() {
    let node = node_ring();
    let mx = cyclic(&node, &["x"]);
    let my = cyclic(&node, &["y"]);
    let mxy = mx.direct_sum(&my).unwrap();
    let mu = cyclic(&node, &["x + y"]);

    assert_eq!(theta(&mx, &my, 32, &mut rng()).unwrap().value, 1);
    assert_eq!(theta(&mx, &mx, 32, &mut rng()).unwrap().value, -1);

    let mxy_star = dual(&mxy).unwrap().module;
    assert_eq!(theta(&mxy, &mxy_star, 32, &mut rng()).unwrap().value, 0);
    let (t, _product) = torsion_of_tensor(&mxy, &mxy_star).unwrap();
    assert_eq!(t.module.hilbert().length(), Some(2));

    let mx_star = dual(&mx).unwrap().module;
    let t1 = tor(&mx, &mx_star, 1).unwrap();
    assert_eq!(t1.hilbert().length(), Some(1));

    let product = tensor(&mx, &mu).unwrap().module;
    let depths = [
        depth(&mx).unwrap(),
        depth(&mu).unwrap(),
        depth(&FPModule::ring_module(&node)).unwrap(),
        depth(&product).unwrap(),
    ];
    assert_eq!(
        depths,
        [
            Depth::Finite(1),
            Depth::Finite(0),
            Depth::Finite(1),
            Depth::Finite(0)
        ]
    );
    println!("criterion 5: PASS");
}

#[test]
fn criterion_6_reports_are_deterministic() {
    let a_path = std::env::temp_dir().join(format!(
        "omega2-acceptance-det-a-{}.json",
        std::process::id()
    ));
    let b_path = std::env::temp_dir().join(format!(
        "omega2-acceptance-det-b-{}.json",
        std::process::id()
    ));
    for path in [&a_path, &b_path] {
        let out = omega2(&[
            "corpus",
            "--dir",
            corpus_dir().to_str().unwrap(),
            "--seed",
            "11",
            "--report",
            path.to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&out), 0);
    }
    let a = normalize_timing(&std::fs::read_to_string(&a_path).unwrap());
    let b = normalize_timing(&std::fs::read_to_string(&b_path).unwrap());
    std::fs::remove_file(&a_path).ok();
    std::fs::remove_file(&b_path).ok();
    assert_eq!(a, b, "reports differ outside the timing block");
    println!("criterion 6: PASS ({} report bytes)", a.len());
}

#[test]
fn criterion_7_theta_stability_and_additivity() {
    let node = node_ring();
    let mx = cyclic(&node, &["x"]);
    let my = cyclic(&node, &["y"]);
    let mxy = mx.direct_sum(&my).unwrap();
    let k = cyclic(&node, &["x", "y"]);
    let mu = cyclic(&node, &["x + y"]);
    let rn = FPModule::ring_module(&node);

    // Stability: the value read off the first period equals the value read
    // off the second period on every admissible pair.
    let lefts = [&mx, &my, &mxy];
    let rights = [&mx, &my, &mxy, &k, &mu, &rn];
    let mut pairs = 0;
    for m in lefts {
        for n in rights {
            let t = theta(m, n, 32, &mut rng()).unwrap();
            assert_eq!(
                t.tor_lengths[1] - t.tor_lengths[0],
                t.tor_lengths[3] - t.tor_lengths[2],
                "theta drifts across periods"
            );
            pairs += 1;
        }
    }
    assert_eq!(pairs, 18);

    // Additivity over the syzygy sequences of the corpus modules: for the
    // free cover F of N, theta(M, F) = theta(M, syzygy N) + theta(M, N).
    let cusp = cusp_ring();
    let c = coker(&cusp, vec![0, 1], &[&["y", "x^2"], &["x", "y"]]);
    let kc = cyclic(&cusp, &["x", "y"]);

    let mut sequences = 0;
    let node_targets = [
        mx.clone(),
        my.clone(),
        mxy.clone(),
        k.clone(),
        mu.clone(),
        mx.shifted(-1),
        k.shifted(2),
        mxy.shifted(1),
    ];
    let cusp_targets = [c.clone(), kc.clone(), c.shifted(1)];
    let instances: Vec<(&FPModule, &[FPModule])> = vec![
        (&mx, &node_targets),
        (&mxy, &node_targets),
        (&c, &cusp_targets),
    ];
    for (m, targets) in instances {
        for n in targets {
            let res = Resolution::of(n, 2).unwrap();
            let cover = FPModule::new(n.ring(), res.stage_twists(0).to_vec(), vec![]).unwrap();
            let syzygy = res.syzygy_module(1).unwrap();
            let whole = theta(m, &cover, 32, &mut rng()).unwrap().value;
            let left = theta(m, &syzygy, 32, &mut rng()).unwrap().value;
            let right = theta(m, n, 32, &mut rng()).unwrap().value;
            assert_eq!(whole, 0, "theta against a free module");
            assert_eq!(whole, left + right, "theta is not additive");
            sequences += 1;
        }
    }
    assert!(sequences >= 10, "only {sequences} sequences");
    println!("criterion 7: PASS ({pairs} stable pairs, {sequences} exact sequences)");
}
