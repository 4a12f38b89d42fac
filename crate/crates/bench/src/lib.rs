//! Benchmark fixtures: the example rings and modules the engine benches
//! operate on, shared so every bench measures the same inputs.

use omega2_core::parse::parse_polynomial;
use omega2_core::{FPModule, FreeVector, PrimeField, RingSpec, Vars};

/// Coordinate axes: k[x,y]/(xy).
pub fn node_ring() -> RingSpec {
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

/// Weighted cusp: k[x,y]/(y^2 - x^3) with weights (2, 3).
pub fn cusp_ring() -> RingSpec {
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

/// Quadric cone: k[x,y,z]/(xy - z^2), dimension two.
pub fn cone_ring() -> RingSpec {
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

/// Cyclic module R/(gens), generated in degree zero.
pub fn cyclic(r: &RingSpec, gens: &[&str]) -> FPModule {
    let cols = gens
        .iter()
        .map(|g| FreeVector::single(0, parse_polynomial(g, r.field(), r.vars()).unwrap()))
        .collect();
    FPModule::new(r, vec![0], cols).unwrap()
}

/// Cokernel of a square matrix given by rows.
pub fn coker(r: &RingSpec, twists: Vec<i64>, rows: &[&[&str]]) -> FPModule {
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
