//! Monomials in a fixed weighted variable set, with the weighted
//! graded-reverse-lexicographic order.
//!
//! Degrees are weighted: `deg(x_i) = weights[i] >= 1`. Comparison is by
//! weighted degree first; ties break reverse-lexicographically (the monomial
//! with the smaller exponent in the last position where they differ is the
//! larger one).

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt::Write;

/// The ambient variable set: names plus positive integer weights.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Vars {
    pub names: Vec<String>,
    pub weights: Vec<u32>,
}

impl Vars {
    pub fn new(names: Vec<String>, weights: Vec<u32>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidRing("empty variable list".into()));
        }
        if names.len() != weights.len() {
            return Err(Error::InvalidRing(format!(
                "{} variables but {} weights",
                names.len(),
                weights.len()
            )));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidRing("weights must be positive".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !n.chars().next().unwrap().is_ascii_alphabetic() {
                return Err(Error::InvalidRing(format!("bad variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidRing(format!("duplicate variable {n}")));
            }
        }
        Ok(Vars { names, weights })
    }

    pub fn standard(names: &[&str]) -> Result<Self> {
        Vars::new(
            names.iter().map(|s| s.to_string()).collect(),
            vec![1; names.len()],
        )
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

// Derived Ord is the structural order on exponent vectors, used only for
// map keys; term comparisons go through grevlex_cmp or a ModuleOrder.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self, vars: &Vars) -> i64 {
        self.exps
            .iter()
            .zip(&vars.weights)
            .map(|(&e, &w)| e as i64 * w as i64)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        }
    }

    pub fn is_coprime_with(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Weighted grevlex comparison. `Greater` means `self` is the larger term.
    pub fn grevlex_cmp(&self, other: &Monomial, vars: &Vars) -> Ordering {
        let da = self.degree(vars);
        let db = other.degree(vars);
        if da != db {
            return da.cmp(&db);
        }
        // Reverse lex tie-break: scan from the last variable; the monomial
        // with the smaller exponent at the last difference is the larger.
        for i in (0..self.exps.len()).rev() {
            if self.exps[i] != other.exps[i] {
                return if self.exps[i] < other.exps[i] {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        Ordering::Equal
    }

    pub fn display(&self, vars: &Vars) -> String {
        if self.is_one() {
            return "1".into();
        }
        let mut out = String::new();
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            if e == 1 {
                let _ = write!(out, "{}", vars.names[i]);
            } else {
                let _ = write!(out, "{}^{}", vars.names[i], e);
            }
        }
        out
    }
}

/// All monomials of the given weighted degree, in a fixed deterministic order
/// (lexicographic in the exponent vector, first variable outermost).
pub fn monomials_of_degree(vars: &Vars, degree: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if degree < 0 {
        return out;
    }
    let mut exps = vec![0u32; vars.len()];
    fill(vars, 0, degree, &mut exps, &mut out);
    out
}

fn fill(vars: &Vars, i: usize, remaining: i64, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i == vars.len() {
        if remaining == 0 {
            out.push(Monomial::from_exps(exps.clone()));
        }
        return;
    }
    if i + 1 == vars.len() {
        let w = vars.weights[i] as i64;
        if remaining % w == 0 {
            exps[i] = (remaining / w) as u32;
            out.push(Monomial::from_exps(exps.clone()));
            exps[i] = 0;
        }
        return;
    }
    let w = vars.weights[i] as i64;
    let max = remaining / w;
    for e in 0..=max {
        exps[i] = e as u32;
        fill(vars, i + 1, remaining - e * w, exps, out);
    }
    exps[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Vars {
        Vars::standard(&["x", "y"]).unwrap()
    }

    #[test]
    fn grevlex_basics() {
        let v = xy();
        let x = Monomial::var(2, 0);
        let y = Monomial::var(2, 1);
        assert_eq!(x.grevlex_cmp(&y, &v), Ordering::Greater);
        let x2 = x.mul(&x);
        let xy = x.mul(&y);
        let y2 = y.mul(&y);
        assert_eq!(x2.grevlex_cmp(&xy, &v), Ordering::Greater);
        assert_eq!(xy.grevlex_cmp(&y2, &v), Ordering::Greater);
        assert_eq!(y2.grevlex_cmp(&x, &v), Ordering::Greater); // higher degree wins
    }

    #[test]
    fn weighted_degree() {
        let v = Vars::new(vec!["x".into(), "y".into()], vec![2, 3]).unwrap();
        let x = Monomial::var(2, 0);
        let y = Monomial::var(2, 1);
        assert_eq!(x.degree(&v), 2);
        assert_eq!(y.degree(&v), 3);
        // y^2 and x^3 both have degree 6
        let y2 = y.mul(&y);
        let x3 = x.mul(&x).mul(&x);
        assert_eq!(y2.degree(&v), 6);
        assert_eq!(x3.degree(&v), 6);
        // grevlex: last differing exponent smaller => larger; x3 has y-exp 0 < 2
        assert_eq!(x3.grevlex_cmp(&y2, &v), Ordering::Greater);
    }

    #[test]
    fn degree_enumeration_weighted() {
        let v = Vars::new(vec!["x".into(), "y".into()], vec![2, 3]).unwrap();
        // degree 6: x^3, y^2
        let ms = monomials_of_degree(&v, 6);
        assert_eq!(ms.len(), 2);
        // degree 1: none
        assert!(monomials_of_degree(&v, 1).is_empty());
        // standard grading sanity: 4 monomials of degree 3 in 2 vars
        assert_eq!(monomials_of_degree(&xy(), 3).len(), 4);
    }

    #[test]
    fn lcm_gcd_division() {
        let x = Monomial::from_exps(vec![2, 1]);
        let y = Monomial::from_exps(vec![1, 3]);
        assert_eq!(x.lcm(&y).exps(), &[2, 3]);
        assert_eq!(x.gcd(&y).exps(), &[1, 1]);
        assert!(x.gcd(&y).divides(&x));
        assert_eq!(x.gcd(&y).quotient_into(&x).unwrap().exps(), &[1, 0]);
    }
}
