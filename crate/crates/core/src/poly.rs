//! Sparse multivariate polynomials over a prime field.
//!
//! Terms are kept sorted in descending weighted-grevlex order with no zero
//! coefficients, so equality is structural and the lead term is `terms[0]`.
//! Every operation that needs the term order takes the variable set
//! explicitly; nothing here assumes a global ring.

use crate::field::PrimeField;
use crate::monomial::{Monomial, Vars};
use std::cmp::Ordering;
use std::fmt::Write;

/// Marker error: a degree computation met terms of mixed weighted degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mixed;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(field: &PrimeField, c: i64, nvars: usize) -> Self {
        let c = field.reduce_i64(c);
        if c == 0 {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![(Monomial::one(nvars), c)],
            }
        }
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial {
            terms: vec![(Monomial::one(nvars), 1)],
        }
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        Polynomial {
            terms: vec![(Monomial::var(nvars, i), 1)],
        }
    }

    pub fn term(m: Monomial, c: u32) -> Self {
        if c == 0 {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![(m, c)],
            }
        }
    }

    /// Build from arbitrary (monomial, coefficient) pairs: sorts and merges.
    pub fn from_terms(field: &PrimeField, vars: &Vars, raw: Vec<(Monomial, u32)>) -> Self {
        let mut raw: Vec<(Monomial, u32)> = raw
            .into_iter()
            .filter(|(_, c)| *c % field.modulus() != 0)
            .collect();
        raw.sort_by(|a, b| b.0.grevlex_cmp(&a.0, vars));
        let mut terms: Vec<(Monomial, u32)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            let c = c % field.modulus();
            if let Some(last) = terms.last_mut() {
                if last.0 == m {
                    last.1 = field.add(last.1, c);
                    continue;
                }
            }
            terms.push((m, c));
        }
        terms.retain(|(_, c)| *c != 0);
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn lead_term(&self) -> Option<(&Monomial, u32)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn lead_coeff(&self) -> Option<u32> {
        self.terms.first().map(|(_, c)| *c)
    }

    /// Weighted degree when homogeneous; `Err` if terms have mixed degrees,
    /// `Ok(None)` for the zero polynomial.
    pub fn homogeneous_degree(&self, vars: &Vars) -> Result<Option<i64>, Mixed> {
        let mut deg = None;
        for (m, _) in &self.terms {
            let d = m.degree(vars);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(Mixed),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn is_homogeneous(&self, vars: &Vars) -> bool {
        self.homogeneous_degree(vars).is_ok()
    }

    /// Nonzero constant (degree-0) polynomials are the units of a positively
    /// graded quotient ring; entries must be in normal form for this test.
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn add(&self, other: &Polynomial, field: &PrimeField, vars: &Vars) -> Polynomial {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.grevlex_cmp(&other.terms[j].0, vars) {
                Ordering::Greater => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(self.terms[i].1, other.terms[j].1);
                    if c != 0 {
                        terms.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        Polynomial { terms }
    }

    pub fn neg(&self, field: &PrimeField) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(*c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial, field: &PrimeField, vars: &Vars) -> Polynomial {
        self.add(&other.neg(field), field, vars)
    }

    pub fn scale(&self, c: u32, field: &PrimeField) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), field.mul(*k, c)))
                .collect(),
        }
    }

    /// Multiply by a single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: u32, field: &PrimeField) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(n, k)| (n.mul(m), field.mul(*k, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial, field: &PrimeField, vars: &Vars) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, c) in &self.terms {
            for (n, k) in &other.terms {
                raw.push((m.mul(n), field.mul(*c, *k)));
            }
        }
        Polynomial::from_terms(field, vars, raw)
    }

    pub fn make_monic(&self, field: &PrimeField) -> Polynomial {
        match self.lead_coeff() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(field.inv(c), field),
        }
    }

    pub fn partial_derivative(&self, i: usize, field: &PrimeField, vars: &Vars) -> Polynomial {
        let mut raw = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            let coeff = field.mul(*c, field.reduce_i64(e as i64));
            raw.push((Monomial::from_exps(exps), coeff));
        }
        Polynomial::from_terms(field, vars, raw)
    }

    pub fn display(&self, vars: &Vars) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            if m.is_one() {
                let _ = write!(out, "{c}");
            } else if *c == 1 {
                out.push_str(&m.display(vars));
            } else {
                let _ = write!(out, "{}*{}", c, m.display(vars));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (PrimeField, Vars) {
        (
            PrimeField::default_field(),
            Vars::standard(&["x", "y"]).unwrap(),
        )
    }

    #[test]
    fn add_cancels() {
        let (f, v) = setup();
        let x = Polynomial::variable(2, 0);
        let s = x.add(&x.neg(&f), &f, &v);
        assert!(s.is_zero());
    }

    #[test]
    fn product_is_sorted_and_merged() {
        let (f, v) = setup();
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let xp_y = x.add(&y, &f, &v);
        let sq = xp_y.mul(&xp_y, &f, &v);
        // (x+y)^2 = x^2 + 2xy + y^2
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.lead_monomial().unwrap().exps(), &[2, 0]);
        assert!(sq.is_homogeneous(&v));
        assert_eq!(sq.homogeneous_degree(&v), Ok(Some(2)));
    }

    #[test]
    fn derivative() {
        let (f, v) = setup();
        let x = Polynomial::variable(2, 0);
        let x3 = x.mul(&x, &f, &v).mul(&x, &f, &v);
        let d = x3.partial_derivative(0, &f, &v);
        assert_eq!(d.num_terms(), 1);
        assert_eq!(d.lead_coeff(), Some(3));
        assert_eq!(d.lead_monomial().unwrap().exps(), &[2, 0]);
    }
}
