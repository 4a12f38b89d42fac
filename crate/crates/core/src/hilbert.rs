//! Hilbert series of graded modules as exact rational functions.
//!
//! A series is stored as a Laurent-polynomial numerator over the fixed
//! denominator prod_v (1 - t^{w_v}), one factor per ring variable. Dimension
//! is the pole order at t = 1, length is the value at t = 1 when the pole
//! cancels, and degreewise coefficients come from expanding the geometric
//! factors over a finite window. All arithmetic is exact over the integers.

use crate::monomial::{Monomial, Vars};
use std::collections::BTreeMap;

/// Integer Laurent polynomial in one variable t.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0)
    }

    /// t^d
    pub fn monomial(d: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(d, 1);
        LaurentPoly { coeffs }
    }

    pub fn from_coeffs(pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (d, c) in pairs {
            let e = coeffs.entry(d).or_insert(0i64);
            *e += c;
        }
        coeffs.retain(|_, c| *c != 0);
        LaurentPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, d: i64) -> i64 {
        *self.coeffs.get(&d).unwrap_or(&0)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(d, c)| (*d, *c))
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_coeffs(self.iter().chain(other.iter()))
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly::from_coeffs(self.iter().map(|(d, c)| (d, -c)))
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: i64) -> LaurentPoly {
        LaurentPoly::from_coeffs(self.iter().map(|(d, c)| (d, c * s)))
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut pairs = Vec::new();
        for (d1, c1) in self.iter() {
            for (d2, c2) in other.iter() {
                pairs.push((d1 + d2, c1 * c2));
            }
        }
        LaurentPoly::from_coeffs(pairs)
    }

    /// Multiply by t^e.
    pub fn shift(&self, e: i64) -> LaurentPoly {
        LaurentPoly::from_coeffs(self.iter().map(|(d, c)| (d + e, c)))
    }

    /// Value at t = 1: the sum of all coefficients.
    pub fn eval_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Exact quotient by (1 - t), or None when it does not divide. The
    /// quotient coefficients are prefix sums of the dividend's; divisibility
    /// is equivalent to the total sum vanishing.
    pub fn divide_by_one_minus_t(&self) -> Option<LaurentPoly> {
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        if self.eval_one() != 0 {
            return None;
        }
        let lo = self.min_exp().unwrap();
        let hi = self.max_exp().unwrap();
        let mut out = Vec::new();
        let mut run = 0i64;
        for d in lo..hi {
            run += self.coeff(d);
            if run != 0 {
                out.push((d, run));
            }
        }
        Some(LaurentPoly::from_coeffs(out))
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (d, c) in self.iter() {
            let mag = c.abs();
            if s.is_empty() {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if c < 0 { " - " } else { " + " });
            }
            let base = match d {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{d}"),
            };
            if base.is_empty() {
                s.push_str(&mag.to_string());
            } else if mag == 1 {
                s.push_str(&base);
            } else {
                s.push_str(&format!("{mag}*{base}"));
            }
        }
        s
    }
}

/// Hilbert series of a graded module: numerator / prod_v (1 - t^{w_v}).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    pub numerator: LaurentPoly,
    pub weights: Vec<u32>,
}

impl HilbertData {
    pub fn zero(weights: Vec<u32>) -> Self {
        HilbertData {
            numerator: LaurentPoly::zero(),
            weights,
        }
    }

    /// Series of a twisted free module with generators in degrees `twists`.
    pub fn free_module(twists: &[i64], weights: Vec<u32>) -> Self {
        HilbertData {
            numerator: LaurentPoly::from_coeffs(twists.iter().map(|&a| (a, 1))),
            weights,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn add(&self, other: &HilbertData) -> HilbertData {
        assert_eq!(self.weights, other.weights, "mixed gradings");
        HilbertData {
            numerator: self.numerator.add(&other.numerator),
            weights: self.weights.clone(),
        }
    }

    pub fn sub(&self, other: &HilbertData) -> HilbertData {
        assert_eq!(self.weights, other.weights, "mixed gradings");
        HilbertData {
            numerator: self.numerator.sub(&other.numerator),
            weights: self.weights.clone(),
        }
    }

    /// Series of the degree-shifted module whose component in degree d is the
    /// original's in degree d - e (numerator times t^e).
    pub fn shifted(&self, e: i64) -> HilbertData {
        HilbertData {
            numerator: self.numerator.shift(e),
            weights: self.weights.clone(),
        }
    }

    /// Two data describe the same series exactly when numerators agree, the
    /// denominator being fixed by the grading.
    pub fn same_series(&self, other: &HilbertData) -> bool {
        self.weights == other.weights && self.numerator == other.numerator
    }

    /// Degreewise dimensions on [min_exp(numerator), up_to], exact.
    /// Dense window of coefficients covering min(0, lowest exponent)..=up_to.
    pub fn coefficients(&self, up_to: i64) -> BTreeMap<i64, i64> {
        let mut out = BTreeMap::new();
        let lo = match self.numerator.min_exp() {
            Some(lo) => lo.min(0),
            None => {
                for d in 0..=up_to {
                    out.insert(d, 0);
                }
                return out;
            }
        };
        if up_to < lo {
            return out;
        }
        let mut buf: Vec<i64> = (lo..=up_to).map(|d| self.numerator.coeff(d)).collect();
        for &w in &self.weights {
            let w = w as i64;
            for idx in 0..buf.len() {
                let d = lo + idx as i64;
                if d - w >= lo {
                    buf[idx] += buf[(idx as i64 - w) as usize];
                }
            }
        }
        for (idx, &c) in buf.iter().enumerate() {
            out.insert(lo + idx as i64, c);
        }
        out
    }

    pub fn coefficient(&self, d: i64) -> i64 {
        *self.coefficients(d).get(&d).unwrap_or(&0)
    }

    /// Smallest degree with a nonzero coefficient; None for the zero module.
    /// The first nonzero coefficient occurs no later than the numerator's top
    /// exponent, so the search window is finite.
    pub fn lowest_degree(&self) -> Option<i64> {
        let hi = self.numerator.max_exp()?;
        self.coefficients(hi)
            .into_iter()
            .find(|(_, c)| *c != 0)
            .map(|(d, _)| d)
    }

    /// Krull dimension of the support: variable count minus the multiplicity
    /// of (1 - t) in the numerator. The zero module reports -1.
    pub fn dimension(&self) -> i64 {
        if self.numerator.is_zero() {
            return -1;
        }
        let n = self.weights.len() as i64;
        let mut nu = self.numerator.clone();
        let mut mult = 0i64;
        while mult < n {
            match nu.divide_by_one_minus_t() {
                Some(q) => {
                    nu = q;
                    mult += 1;
                }
                None => break,
            }
        }
        n - mult
    }

    /// Total length when finite (dimension <= 0), else None.
    pub fn length(&self) -> Option<i64> {
        if self.numerator.is_zero() {
            return Some(0);
        }
        let mut nu = self.numerator.clone();
        for _ in 0..self.weights.len() {
            nu = nu.divide_by_one_minus_t()?;
        }
        // residual denominator factors (1 + t + .. + t^{w-1}) evaluate to w
        let denom: i64 = self.weights.iter().map(|&w| w as i64).product();
        let num = nu.eval_one();
        assert_eq!(num % denom, 0, "length must be an integer");
        Some(num / denom)
    }

    /// Coefficientwise `self <= other` on every degree up to `up_to`.
    pub fn dominated_by(&self, other: &HilbertData, up_to: i64) -> bool {
        assert_eq!(self.weights, other.weights, "mixed gradings");
        let lo = match (self.numerator.min_exp(), other.numerator.min_exp()) {
            (None, _) => return true,
            (Some(a), None) => a.min(up_to),
            (Some(a), Some(b)) => a.min(b),
        };
        let mine = self.coefficients(up_to);
        let theirs = other.coefficients(up_to);
        for d in lo..=up_to {
            if mine.get(&d).unwrap_or(&0) > theirs.get(&d).unwrap_or(&0) {
                return false;
            }
        }
        true
    }

    pub fn display(&self) -> String {
        let den: Vec<String> = self
            .weights
            .iter()
            .map(|w| {
                if *w == 1 {
                    "(1 - t)".to_string()
                } else {
                    format!("(1 - t^{w})")
                }
            })
            .collect();
        format!("({}) / {}", self.numerator.display(), den.join(""))
    }
}

/// Numerator of the Hilbert series of S/J for a monomial ideal J, by the
/// standard colon recursion N(J + m) = N(J) - t^deg(m) * N(J : m).
pub fn monomial_quotient_numerator(gens: &[Monomial], vars: &Vars) -> LaurentPoly {
    let mut min: Vec<Monomial> = Vec::new();
    'outer: for (i, m) in gens.iter().enumerate() {
        for (j, m2) in gens.iter().enumerate() {
            if i != j && m2.divides(m) && (m2 != m || j < i) {
                continue 'outer;
            }
        }
        if !min.contains(m) {
            min.push(m.clone());
        }
    }
    numerator_rec(&min, vars)
}

fn numerator_rec(min_gens: &[Monomial], vars: &Vars) -> LaurentPoly {
    if min_gens.iter().any(|m| m.is_one()) {
        return LaurentPoly::zero();
    }
    if min_gens.is_empty() {
        return LaurentPoly::one();
    }
    let (last, rest) = min_gens.split_last().unwrap();
    let base = monomial_quotient_numerator(rest, vars);
    let colon: Vec<Monomial> = rest
        .iter()
        .map(|m| {
            let g = m.gcd(last);
            g.quotient_into(m).unwrap()
        })
        .collect();
    let colon_num = monomial_quotient_numerator(&colon, vars);
    base.sub(&colon_num.shift(last.degree(vars)))
}

/// Hilbert numerator of a quotient of a twisted free module by the monomial
/// submodule spanned componentwise by `leads`: the sum over components of
/// t^{a_i} times the numerator of S modulo that component's monomial ideal.
pub fn numerator_from_lead_terms(
    leads: &[(Monomial, usize)],
    twists: &[i64],
    vars: &Vars,
) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for (i, &a) in twists.iter().enumerate() {
        let mine: Vec<Monomial> = leads
            .iter()
            .filter(|(_, c)| *c == i)
            .map(|(m, _)| m.clone())
            .collect();
        let n = monomial_quotient_numerator(&mine, vars);
        acc = acc.add(&n.shift(a));
    }
    acc
}
