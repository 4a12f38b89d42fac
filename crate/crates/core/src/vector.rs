//! Elements of a free module over the polynomial ring: sparse component maps.
//!
//! Ambient data (rank, generator twists) lives with the caller; a vector is
//! just its nonzero components. Component polynomials stay in grevlex order,
//! which is the restriction of every module order used here, so lead-term
//! queries only inspect component lead terms.

use crate::field::PrimeField;
use crate::monomial::{Monomial, Vars};
use crate::order::ModuleOrder;
use crate::poly::{Mixed, Polynomial};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeVector {
    comps: BTreeMap<usize, Polynomial>,
}

impl FreeVector {
    pub fn zero() -> Self {
        FreeVector {
            comps: BTreeMap::new(),
        }
    }

    pub fn unit(component: usize, nvars: usize) -> Self {
        let mut comps = BTreeMap::new();
        comps.insert(component, Polynomial::one(nvars));
        FreeVector { comps }
    }

    pub fn single(component: usize, p: Polynomial) -> Self {
        let mut comps = BTreeMap::new();
        if !p.is_zero() {
            comps.insert(component, p);
        }
        FreeVector { comps }
    }

    pub fn from_components(entries: impl IntoIterator<Item = (usize, Polynomial)>) -> Self {
        let mut comps = BTreeMap::new();
        for (i, p) in entries {
            if !p.is_zero() {
                comps.insert(i, p);
            }
        }
        FreeVector { comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn component(&self, i: usize) -> Option<&Polynomial> {
        self.comps.get(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.comps.iter().map(|(i, p)| (*i, p))
    }

    pub fn num_components(&self) -> usize {
        self.comps.len()
    }

    pub fn max_component(&self) -> Option<usize> {
        self.comps.keys().next_back().copied()
    }

    pub fn add(&self, other: &FreeVector, field: &PrimeField, vars: &Vars) -> FreeVector {
        let mut comps = self.comps.clone();
        for (i, p) in &other.comps {
            let entry = comps.remove(i);
            let sum = match entry {
                Some(q) => q.add(p, field, vars),
                None => p.clone(),
            };
            if !sum.is_zero() {
                comps.insert(*i, sum);
            }
        }
        FreeVector { comps }
    }

    pub fn neg(&self, field: &PrimeField) -> FreeVector {
        FreeVector {
            comps: self.comps.iter().map(|(i, p)| (*i, p.neg(field))).collect(),
        }
    }

    pub fn sub(&self, other: &FreeVector, field: &PrimeField, vars: &Vars) -> FreeVector {
        self.add(&other.neg(field), field, vars)
    }

    pub fn scale_term(&self, m: &Monomial, c: u32, field: &PrimeField) -> FreeVector {
        if c == 0 {
            return FreeVector::zero();
        }
        FreeVector {
            comps: self
                .comps
                .iter()
                .map(|(i, p)| (*i, p.mul_term(m, c, field)))
                .collect(),
        }
    }

    pub fn scale_poly(&self, q: &Polynomial, field: &PrimeField, vars: &Vars) -> FreeVector {
        if q.is_zero() {
            return FreeVector::zero();
        }
        FreeVector {
            comps: self
                .comps
                .iter()
                .map(|(i, p)| (*i, p.mul(q, field, vars)))
                .filter(|(_, p)| !p.is_zero())
                .collect(),
        }
    }

    pub fn scale(&self, c: u32, field: &PrimeField) -> FreeVector {
        if c == 0 {
            return FreeVector::zero();
        }
        FreeVector {
            comps: self
                .comps
                .iter()
                .map(|(i, p)| (*i, p.scale(c, field)))
                .collect(),
        }
    }

    /// Lead term under the given module order: (monomial, component, coeff).
    pub fn lead_term(&self, ord: &ModuleOrder, vars: &Vars) -> Option<(Monomial, usize, u32)> {
        let mut best: Option<(Monomial, usize, u32)> = None;
        for (i, p) in &self.comps {
            let (m, c) = match p.lead_term() {
                Some(t) => t,
                None => continue,
            };
            match &best {
                None => best = Some((m.clone(), *i, c)),
                Some((bm, bi, _)) => {
                    if ord.cmp_terms((m, *i), (bm, *bi), vars) == std::cmp::Ordering::Greater {
                        best = Some((m.clone(), *i, c));
                    }
                }
            }
        }
        best
    }

    /// Strip the given term (which must be present with this exact monomial).
    pub fn without_term(
        &self,
        component: usize,
        m: &Monomial,
        field: &PrimeField,
        vars: &Vars,
    ) -> FreeVector {
        let mut out = self.clone();
        if let Some(p) = out.comps.get(&component) {
            let coeff = p
                .terms()
                .iter()
                .find(|(n, _)| n == m)
                .map(|(_, c)| *c)
                .unwrap_or(0);
            if coeff != 0 {
                let t = Polynomial::term(m.clone(), field.neg(coeff));
                let q = p.add(&t, field, vars);
                if q.is_zero() {
                    out.comps.remove(&component);
                } else {
                    out.comps.insert(component, q);
                }
            }
        }
        out
    }

    /// Degree of a homogeneous vector in the ambient with generator degrees
    /// `twists`; `Err` on mixed degrees, `Ok(None)` when zero.
    pub fn homogeneous_degree(&self, twists: &[i64], vars: &Vars) -> Result<Option<i64>, Mixed> {
        let mut deg = None;
        for (i, p) in &self.comps {
            let d = match p.homogeneous_degree(vars)? {
                Some(d) => d + twists[*i],
                None => continue,
            };
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(Mixed),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Re-index components through `map` (new index = map[old]).
    pub fn reindexed(&self, map: &[usize]) -> FreeVector {
        FreeVector {
            comps: self
                .comps
                .iter()
                .map(|(i, p)| (map[*i], p.clone()))
                .collect(),
        }
    }

    /// Restrict to components `lo..hi`, shifting indices down by `lo`.
    pub fn block(&self, lo: usize, hi: usize) -> FreeVector {
        FreeVector {
            comps: self
                .comps
                .range(lo..hi)
                .map(|(i, p)| (i - lo, p.clone()))
                .collect(),
        }
    }

    /// Shift all component indices up by `offset`.
    pub fn shifted(&self, offset: usize) -> FreeVector {
        FreeVector {
            comps: self
                .comps
                .iter()
                .map(|(i, p)| (i + offset, p.clone()))
                .collect(),
        }
    }

    pub fn display(&self, vars: &Vars) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.comps
            .iter()
            .map(|(i, p)| format!("({})*e{}", p.display(vars), i))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lead_term_top() {
        let field = PrimeField::default_field();
        let vars = Vars::standard(&["x", "y"]).unwrap();
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let v = FreeVector::from_components([(0, y.clone()), (1, x.clone())]);
        // x in component 1 beats y in component 0 under Top
        let (m, c, _) = v.lead_term(&ModuleOrder::Top, &vars).unwrap();
        assert_eq!((m.exps(), c), ([1, 0].as_slice(), 1));
        let _ = field;
    }

    #[test]
    fn homogeneous_degree_with_twists() {
        let vars = Vars::standard(&["x", "y"]).unwrap();
        let x = Polynomial::variable(2, 0);
        let one = Polynomial::one(2);
        // deg(x) + 0 = 1, deg(1) + 1 = 1: homogeneous of degree 1
        let v = FreeVector::from_components([(0, x), (1, one)]);
        assert_eq!(v.homogeneous_degree(&[0, 1], &vars), Ok(Some(1)));
        assert!(v.homogeneous_degree(&[0, 0], &vars).is_err());
    }
}
