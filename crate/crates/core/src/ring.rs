//! Graded quotient rings R = S/I with validated declared data.
//!
//! The ring carries everything downstream computations need: a reduced
//! Groebner basis of the defining ideal, the Hilbert series computed by the
//! monomial-ideal route (independent of any resolution), declared minimal
//! primes and non-zerodivisor candidates (both validated at construction),
//! and a declared reducedness flag spot-checked against the derivative
//! criterion for principal ideals. Krull dimension is declared and checked
//! against the Hilbert pole order rather than computed from scratch.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner::{buchberger_ideal, poly_normal_form, syzygies_of_generators};
use crate::hilbert::{monomial_quotient_numerator, HilbertData};
use crate::monomial::{monomials_of_degree, Monomial, Vars};
use crate::order::ModuleOrder;
use crate::poly::Polynomial;
use crate::vector::FreeVector;
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

#[derive(Debug, Clone)]
pub struct RingSpec {
    inner: Arc<RingInner>,
}

#[derive(Debug)]
struct RingInner {
    field: PrimeField,
    vars: Vars,
    ideal_gens: Vec<Polynomial>,
    ideal_gb: Vec<Polynomial>,
    dimension: i64,
    minimal_primes: Vec<Vec<Polynomial>>,
    prime_gbs: Vec<Vec<Polynomial>>,
    nzd_candidates: Vec<Polynomial>,
    reduced: bool,
    hilbert: HilbertData,
    basis_cache: Mutex<BTreeMap<i64, Arc<Vec<Monomial>>>>,
}

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.field == other.inner.field
                && self.inner.vars == other.inner.vars
                && self.inner.ideal_gb == other.inner.ideal_gb)
    }
}
impl Eq for RingSpec {}

impl RingSpec {
    pub fn new(
        field: PrimeField,
        vars: Vars,
        ideal_gens: Vec<Polynomial>,
        dimension: i64,
        minimal_primes: Vec<Vec<Polynomial>>,
        nzd_candidates: Vec<Polynomial>,
        reduced: bool,
    ) -> Result<RingSpec> {
        let gens: Vec<Polynomial> = ideal_gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            if g.homogeneous_degree(&vars).is_err() {
                return Err(Error::Inhomogeneous(format!(
                    "ideal generator {}",
                    g.display(&vars)
                )));
            }
        }
        let ideal_gb = buchberger_ideal(&gens, &field, &vars);
        if ideal_gb.iter().any(|g| g.is_unit_constant()) {
            return Err(Error::InvalidRing("the quotient ring is zero".into()));
        }
        // Hilbert series by the monomial route: the quotient has the same
        // series as S modulo the lead-term ideal.
        let leads: Vec<Monomial> = ideal_gb
            .iter()
            .map(|g| g.lead_monomial().unwrap().clone())
            .collect();
        let hilbert = HilbertData {
            numerator: monomial_quotient_numerator(&leads, &vars),
            weights: vars.weights.clone(),
        };
        let pole_dim = hilbert.dimension();
        if pole_dim != dimension {
            return Err(Error::InvalidRing(format!(
                "declared dimension {dimension} but Hilbert pole order gives {pole_dim}"
            )));
        }
        let mut prime_gbs = Vec::new();
        for p in &minimal_primes {
            for g in p {
                if g.homogeneous_degree(&vars).is_err() {
                    return Err(Error::Inhomogeneous(format!(
                        "minimal prime generator {}",
                        g.display(&vars)
                    )));
                }
            }
            let pgb = buchberger_ideal(p, &field, &vars);
            if pgb.iter().any(|g| g.is_unit_constant()) {
                return Err(Error::InvalidRing(
                    "declared minimal prime is the unit ideal".into(),
                ));
            }
            for g in &gens {
                if !poly_normal_form(g, &pgb, &field, &vars).is_zero() {
                    return Err(Error::InvalidRing(format!(
                        "declared minimal prime does not contain ideal generator {}",
                        g.display(&vars)
                    )));
                }
            }
            prime_gbs.push(pgb);
        }
        // reducedness spot check (principal case): along each declared
        // minimal prime some partial derivative of the generator must stay
        // outside the prime, otherwise the generator has a repeated factor.
        if reduced && gens.len() == 1 && !prime_gbs.is_empty() {
            let f = &gens[0];
            for (pi, pgb) in prime_gbs.iter().enumerate() {
                let some_partial_outside = (0..vars.len()).any(|i| {
                    let d = f.partial_derivative(i, &field, &vars);
                    !poly_normal_form(&d, pgb, &field, &vars).is_zero()
                });
                if !some_partial_outside {
                    return Err(Error::InvalidRing(format!(
                        "declared reduced, but all partials of {} vanish along declared prime {pi}",
                        f.display(&vars)
                    )));
                }
            }
        }
        let ring = RingSpec {
            inner: Arc::new(RingInner {
                field,
                vars,
                ideal_gens: gens,
                ideal_gb,
                dimension,
                minimal_primes,
                prime_gbs,
                nzd_candidates: Vec::new(),
                reduced,
                hilbert,
                basis_cache: Mutex::new(BTreeMap::new()),
            }),
        };
        // validate candidates against the finished ring, then rebuild with
        // them attached
        for u in &nzd_candidates {
            if !ring.is_nzd(u)? {
                return Err(Error::InvalidRing(format!(
                    "declared non-zerodivisor candidate {} is a zerodivisor",
                    u.display(ring.vars())
                )));
            }
        }
        let inner = Arc::try_unwrap(ring.inner).expect("sole owner");
        Ok(RingSpec {
            inner: Arc::new(RingInner {
                nzd_candidates,
                ..inner
            }),
        })
    }

    /// The polynomial ring itself (I = 0), mostly for tests.
    pub fn polynomial_ring(field: PrimeField, vars: Vars) -> Result<RingSpec> {
        let n = vars.len() as i64;
        RingSpec::new(field, vars, Vec::new(), n, Vec::new(), Vec::new(), true)
    }

    pub fn field(&self) -> &PrimeField {
        &self.inner.field
    }

    pub fn vars(&self) -> &Vars {
        &self.inner.vars
    }

    pub fn nvars(&self) -> usize {
        self.inner.vars.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.inner.vars.weights
    }

    pub fn ideal_gens(&self) -> &[Polynomial] {
        &self.inner.ideal_gens
    }

    pub fn ideal_gb(&self) -> &[Polynomial] {
        &self.inner.ideal_gb
    }

    pub fn dimension(&self) -> i64 {
        self.inner.dimension
    }

    pub fn minimal_primes(&self) -> &[Vec<Polynomial>] {
        &self.inner.minimal_primes
    }

    pub fn prime_gbs(&self) -> &[Vec<Polynomial>] {
        &self.inner.prime_gbs
    }

    pub fn nzd_candidates(&self) -> &[Polynomial] {
        &self.inner.nzd_candidates
    }

    pub fn is_reduced(&self) -> bool {
        self.inner.reduced
    }

    /// Hilbert series of R itself, from the monomial route at construction.
    pub fn hilbert(&self) -> &HilbertData {
        &self.inner.hilbert
    }

    /// Canonical representative modulo the defining ideal.
    pub fn nf(&self, p: &Polynomial) -> Polynomial {
        poly_normal_form(p, &self.inner.ideal_gb, &self.inner.field, &self.inner.vars)
    }

    pub fn in_ideal(&self, p: &Polynomial) -> bool {
        self.nf(p).is_zero()
    }

    /// Standard monomials of weighted degree d: the k-basis of R_d.
    pub fn monomial_basis(&self, d: i64) -> Arc<Vec<Monomial>> {
        let mut cache = self.inner.basis_cache.lock().unwrap();
        if let Some(b) = cache.get(&d) {
            return b.clone();
        }
        let leads: Vec<&Monomial> = self
            .inner
            .ideal_gb
            .iter()
            .map(|g| g.lead_monomial().unwrap())
            .collect();
        let basis: Vec<Monomial> = monomials_of_degree(&self.inner.vars, d)
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect();
        let arc = Arc::new(basis);
        cache.insert(d, arc.clone());
        arc
    }

    /// Generators of the ideal quotient (I : g) over the polynomial ring.
    pub fn ideal_colon_element(&self, g: &Polynomial) -> Vec<Polynomial> {
        let mut gens: Vec<FreeVector> = vec![FreeVector::single(0, g.clone())];
        for f in &self.inner.ideal_gb {
            gens.push(FreeVector::single(0, f.clone()));
        }
        let syz = syzygies_of_generators(
            &gens,
            &ModuleOrder::Top,
            &self.inner.field,
            &self.inner.vars,
        )
        .expect("syzygy computation on a complete basis");
        let mut out = Vec::new();
        for w in syz {
            if let Some(a) = w.component(0) {
                if !a.is_zero() {
                    out.push(a.clone());
                }
            }
        }
        out
    }

    /// Exact non-zerodivisor test on R: (I : u) = I.
    pub fn is_nzd(&self, u: &Polynomial) -> Result<bool> {
        if u.is_zero() || self.in_ideal(u) {
            return Ok(false);
        }
        if u.homogeneous_degree(self.vars()).is_err() {
            return Err(Error::Inhomogeneous("non-zerodivisor candidate".into()));
        }
        Ok(self.ideal_colon_element(u).iter().all(|a| self.in_ideal(a)))
    }

    pub fn display(&self) -> String {
        let gens: Vec<String> = self
            .inner
            .ideal_gens
            .iter()
            .map(|g| g.display(self.vars()))
            .collect();
        let vars: Vec<String> = self.inner.vars.names.to_vec();
        if gens.is_empty() {
            format!("F{}[{}]", self.inner.field.modulus(), vars.join(","))
        } else {
            format!(
                "F{}[{}]/({})",
                self.inner.field.modulus(),
                vars.join(","),
                gens.join(", ")
            )
        }
    }
}

/// Intersection of two ideals of S, via syzygies of the juxtaposed
/// generator lists: the A-block combination of each syzygy lies in both.
pub fn intersect_ideals(
    a: &[Polynomial],
    b: &[Polynomial],
    field: &PrimeField,
    vars: &Vars,
) -> Vec<Polynomial> {
    let mut gens: Vec<FreeVector> = Vec::new();
    for p in a {
        gens.push(FreeVector::single(0, p.clone()));
    }
    for p in b {
        gens.push(FreeVector::single(0, p.clone()));
    }
    let syz =
        syzygies_of_generators(&gens, &ModuleOrder::Top, field, vars).expect("syzygy computation");
    let mut out = Vec::new();
    for w in syz {
        let mut c = Polynomial::zero();
        for (j, q) in w.iter() {
            if j < a.len() {
                c = c.add(&a[j].mul(q, field, vars), field, vars);
            }
        }
        if !c.is_zero() {
            out.push(c);
        }
    }
    out
}

/// A homogeneous ideal of R, stored with a canonical Groebner basis of its
/// preimage in S (generators plus the defining ideal).
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: RingSpec,
    gens: Vec<Polynomial>,
    gb: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &RingSpec, raw_gens: Vec<Polynomial>) -> Ideal {
        let gens: Vec<Polynomial> = raw_gens
            .into_iter()
            .map(|g| ring.nf(&g))
            .filter(|g| !g.is_zero())
            .collect();
        let mut all = gens.clone();
        all.extend(ring.ideal_gb().iter().cloned());
        let gb = buchberger_ideal(&all, ring.field(), ring.vars());
        Ideal {
            ring: ring.clone(),
            gens,
            gb,
        }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Groebner basis of the preimage in S (canonical for comparisons).
    pub fn preimage_gb(&self) -> &[Polynomial] {
        &self.gb
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gb.iter().any(|g| g.is_unit_constant())
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        poly_normal_form(p, &self.gb, self.ring.field(), self.ring.vars()).is_zero()
    }

    pub fn equals(&self, other: &Ideal) -> bool {
        self.ring == other.ring && self.gb == other.gb
    }

    pub fn contained_in_prime(&self, prime_gb: &[Polynomial]) -> bool {
        self.gens
            .iter()
            .all(|g| poly_normal_form(g, prime_gb, self.ring.field(), self.ring.vars()).is_zero())
    }

    /// (0 :_R J) = 0, i.e. the ideal contains a non-zerodivisor. Computed as
    /// the intersection of the colon ideals (I : g) landing inside I.
    pub fn annihilator_is_zero(&self) -> bool {
        if self.gens.is_empty() {
            // (0 : 0) = R, which is zero only in the zero ring
            return false;
        }
        let field = self.ring.field();
        let vars = self.ring.vars();
        let mut ann: Option<Vec<Polynomial>> = None;
        for g in &self.gens {
            let colon = self.ring.ideal_colon_element(g);
            ann = Some(match ann {
                None => colon,
                Some(prev) => intersect_ideals(&prev, &colon, field, vars),
            });
        }
        ann.unwrap().iter().all(|a| self.ring.in_ideal(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    pub fn node_ring() -> RingSpec {
        let field = PrimeField::default_field();
        let vars = Vars::standard(&["x", "y"]).unwrap();
        let xy = parse_polynomial("x*y", &field, &vars).unwrap();
        let px = vec![parse_polynomial("x", &field, &vars).unwrap()];
        let py = vec![parse_polynomial("y", &field, &vars).unwrap()];
        let u = parse_polynomial("x + y", &field, &vars).unwrap();
        RingSpec::new(field, vars, vec![xy], 1, vec![px, py], vec![u], true).unwrap()
    }

    #[test]
    fn node_ring_validates() {
        let r = node_ring();
        assert_eq!(r.dimension(), 1);
        let c = r.hilbert().coefficients(4);
        assert_eq!(c[&0], 1);
        assert_eq!(c[&3], 2);
        assert_eq!(r.monomial_basis(3).len(), 2);
    }

    #[test]
    fn wrong_dimension_rejected() {
        let field = PrimeField::default_field();
        let vars = Vars::standard(&["x", "y"]).unwrap();
        let xy = parse_polynomial("x*y", &field, &vars).unwrap();
        let err = RingSpec::new(field, vars, vec![xy], 2, vec![], vec![], true);
        assert!(err.is_err());
    }

    #[test]
    fn zerodivisor_candidate_rejected() {
        let field = PrimeField::default_field();
        let vars = Vars::standard(&["x", "y"]).unwrap();
        let xy = parse_polynomial("x*y", &field, &vars).unwrap();
        let x = parse_polynomial("x", &field, &vars).unwrap();
        let err = RingSpec::new(field, vars, vec![xy], 1, vec![], vec![x], true);
        assert!(err.is_err());
    }

    #[test]
    fn nzd_detection() {
        let r = node_ring();
        let field = PrimeField::default_field();
        let x = parse_polynomial("x", &field, r.vars()).unwrap();
        let u = parse_polynomial("x + y", &field, r.vars()).unwrap();
        assert!(!r.is_nzd(&x).unwrap());
        assert!(r.is_nzd(&u).unwrap());
    }

    #[test]
    fn non_reduced_declaration_rejected() {
        let field = PrimeField::default_field();
        let vars = Vars::standard(&["x", "y"]).unwrap();
        let x2 = parse_polynomial("x^2", &field, &vars).unwrap();
        let px = vec![parse_polynomial("x", &field, &vars).unwrap()];
        let err = RingSpec::new(
            field,
            vars.clone(),
            vec![x2.clone()],
            1,
            vec![px.clone()],
            vec![],
            true,
        );
        assert!(err.is_err());
        // declared non-reduced: accepted
        let ok = RingSpec::new(field, vars, vec![x2], 1, vec![px], vec![], false);
        assert!(ok.is_ok());
    }

    #[test]
    fn ideal_arithmetic() {
        let r = node_ring();
        let field = PrimeField::default_field();
        let x = parse_polynomial("x", &field, r.vars()).unwrap();
        let y = parse_polynomial("y", &field, r.vars()).unwrap();
        let jx = Ideal::new(&r, vec![x.clone()]);
        // (0 : (x)) = (y) over the node, nonzero
        assert!(!jx.annihilator_is_zero());
        let jxy = Ideal::new(&r, vec![x.clone(), y.clone()]);
        assert!(jxy.annihilator_is_zero());
        // (xy) = 0 in R
        let prod = Ideal::new(&r, vec![parse_polynomial("x*y", &field, r.vars()).unwrap()]);
        assert!(prod.is_zero());
        assert!(jx.contained_in_prime(&r.prime_gbs()[0]));
        assert!(!jx.contained_in_prime(&r.prime_gbs()[1]));
    }
}
