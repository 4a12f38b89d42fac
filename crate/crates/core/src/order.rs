//! Module term orders over the fixed weighted-grevlex monomial order.
//!
//! `Top` is term-over-position: monomials compare grevlex, ties go to the
//! smaller component index. `Schreyer` is the order induced by a list of lead
//! terms `lt(g_k) = m_k * e_{c_k}`: a module term `m * eps_k` maps to the
//! ambient term `(m * m_k) * e_{c_k}`, ambient terms compare Top, and ties go
//! to the smaller source index. Inside one component both orders restrict to
//! plain grevlex, so polynomial term lists never need re-sorting.

use crate::monomial::{Monomial, Vars};
use std::cmp::Ordering;

#[derive(Debug, Clone)]
pub enum ModuleOrder {
    Top,
    Schreyer {
        /// For each source generator: (lead monomial, lead component) in the
        /// ambient module of the inducing basis.
        lead_terms: Vec<(Monomial, usize)>,
    },
}

impl ModuleOrder {
    /// Compare module terms `(monomial, component)`. `Greater` = larger term.
    pub fn cmp_terms(&self, a: (&Monomial, usize), b: (&Monomial, usize), vars: &Vars) -> Ordering {
        match self {
            ModuleOrder::Top => match a.0.grevlex_cmp(b.0, vars) {
                Ordering::Equal => b.1.cmp(&a.1), // smaller component wins
                ord => ord,
            },
            ModuleOrder::Schreyer { lead_terms } => {
                let (ma, ca) = &lead_terms[a.1];
                let (mb, cb) = &lead_terms[b.1];
                let amb_a = a.0.mul(ma);
                let amb_b = b.0.mul(mb);
                match amb_a.grevlex_cmp(&amb_b, vars) {
                    Ordering::Equal => match cb.cmp(ca) {
                        Ordering::Equal => b.1.cmp(&a.1),
                        ord => ord,
                    },
                    ord => ord,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_order() {
        let v = Vars::standard(&["x", "y"]).unwrap();
        let ord = ModuleOrder::Top;
        let x = Monomial::var(2, 0);
        let y = Monomial::var(2, 1);
        // x e_1 > y e_0 (monomial first)
        assert_eq!(ord.cmp_terms((&x, 1), (&y, 0), &v), Ordering::Greater);
        // x e_0 > x e_1 (position tie-break)
        assert_eq!(ord.cmp_terms((&x, 0), (&x, 1), &v), Ordering::Greater);
    }

    #[test]
    fn schreyer_order_prefers_ambient_image() {
        let v = Vars::standard(&["x", "y"]).unwrap();
        let x = Monomial::var(2, 0);
        let y = Monomial::var(2, 1);
        // Inducing lead terms: g_0 has lt y*e_0, g_1 has lt x*e_0.
        let ord = ModuleOrder::Schreyer {
            lead_terms: vec![(y.clone(), 0), (x.clone(), 0)],
        };
        // x*eps_0 -> xy*e_0 ; y*eps_1 -> xy*e_0 : ambient tie, index 0 wins.
        assert_eq!(ord.cmp_terms((&x, 0), (&y, 1), &v), Ordering::Greater);
        // eps_0 -> y*e_0 ; eps_1 -> x*e_0 : x > y in grevlex so eps_1 larger.
        let one = Monomial::one(2);
        assert_eq!(ord.cmp_terms((&one, 0), (&one, 1), &v), Ordering::Less);
    }
}
