//! Groebner bases for submodules of free modules over the polynomial ring.
//!
//! Classic Buchberger completion with the two standard pair-pruning criteria
//! (the coprime-lead criterion is only applied when both elements live in a
//! single component, where the rank-one proof is valid) and lowest-degree
//! pair selection, which coincides with sugar selection on the homogeneous
//! inputs used throughout. Division is the full multivariate division
//! algorithm with quotient tracking, so the same engine yields normal forms,
//! lifts, and Schreyer-style syzygy certificates from zero reductions.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::Echelon;
use crate::monomial::{monomials_of_degree, Monomial, Vars};
use crate::order::ModuleOrder;
use crate::poly::Polynomial;
use crate::vector::FreeVector;
use std::collections::BTreeMap;

/// Result of dividing `v` by a list of vectors: `v = sum q_k b_k + remainder`
/// with no remainder term divisible by any basis lead term.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub remainder: FreeVector,
    pub quotients: Vec<Polynomial>,
}

pub fn reduce(
    v: &FreeVector,
    basis: &[FreeVector],
    ord: &ModuleOrder,
    field: &PrimeField,
    vars: &Vars,
) -> Reduction {
    let leads: Vec<Option<(Monomial, usize, u32)>> =
        basis.iter().map(|b| b.lead_term(ord, vars)).collect();
    let mut work = v.clone();
    let mut rem = FreeVector::zero();
    let mut quotients = vec![Polynomial::zero(); basis.len()];
    while let Some((m, comp, c)) = work.lead_term(ord, vars) {
        let mut hit = None;
        for (k, lt) in leads.iter().enumerate() {
            if let Some((mk, compk, _)) = lt {
                if *compk == comp && mk.divides(&m) {
                    hit = Some(k);
                    break;
                }
            }
        }
        match hit {
            Some(k) => {
                let (mk, _, ck) = leads[k].as_ref().unwrap();
                let qm = mk.quotient_into(&m).unwrap();
                let qc = field.div(c, *ck);
                work = work.sub(&basis[k].scale_term(&qm, qc, field), field, vars);
                quotients[k] = quotients[k].add(&Polynomial::term(qm, qc), field, vars);
            }
            None => {
                rem = rem.add(
                    &FreeVector::single(comp, Polynomial::term(m.clone(), c)),
                    field,
                    vars,
                );
                work = work.without_term(comp, &m, field, vars);
            }
        }
    }
    Reduction {
        remainder: rem,
        quotients,
    }
}

pub fn normal_form(
    v: &FreeVector,
    basis: &[FreeVector],
    ord: &ModuleOrder,
    field: &PrimeField,
    vars: &Vars,
) -> FreeVector {
    reduce(v, basis, ord, field, vars).remainder
}

/// Normal form of a ring element against an ideal basis (rank-one shortcut).
pub fn poly_normal_form(
    p: &Polynomial,
    basis: &[Polynomial],
    field: &PrimeField,
    vars: &Vars,
) -> Polynomial {
    let vecs: Vec<FreeVector> = basis
        .iter()
        .map(|b| FreeVector::single(0, b.clone()))
        .collect();
    let nf = normal_form(
        &FreeVector::single(0, p.clone()),
        &vecs,
        &ModuleOrder::Top,
        field,
        vars,
    );
    nf.component(0).cloned().unwrap_or_else(Polynomial::zero)
}

/// A Groebner basis together with the expression of each element in terms of
/// the original generators: `elements[k] = sum_j reps[k][j] * gens[j]`.
#[derive(Debug, Clone)]
pub struct TrackedBasis {
    pub elements: Vec<FreeVector>,
    pub reps: Vec<Vec<Polynomial>>,
    pub num_generators: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pair {
    degree: i64,
    i: usize,
    j: usize,
}

/// Cofactor monomials with inverted lead coefficients, plus the shared
/// lead component, for one S-pair.
type SPairParts = ((Monomial, u32), (Monomial, u32), usize);

fn spair_parts(
    gi: &FreeVector,
    gj: &FreeVector,
    ord: &ModuleOrder,
    field: &PrimeField,
    vars: &Vars,
) -> Option<SPairParts> {
    let (mi, ci, coi) = gi.lead_term(ord, vars)?;
    let (mj, cj, coj) = gj.lead_term(ord, vars)?;
    if ci != cj {
        return None;
    }
    let l = mi.lcm(&mj);
    let ai = mi.quotient_into(&l).unwrap();
    let aj = mj.quotient_into(&l).unwrap();
    Some(((ai, field.inv(coi)), (aj, field.inv(coj)), ci))
}

fn lead_of(g: &FreeVector, ord: &ModuleOrder, vars: &Vars) -> (Monomial, usize, u32) {
    g.lead_term(ord, vars).expect("nonzero basis element")
}

/// Buchberger completion with representation tracking. Returns a reduced
/// Groebner basis: monic elements, pairwise irreducible, sorted by lead term
/// (largest first). Idempotent on its own output.
pub fn buchberger_tracked(
    gens: &[FreeVector],
    ord: &ModuleOrder,
    field: &PrimeField,
    vars: &Vars,
) -> TrackedBasis {
    let n = gens.len();
    let mut elements: Vec<FreeVector> = Vec::new();
    let mut reps: Vec<Vec<Polynomial>> = Vec::new();
    for (j, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut rep = vec![Polynomial::zero(); n];
        rep[j] = Polynomial::one(vars.len());
        elements.push(g.clone());
        reps.push(rep);
    }

    let mut queue: Vec<Pair> = Vec::new();
    let add_pairs = |queue: &mut Vec<Pair>,
                     elements: &Vec<FreeVector>,
                     new_idx: usize,
                     ord: &ModuleOrder,
                     vars: &Vars| {
        let (mn, cn, _) = lead_of(&elements[new_idx], ord, vars);
        for (i, e) in elements.iter().enumerate().take(new_idx) {
            let (mi, ci, _) = lead_of(e, ord, vars);
            if ci == cn {
                let deg = mi.lcm(&mn).degree(vars);
                queue.push(Pair {
                    degree: deg,
                    i,
                    j: new_idx,
                });
            }
        }
    };
    for k in 0..elements.len() {
        add_pairs(&mut queue, &elements, k, ord, vars);
    }

    while !queue.is_empty() {
        // lowest degree first, then lexicographic on indices: deterministic
        let pos = queue
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| (p.degree, p.i, p.j))
            .map(|(pos, _)| pos)
            .unwrap();
        let pair = queue.swap_remove(pos);
        let (i, j) = (pair.i, pair.j);

        let (mi, compi, _) = lead_of(&elements[i], ord, vars);
        let (mj, _, _) = lead_of(&elements[j], ord, vars);

        // Coprime-lead criterion, valid when both elements lie entirely in
        // the shared component.
        if elements[i].num_components() == 1
            && elements[j].num_components() == 1
            && mi.is_coprime_with(&mj)
        {
            continue;
        }

        // Chain criterion: some other lead term divides the lcm and both
        // linking pairs have already left the queue.
        let lcm = mi.lcm(&mj);
        let mut chained = false;
        for (l, g) in elements.iter().enumerate() {
            if l == i || l == j {
                continue;
            }
            let (ml, compl, _) = lead_of(g, ord, vars);
            if compl != compi || !ml.divides(&lcm) {
                continue;
            }
            let in_queue = |a: usize, b: usize| {
                let (a, b) = (a.min(b), a.max(b));
                queue.iter().any(|p| p.i == a && p.j == b)
            };
            if !in_queue(i, l) && !in_queue(j, l) {
                chained = true;
                break;
            }
        }
        if chained {
            continue;
        }

        let ((ai, ci_inv), (aj, cj_inv), _) =
            match spair_parts(&elements[i], &elements[j], ord, field, vars) {
                Some(parts) => parts,
                None => continue,
            };
        let sp = elements[i].scale_term(&ai, ci_inv, field).sub(
            &elements[j].scale_term(&aj, cj_inv, field),
            field,
            vars,
        );
        let red = reduce(&sp, &elements, ord, field, vars);
        if red.remainder.is_zero() {
            continue;
        }
        // rep of remainder = a_i rep_i - a_j rep_j - sum q_k rep_k
        let mut rep = vec![Polynomial::zero(); n];
        let acc = |rep: &mut Vec<Polynomial>, src: &Vec<Polynomial>, q: &Polynomial| {
            for (t, r) in rep.iter_mut().zip(src) {
                if !r.is_zero() && !q.is_zero() {
                    *t = t.add(&r.mul(q, field, vars), field, vars);
                }
            }
        };
        acc(&mut rep, &reps[i], &Polynomial::term(ai, ci_inv));
        acc(&mut rep, &reps[j], &Polynomial::term(aj, cj_inv).neg(field));
        for (k, q) in red.quotients.iter().enumerate() {
            if !q.is_zero() {
                acc(&mut rep, &reps[k], &q.neg(field));
            }
        }
        elements.push(red.remainder);
        reps.push(rep);
        add_pairs(&mut queue, &elements, elements.len() - 1, ord, vars);
    }

    interreduce(&mut elements, &mut reps, ord, field, vars);
    TrackedBasis {
        elements,
        reps,
        num_generators: n,
    }
}

/// Inter-reduce a Groebner basis in place: drop elements whose lead term is
/// divisible by another, fully tail-reduce the survivors, normalize monic,
/// and sort by descending lead term.
fn interreduce(
    elements: &mut Vec<FreeVector>,
    reps: &mut Vec<Vec<Polynomial>>,
    ord: &ModuleOrder,
    field: &PrimeField,
    vars: &Vars,
) {
    // Minimal lead terms only.
    let mut keep = vec![true; elements.len()];
    for i in 0..elements.len() {
        if !keep[i] {
            continue;
        }
        let (mi, ci, _) = lead_of(&elements[i], ord, vars);
        for j in 0..elements.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (mj, cj, _) = lead_of(&elements[j], ord, vars);
            if ci == cj && mj.divides(&mi) && (mj != mi || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut kept: Vec<FreeVector> = Vec::new();
    let mut kept_reps: Vec<Vec<Polynomial>> = Vec::new();
    for (k, e) in elements.iter().enumerate() {
        if keep[k] {
            kept.push(e.clone());
            kept_reps.push(reps[k].clone());
        }
    }
    // Tail reduction against the other survivors; lead terms are pairwise
    // non-divisible so lead terms are stable under this pass.
    for i in 0..kept.len() {
        let others: Vec<FreeVector> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let red = reduce(&kept[i], &others, ord, field, vars);
        if !red.remainder.is_zero() {
            let mut rep = kept_reps[i].clone();
            let mut oi = 0;
            for (j, reps_j) in kept_reps.iter().enumerate() {
                if j == i {
                    continue;
                }
                let q = &red.quotients[oi];
                oi += 1;
                if q.is_zero() {
                    continue;
                }
                let nq = q.neg(field);
                for (t, r) in rep.iter_mut().zip(reps_j) {
                    if !r.is_zero() {
                        *t = t.add(&r.mul(&nq, field, vars), field, vars);
                    }
                }
            }
            kept[i] = red.remainder;
            kept_reps[i] = rep;
        }
    }
    // Monic + canonical sort (descending lead term).
    for (g, rep) in kept.iter_mut().zip(kept_reps.iter_mut()) {
        let (_, _, c) = lead_of(g, ord, vars);
        if c != 1 {
            let inv = field.inv(c);
            *g = g.scale(inv, field);
            for r in rep.iter_mut() {
                *r = r.scale(inv, field);
            }
        }
    }
    let mut idx: Vec<usize> = (0..kept.len()).collect();
    idx.sort_by(|&a, &b| {
        let (ma, ca, _) = lead_of(&kept[a], ord, vars);
        let (mb, cb, _) = lead_of(&kept[b], ord, vars);
        ord.cmp_terms((&mb, cb), (&ma, ca), vars)
    });
    *elements = idx.iter().map(|&k| kept[k].clone()).collect();
    *reps = idx.iter().map(|&k| kept_reps[k].clone()).collect();
}

pub fn buchberger(
    gens: &[FreeVector],
    ord: &ModuleOrder,
    field: &PrimeField,
    vars: &Vars,
) -> Vec<FreeVector> {
    buchberger_tracked(gens, ord, field, vars).elements
}

pub fn buchberger_ideal(gens: &[Polynomial], field: &PrimeField, vars: &Vars) -> Vec<Polynomial> {
    let vecs: Vec<FreeVector> = gens
        .iter()
        .map(|g| FreeVector::single(0, g.clone()))
        .collect();
    buchberger(&vecs, &ModuleOrder::Top, field, vars)
        .into_iter()
        .map(|v| v.component(0).cloned().unwrap_or_else(Polynomial::zero))
        .collect()
}

/// Zero-reduction certificates for every same-component pair of a Groebner
/// basis. The result generates the syzygy module of `gb` and is itself a
/// Groebner basis for the Schreyer order induced by `gb`'s lead terms.
pub fn schreyer_syzygies(
    gb: &[FreeVector],
    ord: &ModuleOrder,
    field: &PrimeField,
    vars: &Vars,
) -> Result<Vec<FreeVector>> {
    let mut out = Vec::new();
    for i in 0..gb.len() {
        for j in (i + 1)..gb.len() {
            let parts = match spair_parts(&gb[i], &gb[j], ord, field, vars) {
                Some(p) => p,
                None => continue,
            };
            let ((ai, ci_inv), (aj, cj_inv), _) = parts;
            let sp = gb[i].scale_term(&ai, ci_inv, field).sub(
                &gb[j].scale_term(&aj, cj_inv, field),
                field,
                vars,
            );
            let red = reduce(&sp, gb, ord, field, vars);
            if !red.remainder.is_zero() {
                return Err(Error::Internal(
                    "schreyer_syzygies: input is not a Groebner basis".into(),
                ));
            }
            let mut w = FreeVector::from_components([
                (i, Polynomial::term(ai, ci_inv)),
                (j, Polynomial::term(aj, cj_inv).neg(field)),
            ]);
            for (k, q) in red.quotients.iter().enumerate() {
                if !q.is_zero() {
                    w = w.sub(&FreeVector::single(k, q.clone()), field, vars);
                }
            }
            if !w.is_zero() {
                out.push(w);
            }
        }
    }
    Ok(out)
}

/// Generators of the syzygy module of an arbitrary generating set: transform
/// the Schreyer certificates of the completed basis back through the tracked
/// representations, plus the discrepancy columns `e_j - P.div(gen_j)`.
pub fn syzygies_of_generators(
    gens: &[FreeVector],
    ord: &ModuleOrder,
    field: &PrimeField,
    vars: &Vars,
) -> Result<Vec<FreeVector>> {
    let tb = buchberger_tracked(gens, ord, field, vars);
    let mut out = Vec::new();
    let to_orig = |w: &FreeVector| -> FreeVector {
        let mut acc: BTreeMap<usize, Polynomial> = BTreeMap::new();
        for (k, q) in w.iter() {
            for (j, r) in tb.reps[k].iter().enumerate() {
                if r.is_zero() {
                    continue;
                }
                let add = r.mul(q, field, vars);
                let cur = acc.remove(&j).unwrap_or_else(Polynomial::zero);
                let s = cur.add(&add, field, vars);
                if !s.is_zero() {
                    acc.insert(j, s);
                }
            }
        }
        FreeVector::from_components(acc)
    };
    for w in schreyer_syzygies(&tb.elements, ord, field, vars)? {
        let s = to_orig(&w);
        if !s.is_zero() {
            out.push(s);
        }
    }
    for (j, g) in gens.iter().enumerate() {
        let red = reduce(g, &tb.elements, ord, field, vars);
        if !red.remainder.is_zero() {
            return Err(Error::Internal(
                "syzygies_of_generators: generator failed to reduce".into(),
            ));
        }
        let mut q = FreeVector::zero();
        for (k, qk) in red.quotients.iter().enumerate() {
            if !qk.is_zero() {
                q = q.add(&FreeVector::single(k, qk.clone()), field, vars);
            }
        }
        let s = FreeVector::unit(j, vars.len()).sub(&to_orig(&q), field, vars);
        if !s.is_zero() {
            out.push(s);
        }
    }
    Ok(out)
}

/// Repeated exact division against a fixed generating set: completes the set
/// to a tracked Groebner basis once, then expresses elements as explicit
/// combinations of the original generators.
#[derive(Debug)]
pub struct Expresser {
    tb: TrackedBasis,
    ord: ModuleOrder,
}

impl Expresser {
    pub fn new(gens: &[FreeVector], ord: ModuleOrder, field: &PrimeField, vars: &Vars) -> Self {
        let tb = buchberger_tracked(gens, &ord, field, vars);
        Expresser { tb, ord }
    }

    /// Coordinates of `v` over the original generators, or None when `v` is
    /// not in the generated submodule. The identity v = sum coords_j gens_j
    /// holds entry-exact.
    pub fn express(
        &self,
        v: &FreeVector,
        field: &PrimeField,
        vars: &Vars,
    ) -> Option<Vec<Polynomial>> {
        let red = reduce(v, &self.tb.elements, &self.ord, field, vars);
        if !red.remainder.is_zero() {
            return None;
        }
        let mut coords = vec![Polynomial::zero(); self.tb.num_generators];
        for (k, q) in red.quotients.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (j, r) in self.tb.reps[k].iter().enumerate() {
                if !r.is_zero() {
                    coords[j] = coords[j].add(&r.mul(q, field, vars), field, vars);
                }
            }
        }
        Some(coords)
    }

    pub fn contains(&self, v: &FreeVector, field: &PrimeField, vars: &Vars) -> bool {
        normal_form(v, &self.tb.elements, &self.ord, field, vars).is_zero()
    }
}

/// Degreewise linear-algebra membership test for homogeneous inputs: expand
/// the degree slice of the generated submodule as a vector space over the
/// coefficient field and test containment directly. Independent of the
/// division/Buchberger path above.
pub fn membership_oracle(
    v: &FreeVector,
    gens: &[FreeVector],
    twists: &[i64],
    field: &PrimeField,
    vars: &Vars,
) -> Result<bool> {
    if v.is_zero() {
        return Ok(true);
    }
    let d = v
        .homogeneous_degree(twists, vars)
        .map_err(|_| Error::Inhomogeneous("membership oracle input".into()))?
        .unwrap();
    // coordinate space of the ambient slice
    let mut coords: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    for (i, &a) in twists.iter().enumerate() {
        for m in monomials_of_degree(vars, d - a) {
            let next = coords.len();
            coords.insert((i, m), next);
        }
    }
    let dim = coords.len();
    let vectorize = |w: &FreeVector| -> Result<Vec<u32>> {
        let mut out = vec![0u32; dim];
        for (i, p) in w.iter() {
            for (m, c) in p.terms() {
                let key = (i, m.clone());
                let idx = coords
                    .get(&key)
                    .ok_or_else(|| Error::Internal("membership oracle: degree mismatch".into()))?;
                out[*idx] = field.add(out[*idx], *c);
            }
        }
        Ok(out)
    };
    let mut ech = Echelon::new(dim);
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let e = match g.homogeneous_degree(twists, vars) {
            Ok(Some(e)) => e,
            Ok(None) => continue,
            Err(_) => return Err(Error::Inhomogeneous("membership oracle generator".into())),
        };
        for m in monomials_of_degree(vars, d - e) {
            let prod = g.scale_term(&m, 1, field);
            ech.insert(vectorize(&prod)?, field);
        }
    }
    Ok(ech.contains(vectorize(v)?, field))
}
