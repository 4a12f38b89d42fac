//! Independent degreewise cross-check for homology lengths.
//!
//! Everything else in this crate measures homology through Gröbner bases:
//! kernels from syzygies, lengths from Hilbert numerators. This module
//! takes the slow, concrete road instead: fix a degree d, write down the
//! degree-d slice of each term of the complex as an explicit list of
//! coordinates (copy index, generator, standard monomial), expand the
//! differentials into matrices over the prime field, and read the homology
//! dimension off rank deficits. Relation columns enter as extra row spans
//! on each slice, so quotient-module slices never need a Gröbner kernel.
//! Agreement between the two roads is asserted across the test corpus.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::Result;
use crate::linalg::Echelon;
use crate::matrix::PolyMatrix;
use crate::module::FPModule;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::resolution::Resolution;
use crate::ring::RingSpec;

/// One term of a complex: copies of a coefficient module, copy j shifted so
/// that its generators sit in degrees `copy_twists[j] + a_u`.
#[derive(Debug, Clone)]
pub struct Stage {
    pub module: FPModule,
    pub copy_twists: Vec<i64>,
}

/// A map of stages given by multipliers between copies: `(src, tgt, p)`
/// sends the src copy into the tgt copy by multiplication with p, raising
/// degrees by `shift` (zero for the maps inside a complex).
#[derive(Debug, Clone)]
pub struct StageMap {
    triples: Vec<(usize, usize, Polynomial)>,
    shift: i64,
}

impl StageMap {
    /// The tensor-side action of a differential: column j of the matrix
    /// feeds copy j of the source into the row copies of the target.
    fn from_columns(d: &PolyMatrix) -> StageMap {
        let mut triples = Vec::new();
        for j in 0..d.cols {
            for r in 0..d.rows {
                let p = d.get(r, j);
                if !p.is_zero() {
                    triples.push((j, r, p.clone()));
                }
            }
        }
        StageMap { triples, shift: 0 }
    }

    /// The dual action: row r of the matrix feeds copy r of the source
    /// into the column copies of the target (composition with the
    /// differential on the other side).
    fn from_rows(d: &PolyMatrix) -> StageMap {
        let mut triples = Vec::new();
        for r in 0..d.rows {
            for j in 0..d.cols {
                let p = d.get(r, j);
                if !p.is_zero() {
                    triples.push((r, j, p.clone()));
                }
            }
        }
        StageMap { triples, shift: 0 }
    }
}

/// Coordinates of a degree-d slice: one per (copy, generator, standard
/// monomial of the complementary degree).
struct Slice {
    coords: Vec<(usize, usize, Monomial)>,
    pos: HashMap<(usize, usize, Monomial), usize>,
}

impl Slice {
    fn build(ring: &RingSpec, stage: &Stage, d: i64) -> Slice {
        let mut coords = Vec::new();
        for (j, &t) in stage.copy_twists.iter().enumerate() {
            for (u, &a) in stage.module.twists().iter().enumerate() {
                for mu in stage_basis(ring, d - t - a).iter() {
                    coords.push((j, u, mu.clone()));
                }
            }
        }
        let pos = coords
            .iter()
            .enumerate()
            .map(|(k, c)| (c.clone(), k))
            .collect();
        Slice { coords, pos }
    }

    fn len(&self) -> usize {
        self.coords.len()
    }

    /// Add c times the normal-form polynomial, placed at (copy, gen), into
    /// the row vector.
    fn accumulate(
        &self,
        row: &mut [u32],
        copy: usize,
        gen: usize,
        p: &Polynomial,
        ring: &RingSpec,
    ) {
        let field = ring.field();
        for (mono, c) in p.terms() {
            let k = *self
                .pos
                .get(&(copy, gen, mono.clone()))
                .expect("normal forms expand over standard monomials");
            row[k] = field.add(row[k], *c);
        }
    }
}

fn stage_basis(ring: &RingSpec, d: i64) -> std::sync::Arc<Vec<Monomial>> {
    ring.monomial_basis(d)
}

/// Echelon span of the relation rows of a stage slice: every relation
/// column of the coefficient module, in every copy, times every standard
/// monomial of the complementary degree.
fn relation_span(ring: &RingSpec, stage: &Stage, d: i64, sl: &Slice) -> Echelon {
    let field = ring.field();
    let mut ech = Echelon::new(sl.len());
    let rel_cols = stage.module.relation_columns();
    let rel_twists = stage.module.rel_twists();
    for (j, &t) in stage.copy_twists.iter().enumerate() {
        for (col, &b) in rel_cols.iter().zip(rel_twists) {
            for mu in stage_basis(ring, d - t - b).iter() {
                let mut row = vec![0u32; sl.len()];
                for (u, p) in col.iter() {
                    let q = ring.nf(&p.mul_term(mu, 1, field));
                    sl.accumulate(&mut row, j, u, &q, ring);
                }
                ech.insert(row, field);
            }
        }
    }
    ech
}

/// Rank of the map induced on quotient slices: the image rows are inserted
/// on top of the target's relation span, so the deficit against the span
/// rank is exactly the induced rank.
fn induced_rank(
    ring: &RingSpec,
    source: &Slice,
    target: &Slice,
    target_span: &Echelon,
    map: &StageMap,
) -> usize {
    let field = ring.field();
    let mut ech = target_span.clone();
    let base = ech.rank();
    for (j, u, mu) in &source.coords {
        let mut row = vec![0u32; target.len()];
        for (src, tgt, p) in &map.triples {
            if src == j {
                let q = ring.nf(&p.mul_term(mu, 1, field));
                target.accumulate(&mut row, *tgt, *u, &q, ring);
            }
        }
        ech.insert(row, field);
    }
    ech.rank() - base
}

/// Degree-by-degree dimension of ker(outgoing)/im(incoming) on the middle
/// stage, for all degrees where the middle slice can be nonzero, up to
/// `max_degree`. Missing maps are zero maps.
fn homology_profile(
    ring: &RingSpec,
    mid: &Stage,
    outgoing: Option<(&Stage, &StageMap)>,
    incoming: Option<(&Stage, &StageMap)>,
    max_degree: i64,
) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    let start = mid
        .copy_twists
        .iter()
        .flat_map(|t| mid.module.twists().iter().map(move |a| t + a))
        .min();
    let start = match start {
        Some(s) => s,
        None => return out,
    };
    for d in start..=max_degree {
        let sl_mid = Slice::build(ring, mid, d);
        let span_mid = relation_span(ring, mid, d, &sl_mid);
        let dim_mid = sl_mid.len() - span_mid.rank();
        let mut rank_out = 0;
        if let Some((tgt, map)) = outgoing {
            let sl_t = Slice::build(ring, tgt, d + map.shift);
            let span_t = relation_span(ring, tgt, d + map.shift, &sl_t);
            rank_out = induced_rank(ring, &sl_mid, &sl_t, &span_t, map);
        }
        let mut rank_in = 0;
        if let Some((src, map)) = incoming {
            let sl_s = Slice::build(ring, src, d - map.shift);
            rank_in = induced_rank(ring, &sl_s, &sl_mid, &span_mid, map);
        }
        let lambda = dim_mid as i64 - rank_out as i64 - rank_in as i64;
        assert!(lambda >= 0, "negative homology dimension in a slice");
        out.insert(d, lambda);
    }
    out
}

/// Degreewise dimensions of the i-th Tor of m against n, computed from
/// matrix slices of the resolution of m tensored with n.
pub fn tor_length_profile(
    m: &FPModule,
    n: &FPModule,
    i: usize,
    max_degree: i64,
) -> Result<BTreeMap<i64, i64>> {
    let ring = m.ring().clone();
    let res = Resolution::of(m, i + 1)?;
    let stage = |k: usize| Stage {
        module: n.clone(),
        copy_twists: res.stage_twists(k).to_vec(),
    };
    let mid = stage(i);
    let incoming_stage = stage(i + 1);
    let incoming_map = StageMap::from_columns(res.differential(i + 1));
    let outgoing = if i == 0 {
        None
    } else {
        Some((stage(i - 1), StageMap::from_columns(res.differential(i))))
    };
    Ok(homology_profile(
        &ring,
        &mid,
        outgoing.as_ref().map(|(s, a)| (s, a)),
        Some((&incoming_stage, &incoming_map)),
        max_degree,
    ))
}

/// Degreewise dimensions of the i-th Ext of m into n, computed from matrix
/// slices of the dualized resolution of m with coefficients in n.
pub fn ext_length_profile(
    m: &FPModule,
    n: &FPModule,
    i: usize,
    max_degree: i64,
) -> Result<BTreeMap<i64, i64>> {
    let ring = m.ring().clone();
    let res = Resolution::of(m, i + 1)?;
    let stage = |k: usize| Stage {
        module: n.clone(),
        copy_twists: res.stage_twists(k).iter().map(|t| -t).collect(),
    };
    let mid = stage(i);
    let outgoing_stage = stage(i + 1);
    let outgoing_map = StageMap::from_rows(res.differential(i + 1));
    let incoming = if i == 0 {
        None
    } else {
        Some((stage(i - 1), StageMap::from_rows(res.differential(i))))
    };
    Ok(homology_profile(
        &ring,
        &mid,
        Some((&outgoing_stage, &outgoing_map)),
        incoming.as_ref().map(|(s, a)| (s, a)),
        max_degree,
    ))
}

/// Degreewise dimensions of the kernel of multiplication by u^power on m:
/// the slice route to annihilator submodules.
pub fn multiplication_kernel_profile(
    m: &FPModule,
    u: &Polynomial,
    power: usize,
    max_degree: i64,
) -> Result<BTreeMap<i64, i64>> {
    let ring = m.ring().clone();
    let field = ring.field();
    let mut up = Polynomial::one(ring.nvars());
    for _ in 0..power {
        up = up.mul(u, field, ring.vars());
    }
    let shift = up
        .homogeneous_degree(ring.vars())
        .map_err(|_| crate::error::Error::Inhomogeneous("multiplier".into()))?
        .unwrap_or(0);
    let stage = Stage {
        module: m.clone(),
        copy_twists: vec![0],
    };
    let map = StageMap {
        triples: vec![(0, 0, up)],
        shift,
    };
    Ok(homology_profile(
        &ring,
        &stage,
        Some((&stage, &map)),
        None,
        max_degree,
    ))
}

/// Pointwise comparison of a slice profile against the Gröbner-side graded
/// series of a module, treating absent degrees as zero.
pub fn profile_matches_series(profile: &BTreeMap<i64, i64>, h: &FPModule, max_degree: i64) -> bool {
    let coeffs = h.hilbert().coefficients(max_degree);
    let keys: BTreeSet<i64> = profile.keys().chain(coeffs.keys()).copied().collect();
    keys.into_iter()
        .filter(|&d| d <= max_degree)
        .all(|d| profile.get(&d).copied().unwrap_or(0) == coeffs.get(&d).copied().unwrap_or(0))
}

/// Total of a profile.
pub fn profile_total(profile: &BTreeMap<i64, i64>) -> i64 {
    profile.values().sum()
}
