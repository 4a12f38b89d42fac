//! Homological invariants: torsion, rank, periodicity, theta pairing.
//!
//! Torsion submodules are computed by saturating colon submodules against a
//! validated non-zerodivisor and then certified unconditionally: the
//! quotient is checked to embed into a free module (vanishing of the first
//! Ext of its transpose against the ring), which pins the saturation from
//! both sides. Rank reports go through Fitting ideals and are cross-checked
//! against the declared minimal primes. The theta pairing is computed from
//! consecutive Tor lengths once two-periodicity of the first argument is
//! certified by an explicit isomorphism witness, and recomputed one period
//! later as an internal consistency check.

use crate::error::{Error, Result};
use crate::functor::{dual, tensor};
use crate::homology::{ext, tor};
use crate::iso::{is_isomorphic, IsoResult};
use crate::maps::GradedMap;
use crate::matrix::PolyMatrix;
use crate::module::{submodule_module, FPModule};
use crate::poly::Polynomial;
use crate::resolution::Resolution;
use rand::Rng;

/// A certified torsion submodule: killed by a power of a non-zerodivisor,
/// with a torsion-free quotient.
#[derive(Debug, Clone)]
pub struct Torsion {
    /// The torsion submodule, presented over its own generators.
    pub module: FPModule,
    /// Generators of the torsion submodule inside the ambient cover.
    pub inclusion: PolyMatrix,
    /// The torsion-free quotient.
    pub quotient: FPModule,
    /// The non-zerodivisor whose power kills the torsion.
    pub witness: Polynomial,
    /// The saturating exponent.
    pub power: usize,
}

/// Generators of (0 : u^k) inside m, as vectors in m's cover.
fn colon_generators(
    m: &FPModule,
    u: &Polynomial,
    k: usize,
) -> Result<Vec<crate::vector::FreeVector>> {
    let ring = m.ring();
    let mut uk = Polynomial::one(ring.nvars());
    for _ in 0..k {
        uk = uk.mul(u, ring.field(), ring.vars());
    }
    let d = uk
        .homogeneous_degree(ring.vars())
        .map_err(|_| Error::Inhomogeneous("non-zerodivisor".into()))?
        .unwrap_or(0);
    let diag =
        PolyMatrix::identity(m.rank(), ring.nvars()).map(|p| p.mul(&uk, ring.field(), ring.vars()));
    let map = GradedMap::new(m.shifted(d), m.clone(), diag)?;
    map.kernel_generators()
}

/// The torsion submodule with an unconditional certificate. Tries each
/// declared non-zerodivisor candidate: saturates the colon submodules until
/// the series stabilizes, then certifies that the quotient is torsionless
/// (first Ext of its transpose vanishes), which forces the saturation to be
/// the full torsion.
pub fn torsion_submodule(m: &FPModule) -> Result<Torsion> {
    let ring = m.ring();
    if m.is_zero_module() {
        let zero = FPModule::zero_module(ring);
        return Ok(Torsion {
            module: zero.clone(),
            inclusion: PolyMatrix::zero(m.rank(), 0),
            quotient: m.clone(),
            witness: Polynomial::one(ring.nvars()),
            power: 0,
        });
    }
    let candidates = ring.nzd_candidates();
    if candidates.is_empty() {
        return Err(Error::NoNzd("the ring declares no candidates".into()));
    }
    for u in candidates {
        // saturate
        let mut k = 1usize;
        let (sub, incl, power) = loop {
            let gens_k = colon_generators(m, u, k)?;
            let (sub_k, incl_k) = submodule_module(m, &gens_k)?;
            let gens_next = colon_generators(m, u, k + 1)?;
            let (sub_next, _) = submodule_module(m, &gens_next)?;
            if sub_k.hilbert().same_series(sub_next.hilbert()) {
                break (sub_k, incl_k, k);
            }
            k += 1;
            if k > 20 {
                return Err(Error::Internal(
                    "torsion saturation did not stabilize within twenty steps".into(),
                ));
            }
        };
        // quotient by the saturated submodule
        let mut cols = m.relation_columns();
        cols.extend(incl.columns());
        let quotient = FPModule::new(ring, m.twists().to_vec(), cols)?;
        // certificate: the quotient embeds into a free module exactly when
        // the first Ext of its transpose against the ring vanishes; an
        // embedded module has no torsion, so the saturation caught it all
        let d = crate::functor::auslander_dual(&quotient)?;
        let obstruction = ext(&d, &FPModule::ring_module(ring), 1)?;
        if obstruction.is_zero_module() {
            return Ok(Torsion {
                module: sub,
                inclusion: incl,
                quotient,
                witness: u.clone(),
                power,
            });
        }
    }
    Err(Error::NoNzd(
        "no declared candidate produced a certified torsion-free quotient; \
         extend the ring's non-zerodivisor candidate list"
            .into(),
    ))
}

/// Torsionless and reflexive classification, computed along two independent
/// routes (evaluation map on one side, Ext of the transpose on the other)
/// with the agreement asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorsionlessReflexive {
    pub torsionless: bool,
    pub reflexive: bool,
}

pub fn classify_torsionless_reflexive(m: &FPModule) -> Result<TorsionlessReflexive> {
    let ring = m.ring();
    let (ev, _) = crate::functor::eval_map(m)?;
    let ker_zero = ev.kernel()?.source().is_zero_module();
    let coker_zero = ev.cokernel()?.is_zero_module();
    let d = crate::functor::auslander_dual(m)?;
    let r_mod = FPModule::ring_module(ring);
    let ext1_zero = ext(&d, &r_mod, 1)?.is_zero_module();
    let ext2_zero = ext(&d, &r_mod, 2)?.is_zero_module();
    if ker_zero != ext1_zero || (ker_zero && (coker_zero != ext2_zero)) {
        return Err(Error::Internal(format!(
            "transpose-Ext route disagrees with the evaluation route: \
             ker {} ext1 {} coker {} ext2 {}",
            ker_zero, ext1_zero, coker_zero, ext2_zero
        )));
    }
    Ok(TorsionlessReflexive {
        torsionless: ker_zero,
        reflexive: ker_zero && coker_zero,
    })
}

/// Fitting-ideal rank data over a reduced ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankReport {
    /// Rank at each declared minimal prime, in declaration order.
    pub local_ranks: Vec<usize>,
    /// The constant rank, when the local ranks agree.
    pub rank: Option<usize>,
    /// Free of rank r_p after localizing at each minimal prime: the
    /// Fitting ideals jump cleanly across every declared prime.
    pub generically_free: bool,
}

pub fn rank_report(m: &FPModule) -> Result<RankReport> {
    let ring = m.ring();
    if !ring.is_reduced() {
        return Err(Error::hypothesis(
            "reduced ring",
            "rank is only computed over reduced rings",
        ));
    }
    let r_min = (0..=m.rank() as i64)
        .find(|&r| !m.fitting_ideal(r).is_zero())
        .expect("the top Fitting ideal is the unit ideal");
    let global = m.fitting_ideal(r_min).annihilator_is_zero();
    let mut local_ranks = Vec::new();
    for pgb in ring.prime_gbs() {
        // first Fitting ideal escaping p; every earlier one lies inside p,
        // so the jump at p is clean and the localization there is free
        let r_p = (0..=m.rank() as i64)
            .find(|&r| !m.fitting_ideal(r).contained_in_prime(pgb))
            .expect("the unit ideal is not inside a proper prime");
        local_ranks.push(r_p as usize);
    }
    let generically_free = true;
    // over a reduced ring the annihilator test and the minimal-prime test
    // must tell the same story; a mismatch means the declared prime list is
    // not the full set of minimal primes
    if !ring.prime_gbs().is_empty() {
        let all_match = local_ranks.iter().all(|&r| r as i64 == r_min);
        if global != all_match {
            return Err(Error::hypothesis(
                "minimal primes",
                "declared minimal primes do not account for the annihilator of a Fitting ideal",
            ));
        }
    }
    Ok(RankReport {
        local_ranks,
        rank: global.then_some(r_min as usize),
        generically_free,
    })
}

/// The embedding of a torsionless module into a free module given by all of
/// its functionals: component u of the image is the u-th dual generator
/// applied to the element. Errs if the module is not torsionless.
pub fn universal_pushforward(m: &FPModule) -> Result<(GradedMap, FPModule)> {
    let ring = m.ring();
    let star = dual(m)?;
    let twists: Vec<i64> = star.module.twists().iter().map(|d| -d).collect();
    let free = FPModule::free_module(ring, twists);
    let mut matrix = PolyMatrix::zero(star.module.rank(), m.rank());
    for (u, fu) in star.realization.iter().enumerate() {
        for i in 0..m.rank() {
            matrix.set(u, i, fu.get(0, i).clone());
        }
    }
    let map = GradedMap::new(m.clone(), free, matrix)?;
    if !map.kernel()?.source().is_zero_module() {
        return Err(Error::hypothesis(
            "torsionless module",
            "the functional embedding has a kernel",
        ));
    }
    let coker = map.cokernel()?;
    Ok((map, coker))
}

/// A non-zerodivisor witnessing a certified torsion computation on m.
pub fn find_nzd(m: &FPModule) -> Result<Polynomial> {
    Ok(torsion_submodule(m)?.witness)
}

/// Two-periodicity: the second syzygy is isomorphic to the module up to
/// twist. Quick rejection by Betti numbers, then a witnessed isomorphism.
pub fn is_two_periodic<R: Rng>(m: &FPModule, trials: u32, rng: &mut R) -> Result<IsoResult> {
    let res = Resolution::of(m, 3)?;
    if res.betti(0) != res.betti(2) || res.betti(1) != res.betti(3) {
        return Ok(IsoResult::No {
            reason: format!(
                "Betti numbers break periodicity: ({}, {}) vs ({}, {})",
                res.betti(0),
                res.betti(1),
                res.betti(2),
                res.betti(3)
            ),
        });
    }
    let omega2 = res.syzygy_module(2)?;
    is_isomorphic(m, &omega2, true, trials, rng)
}

/// Two-periodicity up to free summands: the module and its second syzygy
/// agree after stripping free parts, up to twist.
pub fn is_projectively_two_periodic<R: Rng>(
    m: &FPModule,
    trials: u32,
    rng: &mut R,
) -> Result<IsoResult> {
    let res = Resolution::of(m, 3)?;
    let omega2 = res.syzygy_module(2)?;
    crate::iso::projective_equivalence(m, &omega2, trials, rng)
}

/// How far a statement has been verified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assurance {
    /// Closed under the module's certified periodicity: holds in all degrees.
    Exact,
    /// Checked degree by degree up to the bound.
    UpToBound(usize),
}

#[derive(Debug, Clone)]
pub struct TotalReflexivity {
    pub holds: bool,
    pub assurance: Assurance,
}

/// Total reflexivity: the evaluation map is an isomorphism and all Ext
/// modules of the module and its dual against the ring vanish. Vanishing is
/// checked up to `bound`; when both the module and its dual carry certified
/// two-periodicity witnesses and the bound reaches 2, the vanishing
/// propagates to every degree and the answer is exact.
pub fn is_totally_reflexive<R: Rng>(
    m: &FPModule,
    bound: usize,
    trials: u32,
    rng: &mut R,
) -> Result<TotalReflexivity> {
    let ring = m.ring();
    let r_mod = FPModule::ring_module(ring);
    let (ev, _) = crate::functor::eval_map(m)?;
    if !ev.kernel()?.source().is_zero_module() || !ev.cokernel()?.is_zero_module() {
        return Ok(TotalReflexivity {
            holds: false,
            assurance: Assurance::Exact,
        });
    }
    let star = dual(m)?.module;
    for i in 1..=bound {
        if !ext(m, &r_mod, i)?.is_zero_module() || !ext(&star, &r_mod, i)?.is_zero_module() {
            return Ok(TotalReflexivity {
                holds: false,
                assurance: Assurance::Exact,
            });
        }
    }
    // higher Ext only sees the non-free part, and periodicity of that part
    // closes the vanishing window: Ext^{i+2} is Ext^i up to twist
    let exact = bound >= 2
        && is_projectively_two_periodic(m, trials, rng)?.is_yes()
        && is_projectively_two_periodic(&star, trials, rng)?.is_yes();
    Ok(TotalReflexivity {
        holds: true,
        assurance: if exact {
            Assurance::Exact
        } else {
            Assurance::UpToBound(bound)
        },
    })
}

/// The theta pairing of a certified two-periodic module with another
/// module: the difference of consecutive Tor lengths, recomputed one period
/// later as a consistency check.
#[derive(Debug, Clone)]
pub struct ThetaReport {
    pub value: i64,
    /// Lengths of Tor_1 through Tor_4.
    pub tor_lengths: [i64; 4],
}

pub fn theta<R: Rng>(m: &FPModule, n: &FPModule, trials: u32, rng: &mut R) -> Result<ThetaReport> {
    let ring = m.ring();
    if ring.dimension() != 1 {
        return Err(Error::hypothesis(
            "one-dimensional ring",
            format!("ring has dimension {}", ring.dimension()),
        ));
    }
    if !ring.is_reduced() {
        return Err(Error::hypothesis(
            "reduced ring",
            "theta needs a reduced ring",
        ));
    }
    match is_two_periodic(m, trials, rng)? {
        IsoResult::Yes { .. } => {}
        IsoResult::No { reason } => {
            return Err(Error::hypothesis("two-periodic module", reason));
        }
        IsoResult::ProbablyNo { .. } => {
            return Err(Error::hypothesis(
                "two-periodic module",
                "no periodicity witness found",
            ));
        }
    }
    if !rank_report(m)?.generically_free {
        return Err(Error::hypothesis(
            "generically free module",
            "a Fitting ideal fails to jump cleanly at a minimal prime",
        ));
    }
    let mut lengths = [0i64; 4];
    for (slot, i) in (1..=4).enumerate() {
        let t = tor(m, n, i)?;
        lengths[slot] = t.hilbert().length().ok_or_else(|| {
            Error::hypothesis("finite Tor lengths", format!("Tor_{i} has infinite length"))
        })?;
    }
    let value = lengths[1] - lengths[0];
    let again = lengths[3] - lengths[2];
    if value != again {
        return Err(Error::Internal(format!(
            "theta is not stable across one period: {value} vs {again}"
        )));
    }
    Ok(ThetaReport {
        value,
        tor_lengths: lengths,
    })
}

/// Lengths and vanishing pattern of the first two Tor modules. For a
/// two-periodic first argument, rigidity of the pair is equivalent to the
/// two vanishing together or not at all.
#[derive(Debug, Clone)]
pub struct TorWindow {
    /// None means infinite length.
    pub lambda1: Option<i64>,
    pub lambda2: Option<i64>,
    pub tor1_zero: bool,
    pub tor2_zero: bool,
    pub rigid: bool,
    pub tor_independent: bool,
}

pub fn tor_rigidity_window(m: &FPModule, n: &FPModule) -> Result<TorWindow> {
    let t1 = tor(m, n, 1)?;
    let t2 = tor(m, n, 2)?;
    let z1 = t1.is_zero_module();
    let z2 = t2.is_zero_module();
    Ok(TorWindow {
        lambda1: t1.hilbert().length(),
        lambda2: t2.hilbert().length(),
        tor1_zero: z1,
        tor2_zero: z2,
        rigid: z1 == z2,
        tor_independent: z1 && z2,
    })
}

/// Tensor the module with another and return the certified torsion length
/// of the product; a common composite in the checks.
pub fn torsion_of_tensor(m: &FPModule, n: &FPModule) -> Result<(Torsion, FPModule)> {
    let t = tensor(m, n)?;
    let tors = torsion_submodule(&t.module)?;
    Ok((tors, t.module))
}
