//! Tor and Ext of finitely presented modules.
//!
//! Both derived functors come from one minimal free resolution of the first
//! argument: tensoring a free stage with N gives a direct sum of shifted
//! copies of N, applying Hom gives the same with opposite shifts, and the
//! boundary maps are Kronecker expansions of the differentials (transposed
//! for Ext). Homology is then taken with the general kernel-modulo-image
//! machinery, so the result is an honest presented module, not just a
//! dimension count.

use crate::error::Result;
use crate::functor::{block_sum, hom, tensor};
use crate::maps::{homology, GradedMap};
use crate::matrix::PolyMatrix;
use crate::module::FPModule;
use crate::resolution::Resolution;

/// Direct sum of copies of n shifted up by each stage twist: a free stage
/// tensored with n.
fn tensor_stage(n: &FPModule, twists: &[i64]) -> Result<FPModule> {
    let mut acc = FPModule::zero_module(n.ring());
    for &a in twists {
        acc = acc.direct_sum(&n.shifted(a))?;
    }
    Ok(acc)
}

/// Tor_i(m, n) as a presented module.
pub fn tor(m: &FPModule, n: &FPModule, i: usize) -> Result<FPModule> {
    if i == 0 {
        return Ok(tensor(m, n)?.module);
    }
    let res = Resolution::of(m, i + 1)?;
    let ring = m.ring();
    let id_n = PolyMatrix::identity(n.rank(), ring.nvars());
    let stage = |k: usize| tensor_stage(n, res.stage_twists(k));
    let diff = |k: usize| -> Result<GradedMap> {
        GradedMap::new(
            stage(k)?,
            stage(k - 1)?,
            res.differential(k)
                .kronecker(&id_n, ring.field(), ring.vars()),
        )
    };
    let f = diff(i)?;
    let g = diff(i + 1)?;
    homology(&f, &g)
}

/// Ext^i(m, n) as a presented module.
pub fn ext(m: &FPModule, n: &FPModule, i: usize) -> Result<FPModule> {
    if i == 0 {
        return Ok(hom(m, n)?.module);
    }
    let res = Resolution::of(m, i + 1)?;
    let ring = m.ring();
    let id_n = PolyMatrix::identity(n.rank(), ring.nvars());
    let stage = |k: usize| block_sum(n, res.stage_twists(k));
    // the transposed differential k maps the Hom of stage k-1 into stage k
    let codiff = |k: usize| -> Result<GradedMap> {
        GradedMap::new(
            stage(k - 1)?,
            stage(k)?,
            res.differential(k)
                .transpose()
                .kronecker(&id_n, ring.field(), ring.vars()),
        )
    };
    let f = codiff(i + 1)?;
    let g = codiff(i)?;
    homology(&f, &g)
}

/// Length of a module from its Hilbert series; None when infinite.
pub fn length_of(m: &FPModule) -> Option<i64> {
    m.hilbert().length()
}
