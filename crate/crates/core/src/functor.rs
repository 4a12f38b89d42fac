//! Hom, tensor, duals, and the natural transformations between them.
//!
//! Hom(M, N) is computed as the kernel of the map between direct sums of
//! shifted copies of N induced by transposing the presentation of M; each
//! generator of the kernel is carried with a realization matrix recording
//! where it sends every generator of M, which is what turns abstract Hom
//! generators back into actual maps. Tensor products are cokernels of the
//! juxtaposed Kronecker presentations, minimalized with their generator
//! pairs tracked. The natural maps (evaluation into the bidual, the two
//! tensor-Hom comparison maps) are built pointwise on generators and then
//! expressed over the computed Hom generators by exact division.

use crate::error::{Error, Result};
use crate::groebner::Expresser;
use crate::maps::GradedMap;
use crate::matrix::PolyMatrix;
use crate::module::{FPModule, Minimalization};
use crate::order::ModuleOrder;
use crate::vector::FreeVector;
use std::sync::{Arc, OnceLock};

/// Hom(source, target) together with the data needed to use its
/// generators as honest maps.
#[derive(Debug)]
pub struct HomData {
    /// The Hom module, presented over its minimal generators.
    pub module: FPModule,
    /// realization[u] is a (target rank) x (source rank) matrix: column i
    /// is where the u-th Hom generator sends the i-th source generator.
    pub realization: Vec<PolyMatrix>,
    source: FPModule,
    target: FPModule,
    /// Direct sum of shifted copies of the target, one per source
    /// generator: the ambient module the kernel was cut from.
    ambient: FPModule,
    /// Columns: the Hom generators as vectors in the ambient cover.
    inclusion: PolyMatrix,
    expresser: OnceLock<Expresser>,
}

impl HomData {
    pub fn source(&self) -> &FPModule {
        &self.source
    }

    pub fn target(&self) -> &FPModule {
        &self.target
    }

    pub fn ambient(&self) -> &FPModule {
        &self.ambient
    }

    pub fn inclusion(&self) -> &PolyMatrix {
        &self.inclusion
    }

    /// The u-th generator as an actual graded map source -> target twisted
    /// by the generator's degree.
    pub fn generator_map(&self, u: usize) -> Result<GradedMap> {
        let d = self.module.twists()[u];
        GradedMap::new(
            self.source.clone(),
            self.target.shifted(d),
            self.realization[u].clone(),
        )
    }

    /// Coordinates over the Hom generators of a functional given as a
    /// vector in the ambient cover (block i, component v) = coefficient of
    /// the target generator v in the image of source generator i.
    pub fn express(&self, phi: &FreeVector) -> Result<Vec<crate::poly::Polynomial>> {
        let ring = self.source.ring();
        let ex = self.expresser.get_or_init(|| {
            let mut list = self.inclusion.columns();
            list.extend(self.ambient.augmented_columns());
            Expresser::new(&list, ModuleOrder::Top, ring.field(), ring.vars())
        });
        let coords = ex
            .express(phi, ring.field(), ring.vars())
            .ok_or_else(|| Error::Internal("functional outside the Hom module".into()))?;
        Ok(coords.into_iter().take(self.module.rank()).collect())
    }
}

/// A tensor product with its minimal generators tracked back to pairs.
#[derive(Debug)]
pub struct TensorData {
    pub module: FPModule,
    /// kept_pairs[u] = (i, j): the u-th minimal generator is e_i tensor e_j.
    pub kept_pairs: Vec<(usize, usize)>,
    pub minimalization: Arc<Minimalization>,
    left: FPModule,
    right: FPModule,
}

impl TensorData {
    pub fn left(&self) -> &FPModule {
        &self.left
    }

    pub fn right(&self) -> &FPModule {
        &self.right
    }

    /// Coordinates of e_i tensor e_j over the minimal generators.
    pub fn pair_coordinates(&self, i: usize, j: usize) -> FreeVector {
        self.minimalization
            .to_minimal
            .column(i * self.right.rank() + j)
    }
}

/// Direct sum of copies of `n` shifted by `-a` for each a in `twists`,
/// block t covering components [t * n.rank(), (t+1) * n.rank()).
pub(crate) fn block_sum(n: &FPModule, twists: &[i64]) -> Result<FPModule> {
    let mut acc = FPModule::zero_module(n.ring());
    for &a in twists {
        acc = acc.direct_sum(&n.shifted(-a))?;
    }
    Ok(acc)
}

/// Hom(m, n) as a module with realizations.
pub fn hom(m: &FPModule, n: &FPModule) -> Result<HomData> {
    if m.ring() != n.ring() {
        return Err(Error::RingMismatch(
            "hom of modules over different rings".into(),
        ));
    }
    let ring = m.ring();
    let h0 = block_sum(n, m.twists())?;
    let h1 = block_sum(n, m.rel_twists())?;
    let at = m.relations().transpose();
    let big = at.kronecker(
        &PolyMatrix::identity(n.rank(), ring.nvars()),
        ring.field(),
        ring.vars(),
    );
    let map = GradedMap::new(h0.clone(), h1, big)?;
    let incl = map.kernel()?;
    let kmod = incl.source().clone();
    let nrank = n.rank();
    let mut realization = Vec::with_capacity(kmod.rank());
    for u in 0..kmod.rank() {
        // component c = i * nrank + v: source generator i, target component v
        let col = incl.matrix().column(u);
        let mut fu = PolyMatrix::zero(nrank, m.rank());
        for (c, p) in col.iter() {
            fu.set(c % nrank, c / nrank, p.clone());
        }
        realization.push(fu);
    }
    Ok(HomData {
        module: kmod,
        realization,
        source: m.clone(),
        target: n.clone(),
        ambient: h0,
        inclusion: incl.matrix().clone(),
        expresser: OnceLock::new(),
    })
}

/// m tensor n, minimalized with tracked generator pairs.
pub fn tensor(m: &FPModule, n: &FPModule) -> Result<TensorData> {
    if m.ring() != n.ring() {
        return Err(Error::RingMismatch(
            "tensor of modules over different rings".into(),
        ));
    }
    let ring = m.ring();
    let mut twists = Vec::with_capacity(m.rank() * n.rank());
    for &a in m.twists() {
        for &c in n.twists() {
            twists.push(a + c);
        }
    }
    let id_n = PolyMatrix::identity(n.rank(), ring.nvars());
    let id_m = PolyMatrix::identity(m.rank(), ring.nvars());
    let left_rels = m.relations().kronecker(&id_n, ring.field(), ring.vars());
    let right_rels = id_m.kronecker(n.relations(), ring.field(), ring.vars());
    let mut cols = left_rels.columns();
    cols.extend(right_rels.columns());
    let big = FPModule::new(ring, twists, cols)?;
    let min = big.minimalize();
    let kept_pairs = min
        .kept
        .iter()
        .map(|&c| (c / n.rank(), c % n.rank()))
        .collect();
    Ok(TensorData {
        module: min.module.clone(),
        kept_pairs,
        minimalization: min,
        left: m.clone(),
        right: n.clone(),
    })
}

/// Hom(m, R).
pub fn dual(m: &FPModule) -> Result<HomData> {
    hom(m, &FPModule::ring_module(m.ring()))
}

/// The transpose presented over the minimal presentation: cokernel of the
/// transposed minimal relation matrix.
pub fn auslander_dual(m: &FPModule) -> Result<FPModule> {
    let min = m.minimalize();
    let twists: Vec<i64> = min.module.rel_twists().iter().map(|b| -b).collect();
    let at = min.module.relations().transpose();
    FPModule::new(m.ring(), twists, at.columns())
}

/// The evaluation map m -> Hom(Hom(m, R), R), returned with the double
/// dual's Hom data.
pub fn eval_map(m: &FPModule) -> Result<(GradedMap, HomData)> {
    let star = dual(m)?;
    let double = hom(&star.module, &FPModule::ring_module(m.ring()))?;
    // column i: the functional (f |-> f(e_i)) as a vector in the double
    // dual's ambient cover: component u = f_u(e_i)
    let mut cols = Vec::with_capacity(m.rank());
    for i in 0..m.rank() {
        let mut phi = FreeVector::zero();
        for (u, fu) in star.realization.iter().enumerate() {
            let p = fu.get(0, i);
            if !p.is_zero() {
                phi = phi.add(
                    &FreeVector::single(u, p.clone()),
                    m.ring().field(),
                    m.ring().vars(),
                );
            }
        }
        let coords = double.express(&phi)?;
        cols.push(FreeVector::from_components(
            coords.into_iter().enumerate().filter(|(_, p)| !p.is_zero()),
        ));
    }
    let matrix = PolyMatrix::from_columns(&cols, double.module.rank());
    let map = GradedMap::new(m.clone(), double.module.clone(), matrix)?;
    Ok((map, double))
}

/// The comparison map Hom(m, R) tensor n -> Hom(m, n) sending f tensor y to
/// x |-> f(x) y.
pub fn natural_map_alpha(
    m: &FPModule,
    n: &FPModule,
) -> Result<(GradedMap, Arc<TensorData>, Arc<HomData>)> {
    let star = dual(m)?;
    let t = tensor(&star.module, n)?;
    let h = hom(m, n)?;
    let ring = m.ring();
    let nrank = n.rank();
    let mut cols = Vec::with_capacity(t.kept_pairs.len());
    for &(u, j) in &t.kept_pairs {
        // the functional e_i |-> f_u(e_i) e_j, as an ambient Hom vector
        let mut phi = FreeVector::zero();
        for i in 0..m.rank() {
            let p = star.realization[u].get(0, i);
            if !p.is_zero() {
                phi = phi.add(
                    &FreeVector::single(i * nrank + j, p.clone()),
                    ring.field(),
                    ring.vars(),
                );
            }
        }
        let coords = h.express(&phi)?;
        cols.push(FreeVector::from_components(
            coords.into_iter().enumerate().filter(|(_, p)| !p.is_zero()),
        ));
    }
    let matrix = PolyMatrix::from_columns(&cols, h.module.rank());
    let map = GradedMap::new(t.module.clone(), h.module.clone(), matrix)?;
    Ok((map, Arc::new(t), Arc::new(h)))
}

/// The comparison map m tensor n -> Hom(Hom(m, R), n) sending x tensor y to
/// f |-> f(x) y. Pointwise this is the alpha map for the dual composed with
/// evaluation tensor identity.
pub fn natural_map_gamma(
    m: &FPModule,
    n: &FPModule,
) -> Result<(GradedMap, Arc<TensorData>, Arc<HomData>)> {
    let star = dual(m)?;
    let t = tensor(m, n)?;
    let h = hom(&star.module, n)?;
    let ring = m.ring();
    let nrank = n.rank();
    let mut cols = Vec::with_capacity(t.kept_pairs.len());
    for &(i, j) in &t.kept_pairs {
        // the functional f_u |-> f_u(e_i) e_j
        let mut phi = FreeVector::zero();
        for (u, fu) in star.realization.iter().enumerate() {
            let p = fu.get(0, i);
            if !p.is_zero() {
                phi = phi.add(
                    &FreeVector::single(u * nrank + j, p.clone()),
                    ring.field(),
                    ring.vars(),
                );
            }
        }
        let coords = h.express(&phi)?;
        cols.push(FreeVector::from_components(
            coords.into_iter().enumerate().filter(|(_, p)| !p.is_zero()),
        ));
    }
    let matrix = PolyMatrix::from_columns(&cols, h.module.rank());
    let map = GradedMap::new(t.module.clone(), h.module.clone(), matrix)?;
    Ok((map, Arc::new(t), Arc::new(h)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_polynomial;
    use crate::poly::Polynomial;
    use crate::ring::RingSpec;
    use crate::Vars;

    fn node_ring() -> RingSpec {
        let field = PrimeField::default_field();
        let vars = Vars::standard(&["x", "y"]).unwrap();
        let xy = parse_polynomial("x*y", &field, &vars).unwrap();
        let px = vec![parse_polynomial("x", &field, &vars).unwrap()];
        let py = vec![parse_polynomial("y", &field, &vars).unwrap()];
        let u = parse_polynomial("x + y", &field, &vars).unwrap();
        RingSpec::new(field, vars, vec![xy], 1, vec![px, py], vec![u], true).unwrap()
    }

    fn poly(r: &RingSpec, s: &str) -> Polynomial {
        parse_polynomial(s, r.field(), r.vars()).unwrap()
    }

    fn cyclic(r: &RingSpec, gens: &[&str]) -> FPModule {
        let cols = gens
            .iter()
            .map(|g| FreeVector::single(0, poly(r, g)))
            .collect();
        FPModule::new(r, vec![0], cols).unwrap()
    }

    #[test]
    fn dual_of_cyclic_is_annihilator_twist() {
        let r = node_ring();
        let mx = cyclic(&r, &["x"]);
        let star = dual(&mx).unwrap();
        // Hom(R/(x), R) = (0 : x) = (y), generated by multiplication by y
        assert_eq!(star.module.rank(), 1);
        assert_eq!(star.module.twists(), &[1]);
        assert_eq!(star.realization[0].get(0, 0), &poly(&r, "y"));
        assert!(star.module.hilbert().same_series(&mx.hilbert().shifted(1)));
    }

    #[test]
    fn hom_into_self_of_cyclic() {
        let r = node_ring();
        let mx = cyclic(&r, &["x"]);
        // Hom(R/(x), R/(x)) = R/(x), generated by the identity
        let h = hom(&mx, &mx).unwrap();
        assert_eq!(h.module.rank(), 1);
        assert_eq!(h.module.twists(), &[0]);
        assert!(h.module.hilbert().same_series(mx.hilbert()));
        assert!(h.realization[0].get(0, 0).is_unit_constant());
    }

    #[test]
    fn hom_from_free_is_shifted_target() {
        let r = node_ring();
        let free = FPModule::free_module(&r, vec![2]);
        let mx = cyclic(&r, &["x"]);
        let h = hom(&free, &mx).unwrap();
        assert!(h.module.hilbert().same_series(&mx.hilbert().shifted(-2)));
    }

    #[test]
    fn tensor_of_cyclic_quotients() {
        let r = node_ring();
        let mx = cyclic(&r, &["x"]);
        let my = cyclic(&r, &["y"]);
        let txy = tensor(&mx, &my).unwrap();
        // R/(x) tensor R/(y) = R/(x, y) = the residue field
        assert_eq!(txy.module.hilbert().length(), Some(1));
        let txx = tensor(&mx, &mx).unwrap();
        assert!(txx.module.hilbert().same_series(mx.hilbert()));
        assert_eq!(txx.kept_pairs, vec![(0, 0)]);
        // tensoring with the ring changes nothing
        let tr = tensor(&mx, &FPModule::ring_module(&r)).unwrap();
        assert!(tr.module.hilbert().same_series(mx.hilbert()));
    }

    #[test]
    fn auslander_dual_of_cyclic() {
        let r = node_ring();
        let mx = cyclic(&r, &["x"]);
        // transpose of (x): R(1) <- R with matrix x... the transpose module
        // is coker(x: R(0) -> R(1))? twists flip sign of the relation twist
        let d = auslander_dual(&mx).unwrap();
        assert_eq!(d.twists(), &[-1]);
        assert_eq!(d.rel_twists(), &[0]);
        // same series as R/(x) shifted down by 1
        assert!(d.hilbert().same_series(&mx.hilbert().shifted(-1)));
    }

    #[test]
    fn eval_map_into_double_dual() {
        let r = node_ring();
        let mx = cyclic(&r, &["x"]);
        let (ev, double) = eval_map(&mx).unwrap();
        // double dual of R/(x): Hom((y), R) = R/(x)(... same series as M
        assert!(double.module.hilbert().same_series(mx.hilbert()));
        // evaluation on a cyclic module over this ring is injective and
        // surjective here: cokernel and kernel both vanish
        assert!(ev.cokernel().unwrap().is_zero_module());
        let ker = ev.kernel().unwrap();
        assert!(ker.source().is_zero_module());
        // free modules evaluate isomorphically
        let f = FPModule::free_module(&r, vec![0, 3]);
        let (evf, _) = eval_map(&f).unwrap();
        assert!(evf.cokernel().unwrap().is_zero_module());
        assert!(evf.kernel().unwrap().source().is_zero_module());
    }

    #[test]
    fn alpha_for_free_module_is_isomorphism() {
        let r = node_ring();
        let f = FPModule::free_module(&r, vec![1]);
        let mx = cyclic(&r, &["x"]);
        let (alpha, _, _) = natural_map_alpha(&f, &mx).unwrap();
        assert!(alpha.cokernel().unwrap().is_zero_module());
        assert!(alpha.kernel().unwrap().source().is_zero_module());
    }

    #[test]
    fn gamma_on_cyclic_module() {
        let r = node_ring();
        let mx = cyclic(&r, &["x"]);
        let (gamma, t, h) = natural_map_gamma(&mx, &mx).unwrap();
        // M tensor M = R/(x); Hom(M*, M) = Hom(M(-1), M) = M(1)... the map
        // is multiplication by y into the shifted module: injective with
        // one-dimensional cokernel in each of degrees... cokernel = k
        assert!(t.module.hilbert().same_series(mx.hilbert()));
        assert!(h.module.hilbert().same_series(&mx.hilbert().shifted(-1)));
        let ker = gamma.kernel().unwrap();
        assert!(ker.source().is_zero_module());
        let coker = gamma.cokernel().unwrap();
        assert_eq!(coker.hilbert().length(), Some(1));
    }
}
