//! Degree-zero graded maps between finitely presented modules.
//!
//! A map is a matrix on the free covers (column j = image of the j-th
//! source generator) checked at construction for homogeneity and
//! well-definedness: every source relation must land in the target
//! relations. Kernels come from syzygies of the column images juxtaposed
//! with the target relations; homology of a composable pair is the kernel
//! presented over its own generators modulo the expressed image.

use crate::error::{Error, Result};
use crate::groebner::{syzygies_of_generators, Expresser};
use crate::matrix::PolyMatrix;
use crate::module::{submodule_module, FPModule};
use crate::order::ModuleOrder;
use crate::vector::FreeVector;

#[derive(Debug, Clone)]
pub struct GradedMap {
    source: FPModule,
    target: FPModule,
    matrix: PolyMatrix,
}

impl GradedMap {
    pub fn new(source: FPModule, target: FPModule, matrix: PolyMatrix) -> Result<GradedMap> {
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch("map between different rings".into()));
        }
        let ring = source.ring().clone();
        if matrix.rows != target.rank() || matrix.cols != source.rank() {
            return Err(Error::IllFormedMap(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows,
                matrix.cols,
                target.rank(),
                source.rank()
            )));
        }
        let matrix = matrix.map(|p| ring.nf(p));
        // graded of degree zero: column j homogeneous of the source degree
        for (j, col) in matrix.columns().iter().enumerate() {
            match col.homogeneous_degree(target.twists(), ring.vars()) {
                Ok(None) => {}
                Ok(Some(d)) if d == source.twists()[j] => {}
                Ok(Some(d)) => {
                    return Err(Error::IllFormedMap(format!(
                        "column {j} has degree {d}, generator has degree {}",
                        source.twists()[j]
                    )));
                }
                Err(_) => {
                    return Err(Error::IllFormedMap(format!("column {j} is inhomogeneous")));
                }
            }
        }
        // well-defined: source relations map into target relations
        for (jr, rel) in source.relation_columns().iter().enumerate() {
            let img = apply_matrix(&matrix, rel, &source);
            if !target.element_is_zero(&img) {
                return Err(Error::IllFormedMap(format!(
                    "source relation {jr} does not map to zero"
                )));
            }
        }
        Ok(GradedMap {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(m: &FPModule) -> GradedMap {
        GradedMap {
            source: m.clone(),
            target: m.clone(),
            matrix: PolyMatrix::identity(m.rank(), m.ring().nvars()),
        }
    }

    pub fn zero_map(source: &FPModule, target: &FPModule) -> GradedMap {
        GradedMap {
            source: source.clone(),
            target: target.clone(),
            matrix: PolyMatrix::zero(target.rank(), source.rank()),
        }
    }

    pub fn source(&self) -> &FPModule {
        &self.source
    }

    pub fn target(&self) -> &FPModule {
        &self.target
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// Image of an ambient source vector, as an ambient target vector.
    pub fn apply(&self, v: &FreeVector) -> FreeVector {
        apply_matrix(&self.matrix, v, &self.source)
    }

    /// self after other: other maps A -> B, self maps B -> C.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        if other.target != self.source {
            return Err(Error::IllFormedMap(
                "composition through mismatched modules".into(),
            ));
        }
        let ring = self.source.ring();
        let m = self
            .matrix
            .mul(&other.matrix, ring.field(), ring.vars())
            .map(|p| ring.nf(p));
        Ok(GradedMap {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: m,
        })
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::IllFormedMap(
                "sum of maps with different ends".into(),
            ));
        }
        let ring = self.source.ring();
        Ok(GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.sub(
                &other.matrix.map(|p| p.neg(ring.field())),
                ring.field(),
                ring.vars(),
            ),
        })
    }

    pub fn is_zero_map(&self) -> bool {
        self.matrix
            .columns()
            .iter()
            .all(|c| self.target.element_is_zero(c))
    }

    /// The kernel as a module of its own, with the inclusion into the
    /// source.
    pub fn kernel(&self) -> Result<GradedMap> {
        let gens = self.kernel_generators()?;
        let (module, incl) = submodule_module(&self.source, &gens)?;
        GradedMap::new(module, self.source.clone(), incl)
    }

    /// Ambient source vectors generating the kernel (source relations and
    /// ideal multiples included among the syzygy projections, so the
    /// projected block genuinely generates the full preimage of zero).
    pub fn kernel_generators(&self) -> Result<Vec<FreeVector>> {
        let ring = self.source.ring();
        let k = self.source.rank();
        // syzygies of [column images | target relations | ideal multiples]
        let mut list: Vec<FreeVector> = self.matrix.columns();
        list.extend(self.target.augmented_columns());
        let syz = syzygies_of_generators(&list, &ModuleOrder::Top, ring.field(), ring.vars())?;
        let mut gens: Vec<FreeVector> = Vec::new();
        for w in syz {
            let head = w.block(0, k);
            if !head.is_zero() {
                gens.push(head);
            }
        }
        // ideal multiples of source generators are kernel elements trivially
        // representing zero; include source relations for completeness (they
        // are kernel elements and may not arise as projections)
        gens.extend(self.source.relation_columns());
        Ok(gens)
    }

    /// The image as a submodule of the target, with its inclusion.
    pub fn image(&self) -> Result<GradedMap> {
        let (module, incl) = submodule_module(&self.target, &self.matrix.columns())?;
        GradedMap::new(module, self.target.clone(), incl)
    }

    /// Target modulo the column images.
    pub fn cokernel(&self) -> Result<FPModule> {
        let mut cols = self.target.relation_columns();
        cols.extend(self.matrix.columns());
        FPModule::new(self.target.ring(), self.target.twists().to_vec(), cols)
    }
}

fn apply_matrix(matrix: &PolyMatrix, v: &FreeVector, source: &FPModule) -> FreeVector {
    let ring = source.ring();
    let mut out = FreeVector::zero();
    for (j, p) in v.iter() {
        let col = matrix.column(j);
        out = out.add(
            &col.scale_poly(p, ring.field(), ring.vars()),
            ring.field(),
            ring.vars(),
        );
    }
    FreeVector::from_components(
        out.iter()
            .map(|(i, p)| (i, ring.nf(p)))
            .filter(|(_, p)| !p.is_zero()),
    )
}

/// Homology ker(f)/im(g) of a composable pair g: A -> B, f: B -> C with
/// f g = 0. The result is presented over the kernel's own minimal
/// generators.
pub fn homology(f: &GradedMap, g: &GradedMap) -> Result<FPModule> {
    if g.target() != f.source() {
        return Err(Error::IllFormedMap(
            "homology of non-composable pair".into(),
        ));
    }
    let b = f.source();
    let ring = b.ring();
    let composite = f.compose(g)?;
    if !composite.is_zero_map() {
        return Err(Error::IllFormedMap("homology requires f g = 0".into()));
    }
    let incl = f.kernel()?;
    let kmod = incl.source().clone();
    let s = kmod.rank();
    if s == 0 {
        return Ok(kmod);
    }
    // express every image generator over the kernel generators
    let mut list: Vec<FreeVector> = incl.matrix().columns();
    list.extend(b.augmented_columns());
    let ex = Expresser::new(&list, ModuleOrder::Top, ring.field(), ring.vars());
    let mut cols = kmod.relation_columns();
    for gcol in g.matrix().columns() {
        if gcol.is_zero() {
            continue;
        }
        let coords = ex
            .express(&gcol, ring.field(), ring.vars())
            .ok_or_else(|| Error::Internal("image escapes the kernel".into()))?;
        let head = FreeVector::from_components(
            coords
                .into_iter()
                .take(s)
                .enumerate()
                .filter(|(_, p)| !p.is_zero()),
        );
        if !head.is_zero() {
            cols.push(head);
        }
    }
    FPModule::new(ring, kmod.twists().to_vec(), cols)
}
