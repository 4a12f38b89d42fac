//! Finitely presented graded modules M = coker(A) over a quotient ring.
//!
//! A module is a free cover with generator degrees (`twists`, so the cover
//! is the direct sum of R(-a_i)) together with a homogeneous relation
//! matrix. All kernel-flavoured computations go through syzygies of the
//! relation columns augmented by multiples of the defining ideal, which is
//! what makes quotient-ring linear algebra exact. Minimalization is by unit
//! entry elimination (graded Nakayama makes the result provably minimal)
//! followed by greedy selection of minimal relations.

use crate::error::{Error, Result};
use crate::groebner::{buchberger, normal_form, syzygies_of_generators};
use crate::hilbert::{numerator_from_lead_terms, HilbertData};
use crate::matrix::PolyMatrix;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::order::ModuleOrder;
use crate::poly::Polynomial;
use crate::ring::{Ideal, RingSpec};
use crate::vector::FreeVector;
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Minimal free resolution data shared through module caches: stage i has
/// generator degrees `stage_twists[i]`, and `differentials[i]` maps stage
/// i+1 into stage i.
#[derive(Debug, Clone)]
pub struct ResolutionData {
    pub stage_twists: Vec<Vec<i64>>,
    pub differentials: Vec<PolyMatrix>,
}

#[derive(Debug, Default)]
pub struct ModuleCaches {
    relations_gb: OnceLock<Arc<Vec<FreeVector>>>,
    hilbert: OnceLock<HilbertData>,
    minimal: OnceLock<Arc<Minimalization>>,
    pub(crate) resolution_r: Mutex<Option<ResolutionData>>,
    pub(crate) resolution_s: Mutex<Option<ResolutionData>>,
}

#[derive(Debug, Clone)]
pub struct FPModule {
    ring: RingSpec,
    twists: Vec<i64>,
    relations: PolyMatrix,
    rel_twists: Vec<i64>,
    caches: Arc<ModuleCaches>,
}

impl PartialEq for FPModule {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.twists == other.twists
            && self.rel_twists == other.rel_twists
            && self.relations == other.relations
    }
}
impl Eq for FPModule {}

impl FPModule {
    /// Build from relation columns; entries are normalized modulo the
    /// defining ideal, zero columns dropped, homogeneity enforced.
    pub fn new(ring: &RingSpec, twists: Vec<i64>, columns: Vec<FreeVector>) -> Result<FPModule> {
        let rank = twists.len();
        let mut kept_cols: Vec<FreeVector> = Vec::new();
        let mut rel_twists: Vec<i64> = Vec::new();
        for (j, raw) in columns.into_iter().enumerate() {
            if let Some(c) = raw.max_component() {
                if c >= rank {
                    return Err(Error::AmbientMismatch(format!(
                        "relation column {j} references generator {c} of a rank {rank} module"
                    )));
                }
            }
            let col = nf_components(ring, &raw);
            if col.is_zero() {
                continue;
            }
            match col.homogeneous_degree(&twists, ring.vars()) {
                Ok(Some(d)) => {
                    kept_cols.push(col);
                    rel_twists.push(d);
                }
                Ok(None) => {}
                Err(_) => {
                    return Err(Error::Inhomogeneous(format!("relation column {j}")));
                }
            }
        }
        let relations = PolyMatrix::from_columns(&kept_cols, rank);
        Ok(FPModule {
            ring: ring.clone(),
            twists,
            relations,
            rel_twists,
            caches: Arc::new(ModuleCaches::default()),
        })
    }

    pub fn zero_module(ring: &RingSpec) -> FPModule {
        FPModule::new(ring, Vec::new(), Vec::new()).unwrap()
    }

    pub fn free_module(ring: &RingSpec, twists: Vec<i64>) -> FPModule {
        FPModule::new(ring, twists, Vec::new()).unwrap()
    }

    /// R itself as a module.
    pub fn ring_module(ring: &RingSpec) -> FPModule {
        FPModule::free_module(ring, vec![0])
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn relations(&self) -> &PolyMatrix {
        &self.relations
    }

    pub fn rel_twists(&self) -> &[i64] {
        &self.rel_twists
    }

    pub fn relation_columns(&self) -> Vec<FreeVector> {
        self.relations.columns()
    }

    /// The twist M(e): all degrees drop by e.
    pub fn twisted(&self, e: i64) -> FPModule {
        self.shifted(-e)
    }

    /// Shift every degree up by s (the twist M(-s)).
    pub fn shifted(&self, s: i64) -> FPModule {
        let out = FPModule {
            ring: self.ring.clone(),
            twists: self.twists.iter().map(|a| a + s).collect(),
            relations: self.relations.clone(),
            rel_twists: self.rel_twists.iter().map(|b| b + s).collect(),
            caches: Arc::new(ModuleCaches::default()),
        };
        // the relation submodule is twist independent
        if let Some(gb) = self.caches.relations_gb.get() {
            let _ = out.caches.relations_gb.set(gb.clone());
        }
        out
    }

    /// Relation columns together with ideal multiples of every generator:
    /// the submodule of the free cover that presents M as an S-module.
    pub fn augmented_columns(&self) -> Vec<FreeVector> {
        let mut cols = self.relation_columns();
        for i in 0..self.rank() {
            for f in self.ring.ideal_gb() {
                cols.push(FreeVector::single(i, f.clone()));
            }
        }
        cols
    }

    /// Groebner basis (position over term order) of the augmented relation
    /// submodule; cached.
    pub fn relations_gb(&self) -> Arc<Vec<FreeVector>> {
        self.caches
            .relations_gb
            .get_or_init(|| {
                let gb = buchberger(
                    &self.augmented_columns(),
                    &ModuleOrder::Top,
                    self.ring.field(),
                    self.ring.vars(),
                );
                Arc::new(gb)
            })
            .clone()
    }

    /// Canonical representative of an element of M given as an ambient
    /// vector.
    pub fn nf_vector(&self, v: &FreeVector) -> FreeVector {
        normal_form(
            v,
            &self.relations_gb(),
            &ModuleOrder::Top,
            self.ring.field(),
            self.ring.vars(),
        )
    }

    pub fn element_is_zero(&self, v: &FreeVector) -> bool {
        self.nf_vector(v).is_zero()
    }

    pub fn is_zero_module(&self) -> bool {
        (0..self.rank()).all(|i| self.element_is_zero(&FreeVector::unit(i, self.ring.nvars())))
    }

    /// Hilbert series via lead terms of the relation Groebner basis: the
    /// standard monomials of each component form a basis of M.
    pub fn hilbert(&self) -> &HilbertData {
        self.caches.hilbert.get_or_init(|| {
            let gb = self.relations_gb();
            let leads: Vec<(Monomial, usize)> = gb
                .iter()
                .map(|g| {
                    let (m, c, _) = g
                        .lead_term(&ModuleOrder::Top, self.ring.vars())
                        .expect("groebner elements are nonzero");
                    (m, c)
                })
                .collect();
            HilbertData {
                numerator: numerator_from_lead_terms(&leads, &self.twists, self.ring.vars()),
                weights: self.ring.weights().to_vec(),
            }
        })
    }

    /// k-basis of the degree-d slice of M: standard monomials per component.
    pub fn standard_basis(&self, d: i64) -> Vec<(usize, Monomial)> {
        let gb = self.relations_gb();
        let mut leads_by_comp: Vec<Vec<Monomial>> = vec![Vec::new(); self.rank()];
        for g in gb.iter() {
            let (m, c, _) = g
                .lead_term(&ModuleOrder::Top, self.ring.vars())
                .expect("groebner elements are nonzero");
            leads_by_comp[c].push(m);
        }
        let mut out = Vec::new();
        for (i, &a) in self.twists.iter().enumerate() {
            for m in monomials_of_degree(self.ring.vars(), d - a) {
                if !leads_by_comp[i].iter().any(|l| l.divides(&m)) {
                    out.push((i, m));
                }
            }
        }
        out
    }

    /// Coefficient vector of (the normal form of) v over `standard_basis(d)`.
    pub fn coordinates(
        &self,
        v: &FreeVector,
        basis_index: &BTreeMap<(usize, Monomial), usize>,
    ) -> Result<Vec<u32>> {
        let nf = self.nf_vector(v);
        let mut out = vec![0u32; basis_index.len()];
        for (i, p) in nf.iter() {
            for (m, c) in p.terms() {
                let idx = basis_index
                    .get(&(i, m.clone()))
                    .ok_or_else(|| Error::Internal("coordinate outside the degree slice".into()))?;
                out[*idx] = self.ring.field().add(out[*idx], *c);
            }
        }
        Ok(out)
    }

    pub fn direct_sum(&self, other: &FPModule) -> Result<FPModule> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch("direct sum of modules".into()));
        }
        let mut twists = self.twists.clone();
        twists.extend_from_slice(&other.twists);
        let mut cols = self.relation_columns();
        cols.extend(
            other
                .relation_columns()
                .iter()
                .map(|c| c.shifted(self.rank())),
        );
        FPModule::new(&self.ring, twists, cols)
    }

    /// Fitting ideal: the ideal of (rank - r)-minors of the presentation
    /// matrix. Independent of the chosen presentation.
    pub fn fitting_ideal(&self, r: i64) -> Ideal {
        if r < 0 {
            return Ideal::new(&self.ring, Vec::new());
        }
        let size = self.rank() as i64 - r;
        if size <= 0 {
            return Ideal::new(&self.ring, vec![Polynomial::one(self.ring.nvars())]);
        }
        let minors = self
            .relations
            .minors(size as usize, self.ring.field(), self.ring.vars());
        Ideal::new(&self.ring, minors)
    }

    /// Minimal presentation with bookkeeping; cached.
    pub fn minimalize(&self) -> Arc<Minimalization> {
        self.caches
            .minimal
            .get_or_init(|| Arc::new(minimalize_presentation(self)))
            .clone()
    }

    pub(crate) fn caches(&self) -> &Arc<ModuleCaches> {
        &self.caches
    }

    pub fn display(&self) -> String {
        format!(
            "coker of {}x{} matrix over {}, generator degrees {:?}",
            self.rank(),
            self.rel_twists.len(),
            self.ring.display(),
            self.twists
        )
    }
}

fn nf_components(ring: &RingSpec, v: &FreeVector) -> FreeVector {
    FreeVector::from_components(
        v.iter()
            .map(|(i, p)| (i, ring.nf(p)))
            .filter(|(_, p)| !p.is_zero()),
    )
}

/// Outcome of minimalizing a presentation: the minimal module, which of the
/// original generators survived, and the expression of every original
/// generator over the survivors (columns of `to_minimal`).
#[derive(Debug, Clone)]
pub struct Minimalization {
    pub module: FPModule,
    pub kept: Vec<usize>,
    pub to_minimal: PolyMatrix,
}

fn minimalize_presentation(m: &FPModule) -> Minimalization {
    let ring = m.ring().clone();
    let field = *ring.field();
    let vars = ring.vars().clone();
    let nvars = vars.len();
    let mut twists = m.twists().to_vec();
    let mut orig_index: Vec<usize> = (0..twists.len()).collect();
    let mut cols: Vec<FreeVector> = m.relation_columns();
    let mut col_deg: Vec<i64> = m.rel_twists().to_vec();
    // expression of each original generator over the current rows
    let mut exprs: Vec<FreeVector> = (0..twists.len())
        .map(|i| FreeVector::unit(i, nvars))
        .collect();

    loop {
        let mut unit_at: Option<(usize, usize, u32)> = None;
        'search: for (j, col) in cols.iter().enumerate() {
            for (i, p) in col.iter() {
                if p.is_unit_constant() {
                    unit_at = Some((i, j, p.lead_coeff().unwrap()));
                    break 'search;
                }
            }
        }
        let Some((i, j, c)) = unit_at else { break };
        let col = cols[j].scale(field.inv(c), &field);
        // e_i = e_i - col inside M (the relation says col = 0, entry i is 1)
        let repl = FreeVector::unit(i, nvars).sub(&col, &field, &vars);
        for (j2, other) in cols.iter_mut().enumerate() {
            if j2 == j {
                continue;
            }
            if let Some(p) = other.component(i).cloned() {
                let adj = other.sub(&col.scale_poly(&p, &field, &vars), &field, &vars);
                *other = nf_components(&ring, &adj);
            }
        }
        for e in exprs.iter_mut() {
            if let Some(p) = e.component(i).cloned() {
                let adj = e.sub(&FreeVector::single(i, p.clone()), &field, &vars).add(
                    &repl.scale_poly(&p, &field, &vars),
                    &field,
                    &vars,
                );
                *e = nf_components(&ring, &adj);
            }
        }
        cols.remove(j);
        col_deg.remove(j);
        // delete row i; everything has component i zero now
        let mut map = vec![0usize; twists.len()];
        let mut next = 0;
        for (r, slot) in map.iter_mut().enumerate() {
            if r != i {
                *slot = next;
                next += 1;
            }
        }
        for v in cols.iter_mut() {
            debug_assert!(v.component(i).is_none());
            *v = v.reindexed(&map);
        }
        for v in exprs.iter_mut() {
            debug_assert!(v.component(i).is_none());
            *v = v.reindexed(&map);
        }
        twists.remove(i);
        orig_index.remove(i);
    }

    // drop columns that became zero during elimination
    let mut live: Vec<(FreeVector, i64)> = Vec::new();
    for (col, d) in cols.into_iter().zip(col_deg) {
        if !col.is_zero() {
            live.push((col, d));
        }
    }
    let (min_cols, min_degs) = minimal_column_selection(&ring, &twists, live);

    let module = FPModule {
        ring: ring.clone(),
        twists: twists.clone(),
        relations: PolyMatrix::from_columns(&min_cols, twists.len()),
        rel_twists: min_degs,
        caches: Arc::new(ModuleCaches::default()),
    };
    Minimalization {
        module,
        kept: orig_index,
        to_minimal: PolyMatrix::from_columns(&exprs, twists.len()),
    }
}

/// Greedy minimal generating subset of homogeneous columns, processed by
/// ascending degree: keep a column exactly when it is not in the submodule
/// generated by the columns already kept (ideal multiples included). For
/// homogeneous data this yields a minimal generating set.
pub fn minimal_column_selection(
    ring: &RingSpec,
    twists: &[i64],
    columns: Vec<(FreeVector, i64)>,
) -> (Vec<FreeVector>, Vec<i64>) {
    let mut order: Vec<usize> = (0..columns.len()).collect();
    order.sort_by_key(|&j| (columns[j].1, j));
    let mut kept: Vec<FreeVector> = Vec::new();
    let mut kept_deg: Vec<i64> = Vec::new();
    let mut basis: Vec<FreeVector> = Vec::new();
    for i in 0..twists.len() {
        for f in ring.ideal_gb() {
            basis.push(FreeVector::single(i, f.clone()));
        }
    }
    let mut gb = buchberger(&basis, &ModuleOrder::Top, ring.field(), ring.vars());
    for j in order {
        let (col, d) = &columns[j];
        let nf = normal_form(col, &gb, &ModuleOrder::Top, ring.field(), ring.vars());
        if nf.is_zero() {
            continue;
        }
        // canonical scaling: unit lead coefficient
        let (_, _, c) = col
            .lead_term(&ModuleOrder::Top, ring.vars())
            .expect("nonzero column");
        let col = col.scale(ring.field().inv(c), ring.field());
        kept.push(col.clone());
        kept_deg.push(*d);
        basis.push(col);
        gb = buchberger(&basis, &ModuleOrder::Top, ring.field(), ring.vars());
    }
    (kept, kept_deg)
}

/// Present the submodule of `ambient` generated by `gens`: pick a minimal
/// generating subset, compute its relations by projecting syzygies of the
/// generators juxtaposed with the ambient relations, and return the module
/// together with the inclusion matrix into the ambient cover.
pub fn submodule_module(ambient: &FPModule, gens: &[FreeVector]) -> Result<(FPModule, PolyMatrix)> {
    let ring = ambient.ring();
    let mut graded: Vec<(FreeVector, i64)> = Vec::new();
    for (u, g) in gens.iter().enumerate() {
        let v = ambient.nf_vector(g);
        if v.is_zero() {
            continue;
        }
        match v.homogeneous_degree(ambient.twists(), ring.vars()) {
            Ok(Some(d)) => graded.push((v, d)),
            Ok(None) => {}
            Err(_) => {
                return Err(Error::Inhomogeneous(format!("submodule generator {u}")));
            }
        }
    }
    let (sel, sel_degs) = minimal_column_selection(ring, ambient.twists(), graded);
    if sel.is_empty() {
        return Ok((
            FPModule::zero_module(ring),
            PolyMatrix::zero(ambient.rank(), 0),
        ));
    }
    // kernel of (sel) -> M: first-block projections of the syzygies of the
    // selected generators followed by the ambient relations and ideal
    // multiples
    let k = sel.len();
    let mut list = sel.clone();
    list.extend(ambient.augmented_columns());
    let syz = syzygies_of_generators(&list, &ModuleOrder::Top, ring.field(), ring.vars())?;
    let mut rel_cols: Vec<(FreeVector, i64)> = Vec::new();
    for w in syz {
        let head = w.block(0, k);
        if head.is_zero() {
            continue;
        }
        let head = nf_components_free(ring, &head);
        if head.is_zero() {
            continue;
        }
        match head.homogeneous_degree(&sel_degs, ring.vars()) {
            Ok(Some(d)) => rel_cols.push((head, d)),
            Ok(None) => {}
            Err(_) => return Err(Error::Internal("inhomogeneous syzygy".into())),
        }
    }
    let (min_rels, _) = minimal_column_selection(ring, &sel_degs, rel_cols);
    let module = FPModule::new(ring, sel_degs, min_rels)?;
    let inclusion = PolyMatrix::from_columns(&sel, ambient.rank());
    Ok((module, inclusion))
}

fn nf_components_free(ring: &RingSpec, v: &FreeVector) -> FreeVector {
    FreeVector::from_components(
        v.iter()
            .map(|(i, p)| (i, ring.nf(p)))
            .filter(|(_, p)| !p.is_zero()),
    )
}
