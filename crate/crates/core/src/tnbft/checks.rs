//! Verification of the boundary structure: the defect identity, isotropy, the Lagrangian
//! property of `ρ`, restored cyclicity on conditioned fields, and the strict pullback model.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{run_cdga, sub_basis_indices};
use crate::linalg::{cone, graded_kernel, is_quasi_iso, CochainComplex, GradedMap, GradedSpace, Matrix, Subcomplex};
use crate::linf::{
    check_cyclic, check_cyclic_vectors, sv_from_dense, sv_to_dense, tensor_with_cdga_on, Counterexample, CyclicLInfinity,
    ProductMode, SparseVec,
};
use crate::scalar::{format_rational, sign, Scalar};

use super::condition::BoundaryCondition;
use super::system::{BulkBoundarySystem, FieldModel, ORIENTATION};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DefectFailure {
    pub left: String,
    pub right: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum IsotropyFailure {
    Differential(DefectFailure),
    Bracket(Counterexample),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LagrangianReport {
    pub open: String,
    pub chain_map: bool,
    pub quasi_iso: bool,
    pub witness_degree: Option<i32>,
    pub cone_acyclic: bool,
    pub compact_dual_acyclic: bool,
}

impl LagrangianReport {
    pub fn holds(&self) -> bool {
        self.chain_map && self.quasi_iso
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PullbackReport {
    pub open: String,
    pub surjective: bool,
    pub surjectivity_failure_degree: Option<i32>,
    pub quasi_iso: bool,
    pub witness_degree: Option<i32>,
    pub conditioned_dims: BTreeMap<i32, usize>,
    pub homotopy_pullback_dims: BTreeMap<i32, usize>,
}

impl PullbackReport {
    pub fn holds(&self) -> bool {
        self.surjective && self.quasi_iso
    }
}

/// Bulk algebra on the whole collar with capped products, so brackets of cap-`N` fields are
/// computed exactly; returns it with the map from cap-`N` field indices to its indices.
pub fn capped_bulk(sys: &BulkBoundarySystem) -> Result<(CyclicLInfinity, Vec<usize>)> {
    let n = sys.cap();
    let big = run_cdga(sys.mesh().delta(), 2 * n, ProductMode::Capped { cap: 2 * n });
    let forms = sub_basis_indices(n, 2 * n);
    let alg = tensor_with_cdga_on(sys.boundary().algebra(), &big, Some(&forms))?;
    let (nb, no, nbig) = (sys.boundary().dim(), 2 * n + 1, big.dim());
    let map = (0..nb * no).map(|i| (i / no) * nbig + forms[i % no]).collect();
    Ok((alg, map))
}

fn embed(v: &[Scalar], map: &[usize]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (map[i], c.clone())).collect()
}

impl BulkBoundarySystem {
    /// Both sides of `⟨ℓ₁e₁, e₂⟩ + (−1)^{|e₁|}⟨e₁, ℓ₁e₂⟩ = σ⟨ρe₁, ρe₂⟩_∂` for compactly
    /// supported fields on the open of `fm`.
    pub fn boundary_defect(&self, fm: &FieldModel, e1: &[Scalar], e2: &[Scalar]) -> Result<(Scalar, Scalar)> {
        let compact = fm.compact()?;
        for (name, e) in [("e₁", e1), ("e₂", e2)] {
            if e.len() != fm.dim() {
                return Err(Error::DimensionMismatch(format!("{name} has length {}, expected {}", e.len(), fm.dim())));
            }
            if !compact.contains(e) {
                return Err(Error::Precondition(format!("{name} is not compactly supported")));
            }
        }
        Ok(self.defect_sides(fm, &sv_from_dense(e1), &sv_from_dense(e2)))
    }

    fn defect_sides(&self, fm: &FieldModel, a: &SparseVec, b: &SparseVec) -> (Scalar, Scalar) {
        let deg = a.keys().next().map_or(0, |i| fm.alg.fdeg(*i));
        let l1 = |v: &SparseVec| fm.alg.bracket(std::slice::from_ref(v));
        let lhs = fm.alg.pair(&l1(a), b) + sign(deg as i64) * fm.alg.pair(a, &l1(b));
        let rhs = if fm.has_boundary() {
            let ra = fm.rho.mul_vec(&sv_to_dense(a, fm.dim()));
            let rb = fm.rho.mul_vec(&sv_to_dense(b, fm.dim()));
            Scalar::from_integer(ORIENTATION.into()) * self.boundary().algebra().pair(&sv_from_dense(&ra), &sv_from_dense(&rb))
        } else {
            Scalar::zero()
        };
        (lhs, rhs)
    }

    /// The defect identity on all pairs from a basis of compactly supported fields.
    pub fn check_differential_isotropy(&self, fm: &FieldModel) -> Result<Option<DefectFailure>> {
        let compact = fm.compact()?;
        let cols: Vec<SparseVec> = (0..compact.dim()).map(|c| sv_from_dense(&compact.inclusion.column(c))).collect();
        for (i, a) in cols.iter().enumerate() {
            for (j, b) in cols.iter().enumerate() {
                let (lhs, rhs) = self.defect_sides(fm, a, b);
                if lhs != rhs {
                    let space = compact.complex.space();
                    return Ok(Some(DefectFailure {
                        left: space.label(i).to_string(),
                        right: space.label(j).to_string(),
                        lhs: format_rational(&lhs),
                        rhs: format_rational(&rhs),
                    }));
                }
            }
        }
        Ok(None)
    }

    /// Isotropic structure on the whole collar: the defect identity for `ℓ₁` and the cyclic
    /// identities for every higher bracket.
    pub fn check_isotropic(&self, budget: usize) -> Result<Option<IsotropyFailure>> {
        let fm = self.fields(&self.mesh().full())?;
        if let Some(f) = self.check_differential_isotropy(&fm)? {
            return Ok(Some(IsotropyFailure::Differential(f)));
        }
        let (capped, map) = capped_bulk(self)?;
        Ok(check_cyclic(&capped, false, Some(&map), budget)?.map(IsotropyFailure::Bracket))
    }

    pub fn check_lagrangian(&self, u: &crate::interval::OpenSet) -> Result<LagrangianReport> {
        let fm = self.fields(u)?;
        self.lagrangian_on(&fm)
    }

    /// Builds `Ψ(f, g)(f′) = h(f, f′) − ω(g, ρf′)` from `Cone(ρ)` to the dual of compactly
    /// supported fields and tests whether it is a quasi-isomorphism.
    pub fn lagrangian_on(&self, fm: &FieldModel) -> Result<LagrangianReport> {
        let e = fm.complex()?;
        let boundary = if fm.has_boundary() {
            self.boundary_complex()?
        } else {
            CochainComplex::zero_differential(GradedSpace::zero())
        };
        let c = cone(&fm.rho_map()?, &e, &boundary)?;
        let compact = fm.compact()?;
        let dual = compact.complex.dual();
        let n = fm.dim();
        let nb = boundary.dim();
        let m = compact.dim();
        let h = fm.alg.pairing().map(|p| p.matrix.clone()).unwrap_or_else(|| Matrix::zeros(n, n));
        let hc = h.mul(&compact.inclusion)?;
        let mut psi = Matrix::zeros(m, n + nb);
        for i in 0..n {
            for (j, v) in hc.row(i) {
                psi.set(*j, i, v.clone());
            }
        }
        if nb > 0 {
            let omega = &self.boundary().algebra().pairing().expect("validated boundary").matrix;
            let orc = omega.mul(&fm.rho)?.mul(&compact.inclusion)?;
            for k in 0..nb {
                for (j, v) in orc.row(k) {
                    psi.set(*j, n + k, -v.clone());
                }
            }
        }
        let psi = GradedMap::new(c.space().clone(), dual.space().clone(), 0, psi)?;
        let open = fm.open.to_string();
        let cone_acyclic = c.is_acyclic();
        let compact_dual_acyclic = dual.is_acyclic();
        if let Some(k) = crate::linalg::chain_map_defect(&psi, &c, &dual)? {
            return Ok(LagrangianReport {
                open,
                chain_map: false,
                quasi_iso: false,
                witness_degree: Some(k),
                cone_acyclic,
                compact_dual_acyclic,
            });
        }
        let q = is_quasi_iso(&psi, &c, &dual)?;
        Ok(LagrangianReport {
            open,
            chain_map: true,
            quasi_iso: q.holds,
            witness_degree: q.witness_degree,
            cone_acyclic,
            compact_dual_acyclic,
        })
    }

    /// Cyclicity restored on compactly supported conditioned fields, arity 1 included.
    pub fn check_conditioned_cyclicity(&self, cond: &BoundaryCondition, budget: usize) -> Result<Option<String>> {
        let fm = self.fields(&self.mesh().full())?;
        let compact = fm.compact()?;
        let cond_map = cond.complement_projection(self.boundary().dim()).mul(&fm.rho)?.mul(&compact.inclusion)?;
        let pool: Vec<Vec<Scalar>> = graded_kernel(compact.complex.space(), &cond_map)
            .iter()
            .map(|c| compact.inclusion.mul_vec(c))
            .collect();
        let sparse: Vec<SparseVec> = pool.iter().map(|v| sv_from_dense(v)).collect();
        for a in &sparse {
            for b in &sparse {
                let (lhs, rhs) = self.defect_sides(&fm, a, b);
                if !lhs.is_zero() || !rhs.is_zero() {
                    return Ok(Some(format!("ℓ₁ cyclicity fails: defect {} on conditioned fields", format_rational(&lhs))));
                }
            }
        }
        let (capped, map) = capped_bulk(self)?;
        let embedded: Vec<SparseVec> = pool.iter().map(|v| embed(v, &map)).collect();
        Ok(check_cyclic_vectors(&capped, &embedded, false, budget)?
            .map(|(t, r)| format!("arity-{} cyclicity fails on conditioned tuple {t:?} with residual {}", t.len() - 1, format_rational(&r))))
    }

    pub fn strict_pullback_model_check(&self, cond: &BoundaryCondition, u: &crate::interval::OpenSet) -> Result<PullbackReport> {
        let fm = self.fields(u)?;
        let boundary = if fm.has_boundary() { Some(self.boundary_complex()?) } else { None };
        strict_pullback_on(&fm.open.to_string(), &fm.complex()?, &fm.rho, boundary.as_ref(), cond)
    }
}

/// Compares the strict pullback `E ×_{E_∂} L` with the homotopy pullback
/// `Cone(E ⊕ L → E_∂)[−1]`, after checking that `ρ` is surjective in every degree.
pub fn strict_pullback_on(
    open: &str,
    e: &CochainComplex,
    rho: &Matrix,
    boundary: Option<&CochainComplex>,
    cond: &BoundaryCondition,
) -> Result<PullbackReport> {
    let Some(boundary) = boundary else {
        let dims = e.cohomology_dims();
        return Ok(PullbackReport {
            open: open.to_string(),
            surjective: true,
            surjectivity_failure_degree: None,
            quasi_iso: true,
            witness_degree: None,
            conditioned_dims: dims.clone(),
            homotopy_pullback_dims: dims,
        });
    };
    let mut failure = None;
    for k in boundary.space().support() {
        let rows = boundary.space().indices_in_degree(k);
        let cols = e.space().indices_in_degree(k);
        if rho.select(&rows, &cols).rank() < rows.len() {
            failure = Some(k);
            break;
        }
    }
    let nb = boundary.dim();
    let cond_map = cond.complement_projection(nb).mul(rho)?;
    let ker = graded_kernel(e.space(), &cond_map);
    let labels = (0..ker.len()).map(|i| format!("k{i}")).collect();
    let strict = Subcomplex::new(e, ker, labels)?;
    let l_labels = (0..cond.l.len()).map(|i| format!("l{i}")).collect();
    let lsub = Subcomplex::new(boundary, cond.l.clone(), l_labels)?;

    let src = e.direct_sum(&lsub.complex);
    let n = e.dim();
    let dl = lsub.dim();
    let mut f = Matrix::zeros(nb, n + dl);
    for r in 0..nb {
        for (c, v) in rho.row(r) {
            f.set(r, *c, v.clone());
        }
    }
    for c in 0..dl {
        for (r, v) in lsub.inclusion.column(c).into_iter().enumerate() {
            if !v.is_zero() {
                f.set(r, n + c, -v);
            }
        }
    }
    let fmap = GradedMap::new(src.space().clone(), boundary.space().clone(), 0, f)?;
    let hp = cone(&fmap, &src, boundary)?.shift(-1);

    let mut j = Matrix::zeros(hp.dim(), strict.dim());
    for c in 0..strict.dim() {
        let v = strict.inclusion.column(c);
        for (r, x) in v.iter().enumerate() {
            if !x.is_zero() {
                j.set(r, c, x.clone());
            }
        }
        let rv = rho.mul_vec(&v);
        let lc = lsub
            .coordinates(&rv)
            .ok_or_else(|| Error::Inconsistent("boundary value of a conditioned field is not in L".into()))?;
        for (r, x) in lc.into_iter().enumerate() {
            if !x.is_zero() {
                j.set(n + r, c, x);
            }
        }
    }
    let jmap = GradedMap::new(strict.complex.space().clone(), hp.space().clone(), 0, j)?;
    let q = is_quasi_iso(&jmap, &strict.complex, &hp)?;
    Ok(PullbackReport {
        open: open.to_string(),
        surjective: failure.is_none(),
        surjectivity_failure_degree: failure,
        quasi_iso: q.holds,
        witness_degree: q.witness_degree,
        conditioned_dims: strict.complex.cohomology_dims(),
        homotopy_pullback_dims: hp.cohomology_dims(),
    })
}
