//! Factorization algebras on the half-line from an algebra `A` and a right `A`-module `M`:
//! interior components get `A`, the boundary component gets `M`, structure maps multiply.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::Run;
use crate::linalg::{chain_map_defect, is_quasi_iso, GradedMap, Matrix, QuasiIsoResult};
use crate::linf::{ce_differential, CeComplex, CyclicLInfinity};
use crate::scalar::Scalar;
use crate::sym::SymElement;

use crate::tnbft::{BoundaryCondition, BulkBoundarySystem};

use super::fa::ClassicalObservables;

/// `A = C•(a)` and `M = C•(m)` for an L∞ algebra `a` and a sub-algebra `m ⊆ a`; the module
/// structure is through the restriction `A → M`.
#[derive(Debug, Clone)]
pub struct AMFactorization {
    pub a: CyclicLInfinity,
    pub m: CyclicLInfinity,
    /// Columns: the basis of `m` written in the basis of `a`.
    pub inclusion: Matrix,
    pub truncation: usize,
    pub algebra: CeComplex,
    pub module: CeComplex,
}

/// The value on one open: the Chevalley–Eilenberg complex of one copy of `a` or `m` per component.
#[derive(Debug, Clone)]
pub struct AMValue {
    pub runs: Vec<Run>,
    pub offsets: Vec<usize>,
    pub ce: CeComplex,
}

fn without_pairing(x: &CyclicLInfinity) -> CyclicLInfinity {
    let mut y = x.clone();
    y.clear_pairing();
    y
}

impl AMFactorization {
    /// Builds `A`, `M` and checks the module axiom: restriction `A → M` is a chain map.
    pub fn new(a: &CyclicLInfinity, m: &CyclicLInfinity, inclusion: Matrix, truncation: usize) -> Result<Self> {
        if inclusion.rows() != a.dim() || inclusion.cols() != m.dim() {
            return Err(Error::DimensionMismatch(format!(
                "inclusion is {}x{}, expected {}x{}",
                inclusion.rows(),
                inclusion.cols(),
                a.dim(),
                m.dim()
            )));
        }
        let (a, m) = (without_pairing(a), without_pairing(m));
        let algebra = ce_differential(&a, truncation)?;
        let module = ce_differential(&m, truncation)?;
        let out = AMFactorization { a, m, inclusion, truncation, algebra, module };
        let pi = GradedMap::new(out.algebra.basis.space.clone(), out.module.basis.space.clone(), 0, out.restriction_matrix())?;
        if let Some(k) = chain_map_defect(&pi, &out.algebra.complex, &out.module.complex)? {
            return Err(Error::NotChainMap { degree: k });
        }
        Ok(out)
    }

    /// `A = C•(E_∂)` and `M = C•(L)` for a boundary condition; returns the candidate together
    /// with the constants map (the identity on `E_∂`) used by [`am_compare`].
    pub fn from_condition(sys: &BulkBoundarySystem, cond: &BoundaryCondition, truncation: usize) -> Result<(Self, Matrix)> {
        let a = sys.boundary().algebra();
        let labels = (0..cond.l.len()).map(|i| format!("l{i}")).collect();
        let m = a.restrict(&cond.l, labels)?;
        let inclusion = Matrix::from_columns(a.dim(), &cond.l);
        Ok((AMFactorization::new(a, &m, inclusion, truncation)?, Matrix::identity(a.dim())))
    }

    fn pi_images(&self) -> Vec<SymElement> {
        (0..self.a.dim())
            .map(|x| self.inclusion.row(x).iter().map(|(l, c)| (vec![*l], c.clone())).collect())
            .collect()
    }

    /// The algebra map `A → M`.
    pub fn restriction_matrix(&self) -> Matrix {
        self.algebra.basis.algebra_map_matrix(&self.module.basis, &self.pi_images())
    }

    pub fn value(&self, runs: &[Run]) -> Result<AMValue> {
        let parts: Vec<(String, &CyclicLInfinity)> = runs
            .iter()
            .map(|r| (format!("r{}:", r.first), if r.boundary { &self.m } else { &self.a }))
            .collect();
        let mut offsets = Vec::new();
        let mut off = 0;
        for (_, p) in &parts {
            offsets.push(off);
            off += p.dim();
        }
        let sum = CyclicLInfinity::direct_sum(&parts)?;
        let ce = ce_differential(&sum, self.truncation)?;
        Ok(AMValue { runs: runs.to_vec(), offsets, ce })
    }

    /// Structure map for `U ⊆ V`: products in `A`, with the module action where a component of
    /// `V` contains the boundary point.
    pub fn structure_matrix(&self, from: &AMValue, to: &AMValue) -> Result<Matrix> {
        let mut images: Vec<SymElement> = Vec::new();
        for (ri, r) in from.runs.iter().enumerate() {
            let ti = to
                .runs
                .iter()
                .position(|t| t.contains(r))
                .ok_or_else(|| Error::Precondition("component is not contained in the larger open".into()))?;
            let (src_off, tgt_off) = (from.offsets[ri], to.offsets[ti]);
            let dim = if r.boundary { self.m.dim() } else { self.a.dim() };
            for x in 0..dim {
                let img: SymElement = if r.boundary || !to.runs[ti].boundary {
                    SymElement::from([(vec![tgt_off + x], Scalar::from_integer(1.into()))])
                } else {
                    self.inclusion.row(x).iter().map(|(l, c)| (vec![tgt_off + l], c.clone())).collect()
                };
                debug_assert_eq!(images.len(), src_off + x);
                images.push(img);
            }
        }
        Ok(from.ce.basis.algebra_map_matrix(&to.ce.basis, &images))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AMOpenReport {
    pub open: String,
    pub observables: BTreeMap<i32, usize>,
    pub candidate: BTreeMap<i32, usize>,
    pub chain_map: bool,
    pub quasi_iso: bool,
    pub witness_degree: Option<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AMReport {
    pub opens: Vec<AMOpenReport>,
    pub squares_checked: usize,
    pub first_failure: Option<String>,
}

impl AMReport {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Compares observables with `F_{A,M}` through the inclusion of constant fields: `constants`
/// writes the basis of `a` in the boundary basis, so interior components embed `a ⊗ 1` and the
/// boundary component embeds `m ⊗ 1`.
pub fn am_compare(obs: &ClassicalObservables, candidate: &AMFactorization, constants: &Matrix) -> Result<AMReport> {
    let sys = obs.system();
    if constants.rows() != sys.boundary().dim() || constants.cols() != candidate.a.dim() {
        return Err(Error::DimensionMismatch("constants map has the wrong shape".into()));
    }
    if candidate.truncation != obs.truncation() {
        return Err(Error::InvalidInput("candidate and observables use different truncations".into()));
    }
    let m_in_bdry = constants.mul(&candidate.inclusion)?;
    obs.build_all()?;
    let opens = obs.mesh().opens();
    let mut values = BTreeMap::new();
    let mut comparisons = BTreeMap::new();
    let mut report = AMReport { opens: Vec::new(), squares_checked: 0, first_failure: None };
    for u in &opens {
        let space = obs.space(u)?;
        let fm = &space.fields.fields;
        let value = candidate.value(&fm.runs)?;
        // Φ_U: ξ^a ↦ Σ_j ξ^a(s_j) η^j over constant fields s_j
        let mut images = vec![SymElement::new(); space.fields.dim()];
        for (ri, r) in fm.runs.iter().enumerate() {
            let cols = if r.boundary { &m_in_bdry } else { constants };
            for j in 0..cols.cols() {
                let mut s = vec![Scalar::zero(); fm.dim()];
                for (y, c) in cols.column(j).into_iter().enumerate() {
                    s[fm.index(ri, y, 0)] = c;
                }
                let coords = space
                    .fields
                    .coordinates(&s)
                    .ok_or_else(|| Error::Precondition(format!("constant field {j} on {u} violates the boundary condition")))?;
                for (a, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        images[a].insert(vec![value.offsets[ri] + j], c);
                    }
                }
            }
        }
        let phi = space.ce.basis.algebra_map_matrix(&value.ce.basis, &images);
        let f = GradedMap::new(space.ce.basis.space.clone(), value.ce.basis.space.clone(), 0, phi.clone())?;
        let chain = chain_map_defect(&f, space.complex(), &value.ce.complex)?.is_none();
        let q = if chain {
            is_quasi_iso(&f, space.complex(), &value.ce.complex)?
        } else {
            QuasiIsoResult { holds: false, witness_degree: None }
        };
        if (!chain || !q.holds) && report.first_failure.is_none() {
            report.first_failure = Some(format!("comparison on {u} is not a quasi-isomorphism"));
        }
        report.opens.push(AMOpenReport {
            open: u.to_string(),
            observables: space.complex().cohomology_dims(),
            candidate: value.ce.complex.cohomology_dims(),
            chain_map: chain,
            quasi_iso: q.holds,
            witness_degree: q.witness_degree,
        });
        values.insert(u.clone(), value);
        comparisons.insert(u.clone(), phi);
    }
    for u in &opens {
        for v in opens.iter().filter(|v| *v != u && u.is_subset(v)) {
            report.squares_checked += 1;
            let left = candidate.structure_matrix(&values[u], &values[v])?.mul(&comparisons[u])?;
            let right = comparisons[v].mul(&obs.pushforward(u, v)?)?;
            if !left.sub(&right)?.is_zero() && report.first_failure.is_none() {
                report.first_failure = Some(format!("structure square {u} ⊆ {v} does not commute"));
            }
        }
    }
    Ok(report)
}
