//! BF theory on the half-plane pushed forward to its boundary line. A boundary open `U` is
//! compared with the slab `U × [0, δ)` through the map sending `ω ⊗ x` to the functional
//! `(A, B) ↦ ∫_U ω ⟨ι*B, x⟩`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{compact_support_constraints, run_cdga_on, CellMesh, OpenSet, Run};
use crate::linalg::{chain_map_defect, graded_kernel, is_quasi_iso, CochainComplex, GradedMap, Matrix, Subcomplex};
use crate::linf::{ce_differential, tensor_with_cdga, CeComplex, CyclicLInfinity, FiniteCdga, LieAlgebra, ProductMode};
use crate::scalar::Scalar;
use crate::sym::{SymAlgebra, SymBasis, SymElement};

/// Mesh and model parameters for the boundary line and the normal direction.
#[derive(Debug, Clone)]
pub struct PushforwardSetup {
    pub mesh: CellMesh,
    pub boundary_cap: usize,
    pub normal_length: Scalar,
    pub normal_cap: usize,
    pub truncation: usize,
}

impl PushforwardSetup {
    pub fn new(cells: usize, truncation: usize) -> Result<Self> {
        Ok(PushforwardSetup {
            mesh: CellMesh::uniform(cells, &Scalar::from_integer(1.into()))?,
            boundary_cap: 1,
            normal_length: Scalar::from_integer(1.into()),
            normal_cap: 1,
            truncation,
        })
    }

    /// Opens of the boundary line: opens of the mesh that avoid the endpoint.
    pub fn opens(&self) -> Vec<OpenSet> {
        self.mesh.opens().into_iter().filter(|u| !u.boundary).collect()
    }
}

/// Fields on one slab `run × [0, δ)` with the `A` summand vanishing at the boundary line.
struct Slab {
    alg: CyclicLInfinity,
    boundary_forms: FiniteCdga,
    /// For each basis element of `alg`: `Some((j, α))` when it is `ξ_j ⊗ α ⊗ 1`, whose
    /// boundary value is `ξ_j ⊗ α`.
    boundary_value: Vec<Option<(usize, usize)>>,
}

fn slab(g: &LieAlgebra, run: &Run, setup: &PushforwardSetup) -> Result<Slab> {
    let n = g.dim();
    let end = &run.start + &run.length;
    let omega_u = run_cdga_on(&run.start, &end, setup.boundary_cap, ProductMode::Quotient);
    let omega_n = run_cdga_on(&Scalar::zero(), &setup.normal_length, setup.normal_cap, ProductMode::Quotient);
    let eval = omega_n.eval0.clone().expect("interval model evaluates at 0");
    let omega = omega_u.tensor(&omega_n);
    let bulk = tensor_with_cdga(&g.coadjoint_extension(0)?, &omega)?;
    let (nu, nn) = (omega_u.dim(), omega_n.dim());
    let mut columns = Vec::new();
    let mut labels = Vec::new();
    let mut boundary_value = Vec::new();
    for x in 0..2 * n {
        for a in 0..nu {
            for b in 0..nn {
                let i = x * nu * nn + a * nn + b;
                let at_line = !eval[b].is_zero();
                if x < n && at_line {
                    continue;
                }
                let mut v = vec![Scalar::zero(); bulk.dim()];
                v[i] = Scalar::from_integer(1.into());
                columns.push(v);
                labels.push(bulk.space().label(i).to_string());
                // eval0 is the indicator of the constant form, so the boundary value is exact
                boundary_value.push(if x >= n && at_line { Some((x - n, a)) } else { None });
            }
        }
    }
    let alg = bulk.restrict(&columns, labels)?;
    Ok(Slab { alg, boundary_forms: omega_u, boundary_value })
}

/// Compactly supported forms on a run of the boundary line.
fn compact_forms(run: &Run, cap: usize, omega: &FiniteCdga) -> Result<Subcomplex> {
    let rows = compact_support_constraints(run, cap);
    let m = Matrix::from_dense(rows.len(), omega.dim(), &rows)?;
    let cols = graded_kernel(&omega.space, &m);
    let labels = (0..cols.len()).map(|i| format!("c{i}")).collect();
    Subcomplex::new(&CochainComplex::from_matrix(omega.space.clone(), omega.d.clone())?, cols, labels)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PushforwardOpenReport {
    pub open: String,
    pub boundary_side: BTreeMap<i32, usize>,
    pub bulk_side: BTreeMap<i32, usize>,
    pub chain_map: bool,
    pub quasi_iso: bool,
    pub witness_degree: Option<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PushforwardReport {
    pub lie_dim: usize,
    pub truncation: usize,
    pub opens: Vec<PushforwardOpenReport>,
    pub first_failure: Option<String>,
}

impl PushforwardReport {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Both sides on one boundary open, with the comparison map.
pub struct PushforwardPair {
    pub boundary_side: CochainComplex,
    pub bulk_side: CeComplex,
    pub comparison: GradedMap,
}

pub fn pushforward_pair(g: &LieAlgebra, setup: &PushforwardSetup, u: &OpenSet) -> Result<PushforwardPair> {
    let n = g.dim();
    let runs = setup.mesh.components(u);
    let slabs = runs.iter().map(|r| slab(g, r, setup)).collect::<Result<Vec<_>>>()?;
    let parts: Vec<(String, &CyclicLInfinity)> = slabs.iter().enumerate().map(|(i, s)| (format!("r{i}:"), &s.alg)).collect();
    let fields = CyclicLInfinity::direct_sum(&parts)?;
    let bulk_side = ce_differential(&fields, setup.truncation)?;

    let mut labels = Vec::new();
    let mut degrees = Vec::new();
    let mut images = Vec::new();
    let mut d_images = Vec::new();
    let mut offset = 0;
    let mut gen_offset = 0;
    for (run, s) in runs.iter().zip(&slabs) {
        let compact = compact_forms(run, setup.boundary_cap, &s.boundary_forms)?;
        let integral = s.boundary_forms.integral.as_ref().expect("run model integrates");
        let dc = compact.complex.differential().matrix();
        let nc = compact.dim();
        for k in 0..nc {
            let omega = compact.inclusion.column(k);
            for j in 0..n {
                labels.push(format!("r{}:{}⊗{}", run.first, compact.complex.space().label(k), g.labels()[j]));
                degrees.push(compact.complex.space().degree(k) - 1);
                let mut phi = SymElement::new();
                for (e, bv) in s.boundary_value.iter().enumerate() {
                    let Some((jj, a)) = bv else { continue };
                    if *jj != j {
                        continue;
                    }
                    let v: Scalar = omega.iter().enumerate().map(|(c, w)| w * integral.get(c, *a)).sum();
                    if !v.is_zero() {
                        phi.insert(vec![offset + e], v);
                    }
                }
                images.push(phi);
                let dk: SymElement = dc
                    .column(k)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(r, c)| (vec![gen_offset + r * n + j], c))
                    .collect();
                d_images.push(dk);
            }
        }
        offset += s.alg.dim();
        gen_offset += nc * n;
    }
    let sym = SymAlgebra::new(labels, degrees, Some(setup.truncation));
    let basis = SymBasis::new(sym)?;
    let dm = basis.derivation_matrix(&d_images, 1);
    let boundary_side = CochainComplex::new(GradedMap::new(basis.space.clone(), basis.space.clone(), 1, dm)?)?;
    let m = basis.algebra_map_matrix(&bulk_side.basis, &images);
    let comparison = GradedMap::new(basis.space.clone(), bulk_side.basis.space.clone(), 0, m)?;
    Ok(PushforwardPair { boundary_side, bulk_side, comparison })
}

/// Checks the comparison open by open on the boundary line.
pub fn bf_pushforward_compare(g: &LieAlgebra, setup: &PushforwardSetup) -> Result<PushforwardReport> {
    if setup.truncation == 0 {
        return Err(Error::InvalidInput("symmetric truncation must be at least 1".into()));
    }
    let mut report = PushforwardReport { lie_dim: g.dim(), truncation: setup.truncation, opens: Vec::new(), first_failure: None };
    for u in setup.opens() {
        let pair = pushforward_pair(g, setup, &u)?;
        let chain = chain_map_defect(&pair.comparison, &pair.boundary_side, &pair.bulk_side.complex)?.is_none();
        let (quasi_iso, witness_degree) = if chain {
            let q = is_quasi_iso(&pair.comparison, &pair.boundary_side, &pair.bulk_side.complex)?;
            (q.holds, q.witness_degree)
        } else {
            (false, None)
        };
        if (!chain || !quasi_iso) && report.first_failure.is_none() {
            report.first_failure = Some(format!("comparison on {u} is not a quasi-isomorphism"));
        }
        report.opens.push(PushforwardOpenReport {
            open: u.to_string(),
            boundary_side: pair.boundary_side.cohomology_dims(),
            bulk_side: pair.bulk_side.complex.cohomology_dims(),
            chain_map: chain,
            quasi_iso,
            witness_degree,
        });
    }
    Ok(report)
}
