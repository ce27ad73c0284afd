//! Bulk fields `E_∂ ⊗ Ω` on the opens of a cell mesh, the boundary map `ρ`, and the fields
//! conditioned by a boundary condition.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::interval::{compact_support_constraints, run_cdga_on, CellMesh, OpenSet, Poly, Run};
use crate::linalg::{graded_kernel, graded_span, CochainComplex, CoordinateSolver, GradedMap, GradedSpace, Matrix, Subcomplex};
use crate::linf::{tensor_with_cdga, CyclicLInfinity, ProductMode};
use crate::scalar::Scalar;

use super::condition::{BoundaryCondition, BoundaryTheory};

/// Sign `σ` in `⟨ℓ₁e₁, e₂⟩ + (−1)^{|e₁|}⟨e₁, ℓ₁e₂⟩ = σ⟨ρe₁, ρe₂⟩_∂` for the orientation of `[0, δ)`
/// with the boundary at `t = 0`.
pub const ORIENTATION: i64 = -1;

/// A theory topological normal to the boundary, on a meshed collar `[0, δ)`.
#[derive(Debug, Clone)]
pub struct BulkBoundarySystem {
    boundary: BoundaryTheory,
    mesh: CellMesh,
    cap: usize,
}

/// Bulk fields on one open: a copy of `E_∂ ⊗ Ω_N` per connected run.
#[derive(Debug, Clone)]
pub struct FieldModel {
    pub open: OpenSet,
    pub runs: Vec<Run>,
    pub alg: CyclicLInfinity,
    /// `ρ`: evaluation at `t = 0`; has no rows unless the open contains the boundary point.
    pub rho: Matrix,
    pub boundary_space: GradedSpace,
    pub cap: usize,
    boundary_dim: usize,
}

/// Fields on one open satisfying the boundary condition, with their induced structure.
#[derive(Debug, Clone)]
pub struct ConditionedFields {
    pub fields: FieldModel,
    /// Basis of `E_L(U)` as columns over `E(U)`.
    pub basis: Vec<Vec<Scalar>>,
    pub alg: CyclicLInfinity,
    solver: CoordinateSolver,
}

/// Maps `P: E → E_∂/L` and `I: E_∂/L → E`, with `E_∂/L` written on the `L′` basis.
#[derive(Debug, Clone)]
pub struct Splitting {
    pub p: Matrix,
    pub i: Matrix,
    pub chi: Poly,
}

impl BulkBoundarySystem {
    pub fn new(boundary: BoundaryTheory, mesh: CellMesh, cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::InvalidInput("polynomial degree cap must be positive".into()));
        }
        Ok(BulkBoundarySystem { boundary, mesh, cap })
    }

    pub fn boundary(&self) -> &BoundaryTheory {
        &self.boundary
    }

    pub fn mesh(&self) -> &CellMesh {
        &self.mesh
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn boundary_complex(&self) -> Result<CochainComplex> {
        self.boundary.algebra().complex()
    }

    /// Bulk fields on an open of the mesh.
    pub fn fields(&self, u: &OpenSet) -> Result<FieldModel> {
        if !self.mesh.is_valid(u) {
            return Err(Error::InvalidInput(format!("{u} is not an open set of the mesh")));
        }
        let runs = self.mesh.components(u);
        let mut parts = Vec::with_capacity(runs.len());
        for r in &runs {
            let omega = run_cdga_on(&r.start, &(&r.start + &r.length), self.cap, ProductMode::Quotient);
            parts.push((run_prefix(r), tensor_with_cdga(self.boundary.algebra(), &omega)?));
        }
        let refs: Vec<(String, &CyclicLInfinity)> = parts.iter().map(|(p, a)| (p.clone(), a)).collect();
        let alg = CyclicLInfinity::direct_sum(&refs)?;
        let nb = self.boundary.dim();
        let has_boundary = runs.first().is_some_and(|r| r.boundary);
        let boundary_space = if has_boundary { self.boundary.algebra().space().clone() } else { GradedSpace::zero() };
        let mut rho = Matrix::zeros(boundary_space.dim(), alg.dim());
        if has_boundary {
            let no = 2 * self.cap + 1;
            for i in 0..nb {
                rho.set(i, i * no, Scalar::one());
            }
        }
        Ok(FieldModel { open: u.clone(), runs, alg, rho, boundary_space, cap: self.cap, boundary_dim: nb })
    }

    /// Restriction `E(V) → E(U)` for `U ⊆ V`.
    pub fn restriction(&self, from: &FieldModel, to: &FieldModel) -> Result<Matrix> {
        if !to.open.is_subset(&from.open) {
            return Err(Error::InvalidInput(format!("{} is not contained in {}", to.open, from.open)));
        }
        let mut m = Matrix::zeros(to.dim(), from.dim());
        let no = 2 * self.cap + 1;
        for (ti, tr) in to.runs.iter().enumerate() {
            let fi = from
                .runs
                .iter()
                .position(|r| r.contains(tr))
                .ok_or_else(|| Error::Inconsistent(format!("run {} has no containing run", run_prefix(tr))))?;
            // forms are written in the global coordinate, so restriction copies coefficients
            for x in 0..to.boundary_dim {
                for a in 0..no {
                    m.set(to.index(ti, x, a), from.index(fi, x, a), Scalar::one());
                }
            }
        }
        Ok(m)
    }

    /// The splitting maps on an open containing the boundary, with cutoff `χ` on its first run.
    pub fn splitting_on(&self, fm: &FieldModel, cond: &BoundaryCondition, chi: &Poly) -> Result<Splitting> {
        let run = fm.runs.first().filter(|r| r.boundary).ok_or_else(|| {
            Error::Precondition(format!("{} does not contain the boundary point", fm.open))
        })?;
        if chi.eval(&Scalar::zero()) != Scalar::one() {
            return Err(Error::Precondition("cutoff must equal 1 at t = 0".into()));
        }
        if !chi.eval(&run.length).is_zero() {
            return Err(Error::Precondition("cutoff must vanish at the far end of the boundary run".into()));
        }
        if chi.degree().unwrap_or(0) > self.cap {
            return Err(Error::DegreeCapOverflow { what: "cutoff".into(), cap: self.cap });
        }
        let nb = self.boundary.dim();
        let proj = cond.complement_projection(nb);
        let p = proj.mul(&fm.rho)?;
        let mut cols = Vec::new();
        for lp in &cond.l_prime {
            let mut v = vec![Scalar::zero(); fm.dim()];
            for (x, c) in lp.iter().enumerate() {
                for (a, w) in chi.0.iter().enumerate() {
                    v[fm.index(0, x, a)] = c * w;
                }
            }
            cols.push(v);
        }
        let i = Matrix::from_columns(fm.dim(), &cols);
        Ok(Splitting { p, i, chi: chi.clone() })
    }

    /// The splitting on the whole collar with a configured cutoff.
    pub fn splitting(&self, cond: &BoundaryCondition, chi: &Poly) -> Result<Splitting> {
        let fm = self.fields(&self.mesh.full())?;
        self.splitting_on(&fm, cond, chi)
    }

    /// `E_L(U)`: fields whose boundary value lies in `L`, spanned by the image of `id − I∘P`.
    pub fn impose(&self, cond: &BoundaryCondition, u: &OpenSet) -> Result<ConditionedFields> {
        let fm = self.fields(u)?;
        let n = fm.dim();
        let columns: Vec<Vec<Scalar>> = match fm.runs.first().filter(|r| r.boundary) {
            None => (0..n).map(|i| unit(n, i)).collect(),
            Some(run) => {
                let chi = default_cutoff(&run.length);
                let s = self.splitting_on(&fm, cond, &chi)?;
                let q = Matrix::identity(n).sub(&s.i.mul(&s.p)?)?;
                let image: Vec<Vec<Scalar>> = (0..n).map(|c| q.column(c)).collect();
                graded_span(fm.alg.space(), &image)?
            }
        };
        if fm.has_boundary() {
            let cond_map = cond.complement_projection(self.boundary.dim()).mul(&fm.rho)?;
            if columns.iter().any(|c| cond_map.mul_vec(c).iter().any(|x| !x.is_zero())) {
                return Err(Error::Inconsistent("splitting image leaves the conditioned fields".into()));
            }
            if columns.len() + cond.l_prime.len() != n {
                return Err(Error::Inconsistent("conditioned fields have the wrong dimension".into()));
            }
        }
        let labels = (0..columns.len()).map(|i| format!("{}{i}", label_stem(&fm))).collect();
        let alg = fm.alg.restrict(&columns, labels)?;
        let solver = CoordinateSolver::new(Matrix::from_columns(n, &columns))?;
        Ok(ConditionedFields { fields: fm, basis: columns, alg, solver })
    }

    /// Restriction `E_L(V) → E_L(U)` in conditioned coordinates.
    pub fn conditioned_restriction(&self, from: &ConditionedFields, to: &ConditionedFields) -> Result<Matrix> {
        let r = self.restriction(&from.fields, &to.fields)?;
        let mut m = Matrix::zeros(to.dim(), from.dim());
        for (c, v) in from.basis.iter().enumerate() {
            let img = r.mul_vec(v);
            let x = to
                .coordinates(&img)
                .ok_or_else(|| Error::Inconsistent("restriction leaves the conditioned fields".into()))?;
            for (row, val) in x.into_iter().enumerate() {
                m.set(row, c, val);
            }
        }
        Ok(m)
    }
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

fn run_prefix(r: &Run) -> String {
    if r.first == r.last {
        format!("c{}:", r.first)
    } else {
        format!("c{}-{}:", r.first, r.last)
    }
}

fn label_stem(fm: &FieldModel) -> String {
    format!("L{}#", fm.open)
}

/// `χ(s) = 1 − s/ℓ`.
pub fn default_cutoff(length: &Scalar) -> Poly {
    Poly(vec![Scalar::one(), -(Scalar::one() / length)])
}

impl FieldModel {
    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn has_boundary(&self) -> bool {
        self.rho.rows() > 0
    }

    /// Index of `x ⊗ ω_a` in run `run`.
    pub fn index(&self, run: usize, x: usize, a: usize) -> usize {
        let no = 2 * self.cap + 1;
        run * self.boundary_dim * no + x * no + a
    }

    pub fn complex(&self) -> Result<CochainComplex> {
        self.alg.complex()
    }

    pub fn rho_map(&self) -> Result<GradedMap> {
        GradedMap::new(self.alg.space().clone(), self.boundary_space.clone(), 0, self.rho.clone())
    }

    /// Compactly supported fields: on each run the function part vanishes at the far end, and
    /// at the near end too unless the run contains the boundary point.
    pub fn compact(&self) -> Result<Subcomplex> {
        let no = 2 * self.cap + 1;
        let form_space = crate::interval::form::form_basis_space(self.cap);
        let mut cols = Vec::new();
        let mut labels = Vec::new();
        for (ri, run) in self.runs.iter().enumerate() {
            let rows = compact_support_constraints(run, self.cap);
            let cons = Matrix::from_dense(rows.len(), no, &rows)?;
            let forms = graded_kernel(&form_space, &cons);
            for x in 0..self.boundary_dim {
                for (j, f) in forms.iter().enumerate() {
                    let mut v = vec![Scalar::zero(); self.dim()];
                    for (a, c) in f.iter().enumerate() {
                        v[self.index(ri, x, a)] = c.clone();
                    }
                    cols.push(v);
                    labels.push(format!("{}{}⊗κ{j}", run_prefix(run), self.boundary_space_label(x)));
                }
            }
        }
        Subcomplex::new(&self.complex()?, cols, labels)
    }

    fn boundary_space_label(&self, x: usize) -> String {
        // the first run's labels carry the boundary labels after the run prefix
        let l = self.alg.space().label(x * (2 * self.cap + 1));
        let stem = l.split_once(':').map_or(l, |(_, s)| s);
        stem.split('⊗').next().unwrap_or(stem).to_string()
    }
}

impl ConditionedFields {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.solver.coordinates(v)
    }
}
