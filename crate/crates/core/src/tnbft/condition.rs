//! Boundary theories and local boundary conditions on them.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{CoordinateSolver, Matrix};
use crate::linf::{check_cyclic, check_jacobi, sv_from_dense, sv_to_dense, CyclicLInfinity, SparseVec};
use crate::scalar::Scalar;

/// A boundary theory: a cyclic L∞ algebra with a nondegenerate pairing of degree 0.
#[derive(Debug, Clone)]
pub struct BoundaryTheory {
    alg: CyclicLInfinity,
}

impl BoundaryTheory {
    pub fn new(alg: CyclicLInfinity, budget: usize) -> Result<Self> {
        match alg.pairing() {
            Some(p) if p.degree == 0 && alg.is_symplectic() => {}
            Some(p) if p.degree != 0 => {
                return Err(Error::InvalidInput(format!("boundary pairing has degree {}, expected 0", p.degree)))
            }
            _ => return Err(Error::InvalidInput("boundary pairing must be present and flagged symplectic".into())),
        }
        if let Some(c) = check_jacobi(&alg, budget)? {
            return Err(Error::Inconsistent(format!("higher Jacobi identity fails on {}", c.labels.join(", "))));
        }
        if let Some(c) = check_cyclic(&alg, true, None, budget)? {
            return Err(Error::Inconsistent(format!("boundary pairing is not cyclic on {}", c.labels.join(", "))));
        }
        Ok(BoundaryTheory { alg })
    }

    pub fn algebra(&self) -> &CyclicLInfinity {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }
}

/// One violated requirement of a boundary condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum Violation {
    /// The pairing does not vanish on `L ⊗ L`.
    NonIsotropic { left: usize, right: usize, value: String },
    /// Some operation on elements of `L` leaves `L`.
    NotBracketClosed { arity: usize, inputs: Vec<usize> },
    /// `L′` is not an isotropic complement of `L`.
    MissingComplement { reason: String },
}

impl Violation {
    pub fn tag(&self) -> &'static str {
        match self {
            Violation::NonIsotropic { .. } => "NonIsotropic",
            Violation::NotBracketClosed { .. } => "NotBracketClosed",
            Violation::MissingComplement { .. } => "MissingComplement",
        }
    }
}

fn check_vectors(boundary: &CyclicLInfinity, vs: &[Vec<Scalar>], name: &str) -> Result<()> {
    for (i, v) in vs.iter().enumerate() {
        if v.len() != boundary.dim() {
            return Err(Error::DimensionMismatch(format!("{name}[{i}] has length {}, expected {}", v.len(), boundary.dim())));
        }
        if boundary.space().homogeneous_degree(v).is_none() {
            return Err(Error::InvalidInput(format!("{name}[{i}] is zero or not homogeneous")));
        }
    }
    Ok(())
}

fn tuples(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                let start = t.last().copied().unwrap_or(0);
                (start..m).map(move |i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                })
            })
            .collect();
    }
    out
}

/// Checks isotropy of `L`, closure of `L` under every operation, and that `L′` is an isotropic
/// complement. Every violation found is listed.
pub fn validate_boundary_condition(
    boundary: &CyclicLInfinity,
    l: &[Vec<Scalar>],
    l_prime: &[Vec<Scalar>],
) -> Result<Vec<Violation>> {
    check_vectors(boundary, l, "L")?;
    check_vectors(boundary, l_prime, "L′")?;
    let n = boundary.dim();
    let mut out = Vec::new();
    let ls: Vec<SparseVec> = l.iter().map(|v| sv_from_dense(v)).collect();
    let lps: Vec<SparseVec> = l_prime.iter().map(|v| sv_from_dense(v)).collect();

    'iso: for (i, a) in ls.iter().enumerate() {
        for (j, b) in ls.iter().enumerate() {
            let v = boundary.pair(a, b);
            if !v.is_zero() {
                out.push(Violation::NonIsotropic { left: i, right: j, value: crate::scalar::format_rational(&v) });
                break 'iso;
            }
        }
    }

    let span = Matrix::from_columns(n, l);
    let rank = span.rank();
    'closure: for k in 1..=boundary.max_arity().max(1) {
        for t in tuples(l.len(), k) {
            let args: Vec<SparseVec> = t.iter().map(|i| ls[*i].clone()).collect();
            let v = boundary.bracket(&args);
            if v.is_empty() {
                continue;
            }
            let ext = span.hcat(&Matrix::from_columns(n, &[sv_to_dense(&v, n)]))?;
            if ext.rank() > rank {
                out.push(Violation::NotBracketClosed { arity: k, inputs: t });
                break 'closure;
            }
        }
    }

    let all: Vec<Vec<Scalar>> = l.iter().chain(l_prime).cloned().collect();
    if all.len() != n || Matrix::from_columns(n, &all).rank() != n {
        out.push(Violation::MissingComplement { reason: format!("L and L′ do not form a basis of the {n}-dimensional boundary fields") });
    } else if lps.iter().any(|a| lps.iter().any(|b| !boundary.pair(a, b).is_zero())) {
        out.push(Violation::MissingComplement { reason: "L′ is not isotropic".into() });
    }
    Ok(out)
}

/// A validated boundary condition `L` with isotropic complement `L′`.
#[derive(Debug, Clone)]
pub struct BoundaryCondition {
    pub l: Vec<Vec<Scalar>>,
    pub l_prime: Vec<Vec<Scalar>>,
    // coordinates in the basis L ∪ L′
    solver: CoordinateSolver,
}

impl BoundaryCondition {
    pub fn new(boundary: &BoundaryTheory, l: Vec<Vec<Scalar>>, l_prime: Vec<Vec<Scalar>>) -> Result<Self> {
        let violations = validate_boundary_condition(boundary.algebra(), &l, &l_prime)?;
        if let Some(v) = violations.first() {
            return Err(Error::Precondition(format!("boundary condition rejected: {}", v.tag())));
        }
        let n = boundary.dim();
        let all: Vec<Vec<Scalar>> = l.iter().chain(&l_prime).cloned().collect();
        let solver = CoordinateSolver::new(Matrix::from_columns(n, &all))?;
        Ok(BoundaryCondition { l, l_prime, solver })
    }

    /// Coordinates along `L′` of a boundary field, i.e. its class in `E_∂ / L`.
    pub fn project_complement(&self, v: &[Scalar]) -> Vec<Scalar> {
        let c = self.solver.coordinates(v).expect("L ⊕ L′ spans the boundary fields");
        c[self.l.len()..].to_vec()
    }

    /// Coordinates along `L` of a boundary field.
    pub fn project_l(&self, v: &[Scalar]) -> Vec<Scalar> {
        let c = self.solver.coordinates(v).expect("L ⊕ L′ spans the boundary fields");
        c[..self.l.len()].to_vec()
    }

    /// The projection `E_∂ → E_∂ / L ≅ L′` as a matrix.
    pub fn complement_projection(&self, n: usize) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut e = vec![Scalar::zero(); n];
                e[i] = num_traits::One::one();
                self.project_complement(&e)
            })
            .collect();
        Matrix::from_columns(self.l_prime.len(), &cols)
    }
}
