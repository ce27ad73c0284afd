//! Boundary data and boundary conditions for the standard example systems.

use num_traits::{One, Zero};

use crate::error::Result;
use crate::interval::CellMesh;
use crate::linalg::GradedSpace;
use crate::linf::{CyclicLInfinity, LieAlgebra, DEFAULT_ARITY_BUDGET};
use crate::scalar::Scalar;
use crate::tnbft::{BoundaryCondition, BoundaryTheory, BulkBoundarySystem};

/// The symplectic plane `ℚ²` with basis `(q, p)`, `ω(q, p) = 1`, in degree 0 and no brackets.
pub fn symplectic_plane() -> CyclicLInfinity {
    let mut alg = CyclicLInfinity::new(GradedSpace::from_pairs([("q", 0), ("p", 0)]));
    alg.set_pairing(0, &[(0, 1, Scalar::one())], true).expect("nondegenerate");
    alg
}

/// Topological mechanics on a uniform mesh of `[0, δ)`.
pub fn topological_mechanics(cells: usize, delta: &Scalar, cap: usize) -> Result<BulkBoundarySystem> {
    let boundary = BoundaryTheory::new(symplectic_plane(), DEFAULT_ARITY_BUDGET)?;
    BulkBoundarySystem::new(boundary, CellMesh::uniform(cells, delta)?, cap)
}

/// One-dimensional BF theory with gauge algebra `g`, boundary fields `g[1] ⊕ g^∨[−1]`.
pub fn bf_theory(g: &LieAlgebra, cells: usize, delta: &Scalar, cap: usize) -> Result<BulkBoundarySystem> {
    let boundary = BoundaryTheory::new(g.bf_boundary()?, DEFAULT_ARITY_BUDGET)?;
    BulkBoundarySystem::new(boundary, CellMesh::uniform(cells, delta)?, cap)
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

/// The line through `(a, b)` in the `(q, p)` plane, with the line through `(c, d)` as complement.
pub fn plane_condition(sys: &BulkBoundarySystem, line: [Scalar; 2], complement: [Scalar; 2]) -> Result<BoundaryCondition> {
    BoundaryCondition::new(sys.boundary(), vec![line.to_vec()], vec![complement.to_vec()])
}

/// `L = span{q}` with complement `span{p}`.
pub fn q_line_condition(sys: &BulkBoundarySystem) -> Result<BoundaryCondition> {
    BoundaryCondition::new(sys.boundary(), vec![unit(2, 0)], vec![unit(2, 1)])
}

/// The `A` condition for BF theory: `L` is the `g` summand.
pub fn bf_a_condition(sys: &BulkBoundarySystem) -> Result<BoundaryCondition> {
    let n = sys.boundary().dim();
    let half = n / 2;
    BoundaryCondition::new(sys.boundary(), (0..half).map(|i| unit(n, i)).collect(), (half..n).map(|i| unit(n, i)).collect())
}

/// The `B` condition for BF theory: `L` is the `g^∨` summand.
pub fn bf_b_condition(sys: &BulkBoundarySystem) -> Result<BoundaryCondition> {
    let n = sys.boundary().dim();
    let half = n / 2;
    BoundaryCondition::new(sys.boundary(), (half..n).map(|i| unit(n, i)).collect(), (0..half).map(|i| unit(n, i)).collect())
}
