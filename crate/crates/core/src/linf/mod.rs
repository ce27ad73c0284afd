//! Cyclic L∞ algebras: storage, identities, Chevalley–Eilenberg complexes and cdga coefficients.

pub mod algebra;
pub mod cdga;
pub mod ce;
pub mod checks;
pub mod lie;

pub use algebra::{antisym_sort, sv_add, sv_axpy, sv_from_dense, sv_to_dense, CyclicLInfinity, LinfJson, Pairing, SparseVec};
pub use cdga::{tensor_with_cdga, tensor_with_cdga_on, FiniteCdga, ProductMode};
pub use ce::{ce_differential, ce_generator_images, CeComplex};
pub use checks::{action, check_cyclic, check_cyclic_vectors, check_jacobi, cyclic_residual, cyclic_sign, interaction, Counterexample, DEFAULT_ARITY_BUDGET};
pub use lie::LieAlgebra;
