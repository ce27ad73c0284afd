//! Polynomial models of forms on an interval and the finite site they live on.

pub mod form;
pub mod mesh;

pub use form::{interval_complex, Poly, PolyForm, SupportFlag};
pub use mesh::{compact_support_constraints, restriction_matrix, run_cdga, run_cdga_on, sub_basis_indices, CellMesh, OpenSet, Point, Run};
