//! Exact graded linear algebra over the rationals.

pub mod complex;
pub mod graded;
pub mod matrix;
pub mod sub;

pub use complex::{chain_map_defect, cone, ensure_chain_map, inclusion_matrix, is_quasi_iso, CochainComplex, Cohomology, CohomologyGroup, ComplexJson, QuasiIsoResult};
pub use graded::{BasisElement, GradedMap, GradedMapJson, GradedSpace};
pub use matrix::{CoordinateSolver, Echelon, Matrix, SparseRow};
pub use sub::{graded_kernel, graded_span, Subcomplex};
