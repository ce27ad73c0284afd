//! Bulk-boundary systems: bulk fields built from boundary data and an interval model, the
//! boundary map `ρ`, boundary conditions, and the checks relating them.

pub mod checks;
pub mod condition;
pub mod system;

pub use checks::{capped_bulk, strict_pullback_on, DefectFailure, IsotropyFailure, LagrangianReport, PullbackReport};
pub use condition::{validate_boundary_condition, BoundaryCondition, BoundaryTheory, Violation};
pub use system::{default_cutoff, BulkBoundarySystem, ConditionedFields, FieldModel, Splitting, ORIENTATION};
