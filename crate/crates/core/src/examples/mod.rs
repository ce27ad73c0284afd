//! Worked computations: Lie algebra cohomology, local functionals of BF theory on the
//! half-plane, the boundary pushforward comparison and `F_{A,M}` builders.

pub mod fam;
pub mod halfplane;
pub mod lie;
pub mod pushforward;

pub use fam::{fam_builder, FamReport};
pub use halfplane::{closed_form, jx_functional, o_gb_halfplane, HalfplaneReport, JxReport, LocalFunctionalComplex, WeightTable};
pub use lie::{lie_cochains, lie_cohomology, restrict_complex, LieCochains, LieCohomology, LieModule};
pub use pushforward::{bf_pushforward_compare, pushforward_pair, PushforwardOpenReport, PushforwardPair, PushforwardReport, PushforwardSetup};
