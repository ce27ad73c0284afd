//! Classical observables as a prefactorization algebra on the mesh site, the Čech test for
//! Weiss covers, the shifted Poisson bracket, and comparison with `A`/`M` factorization algebras.

pub mod am;
pub mod fa;
pub mod p0;

pub use am::{am_compare, AMFactorization, AMOpenReport, AMReport, AMValue};
pub use fa::{is_weiss_cover, minimal_weiss_covers, obs_complex, CechReport, ClassicalObservables, Observable, ObservableSpace};
pub use p0::{p0_suite, KernelPresentation, P0Report, P0Structure};
