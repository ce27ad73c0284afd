//! Exact-rational verification engine for bulk-boundary BV systems on interval models.

pub mod error;
pub mod examples;
pub mod interval;
pub mod linalg;
pub mod linf;
pub mod models;
pub mod observables;
pub mod scalar;
pub mod sym;
pub mod tnbft;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Scalar;
