//! Tube algebras of finite fusion systems, the modular data on their
//! centers, and Turaev-Viro-Ocneanu invariants of surgery presentations.
//!
//! The numerical core is generic over the real scalar (`f32` or `f64`, see
//! [`scalar::Real`]); the aliases below fix it to `f64`, which is what the
//! command-line tool uses.

pub mod cli;
pub mod error;
pub mod fusion;
pub mod modular;
pub mod report;
pub mod scalar;
pub mod surgery;
pub mod tables;
pub mod tube;

pub use error::{Error, Result};
pub use report::ValidationReport;

pub type ComplexF64 = scalar::C<f64>;
pub type FusionSystemF64 = fusion::FusionSystem<f64>;
pub type TubeAlgebraF64 = tube::TubeAlgebra<f64>;
pub type ModularDataF64 = modular::ModularData<f64>;
