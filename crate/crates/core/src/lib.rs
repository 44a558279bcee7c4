//! Spectral solver and verification bench for the half-space semi-Dirac
//! operator
//!
//! ```text
//! T = [ -i d/dy          -d²/dx² + delta ]
//!     [ -d²/dx² + delta   i d/dy         ]
//! ```
//!
//! on `R x (0, inf)` with the edge condition `u1 = u2` at `y = 0`.

pub mod assembly;
pub mod eigensolve;
pub mod error;
pub mod fiber;
pub mod lattice;
pub mod linalg;
pub mod quasimode;
pub mod scan;

pub use assembly::{HermitianOperator, OperatorKind};
pub use eigensolve::{Certificate, EigenEntry, SpectrumReport};
pub use error::{Error, Result};
pub use lattice::{Grid2D, Params, PerturbationProfile, PotentialModel, PotentialSpec, Profile, SpinorField};
pub use num_complex::Complex64;
pub use scan::{ConvergenceStudy, ScanResult, SolverConfig, SolverMode};
