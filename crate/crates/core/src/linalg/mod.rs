//! Dense and sparse Hermitian kernels.

mod banded;
mod csr;
mod dense;
mod krylov;
mod lobpcg;
mod minres;
pub mod vector;

pub use banded::{BandLdl, Inertia};
pub use csr::CsrMatrix;
pub use dense::{hermitian_eig, hermitian_eig_window, DenseEig, DenseMatrix};
pub use krylov::{shift_invert_eigs, EigenPair, FactoredShift, KrylovOptions, KrylovOutcome, MinresShift, ShiftInvert};
pub use lobpcg::{lobpcg, LobpcgOptions, LobpcgOutcome, Preconditioner};
pub use minres::{minres, MinresSolution};
