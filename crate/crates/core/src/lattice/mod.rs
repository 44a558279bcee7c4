//! Grids, spinor fields, quadrature and physical parameters.
//!
//! The computational domain is the rectangle `[x_min, x_max] x [0, y_max]`
//! cut out of the half-plane. Every grid node carries an unknown; the
//! truncation walls sit one spacing outside the node set (at `x_min - hx`,
//! `x_max + hx` and `y_max + hy`) where both spinor components vanish.
//! The physical edge `y = 0` is the first node row.

mod field;
mod grid;
mod potential;
mod profile;
mod quadrature;

pub use field::{inner_product, sample, ScalarField, SpinorField};
pub use grid::Grid2D;
pub use potential::{PotentialModel, PotentialSpec, SampledPerturbation};
pub use profile::{ComplexProfile, PerturbationProfile, Profile};
pub use quadrature::{quadrature_1d, GaussLegendre, QuadratureOrder};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical parameters of the operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    delta: f64,
}

impl Params {
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::invalid("delta", format!("must be finite and > 0, got {delta}")));
        }
        Ok(Params { delta })
    }

    /// Gap parameter: the unperturbed spectrum is `(-inf, -delta] u [delta, inf)`.
    #[inline]
    pub fn delta(&self) -> f64 {
        self.delta
    }
}
