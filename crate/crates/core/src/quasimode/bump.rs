use serde::{Deserialize, Serialize};

use super::disk_integral;
use crate::lattice::GaussLegendre;

/// Smooth mollifier `c * exp(-1 / (1 - s))`, `s = (x^2 + (y - cy)^2) / R^2`,
/// supported on the open disk of radius `R` about `(0, cy)` and normalized
/// so that its `L^2` norm is `1/sqrt(2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bump {
    center_y: f64,
    radius: f64,
    scale: f64,
}

/// Value and the derivatives entering the trial residuals.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BumpJet {
    pub v: f64,
    pub dx: f64,
    pub dy: f64,
    pub dxx: f64,
}

/// Squared `L^2` norms of the bump and its derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BumpNorms {
    pub l2: f64,
    pub dx: f64,
    pub dy: f64,
    pub dxx: f64,
}

impl Bump {
    /// Disk of radius 2 about `(0, 3)`.
    pub fn reference() -> Self {
        Self::new(3.0, 2.0).expect("reference bump is admissible")
    }

    /// `None` unless the disk sits strictly inside the half-plane.
    pub fn new(center_y: f64, radius: f64) -> Option<Self> {
        if !(radius > 0.0 && center_y.is_finite() && center_y - radius > 0.0) {
            return None;
        }
        // ||psi(rho^2/R^2)||^2 = 2 pi R^2 int_0^1 psi(s^2)^2 s ds
        let gl = GaussLegendre::new(64);
        let raw: f64 = gl
            .composite_points(0.0, 1.0, 8)
            .iter()
            .map(|&(s, w)| w * s * profile(s * s).powi(2))
            .sum();
        let norm_sq = std::f64::consts::TAU * radius * radius * raw;
        Some(Bump {
            center_y,
            radius,
            scale: (0.5 / norm_sq).sqrt(),
        })
    }

    pub fn center_y(&self) -> f64 {
        self.center_y
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn jet(&self, x: f64, y: f64) -> BumpJet {
        let r2 = self.radius * self.radius;
        let dy = y - self.center_y;
        let s = (x * x + dy * dy) / r2;
        if s >= 1.0 {
            return BumpJet::default();
        }
        let one = 1.0 - s;
        let p = profile(s);
        let p1 = -p / (one * one);
        let p2 = p * (2.0 * s - 1.0) / one.powi(4);
        let c = self.scale;
        let sx = 2.0 * x / r2;
        BumpJet {
            v: c * p,
            dx: c * p1 * sx,
            dy: c * p1 * 2.0 * dy / r2,
            dxx: c * (p2 * sx * sx + p1 * 2.0 / r2),
        }
    }

    /// Jet of the dilation `(1/n) phi(x/n, y/n)`.
    pub fn scaled_jet(&self, n: f64, x: f64, y: f64) -> BumpJet {
        let j = self.jet(x / n, y / n);
        let n2 = n * n;
        BumpJet {
            v: j.v / n,
            dx: j.dx / n2,
            dy: j.dy / n2,
            dxx: j.dxx / (n2 * n),
        }
    }

    pub fn norms(&self) -> BumpNorms {
        let sq =
            |f: fn(&BumpJet) -> f64| disk_integral(0.0, self.center_y, self.radius, |x, y| f(&self.jet(x, y)).powi(2));
        BumpNorms {
            l2: sq(|j| j.v),
            dx: sq(|j| j.dx),
            dy: sq(|j| j.dy),
            dxx: sq(|j| j.dxx),
        }
    }
}

fn profile(s: f64) -> f64 {
    if s >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - s)).exp()
    }
}
