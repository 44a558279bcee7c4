use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::rect_integral;
use crate::lattice::Params;

/// Closed-form spinors with `u1 = u2` on `y = 0`, decaying like Gaussians.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SquareTrial {
    /// `u1 = u2 = y e^{-x^2 - (y-1)^2}`.
    VanishingEdge,
    /// `u1 = u2 = e^{-x^2 - y^2} e^{ix}`.
    Modulated,
    /// `u1 = e^{-x^2 - y^2}`, `u2 = (1 + y) e^{-x^2 - y^2}`.
    Unequal,
}

impl SquareTrial {
    pub const ALL: [SquareTrial; 3] = [SquareTrial::VanishingEdge, SquareTrial::Modulated, SquareTrial::Unequal];

    /// `[value, d_x, d_xx, d_y]` for each component.
    fn jets(self, x: f64, y: f64) -> [[Complex64; 4]; 2] {
        let c = Complex64::from;
        match self {
            SquareTrial::VanishingEdge => {
                let e = (-x * x - (y - 1.0).powi(2)).exp();
                let u = y * e;
                let j = [
                    c(u),
                    c(-2.0 * x * u),
                    c((4.0 * x * x - 2.0) * u),
                    c(e * (1.0 - 2.0 * y * (y - 1.0))),
                ];
                [j, j]
            }
            SquareTrial::Modulated => {
                let u = Complex64::from_polar((-x * x - y * y).exp(), x);
                let a = Complex64::new(-2.0 * x, 1.0);
                let j = [u, a * u, (a * a - 2.0) * u, -2.0 * y * u];
                [j, j]
            }
            SquareTrial::Unequal => {
                let g = (-x * x - y * y).exp();
                let q = 1.0 + y;
                [
                    [c(g), c(-2.0 * x * g), c((4.0 * x * x - 2.0) * g), c(-2.0 * y * g)],
                    [
                        c(q * g),
                        c(-2.0 * x * q * g),
                        c((4.0 * x * x - 2.0) * q * g),
                        c((1.0 - 2.0 * y * q) * g),
                    ],
                ]
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SquareIdentity {
    pub trial: SquareTrial,
    pub delta: f64,
    /// `||Tu||^2`.
    pub lhs: f64,
    /// `||d_y u||^2 + ||d_x² u||^2 + 2 delta ||d_x u||^2 + delta^2 ||u||^2`.
    pub rhs: f64,
}

impl SquareIdentity {
    pub fn rel_err(&self) -> f64 {
        (self.lhs - self.rhs).abs() / self.rhs.abs()
    }
}

/// Both sides of the square identity for `trial` by composite
/// Gauss-Legendre quadrature on `[-8, 8] x [0, 8]`.
pub fn square_identity(trial: SquareTrial, params: &Params) -> SquareIdentity {
    let d = params.delta();
    let i = Complex64::i();
    let xb: Vec<f64> = (0..=16).map(|k| -8.0 + k as f64).collect();
    let yb: Vec<f64> = (0..=8).map(|k| k as f64).collect();
    let lhs = rect_integral(&xb, &yb, 16, 1, |x, y| {
        let [a, b] = trial.jets(x, y);
        let la = -a[2] + d * a[0];
        let lb = -b[2] + d * b[0];
        (-i * a[3] + lb).norm_sqr() + (la + i * b[3]).norm_sqr()
    });
    let rhs = rect_integral(&xb, &yb, 16, 1, |x, y| {
        trial
            .jets(x, y)
            .iter()
            .map(|j| j[3].norm_sqr() + j[2].norm_sqr() + 2.0 * d * j[1].norm_sqr() + d * d * j[0].norm_sqr())
            .sum()
    });
    SquareIdentity {
        trial,
        delta: d,
        lhs,
        rhs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jets_match_differences() {
        let h = 1e-5;
        for t in SquareTrial::ALL {
            let (x, y) = (0.3, 0.7);
            let j = t.jets(x, y);
            for c in 0..2 {
                let f = |x: f64, y: f64| t.jets(x, y)[c][0];
                let dx = (f(x + h, y) - f(x - h, y)) / (2.0 * h);
                let dxx = (f(x + h, y) - 2.0 * f(x, y) + f(x - h, y)) / (h * h);
                let dy = (f(x, y + h) - f(x, y - h)) / (2.0 * h);
                assert!((dx - j[c][1]).norm() < 1e-8);
                assert!((dxx - j[c][2]).norm() < 1e-4);
                assert!((dy - j[c][3]).norm() < 1e-8);
            }
            let e = t.jets(0.4, 0.0);
            assert!((e[0][0] - e[1][0]).norm() < 1e-15);
        }
    }

    #[test]
    fn identity_holds() {
        for d in [0.5, 1.0, 2.0] {
            let p = Params::new(d).unwrap();
            for t in SquareTrial::ALL {
                let s = square_identity(t, &p);
                assert!(s.rel_err() < 1e-10, "{t:?} delta={d}: {} vs {}", s.lhs, s.rhs);
            }
        }
    }
}
