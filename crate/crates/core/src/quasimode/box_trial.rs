use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::rect_integral;
use crate::error::{Error, Result};
use crate::lattice::Params;

/// Product of Dirichlet ground modes on the square `[a, b]^2`, doubled into
/// the spinor `(psi, psi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxTrial {
    a: f64,
    b: f64,
}

impl BoxTrial {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && 0.0 < a && a < b) {
            return Err(Error::invalid("box", format!("need 0 < a < b, got a={a}, b={b}")));
        }
        Ok(BoxTrial { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Lowest Dirichlet eigenvalue of `-d²/dz²` on `[a, b]`.
    pub fn lambda1(&self) -> f64 {
        PI * PI / (self.b - self.a).powi(2)
    }

    /// Normalized ground mode and its first two derivatives.
    pub fn mode(&self, z: f64) -> (f64, f64, f64) {
        let l = self.b - self.a;
        if z <= self.a || z >= self.b {
            return (0.0, 0.0, 0.0);
        }
        let c = (2.0 / l).sqrt();
        let w = PI / l;
        let (s, co) = (w * (z - self.a)).sin_cos();
        (c * s, c * w * co, -c * w * w * s)
    }

    pub fn norm_sq(&self, order: usize) -> f64 {
        let br = [self.a, self.b];
        rect_integral(&br, &br, order, 2, |x, y| (self.mode(x).0 * self.mode(y).0).powi(2))
    }
}

/// `q(V0) = ||Hv||^2 - delta^2 ||v||^2` in closed form.
pub fn box_energy_analytic(a: f64, b: f64, v0: f64, params: &Params) -> Result<f64> {
    let l1 = BoxTrial::new(a, b)?.lambda1();
    let d = params.delta();
    Ok(2.0 * v0 * v0 + 4.0 * (l1 + d) * v0 + 2.0 * l1 + 4.0 * d * l1 + 2.0 * l1 * l1)
}

/// The same energy by Gauss-Legendre quadrature of
/// `2|psi_y|^2 + 2|(-d²/dx² + delta + V0) psi|^2 - 2 delta^2 |psi|^2`
/// with `quad_order` nodes per panel.
pub fn box_energy_numeric(a: f64, b: f64, v0: f64, params: &Params, quad_order: usize) -> Result<f64> {
    let t = BoxTrial::new(a, b)?;
    if quad_order == 0 {
        return Err(Error::invalid("quad_order", "must be positive"));
    }
    let d = params.delta();
    let br = [a, b];
    Ok(rect_integral(&br, &br, quad_order, 2, |x, y| {
        let (ux, _, uxx) = t.mode(x);
        let (uy, uy1, _) = t.mode(y);
        let psi = ux * uy;
        let psi_y = ux * uy1;
        let l = -uxx * uy + (d + v0) * psi;
        2.0 * psi_y * psi_y + 2.0 * l * l - 2.0 * d * d * psi * psi
    }))
}

/// Roots `V1 < V2` of the energy trinomial when `lambda1 < delta^2`.
pub fn boundstate_window(params: &Params, a: f64, b: f64) -> Result<Option<(f64, f64)>> {
    let l1 = BoxTrial::new(a, b)?.lambda1();
    let d = params.delta();
    if l1 >= d * d {
        return Ok(None);
    }
    let r = (d * d - l1).sqrt();
    Ok(Some((-(l1 + d) - r, -(l1 + d) + r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trinomial_values() {
        let p = Params::new(2.0).unwrap();
        assert!((box_energy_analytic(1.0, 1.0 + PI, -3.0, &p).unwrap() + 6.0).abs() < 1e-12);
        assert!((box_energy_analytic(1.0, 1.0 + PI, 0.0, &p).unwrap() - 12.0).abs() < 1e-12);
        let (v1, v2) = boundstate_window(&p, 1.0, 1.0 + PI).unwrap().unwrap();
        let s3 = 3f64.sqrt();
        assert!((v1 + 3.0 + s3).abs() < 1e-12 && (v2 + 3.0 - s3).abs() < 1e-12);
        for v in [v1, v2] {
            assert!(box_energy_analytic(1.0, 1.0 + PI, v, &p).unwrap().abs() < 1e-11);
        }
    }

    #[test]
    fn window_absent() {
        let p = Params::new(1.0).unwrap();
        assert_eq!(boundstate_window(&p, 1.0, 1.0 + PI).unwrap(), None);
        let p = Params::new(0.5).unwrap();
        assert_eq!(boundstate_window(&p, 1.0, 2.0).unwrap(), None);
        assert!(boundstate_window(&p, 0.0, 2.0).is_err());
    }

    #[test]
    fn numeric_matches_analytic() {
        let p = Params::new(2.0).unwrap();
        let t = BoxTrial::new(1.0, 1.0 + PI).unwrap();
        assert!((t.norm_sq(24) - 1.0).abs() < 1e-13);
        for v0 in [-5.0, -3.0, 0.0, 1.5] {
            let a = box_energy_analytic(1.0, 1.0 + PI, v0, &p).unwrap();
            let n = box_energy_numeric(1.0, 1.0 + PI, v0, &p, 24).unwrap();
            assert!((a - n).abs() < 1e-10, "{a} vs {n}");
        }
    }

    #[test]
    fn wide_box_limit() {
        let p = Params::new(1.0).unwrap();
        let q = box_energy_analytic(1.0, 1e4, -0.7, &p).unwrap();
        assert!((q - (2.0 * 0.49 - 4.0 * 0.7)).abs() < 1e-6);
    }
}
