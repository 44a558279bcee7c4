use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::GaussLegendre;

const PLATEAU_LO: f64 = 1.0 / 9.0;
const PLATEAU_HI: f64 = 0.5;

/// Monotone profile `g` on `[0, 1]`: zero on `[0, t0]`, one on `[t1, 1]`.
/// Admissible when `1/9 <= t0 < t1 <= 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CutoffProfile {
    /// Degree-7 smoothstep `35s^4 - 84s^5 + 70s^6 - 20s^7`.
    Smoothstep7 { t0: f64, t1: f64 },
    /// `e^{-1/s} / (e^{-1/s} + e^{-1/(1-s)})`, smooth to all orders.
    Exponential { t0: f64, t1: f64 },
}

impl Default for CutoffProfile {
    fn default() -> Self {
        Self::reference()
    }
}

impl CutoffProfile {
    pub fn reference() -> Self {
        CutoffProfile::Smoothstep7 {
            t0: PLATEAU_LO,
            t1: PLATEAU_HI,
        }
    }

    pub fn window(&self) -> (f64, f64) {
        match *self {
            CutoffProfile::Smoothstep7 { t0, t1 } | CutoffProfile::Exponential { t0, t1 } => (t0, t1),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (t0, t1) = self.window();
        let tol = 1e-15;
        if !(t0.is_finite() && t1.is_finite() && t0 < t1 && t0 >= PLATEAU_LO - tol && t1 <= PLATEAU_HI + tol) {
            return Err(Error::invalid(
                "cutoff_profile",
                format!("transition [{t0}, {t1}] must lie within [1/9, 1/2] and be non-empty"),
            ));
        }
        Ok(())
    }

    /// `(g, g', g'')` at `t`.
    pub fn eval(&self, t: f64) -> (f64, f64, f64) {
        let (t0, t1) = self.window();
        if t <= t0 {
            return (0.0, 0.0, 0.0);
        }
        if t >= t1 {
            return (1.0, 0.0, 0.0);
        }
        let w = t1 - t0;
        let s = (t - t0) / w;
        let (g, d1, d2) = match self {
            CutoffProfile::Smoothstep7 { .. } => {
                let r = 1.0 - s;
                let s2 = s * s;
                let g = s2 * s2 * (35.0 - 84.0 * s + 70.0 * s2 - 20.0 * s2 * s);
                (g, 140.0 * (s * r).powi(3), 420.0 * (s * r).powi(2) * (1.0 - 2.0 * s))
            }
            CutoffProfile::Exponential { .. } => {
                let r = 1.0 - s;
                let z = 1.0 / r - 1.0 / s;
                let e = (-z.abs()).exp();
                let sig = if z >= 0.0 { 1.0 / (1.0 + e) } else { e / (1.0 + e) };
                let s1 = e / ((1.0 + e) * (1.0 + e));
                let z1 = 1.0 / (r * r) + 1.0 / (s * s);
                let z2 = 2.0 / r.powi(3) - 2.0 / s.powi(3);
                (sig, s1 * z1, s1 * (1.0 - 2.0 * sig) * z1 * z1 + s1 * z2)
            }
        };
        (g, d1 / w, d2 / (w * w))
    }

    /// `(int |g'|^2, int |g''|^2)` over `[0, 1]`.
    pub fn energies(&self) -> (f64, f64) {
        let (t0, t1) = self.window();
        let gl = GaussLegendre::new(32);
        let pts = gl.composite_points(t0, t1, 16);
        pts.iter().fold((0.0, 0.0), |(a, b), &(t, w)| {
            let (_, d1, d2) = self.eval(t);
            (a + w * d1 * d1, b + w * d2 * d2)
        })
    }
}

/// `g_n(x, y) = g((ln n^2 - ln r) / ln n)`: one inside radius `n`, zero
/// outside radius `n^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutoffSequence {
    pub n: u32,
    pub profile: CutoffProfile,
}

/// Value, gradient and `d²/dx²` of a cutoff at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct CutoffJet {
    pub g: f64,
    pub gx: f64,
    pub gy: f64,
    pub gxx: f64,
}

impl CutoffSequence {
    pub fn new(n: u32, profile: CutoffProfile) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("n", format!("cutoff index must be >= 2, got {n}")));
        }
        profile.validate()?;
        Ok(CutoffSequence { n, profile })
    }

    fn log_n(&self) -> f64 {
        (self.n as f64).ln()
    }

    pub fn value(&self, x: f64, y: f64) -> f64 {
        self.jet(x, y).g
    }

    pub(crate) fn jet(&self, x: f64, y: f64) -> CutoffJet {
        let r2 = x * x + y * y;
        let n = self.n as f64;
        if r2 <= n * n {
            return CutoffJet {
                g: 1.0,
                ..Default::default()
            };
        }
        if r2 >= n.powi(4) {
            return CutoffJet::default();
        }
        let ln = self.log_n();
        let t = 2.0 - 0.5 * r2.ln() / ln;
        let (g, d1, d2) = self.profile.eval(t);
        let r4 = r2 * r2;
        CutoffJet {
            g,
            gx: -d1 * x / (r2 * ln),
            gy: -d1 * y / (r2 * ln),
            gxx: d2 * x * x / (r4 * ln * ln) + d1 * (x * x - y * y) / (r4 * ln),
        }
    }

    /// Integral over the half-plane of `f(jet)`, in the coordinates
    /// `r = n^{2 - t}`, `x = r cos(phi)`, `y = r sin(phi)`.
    pub(crate) fn annulus_integral(&self, order: usize, f: impl Fn(&CutoffJet) -> f64) -> f64 {
        let gl = GaussLegendre::new(order);
        let (t0, t1) = self.profile.window();
        let ts = gl.points_on_breaks(&[0.0, t0, t1, 1.0], 8);
        let phis = gl.composite_points(0.0, PI, 4);
        let n = self.n as f64;
        let ln = self.log_n();
        ts.iter()
            .map(|&(t, wt)| {
                let r = n.powf(2.0 - t);
                let jac = r * r * ln;
                let ring: f64 = phis
                    .iter()
                    .map(|&(phi, wp)| {
                        let (s, c) = phi.sin_cos();
                        wp * f(&self.jet(r * c, r * s))
                    })
                    .sum();
                wt * jac * ring
            })
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutoffIntegrals {
    pub n: u32,
    pub ix: f64,
    pub iy: f64,
    pub ixx: f64,
    /// `int_0^1 |g'|^2`.
    pub g1: f64,
    /// `int_0^1 |g''|^2`.
    pub g2: f64,
}

impl CutoffIntegrals {
    /// `(pi/2) (1/ln n) int |g'|^2`.
    pub fn first_closed_form(&self) -> f64 {
        0.5 * PI * self.g1 / (self.n as f64).ln()
    }

    /// Larger relative deviation of `Ix`, `Iy` from the closed form.
    pub fn first_deriv_identity_rel_err(&self) -> f64 {
        let c = self.first_closed_form();
        ((self.ix - c) / c).abs().max(((self.iy - c) / c).abs())
    }

    /// `(3pi/4) int|g''|^2 / (n^2 ln^3 n) + pi int|g'|^2 / (n^2 ln n)`.
    pub fn second_deriv_bound(&self) -> f64 {
        let n = self.n as f64;
        let ln = n.ln();
        0.75 * PI * self.g2 / (n * n * ln.powi(3)) + PI * self.g1 / (n * n * ln)
    }

    pub fn second_deriv_bound_slack(&self) -> f64 {
        self.second_deriv_bound() - self.ixx
    }
}

/// Quadrature of `int |d_x g_n|^2`, `int |d_y g_n|^2`, `int |d_x² g_n|^2`
/// over the upper half-plane.
pub fn cutoff_derivative_integrals(n: u32, profile: &CutoffProfile, quad_order: usize) -> Result<CutoffIntegrals> {
    if quad_order == 0 {
        return Err(Error::invalid("quad_order", "must be positive"));
    }
    let seq = CutoffSequence::new(n, *profile)?;
    let (g1, g2) = profile.energies();
    Ok(CutoffIntegrals {
        n,
        ix: seq.annulus_integral(quad_order, |j| j.gx * j.gx),
        iy: seq.annulus_integral(quad_order, |j| j.gy * j.gy),
        ixx: seq.annulus_integral(quad_order, |j| j.gxx * j.gxx),
        g1,
        g2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profiles_have_plateaus() {
        for p in [
            CutoffProfile::reference(),
            CutoffProfile::Exponential { t0: 0.2, t1: 0.45 },
        ] {
            p.validate().unwrap();
            assert_eq!(p.eval(0.05), (0.0, 0.0, 0.0));
            assert_eq!(p.eval(0.75), (1.0, 0.0, 0.0));
            let mut prev = 0.0;
            for k in 0..=200 {
                let (g, d1, _) = p.eval(k as f64 / 200.0);
                assert!((0.0..=1.0).contains(&g) && g >= prev - 1e-15 && d1 >= 0.0);
                prev = g;
            }
        }
        assert!(CutoffProfile::Smoothstep7 { t0: 0.05, t1: 0.5 }.validate().is_err());
        assert!(CutoffProfile::Exponential { t0: 0.2, t1: 0.6 }.validate().is_err());
        assert!(CutoffProfile::Smoothstep7 { t0: 0.3, t1: 0.3 }.validate().is_err());
    }

    #[test]
    fn profile_derivatives_match_differences() {
        for p in [
            CutoffProfile::reference(),
            CutoffProfile::Exponential { t0: 1.0 / 9.0, t1: 0.5 },
        ] {
            let h = 1e-5;
            for t in [0.15, 0.3, 0.42] {
                let (g, d1, d2) = p.eval(t);
                let fd1 = (p.eval(t + h).0 - p.eval(t - h).0) / (2.0 * h);
                let fd2 = (p.eval(t + h).0 - 2.0 * g + p.eval(t - h).0) / (h * h);
                assert!((fd1 - d1).abs() < 1e-6 * (1.0 + d1.abs()));
                assert!((fd2 - d2).abs() < 1e-3 * (1.0 + d2.abs()));
            }
        }
    }

    #[test]
    fn reference_energy() {
        // int_0^1 (140 s^3 (1-s)^3)^2 ds = 19600 B(7, 7) = 700/429, over a window of width w.
        let (g1, _) = CutoffProfile::reference().energies();
        let w = 0.5 - 1.0 / 9.0;
        assert!((g1 - 700.0 / 429.0 / w).abs() < 1e-10);
    }

    #[test]
    fn sequence_regions() {
        let s = CutoffSequence::new(4, CutoffProfile::reference()).unwrap();
        assert_eq!(s.value(0.0, 3.9), 1.0);
        assert_eq!(s.value(10.0, 15.0), 0.0);
        assert!(CutoffSequence::new(1, CutoffProfile::reference()).is_err());
    }

    #[test]
    fn first_derivative_identity() {
        for n in [4, 16, 64] {
            let c = cutoff_derivative_integrals(n, &CutoffProfile::reference(), 24).unwrap();
            assert!(c.first_deriv_identity_rel_err() < 1e-10);
            assert!((c.ix / c.iy - 1.0).abs() < 1e-10);
            assert!(c.second_deriv_bound_slack() > 0.0);
        }
    }
}
