use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{disk_integral, Bump};
use crate::eigensolve::slope;
use crate::error::{Error, Result};
use crate::lattice::Params;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `(u, u)`, approximating `+delta + k^2`.
    Plus,
    /// `(u, -u)`, approximating `-delta - k^2`.
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// `psi_n = (u_n, +-u_n)` with `u_n = phi_n(x, y) e^{ikx}` and `phi_n` the
/// dilated bump.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeylTrial {
    pub n: u32,
    pub k: f64,
    pub branch: Branch,
    pub bump: Bump,
}

impl WeylTrial {
    /// Trial for the spectral point `mu`, which must lie outside the gap.
    pub fn for_mu(n: u32, mu: f64, params: &Params) -> Result<Self> {
        let delta = params.delta();
        if !mu.is_finite() || mu.abs() < delta {
            return Err(Error::invalid(
                "mu",
                format!("{mu} lies inside the gap (-{delta}, {delta})"),
            ));
        }
        if n == 0 {
            return Err(Error::invalid("n", "scaling index must be positive"));
        }
        Ok(WeylTrial {
            n,
            k: (mu.abs() - delta).sqrt(),
            branch: if mu > 0.0 { Branch::Plus } else { Branch::Minus },
            bump: Bump::reference(),
        })
    }

    pub fn mu(&self, params: &Params) -> f64 {
        self.branch.sign() * (params.delta() + self.k * self.k)
    }

    /// `||psi_n||^2` by quadrature.
    pub fn norm_sq(&self) -> f64 {
        let n = self.n as f64;
        2.0 * disk_integral(0.0, n * self.bump.center_y(), n * self.bump.radius(), |x, y| {
            self.bump.scaled_jet(n, x, y).v.powi(2)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeylResidual {
    /// `||T psi_n - mu psi_n||`.
    pub residual: f64,
    /// Square root of `2 (||phi_y||^2 + 4k^2 ||phi_x||^2) / n^2 + 2 ||phi_xx||^2 / n^4`.
    pub bound_rhs: f64,
}

pub fn weyl_residual(trial: &WeylTrial, params: &Params) -> Result<WeylResidual> {
    if trial.n == 0 || !trial.k.is_finite() || trial.k < 0.0 {
        return Err(Error::invalid("trial", "need n >= 1 and finite k >= 0"));
    }
    let delta = params.delta();
    let n = trial.n as f64;
    let k = trial.k;
    let s = trial.branch.sign();
    let mu = trial.mu(params);
    let i = Complex64::i();
    let b = &trial.bump;
    // The common factor e^{ikx} has modulus one and drops out of |.|^2.
    let integrand = |x: f64, y: f64| {
        let j = b.scaled_jet(n, x, y);
        let u = Complex64::from(j.v);
        let uy = Complex64::from(j.dy);
        let uxx = Complex64::new(j.dxx - k * k * j.v, 2.0 * k * j.dx);
        let lu = -uxx + delta * u;
        let r1 = -i * uy + s * lu - mu * u;
        let r2 = lu + s * i * uy - mu * s * u;
        r1.norm_sqr() + r2.norm_sqr()
    };
    let res_sq = disk_integral(0.0, n * b.center_y(), n * b.radius(), integrand);
    let nm = b.norms();
    let bound = 2.0 * (nm.dy + 4.0 * k * k * nm.dx) / (n * n) + 2.0 * nm.dxx / n.powi(4);
    Ok(WeylResidual {
        residual: res_sq.max(0.0).sqrt(),
        bound_rhs: bound.sqrt(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeylRow {
    pub n: u32,
    pub k: f64,
    pub mu: f64,
    pub branch: Branch,
    pub residual: f64,
    pub bound_rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeylSeries {
    pub mu: f64,
    pub rows: Vec<WeylRow>,
    /// Least-squares slope of `ln residual` against `ln n`.
    pub slope: f64,
}

impl WeylSeries {
    pub fn within_bound(&self, rel_tol: f64) -> bool {
        self.rows.iter().all(|r| r.residual <= r.bound_rhs * (1.0 + rel_tol))
    }
}

/// Residual table for each `mu` over the dilation ladder `ns`.
pub fn weyl_series(params: &Params, mus: &[f64], ns: &[u32]) -> Result<Vec<WeylSeries>> {
    if ns.len() < 2 {
        return Err(Error::invalid("ns", "need at least two dilation indices"));
    }
    mus.par_iter()
        .map(|&mu| {
            let rows = ns
                .iter()
                .map(|&n| {
                    let t = WeylTrial::for_mu(n, mu, params)?;
                    let r = weyl_residual(&t, params)?;
                    Ok(WeylRow {
                        n,
                        k: t.k,
                        mu,
                        branch: t.branch,
                        residual: r.residual,
                        bound_rhs: r.bound_rhs,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let pts: Vec<(f64, f64)> = rows.iter().map(|r| ((r.n as f64).ln(), r.residual.ln())).collect();
            Ok(WeylSeries {
                mu,
                slope: slope(&pts),
                rows,
            })
        })
        .collect()
}
