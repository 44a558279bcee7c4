use num_complex::Complex64;

use super::vector::{dotc, norm};
use super::CsrMatrix;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Solution of a MINRES run.
#[derive(Debug, Clone)]
pub struct MinresSolution {
    pub x: Vec<Complex64>,
    pub iterations: usize,
    /// Estimated `||b - (A - sigma I) x|| / ||b||`.
    pub relative_residual: f64,
}

/// MINRES for `(A - sigma I) x = b` with Hermitian `A` (Paige-Saunders,
/// unpreconditioned).
pub fn minres(a: &CsrMatrix, sigma: f64, b: &[Complex64], tol: f64, max_iter: usize) -> Result<MinresSolution> {
    let n = a.n();
    if b.len() != n {
        return Err(Error::Dimension {
            expected: n,
            found: b.len(),
        });
    }
    let beta1 = norm(b);
    let mut x = vec![ZERO; n];
    if beta1 == 0.0 {
        return Ok(MinresSolution {
            x,
            iterations: 0,
            relative_residual: 0.0,
        });
    }
    let mut r1 = b.to_vec();
    let mut r2 = b.to_vec();
    let mut y = b.to_vec();
    let mut w = vec![ZERO; n];
    let mut w2 = vec![ZERO; n];
    let mut oldb = 0.0;
    let mut beta = beta1;
    let mut dbar = 0.0;
    let mut epsln = 0.0;
    let mut phibar = beta1;
    let mut cs = -1.0;
    let mut sn = 0.0;
    let mut history = Vec::new();

    for itn in 1..=max_iter {
        let s = 1.0 / beta;
        let v: Vec<Complex64> = y.iter().map(|z| z * s).collect();
        y = a.mul(&v);
        for (yi, vi) in y.iter_mut().zip(&v) {
            *yi -= vi * sigma;
        }
        if itn >= 2 {
            let f = beta / oldb;
            for (yi, ri) in y.iter_mut().zip(&r1) {
                *yi -= ri * f;
            }
        }
        let alfa = dotc(&v, &y).re;
        let f = alfa / beta;
        for (yi, ri) in y.iter_mut().zip(&r2) {
            *yi -= ri * f;
        }
        std::mem::swap(&mut r1, &mut r2);
        r2.clone_from(&y);
        oldb = beta;
        beta = norm(&r2);

        let oldeps = epsln;
        let delta = cs * dbar + sn * alfa;
        let gbar = sn * dbar - cs * alfa;
        epsln = sn * beta;
        dbar = -cs * beta;
        let gamma = gbar.hypot(beta).max(f64::EPSILON);
        cs = gbar / gamma;
        sn = beta / gamma;
        let phi = cs * phibar;
        phibar *= sn;

        let w1 = std::mem::replace(&mut w2, std::mem::take(&mut w));
        w = v
            .iter()
            .zip(&w1)
            .zip(&w2)
            .map(|((vi, a1), a2)| (vi - a1 * oldeps - a2 * delta) / gamma)
            .collect();
        for (xi, wi) in x.iter_mut().zip(&w) {
            *xi += wi * phi;
        }
        let rel = phibar / beta1;
        history.push(rel);
        if rel <= tol || beta == 0.0 {
            return Ok(MinresSolution {
                x,
                iterations: itn,
                relative_residual: rel,
            });
        }
    }
    Err(Error::NonConvergence {
        solver: "MINRES",
        iterations: max_iter,
        last_residual: *history.last().unwrap_or(&1.0),
        history,
    })
}
