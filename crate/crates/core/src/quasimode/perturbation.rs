use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::cutoff::{CutoffProfile, CutoffSequence};
use super::{breakpoints, rect_integral};
use crate::error::{Error, Result};
use crate::lattice::{Params, PerturbationProfile};

/// Integral of `f(w11, w12, w21, w22)` over the support of `W`; the
/// integrand must vanish wherever `W` does.
fn integrate_w(w: &PerturbationProfile, f: impl Fn([Complex64; 4]) -> f64) -> Result<f64> {
    w.validate().map_err(|r| Error::invalid("w", r))?;
    let [x0, x1, y0, y1] = w
        .support()
        .ok_or_else(|| Error::invalid("w", "perturbation must have bounded support"))?;
    if x1 <= x0 || y1 <= y0 {
        return Ok(0.0);
    }
    let (bx, by) = w.breaks();
    let xb = breakpoints(x0, x1, &bx);
    let yb = breakpoints(y0, y1, &by);
    Ok(rect_integral(&xb, &yb, 24, 4, |x, y| f(w.eval(x, y))))
}

/// `int eps^2 w11^2 + eps^2 |w12|^2 + 4 delta eps Re w12 + eps^2 |w21|^2 + eps^2 w22`,
/// with the last term taken literally.
pub fn a_eps_paper(w: &PerturbationProfile, eps: f64, params: &Params) -> Result<f64> {
    let d = params.delta();
    let e2 = eps * eps;
    integrate_w(w, |[w11, w12, w21, w22]| {
        e2 * w11.re * w11.re + e2 * w12.norm_sqr() + 4.0 * d * eps * w12.re + e2 * w21.norm_sqr() + e2 * w22.re
    })
}

/// Large-`n` limit of `||H_eps psi_n||^2 - delta^2 ||psi_n||^2` for
/// `psi_n = (g_n, g_n)`:
/// `int (delta + eps w11 + eps Re w12)^2 + eps^2 (Im w12)^2
///    + (delta + eps w22 + eps Re w21)^2 + eps^2 (Im w21)^2 - 2 delta^2`.
pub fn a_eps_derived(w: &PerturbationProfile, eps: f64, params: &Params) -> Result<f64> {
    let d = params.delta();
    integrate_w(w, |[w11, w12, w21, w22]| {
        let a = d + eps * (w11.re + w12.re);
        let b = d + eps * (w22.re + w21.re);
        a * a + (eps * w12.im).powi(2) + b * b + (eps * w21.im).powi(2) - 2.0 * d * d
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AEpsReport {
    pub eps: f64,
    pub paper: f64,
    pub derived: f64,
    /// The two forms differ by more than `1e-9` relative.
    pub divergent: bool,
}

pub fn a_eps_report(w: &PerturbationProfile, eps: f64, params: &Params) -> Result<AEpsReport> {
    let paper = a_eps_paper(w, eps, params)?;
    let derived = a_eps_derived(w, eps, params)?;
    let scale = paper.abs().max(derived.abs()).max(f64::MIN_POSITIVE);
    Ok(AEpsReport {
        eps,
        paper,
        derived,
        divergent: (paper - derived).abs() > 1e-9 * scale,
    })
}

/// `-4 delta int Re w12 / (||w11||^2 + ||w22||^2 + ||w12||^2 + ||w21||^2)`.
pub fn eps_threshold(w: &PerturbationProfile, params: &Params) -> Result<f64> {
    let re12 = integrate_w(w, |v| v[1].re)?;
    if re12 >= 0.0 {
        return Err(Error::Precondition(format!("int Re w12 = {re12} must be negative")));
    }
    let den = integrate_w(w, |v| v.iter().map(|c| c.norm_sqr()).sum())?;
    if den <= 0.0 {
        return Err(Error::Precondition("perturbation has zero norm".into()));
    }
    Ok(-4.0 * params.delta() * re12 / den)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdLimits {
    pub deltas: Vec<f64>,
    pub thresholds: Vec<f64>,
    /// Thresholds shrink towards zero with `delta` and grow without bound.
    pub consistent: bool,
}

/// Threshold at `delta in {1e-3, 1, 1e3}`.
pub fn threshold_limits(w: &PerturbationProfile) -> Result<ThresholdLimits> {
    let deltas = vec![1e-3, 1.0, 1e3];
    let thresholds = deltas
        .iter()
        .map(|&d| eps_threshold(w, &Params::new(d)?))
        .collect::<Result<Vec<_>>>()?;
    let t = &thresholds;
    let consistent = t[0] < t[1] && t[1] < t[2] && t[0] <= 1e-2 * t[1] && t[2] >= 1e2 * t[1];
    Ok(ThresholdLimits {
        deltas,
        thresholds,
        consistent,
    })
}

/// `||H_eps psi_n||^2 - delta^2 ||psi_n||^2` for the trial `(g_n, g_n)` built
/// from the cutoff sequence. The support of `W` must lie inside radius `n`.
pub fn trial_energy(
    w: &PerturbationProfile,
    eps: f64,
    params: &Params,
    n: u32,
    profile: &CutoffProfile,
    quad_order: usize,
) -> Result<f64> {
    let seq = CutoffSequence::new(n, *profile)?;
    let [x0, x1, y0, y1] = w
        .support()
        .ok_or_else(|| Error::invalid("w", "perturbation must have bounded support"))?;
    let reach = x0.abs().max(x1.abs()).hypot(y0.abs().max(y1.abs()));
    if reach >= n as f64 {
        return Err(Error::Precondition(format!(
            "support of W reaches radius {reach}, outside the plateau of g_{n}"
        )));
    }
    let d = params.delta();
    // Where W lives g_n = 1; outside it W = 0 and only derivative terms remain.
    let inner = a_eps_derived(w, eps, params)?;
    let outer = seq.annulus_integral(quad_order, |j| {
        2.0 * j.gxx * j.gxx - 4.0 * d * j.g * j.gxx + 2.0 * j.gy * j.gy
    });
    Ok(inner + outer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{ComplexProfile, Profile};

    fn unit_square(v: f64) -> Profile {
        Profile::Rect {
            x0: 0.0,
            x1: 1.0,
            y0: 0.0,
            y1: 1.0,
            value: v,
        }
    }

    #[test]
    fn zero_perturbation() {
        let p = Params::new(1.0).unwrap();
        let w = PerturbationProfile::default();
        assert_eq!(a_eps_paper(&w, 0.3, &p).unwrap(), 0.0);
        assert_eq!(a_eps_derived(&w, 0.3, &p).unwrap(), 0.0);
        assert!(eps_threshold(&w, &p).is_err());
    }

    #[test]
    fn coincidence_case() {
        let p = Params::new(1.0).unwrap();
        let w = PerturbationProfile::off_diagonal_real(unit_square(-1.0));
        let r = a_eps_report(&w, 0.1, &p).unwrap();
        assert!((r.paper + 0.38).abs() < 1e-12);
        assert!((r.paper - r.derived).abs() < 1e-12);
        assert!(!r.divergent);
        let e = eps_threshold(&w, &p).unwrap();
        assert!((e - 2.0).abs() < 1e-12);
        assert!(a_eps_paper(&w, 0.99 * e, &p).unwrap() < 0.0);
        assert!(a_eps_paper(&w, 1.01 * e, &p).unwrap() > 0.0);
        let p2 = Params::new(2.0).unwrap();
        assert!((eps_threshold(&w, &p2).unwrap() - 2.0 * e).abs() < 1e-12);
    }

    #[test]
    fn general_case_diverges() {
        let p = Params::new(1.0).unwrap();
        let w = PerturbationProfile {
            w11: unit_square(0.5),
            w12: ComplexProfile {
                re: unit_square(-1.0),
                im: unit_square(0.3),
            },
            w21: ComplexProfile {
                re: unit_square(-1.0),
                im: unit_square(-0.3),
            },
            w22: unit_square(0.5),
        };
        let r = a_eps_report(&w, 0.2, &p).unwrap();
        assert!(r.divergent);
        // (1 + 0.2(0.5 - 1))^2 * 2 + 2 * 0.04 * 0.09 - 2
        let expect = 2.0 * 0.9f64.powi(2) + 2.0 * 0.04 * 0.09 - 2.0;
        assert!((r.derived - expect).abs() < 1e-12);
    }

    #[test]
    fn positive_mean_rejected() {
        let p = Params::new(1.0).unwrap();
        let w = PerturbationProfile::off_diagonal_real(unit_square(1.0));
        assert!(matches!(eps_threshold(&w, &p), Err(Error::Precondition(_))));
        let unbounded = PerturbationProfile::off_diagonal_real(Profile::Constant { value: -1.0 });
        assert!(eps_threshold(&unbounded, &p).is_err());
    }

    #[test]
    fn limits() {
        let w = PerturbationProfile::off_diagonal_real(unit_square(-1.0));
        let l = threshold_limits(&w).unwrap();
        assert!(l.consistent);
        assert!((l.thresholds[0] - 2e-3).abs() < 1e-14);
    }

    #[test]
    fn trial_energy_approaches_limit() {
        let p = Params::new(1.0).unwrap();
        let w = PerturbationProfile::off_diagonal_real(Profile::Rect {
            x0: -0.5,
            x1: 0.5,
            y0: 0.0,
            y1: 1.0,
            value: -1.0,
        });
        let limit = a_eps_derived(&w, 1.0, &p).unwrap();
        let gaps: Vec<f64> = [8, 16, 32]
            .iter()
            .map(|&n| trial_energy(&w, 1.0, &p, n, &CutoffProfile::reference(), 24).unwrap() - limit)
            .collect();
        assert!(gaps.iter().all(|&g| g > 0.0));
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2]);
        assert!(trial_energy(&w, 1.0, &p, 1, &CutoffProfile::reference(), 24).is_err());
    }
}
