//! Explicit trial functions and their energies, evaluated by quadrature of
//! closed forms. Nothing here touches an assembled matrix, so these values
//! serve as independent cross-checks of the discretization.

mod box_trial;
mod bump;
mod cutoff;
mod perturbation;
mod square_identity;
mod weyl;

pub use box_trial::{boundstate_window, box_energy_analytic, box_energy_numeric, BoxTrial};
pub use bump::{Bump, BumpJet, BumpNorms};
pub use cutoff::{cutoff_derivative_integrals, CutoffIntegrals, CutoffProfile, CutoffSequence};
pub use perturbation::{
    a_eps_derived, a_eps_paper, a_eps_report, eps_threshold, threshold_limits, trial_energy, AEpsReport,
    ThresholdLimits,
};
pub use square_identity::{square_identity, SquareIdentity, SquareTrial};
pub use weyl::{weyl_residual, weyl_series, Branch, WeylResidual, WeylRow, WeylSeries, WeylTrial};

use crate::lattice::GaussLegendre;

/// Integral of `f` over the disk of `radius` about `(cx, cy)` in polar
/// coordinates: composite Gauss-Legendre in the radius, trapezoid in the
/// angle (spectrally accurate for smooth periodic integrands).
pub(crate) fn disk_integral(cx: f64, cy: f64, radius: f64, f: impl Fn(f64, f64) -> f64) -> f64 {
    const ANGLES: usize = 64;
    let gl = GaussLegendre::new(48);
    let radial = gl.composite_points(0.0, radius, 6);
    let dphi = std::f64::consts::TAU / ANGLES as f64;
    let mut total = 0.0;
    for a in 0..ANGLES {
        let (s, c) = (a as f64 * dphi).sin_cos();
        let ring: f64 = radial.iter().map(|&(r, w)| w * r * f(cx + r * c, cy + r * s)).sum();
        total += ring;
    }
    total * dphi
}

/// Tensor-product composite Gauss-Legendre rule on a rectangle with
/// interior breakpoints honoured in both directions.
pub(crate) fn rect_integral(
    x_breaks: &[f64],
    y_breaks: &[f64],
    order: usize,
    sub: usize,
    f: impl Fn(f64, f64) -> f64,
) -> f64 {
    let gl = GaussLegendre::new(order);
    let xs = gl.points_on_breaks(x_breaks, sub);
    let ys = gl.points_on_breaks(y_breaks, sub);
    ys.iter()
        .map(|&(y, wy)| wy * xs.iter().map(|&(x, wx)| wx * f(x, y)).sum::<f64>())
        .sum()
}

/// Sorted, deduplicated breakpoints of `[lo, hi]` with `extra` points
/// falling strictly inside added.
pub(crate) fn breakpoints(lo: f64, hi: f64, extra: &[f64]) -> Vec<f64> {
    let mut b = vec![lo, hi];
    b.extend(extra.iter().copied().filter(|&v| v > lo && v < hi));
    b.sort_by(f64::total_cmp);
    b.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * (1.0 + a.abs()));
    b
}
