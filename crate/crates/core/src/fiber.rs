//! Fourier reduction in `x`: for `V = 0` the operator splits into the
//! half-line family `[[-i d/dy, xi^2 + delta], [xi^2 + delta, i d/dy]]`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::assembly::{assemble_column, HermitianOperator, OperatorKind};
use crate::eigensolve::{dense_eigs, DenseOptions};
use crate::error::{Error, Result};
use crate::lattice::{Grid2D, Params};

/// Plane-wave eigenvalues `+-sqrt(kappa^2 + (xi^2 + delta)^2)`.
pub fn dispersion(xi: f64, kappa: f64, params: &Params) -> (f64, f64) {
    let m = xi * xi + params.delta();
    let e = kappa.hypot(m);
    (e, -e)
}

/// Continuum edge `xi^2 + delta` of one fiber.
pub fn edge(xi: f64, params: &Params) -> f64 {
    xi * xi + params.delta()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiberSpectrum {
    pub xi: f64,
    pub edge: f64,
    /// Ascending eigenvalues of the discretised fiber.
    pub eigenvalues: Vec<f64>,
}

impl FiberSpectrum {
    pub fn min_abs(&self) -> f64 {
        self.eigenvalues.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min)
    }

    /// `max_i |lambda_i + lambda_{n-1-i}|`; zero iff the spectrum is
    /// symmetric about the origin.
    pub fn asymmetry(&self) -> f64 {
        let n = self.eigenvalues.len();
        (0..n / 2 + n % 2)
            .map(|i| (self.eigenvalues[i] + self.eigenvalues[n - 1 - i]).abs())
            .fold(0.0, f64::max)
    }
}

fn check_column(ny: usize, y_max: f64) -> Result<f64> {
    if !(y_max.is_finite() && y_max > 0.0) {
        return Err(Error::invalid("y_max", format!("must be finite and > 0, got {y_max}")));
    }
    if ny < 4 {
        return Err(Error::GridTooCoarse(format!("need ny >= 4, got {ny}")));
    }
    Ok(y_max / (ny - 1) as f64)
}

/// Discretised fiber at momentum `xi` on `[0, y_max]` with `ny` nodes.
pub fn fiber_operator(xi: f64, params: &Params, ny: usize, y_max: f64) -> Result<HermitianOperator> {
    let hy = check_column(ny, y_max)?;
    assemble_column(ny, hy, xi * xi, params.delta(), OperatorKind::FirstOrder)
}

/// Fiber with the `x` symbol given directly as `s = xi^2`.
fn fiber_with_symbol(s: f64, params: &Params, ny: usize, y_max: f64) -> Result<HermitianOperator> {
    let hy = check_column(ny, y_max)?;
    assemble_column(ny, hy, s, params.delta(), OperatorKind::FirstOrder)
}

pub fn fiber_spectrum(xi: f64, params: &Params, ny: usize, y_max: f64) -> Result<FiberSpectrum> {
    let op = fiber_operator(xi, params, ny, y_max)?;
    let rep = dense_eigs(&op, &DenseOptions::default())?;
    Ok(FiberSpectrum {
        xi,
        edge: edge(xi, params),
        eigenvalues: rep.eigenvalues(),
    })
}

/// Fiber spectra over a momentum grid, in input order.
pub fn fiber_scan(xi_grid: &[f64], params: &Params, ny: usize, y_max: f64) -> Result<Vec<FiberSpectrum>> {
    xi_grid
        .par_iter()
        .map(|&xi| fiber_spectrum(xi, params, ny, y_max))
        .collect()
}

/// `min_xi (xi^2 + delta)` over the grid.
pub fn union_edge(xi_grid: &[f64], params: &Params) -> Result<f64> {
    if xi_grid.is_empty() {
        return Err(Error::invalid("xi_grid", "empty"));
    }
    if let Some(bad) = xi_grid.iter().find(|x| !x.is_finite()) {
        return Err(Error::invalid("xi_grid", format!("non-finite momentum {bad}")));
    }
    Ok(xi_grid.iter().map(|&xi| edge(xi, params)).fold(f64::INFINITY, f64::min))
}

/// Uniform grid of `n` momenta on `[-xi_max, xi_max]`; odd `n` includes 0.
pub fn xi_grid(xi_max: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![0.0];
    }
    (0..n)
        .map(|k| -xi_max + 2.0 * xi_max * k as f64 / (n - 1) as f64)
        .collect()
}

/// Symbols `(4 / hx^2) sin^2(m pi / (2 (nx + 1)))`, `m = 1..=nx`: the
/// eigenvalues of the three-point `-d_xx` with the grid's walls. The 2D
/// operator is block diagonal in the matching sine basis, so its spectrum
/// is the union of the fibers at these symbols.
pub fn matched_symbols(grid: &Grid2D) -> Vec<f64> {
    let nx = grid.nx();
    let hx = grid.hx();
    (1..=nx)
        .map(|m| {
            let s = (m as f64 * std::f64::consts::PI / (2.0 * (nx + 1) as f64)).sin();
            4.0 * s * s / (hx * hx)
        })
        .collect()
}

/// Smallest `|lambda|` over the fibers at the grid's matched symbols,
/// with the same `y` resolution as the grid.
pub fn matched_union_min_abs(grid: &Grid2D, params: &Params) -> Result<f64> {
    let mins: Vec<f64> = matched_symbols(grid)
        .par_iter()
        .map(|&s| {
            let op = fiber_with_symbol(s, params, grid.ny(), grid.y_max())?;
            let rep = dense_eigs(&op, &DenseOptions::default())?;
            Ok(rep.eigenvalues().iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min))
        })
        .collect::<Result<_>>()?;
    Ok(mins.into_iter().fold(f64::INFINITY, f64::min))
}

/// All fiber eigenvalues at the matched symbols, sorted.
pub fn matched_union_spectrum(grid: &Grid2D, params: &Params) -> Result<Vec<f64>> {
    let parts: Vec<Vec<f64>> = matched_symbols(grid)
        .par_iter()
        .map(|&s| {
            let op = fiber_with_symbol(s, params, grid.ny(), grid.y_max())?;
            Ok(dense_eigs(&op, &DenseOptions::default())?.eigenvalues())
        })
        .collect::<Result<_>>()?;
    let mut all: Vec<f64> = parts.into_iter().flatten().collect();
    all.sort_by(f64::total_cmp);
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::assemble_t;

    fn p(d: f64) -> Params {
        Params::new(d).unwrap()
    }

    #[test]
    fn dispersion_values() {
        assert_eq!(dispersion(0.0, 0.0, &p(1.0)), (1.0, -1.0));
        let (a, b) = dispersion(1.0, 0.0, &p(1.0));
        assert!((a - 2.0).abs() < 1e-15 && (b + 2.0).abs() < 1e-15);
        let (big, _) = dispersion(0.3, 1e8, &p(1.0));
        assert!((big / 1e8 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn symbol_eigenvalues_agree() {
        // 2x2 symbol [[kappa, m], [m, -kappa]] has eigenvalues +-sqrt(kappa^2 + m^2).
        let (xi, kappa, d) = (0.7, -1.3, 0.4);
        let m = xi * xi + d;
        let tr: f64 = 0.0;
        let det = -kappa * kappa - m * m;
        let disc = (tr * tr / 4.0 - det).sqrt();
        let (a, b) = dispersion(xi, kappa, &p(d));
        assert!((a - disc).abs() < 1e-14 && (b + disc).abs() < 1e-14);
    }

    #[test]
    fn union_edge_contract() {
        assert_eq!(union_edge(&[0.0], &p(1.5)).unwrap(), 1.5);
        assert_eq!(union_edge(&[-1.0, 0.0, 1.0], &p(2.0)).unwrap(), 2.0);
        assert_eq!(union_edge(&xi_grid(3.0, 601), &p(0.7)).unwrap(), 0.7);
        assert!(union_edge(&[], &p(1.0)).is_err());
    }

    #[test]
    fn fiber_is_hermitian_and_gapped() {
        for xi in [0.0, 0.5, 1.0, 2.0] {
            let op = fiber_operator(xi, &p(1.0), 60, 12.0).unwrap();
            assert_eq!(op.matrix().hermitian_defect(), 0.0);
            assert_eq!(op.dim(), 2 * 60 - 1);
            let s = fiber_spectrum(xi, &p(1.0), 60, 12.0).unwrap();
            assert!(s.min_abs() >= s.edge - 1e-10, "xi={xi}: {} < {}", s.min_abs(), s.edge);
        }
        assert!(fiber_operator(0.0, &p(1.0), 3, 1.0).is_err());
    }

    #[test]
    fn two_dimensional_spectrum_is_union_of_matched_fibers() {
        let g = Grid2D::new(-3.0, 3.0, 4.0, 9, 8).unwrap();
        let params = p(0.8);
        let t = assemble_t(&g, &params).unwrap();
        let full = dense_eigs(&t, &DenseOptions::default()).unwrap().eigenvalues();
        let union = matched_union_spectrum(&g, &params).unwrap();
        assert_eq!(full.len(), union.len());
        for (a, b) in full.iter().zip(&union) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
    }
}
