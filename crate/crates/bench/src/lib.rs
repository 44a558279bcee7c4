//! Fixtures shared by the kernel benchmarks.

use semidirac::assembly::{assemble_h, assemble_t};
use semidirac::{Complex64, Grid2D, HermitianOperator, Params, PotentialSpec};

/// `[-L, L] x [0, L]` with `L = 10` and `nx = 2 ny - 1` nodes.
pub fn grid(ny: usize) -> Grid2D {
    Grid2D::new(-10.0, 10.0, 10.0, 2 * ny - 1, ny).expect("benchmark grid")
}

pub fn free(ny: usize) -> HermitianOperator {
    assemble_t(&grid(ny), &Params::new(1.0).unwrap()).expect("free operator")
}

/// Attractive box `[1, 4]^2` of depth 3 at `delta = 2`.
pub fn with_box(ny: usize) -> HermitianOperator {
    let g = grid(ny);
    let v = PotentialSpec::box_xy(&g, 1.0, 4.0, -3.0).expect("box");
    assemble_h(&g, &Params::new(2.0).unwrap(), &v).expect("box operator")
}

/// Deterministic unit-scale test vector.
pub fn probe(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::new((k as f64 * 0.37).sin(), (k as f64 * 0.11).cos()))
        .collect()
}
