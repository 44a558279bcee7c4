use num_complex::Complex64;

use super::Grid2D;
use crate::error::{Error, Result};

/// Real scalar field sampled on a grid, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: Grid2D,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }
    pub fn values(&self) -> &[f64] {
        &self.values
    }
    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.node(i, j)]
    }
}

/// Pointwise evaluation of a closed-form function on every node.
pub fn sample(grid: &Grid2D, f: impl Fn(f64, f64) -> f64) -> Result<ScalarField> {
    let mut values = Vec::with_capacity(grid.node_count());
    for j in 0..grid.ny() {
        let y = grid.y(j);
        for i in 0..grid.nx() {
            let x = grid.x(i);
            let v = f(x, y);
            if !v.is_finite() {
                return Err(Error::invalid("sample", format!("non-finite value {v} at ({x}, {y})")));
            }
            values.push(v);
        }
    }
    Ok(ScalarField {
        grid: grid.clone(),
        values,
    })
}

/// Two complex components per node, stored component-major: all of `u1`
/// row by row, then all of `u2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField {
    grid: Grid2D,
    values: Vec<Complex64>,
}

impl SpinorField {
    pub fn zeros(grid: &Grid2D) -> Self {
        SpinorField {
            grid: grid.clone(),
            values: vec![Complex64::new(0.0, 0.0); 2 * grid.node_count()],
        }
    }

    pub fn from_values(grid: &Grid2D, values: Vec<Complex64>) -> Result<Self> {
        let expected = 2 * grid.node_count();
        if values.len() != expected {
            return Err(Error::Dimension {
                expected,
                found: values.len(),
            });
        }
        Ok(SpinorField {
            grid: grid.clone(),
            values,
        })
    }

    /// Samples `f(x, y) -> (u1, u2)` on every node.
    pub fn from_fn(grid: &Grid2D, f: impl Fn(f64, f64) -> (Complex64, Complex64)) -> Self {
        let n = grid.node_count();
        let mut values = vec![Complex64::new(0.0, 0.0); 2 * n];
        for j in 0..grid.ny() {
            for i in 0..grid.nx() {
                let (a, b) = f(grid.x(i), grid.y(j));
                let k = grid.node(i, j);
                values[k] = a;
                values[n + k] = b;
            }
        }
        SpinorField {
            grid: grid.clone(),
            values,
        }
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }
    #[inline]
    pub fn u1(&self, i: usize, j: usize) -> Complex64 {
        self.values[self.grid.node(i, j)]
    }
    #[inline]
    pub fn u2(&self, i: usize, j: usize) -> Complex64 {
        self.values[self.grid.node_count() + self.grid.node(i, j)]
    }

    /// `u1 = u2` on the `y = 0` row, up to a relative tolerance.
    pub fn is_bc_admissible(&self, rel_tol: f64) -> bool {
        let scale = self.values.iter().fold(0.0f64, |m, v| m.max(v.norm()));
        (0..self.grid.nx()).all(|i| (self.u1(i, 0) - self.u2(i, 0)).norm() <= rel_tol * scale)
    }

    pub fn norm(&self) -> f64 {
        inner_product(self, self).map(|c| c.re.sqrt()).unwrap_or(0.0)
    }
}

/// Discrete `L^2(R^2_+; C^2)` pairing, antilinear in the first slot.
pub fn inner_product(u: &SpinorField, v: &SpinorField) -> Result<Complex64> {
    if u.grid != v.grid {
        return Err(Error::Dimension {
            expected: u.values.len(),
            found: v.values.len(),
        });
    }
    let g = &u.grid;
    let n = g.node_count();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..g.ny() {
        let mut row = Complex64::new(0.0, 0.0);
        for i in 0..g.nx() {
            let k = g.node(i, j);
            row += u.values[k].conj() * v.values[k] + u.values[n + k].conj() * v.values[n + k];
        }
        acc += row * g.weight(0, j);
    }
    Ok(acc)
}
