use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform lattice on `[x_min, x_max] x [0, y_max]`.
///
/// Node `(i, j)` sits at `(x_min + i*hx, j*hy)`; row `j = 0` is the
/// physical boundary `y = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid2D {
    x_min: f64,
    x_max: f64,
    y_max: f64,
    nx: usize,
    ny: usize,
}

impl Grid2D {
    pub const MIN_NODES: usize = 4;

    pub fn new(x_min: f64, x_max: f64, y_max: f64, nx: usize, ny: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::invalid(
                "grid.x_min/x_max",
                format!("need x_min < x_max, got [{x_min}, {x_max}]"),
            ));
        }
        if !(y_max.is_finite() && y_max > 0.0) {
            return Err(Error::invalid("grid.y_max", format!("must be > 0, got {y_max}")));
        }
        if nx < Self::MIN_NODES {
            return Err(Error::invalid(
                "grid.nx",
                format!("need at least {} nodes, got {nx}", Self::MIN_NODES),
            ));
        }
        if ny < Self::MIN_NODES {
            return Err(Error::invalid(
                "grid.ny",
                format!("need at least {} nodes, got {ny}", Self::MIN_NODES),
            ));
        }
        Ok(Grid2D {
            x_min,
            x_max,
            y_max,
            nx,
            ny,
        })
    }

    #[inline]
    pub fn x_min(&self) -> f64 {
        self.x_min
    }
    #[inline]
    pub fn x_max(&self) -> f64 {
        self.x_max
    }
    #[inline]
    pub fn y_max(&self) -> f64 {
        self.y_max
    }
    #[inline]
    pub fn nx(&self) -> usize {
        self.nx
    }
    #[inline]
    pub fn ny(&self) -> usize {
        self.ny
    }
    #[inline]
    pub fn hx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }
    #[inline]
    pub fn hy(&self) -> f64 {
        self.y_max / (self.ny - 1) as f64
    }
    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.hx()
    }
    #[inline]
    pub fn y(&self, j: usize) -> f64 {
        j as f64 * self.hy()
    }
    #[inline]
    pub fn node_count(&self) -> usize {
        self.nx * self.ny
    }
    /// Row-major node index (`j` outer, `i` inner).
    #[inline]
    pub fn node(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    /// Quadrature weight of node `(i, j)`: `hx*hy`, halved on the `y = 0` row.
    ///
    /// The halving makes the weights the norm of the summation-by-parts
    /// first-derivative operator in `y`; the `x` direction and the far `y`
    /// row are interior to the zero-padded walls and take the full weight.
    #[inline]
    pub fn weight(&self, _i: usize, j: usize) -> f64 {
        let w = self.hx() * self.hy();
        if j == 0 {
            0.5 * w
        } else {
            w
        }
    }

    /// Nearest node to a point, clamped to the grid.
    pub fn nearest(&self, x: f64, y: f64) -> (usize, usize) {
        let fi = ((x - self.x_min) / self.hx()).round().clamp(0.0, (self.nx - 1) as f64);
        let fj = (y / self.hy()).round().clamp(0.0, (self.ny - 1) as f64);
        (fi as usize, fj as usize)
    }

    pub fn contains_rect(&self, x0: f64, x1: f64, y0: f64, y1: f64) -> bool {
        x0 >= self.x_min && x1 <= self.x_max && y0 >= 0.0 && y1 <= self.y_max
    }

    /// Same grid refined or coarsened to new node counts.
    pub fn with_nodes(&self, nx: usize, ny: usize) -> Result<Self> {
        Grid2D::new(self.x_min, self.x_max, self.y_max, nx, ny)
    }
}
