use crate::error::{Error, Result};

/// Composite Newton-Cotes rule on uniform samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureOrder {
    /// Trapezoid, error `O(h^2)`.
    Second,
    /// Simpson (with a 3/8 panel when the interval count is odd), error `O(h^4)`.
    Fourth,
}

impl QuadratureOrder {
    pub fn order(self) -> u32 {
        match self {
            QuadratureOrder::Second => 2,
            QuadratureOrder::Fourth => 4,
        }
    }
}

/// Integral over `[0, 1]` of a function given by uniform samples including
/// both endpoints.
pub fn quadrature_1d(samples: &[f64], order: QuadratureOrder) -> Result<f64> {
    quadrature_uniform(samples, 0.0, 1.0, order)
}

pub(crate) fn quadrature_uniform(samples: &[f64], a: f64, b: f64, order: QuadratureOrder) -> Result<f64> {
    let n = samples.len();
    if n < 4 {
        return Err(Error::invalid("samples", format!("need at least 4 samples, got {n}")));
    }
    let h = (b - a) / (n - 1) as f64;
    let f = samples;
    let sum = match order {
        QuadratureOrder::Second => {
            let inner: f64 = f[1..n - 1].iter().sum();
            h * (0.5 * (f[0] + f[n - 1]) + inner)
        }
        QuadratureOrder::Fourth => {
            let intervals = n - 1;
            // Simpson on an even number of intervals; a trailing 3/8 panel
            // absorbs an odd count.
            let simpson_end = if intervals.is_multiple_of(2) {
                intervals
            } else {
                intervals - 3
            };
            let mut s = 0.0;
            let mut k = 0;
            while k < simpson_end {
                s += h / 3.0 * (f[k] + 4.0 * f[k + 1] + f[k + 2]);
                k += 2;
            }
            if simpson_end < intervals {
                let k = simpson_end;
                s += 3.0 * h / 8.0 * (f[k] + 3.0 * f[k + 1] + 3.0 * f[k + 2] + f[k + 3]);
            }
            s
        }
    };
    Ok(sum)
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess, then Newton on P_n.
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, z);
                dp = d;
                let dz = p / d;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, z);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&t, &w)| (mid + half * t, half * w))
    }

    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }

    /// Composite rule over the panels delimited by sorted `breaks`.
    pub fn integrate_panels(&self, breaks: &[f64], f: impl Fn(f64) -> f64) -> f64 {
        breaks.windows(2).map(|p| self.integrate(p[0], p[1], &f)).sum()
    }

    /// Quadrature points of a composite rule: `panels` equal panels on `[a, b]`.
    pub fn composite_points(&self, a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
        let h = (b - a) / panels as f64;
        (0..panels)
            .flat_map(|p| {
                let lo = a + p as f64 * h;
                self.mapped(lo, lo + h).collect::<Vec<_>>()
            })
            .collect()
    }

    /// Composite points over arbitrary sorted breakpoints, each panel split
    /// into `sub` equal pieces.
    pub fn points_on_breaks(&self, breaks: &[f64], sub: usize) -> Vec<(f64, f64)> {
        breaks
            .windows(2)
            .filter(|p| p[1] > p[0])
            .flat_map(|p| self.composite_points(p[0], p[1], sub))
            .collect()
    }
}

fn legendre(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}
