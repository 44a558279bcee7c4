use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::vector::{norm, random_vector};
use super::CsrMatrix;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Sylvester inertia of a Hermitian matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
}

/// `P A P^T = L D L^H` for a Hermitian band matrix, without pivoting.
/// `L` is unit lower triangular, `D` real diagonal.
#[derive(Debug, Clone)]
pub struct BandLdl {
    n: usize,
    p: usize,
    /// Row `i` holds `L[i][i-p..i]` at `i*p .. (i+1)*p`.
    l: Vec<Complex64>,
    d: Vec<f64>,
    /// `perm[new] = old`
    perm: Option<Vec<usize>>,
    perturbed: usize,
}

impl BandLdl {
    /// Factors `a`, optionally after the symmetric permutation `perm`.
    /// Pivots smaller than `1e-14 * max|a|` are replaced by a signed floor
    /// and counted in [`BandLdl::perturbed_pivots`].
    pub fn factor(a: &CsrMatrix, perm: Option<Vec<usize>>) -> Result<Self> {
        let n = a.n();
        let b = match &perm {
            Some(p) => {
                if p.len() != n {
                    return Err(Error::Dimension {
                        expected: n,
                        found: p.len(),
                    });
                }
                a.permuted(p)
            }
            None => a.clone(),
        };
        let p = b.half_bandwidth();
        let mut l = vec![ZERO; n * p];
        let mut d = vec![0.0; n];
        for r in 0..n {
            let (cols, vals) = b.row(r);
            for (&c, &v) in cols.iter().zip(vals) {
                if c == r {
                    d[r] = v.re;
                } else if c < r {
                    l[r * p + (c + p - r)] = v;
                }
            }
        }
        let floor = 1e-14 * b.max_abs().max(f64::MIN_POSITIVE);
        let mut perturbed = 0;
        let mut w = vec![ZERO; p];
        for i in 0..n {
            let lo = i.saturating_sub(p);
            for j in lo..i {
                let klo = lo.max(j.saturating_sub(p));
                let mut s = l[i * p + (j + p - i)];
                for k in klo..j {
                    s -= w[k + p - i] * l[j * p + (k + p - j)].conj();
                }
                w[j + p - i] = s;
                l[i * p + (j + p - i)] = s / d[j];
            }
            let mut di = d[i];
            for k in lo..i {
                di -= (w[k + p - i] * l[i * p + (k + p - i)].conj()).re;
            }
            if !di.is_finite() {
                return Err(Error::Breakdown {
                    solver: "band LDL^H",
                    reason: format!("non-finite pivot at row {i}"),
                });
            }
            if di.abs() < floor {
                di = if di < 0.0 { -floor } else { floor };
                perturbed += 1;
            }
            d[i] = di;
        }
        Ok(BandLdl {
            n,
            p,
            l,
            d,
            perm,
            perturbed,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn half_bandwidth(&self) -> usize {
        self.p
    }

    pub fn perturbed_pivots(&self) -> usize {
        self.perturbed
    }

    pub fn pivots(&self) -> &[f64] {
        &self.d
    }

    pub fn inertia(&self) -> Inertia {
        let negative = self.d.iter().filter(|&&x| x < 0.0).count();
        let zero = self.d.iter().filter(|&&x| x == 0.0).count();
        Inertia {
            negative,
            zero,
            positive: self.n - negative - zero,
        }
    }

    pub fn solve(&self, rhs: &[Complex64]) -> Vec<Complex64> {
        let (n, p) = (self.n, self.p);
        let mut x: Vec<Complex64> = match &self.perm {
            Some(perm) => perm.iter().map(|&o| rhs[o]).collect(),
            None => rhs.to_vec(),
        };
        for i in 0..n {
            let lo = i.saturating_sub(p);
            let row = &self.l[i * p..(i + 1) * p];
            let mut s = x[i];
            for k in lo..i {
                s -= row[k + p - i] * x[k];
            }
            x[i] = s;
        }
        for (xi, di) in x.iter_mut().zip(&self.d) {
            *xi /= *di;
        }
        for i in (0..n).rev() {
            let xi = x[i];
            let lo = i.saturating_sub(p);
            let row = &self.l[i * p..(i + 1) * p];
            for k in lo..i {
                x[k] -= row[k + p - i].conj() * xi;
            }
        }
        match &self.perm {
            Some(perm) => {
                let mut out = vec![ZERO; n];
                for (new, &old) in perm.iter().enumerate() {
                    out[old] = x[new];
                }
                out
            }
            None => x,
        }
    }

    /// Solve followed by up to `steps` rounds of iterative refinement
    /// against `a`. Returns the solution and its relative residual.
    pub fn solve_refined(&self, a: &CsrMatrix, rhs: &[Complex64], steps: usize) -> (Vec<Complex64>, f64) {
        let bn = norm(rhs).max(f64::MIN_POSITIVE);
        let mut x = self.solve(rhs);
        let mut r = residual(a, &x, rhs);
        let mut rel = norm(&r) / bn;
        for _ in 0..steps {
            if rel < 1e-13 {
                break;
            }
            let dx = self.solve(&r);
            let trial: Vec<Complex64> = x.iter().zip(&dx).map(|(a, b)| a + b).collect();
            let r2 = residual(a, &trial, rhs);
            let rel2 = norm(&r2) / bn;
            if rel2 >= rel {
                break;
            }
            x = trial;
            r = r2;
            rel = rel2;
        }
        (x, rel)
    }

    /// Normwise backward error of a refined solve with a seeded random
    /// right-hand side.
    pub fn backward_error(&self, a: &CsrMatrix, seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_vector(self.n, &mut rng);
        let (x, _) = self.solve_refined(a, &b, 2);
        let r = residual(a, &x, &b);
        norm(&r) / (a.norm_inf() * norm(&x) + norm(&b))
    }
}

fn residual(a: &CsrMatrix, x: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let ax = a.mul(x);
    b.iter().zip(ax).map(|(bi, ai)| bi - ai).collect()
}
