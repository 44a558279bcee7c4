use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::vector::{combine, dotc, fix_phase, norm, orthonormalize_against, random_vector};
use super::{hermitian_eig, BandLdl, CsrMatrix, DenseMatrix, EigenPair};
use crate::error::{Error, Result};

/// Preconditioner for [`lobpcg`]; approximates `A^{-1}`.
pub enum Preconditioner {
    None,
    Jacobi(Vec<f64>),
    Factored(BandLdl),
}

impl Preconditioner {
    pub fn jacobi(a: &CsrMatrix) -> Self {
        Preconditioner::Jacobi(
            a.diagonal()
                .iter()
                .map(|d| if d.re.abs() > 0.0 { 1.0 / d.re } else { 1.0 })
                .collect(),
        )
    }

    pub fn apply(&self, r: &[Complex64]) -> Vec<Complex64> {
        match self {
            Preconditioner::None => r.to_vec(),
            Preconditioner::Jacobi(inv) => r.iter().zip(inv).map(|(x, d)| x * d).collect(),
            Preconditioner::Factored(f) => f.solve(r),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LobpcgOptions {
    pub block: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for LobpcgOptions {
    fn default() -> Self {
        LobpcgOptions {
            block: 4,
            tol: 1e-8,
            max_iter: 500,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LobpcgOutcome {
    /// The `k` smallest pairs, ascending.
    pub pairs: Vec<EigenPair>,
    pub iterations: usize,
}

/// Smallest `k` eigenpairs of Hermitian positive semidefinite `a` by the
/// locally optimal block preconditioned conjugate gradient method.
pub fn lobpcg(a: &CsrMatrix, k: usize, precond: &Preconditioner, opts: &LobpcgOptions) -> Result<LobpcgOutcome> {
    let n = a.n();
    if k == 0 || k > n {
        return Err(Error::invalid("k", format!("need 1 <= k <= {n}, got {k}")));
    }
    let bs = opts.block.max(k).min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut x: Vec<Vec<Complex64>> = Vec::with_capacity(bs);
    while x.len() < bs {
        let mut v = random_vector(n, &mut rng);
        if orthonormalize_against(&x, &mut v, 1e-8) {
            x.push(v);
        }
    }
    let mut p: Vec<Vec<Complex64>> = Vec::new();
    let (mut x, mut ax, mut theta) = rayleigh_ritz(a, &x, bs)?;
    let mut history = Vec::new();

    for iter in 1..=opts.max_iter {
        let residuals: Vec<Vec<Complex64>> = x
            .iter()
            .zip(&ax)
            .zip(&theta)
            .map(|((xi, axi), t)| axi.iter().zip(xi).map(|(p, q)| p - q * t).collect())
            .collect();
        let norms: Vec<f64> = residuals.iter().map(|r| norm(r)).collect();
        let worst = norms[..k].iter().copied().fold(0.0, f64::max);
        history.push(worst);
        if worst <= opts.tol {
            let pairs = x
                .into_iter()
                .zip(theta)
                .zip(norms)
                .take(k)
                .map(|((mut v, value), residual)| {
                    fix_phase(&mut v);
                    EigenPair {
                        value,
                        vector: v,
                        residual,
                    }
                })
                .collect();
            return Ok(LobpcgOutcome {
                pairs,
                iterations: iter,
            });
        }

        let mut basis = x.clone();
        for (r, nr) in residuals.iter().zip(&norms) {
            if *nr <= opts.tol * 1e-2 {
                continue;
            }
            let mut wv = precond.apply(r);
            if orthonormalize_against(&basis, &mut wv, 1e-10) {
                basis.push(wv);
            }
        }
        for pv in &p {
            let mut pv = pv.clone();
            if orthonormalize_against(&basis, &mut pv, 1e-10) {
                basis.push(pv);
            }
        }
        let (s_theta, coeffs, s_ax) = project(a, &basis, bs)?;
        let new_x: Vec<Vec<Complex64>> = coeffs.iter().map(|c| combine(&basis, c, n)).collect();
        p = coeffs
            .iter()
            .map(|c| {
                let mut tail = c.clone();
                tail[..bs].iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
                combine(&basis, &tail, n)
            })
            .collect();
        x = new_x;
        ax = s_ax;
        theta = s_theta;
    }
    Err(Error::NonConvergence {
        solver: "LOBPCG",
        iterations: opts.max_iter,
        last_residual: *history.last().unwrap_or(&f64::INFINITY),
        history,
    })
}

type Ritz = (Vec<Vec<Complex64>>, Vec<Vec<Complex64>>, Vec<f64>);

fn rayleigh_ritz(a: &CsrMatrix, basis: &[Vec<Complex64>], bs: usize) -> Result<Ritz> {
    let (theta, coeffs, ax) = project(a, basis, bs)?;
    let n = a.n();
    let x = coeffs.iter().map(|c| combine(basis, c, n)).collect();
    Ok((x, ax, theta))
}

/// Rayleigh-Ritz on an orthonormal basis; returns the lowest `bs` Ritz
/// values, their coefficient vectors and `A` times the Ritz vectors.
fn project(
    a: &CsrMatrix,
    basis: &[Vec<Complex64>],
    bs: usize,
) -> Result<(Vec<f64>, Vec<Vec<Complex64>>, Vec<Vec<Complex64>>)> {
    let m = basis.len();
    let as_: Vec<Vec<Complex64>> = basis.iter().map(|b| a.mul(b)).collect();
    let mut g = DenseMatrix::zeros(m);
    for r in 0..m {
        for c in r..m {
            let z = dotc(&basis[r], &as_[c]);
            g[(r, c)] = z;
            g[(c, r)] = z.conj();
        }
    }
    let eig = hermitian_eig(&g, true)?;
    let vecs = eig.vectors.expect("requested vectors");
    let take = bs.min(m);
    let n = a.n();
    let ax = vecs[..take].iter().map(|c| combine(&as_, c, n)).collect();
    Ok((eig.values[..take].to_vec(), vecs[..take].to_vec(), ax))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn laplacian(n: usize) -> CsrMatrix {
        let mut t = Vec::new();
        for r in 0..n {
            t.push((r, r, c(2.0, 0.0)));
            if r + 1 < n {
                t.push((r, r + 1, c(-1.0, 0.0)));
                t.push((r + 1, r, c(-1.0, 0.0)));
            }
        }
        CsrMatrix::from_triplets(n, t)
    }

    #[test]
    fn smallest_laplacian_modes() {
        let n = 200;
        let a = laplacian(n);
        let exact = |m: usize| 4.0 * (m as f64 * std::f64::consts::PI / (2.0 * (n + 1) as f64)).sin().powi(2);
        for pre in [
            Preconditioner::Factored(BandLdl::factor(&a, None).unwrap()),
            Preconditioner::jacobi(&a),
        ] {
            let opts = LobpcgOptions {
                tol: 1e-10,
                max_iter: 3000,
                ..Default::default()
            };
            let out = lobpcg(&a, 3, &pre, &opts).unwrap();
            for (m, p) in out.pairs.iter().enumerate() {
                assert!(
                    (p.value - exact(m + 1)).abs() < 1e-12,
                    "{} vs {}",
                    p.value,
                    exact(m + 1)
                );
            }
        }
    }

    #[test]
    fn rejects_bad_k() {
        let a = laplacian(5);
        assert!(lobpcg(&a, 0, &Preconditioner::None, &LobpcgOptions::default()).is_err());
        assert!(lobpcg(&a, 6, &Preconditioner::None, &LobpcgOptions::default()).is_err());
    }

    #[test]
    fn reports_history_on_failure() {
        let a = laplacian(400);
        let opts = LobpcgOptions {
            max_iter: 3,
            tol: 1e-14,
            ..Default::default()
        };
        match lobpcg(&a, 1, &Preconditioner::None, &opts) {
            Err(Error::NonConvergence { history, .. }) => assert_eq!(history.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
    }
}
