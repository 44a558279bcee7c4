use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::vector::{combine, dotc, fix_phase, norm, orthonormalize_against, random_vector};
use super::{hermitian_eig, minres, BandLdl, CsrMatrix, DenseMatrix};
use crate::error::{Error, Result};

/// Application of `(A - sigma I)^{-1}`.
pub trait ShiftInvert: Sync {
    fn sigma(&self) -> f64;
    fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>>;
}

/// Direct shift-invert through a band `LDL^H` factorization of `A - sigma I`.
pub struct FactoredShift<'a> {
    shifted: CsrMatrix,
    ldl: &'a BandLdl,
    sigma: f64,
}

impl<'a> FactoredShift<'a> {
    pub fn new(a: &CsrMatrix, sigma: f64, ldl: &'a BandLdl) -> Self {
        FactoredShift {
            shifted: a.shifted(sigma),
            ldl,
            sigma,
        }
    }
}

impl ShiftInvert for FactoredShift<'_> {
    fn sigma(&self) -> f64 {
        self.sigma
    }

    fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        Ok(self.ldl.solve_refined(&self.shifted, x, 1).0)
    }
}

/// Matrix-free shift-invert through MINRES inner solves.
pub struct MinresShift<'a> {
    a: &'a CsrMatrix,
    sigma: f64,
    tol: f64,
    max_iter: usize,
}

impl<'a> MinresShift<'a> {
    pub fn new(a: &'a CsrMatrix, sigma: f64, tol: f64, max_iter: usize) -> Self {
        MinresShift {
            a,
            sigma,
            tol,
            max_iter,
        }
    }
}

impl ShiftInvert for MinresShift<'_> {
    fn sigma(&self) -> f64 {
        self.sigma
    }

    fn apply(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        minres(self.a, self.sigma, x, self.tol, self.max_iter).map(|s| s.x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KrylovOptions {
    pub block: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub max_basis: usize,
    pub seed: u64,
}

impl Default for KrylovOptions {
    fn default() -> Self {
        KrylovOptions {
            block: 4,
            tol: 1e-9,
            max_iter: 300,
            max_basis: 64,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<Complex64>,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct KrylovOutcome {
    /// Ascending by value.
    pub pairs: Vec<EigenPair>,
    pub iterations: usize,
    pub solves: usize,
}

/// Eigenpairs of Hermitian `a` in `[lo, hi]` closest to the shift, by
/// block Rayleigh-Ritz on the Krylov space of `(A - sigma I)^{-1}` with
/// full reorthogonalisation and thick restarts.
///
/// With `known_count = Some(c)` the run stops once `min(k, c)` pairs have
/// converged. Otherwise it stops at `k` converged pairs, or when every
/// in-interval Ritz pair has converged and their number has been stable
/// for three expansions.
pub fn shift_invert_eigs(
    a: &CsrMatrix,
    op: &dyn ShiftInvert,
    lo: f64,
    hi: f64,
    k: usize,
    known_count: Option<usize>,
    opts: &KrylovOptions,
) -> Result<KrylovOutcome> {
    let n = a.n();
    let target = known_count.map_or(k, |c| c.min(k)).min(n);
    if target == 0 {
        return Ok(KrylovOutcome {
            pairs: vec![],
            iterations: 0,
            solves: 0,
        });
    }
    let sigma = op.sigma();
    let block = opts.block.max(1).min(n);
    let max_basis = opts.max_basis.max(target + 2 * block).min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let mut v: Vec<Vec<Complex64>> = Vec::new();
    let mut w: Vec<Vec<Complex64>> = Vec::new();
    let mut h = DenseMatrix::zeros(0);
    let mut solves = 0;
    let mut history = Vec::new();
    let mut stable_rounds = 0;
    let mut last_wanted = usize::MAX;

    let mut incoming: Vec<Vec<Complex64>> = Vec::new();
    while incoming.len() < block {
        let mut x = random_vector(n, &mut rng);
        let mut all = v.clone();
        all.extend(incoming.iter().cloned());
        if orthonormalize_against(&all, &mut x, 1e-8) {
            incoming.push(x);
        }
    }

    for iter in 1..=opts.max_iter {
        for x in incoming.drain(..) {
            let y = op.apply(&x)?;
            solves += 1;
            v.push(x);
            w.push(y);
        }
        let m = v.len();
        h = grow_projection(&h, &v, &w);

        let eig = hermitian_eig(&h, true)?;
        let ys = eig.vectors.expect("requested vectors");
        let mut order: Vec<usize> = (0..m).filter(|&i| eig.values[i] != 0.0).collect();
        order.sort_by(|&i, &j| eig.values[j].abs().total_cmp(&eig.values[i].abs()));

        let wanted: Vec<usize> = order
            .iter()
            .copied()
            .filter(|&i| (lo..=hi).contains(&(sigma + 1.0 / eig.values[i])))
            .collect();
        let mut converged = Vec::new();
        let mut unconverged = Vec::new();
        let mut worst = 0.0f64;
        for &i in wanted.iter().take(target) {
            let lambda = sigma + 1.0 / eig.values[i];
            let mut x = combine(&v, &ys[i], n);
            let nx = norm(&x);
            x.iter_mut().for_each(|z| *z /= nx);
            let res = residual(a, &x, lambda);
            if res <= opts.tol {
                converged.push(EigenPair {
                    value: lambda,
                    vector: x,
                    residual: res,
                });
            } else {
                worst = worst.max(res);
                unconverged.push(i);
            }
        }
        history.push(worst);

        let found = converged.len();
        if unconverged.is_empty() && wanted.len() == last_wanted {
            stable_rounds += 1;
        } else {
            stable_rounds = 0;
        }
        last_wanted = wanted.len();
        let done = found >= target || (known_count.is_none() && unconverged.is_empty() && stable_rounds >= 3);
        if done || m >= n {
            if found < target && known_count.is_some() {
                return Err(non_convergence(iter, worst, history));
            }
            let mut pairs = converged;
            for p in &mut pairs {
                fix_phase(&mut p.vector);
            }
            pairs.sort_by(|p, q| p.value.total_cmp(&q.value));
            return Ok(KrylovOutcome {
                pairs,
                iterations: iter,
                solves,
            });
        }

        // Expansion directions: unconverged wanted pairs first, then the
        // next Ritz vectors by distance to the shift.
        let mut picks: Vec<usize> = unconverged.clone();
        for &i in &order {
            if picks.len() >= block {
                break;
            }
            if !picks.contains(&i) {
                picks.push(i);
            }
        }
        picks.truncate(block);

        let raw: Vec<Vec<Complex64>> = picks
            .iter()
            .map(|&i| {
                let theta = eig.values[i];
                let mut r = combine(&w, &ys[i], n);
                let x = combine(&v, &ys[i], n);
                for (ri, xi) in r.iter_mut().zip(&x) {
                    *ri -= xi * theta;
                }
                r
            })
            .collect();

        if m + block > max_basis {
            let keep = (target + block).max(max_basis / 2).min(order.len());
            let kept = &order[..keep];
            let nv: Vec<Vec<Complex64>> = kept.iter().map(|&i| combine(&v, &ys[i], n)).collect();
            let nw: Vec<Vec<Complex64>> = kept.iter().map(|&i| combine(&w, &ys[i], n)).collect();
            v = nv;
            w = nw;
            h = grow_projection(&DenseMatrix::zeros(0), &v, &w);
        }

        let mut basis_and_new = v.clone();
        for mut r in raw {
            if !orthonormalize_against(&basis_and_new, &mut r, 1e-10) {
                r = random_vector(n, &mut rng);
                if !orthonormalize_against(&basis_and_new, &mut r, 1e-8) {
                    continue;
                }
            }
            basis_and_new.push(r.clone());
            incoming.push(r);
        }
        if incoming.is_empty() {
            return Err(Error::Breakdown {
                solver: "shift-invert Krylov",
                reason: "no new search directions".into(),
            });
        }
    }
    Err(non_convergence(
        opts.max_iter,
        *history.last().unwrap_or(&f64::INFINITY),
        history,
    ))
}

fn non_convergence(iterations: usize, last: f64, history: Vec<f64>) -> Error {
    Error::NonConvergence {
        solver: "shift-invert Krylov",
        iterations,
        last_residual: last,
        history,
    }
}

/// Extends `h = V^H W` to the current basis size.
fn grow_projection(h: &DenseMatrix, v: &[Vec<Complex64>], w: &[Vec<Complex64>]) -> DenseMatrix {
    let old = h.n();
    let m = v.len();
    let mut out = DenseMatrix::zeros(m);
    for r in 0..old.min(m) {
        for c in 0..old.min(m) {
            out[(r, c)] = h[(r, c)];
        }
    }
    for r in 0..m {
        for c in 0..m {
            if r < old && c < old {
                continue;
            }
            out[(r, c)] = dotc(&v[r], &w[c]);
        }
    }
    out
}

fn residual(a: &CsrMatrix, x: &[Complex64], lambda: f64) -> f64 {
    let ax = a.mul(x);
    ax.iter()
        .zip(x)
        .map(|(p, q)| (p - q * lambda).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn chain(n: usize, seed: u64) -> CsrMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut t = Vec::new();
        for r in 0..n {
            t.push((r, r, c(6.0 * (rng.gen::<f64>() - 0.5), 0.0)));
            for d in 1..=3 {
                if r + d < n {
                    let z = c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
                    t.push((r, r + d, z));
                    t.push((r + d, r, z.conj()));
                }
            }
        }
        CsrMatrix::from_triplets(n, t)
    }

    fn dense_in(a: &CsrMatrix, lo: f64, hi: f64) -> Vec<f64> {
        hermitian_eig(&a.to_dense(), false)
            .unwrap()
            .values
            .into_iter()
            .filter(|v| (lo..=hi).contains(v))
            .collect()
    }

    #[test]
    fn factored_path_matches_dense() {
        let a = chain(300, 1);
        let (lo, hi) = (-0.3, 0.3);
        let expect = dense_in(&a, lo, hi);
        let sigma = 0.0;
        let ldl = BandLdl::factor(&a.shifted(sigma), None).unwrap();
        let op = FactoredShift::new(&a, sigma, &ldl);
        let count = BandLdl::factor(&a.shifted(hi), None).unwrap().inertia().negative
            - BandLdl::factor(&a.shifted(lo), None).unwrap().inertia().negative;
        assert_eq!(count, expect.len());
        let out = shift_invert_eigs(&a, &op, lo, hi, 50, Some(count), &KrylovOptions::default()).unwrap();
        assert_eq!(out.pairs.len(), expect.len());
        for (p, e) in out.pairs.iter().zip(&expect) {
            assert!((p.value - e).abs() < 1e-10, "{} vs {}", p.value, e);
            assert!(p.residual <= 1e-9);
        }
    }

    #[test]
    fn returns_closest_k() {
        let a = chain(200, 2);
        let expect = dense_in(&a, -1.0, 1.0);
        assert!(expect.len() > 3);
        let ldl = BandLdl::factor(&a.shifted(0.0), None).unwrap();
        let op = FactoredShift::new(&a, 0.0, &ldl);
        let out = shift_invert_eigs(&a, &op, -1.0, 1.0, 2, Some(expect.len()), &KrylovOptions::default()).unwrap();
        let mut closest = expect.clone();
        closest.sort_by(|x, y| x.abs().total_cmp(&y.abs()));
        let mut want = closest[..2].to_vec();
        want.sort_by(f64::total_cmp);
        assert_eq!(out.pairs.len(), 2);
        for (p, e) in out.pairs.iter().zip(&want) {
            assert!((p.value - e).abs() < 1e-10);
        }
    }

    #[test]
    fn minres_path_matches_dense() {
        let a = chain(120, 3);
        let expect = dense_in(&a, -0.5, 0.5);
        let op = MinresShift::new(&a, 0.0, 1e-13, 2000);
        let out = shift_invert_eigs(&a, &op, -0.5, 0.5, 40, None, &KrylovOptions::default()).unwrap();
        assert_eq!(out.pairs.len(), expect.len());
        for (p, e) in out.pairs.iter().zip(&expect) {
            assert!((p.value - e).abs() < 1e-9);
        }
    }

    #[test]
    fn empty_certificate_skips_iteration() {
        let a = chain(50, 4);
        let ldl = BandLdl::factor(&a, None).unwrap();
        let op = FactoredShift::new(&a, 0.0, &ldl);
        let out = shift_invert_eigs(&a, &op, -0.1, 0.1, 3, Some(0), &KrylovOptions::default()).unwrap();
        assert!(out.pairs.is_empty());
        assert_eq!(out.solves, 0);
    }
}
