use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Square row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            data: vec![ZERO; n * n],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        DenseMatrix { n, data }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.n..(r + 1) * self.n]
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.n + c]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.n + c]
    }
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct DenseEig {
    pub values: Vec<f64>,
    /// `vectors[i]` belongs to `values[i]`; unit 2-norm.
    pub vectors: Option<Vec<Vec<Complex64>>>,
}

struct Reflector {
    v: Vec<Complex64>,
    tau: f64,
}

/// Hermitian eigensolver: Householder reduction to tridiagonal form, a
/// diagonal phase change to a real symmetric tridiagonal, implicit QL,
/// and back-transformation. Only the lower triangle is trusted after the
/// matrix is replaced by its Hermitian part.
pub fn hermitian_eig(a: &DenseMatrix, want_vectors: bool) -> Result<DenseEig> {
    let n = a.n();
    if n == 0 {
        return Ok(DenseEig {
            values: vec![],
            vectors: want_vectors.then(Vec::new),
        });
    }
    let t = Tridiagonal::reduce(a);
    let mut d = t.d.clone();
    let mut e = t.e.clone();
    let mut z = want_vectors.then(|| {
        let mut z = vec![vec![0.0; n]; n];
        for (i, row) in z.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        z
    });
    tql2(&mut d, &mut e, z.as_mut())?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = z.map(|z| order.par_iter().map(|&i| t.back_transform(&z[i])).collect());
    Ok(DenseEig { values, vectors })
}

/// All eigenvalues, ascending, plus eigenvectors for those inside the open
/// interval `(lo, hi)` only, found by inverse iteration on the tridiagonal
/// form. Returns `(values, [(index into values, vector)])`.
#[allow(clippy::type_complexity)]
pub fn hermitian_eig_window(a: &DenseMatrix, lo: f64, hi: f64) -> Result<(Vec<f64>, Vec<(usize, Vec<Complex64>)>)> {
    let n = a.n();
    if n == 0 {
        return Ok((vec![], vec![]));
    }
    let t = Tridiagonal::reduce(a);
    let mut d = t.d.clone();
    let mut e = t.e.clone();
    tql2(&mut d, &mut e, None)?;
    d.sort_by(f64::total_cmp);
    let norm = (0..n)
        .map(|k| t.d[k].abs() + t.e[k].abs() + if k > 0 { t.e[k - 1].abs() } else { 0.0 })
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let picked: Vec<usize> = (0..n).filter(|&i| d[i] > lo && d[i] < hi).collect();
    let z = inverse_iteration(&t.d, &t.e, &picked.iter().map(|&i| d[i]).collect::<Vec<_>>(), norm)?;
    let vectors = picked
        .par_iter()
        .zip(z.par_iter())
        .map(|(&i, zi)| (i, t.back_transform(zi)))
        .collect();
    Ok((d, vectors))
}

/// Real symmetric tridiagonal `(d, e)` unitarily similar to a Hermitian
/// matrix, with the data to map its eigenvectors back.
struct Tridiagonal {
    d: Vec<f64>,
    /// `e[k]` couples `k` and `k + 1`; the last entry is unused.
    e: Vec<f64>,
    phase: Vec<Complex64>,
    reflectors: Vec<Reflector>,
}

impl Tridiagonal {
    fn reduce(a: &DenseMatrix) -> Self {
        let n = a.n();
        let mut w = DenseMatrix::from_fn(n, |r, c| (a[(r, c)] + a[(c, r)].conj()) * 0.5);
        let reflectors = tridiagonalize(&mut w);
        let d: Vec<f64> = (0..n).map(|k| w[(k, k)].re).collect();
        let mut e = vec![0.0; n];
        let mut phase = vec![Complex64::new(1.0, 0.0); n];
        for k in 0..n - 1 {
            let ek = w[(k + 1, k)];
            let mag = ek.norm();
            e[k] = mag;
            phase[k + 1] = if mag > 0.0 { phase[k] * ek / mag } else { phase[k] };
        }
        Tridiagonal {
            d,
            e,
            phase,
            reflectors,
        }
    }

    fn back_transform(&self, z: &[f64]) -> Vec<Complex64> {
        let mut y: Vec<Complex64> = z.iter().zip(&self.phase).map(|(&zk, s)| s * zk).collect();
        for (k, h) in self.reflectors.iter().enumerate().rev() {
            if h.tau == 0.0 {
                continue;
            }
            let tail = &mut y[k + 1..];
            let c: Complex64 =
                h.v.iter()
                    .zip(tail.iter())
                    .map(|(v, t)| v.conj() * t)
                    .sum::<Complex64>()
                    * h.tau;
            for (t, v) in tail.iter_mut().zip(&h.v) {
                *t -= c * v;
            }
        }
        y
    }
}

/// Householder reduction working on the lower triangle only. The rank-2
/// update of one step is applied in the same sweep that forms the
/// matrix-vector product of the next, so each row is streamed once.
fn tridiagonalize(a: &mut DenseMatrix) -> Vec<Reflector> {
    let n = a.n();
    let mut out = Vec::with_capacity(n.saturating_sub(2));
    // (v, w, first row of the block) of an update not yet applied below
    // its first column.
    let mut pending: Option<(Vec<Complex64>, Vec<Complex64>, usize)> = None;
    for k in 0..n.saturating_sub(2) {
        if let Some((v, w, o)) = &pending {
            for r in k..n {
                let i = r - o;
                a.data[r * n + k] -= v[i] * w[0].conj() + w[i] * v[0].conj();
            }
        }
        let x: Vec<Complex64> = (k + 1..n).map(|r| a[(r, k)]).collect();
        let tail: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
        let next = if tail == 0.0 {
            None
        } else {
            let xnorm = (x[0].norm_sqr() + tail).sqrt();
            let x0abs = x[0].norm();
            let ph = if x0abs > 0.0 {
                x[0] / x0abs
            } else {
                Complex64::new(1.0, 0.0)
            };
            let alpha = -ph * xnorm;
            let mut v = x;
            v[0] -= alpha;
            Some((v, 1.0 / (xnorm * (xnorm + x0abs)), alpha))
        };

        let off = k + 1;
        let m = n - off;
        let mut p = vec![ZERO; m];
        for r in 0..m {
            let row = &mut a.data[(off + r) * n + off..(off + r) * n + off + r + 1];
            if let Some((v, w, o)) = &pending {
                let s = off - o;
                let (vr, wr) = (v[s + r], w[s + r]);
                for (c, b) in row.iter_mut().enumerate() {
                    *b -= vr * w[s + c].conj() + wr * v[s + c].conj();
                }
            }
            if let Some((v, _, _)) = &next {
                // row r contributes A[r][c] v[c] to p[r] and conj(A[r][c]) v[r] to p[c]
                let vr = v[r];
                let mut acc = row[r] * vr;
                for (c, b) in row[..r].iter().enumerate() {
                    acc += b * v[c];
                    p[c] += b.conj() * vr;
                }
                p[r] += acc;
            }
        }
        pending = None;
        match next {
            None => out.push(Reflector { v: vec![], tau: 0.0 }),
            Some((v, tau, alpha)) => {
                for pi in p.iter_mut() {
                    *pi *= tau;
                }
                let kk: Complex64 = v.iter().zip(&p).map(|(vi, pi)| vi.conj() * pi).sum::<Complex64>() * (0.5 * tau);
                let w: Vec<Complex64> = p.iter().zip(&v).map(|(pi, vi)| pi - kk * vi).collect();
                a[(k + 1, k)] = alpha;
                for r in k + 2..n {
                    a[(r, k)] = ZERO;
                }
                pending = Some((v.clone(), w, off));
                out.push(Reflector { v, tau });
            }
        }
    }
    if let Some((v, w, o)) = pending {
        for r in o..n {
            let row = &mut a.data[r * n + o..r * n + r + 1];
            let (vr, wr) = (v[r - o], w[r - o]);
            for (c, b) in row.iter_mut().enumerate() {
                *b -= vr * w[c].conj() + wr * v[c].conj();
            }
        }
    }
    out
}

/// Eigenvectors of the symmetric tridiagonal `(d, e)` for the ascending
/// eigenvalues `lambdas`, by inverse iteration with reorthogonalization
/// inside clusters.
fn inverse_iteration(d: &[f64], e: &[f64], lambdas: &[f64], norm: f64) -> Result<Vec<Vec<f64>>> {
    let n = d.len();
    let cluster_gap = 1e-3 * norm;
    let tiny = f64::EPSILON * norm;
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(lambdas.len());
    let mut cluster_start = 0;
    for (idx, &lam) in lambdas.iter().enumerate() {
        if idx > 0 && lam - lambdas[idx - 1] > cluster_gap {
            cluster_start = idx;
        }
        let lu = TridiagLu::factor(d, e, lam, tiny);
        // Deterministic start vector, different for each eigenvalue.
        let mut x: Vec<f64> = (0..n)
            .map(|i| 1.0 + 0.5 * ((i * 7 + idx * 13) % 17) as f64 / 17.0)
            .collect();
        let mut converged = false;
        let mut last = f64::INFINITY;
        for _ in 0..8 {
            lu.solve(&mut x);
            for prev in &out[cluster_start..idx] {
                let c: f64 = prev.iter().zip(&x).map(|(a, b)| a * b).sum();
                for (xi, pi) in x.iter_mut().zip(prev) {
                    *xi -= c * pi;
                }
            }
            let nrm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if nrm == 0.0 || !nrm.is_finite() {
                return Err(Error::Breakdown {
                    solver: "tridiagonal inverse iteration",
                    reason: format!("degenerate iterate for eigenvalue {lam}"),
                });
            }
            x.iter_mut().for_each(|v| *v /= nrm);
            last = tridiag_residual(d, e, lam, &x);
            if last <= 1e-13 * norm * (n as f64).sqrt() {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NonConvergence {
                solver: "tridiagonal inverse iteration",
                iterations: 8,
                last_residual: last,
                history: vec![last],
            });
        }
        out.push(x);
    }
    Ok(out)
}

fn tridiag_residual(d: &[f64], e: &[f64], lam: f64, x: &[f64]) -> f64 {
    let n = d.len();
    (0..n)
        .map(|i| {
            let mut r = (d[i] - lam) * x[i];
            if i > 0 {
                r += e[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                r += e[i] * x[i + 1];
            }
            r * r
        })
        .sum::<f64>()
        .sqrt()
}

/// LU with partial pivoting of `T - lambda I` for a symmetric tridiagonal.
struct TridiagLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagLu {
    fn factor(d: &[f64], e: &[f64], lam: f64, tiny: f64) -> Self {
        let n = d.len();
        let mut dl: Vec<f64> = e[..n - 1].to_vec();
        let mut dd: Vec<f64> = d.iter().map(|v| v - lam).collect();
        let mut du: Vec<f64> = e[..n - 1].to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n - 1 {
            if dd[i].abs() >= dl[i].abs() {
                if dd[i] != 0.0 {
                    let f = dl[i] / dd[i];
                    dl[i] = f;
                    dd[i + 1] -= f * du[i];
                }
            } else {
                let f = dd[i] / dl[i];
                dd[i] = dl[i];
                dl[i] = f;
                let t = du[i];
                du[i] = dd[i + 1];
                dd[i + 1] = t - f * dd[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -f;
                }
                swapped[i] = true;
            }
        }
        for v in dd.iter_mut() {
            if v.abs() < tiny {
                *v = if *v < 0.0 { -tiny } else { tiny };
            }
        }
        TridiagLu {
            dl,
            d: dd,
            du,
            du2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                let t = b[i];
                b[i] = b[i + 1];
                b[i + 1] = t - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

/// Implicit QL on the symmetric tridiagonal with diagonal `d` and
/// off-diagonal `e[k]` coupling `k` and `k + 1`. Rows of `z` accumulate
/// the rotations (row `i` ends up as eigenvector `i`).
fn tql2(d: &mut [f64], e: &mut [f64], mut z: Option<&mut Vec<Vec<f64>>>) -> Result<()> {
    let n = d.len();
    e[n - 1] = 0.0;
    let eps = f64::EPSILON;
    let max_iter = 30 * n.max(1);
    let mut f = 0.0;
    let mut tst1 = 0.0f64;
    let mut history = Vec::new();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > max_iter {
                    history.push(e[l].abs());
                    return Err(Error::NonConvergence {
                        solver: "tridiagonal QL",
                        iterations: iter,
                        last_residual: e[l].abs(),
                        history,
                    });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(z) = z.as_deref_mut() {
                        let (lo, hi) = z.split_at_mut(i + 1);
                        let (zi, zi1) = (&mut lo[i], &mut hi[0]);
                        for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                            let hb = *b;
                            *b = s * *a + c * hb;
                            *a = c * *a - s * hb;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                history.push(e[l].abs());
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}
