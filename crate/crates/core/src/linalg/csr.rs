use num_complex::Complex64;
use rayon::prelude::*;

use super::DenseMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Square compressed-sparse-row matrix with sorted, duplicate-free rows.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    col: Vec<usize>,
    val: Vec<Complex64>,
}

impl CsrMatrix {
    /// Builds an `n x n` matrix, summing duplicate entries.
    pub fn from_triplets(n: usize, mut triplets: Vec<(usize, usize, Complex64)>) -> Self {
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; n + 1];
        let mut col = Vec::with_capacity(triplets.len());
        let mut val: Vec<Complex64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in triplets {
            assert!(r < n && c < n, "triplet ({r}, {c}) outside {n}x{n}");
            if last == Some((r, c)) {
                *val.last_mut().unwrap() += v;
            } else {
                col.push(c);
                val.push(v);
                row_ptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for r in 0..n {
            row_ptr[r + 1] += row_ptr[r];
        }
        CsrMatrix { n, row_ptr, col, val }
    }

    pub fn from_dense(a: &DenseMatrix) -> Self {
        let n = a.n();
        let mut t = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let v = a[(r, c)];
                if v != ZERO || r == c {
                    t.push((r, c, v));
                }
            }
        }
        Self::from_triplets(n, t)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.val.len()
    }

    pub fn row(&self, r: usize) -> (&[usize], &[Complex64]) {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        (&self.col[span.clone()], &self.val[span])
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        let (cols, vals) = self.row(r);
        cols.binary_search(&c).map(|k| vals[k]).unwrap_or(ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.n).flat_map(move |r| {
            let (cols, vals) = self.row(r);
            cols.iter().zip(vals).map(move |(&c, &v)| (r, c, v))
        })
    }

    /// `y = A x`
    pub fn matvec(&self, x: &[Complex64], y: &mut [Complex64]) {
        assert_eq!(x.len(), self.n);
        assert_eq!(y.len(), self.n);
        for (r, yr) in y.iter_mut().enumerate() {
            *yr = self.row_dot(r, x);
        }
    }

    /// Row-parallel `y = A x`; every row is reduced sequentially, so the
    /// result is bit-identical to [`CsrMatrix::matvec`].
    pub fn matvec_par(&self, x: &[Complex64], y: &mut [Complex64]) {
        assert_eq!(x.len(), self.n);
        assert_eq!(y.len(), self.n);
        y.par_iter_mut()
            .with_min_len(1024)
            .enumerate()
            .for_each(|(r, yr)| *yr = self.row_dot(r, x));
    }

    pub fn mul(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut y = vec![ZERO; self.n];
        if self.n >= 8192 {
            self.matvec_par(x, &mut y);
        } else {
            self.matvec(x, &mut y);
        }
        y
    }

    #[inline]
    fn row_dot(&self, r: usize, x: &[Complex64]) -> Complex64 {
        let (cols, vals) = self.row(r);
        cols.iter().zip(vals).fold(ZERO, |acc, (&c, v)| acc + v * x[c])
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.n).map(|r| self.get(r, r)).collect()
    }

    pub fn conj_transpose(&self) -> Self {
        let t = self.iter().map(|(r, c, v)| (c, r, v.conj())).collect();
        Self::from_triplets(self.n, t)
    }

    /// Largest `|a_rc - conj(a_cr)|`.
    pub fn hermitian_defect(&self) -> f64 {
        self.iter()
            .map(|(r, c, v)| (v - self.get(c, r).conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Returns `(A + A^H) / 2` and the largest entry change. The result is
    /// Hermitian bit for bit.
    pub fn symmetrized(&self) -> (Self, f64) {
        let mut t = Vec::with_capacity(2 * self.nnz());
        let mut correction = 0.0f64;
        for (r, c, v) in self.iter() {
            correction = correction.max(0.5 * (v - self.get(c, r).conj()).norm());
            t.push((r, c, v * 0.5));
            t.push((c, r, v.conj() * 0.5));
        }
        (Self::from_triplets(self.n, t), correction)
    }

    pub fn max_abs(&self) -> f64 {
        self.val.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest absolute row sum, an upper bound on the spectral norm.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|r| self.row(r).1.iter().map(|v| v.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: f64) -> Self {
        let mut out = self.clone();
        for v in &mut out.val {
            *v *= c;
        }
        out
    }

    /// `A - sigma I`
    pub fn shifted(&self, sigma: f64) -> Self {
        let mut t: Vec<_> = self.iter().collect();
        t.extend((0..self.n).map(|r| (r, r, Complex64::new(-sigma, 0.0))));
        Self::from_triplets(self.n, t)
    }

    /// Symmetric permutation `B[i][j] = A[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut inv = vec![usize::MAX; self.n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let t = self.iter().map(|(r, c, v)| (inv[r], inv[c], v)).collect();
        Self::from_triplets(self.n, t)
    }

    /// Largest `|r - c|` over stored entries.
    pub fn half_bandwidth(&self) -> usize {
        self.iter().map(|(r, c, _)| r.abs_diff(c)).max().unwrap_or(0)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut a = DenseMatrix::zeros(self.n);
        for (r, c, v) in self.iter() {
            a[(r, c)] = v;
        }
        a
    }
}
