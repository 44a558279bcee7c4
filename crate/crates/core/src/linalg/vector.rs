use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `sum conj(a_i) b_i`
pub fn dotc(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(ZERO, |acc, (x, y)| acc + x.conj() * y)
}

pub fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn norm_inf(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `y += alpha x`
pub fn axpy(alpha: Complex64, x: &[Complex64], y: &mut [Complex64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub fn scale(alpha: f64, x: &mut [Complex64]) {
    for xi in x.iter_mut() {
        *xi *= alpha;
    }
}

pub fn random_vector(n: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect()
}

/// Orthogonalises `v` against the orthonormal `basis` (two passes of
/// classical Gram-Schmidt) and normalises it. Returns `false` when `v`
/// collapses below `drop_tol` relative to its starting norm.
pub fn orthonormalize_against(basis: &[Vec<Complex64>], v: &mut [Complex64], drop_tol: f64) -> bool {
    let start = norm(v);
    if start == 0.0 {
        return false;
    }
    for _ in 0..2 {
        for b in basis {
            let c = dotc(b, v);
            axpy(-c, b, v);
        }
    }
    let nv = norm(v);
    if nv <= drop_tol * start {
        return false;
    }
    scale(1.0 / nv, v);
    true
}

/// Fixes the phase of `v` so that its first entry above `1e-6 max|v_i|`
/// is real and positive.
pub fn fix_phase(v: &mut [Complex64]) {
    let big = norm_inf(v);
    if big == 0.0 {
        return;
    }
    if let Some(z) = v.iter().find(|z| z.norm() > 1e-6 * big).copied() {
        let phase = z.conj() / z.norm();
        for vi in v.iter_mut() {
            *vi *= phase;
        }
    }
}

/// `sum_j c_j basis_j`
pub fn combine(basis: &[Vec<Complex64>], coeffs: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![ZERO; n];
    for (b, c) in basis.iter().zip(coeffs) {
        if *c != ZERO {
            axpy(*c, b, &mut out);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn gram_schmidt_produces_orthonormal_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut basis: Vec<Vec<Complex64>> = Vec::new();
        for _ in 0..5 {
            let mut v = random_vector(12, &mut rng);
            assert!(orthonormalize_against(&basis, &mut v, 1e-10));
            basis.push(v);
        }
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dotc(a, b) - Complex64::new(expect, 0.0)).norm() < 1e-13);
            }
        }
        let mut dependent = combine(&basis, &[Complex64::new(1.0, 2.0); 5], 12);
        assert!(!orthonormalize_against(&basis, &mut dependent, 1e-10));
    }

    #[test]
    fn phase_fix_makes_leading_entry_positive() {
        let mut v = vec![ZERO, Complex64::new(0.0, -2.0), Complex64::new(1.0, 1.0)];
        fix_phase(&mut v);
        assert!(v[1].im.abs() < 1e-15 && v[1].re > 0.0);
        assert!((norm(&v) - 6f64.sqrt()).abs() < 1e-14);
    }
}
