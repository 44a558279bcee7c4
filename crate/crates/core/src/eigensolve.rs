//! Eigenpairs of assembled operators with residuals and localisation
//! diagnostics.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::assembly::{FieldLayout, HermitianOperator, OperatorKind};
use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eig, hermitian_eig_window, lobpcg, shift_invert_eigs, BandLdl, CsrMatrix, EigenPair, FactoredShift,
    KrylovOptions, LobpcgOptions, MinresShift, Preconditioner,
};

pub const DEFAULT_DENSE_CAP: usize = 4000;

/// One eigenpair with its diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenEntry {
    pub eigenvalue: f64,
    /// `||M v - lambda v|| / ||v||`
    pub residual: f64,
    pub participation_ratio: f64,
    /// `None` when the operator carries no row structure.
    pub y_decay_rate: Option<f64>,
    #[serde(skip)]
    pub vector: Option<Vec<Complex64>>,
}

/// Guarantee that accompanies an interval search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Full spectrum computed.
    Dense,
    /// Interval eigenvalue count from the inertia of two shifted
    /// factorizations.
    Inertia {
        count: usize,
    },
    Uncertified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Dense,
    ShiftInvert,
    Lobpcg,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverInfo {
    pub method: Method,
    pub iterations: usize,
    pub shift: Option<f64>,
    pub tolerance: f64,
    pub certificate: Certificate,
}

/// Eigenvalues ascending with residuals and localisation metrics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub entries: Vec<EigenEntry>,
    pub solver: SolverInfo,
}

impl SpectrumReport {
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.eigenvalue).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry of smallest `|lambda|`.
    pub fn closest_to_zero(&self) -> Option<&EigenEntry> {
        self.entries
            .iter()
            .min_by(|a, b| a.eigenvalue.abs().total_cmp(&b.eigenvalue.abs()))
    }

    pub fn in_interval(&self, lo: f64, hi: f64) -> impl Iterator<Item = &EigenEntry> {
        self.entries
            .iter()
            .filter(move |e| e.eigenvalue > lo && e.eigenvalue < hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenseOptions {
    pub cap: usize,
    pub keep_vectors: bool,
    /// Report only the eigenpairs inside this open interval; the full
    /// spectrum is still computed, eigenvectors only for the window.
    pub window: Option<(f64, f64)>,
}

impl Default for DenseOptions {
    fn default() -> Self {
        DenseOptions {
            cap: DEFAULT_DENSE_CAP,
            keep_vectors: false,
            window: None,
        }
    }
}

/// Full spectrum by in-repo dense Hermitian decomposition.
pub fn dense_eigs(op: &HermitianOperator, opts: &DenseOptions) -> Result<SpectrumReport> {
    let m = op.matrix();
    if m.n() > opts.cap {
        return Err(Error::OverCap {
            dim: m.n(),
            cap: opts.cap,
        });
    }
    let pairs: Vec<(f64, Vec<Complex64>)> = match opts.window {
        None => {
            let eig = hermitian_eig(&m.to_dense(), true)?;
            eig.values
                .into_iter()
                .zip(eig.vectors.expect("requested vectors"))
                .collect()
        }
        Some((lo, hi)) => {
            let (values, picked) = hermitian_eig_window(&m.to_dense(), lo, hi)?;
            picked.into_iter().map(|(i, v)| (values[i], v)).collect()
        }
    };
    let entries = pairs
        .into_iter()
        .map(|(lambda, mut v)| {
            crate::linalg::vector::fix_phase(&mut v);
            entry(m, Some(op.layout()), lambda, v, None, opts.keep_vectors)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumReport {
        entries,
        solver: SolverInfo {
            method: Method::Dense,
            iterations: 0,
            shift: None,
            tolerance: 1e-10 * m.norm_inf(),
            certificate: Certificate::Dense,
        },
    })
}

/// Inner solver used by [`gap_eigs`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapBackend {
    /// Band `LDL^H`; gives an inertia certificate.
    Factorization,
    /// Matrix-free MINRES inner solves; uncertified.
    Minres,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub block: usize,
    pub backend: GapBackend,
    pub seed: u64,
    pub keep_vectors: bool,
    /// Shift of the inverted operator; the interval midpoint when `None`.
    pub shift: Option<f64>,
}

impl Default for GapOptions {
    fn default() -> Self {
        GapOptions {
            tol: 1e-9,
            max_iter: 300,
            block: 4,
            backend: GapBackend::Factorization,
            seed: 0,
            keep_vectors: false,
            shift: None,
        }
    }
}

/// Up to `k` eigenpairs in `[lo, hi]` nearest the midpoint, by shift-invert
/// block Krylov iteration.
pub fn gap_eigs(op: &HermitianOperator, lo: f64, hi: f64, k: usize, opts: &GapOptions) -> Result<SpectrumReport> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::invalid("interval", format!("need lo < hi, got ({lo}, {hi})")));
    }
    if k == 0 {
        return Err(Error::invalid("k", "must be at least 1"));
    }
    let m = op.matrix();
    let mut sigma = opts.shift.unwrap_or(0.5 * (lo + hi));
    let kopts = KrylovOptions {
        block: opts.block,
        tol: opts.tol,
        max_iter: opts.max_iter,
        max_basis: (3 * k + 4 * opts.block).max(96),
        seed: opts.seed,
    };
    let perm = band_permutation(op);

    let (outcome, certificate) = match opts.backend {
        GapBackend::Factorization => {
            let certificate = interval_count(m, perm.as_ref(), lo, hi)?;
            let known = match certificate {
                Certificate::Inertia { count } => Some(count),
                _ => None,
            };
            if known == Some(0) {
                return Ok(report(
                    vec![],
                    Method::ShiftInvert,
                    0,
                    Some(sigma),
                    opts.tol,
                    certificate,
                ));
            }
            let mut ldl = BandLdl::factor(&m.shifted(sigma), perm.clone())?;
            if ldl.perturbed_pivots() > 0 {
                sigma += (hi - lo) * 1e-3 * std::f64::consts::SQRT_2;
                ldl = BandLdl::factor(&m.shifted(sigma), perm)?;
            }
            let shift = FactoredShift::new(m, sigma, &ldl);
            (shift_invert_eigs(m, &shift, lo, hi, k, known, &kopts)?, certificate)
        }
        GapBackend::Minres => {
            let shift = MinresShift::new(m, sigma, 1e-13, 20 * m.n().max(100));
            (
                shift_invert_eigs(m, &shift, lo, hi, k, None, &kopts)?,
                Certificate::Uncertified,
            )
        }
    };
    let entries = outcome
        .pairs
        .into_iter()
        .map(|p| pair_entry(m, op.layout(), p, opts.keep_vectors))
        .collect::<Result<Vec<_>>>()?;
    let mut rep = report(
        entries,
        Method::ShiftInvert,
        outcome.iterations,
        Some(sigma),
        opts.tol,
        certificate,
    );
    rep.entries.sort_by(|a, b| a.eigenvalue.total_cmp(&b.eigenvalue));
    Ok(rep)
}

/// Eigenvalue of smallest modulus within `a <= |lambda| <= b`; `None`
/// when the band holds no eigenvalue.
///
/// On each half-line the band is narrowed by inertia bisection until it
/// holds at most [`NARROW_COUNT`] eigenvalues, which are then resolved by
/// shift-invert. Searching the full band directly stalls when the
/// spectrum near its inner end is a dense cluster.
pub fn min_abs_in_band(op: &HermitianOperator, a: f64, b: f64, opts: &GapOptions) -> Result<Option<EigenEntry>> {
    if !(0.0 <= a && a < b) {
        return Err(Error::invalid("band", format!("need 0 <= a < b, got ({a}, {b})")));
    }
    let m = op.matrix();
    let perm = band_permutation(op);
    // A shift that cannot be certified is moved by growing steps in `dir`;
    // callers pick the direction that widens the bracket.
    let scale = std::f64::consts::SQRT_2 * (b - a);
    let below = |x: f64, dir: f64| -> Result<Option<(f64, usize)>> {
        for step in [0.0, 1e-9, 1e-6, 1e-4, 1e-3] {
            let xs = x + dir * step * scale;
            let shifted = m.shifted(xs);
            let ldl = BandLdl::factor(&shifted, perm.clone())?;
            if ldl.perturbed_pivots() == 0 && ldl.backward_error(&shifted, 17) <= 1e-10 {
                return Ok(Some((xs, ldl.inertia().negative)));
            }
        }
        Ok(None)
    };
    let mut best: Option<EigenEntry> = None;
    for side in [1.0, -1.0] {
        let Some((lo, hi, count)) = narrow_band(&below, side, a, b)? else {
            return min_abs_by_krylov(op, a, b, opts);
        };
        if count == 0 {
            continue;
        }
        let rep = gap_eigs(op, lo, hi, count, &GapOptions { shift: None, ..*opts })?;
        let in_band = rep.entries.iter().filter(|e| (a..=b).contains(&e.eigenvalue.abs()));
        if let Some(e) = in_band.min_by(|x, y| x.eigenvalue.abs().total_cmp(&y.eigenvalue.abs())) {
            if best.as_ref().is_none_or(|b| e.eigenvalue.abs() < b.eigenvalue.abs()) {
                best = Some(e.clone());
            }
        }
    }
    Ok(best)
}

/// Bisection stops once the bracket holds this many eigenvalues.
pub const NARROW_COUNT: usize = 8;

/// Bracket `[lo, hi]` on the `side` half-line holding the eigenvalue of
/// smallest modulus in the band, with its eigenvalue count. `None` when an
/// inertia count could not be certified.
fn narrow_band(
    below: &dyn Fn(f64, f64) -> Result<Option<(f64, usize)>>,
    side: f64,
    a: f64,
    b: f64,
) -> Result<Option<(f64, f64, usize)>> {
    let (lo, hi) = if side > 0.0 { (a, b) } else { (-b, -a) };
    let (Some((mut lo, mut n_lo)), Some((mut hi, mut n_hi))) = (below(lo, -1.0)?, below(hi, 1.0)?) else {
        return Ok(None);
    };
    let floor = 1e-13 * b.max(1.0);
    while n_hi.saturating_sub(n_lo) > NARROW_COUNT && hi - lo > floor {
        let Some((mid, n_mid)) = below(0.5 * (lo + hi), 1.0)? else {
            return Ok(None);
        };
        // Keep the half nearer zero whenever it holds an eigenvalue.
        let inner_nonempty = if side > 0.0 { n_mid > n_lo } else { n_hi > n_mid };
        match (side > 0.0, inner_nonempty) {
            (true, true) | (false, false) => (hi, n_hi) = (mid, n_mid),
            (true, false) | (false, true) => (lo, n_lo) = (mid, n_mid),
        }
    }
    Ok(Some((lo, hi, n_hi.saturating_sub(n_lo))))
}

/// Shift-invert search of each half of the band, without bisection.
fn min_abs_by_krylov(op: &HermitianOperator, a: f64, b: f64, opts: &GapOptions) -> Result<Option<EigenEntry>> {
    let nudge = 1e-3 * (b - a);
    let mut best: Option<EigenEntry> = None;
    for (lo, hi, shift) in [(a, b, a - nudge), (-b, -a, -a + nudge)] {
        let o = GapOptions {
            shift: Some(shift),
            ..*opts
        };
        let rep = gap_eigs(op, lo, hi, opts.block.max(1), &o)?;
        let in_band = rep.entries.iter().filter(|e| (a..=b).contains(&e.eigenvalue.abs()));
        if let Some(e) = in_band.min_by(|x, y| x.eigenvalue.abs().total_cmp(&y.eigenvalue.abs())) {
            if best.as_ref().is_none_or(|b| e.eigenvalue.abs() < b.eigenvalue.abs()) {
                best = Some(e.clone());
            }
        }
    }
    Ok(best)
}

/// Number of eigenvalues in `[lo, hi)` from Sylvester inertia, or
/// `Uncertified` when a factorization needed pivot perturbation or has a
/// poor backward error.
pub fn interval_count(m: &CsrMatrix, perm: Option<&Vec<usize>>, lo: f64, hi: f64) -> Result<Certificate> {
    let mut neg = [0usize; 2];
    for (slot, s) in [lo, hi].into_iter().enumerate() {
        let shifted = m.shifted(s);
        let ldl = BandLdl::factor(&shifted, perm.cloned())?;
        if ldl.perturbed_pivots() > 0 || ldl.backward_error(&shifted, 17) > 1e-10 {
            return Ok(Certificate::Uncertified);
        }
        neg[slot] = ldl.inertia().negative;
    }
    Ok(Certificate::Inertia {
        count: neg[1].saturating_sub(neg[0]),
    })
}

/// Ordering of smallest half-bandwidth among the layout's candidates and
/// the natural order; `None` when the natural order wins.
pub fn band_permutation(op: &HermitianOperator) -> Option<Vec<usize>> {
    let m = op.matrix();
    let natural = m.half_bandwidth();
    op.layout()
        .band_orderings()
        .into_iter()
        .map(|p| (permuted_bandwidth(m, &p), p))
        .filter(|(bw, _)| *bw < natural)
        .min_by_key(|(bw, _)| *bw)
        .map(|(_, p)| p)
}

fn permuted_bandwidth(m: &CsrMatrix, perm: &[usize]) -> usize {
    let mut inv = vec![0usize; perm.len()];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    m.iter().map(|(r, c, _)| inv[r].abs_diff(inv[c])).max().unwrap_or(0)
}

/// Preconditioner used by [`lowest_of_square`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PreconditionerKind {
    None,
    Jacobi,
    BandedCholesky,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub block: usize,
    pub preconditioner: PreconditionerKind,
    pub seed: u64,
    pub keep_vectors: bool,
}

impl Default for SquareOptions {
    fn default() -> Self {
        SquareOptions {
            tol: 1e-8,
            max_iter: 1000,
            block: 4,
            preconditioner: PreconditionerKind::BandedCholesky,
            seed: 0,
            keep_vectors: false,
        }
    }
}

/// The `k` smallest eigenvalues of a square form; `sqrt` of each is the
/// corresponding `|lambda|`.
pub fn lowest_of_square(q: &HermitianOperator, k: usize, opts: &SquareOptions) -> Result<SpectrumReport> {
    if q.kind() != OperatorKind::SquareForm {
        return Err(Error::invalid("op", "lowest_of_square needs a square-form operator"));
    }
    let m = q.matrix();
    let pre = match opts.preconditioner {
        PreconditionerKind::None => Preconditioner::None,
        PreconditionerKind::Jacobi => Preconditioner::jacobi(m),
        PreconditionerKind::BandedCholesky => Preconditioner::Factored(BandLdl::factor(m, band_permutation(q))?),
    };
    let out = lobpcg(
        m,
        k,
        &pre,
        &LobpcgOptions {
            block: opts.block,
            tol: opts.tol,
            max_iter: opts.max_iter,
            seed: opts.seed,
        },
    )?;
    let entries = out
        .pairs
        .into_iter()
        .map(|p| pair_entry(m, q.layout(), p, opts.keep_vectors))
        .collect::<Result<Vec<_>>>()?;
    Ok(report(
        entries,
        Method::Lobpcg,
        out.iterations,
        None,
        opts.tol,
        Certificate::Uncertified,
    ))
}

fn report(
    entries: Vec<EigenEntry>,
    method: Method,
    iterations: usize,
    shift: Option<f64>,
    tolerance: f64,
    certificate: Certificate,
) -> SpectrumReport {
    SpectrumReport {
        entries,
        solver: SolverInfo {
            method,
            iterations,
            shift,
            tolerance,
            certificate,
        },
    }
}

fn pair_entry(m: &CsrMatrix, layout: &FieldLayout, p: EigenPair, keep: bool) -> Result<EigenEntry> {
    entry(m, Some(layout), p.value, p.vector, Some(p.residual), keep)
}

fn entry(
    m: &CsrMatrix,
    layout: Option<&FieldLayout>,
    lambda: f64,
    v: Vec<Complex64>,
    residual: Option<f64>,
    keep: bool,
) -> Result<EigenEntry> {
    let residual = match residual {
        Some(r) => r,
        None => {
            let mv = m.mul(&v);
            let nv = crate::linalg::vector::norm(&v);
            mv.iter()
                .zip(&v)
                .map(|(a, b)| (a - b * lambda).norm_sqr())
                .sum::<f64>()
                .sqrt()
                / nv
        }
    };
    let (pr, decay) = localization_metrics(&v, layout)?;
    Ok(EigenEntry {
        eigenvalue: lambda,
        residual,
        participation_ratio: pr,
        y_decay_rate: decay,
        vector: keep.then_some(v),
    })
}

/// Participation ratio `1 / (N sum |v_i|^4)` of the normalised vector, and
/// the least-squares slope of `ln(row mass)` against `y` over rows with
/// `y >= y_max / 2`.
pub fn localization_metrics(v: &[Complex64], layout: Option<&FieldLayout>) -> Result<(f64, Option<f64>)> {
    let n = v.len();
    let norm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    if n == 0 || norm2 == 0.0 {
        return Err(Error::invalid("v", "zero vector"));
    }
    let p4: f64 = v.iter().map(|z| (z.norm_sqr() / norm2).powi(2)).sum();
    let pr = 1.0 / (n as f64 * p4);
    let decay = match layout {
        Some(l) if l.dim() == n => {
            let mass = l.row_mass(v);
            let j0 = (l.ny() - 1).div_ceil(2);
            let pts: Vec<(f64, f64)> = (j0..l.ny())
                .map(|j| (j as f64 * l.hy(), (mass[j] / norm2).max(1e-300).ln()))
                .collect();
            Some(slope(&pts))
        }
        _ => None,
    };
    Ok((pr, decay))
}

/// Least-squares slope of `y` against `x`.
pub(crate) fn slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::{assemble_h, assemble_square_form, assemble_t};
    use crate::lattice::{Grid2D, Params, PotentialSpec};
    use crate::linalg::DenseMatrix;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn participation_extremes() {
        let uniform = vec![c(0.3); 50];
        assert!((localization_metrics(&uniform, None).unwrap().0 - 1.0).abs() < 1e-14);
        let mut single = vec![c(0.0); 50];
        single[7] = c(2.0);
        assert!((localization_metrics(&single, None).unwrap().0 - 1.0 / 50.0).abs() < 1e-15);
        assert!(localization_metrics(&[c(0.0); 3], None).is_err());
    }

    #[test]
    fn y_decay_of_exponential_profile() {
        let layout = FieldLayout::new(3, 21, 0.5);
        let mut v = vec![c(0.0); layout.dim()];
        for j in 0..21 {
            for i in 0..3 {
                let amp = (-0.8 * j as f64 * 0.5).exp();
                v[layout.unknown(0, i, j)] = c(amp);
                v[layout.unknown(1, i, j)] = c(amp);
            }
        }
        let (_, decay) = localization_metrics(&v, Some(&layout)).unwrap();
        assert!((decay.unwrap() + 1.6).abs() < 1e-10);
    }

    #[test]
    fn dense_cap_and_pauli() {
        let g = Grid2D::new(-1.0, 1.0, 1.0, 6, 6).unwrap();
        let t = assemble_t(&g, &Params::new(1.0).unwrap()).unwrap();
        let err = dense_eigs(
            &t,
            &DenseOptions {
                cap: 10,
                ..DenseOptions::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::OverCap { cap: 10, .. }));
        let rep = dense_eigs(&t, &DenseOptions::default()).unwrap();
        assert_eq!(rep.len(), t.dim());
        let scale = t.matrix().norm_inf();
        assert!(rep.entries.iter().all(|e| e.residual <= 1e-10 * scale));
        assert!(rep.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
        let _ = DenseMatrix::zeros(0);
    }

    #[test]
    fn gap_matches_dense_on_box_potential() {
        let g = Grid2D::new(-4.0, 7.0, 7.0, 23, 15).unwrap();
        let p = Params::new(2.0).unwrap();
        let v = PotentialSpec::box_xy(&g, 1.0, 1.0 + std::f64::consts::PI, -3.0).unwrap();
        let h = assemble_h(&g, &p, &v).unwrap();
        let dense = dense_eigs(&h, &DenseOptions::default()).unwrap();
        let expect: Vec<f64> = dense.in_interval(-1.9, 1.9).map(|e| e.eigenvalue).collect();
        assert!(!expect.is_empty());
        let rep = gap_eigs(&h, -1.9, 1.9, 60, &GapOptions::default()).unwrap();
        assert_eq!(rep.solver.certificate, Certificate::Inertia { count: expect.len() });
        assert_eq!(rep.len(), expect.len());
        for (a, b) in rep.eigenvalues().iter().zip(&expect) {
            assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        }
        let one = gap_eigs(&h, -1.9, 1.9, 1, &GapOptions::default()).unwrap();
        assert_eq!(one.len(), 1);
    }

    #[test]
    fn gap_rejects_bad_interval() {
        let g = Grid2D::new(-1.0, 1.0, 1.0, 6, 6).unwrap();
        let t = assemble_t(&g, &Params::new(1.0).unwrap()).unwrap();
        assert!(gap_eigs(&t, 0.5, -0.5, 1, &GapOptions::default()).is_err());
        assert!(gap_eigs(&t, -0.5, 0.5, 0, &GapOptions::default()).is_err());
    }

    #[test]
    fn square_form_scales_linearly() {
        let g = Grid2D::new(-4.0, 4.0, 4.0, 17, 9).unwrap();
        let q = assemble_square_form(&g, &Params::new(1.0).unwrap(), &PotentialSpec::None).unwrap();
        let a = lowest_of_square(&q, 2, &SquareOptions::default()).unwrap();
        let b = lowest_of_square(&q.scaled(3.0), 2, &SquareOptions::default()).unwrap();
        for (x, y) in a.eigenvalues().iter().zip(b.eigenvalues()) {
            assert!((3.0 * x - y).abs() < 1e-7 * y);
        }
        assert!(a.entries[0].eigenvalue >= 1.0 - 1e-9);
        let t = assemble_t(&g, &Params::new(1.0).unwrap()).unwrap();
        assert!(lowest_of_square(&t, 1, &SquareOptions::default()).is_err());
    }
}
