//! Sparse Hermitian discretisations of `T`, `T + V sigma_1`, `T + eps W`
//! and the square form `||d_y u||^2 + ||(-d_xx + delta + V) u||^2`.
//!
//! The edge condition `u1 = u2` at `y = 0` is imposed by giving both
//! components of a `j = 0` node a single unknown. With the half weight on
//! the `j = 0` row this makes the mass matrix a multiple of the identity,
//! so every operator below is a plain Hermitian matrix.

use std::io::{self, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{Grid2D, Params, PotentialSpec, SampledPerturbation, SpinorField};
use crate::linalg::CsrMatrix;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorKind {
    /// `T`-like: first order in `y`, spectrum on both sides of zero.
    FirstOrder,
    /// `Q`-like: positive semidefinite, eigenvalues are squared moduli.
    SquareForm,
}

/// Map between spinor fields on an `nx x ny` lattice and the reduced
/// unknown vector.
///
/// Unknowns are all first-component nodes (`j` outer, `i` inner) followed
/// by the second-component nodes with `j >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldLayout {
    nx: usize,
    ny: usize,
    hy: f64,
}

impl FieldLayout {
    pub fn new(nx: usize, ny: usize, hy: f64) -> Self {
        FieldLayout { nx, ny, hy }
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn hy(&self) -> f64 {
        self.hy
    }

    /// `2 nx ny - nx`
    pub fn dim(&self) -> usize {
        2 * self.nx * self.ny - self.nx
    }

    #[inline]
    pub fn unknown(&self, comp: usize, i: usize, j: usize) -> usize {
        if comp == 0 || j == 0 {
            j * self.nx + i
        } else {
            self.nx * self.ny + (j - 1) * self.nx + i
        }
    }

    /// Squared modulus summed over both components, per row `j`.
    pub fn row_mass(&self, v: &[Complex64]) -> Vec<f64> {
        (0..self.ny)
            .map(|j| {
                (0..self.nx)
                    .map(|i| {
                        let a = v[self.unknown(0, i, j)].norm_sqr();
                        let b = v[self.unknown(1, i, j)].norm_sqr();
                        if j == 0 {
                            a
                        } else {
                            a + b
                        }
                    })
                    .sum()
            })
            .collect()
    }

    /// Orderings that make the operators banded: `x` outer or `y` outer,
    /// with the spinor index innermost. `perm[new] = old`.
    pub fn band_orderings(&self) -> [Vec<usize>; 2] {
        let mut x_outer = Vec::with_capacity(self.dim());
        for i in 0..self.nx {
            for j in 0..self.ny {
                self.push_node(&mut x_outer, i, j);
            }
        }
        let mut y_outer = Vec::with_capacity(self.dim());
        for j in 0..self.ny {
            for i in 0..self.nx {
                self.push_node(&mut y_outer, i, j);
            }
        }
        [x_outer, y_outer]
    }

    fn push_node(&self, out: &mut Vec<usize>, i: usize, j: usize) {
        out.push(self.unknown(0, i, j));
        if j > 0 {
            out.push(self.unknown(1, i, j));
        }
    }

    fn restrict(&self, u: &SpinorField) -> Vec<Complex64> {
        let n = self.nx * self.ny;
        let vals = u.values();
        let mut out = vals[..n].to_vec();
        out.extend_from_slice(&vals[n + self.nx..]);
        out
    }

    fn prolong(&self, grid: &Grid2D, v: &[Complex64]) -> Result<SpinorField> {
        let n = self.nx * self.ny;
        let mut vals = Vec::with_capacity(2 * n);
        vals.extend_from_slice(&v[..n]);
        vals.extend_from_slice(&v[..self.nx]);
        vals.extend_from_slice(&v[n..]);
        SpinorField::from_values(grid, vals)
    }
}

/// Assembled discrete operator; immutable and shareable across threads.
#[derive(Debug, Clone)]
pub struct HermitianOperator {
    matrix: CsrMatrix,
    kind: OperatorKind,
    layout: FieldLayout,
    grid: Option<Grid2D>,
    symmetrization_correction: f64,
}

impl HermitianOperator {
    pub fn matrix(&self) -> &CsrMatrix {
        &self.matrix
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn layout(&self) -> &FieldLayout {
        &self.layout
    }

    /// `None` for one-dimensional fiber operators.
    pub fn grid(&self) -> Option<&Grid2D> {
        self.grid.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.matrix.n()
    }

    /// Largest entry change made by the final `(M + M^H) / 2` step,
    /// relative to the largest entry.
    pub fn symmetrization_correction(&self) -> f64 {
        self.symmetrization_correction
    }

    /// Same operator with every entry multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        HermitianOperator {
            matrix: self.matrix.scaled(c),
            ..self.clone()
        }
    }

    fn build(matrix: CsrMatrix, kind: OperatorKind, layout: FieldLayout, grid: Option<Grid2D>) -> Result<Self> {
        let (matrix, correction) = matrix.symmetrized();
        let rel = correction / matrix.max_abs().max(f64::MIN_POSITIVE);
        if rel > 1e-13 {
            return Err(Error::Precondition(format!(
                "assembled matrix is not Hermitian (relative defect {rel:.3e})"
            )));
        }
        Ok(HermitianOperator {
            matrix,
            kind,
            layout,
            grid,
            symmetrization_correction: rel,
        })
    }
}

/// Second-order part in `x`: the three-point stencil, or a scalar symbol
/// on a single column.
#[derive(Debug, Clone, Copy)]
pub(crate) enum XPart {
    Stencil { hx: f64 },
    Scalar(f64),
}

impl XPart {
    /// Entries `(i', value)` of row `i` of `K + diag(shift)`.
    fn row(&self, nx: usize, i: usize, shift: f64) -> Vec<(usize, f64)> {
        match *self {
            XPart::Scalar(s) => vec![(i, s + shift)],
            XPart::Stencil { hx } => {
                let c = 1.0 / (hx * hx);
                let mut out = Vec::with_capacity(3);
                if i > 0 {
                    out.push((i - 1, -c));
                }
                out.push((i, 2.0 * c + shift));
                if i + 1 < nx {
                    out.push((i + 1, -c));
                }
                out
            }
        }
    }
}

#[inline]
fn row_weight(j: usize) -> f64 {
    if j == 0 {
        0.5
    } else {
        1.0
    }
}

/// Entries of the summation-by-parts matrix `Q` with `H^{-1} Q` the
/// first-derivative scheme in `y`: forward difference on the first row,
/// central differences elsewhere, zero ghost beyond the last row.
fn sbp_row(ny: usize, j: usize) -> Vec<(usize, f64)> {
    let mut out = Vec::with_capacity(2);
    if j == 0 {
        out.push((0, -0.5));
    } else {
        out.push((j - 1, -0.5));
    }
    if j + 1 < ny {
        out.push((j + 1, 0.5));
    }
    out
}

pub(crate) fn first_order_matrix(
    layout: &FieldLayout,
    xpart: XPart,
    delta: f64,
    v: &dyn Fn(usize, usize) -> f64,
    w: Option<&SampledPerturbation>,
) -> CsrMatrix {
    let (nx, ny, hy) = (layout.nx, layout.ny, layout.hy);
    let mut t = Vec::with_capacity(layout.dim() * 12);
    for j in 0..ny {
        let om = row_weight(j);
        for i in 0..nx {
            let r0 = layout.unknown(0, i, j);
            let r1 = layout.unknown(1, i, j);
            for (jj, q) in sbp_row(ny, j) {
                t.push((r0, layout.unknown(0, i, jj), -I * (q / hy)));
                t.push((r1, layout.unknown(1, i, jj), I * (q / hy)));
            }
            for (ii, l) in xpart.row(nx, i, delta + v(i, j)) {
                let val = Complex64::new(om * l, 0.0);
                t.push((r0, layout.unknown(1, ii, j), val));
                t.push((r1, layout.unknown(0, ii, j), val));
            }
            if let Some(w) = w {
                let k = j * nx + i;
                let e = w.epsilon * om;
                t.push((r0, r0, Complex64::new(e * w.w11[k], 0.0)));
                t.push((r0, r1, w.w12[k] * e));
                t.push((r1, r0, w.w21[k] * e));
                t.push((r1, r1, Complex64::new(e * w.w22[k], 0.0)));
            }
        }
    }
    CsrMatrix::from_triplets(layout.dim(), t)
}

pub(crate) fn square_form_matrix(
    layout: &FieldLayout,
    xpart: XPart,
    delta: f64,
    v: &dyn Fn(usize) -> f64,
) -> CsrMatrix {
    let (nx, ny, hy) = (layout.nx, layout.ny, layout.hy);
    let cy = 1.0 / (hy * hy);
    // L = K + delta + V(x), identical on every row j.
    let l_rows: Vec<Vec<(usize, f64)>> = (0..nx).map(|i| xpart.row(nx, i, delta + v(i))).collect();
    let mut l2_rows: Vec<Vec<(usize, f64)>> = Vec::with_capacity(nx);
    for i in 0..nx {
        let mut acc: Vec<(usize, f64)> = Vec::new();
        for &(k, a) in &l_rows[i] {
            for &(m, b) in &l_rows[k] {
                match acc.iter_mut().find(|(c, _)| *c == m) {
                    Some(e) => e.1 += a * b,
                    None => acc.push((m, a * b)),
                }
            }
        }
        l2_rows.push(acc);
    }
    let mut t = Vec::with_capacity(layout.dim() * 14);
    for comp in 0..2 {
        for j in 0..ny {
            let om = row_weight(j);
            for i in 0..nx {
                let r = layout.unknown(comp, i, j);
                // Forward differences with zero ghost past the last row.
                let diag_y = if j == 0 { cy } else { 2.0 * cy };
                t.push((r, r, Complex64::new(diag_y, 0.0)));
                if j + 1 < ny {
                    t.push((r, layout.unknown(comp, i, j + 1), Complex64::new(-cy, 0.0)));
                }
                if j > 0 {
                    t.push((r, layout.unknown(comp, i, j - 1), Complex64::new(-cy, 0.0)));
                }
                for &(m, val) in &l2_rows[i] {
                    t.push((r, layout.unknown(comp, m, j), Complex64::new(om * val, 0.0)));
                }
            }
        }
    }
    CsrMatrix::from_triplets(layout.dim(), t)
}

fn check_grid(grid: &Grid2D) -> Result<FieldLayout> {
    if grid.nx() < 3 || grid.ny() < 4 {
        return Err(Error::GridTooCoarse(format!(
            "need nx >= 3 and ny >= 4, got {}x{}",
            grid.nx(),
            grid.ny()
        )));
    }
    Ok(FieldLayout::new(grid.nx(), grid.ny(), grid.hy()))
}

/// Discrete free operator `T_h`.
pub fn assemble_t(grid: &Grid2D, params: &Params) -> Result<HermitianOperator> {
    assemble_h(grid, params, &PotentialSpec::None)
}

/// `T_h` plus a real scalar potential on both off-diagonal blocks.
pub fn assemble_h(grid: &Grid2D, params: &Params, potential: &PotentialSpec) -> Result<HermitianOperator> {
    let layout = check_grid(grid)?;
    if let PotentialSpec::PerturbationW(_) = potential {
        return Err(Error::invalid(
            "potential",
            "a matrix-valued perturbation is not a scalar potential; use assemble_h_eps",
        ));
    }
    potential.validate(grid)?;
    let v = |i, j| potential.scalar_at(grid, i, j);
    let m = first_order_matrix(&layout, XPart::Stencil { hx: grid.hx() }, params.delta(), &v, None);
    HermitianOperator::build(m, OperatorKind::FirstOrder, layout, Some(grid.clone()))
}

/// `T_h + eps W` for a self-adjoint perturbation matrix `W`.
pub fn assemble_h_eps(grid: &Grid2D, params: &Params, w: &PotentialSpec) -> Result<HermitianOperator> {
    let layout = check_grid(grid)?;
    let PotentialSpec::PerturbationW(s) = w else {
        return Err(Error::invalid("potential", "expected a perturbation matrix W"));
    };
    w.validate(grid)?;
    if !s.is_self_adjoint() {
        return Err(Error::invalid("potential", "W is not self-adjoint: w12 != conj(w21)"));
    }
    let m = first_order_matrix(
        &layout,
        XPart::Stencil { hx: grid.hx() },
        params.delta(),
        &|_, _| 0.0,
        Some(s),
    );
    HermitianOperator::build(m, OperatorKind::FirstOrder, layout, Some(grid.clone()))
}

/// [`assemble_h`] or [`assemble_h_eps`], whichever fits the potential.
pub fn assemble_operator(grid: &Grid2D, params: &Params, potential: &PotentialSpec) -> Result<HermitianOperator> {
    match potential {
        PotentialSpec::PerturbationW(_) => assemble_h_eps(grid, params, potential),
        _ => assemble_h(grid, params, potential),
    }
}

/// Square form `||d_y u||^2 + ||(-d_xx + delta + V) u||^2` for `V`
/// independent of `y`.
pub fn assemble_square_form(grid: &Grid2D, params: &Params, potential: &PotentialSpec) -> Result<HermitianOperator> {
    let layout = check_grid(grid)?;
    if !potential.is_y_independent() {
        return Err(Error::UnsupportedVariant(
            "the square form needs a potential that does not depend on y".into(),
        ));
    }
    potential.validate(grid)?;
    let v = |i| potential.scalar_at(grid, i, 0);
    let m = square_form_matrix(&layout, XPart::Stencil { hx: grid.hx() }, params.delta(), &v);
    HermitianOperator::build(m, OperatorKind::SquareForm, layout, Some(grid.clone()))
}

/// Operator for a one-column lattice where the `x` part is the scalar `s`.
pub(crate) fn assemble_column(ny: usize, hy: f64, s: f64, delta: f64, kind: OperatorKind) -> Result<HermitianOperator> {
    if ny < 4 {
        return Err(Error::GridTooCoarse(format!("need ny >= 4, got {ny}")));
    }
    let layout = FieldLayout::new(1, ny, hy);
    let m = match kind {
        OperatorKind::FirstOrder => first_order_matrix(&layout, XPart::Scalar(s), delta, &|_, _| 0.0, None),
        OperatorKind::SquareForm => square_form_matrix(&layout, XPart::Scalar(s), delta, &|_| 0.0),
    };
    HermitianOperator::build(m, kind, layout, None)
}

/// Matrix-vector product on fields. `u` must satisfy `u1 = u2` at `y = 0`.
pub fn apply(op: &HermitianOperator, u: &SpinorField) -> Result<SpinorField> {
    let grid = op
        .grid
        .as_ref()
        .ok_or_else(|| Error::invalid("op", "operator has no two-dimensional grid"))?;
    if u.grid() != grid {
        return Err(Error::Dimension {
            expected: 2 * grid.node_count(),
            found: u.values().len(),
        });
    }
    if !u.is_bc_admissible(0.0) {
        return Err(Error::invalid("u", "field violates u1 = u2 at y = 0"));
    }
    let x = op.layout.restrict(u);
    let y = op.matrix.mul(&x);
    op.layout.prolong(grid, &y)
}

/// `<u, M u>` in the weighted field pairing.
pub fn quadratic_form(op: &HermitianOperator, u: &SpinorField) -> Result<f64> {
    let mu = apply(op, u)?;
    Ok(crate::lattice::inner_product(u, &mu)?.re)
}

/// Coordinate-format text dump: a header line, then `row col re im` with
/// 0-based indices, one stored entry per line.
pub fn export_matrix_market<W: Write>(op: &HermitianOperator, mut out: W) -> io::Result<()> {
    writeln!(out, "%%MatrixMarket-compatible")?;
    for (r, c, v) in op.matrix.iter() {
        writeln!(out, "{r} {c} {:.16e} {:.16e}", v.re, v.im)?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{PerturbationProfile, Profile};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn grid() -> Grid2D {
        Grid2D::new(-3.0, 3.0, 4.0, 13, 9).unwrap()
    }

    fn params(d: f64) -> Params {
        Params::new(d).unwrap()
    }

    #[test]
    fn dimension_and_exact_hermiticity() {
        let g = grid();
        let t = assemble_t(&g, &params(1.0)).unwrap();
        assert_eq!(t.dim(), 2 * 13 * 9 - 13);
        assert_eq!(t.matrix().hermitian_defect(), 0.0);
        assert_eq!(t.symmetrization_correction(), 0.0);
        assert_eq!(t.kind(), OperatorKind::FirstOrder);
    }

    #[test]
    fn boundary_terms_cancel() {
        let g = grid();
        let t = assemble_t(&g, &params(1.0)).unwrap();
        for i in 0..g.nx() {
            // The +-i/(2 hy) boundary terms cancel; what remains is the
            // merged off-diagonal block 2 * (1/2) * (2/hx^2 + delta).
            let r = t.layout().unknown(0, i, 0);
            let expect = 2.0 / (g.hx() * g.hx()) + 1.0;
            assert_eq!(t.matrix().get(r, r), c(expect, 0.0));
        }
    }

    #[test]
    fn constant_field_maps_to_delta_in_interior() {
        let g = grid();
        let d = 1.7;
        let t = assemble_t(&g, &params(d)).unwrap();
        let u = SpinorField::from_fn(&g, |_, _| (c(1.0, 0.0), c(1.0, 0.0)));
        let tu = apply(&t, &u).unwrap();
        for j in 0..g.ny() - 1 {
            for i in 1..g.nx() - 1 {
                assert!((tu.u1(i, j) - c(d, 0.0)).norm() < 1e-12, "({i},{j}) {}", tu.u1(i, j));
                assert!((tu.u2(i, j) - c(d, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn box_entry_pattern() {
        let g = Grid2D::new(-2.0, 6.0, 6.0, 17, 13).unwrap();
        let p = PotentialSpec::box_xy(&g, 1.0, 3.0, -3.0).unwrap();
        let h = assemble_h(&g, &params(2.0), &p).unwrap();
        let t = assemble_t(&g, &params(2.0)).unwrap();
        let (i, j) = (g.nearest(2.0, 2.0).0, g.nearest(2.0, 2.0).1);
        let l = h.layout();
        let hx2 = 1.0 / (g.hx() * g.hx());
        assert!(
            (h.matrix().get(l.unknown(0, i, j), l.unknown(1, i, j)) - c(2.0 * hx2 + 2.0 - 3.0, 0.0)).norm() < 1e-12
        );
        assert_eq!(h.matrix().get(l.unknown(0, i, j), l.unknown(1, i + 1, j)), c(-hx2, 0.0));
        let none = assemble_h(&g, &params(2.0), &PotentialSpec::None).unwrap();
        assert_eq!(none.matrix(), t.matrix());
    }

    #[test]
    fn perturbation_reduces_to_scalar_potential() {
        let g = grid();
        let prof = Profile::Gaussian {
            x0: 0.0,
            y0: 1.0,
            sigma_x: 1.0,
            sigma_y: 0.7,
            amplitude: -0.8,
        };
        let eps = 0.3;
        let w = PotentialSpec::perturbation(&g, &PerturbationProfile::off_diagonal_real(prof.clone()), eps).unwrap();
        let he = assemble_h_eps(&g, &params(1.0), &w).unwrap();
        let scaled = Profile::Gaussian {
            x0: 0.0,
            y0: 1.0,
            sigma_x: 1.0,
            sigma_y: 0.7,
            amplitude: -0.8 * eps,
        };
        let v: Vec<f64> = (0..g.node_count())
            .map(|k| scaled.eval(g.x(k % g.nx()), g.y(k / g.nx())))
            .collect();
        let layout = check_grid(&g).unwrap();
        let m = first_order_matrix(
            &layout,
            XPart::Stencil { hx: g.hx() },
            1.0,
            &|i, j| v[j * g.nx() + i],
            None,
        );
        let diff = he
            .matrix()
            .iter()
            .map(|(r, col, z)| (z - m.get(r, col)).norm())
            .fold(0.0, f64::max);
        assert!(diff < 1e-14);

        let zero = PotentialSpec::perturbation(&g, &PerturbationProfile::off_diagonal_real(prof), 0.0).unwrap();
        let h0 = assemble_h_eps(&g, &params(1.0), &zero).unwrap();
        let t = assemble_t(&g, &params(1.0)).unwrap();
        for (r, col, z) in t.matrix().iter() {
            assert_eq!(h0.matrix().get(r, col), z);
        }
    }

    #[test]
    fn complex_perturbation_is_hermitian_and_non_adjoint_rejected() {
        let g = grid();
        let mut w = PerturbationProfile::default();
        w.w12.im = Profile::Constant { value: 0.4 };
        w.w21.im = Profile::Constant { value: -0.4 };
        w.w11 = Profile::Constant { value: 0.2 };
        let spec = PotentialSpec::perturbation(&g, &w, 1.0).unwrap();
        let h = assemble_h_eps(&g, &params(1.0), &spec).unwrap();
        assert_eq!(h.matrix().hermitian_defect(), 0.0);
        w.w21.im = Profile::Constant { value: 0.4 };
        let bad = PotentialSpec::perturbation(&g, &w, 1.0).unwrap();
        assert!(matches!(
            assemble_h_eps(&g, &params(1.0), &bad),
            Err(Error::InvalidInput { .. })
        ));
        assert!(matches!(
            assemble_h(&g, &params(1.0), &bad),
            Err(Error::InvalidInput { .. })
        ));
    }

    #[test]
    fn square_form_rejects_y_dependence() {
        let g = Grid2D::new(-2.0, 6.0, 6.0, 17, 13).unwrap();
        let p = PotentialSpec::box_xy(&g, 1.0, 3.0, -3.0).unwrap();
        assert!(matches!(
            assemble_square_form(&g, &params(1.0), &p),
            Err(Error::UnsupportedVariant(_))
        ));
        let q = assemble_square_form(&g, &params(1.0), &PotentialSpec::None).unwrap();
        assert_eq!(q.kind(), OperatorKind::SquareForm);
        assert_eq!(q.matrix().hermitian_defect(), 0.0);
    }

    #[test]
    fn apply_rejects_inadmissible_fields() {
        let g = grid();
        let t = assemble_t(&g, &params(1.0)).unwrap();
        let u = SpinorField::from_fn(&g, |_, _| (c(1.0, 0.0), c(0.0, 0.0)));
        assert!(apply(&t, &u).is_err());
        let other = Grid2D::new(-3.0, 3.0, 4.0, 12, 9).unwrap();
        assert!(matches!(
            apply(&t, &SpinorField::zeros(&other)),
            Err(Error::Dimension { .. })
        ));
        let z = apply(&t, &SpinorField::zeros(&g)).unwrap();
        assert!(z.values().iter().all(|v| *v == c(0.0, 0.0)));
    }

    #[test]
    fn export_format() {
        let g = Grid2D::new(0.0, 1.0, 1.0, 4, 4).unwrap();
        let t = assemble_t(&g, &params(1.0)).unwrap();
        let mut buf = Vec::new();
        export_matrix_market(&t, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("%%MatrixMarket-compatible"));
        assert_eq!(lines.clone().count(), t.matrix().nnz());
        let first: Vec<&str> = lines.next().unwrap().split(' ').collect();
        assert_eq!(first.len(), 4);
        assert_eq!(first[0], "0");
    }

    #[test]
    fn band_orderings_are_permutations() {
        let l = FieldLayout::new(5, 4, 0.5);
        for perm in l.band_orderings() {
            let mut seen = perm.clone();
            seen.sort_unstable();
            assert_eq!(seen, (0..l.dim()).collect::<Vec<_>>());
        }
    }
}
