use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{sample, Grid2D, PerturbationProfile, Profile};
use crate::error::{Error, Result};

/// Grid-sampled perturbation matrix `epsilon * W`, one entry per node.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPerturbation {
    pub w11: Vec<f64>,
    pub w12: Vec<Complex64>,
    pub w21: Vec<Complex64>,
    pub w22: Vec<f64>,
    pub epsilon: f64,
}

impl SampledPerturbation {
    /// `w12 = conj(w21)` at every node, exactly.
    pub fn is_self_adjoint(&self) -> bool {
        self.w12.iter().zip(&self.w21).all(|(a, b)| *a == b.conj())
    }
}

/// Potential term added to the free operator.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSpec {
    None,
    /// `value` on `[a, b] x [a, b]`, placed on the off-diagonal.
    BoxXY {
        a: f64,
        b: f64,
        value: f64,
    },
    /// Off-diagonal `V(x)`, one sample per `x` node.
    XOnly {
        values: Vec<f64>,
    },
    PerturbationW(SampledPerturbation),
}

impl PotentialSpec {
    pub fn box_xy(grid: &Grid2D, a: f64, b: f64, value: f64) -> Result<Self> {
        let p = PotentialSpec::BoxXY { a, b, value };
        p.validate(grid)?;
        Ok(p)
    }

    pub fn x_only(grid: &Grid2D, values: Vec<f64>) -> Result<Self> {
        let p = PotentialSpec::XOnly { values };
        p.validate(grid)?;
        Ok(p)
    }

    /// Samples an `x`-only profile on the grid's `x` nodes.
    pub fn x_only_from(grid: &Grid2D, profile: &Profile) -> Result<Self> {
        if !profile.is_x_only() {
            return Err(Error::UnsupportedVariant("profile depends on y".into()));
        }
        profile.validate().map_err(|e| Error::invalid("potential", e))?;
        let values = (0..grid.nx()).map(|i| profile.eval(grid.x(i), 0.0)).collect();
        Self::x_only(grid, values)
    }

    pub fn perturbation(grid: &Grid2D, w: &PerturbationProfile, epsilon: f64) -> Result<Self> {
        w.validate().map_err(|e| Error::invalid("perturbation", e))?;
        let re = |p: &Profile| sample(grid, |x, y| p.eval(x, y)).map(|f| f.into_values());
        let cx = |re_p: &Profile, im_p: &Profile| -> Result<Vec<Complex64>> {
            let r = re(re_p)?;
            let i = re(im_p)?;
            Ok(r.into_iter().zip(i).map(|(a, b)| Complex64::new(a, b)).collect())
        };
        let sampled = SampledPerturbation {
            w11: re(&w.w11)?,
            w12: cx(&w.w12.re, &w.w12.im)?,
            w21: cx(&w.w21.re, &w.w21.im)?,
            w22: re(&w.w22)?,
            epsilon,
        };
        let p = PotentialSpec::PerturbationW(sampled);
        p.validate(grid)?;
        Ok(p)
    }

    pub fn validate(&self, grid: &Grid2D) -> Result<()> {
        match self {
            PotentialSpec::None => Ok(()),
            PotentialSpec::BoxXY { a, b, value } => {
                if !(a.is_finite() && b.is_finite() && value.is_finite()) {
                    return Err(Error::invalid("potential.box", "non-finite parameter"));
                }
                if !(0.0 < *a && a < b) {
                    return Err(Error::invalid(
                        "potential.box",
                        format!("need 0 < a < b, got a={a}, b={b}"),
                    ));
                }
                if !grid.contains_rect(*a, *b, *a, *b) {
                    return Err(Error::invalid(
                        "potential.box",
                        format!("box [{a}, {b}]^2 lies outside the grid"),
                    ));
                }
                Ok(())
            }
            PotentialSpec::XOnly { values } => {
                if values.len() != grid.nx() {
                    return Err(Error::Dimension {
                        expected: grid.nx(),
                        found: values.len(),
                    });
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::invalid("potential.x_only", "non-finite sample"));
                }
                Ok(())
            }
            PotentialSpec::PerturbationW(w) => {
                let n = grid.node_count();
                for len in [w.w11.len(), w.w12.len(), w.w21.len(), w.w22.len()] {
                    if len != n {
                        return Err(Error::Dimension {
                            expected: n,
                            found: len,
                        });
                    }
                }
                if !w.epsilon.is_finite() {
                    return Err(Error::invalid("potential.epsilon", "non-finite"));
                }
                Ok(())
            }
        }
    }

    /// Off-diagonal scalar potential at node `(i, j)` for the `None`,
    /// `BoxXY` and `XOnly` variants.
    pub(crate) fn scalar_at(&self, grid: &Grid2D, i: usize, j: usize) -> f64 {
        match self {
            PotentialSpec::None | PotentialSpec::PerturbationW(_) => 0.0,
            PotentialSpec::BoxXY { a, b, value } => {
                let (x, y) = (grid.x(i), grid.y(j));
                let tol = 1e-12 * (1.0 + b.abs());
                if x >= a - tol && x <= b + tol && y >= a - tol && y <= b + tol {
                    *value
                } else {
                    0.0
                }
            }
            PotentialSpec::XOnly { values } => values[i],
        }
    }

    pub fn is_y_independent(&self) -> bool {
        matches!(self, PotentialSpec::None | PotentialSpec::XOnly { .. })
    }
}

/// Grid-independent description of the potential term, sampled onto a
/// grid with [`PotentialModel::on`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialModel {
    #[default]
    None,
    /// Constant `value` on `[a, b] x [a, b]`.
    Box { a: f64, b: f64, value: f64 },
    /// `y`-independent profile.
    XOnly { profile: Profile },
    /// `epsilon * W`.
    Perturbation { w: PerturbationProfile, epsilon: f64 },
}

impl PotentialModel {
    pub fn on(&self, grid: &Grid2D) -> Result<PotentialSpec> {
        match self {
            PotentialModel::None => Ok(PotentialSpec::None),
            PotentialModel::Box { a, b, value } => PotentialSpec::box_xy(grid, *a, *b, *value),
            PotentialModel::XOnly { profile } => PotentialSpec::x_only_from(grid, profile),
            PotentialModel::Perturbation { w, epsilon } => PotentialSpec::perturbation(grid, w, *epsilon),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            PotentialModel::None => true,
            PotentialModel::Box { value, .. } => *value == 0.0,
            PotentialModel::XOnly { profile } => profile.is_zero(),
            PotentialModel::Perturbation { w, epsilon } => *epsilon == 0.0 || *w == PerturbationProfile::default(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Grid2D {
        Grid2D::new(-5.0, 5.0, 6.0, 21, 13).unwrap()
    }

    #[test]
    fn box_must_fit() {
        let g = grid();
        assert!(PotentialSpec::box_xy(&g, 1.0, 3.0, -1.0).is_ok());
        assert!(PotentialSpec::box_xy(&g, 0.0, 3.0, -1.0).is_err());
        assert!(PotentialSpec::box_xy(&g, 3.0, 1.0, -1.0).is_err());
        assert!(PotentialSpec::box_xy(&g, 1.0, 7.0, -1.0).is_err());
    }

    #[test]
    fn box_membership_includes_edges() {
        let g = grid();
        let p = PotentialSpec::box_xy(&g, 1.0, 3.0, -2.0).unwrap();
        // x nodes at -5 + 0.5 i, y nodes at 0.5 j
        assert_eq!(p.scalar_at(&g, 12, 2), -2.0); // (1, 1)
        assert_eq!(p.scalar_at(&g, 16, 6), -2.0); // (3, 3)
        assert_eq!(p.scalar_at(&g, 17, 6), 0.0);
    }

    #[test]
    fn x_only_requires_y_independence() {
        let g = grid();
        let rect = Profile::Rect {
            x0: 0.0,
            x1: 1.0,
            y0: 0.0,
            y1: 1.0,
            value: 1.0,
        };
        assert!(matches!(
            PotentialSpec::x_only_from(&g, &rect),
            Err(Error::UnsupportedVariant(_))
        ));
        assert!(PotentialSpec::x_only(&g, vec![0.0; 3]).is_err());
        let ok = PotentialSpec::x_only_from(&g, &Profile::Constant { value: 1.0 }).unwrap();
        assert_eq!(ok.scalar_at(&g, 3, 7), 1.0);
    }

    #[test]
    fn self_adjoint_flag() {
        let g = grid();
        let mut w = PerturbationProfile::off_diagonal_real(Profile::Rect {
            x0: -0.5,
            x1: 0.5,
            y0: 0.0,
            y1: 1.0,
            value: -1.0,
        });
        w.w12.im = Profile::Gaussian {
            x0: 0.0,
            y0: 1.0,
            sigma_x: 1.0,
            sigma_y: 1.0,
            amplitude: 0.3,
        };
        let PotentialSpec::PerturbationW(s) = PotentialSpec::perturbation(&g, &w, 0.1).unwrap() else {
            unreachable!()
        };
        assert!(!s.is_self_adjoint());
        w.w21.im = Profile::Gaussian {
            x0: 0.0,
            y0: 1.0,
            sigma_x: 1.0,
            sigma_y: 1.0,
            amplitude: -0.3,
        };
        let PotentialSpec::PerturbationW(s) = PotentialSpec::perturbation(&g, &w, 0.1).unwrap() else {
            unreachable!()
        };
        assert!(s.is_self_adjoint());
    }
}
