use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Closed-form real function on the half-plane.
///
/// These are the potential shapes a run can be configured with; the
/// assembly path samples them on the grid, the trial-function path
/// integrates them with Gauss rules split at their discontinuities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Profile {
    Zero,
    Constant {
        value: f64,
    },
    /// `value` on the closed rectangle `[x0, x1] x [y0, y1]`, zero elsewhere.
    Rect {
        x0: f64,
        x1: f64,
        y0: f64,
        y1: f64,
        value: f64,
    },
    Gaussian {
        x0: f64,
        y0: f64,
        sigma_x: f64,
        sigma_y: f64,
        amplitude: f64,
    },
    /// Smooth compactly supported bump in `x` only, equal to `height` at
    /// `center` and vanishing outside `|x - center| < half_width`.
    BumpX {
        center: f64,
        half_width: f64,
        height: f64,
    },
}

/// Gaussians are treated as supported on `+-GAUSS_CUT` standard deviations.
const GAUSS_CUT: f64 = 9.0;

impl Profile {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match *self {
            Profile::Zero => 0.0,
            Profile::Constant { value } => value,
            Profile::Rect { x0, x1, y0, y1, value } => {
                let tol = 1e-12 * (1.0 + x0.abs().max(x1.abs()).max(y0.abs()).max(y1.abs()));
                if x >= x0 - tol && x <= x1 + tol && y >= y0 - tol && y <= y1 + tol {
                    value
                } else {
                    0.0
                }
            }
            Profile::Gaussian {
                x0,
                y0,
                sigma_x,
                sigma_y,
                amplitude,
            } => {
                let a = (x - x0) / sigma_x;
                let b = (y - y0) / sigma_y;
                amplitude * (-0.5 * (a * a + b * b)).exp()
            }
            Profile::BumpX {
                center,
                half_width,
                height,
            } => {
                let s = (x - center) / half_width;
                if s.abs() < 1.0 {
                    height * (1.0 - 1.0 / (1.0 - s * s)).exp()
                } else {
                    0.0
                }
            }
        }
    }

    /// Bounding box `[x0, x1, y0, y1]` of the support, `None` when unbounded.
    pub fn support(&self) -> Option<[f64; 4]> {
        match *self {
            Profile::Zero => Some([0.0, 0.0, 0.0, 0.0]),
            Profile::Constant { value: 0.0 } => Some([0.0, 0.0, 0.0, 0.0]),
            Profile::Constant { .. } | Profile::BumpX { .. } => None,
            Profile::Rect { x0, x1, y0, y1, .. } => Some([x0, x1, y0.max(0.0), y1]),
            Profile::Gaussian {
                x0,
                y0,
                sigma_x,
                sigma_y,
                ..
            } => Some([
                x0 - GAUSS_CUT * sigma_x,
                x0 + GAUSS_CUT * sigma_x,
                (y0 - GAUSS_CUT * sigma_y).max(0.0),
                y0 + GAUSS_CUT * sigma_y,
            ]),
        }
    }

    pub fn is_zero(&self) -> bool {
        match *self {
            Profile::Zero => true,
            Profile::Constant { value } | Profile::Rect { value, .. } => value == 0.0,
            Profile::Gaussian { amplitude, .. } => amplitude == 0.0,
            Profile::BumpX { height, .. } => height == 0.0,
        }
    }

    /// Independent of `y`.
    pub fn is_x_only(&self) -> bool {
        matches!(self, Profile::Zero | Profile::Constant { .. } | Profile::BumpX { .. }) || self.is_zero()
    }

    pub fn is_nonnegative(&self) -> bool {
        match *self {
            Profile::Zero => true,
            Profile::Constant { value } | Profile::Rect { value, .. } => value >= 0.0,
            Profile::Gaussian { amplitude, .. } => amplitude >= 0.0,
            Profile::BumpX { height, .. } => height >= 0.0,
        }
    }

    /// Lines across which the profile is discontinuous or changes formula:
    /// `(x_breaks, y_breaks)`.
    pub fn breaks(&self) -> (Vec<f64>, Vec<f64>) {
        match *self {
            Profile::Rect { x0, x1, y0, y1, .. } => (vec![x0, x1], vec![y0.max(0.0), y1]),
            Profile::BumpX { center, half_width, .. } => {
                (vec![center - half_width, center, center + half_width], vec![])
            }
            _ => (vec![], vec![]),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        match *self {
            Profile::Zero => Ok(()),
            Profile::Constant { value } => finite(&[value]).then_some(()).ok_or("non-finite constant".into()),
            Profile::Rect { x0, x1, y0, y1, value } => {
                if !finite(&[x0, x1, y0, y1, value]) || x0 >= x1 || y0 >= y1 {
                    Err(format!("degenerate rectangle [{x0}, {x1}] x [{y0}, {y1}]"))
                } else {
                    Ok(())
                }
            }
            Profile::Gaussian {
                x0,
                y0,
                sigma_x,
                sigma_y,
                amplitude,
            } => {
                if !finite(&[x0, y0, sigma_x, sigma_y, amplitude]) || sigma_x <= 0.0 || sigma_y <= 0.0 {
                    Err("gaussian needs finite centre and positive widths".into())
                } else {
                    Ok(())
                }
            }
            Profile::BumpX {
                center,
                half_width,
                height,
            } => {
                if !finite(&[center, half_width, height]) || half_width <= 0.0 {
                    Err("bump needs a positive half width".into())
                } else {
                    Ok(())
                }
            }
        }
    }
}

/// Complex closed form `re + i*im`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexProfile {
    pub re: Profile,
    #[serde(default = "zero_profile")]
    pub im: Profile,
}

fn zero_profile() -> Profile {
    Profile::Zero
}

impl ComplexProfile {
    pub fn real(re: Profile) -> Self {
        ComplexProfile { re, im: Profile::Zero }
    }

    pub fn zero() -> Self {
        Self::real(Profile::Zero)
    }

    pub fn eval(&self, x: f64, y: f64) -> Complex64 {
        Complex64::new(self.re.eval(x, y), self.im.eval(x, y))
    }
}

/// Closed-form 2x2 perturbation `W = [[w11, w12], [w21, w22]]` with real
/// diagonal entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerturbationProfile {
    #[serde(default = "zero_profile")]
    pub w11: Profile,
    pub w12: ComplexProfile,
    pub w21: ComplexProfile,
    #[serde(default = "zero_profile")]
    pub w22: Profile,
}

impl Default for PerturbationProfile {
    fn default() -> Self {
        Self::off_diagonal_real(Profile::Zero)
    }
}

impl PerturbationProfile {
    /// `w11 = w22 = 0`, `w12 = w21 = v` real: the case in which the literal
    /// and re-derived criteria coincide.
    pub fn off_diagonal_real(v: Profile) -> Self {
        PerturbationProfile {
            w11: Profile::Zero,
            w12: ComplexProfile::real(v.clone()),
            w21: ComplexProfile::real(v),
            w22: Profile::Zero,
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> [Complex64; 4] {
        [
            Complex64::new(self.w11.eval(x, y), 0.0),
            self.w12.eval(x, y),
            self.w21.eval(x, y),
            Complex64::new(self.w22.eval(x, y), 0.0),
        ]
    }

    fn parts(&self) -> [&Profile; 6] {
        [
            &self.w11,
            &self.w12.re,
            &self.w12.im,
            &self.w21.re,
            &self.w21.im,
            &self.w22,
        ]
    }

    /// Union bounding box of all entries; `None` if any entry is unbounded.
    pub fn support(&self) -> Option<[f64; 4]> {
        let mut bb: Option<[f64; 4]> = None;
        for p in self.parts() {
            if p.is_zero() {
                continue;
            }
            let s = p.support()?;
            bb = Some(match bb {
                None => s,
                Some(b) => [b[0].min(s[0]), b[1].max(s[1]), b[2].min(s[2]), b[3].max(s[3])],
            });
        }
        Some(bb.unwrap_or([0.0; 4]))
    }

    pub fn breaks(&self) -> (Vec<f64>, Vec<f64>) {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for p in self.parts() {
            let (bx, by) = p.breaks();
            xs.extend(bx);
            ys.extend(by);
        }
        (xs, ys)
    }

    pub fn validate(&self) -> Result<(), String> {
        self.parts().iter().try_for_each(|p| p.validate())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rect_is_closed() {
        let r = Profile::Rect {
            x0: 0.0,
            x1: 1.0,
            y0: 0.0,
            y1: 1.0,
            value: -1.0,
        };
        assert_eq!(r.eval(0.0, 0.0), -1.0);
        assert_eq!(r.eval(1.0, 0.5), -1.0);
        assert_eq!(r.eval(1.01, 0.5), 0.0);
        assert!(!r.is_x_only());
        assert!(!r.is_nonnegative());
    }

    #[test]
    fn bump_peak_and_support() {
        let b = Profile::BumpX {
            center: 1.0,
            half_width: 2.0,
            height: 1.0,
        };
        assert_eq!(b.eval(1.0, 7.0), 1.0);
        assert_eq!(b.eval(3.0, 0.0), 0.0);
        assert!(b.eval(2.0, 0.0) > 0.0 && b.eval(2.0, 0.0) < 1.0);
        assert!(b.is_x_only() && b.is_nonnegative());
    }

    #[test]
    fn perturbation_support_union() {
        let mut w = PerturbationProfile::off_diagonal_real(Profile::Rect {
            x0: -0.5,
            x1: 0.5,
            y0: 0.0,
            y1: 1.0,
            value: -1.0,
        });
        assert_eq!(w.support(), Some([-0.5, 0.5, 0.0, 1.0]));
        w.w11 = Profile::Rect {
            x0: 1.0,
            x1: 2.0,
            y0: 2.0,
            y1: 3.0,
            value: 0.5,
        };
        assert_eq!(w.support(), Some([-0.5, 2.0, 0.0, 3.0]));
        w.w22 = Profile::Constant { value: 1.0 };
        assert_eq!(w.support(), None);
    }

    #[test]
    fn serde_shape() {
        let p: Profile = serde_json::from_str(r#"{"kind":"rect","x0":0,"x1":1,"y0":0,"y1":1,"value":-1}"#).unwrap();
        assert!(matches!(p, Profile::Rect { .. }));
        assert!(
            serde_json::from_str::<Profile>(r#"{"kind":"rect","x0":0,"x1":1,"y0":0,"y1":1,"value":-1,"z":2}"#).is_err()
        );
    }
}
