//! Smooth bulk sources: sums of separable terms with Gaussian or
//! compact-bump profiles in time and space.
//!
//! Gaussian terms carry an exact four-dimensional Fourier transform in the
//! convention hat f(k0, k) = (2 pi)^{-2} Int f(t, x) e^{i(k0 t - k.x)} dt d3x,
//! which is what makes the momentum-space norm identities come out with
//! clean constants. Bump terms vanish identically outside their stated
//! support and are the family of choice for sharp causal-support checks.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TimeProfile {
    Gaussian { center: f64, width: f64 },
    Bump { center: f64, width: f64 },
}

impl TimeProfile {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            TimeProfile::Gaussian { center, width } => {
                let z = (t - center) / width;
                (-0.5 * z * z).exp()
            }
            TimeProfile::Bump { center, width } => bump(t - center, width),
        }
    }

    /// Half-width of the numerically relevant support.
    pub fn effective_radius(&self) -> f64 {
        match *self {
            TimeProfile::Gaussian { width, .. } => 6.0 * width,
            TimeProfile::Bump { width, .. } => width,
        }
    }

    pub fn center(&self) -> f64 {
        match *self {
            TimeProfile::Gaussian { center, .. } | TimeProfile::Bump { center, .. } => center,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceProfile {
    Gaussian { center: [f64; 3], width: f64 },
    Bump { center: [f64; 3], width: f64 },
}

impl SpaceProfile {
    pub fn eval(&self, x: [f64; 3]) -> f64 {
        match *self {
            SpaceProfile::Gaussian { center, width } => {
                let d2 = dist_sq(x, center);
                (-0.5 * d2 / (width * width)).exp()
            }
            SpaceProfile::Bump { center, width } => bump(dist_sq(x, center).sqrt(), width),
        }
    }

    pub fn effective_radius(&self) -> f64 {
        match *self {
            SpaceProfile::Gaussian { width, .. } => 6.0 * width,
            SpaceProfile::Bump { width, .. } => width,
        }
    }

    pub fn center(&self) -> [f64; 3] {
        match *self {
            SpaceProfile::Gaussian { center, .. } | SpaceProfile::Bump { center, .. } => center,
        }
    }
}

/// Smooth bump of unit height: exp(1 - w^2/(w^2 - d^2)) inside |d| < w,
/// identically zero outside.
fn bump(d: f64, w: f64) -> f64 {
    let d2 = d * d;
    let w2 = w * w;
    if d2 >= w2 {
        0.0
    } else {
        (1.0 - w2 / (w2 - d2)).exp()
    }
}

fn dist_sq(a: [f64; 3], b: [f64; 3]) -> f64 {
    (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceTerm {
    pub amplitude: f64,
    pub time: TimeProfile,
    pub space: SpaceProfile,
}

/// Closed-form smooth source on R^4: a sum of separable terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BulkSource {
    pub terms: Vec<SourceTerm>,
}

impl BulkSource {
    pub fn single_gaussian(amplitude: f64, t0: f64, s: f64, x0: [f64; 3], w: f64) -> Self {
        BulkSource {
            terms: vec![SourceTerm {
                amplitude,
                time: TimeProfile::Gaussian {
                    center: t0,
                    width: s,
                },
                space: SpaceProfile::Gaussian {
                    center: x0,
                    width: w,
                },
            }],
        }
    }

    pub fn eval(&self, t: f64, x: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|term| term.amplitude * term.time.eval(t) * term.space.eval(x))
            .sum()
    }

    pub fn all_gaussian(&self) -> bool {
        self.terms.iter().all(|term| {
            matches!(term.time, TimeProfile::Gaussian { .. })
                && matches!(term.space, SpaceProfile::Gaussian { .. })
        })
    }

    /// Analytic 4D Fourier transform; defined for all-Gaussian sources.
    pub fn fourier(&self, k0: f64, k: [f64; 3]) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for term in &self.terms {
            let (t0, s) = match term.time {
                TimeProfile::Gaussian { center, width } => (center, width),
                TimeProfile::Bump { .. } => return Err(Error::NonGaussianTerm),
            };
            let (x0, w) = match term.space {
                SpaceProfile::Gaussian { center, width } => (center, width),
                SpaceProfile::Bump { .. } => return Err(Error::NonGaussianTerm),
            };
            let k_sq = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
            let phase = k0 * t0 - (k[0] * x0[0] + k[1] * x0[1] + k[2] * x0[2]);
            let mag =
                term.amplitude * s * w.powi(3) * (-0.5 * (k0 * k0 * s * s + k_sq * w * w)).exp();
            acc += mag * Complex64::from_polar(1.0, phase);
        }
        Ok(acc)
    }

    /// Axis-aligned box containing the numerically relevant spatial support.
    pub fn support_box(&self) -> ([f64; 3], [f64; 3]) {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for term in &self.terms {
            let c = term.space.center();
            let r = term.space.effective_radius();
            for i in 0..3 {
                lo[i] = lo[i].min(c[i] - r);
                hi[i] = hi[i].max(c[i] + r);
            }
        }
        (lo, hi)
    }

    /// Interval of retarded times over which the boundary profile of this
    /// source is numerically supported (all directions).
    pub fn u_support(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for term in &self.terms {
            let t0 = term.time.center();
            let xc = term.space.center();
            let xr = (xc[0] * xc[0] + xc[1] * xc[1] + xc[2] * xc[2]).sqrt();
            // u-profile center spans t0 -+ |x0|; widths add in quadrature for
            // Gaussians, linearly for bumps.
            let spread = match (term.time, term.space) {
                (
                    TimeProfile::Gaussian { width: s, .. },
                    SpaceProfile::Gaussian { width: w, .. },
                ) => 6.0 * (s * s + w * w).sqrt(),
                _ => term.time.effective_radius() + term.space.effective_radius(),
            };
            lo = lo.min(t0 - xr - spread);
            hi = hi.max(t0 + xr + spread);
        }
        (lo, hi)
    }

    /// Largest Gaussian u-width of any term, useful for window sizing.
    pub fn max_u_width(&self) -> f64 {
        self.terms
            .iter()
            .map(|term| match (term.time, term.space) {
                (
                    TimeProfile::Gaussian { width: s, .. },
                    SpaceProfile::Gaussian { width: w, .. },
                ) => (s * s + w * w).sqrt(),
                _ => term.time.effective_radius() + term.space.effective_radius(),
            })
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: f64) -> BulkSource {
        BulkSource {
            terms: self
                .terms
                .iter()
                .map(|t| SourceTerm {
                    amplitude: c * t.amplitude,
                    ..*t
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gaussian_fourier_matches_direct_quadrature() {
        let src = BulkSource::single_gaussian(1.4, 0.6, 0.8, [0.4, -0.2, 0.1], 0.9);
        let k0 = 0.9;
        let k = [0.3, 0.5, -0.7];
        // direct 4D quadrature, separable
        let n = 200;
        let (tn, tw) = crate::numerics::gauss_legendre_on(n, 0.6 - 8.0, 0.6 + 8.0);
        let mut time_int = Complex64::new(0.0, 0.0);
        for (t, w) in tn.iter().zip(&tw) {
            time_int += w
                * (-0.5 * ((t - 0.6) / 0.8f64).powi(2)).exp()
                * Complex64::from_polar(1.0, k0 * t);
        }
        let mut space_int = Complex64::new(1.0, 0.0);
        for (axis, (&c, &kk)) in [0.4, -0.2, 0.1].iter().zip(&k).enumerate() {
            let (xn, xw) = crate::numerics::gauss_legendre_on(n, c - 9.0, c + 9.0);
            let mut acc = Complex64::new(0.0, 0.0);
            for (x, w) in xn.iter().zip(&xw) {
                acc += w
                    * (-0.5 * ((x - c) / 0.9f64).powi(2)).exp()
                    * Complex64::from_polar(1.0, -kk * x);
            }
            let _ = axis;
            space_int *= acc;
        }
        let direct = 1.4 * time_int * space_int / (2.0 * std::f64::consts::PI).powi(2);
        let analytic = src.fourier(k0, k).unwrap();
        assert_abs_diff_eq!(direct.re, analytic.re, epsilon = 1e-10);
        assert_abs_diff_eq!(direct.im, analytic.im, epsilon = 1e-10);
    }

    #[test]
    fn bump_vanishes_outside_support() {
        let src = BulkSource {
            terms: vec![SourceTerm {
                amplitude: 2.0,
                time: TimeProfile::Bump {
                    center: 1.0,
                    width: 0.5,
                },
                space: SpaceProfile::Bump {
                    center: [0.0, 0.0, 0.0],
                    width: 1.0,
                },
            }],
        };
        assert_eq!(src.eval(1.6, [0.0, 0.0, 0.0]), 0.0);
        assert_eq!(src.eval(1.0, [1.0, 0.0, 0.1]), 0.0);
        assert!(src.eval(1.0, [0.2, 0.0, 0.0]) > 0.0);
        assert_abs_diff_eq!(src.eval(1.0, [0.0; 3]), 2.0, epsilon = 1e-15);
        assert!(src.fourier(0.0, [0.0; 3]).is_err());
    }

    #[test]
    fn fourier_at_origin_is_volume_integral() {
        let src = BulkSource::single_gaussian(1.0, 0.0, 0.7, [0.0; 3], 1.1);
        // hat f(0,0) = (2 pi)^{-2} * A * (2 pi)^{1/2} s * (2 pi)^{3/2} w^3 = A s w^3
        let v = src.fourier(0.0, [0.0; 3]).unwrap();
        assert_abs_diff_eq!(v.re, 0.7 * 1.1f64.powi(3), epsilon = 1e-14);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-16);
    }
}
