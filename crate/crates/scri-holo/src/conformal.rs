//! Built-in conformal factors chi with closed-form null derivatives.
//!
//! The metric is chi^2 times the flat metric; every family here is a
//! function of t alone, so radial derivatives vanish and the null
//! derivative reduces to d_u = (d_t - d_r) / 2.

use serde::{Deserialize, Serialize};

/// Strictly positive smooth conformal factor on R^4.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConformalFactor {
    /// chi = 1 (flat spacetime).
    One,
    /// chi = exp(lambda t).
    ExpTime { lambda: f64 },
    /// chi = (1 + a t^2)^{1/2}, a >= 0.
    RationalTime { a: f64 },
}

impl ConformalFactor {
    pub fn value(&self, t: f64, _r: f64) -> f64 {
        match *self {
            ConformalFactor::One => 1.0,
            ConformalFactor::ExpTime { lambda } => (lambda * t).exp(),
            ConformalFactor::RationalTime { a } => (1.0 + a * t * t).sqrt(),
        }
    }

    /// d chi / du at (t, r), with d_u = (d_t - d_r)/2.
    pub fn du(&self, t: f64, _r: f64) -> f64 {
        match *self {
            ConformalFactor::One => 0.0,
            ConformalFactor::ExpTime { lambda } => 0.5 * lambda * (lambda * t).exp(),
            ConformalFactor::RationalTime { a } => {
                let chi = (1.0 + a * t * t).sqrt();
                0.5 * a * t / chi
            }
        }
    }

    /// d^2 chi / du^2 at (t, r).
    pub fn du2(&self, t: f64, _r: f64) -> f64 {
        match *self {
            ConformalFactor::One => 0.0,
            ConformalFactor::ExpTime { lambda } => 0.25 * lambda * lambda * (lambda * t).exp(),
            ConformalFactor::RationalTime { a } => {
                // chi'' along u: a (chi^2 - a t^2) / (4 chi^3) with chi^2 - a t^2 = 1
                let chi = (1.0 + a * t * t).sqrt();
                0.25 * a / (chi * chi * chi)
            }
        }
    }

    pub fn cubed(&self, t: f64, r: f64) -> f64 {
        let v = self.value(t, r);
        v * v * v
    }

    pub fn is_flat(&self) -> bool {
        matches!(self, ConformalFactor::One)
    }

    pub fn validate(&self) -> crate::error::Result<()> {
        if let ConformalFactor::RationalTime { a } = self {
            if *a < 0.0 {
                return Err(crate::error::Error::Config(format!(
                    "rational_time conformal factor needs a >= 0, got {a}"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Central difference of chi along u at fixed v (t and r move together:
    /// dt/du = 1/2, dr/du = -1/2).
    fn du_fd(chi: &ConformalFactor, t: f64, r: f64, eps: f64) -> f64 {
        let val = |du: f64| chi.value(t + 0.5 * du, r - 0.5 * du);
        (val(eps) - val(-eps)) / (2.0 * eps)
    }

    fn du2_fd(chi: &ConformalFactor, t: f64, r: f64, eps: f64) -> f64 {
        let val = |du: f64| chi.value(t + 0.5 * du, r - 0.5 * du);
        (val(eps) - 2.0 * val(0.0) + val(-eps)) / (eps * eps)
    }

    #[test]
    fn analytic_null_derivatives_match_finite_differences() {
        let cases = [
            ConformalFactor::One,
            ConformalFactor::ExpTime { lambda: 0.1 },
            ConformalFactor::ExpTime { lambda: -0.25 },
            ConformalFactor::RationalTime { a: 0.7 },
        ];
        for chi in cases {
            for &(t, r) in &[(0.0, 1.0), (1.7, 3.0), (-2.2, 0.5)] {
                let fd = du_fd(&chi, t, r, 1e-5);
                let an = chi.du(t, r);
                assert!(
                    (fd - an).abs() <= 1e-6 * (1.0 + an.abs()),
                    "du mismatch for {chi:?} at ({t},{r}): {an} vs {fd}"
                );
                let fd2 = du2_fd(&chi, t, r, 1e-4);
                let an2 = chi.du2(t, r);
                assert!(
                    (fd2 - an2).abs() <= 1e-6 * (1.0 + an2.abs()),
                    "du2 mismatch for {chi:?} at ({t},{r}): {an2} vs {fd2}"
                );
            }
        }
    }

    #[test]
    fn positivity_across_the_window() {
        let cases = [
            ConformalFactor::One,
            ConformalFactor::ExpTime { lambda: 0.1 },
            ConformalFactor::RationalTime { a: 2.0 },
        ];
        for chi in cases {
            for i in -50..50 {
                let t = i as f64 * 2.0;
                assert!(chi.value(t, 1.0) > 0.0);
            }
        }
    }

    #[test]
    fn rational_time_rejects_negative_coefficient() {
        assert!(ConformalFactor::RationalTime { a: -0.5 }
            .validate()
            .is_err());
        assert!(ConformalFactor::RationalTime { a: 0.5 }.validate().is_ok());
    }
}
