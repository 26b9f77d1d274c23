//! Slow validation routes kept independent of the production numerics.
//!
//! These are never called from the transform or entropy paths; the
//! verification suite and the tests use them as second opinions.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::one_particle::LineProfile;

/// Regularized double-kernel evaluation of the one-particle inner product,
///
///   I(eps) = -(1/2pi) Iint f(u) h(u') / (u - u' - i eps)^2 du du',
///
/// extrapolated to eps -> 0 with two Richardson steps. The correlation
/// g(x) = Int f(u) h(u - x) du is formed by direct summation; the singular
/// x-integral is done cell by cell with the kernel antiderivative, so the
/// result stays accurate down to eps comparable to the grid spacing.
pub fn epsilon_kernel_inner(
    f: &LineProfile,
    h: &LineProfile,
    epsilons: &[f64],
) -> Result<Complex64> {
    if f.ugrid != h.ugrid {
        return Err(Error::GridMismatch("profiles on different u grids".into()));
    }
    assert!(
        epsilons.len() == 3 && epsilons[0] > epsilons[1] && epsilons[1] > epsilons[2],
        "need three decreasing epsilon values"
    );
    let n = f.samples.len();
    let du = f.ugrid.h();

    // correlation on the doubled grid x_m = m du, m = -(n-1) .. n-1
    let mut corr = vec![0.0f64; 2 * n - 1];
    for (m, c) in corr.iter_mut().enumerate() {
        let shift = m as isize - (n as isize - 1);
        let mut acc = 0.0;
        for j in 0..n {
            let jj = j as isize - shift;
            if jj >= 0 && (jj as usize) < n {
                acc += f.samples[j] * h.samples[jj as usize];
            }
        }
        *c = acc * du;
    }

    let eval = |eps: f64| -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        for m in 0..corr.len() - 1 {
            let x0 = (m as isize - (n as isize - 1)) as f64 * du;
            let x1 = x0 + du;
            let a = corr[m];
            let b = (corr[m + 1] - corr[m]) / du;
            let z0 = Complex64::new(x0, -eps);
            let z1 = Complex64::new(x1, -eps);
            // Int (a + b (x - x0)) / (x - i eps)^2 dx
            //   = a (1/z0 - 1/z1) + b (ln z1 - ln z0 + z0/z1 - 1)
            total += a * (1.0 / z0 - 1.0 / z1) + b * (z1.ln() - z0.ln() + z0 / z1 - 1.0);
        }
        -total / (2.0 * std::f64::consts::PI)
    };

    let v0 = eval(epsilons[0]);
    let v1 = eval(epsilons[1]);
    let v2 = eval(epsilons[2]);
    // kill the O(eps) term, then the O(eps^2) term
    let r1a = 2.0 * v1 - v0;
    let r1b = 2.0 * v2 - v1;
    Ok((4.0 * r1b - r1a) / 3.0)
}

/// Second central difference with uniform step.
pub fn second_difference(sm: f64, s0: f64, sp: f64, delta: f64) -> f64 {
    (sp - 2.0 * s0 + sm) / (delta * delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::UGrid;

    #[test]
    fn kernel_inner_positive_on_diagonal() {
        let ug = UGrid::new(-14.0, 14.0, 1024).unwrap();
        let f = LineProfile::from_fn(ug, |u| (-0.5 * (u - 0.5) * (u - 0.5)).exp());
        let v = epsilon_kernel_inner(&f, &f, &[0.1, 0.05, 0.025]).unwrap();
        assert!(v.re > 0.0, "diagonal kernel value {v}");
        assert!(v.im.abs() < 1e-3 * v.re);
    }
}
