//! Shared numerical kernels: Gauss–Legendre rules, finite-difference stencils,
//! cubic-spline interpolation, real spherical harmonics, and fit helpers.

/// Gauss–Legendre nodes and weights on [-1, 1].
///
/// Newton iteration on the Legendre recurrence; accurate to ~1e-15 for the
/// node counts used here (n <= a few hundred).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and derivative by upward recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Gauss–Legendre rule mapped to [a, b].
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (
        x.iter().map(|&t| mid + half * t).collect(),
        w.iter().map(|&ww| ww * half).collect(),
    )
}

/// Fourth-order first derivative of uniformly sampled data.
///
/// Central five-point stencil in the interior, one-sided five-point stencils
/// at the two boundary pairs.
pub fn derivative_4th(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    assert!(n >= 5, "need at least 5 samples for the 4th-order stencil");
    let mut d = vec![0.0; n];
    let ih = 1.0 / (12.0 * h);
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * ih;
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * ih;
    for i in 2..n - 2 {
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * ih;
    }
    d[n - 2] =
        (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) * ih;
    d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4]
        + 3.0 * f[n - 5])
        * ih;
    d
}

/// Trapezoid rule on uniformly sampled data.
pub fn trapezoid(f: &[f64], h: f64) -> f64 {
    if f.len() < 2 {
        return 0.0;
    }
    let inner: f64 = f[1..f.len() - 1].iter().sum();
    h * (0.5 * (f[0] + f[f.len() - 1]) + inner)
}

/// Natural cubic spline through uniformly spaced samples.
///
/// Evaluation outside [x0, x0 + (n-1) h] returns 0, matching the
/// zero-extension convention for windowed boundary data.
pub struct CubicSpline {
    x0: f64,
    h: f64,
    y: Vec<f64>,
    /// Second derivatives at the knots.
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn fit_uniform(x0: f64, h: f64, y: &[f64]) -> Self {
        let n = y.len();
        assert!(n >= 4);
        // Tridiagonal system for natural spline second derivatives:
        //   m[0] = m[n-1] = 0,  m[i-1] + 4 m[i] + m[i+1] = 6 (y[i-1] - 2y[i] + y[i+1]) / h^2
        let mut m = vec![0.0; n];
        let mut c_prime = vec![0.0; n];
        let mut d_prime = vec![0.0; n];
        let rhs = |i: usize| 6.0 * (y[i - 1] - 2.0 * y[i] + y[i + 1]) / (h * h);
        c_prime[1] = 1.0 / 4.0;
        d_prime[1] = rhs(1) / 4.0;
        for i in 2..n - 1 {
            let denom = 4.0 - c_prime[i - 1];
            c_prime[i] = 1.0 / denom;
            d_prime[i] = (rhs(i) - d_prime[i - 1]) / denom;
        }
        for i in (1..n - 1).rev() {
            m[i] = d_prime[i] - c_prime[i] * m[i + 1];
        }
        CubicSpline {
            x0,
            h,
            y: y.to_vec(),
            m,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.y.len();
        let t = (x - self.x0) / self.h;
        if t < 0.0 || t > (n - 1) as f64 {
            return 0.0;
        }
        let i = (t.floor() as usize).min(n - 2);
        let a = t - i as f64; // in [0, 1]
        let b = 1.0 - a;
        let h2 = self.h * self.h / 6.0;
        b * self.y[i]
            + a * self.y[i + 1]
            + h2 * ((b * b * b - b) * self.m[i] + (a * a * a - a) * self.m[i + 1])
    }
}

/// Least-squares slope of log|y| against log x.
///
/// Used to fit decay and convergence exponents.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let pts: Vec<(f64, f64)> = x
        .iter()
        .zip(y)
        .filter(|(_, &yy)| yy.abs() > 0.0)
        .map(|(&xx, &yy)| (xx.ln(), yy.abs().ln()))
        .collect();
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Real orthonormal spherical harmonic Y_{l m} at a unit direction.
///
/// Convention: m > 0 pairs with cos(m phi), m < 0 with sin(|m| phi);
/// normalized so that the Y_{l m} are orthonormal on the unit sphere.
pub fn real_sph_harm(l: usize, m: i32, n: [f64; 3]) -> f64 {
    let cos_theta = n[2].clamp(-1.0, 1.0);
    let phi = n[1].atan2(n[0]);
    let mu = m.unsigned_abs() as usize;
    let p = assoc_legendre(l, mu, cos_theta);
    let norm = sph_norm(l, mu);
    if m > 0 {
        std::f64::consts::SQRT_2 * norm * p * (mu as f64 * phi).cos()
    } else if m < 0 {
        std::f64::consts::SQRT_2 * norm * p * (mu as f64 * phi).sin()
    } else {
        norm * p
    }
}

/// Associated Legendre P_l^m(x) without Condon–Shortley phase absorbed into
/// the normalization (the (-1)^m cancels in the squared norm and is kept here).
fn assoc_legendre(l: usize, m: usize, x: f64) -> f64 {
    assert!(m <= l);
    let somx2 = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
    // P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}
    let mut pmm = 1.0;
    let mut fact = 1.0;
    for _ in 0..m {
        pmm *= -fact * somx2;
        fact += 2.0;
    }
    if l == m {
        return pmm;
    }
    let mut pmmp1 = x * (2.0 * m as f64 + 1.0) * pmm;
    if l == m + 1 {
        return pmmp1;
    }
    let mut pll = 0.0;
    for ll in (m + 2)..=l {
        let llf = ll as f64;
        let mf = m as f64;
        pll = ((2.0 * llf - 1.0) * x * pmmp1 - (llf + mf - 1.0) * pmm) / (llf - mf);
        pmm = pmmp1;
        pmmp1 = pll;
    }
    pll
}

fn sph_norm(l: usize, m: usize) -> f64 {
    // sqrt((2l+1)/(4 pi) * (l-m)!/(l+m)!)
    let mut ratio = 1.0;
    for k in (l - m + 1)..=(l + m) {
        ratio /= k as f64;
    }
    ((2.0 * l as f64 + 1.0) / (4.0 * std::f64::consts::PI) * ratio).sqrt()
}
