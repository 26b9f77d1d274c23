//! Relative entropy of coherent boundary data on deformed cones, the
//! modular flow and quadratic form of half-strips, null energy checks, and
//! distorted translations/dilations.
//!
//! Per angle, the entropy of a profile above a cut value c is
//!
//!   S(n) = pi Int_c^inf (u - c) (d_u psi)^2 du,
//!
//! summed over the sphere with quadrature weights. The cut rarely lands on
//! a grid node; all tail integrals run against the piecewise-cubic
//! interpolant of (d_u psi)^2, with the cell containing the cut integrated
//! exactly. The scan value, its first and its second deformation derivative
//! are then exact derivatives of one another, which is what the
//! finite-difference cross-checks require.
//!
//! The modular group of the half-strip acts per angle as dilation about the
//! cut: flow(s) resamples psi at c + e^{2 pi s}(u - c). Its generator pairs
//! with the field through K psi = -2 pi i (u - c) d_u psi, and
//! -Re <psi, K psi> reproduces the entropy quadrature; the sign pairing is
//! pinned by positivity and by the inclusion direction of nested strips.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::CutFunction;
use crate::grid::{e_profile_of, BoundaryField, UGrid, DEFAULT_PAD};
use crate::numerics::trapezoid;
use crate::one_particle::complex_inner_spectra;

/// Tolerance below which a deformation profile value counts as negative.
const DEFORMATION_TOL: f64 = -1e-12;

/// Fields are accepted as supported above a cut when their amplitude below
/// it stays under this fraction of the peak.
pub const SUPPORT_RTOL: f64 = 1e-6;

/// Total and per-angle relative entropy of a coherent boundary profile on a
/// deformed cone.
#[derive(Debug, Clone, Serialize)]
pub struct EntropyReport {
    pub total: f64,
    /// Entropy density per sphere node, before quadrature weights.
    pub per_angle: Vec<f64>,
    /// Cut values at the sphere nodes.
    pub cut_values: Vec<f64>,
    pub n_theta: usize,
    pub n_phi: usize,
    pub n_u: usize,
    pub u_min: f64,
    pub u_max: f64,
}

impl EntropyReport {
    /// CSV rows (node, cut, density), RFC 4180 line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("node,cut,density\r\n");
        for (k, (&c, &d)) in self.cut_values.iter().zip(&self.per_angle).enumerate() {
            out.push_str(&format!("{k},{c:.17e},{d:.17e}\r\n"));
        }
        out
    }
}

/// Entropy, first and second deformation derivatives along C + t A.
#[derive(Debug, Clone, Serialize)]
pub struct DeformationScan {
    pub t: Vec<f64>,
    pub s: Vec<f64>,
    pub s_prime: Vec<f64>,
    pub s_second: Vec<f64>,
    pub s_second_fd: Vec<f64>,
}

impl DeformationScan {
    /// CSV rows (t, S, S', S'', S''_fd), RFC 4180 line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,s,s_prime,s_second,s_second_fd\r\n");
        for i in 0..self.t.len() {
            out.push_str(&format!(
                "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}\r\n",
                self.t[i], self.s[i], self.s_prime[i], self.s_second[i], self.s_second_fd[i]
            ));
        }
        out
    }
}

/// Averaged null energy of a profile against a positive angular weight,
/// computed along two routes that must agree.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AnecValue {
    /// (1/2) Iint A (d_u psi)^2 du dS^2 in u space (the returned value).
    pub u_route: f64,
    /// The same through E^2 |hat psi|^2 quadratures.
    pub e_route: f64,
}

impl AnecValue {
    pub fn value(&self) -> f64 {
        self.u_route
    }
}

/// Monomial coefficients of the cubic interpolant of q on cell j, in the
/// local variable s = (u - u_j)/h of that cell. The four-point stencil is
/// centered where possible and shifted at the window edges; adjacent cells
/// share interpolated node values, so the piecewise interpolant is
/// continuous and the entropy is twice differentiable in the cut.
fn cell_cubic(q: &[f64], j: usize) -> [f64; 4] {
    let n = q.len();
    let base = j.saturating_sub(1).min(n - 4);
    let o = (j - base) as f64;
    let y = &q[base..base + 4];
    let d1 = y[1] - y[0];
    let d2 = y[2] - 2.0 * y[1] + y[0];
    let d3 = y[3] - 3.0 * y[2] + 3.0 * y[1] - y[0];
    // Newton form in sigma = (u - u_base)/h, then shifted to s = sigma - o
    let a0 = y[0];
    let a1 = d1 - d2 / 2.0 + d3 / 3.0;
    let a2 = d2 / 2.0 - d3 / 2.0;
    let a3 = d3 / 6.0;
    [
        a0 + o * (a1 + o * (a2 + o * a3)),
        a1 + o * (2.0 * a2 + 3.0 * o * a3),
        a2 + 3.0 * a3 * o,
        a3,
    ]
}

fn crossing_cell(ugrid: UGrid, ell: f64) -> (usize, f64) {
    let h = ugrid.h();
    let j = ((((ell - ugrid.u_min) / h).floor()) as usize).min(ugrid.n - 2);
    let s0 = ((ell - ugrid.node(j)) / h).clamp(0.0, 1.0);
    (j, s0)
}

/// Integral of (u - ell) q(u) over [ell, u_max], with q replaced by its
/// piecewise-cubic interpolant; exact on the partial cell containing ell.
pub(crate) fn weighted_tail(q: &[f64], ugrid: UGrid, ell: f64) -> f64 {
    let h = ugrid.h();
    let n = ugrid.n;
    if ell >= ugrid.u_max {
        return 0.0;
    }
    let (j, s0) = crossing_cell(ugrid, ell);
    // partial cell: h^2 Int_{s0}^{1} (s - s0) p(s) ds
    let c = cell_cubic(q, j);
    let mut partial = 0.0;
    for (m, &cm) in c.iter().enumerate() {
        let mf = m as f64;
        let int_s = (1.0 - s0.powi(m as i32 + 2)) / (mf + 2.0);
        let int_1 = (1.0 - s0.powi(m as i32 + 1)) / (mf + 1.0);
        partial += cm * (int_s - s0 * int_1);
    }
    let mut acc = h * h * partial;
    // full cells beyond: Int (u - ell) p_i = h (u_i - ell) P_i + h^2 Q_i with
    // P_i, Q_i the zeroth and first moments of the cell cubic
    for i in j + 1..n - 1 {
        let c = cell_cubic(q, i);
        let p = c[0] + c[1] / 2.0 + c[2] / 3.0 + c[3] / 4.0;
        let qm = c[0] / 2.0 + c[1] / 3.0 + c[2] / 4.0 + c[3] / 5.0;
        acc += h * (ugrid.node(i) - ell) * p + h * h * qm;
    }
    acc
}

/// Integral of q(u) over [ell, u_max] with the same piecewise-cubic rule.
fn tail(q: &[f64], ugrid: UGrid, ell: f64) -> f64 {
    let h = ugrid.h();
    let n = ugrid.n;
    if ell >= ugrid.u_max {
        return 0.0;
    }
    let (j, s0) = crossing_cell(ugrid, ell);
    let c = cell_cubic(q, j);
    let mut partial = 0.0;
    for (m, &cm) in c.iter().enumerate() {
        partial += cm * (1.0 - s0.powi(m as i32 + 1)) / (m as f64 + 1.0);
    }
    let mut acc = h * partial;
    for i in j + 1..n - 1 {
        let c = cell_cubic(q, i);
        acc += h * (c[0] + c[1] / 2.0 + c[2] / 3.0 + c[3] / 4.0);
    }
    acc
}

/// Cell-cubic interpolation of q at ell, clamped at zero so a sampled
/// squared density stays a square (cubic overshoot near zeros of q would
/// otherwise leak a sign).
fn interp_density(q: &[f64], ugrid: UGrid, ell: f64) -> f64 {
    if ell < ugrid.u_min || ell > ugrid.u_max {
        return 0.0;
    }
    let (j, s0) = crossing_cell(ugrid, ell);
    let c = cell_cubic(q, j);
    (c[0] + s0 * (c[1] + s0 * (c[2] + s0 * c[3]))).max(0.0)
}

fn cut_values_checked(psi: &BoundaryField, cut: &CutFunction) -> Result<Vec<f64>> {
    let values = cut.values_on(psi.sphere())?;
    let u_min = psi.ugrid().u_min;
    for (node, &c) in values.iter().enumerate() {
        if c < u_min {
            return Err(Error::CutOutsideWindow {
                node,
                cut: c,
                u_min,
            });
        }
        if !c.is_finite() {
            return Err(Error::Config(format!("cut not finite at node {node}")));
        }
    }
    Ok(values)
}

fn deformation_values(psi: &BoundaryField, a: &CutFunction) -> Result<Vec<f64>> {
    let values = a.values_on(psi.sphere())?;
    for (node, &v) in values.iter().enumerate() {
        if v < DEFORMATION_TOL {
            return Err(Error::NegativeDeformation { node, value: v });
        }
    }
    Ok(values)
}

/// Squared u-derivative of every node profile.
fn energy_density(psi: &BoundaryField) -> Vec<Vec<f64>> {
    let d = psi.d_du();
    (0..psi.sphere().len())
        .map(|k| d.profile(k).iter().map(|v| v * v).collect())
        .collect()
}

/// Relative entropy of the coherent state of psi on the deformed cone of the
/// cut, pi Iint (u - C) (d_u psi)^2 du dS^2.
pub fn entropy(psi: &BoundaryField, cut: &CutFunction) -> Result<EntropyReport> {
    let cuts = cut_values_checked(psi, cut)?;
    let q = energy_density(psi);
    entropy_from_density(psi, &q, &cuts)
}

fn entropy_from_density(
    psi: &BoundaryField,
    q: &[Vec<f64>],
    cuts: &[f64],
) -> Result<EntropyReport> {
    let ugrid = psi.ugrid();
    let sphere = psi.sphere();
    let per_angle: Vec<f64> = q
        .par_iter()
        .zip(cuts.par_iter())
        .map(|(qk, &c)| std::f64::consts::PI * weighted_tail(qk, ugrid, c))
        .collect();
    let total: f64 = per_angle
        .iter()
        .zip(sphere.weights())
        .map(|(&s, &w)| w * s)
        .sum();
    Ok(EntropyReport {
        total,
        per_angle,
        cut_values: cuts.to_vec(),
        n_theta: sphere.n_theta(),
        n_phi: sphere.n_phi(),
        n_u: ugrid.n,
        u_min: ugrid.u_min,
        u_max: ugrid.u_max,
    })
}

/// d/dt of the entropy along the deformation C + t A:
/// -pi Iint A (d_u psi)^2 du dS^2 over the shifted cone.
pub fn entropy_derivative(
    psi: &BoundaryField,
    cut: &CutFunction,
    deformation: &CutFunction,
    t: f64,
) -> Result<f64> {
    let cuts = cut_values_checked(psi, cut)?;
    let defs = deformation_values(psi, deformation)?;
    let q = energy_density(psi);
    Ok(derivative_from_density(psi, &q, &cuts, &defs, t))
}

fn derivative_from_density(
    psi: &BoundaryField,
    q: &[Vec<f64>],
    cuts: &[f64],
    defs: &[f64],
    t: f64,
) -> f64 {
    let ugrid = psi.ugrid();
    let sphere = psi.sphere();
    let parts: Vec<f64> = q
        .par_iter()
        .enumerate()
        .map(|(k, qk)| {
            let ell = cuts[k] + t * defs[k];
            -std::f64::consts::PI * sphere.weight(k) * defs[k] * tail(qk, ugrid, ell)
        })
        .collect();
    parts.iter().sum()
}

/// d^2/dt^2 of the entropy along C + t A:
/// pi Int A^2 (d_u psi)^2 at the moving cut, nonnegative by construction.
pub fn entropy_second_derivative(
    psi: &BoundaryField,
    cut: &CutFunction,
    deformation: &CutFunction,
    t: f64,
) -> Result<f64> {
    let cuts = cut_values_checked(psi, cut)?;
    let defs = deformation_values(psi, deformation)?;
    let q = energy_density(psi);
    Ok(second_derivative_from_density(psi, &q, &cuts, &defs, t))
}

fn second_derivative_from_density(
    psi: &BoundaryField,
    q: &[Vec<f64>],
    cuts: &[f64],
    defs: &[f64],
    t: f64,
) -> f64 {
    let ugrid = psi.ugrid();
    let sphere = psi.sphere();
    let parts: Vec<f64> = q
        .par_iter()
        .enumerate()
        .map(|(k, qk)| {
            let ell = cuts[k] + t * defs[k];
            std::f64::consts::PI
                * sphere.weight(k)
                * defs[k]
                * defs[k]
                * interp_density(qk, ugrid, ell)
        })
        .collect();
    parts.iter().sum()
}

/// Averaged null energy against a positive angular weight. No cut is
/// involved; the u integral runs over the whole line.
pub fn anec(psi: &BoundaryField, weight: &CutFunction) -> Result<AnecValue> {
    let a = deformation_values(psi, weight)?;
    let ugrid = psi.ugrid();
    let sphere = psi.sphere();
    let d = psi.d_du();
    let per_node: Vec<(f64, f64)> = (0..sphere.len())
        .into_par_iter()
        .map(|k| {
            let q: Vec<f64> = d.profile(k).iter().map(|v| v * v).collect();
            let u_val = 0.5 * trapezoid(&q, ugrid.h());
            // spectral route: Int_0^inf E^2 |hat psi|^2 dE
            let spec = e_profile_of(psi.profile(k), ugrid, DEFAULT_PAD);
            let mut e_val = 0.0;
            for (j, v) in spec.values.iter().enumerate().skip(1) {
                let e = j as f64 * spec.de;
                e_val += e * e * v.norm_sqr();
            }
            e_val *= spec.de;
            (
                sphere.weight(k) * a[k] * u_val,
                sphere.weight(k) * a[k] * e_val,
            )
        })
        .collect();
    let u_route: f64 = per_node.iter().map(|p| p.0).sum();
    let e_route: f64 = per_node.iter().map(|p| p.1).sum();
    Ok(AnecValue { u_route, e_route })
}

/// Residual of strong superadditivity saturation:
/// |S(min) + S(max) - S(C1) - S(C2)| / max(1, S(C1) + S(C2)).
pub fn superadditivity_residual(
    psi: &BoundaryField,
    c1: &CutFunction,
    c2: &CutFunction,
) -> Result<f64> {
    let sphere = psi.sphere();
    let lo = c1.pointwise_min(c2, sphere)?;
    let hi = c1.pointwise_max(c2, sphere)?;
    let q = energy_density(psi);
    let s = |c: &CutFunction| -> Result<f64> {
        let cuts = cut_values_checked(psi, c)?;
        Ok(entropy_from_density(psi, &q, &cuts)?.total)
    };
    let s1 = s(c1)?;
    let s2 = s(c2)?;
    let s_lo = s(&lo)?;
    let s_hi = s(&hi)?;
    Ok((s_lo + s_hi - s1 - s2).abs() / (s1 + s2).max(1.0))
}

fn check_support(psi: &BoundaryField, cuts: &[f64]) -> Result<()> {
    let peak = psi.peak();
    if peak == 0.0 {
        return Ok(());
    }
    let ugrid = psi.ugrid();
    for (node, &c) in cuts.iter().enumerate() {
        let mut worst = 0.0f64;
        for (i, &v) in psi.profile(node).iter().enumerate() {
            if ugrid.node(i) < c {
                worst = worst.max(v.abs());
            } else {
                break;
            }
        }
        if worst > SUPPORT_RTOL * peak {
            return Err(Error::SupportViolation {
                node,
                cut: c,
                amplitude: worst,
            });
        }
    }
    Ok(())
}

/// Modular flow of the half-strip: per angle, dilation about the cut,
/// (flow(s) psi)(u, n) = psi(C(n) + e^{2 pi s} (u - C(n)), n).
///
/// Requires psi to be supported above the cut; flowing for s <= 0 keeps the
/// support above any larger cut (the half-sided inclusion direction).
pub fn modular_flow(psi: &BoundaryField, cut: &CutFunction, s: f64) -> Result<BoundaryField> {
    let cuts = cut_values_checked(psi, cut)?;
    check_support(psi, &cuts)?;
    let rate = (2.0 * std::f64::consts::PI * s).exp();
    psi.resample(move |k, u| cuts[k] + rate * (u - cuts[k]))
}

/// Modular quadratic form -Re <psi, K psi> with K psi = -2 pi i (u-C) d_u psi,
/// evaluated through the spectral inner product. Contract: equals the
/// entropy quadrature for fields supported above the cut.
pub fn modular_form(psi: &BoundaryField, cut: &CutFunction) -> Result<f64> {
    let cuts = cut_values_checked(psi, cut)?;
    check_support(psi, &cuts)?;
    let d = psi.d_du();
    let ugrid = psi.ugrid();
    let sphere = psi.sphere();
    let parts: Vec<f64> = (0..sphere.len())
        .into_par_iter()
        .map(|k| {
            // K psi = i g with g = -2 pi (u - C) d_u psi, so
            // -Re <psi, K psi> = Im <psi, g>.
            let g: Vec<f64> = d
                .profile(k)
                .iter()
                .enumerate()
                .map(|(i, &dv)| -2.0 * std::f64::consts::PI * (ugrid.node(i) - cuts[k]) * dv)
                .collect();
            let fp = e_profile_of(psi.profile(k), ugrid, DEFAULT_PAD);
            let gp = e_profile_of(&g, ugrid, DEFAULT_PAD);
            let ip = complex_inner_spectra(&fp, &gp).expect("same window by construction");
            sphere.weight(k) * ip.im
        })
        .collect();
    Ok(parts.iter().sum())
}

/// Distorted lightlike translation (T_C psi)(u, n) = psi(u - C(n), n).
pub fn distorted_translate(psi: &BoundaryField, cut: &CutFunction) -> Result<BoundaryField> {
    let cuts = cut.values_on(psi.sphere())?;
    psi.resample(move |k, u| u - cuts[k])
}

/// Distorted lightlike dilation (D_C psi)(u, n) = psi(e^{-C(n)} u, n).
pub fn distorted_dilate(psi: &BoundaryField, cut: &CutFunction) -> Result<BoundaryField> {
    let cuts = cut.values_on(psi.sphere())?;
    psi.resample(move |k, u| (-cuts[k]).exp() * u)
}

/// Entropy scan along C + t A with analytic derivatives and a finite
/// difference cross-check of the second derivative.
pub fn deformation_scan(
    psi: &BoundaryField,
    cut: &CutFunction,
    deformation: &CutFunction,
    t_min: f64,
    t_max: f64,
    steps: usize,
) -> Result<DeformationScan> {
    assert!(steps >= 5, "scan needs at least 5 points");
    assert!(t_max > t_min);
    let cuts = cut_values_checked(psi, cut)?;
    let defs = deformation_values(psi, deformation)?;
    let q = energy_density(psi);
    let dt = (t_max - t_min) / (steps - 1) as f64;
    let t: Vec<f64> = (0..steps).map(|i| t_min + dt * i as f64).collect();

    let mut s = Vec::with_capacity(steps);
    let mut s1 = Vec::with_capacity(steps);
    let mut s2 = Vec::with_capacity(steps);
    for &tv in &t {
        let shifted: Vec<f64> = cuts.iter().zip(&defs).map(|(&c, &a)| c + tv * a).collect();
        s.push(entropy_from_density(psi, &q, &shifted)?.total);
        s1.push(derivative_from_density(psi, &q, &cuts, &defs, tv));
        s2.push(second_derivative_from_density(psi, &q, &cuts, &defs, tv));
    }
    let mut s2_fd = vec![0.0; steps];
    for i in 0..steps {
        s2_fd[i] = if i == 0 {
            (2.0 * s[0] - 5.0 * s[1] + 4.0 * s[2] - s[3]) / (dt * dt)
        } else if i == steps - 1 {
            (2.0 * s[steps - 1] - 5.0 * s[steps - 2] + 4.0 * s[steps - 3] - s[steps - 4])
                / (dt * dt)
        } else {
            (s[i + 1] - 2.0 * s[i] + s[i - 1]) / (dt * dt)
        };
    }
    Ok(DeformationScan {
        t,
        s,
        s_prime: s1,
        s_second: s2,
        s_second_fd: s2_fd,
    })
}

/// Entropy difference between two coherent states reduces to the entropy of
/// the difference profile.
pub fn relative_entropy_between(
    psi: &BoundaryField,
    phi: &BoundaryField,
    cut: &CutFunction,
) -> Result<EntropyReport> {
    if !psi.same_grids(phi) {
        return Err(Error::GridMismatch(
            "coherent pair on different grids".into(),
        ));
    }
    let mut diff = psi.clone();
    diff.add_scaled(-1.0, phi)?;
    entropy(&diff, cut)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::SphereGrid;
    use approx::assert_abs_diff_eq;
    use std::sync::Arc;

    fn sphere() -> Arc<SphereGrid> {
        SphereGrid::new(8, 16).unwrap()
    }

    fn ug() -> UGrid {
        UGrid::new(-12.0, 12.0, 1024).unwrap()
    }

    fn unit_gaussian() -> BoundaryField {
        BoundaryField::from_fn(sphere(), ug(), |_, u| (-0.5 * u * u).exp())
    }

    /// Smooth profile compactly supported on [lo, hi].
    fn bump_field(lo: f64, hi: f64) -> BoundaryField {
        let c = 0.5 * (lo + hi);
        let w = 0.5 * (hi - lo);
        BoundaryField::from_fn(sphere(), ug(), move |_, u| {
            let d2 = (u - c) * (u - c);
            if d2 >= w * w {
                0.0
            } else {
                (1.0 - w * w / (w * w - d2)).exp()
            }
        })
    }

    #[test]
    fn entropy_of_zero_field_is_zero() {
        let z = BoundaryField::zeros(sphere(), ug());
        let r = entropy(&z, &CutFunction::Constant(0.0)).unwrap();
        assert_eq!(r.total, 0.0);
    }

    #[test]
    fn entropy_spot_value_unit_gaussian() {
        // pi * 4 pi * Int_0^inf u^3 e^{-u^2} du = 2 pi^2
        let f = unit_gaussian();
        let r = entropy(&f, &CutFunction::Constant(0.0)).unwrap();
        let expect = 2.0 * std::f64::consts::PI * std::f64::consts::PI;
        assert!(
            (r.total - expect).abs() / expect <= 1e-6,
            "entropy {} vs {expect}",
            r.total
        );
        // report invariant: total equals the weighted sphere sum
        let check: f64 = r
            .per_angle
            .iter()
            .zip(f.sphere().weights())
            .map(|(&s, &w)| s * w)
            .sum();
        assert_abs_diff_eq!(check, r.total, epsilon = 1e-12 * r.total);
        assert!(r.total >= 0.0);
    }

    #[test]
    fn entropy_vanishes_below_cut_support() {
        let f = bump_field(-5.0, -1.0);
        let r = entropy(&f, &CutFunction::Constant(0.0)).unwrap();
        assert!(r.total.abs() <= 1e-10, "locality violated: {}", r.total);
    }

    #[test]
    fn entropy_cut_outside_window_rejected() {
        let f = unit_gaussian();
        let err = entropy(&f, &CutFunction::Constant(-13.0)).unwrap_err();
        assert!(matches!(err, Error::CutOutsideWindow { .. }));
    }

    #[test]
    fn entropy_quadratic_scaling_and_monotonicity() {
        let f = unit_gaussian();
        let c = CutFunction::Constant(-0.4);
        let s1 = entropy(&f, &c).unwrap().total;
        let s2 = entropy(&f.scaled(2.0), &c).unwrap().total;
        assert_abs_diff_eq!(s2, 4.0 * s1, epsilon = 1e-12 * s2);
        // larger cut, smaller strip, smaller entropy
        let mut prev = f64::INFINITY;
        for c in [-2.0, -1.0, 0.0, 0.7, 1.5] {
            let s = entropy(&f, &CutFunction::Constant(c)).unwrap().total;
            assert!(s <= prev + 1e-12, "monotonicity violated at cut {c}");
            prev = s;
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let f = unit_gaussian();
        let c = CutFunction::Constant(-0.3);
        let a = CutFunction::HarmonicSum {
            coeffs: vec![0.8, 0.1, 0.15, -0.05],
        };
        // keep A positive: Y00 dominates
        let t = 0.2;
        let d_analytic = entropy_derivative(&f, &c, &a, t).unwrap();
        let delta = 1e-3;
        let sphere_grid = f.sphere().clone();
        let sp = |tt: f64| {
            let shifted = c.shifted_by(&a, tt, &sphere_grid).unwrap();
            entropy(&f, &shifted).unwrap().total
        };
        let d_fd = (sp(t + delta) - sp(t - delta)) / (2.0 * delta);
        assert!(
            (d_analytic - d_fd).abs() <= 1e-5 * d_analytic.abs().max(1e-30),
            "derivative {d_analytic} vs fd {d_fd}"
        );
        // zero deformation, zero derivative
        assert_eq!(
            entropy_derivative(&f, &c, &CutFunction::Constant(0.0), 0.5).unwrap(),
            0.0
        );
    }

    #[test]
    fn negative_deformation_rejected() {
        let f = unit_gaussian();
        let err = entropy_derivative(
            &f,
            &CutFunction::Constant(0.0),
            &CutFunction::Constant(-0.5),
            0.0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NegativeDeformation { .. }));
    }

    #[test]
    fn second_derivative_nonnegative_and_matches_fd() {
        let f = unit_gaussian();
        let c = CutFunction::Constant(-0.5);
        let a = CutFunction::Constant(1.0);
        let scan = deformation_scan(&f, &c, &a, 0.0, 0.3, 21).unwrap();
        for (i, (&s2, &s2fd)) in scan.s_second.iter().zip(&scan.s_second_fd).enumerate() {
            assert!(s2 >= 0.0, "analytic S'' negative at {i}");
            if s2 > 1e-8 && i > 0 && i + 1 < scan.t.len() {
                assert!(
                    (s2 - s2fd).abs() <= 1e-3 * s2,
                    "S'' mismatch at t={}: {s2} vs {s2fd}",
                    scan.t[i]
                );
            }
        }
        // monotone nonincreasing along positive deformations
        for w in scan.s.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
        // and the derivative is nonpositive throughout
        for &d in &scan.s_prime {
            assert!(d <= 1e-12);
        }
    }

    #[test]
    fn second_derivative_zero_when_derivative_vanishes_at_cut() {
        // profile flat around the cut locus: d_u psi = 0 there
        let f = bump_field(2.0, 6.0);
        let v = entropy_second_derivative(
            &f,
            &CutFunction::Constant(0.0),
            &CutFunction::Constant(1.0),
            0.0,
        )
        .unwrap();
        assert!(v.abs() <= 1e-10, "expected vanishing density, got {v}");
    }

    #[test]
    fn anec_spot_value_and_route_agreement() {
        let f = unit_gaussian();
        let a = anec(&f, &CutFunction::Constant(1.0)).unwrap();
        let expect = std::f64::consts::PI.powf(1.5);
        assert!(
            (a.value() - expect).abs() / expect <= 1e-6,
            "anec {} vs {expect}",
            a.value()
        );
        assert!(
            (a.u_route - a.e_route).abs() / a.u_route <= 1e-6,
            "route disagreement {} vs {}",
            a.u_route,
            a.e_route
        );
        let z = BoundaryField::zeros(sphere(), ug());
        assert_eq!(anec(&z, &CutFunction::Constant(1.0)).unwrap().value(), 0.0);
    }

    #[test]
    fn superadditivity_saturates() {
        let f = BoundaryField::from_fn(sphere(), ug(), |n, u| {
            (1.0 + 0.3 * n[2]) * (-0.5 * (u - 1.0) * (u - 1.0)).exp()
        });
        // identical cuts
        let c = CutFunction::Constant(0.2);
        assert!(superadditivity_residual(&f, &c, &c).unwrap() <= 1e-14);
        // antipodal linear cuts: at each node one of min/max equals C1, C2
        let c1 = CutFunction::Apex {
            t: 0.0,
            x: [0.0, 0.0, -0.3],
        };
        let c2 = CutFunction::Apex {
            t: 0.0,
            x: [0.0, 0.0, 0.3],
        };
        assert!(superadditivity_residual(&f, &c1, &c2).unwrap() <= 1e-12);
        // random harmonic cuts
        let h1 = CutFunction::HarmonicSum {
            coeffs: vec![0.1, 0.2, -0.15, 0.07, 0.02, -0.05, 0.0, 0.04, -0.01],
        };
        let h2 = CutFunction::HarmonicSum {
            coeffs: vec![-0.2, 0.05, 0.2, -0.1],
        };
        assert!(superadditivity_residual(&f, &h1, &h2).unwrap() <= 1e-10);
    }

    #[test]
    fn modular_flow_identity_support_and_group_law() {
        let f = bump_field(1.0, 7.0);
        let c = CutFunction::Constant(0.0);
        let id = modular_flow(&f, &c, 0.0).unwrap();
        let max_dev = id
            .samples()
            .iter()
            .zip(f.samples())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(max_dev <= 1e-13, "s = 0 flow not identity: {max_dev}");

        let s1 = 0.08;
        let s2 = -0.05;
        let f1 = modular_flow(&f, &c, s1).unwrap();
        let f12 = modular_flow(&f1, &c, s2).unwrap();
        let f_sum = modular_flow(&f, &c, s1 + s2).unwrap();
        let peak = f.peak();
        let max_err = f12
            .samples()
            .iter()
            .zip(f_sum.samples())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(
            max_err <= 2e-4 * peak,
            "group law violated at {max_err} (peak {peak})"
        );

        // support stays above the cut
        for sflow in [0.15, -0.15] {
            let flowed = modular_flow(&f, &c, sflow).unwrap();
            for k in 0..flowed.sphere().len() {
                for (i, &v) in flowed.profile(k).iter().enumerate() {
                    if flowed.ugrid().node(i) < 0.0 {
                        assert!(v.abs() <= 1e-10 * peak, "support leaked below cut");
                    }
                }
            }
        }
    }

    #[test]
    fn modular_flow_rejects_unsupported_field() {
        let f = unit_gaussian(); // straddles u = 0
        let err = modular_flow(&f, &CutFunction::Constant(0.0), 0.1).unwrap_err();
        assert!(matches!(err, Error::SupportViolation { .. }));
    }

    #[test]
    fn half_sided_inclusion_direction() {
        // psi supported above C2 = C1 + A; flowing with the modular group of
        // C1 at negative parameter keeps the support above C2
        let f = bump_field(1.5, 7.0);
        let c1 = CutFunction::Constant(0.0);
        let c2_value = 1.0; // C2 = C1 + A with A = 1
        for t in [0.05, 0.2] {
            let flowed = modular_flow(&f, &c1, -t).unwrap();
            let peak = f.peak();
            for k in 0..flowed.sphere().len() {
                for (i, &v) in flowed.profile(k).iter().enumerate() {
                    if flowed.ugrid().node(i) < c2_value {
                        assert!(
                            v.abs() <= 1e-9 * peak,
                            "half-sided inclusion violated at t={t}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn modular_form_matches_entropy_and_is_flow_invariant() {
        let f = BoundaryField::from_fn(sphere(), ug(), |n, u| {
            (1.0 + 0.2 * n[2]) * (-0.5 * (u - 4.5) * (u - 4.5)).exp()
        });
        let c = CutFunction::Constant(-1.0);
        let s_quad = entropy(&f, &c).unwrap().total;
        let s_form = modular_form(&f, &c).unwrap();
        assert!(
            (s_form - s_quad).abs() <= 1e-3 * s_quad,
            "modular form {s_form} vs entropy {s_quad}"
        );
        assert!(s_form >= 0.0);
        let flowed = modular_flow(&f, &c, 0.06).unwrap();
        let s_flowed = modular_form(&flowed, &c).unwrap();
        assert!(
            (s_flowed - s_form).abs() <= 1e-3 * s_form,
            "flow invariance: {s_form} vs {s_flowed}"
        );
        // zero field edge case
        let z = BoundaryField::zeros(sphere(), ug());
        assert_eq!(modular_form(&z, &c).unwrap(), 0.0);
    }

    #[test]
    fn distorted_translation_covariance_of_entropy() {
        let f = BoundaryField::from_fn(sphere(), ug(), |n, u| {
            (1.0 - 0.25 * n[0]) * (-0.5 * (u - 1.5) * (u - 1.5) / 1.2).exp()
        });
        let c = CutFunction::Constant(-2.0);
        let a = CutFunction::HarmonicSum {
            coeffs: vec![0.3, -0.1, 0.2, 0.05],
        };
        let s0 = entropy(&f, &c).unwrap().total;
        let tf = distorted_translate(&f, &a).unwrap();
        let shifted_cut = c.shifted_by(&a, 1.0, f.sphere()).unwrap();
        let s1 = entropy(&tf, &shifted_cut).unwrap().total;
        assert!(
            (s0 - s1).abs() <= 1e-6 * s0,
            "covariance violated: {s0} vs {s1}"
        );
        // C = 0 gives the identity
        let id = distorted_translate(&f, &CutFunction::Constant(0.0)).unwrap();
        let dev = id
            .samples()
            .iter()
            .zip(f.samples())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        assert!(dev <= 1e-13);
        let idd = distorted_dilate(&f, &CutFunction::Constant(0.0)).unwrap();
        let devd = idd
            .samples()
            .iter()
            .zip(f.samples())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        assert!(devd <= 1e-13);
    }

    #[test]
    fn affine_identity_on_supported_scans() {
        // support stays above C + t A for the whole scan: S is affine in t
        // with slope -2 pi anec
        let f = bump_field(2.0, 9.0);
        let c = CutFunction::Constant(-0.5);
        let a = CutFunction::HarmonicSum {
            coeffs: vec![1.2, 0.0, 0.3, 0.0],
        };
        let scan = deformation_scan(&f, &c, &a, 0.0, 0.5, 11).unwrap();
        let an = anec(&f, &a).unwrap().value();
        for (i, &t) in scan.t.iter().enumerate() {
            let expect = scan.s[0] - 2.0 * std::f64::consts::PI * t * an;
            assert!(
                (scan.s[i] - expect).abs() <= 1e-6 * scan.s[0].max(1.0),
                "affine identity broken at t={t}: {} vs {expect}",
                scan.s[i]
            );
        }
    }

    #[test]
    fn relative_entropy_reduces_to_difference_vector() {
        let f = bump_field(1.0, 6.0);
        let g = bump_field(2.0, 7.0);
        let c = CutFunction::Constant(0.0);
        let direct = relative_entropy_between(&f, &g, &c).unwrap();
        let mut diff = f.clone();
        diff.add_scaled(-1.0, &g).unwrap();
        let via_diff = entropy(&diff, &c).unwrap();
        assert_abs_diff_eq!(direct.total, via_diff.total, epsilon = 1e-14);
    }
}
