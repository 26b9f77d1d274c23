//! Bulk stress-tensor route to the relative entropy: the null-null stress
//! component of the conformally coupled field, the matching curvature
//! coefficient, and the finite-advanced-time entropy integral that converges
//! to the boundary quadrature.
//!
//! With w = Omega^{-1} Phi and the Bondi-gauge Omega, the density identity
//!
//!   (d_u w)^2 = Omega^{-2} T_uu + (1/3) R_uu w^2 + (1/6) d_u^2 (Omega^{-2} Phi^2)
//!
//! holds pointwise for every conformal factor in the family (the two
//! correction terms enter with positive sign; with them the identity is
//! exact, not merely integrated). The entropy of the radiation profile is
//! the v -> infinity limit of pi Iint (u - C) times this density.

use rayon::prelude::*;
use std::sync::Arc;

use crate::conformal::ConformalFactor;
use crate::entropy::weighted_tail;
use crate::error::{Error, Result};
use crate::geometry::CutFunction;
use crate::grid::{SphereGrid, UGrid};
use crate::holography::{kirchhoff_point, Quadrature, V_GAUGE};
use crate::numerics::derivative_4th;
use crate::source::BulkSource;

/// Null-null Ricci component of the metric chi^2 eta:
/// R_uu = chi^{-2} [4 (d_u chi)^2 - 2 chi d_u^2 chi].
pub fn ricci_uu(chi: &ConformalFactor, t: f64, r: f64) -> f64 {
    let c = chi.value(t, r);
    let c1 = chi.du(t, r);
    let c2 = chi.du2(t, r);
    (4.0 * c1 * c1 - 2.0 * c * c2) / (c * c)
}

/// T_uu of a field profile along u at fixed advanced time, from the
/// traceless coupled stress tensor specialized to the null-null component:
/// T_uu = (d_u Phi)^2 - (1/6) R_uu Phi^2 - (1/6)[d_u^2 - 2 (d_u ln chi) d_u](Phi^2).
///
/// Second derivatives are the first-derivative stencil applied twice, so the
/// discretization error matches the terms it must cancel against.
pub fn stress_uu_profile(phi: &[f64], ugrid: UGrid, chi: &ConformalFactor, v: f64) -> Vec<f64> {
    let h = ugrid.h();
    let dphi = derivative_4th(phi, h);
    let phi_sq: Vec<f64> = phi.iter().map(|p| p * p).collect();
    let d_phi_sq = derivative_4th(&phi_sq, h);
    let d2_phi_sq = derivative_4th(&d_phi_sq, h);
    (0..phi.len())
        .map(|i| {
            let u = ugrid.node(i);
            let t = 0.5 * (u + v);
            let r = 0.5 * (v - u);
            let a = chi.du(t, r) / chi.value(t, r);
            let r_uu = ricci_uu(chi, t, r);
            dphi[i] * dphi[i]
                - r_uu * phi_sq[i] / 6.0
                - (d2_phi_sq[i] - 2.0 * a * d_phi_sq[i]) / 6.0
        })
        .collect()
}

/// Sample of the stress route at one (u, node) point.
#[derive(Debug, Clone, Copy)]
pub struct NullStressSample {
    pub u: f64,
    pub v: f64,
    pub node: usize,
    pub t_uu: f64,
    pub r_uu: f64,
    /// Bulk field value Phi.
    pub phi: f64,
    /// Rescaled field psi = Omega^{-1} Phi.
    pub psi: f64,
}

/// Bulk field and stress data assembled on a (node, u) grid at fixed
/// advanced time v.
pub struct StressField {
    pub v: f64,
    pub sphere: Arc<SphereGrid>,
    pub ugrid: UGrid,
    /// Phi = chi^{-1} G_M(chi^3 f), node-major.
    pub phi: Vec<f64>,
    /// psi = Omega^{-1} Phi in the Bondi gauge.
    pub psi: Vec<f64>,
    pub t_uu: Vec<f64>,
    pub r_uu: Vec<f64>,
    /// The entropy density Omega^{-2} T_uu + R_uu psi^2 / 3 + (psi^2)'' / 6.
    pub bracket: Vec<f64>,
    /// Independent route: (d_u psi)^2.
    pub gradient_sq: Vec<f64>,
}

/// Evaluate the bulk field of a source through the causal propagator on the
/// whole (node, u) grid at fixed v and assemble the stress quantities.
pub fn assemble_stress_field(
    source: &BulkSource,
    chi: &ConformalFactor,
    v: f64,
    sphere: &Arc<SphereGrid>,
    ugrid: UGrid,
    quad: &Quadrature,
) -> Result<StressField> {
    if v < V_GAUGE {
        return Err(Error::GaugeRegion {
            v,
            v_gauge: V_GAUGE,
        });
    }
    let bbox = {
        let (lo, hi) = source.support_box();
        if let Some((blo, bhi)) = quad.box_override {
            for i in 0..3 {
                if lo[i] < blo[i] || hi[i] > bhi[i] {
                    return Err(Error::SupportOverflow(format!(
                        "axis {i}: support [{}, {}] vs box [{}, {}]",
                        lo[i], hi[i], blo[i], bhi[i]
                    )));
                }
            }
            (blo, bhi)
        } else {
            (lo, hi)
        }
    };
    let n_u = ugrid.n;
    let n_nodes = sphere.len();
    let g = |t: f64, y: [f64; 3]| {
        let r = (y[0] * y[0] + y[1] * y[1] + y[2] * y[2]).sqrt();
        chi.cubed(t, r) * source.eval(t, y)
    };
    // hot loop: one Kirchhoff quadrature per (node, u) sample
    let propagated: Vec<f64> = (0..n_nodes * n_u)
        .into_par_iter()
        .map(|idx| {
            let k = idx / n_u;
            let i = idx % n_u;
            kirchhoff_point(
                &g,
                bbox,
                ugrid.node(i),
                v,
                sphere.node(k),
                quad.nodes_per_axis,
            )
        })
        .collect();

    let sqrt_1v2 = (1.0 + v * v).sqrt();
    let mut phi = vec![0.0; n_nodes * n_u];
    let mut psi = vec![0.0; n_nodes * n_u];
    for (idx, &gm) in propagated.iter().enumerate() {
        let u = ugrid.node(idx % n_u);
        let t = 0.5 * (u + v);
        let r = 0.5 * (v - u);
        phi[idx] = gm / chi.value(t, r);
        // Omega^{-1} Phi = chi sqrt(1+v^2)/2 * Phi = sqrt(1+v^2)/2 * G_M
        psi[idx] = 0.5 * sqrt_1v2 * gm;
    }

    let h = ugrid.h();
    let mut t_uu = vec![0.0; n_nodes * n_u];
    let mut r_uu = vec![0.0; n_nodes * n_u];
    let mut bracket = vec![0.0; n_nodes * n_u];
    let mut gradient_sq = vec![0.0; n_nodes * n_u];
    for k in 0..n_nodes {
        let row = &phi[k * n_u..(k + 1) * n_u];
        let psi_row = &psi[k * n_u..(k + 1) * n_u];
        let tu = stress_uu_profile(row, ugrid, chi, v);
        let dpsi = derivative_4th(psi_row, h);
        let psi_sq: Vec<f64> = psi_row.iter().map(|p| p * p).collect();
        let d2_psi_sq = derivative_4th(&derivative_4th(&psi_sq, h), h);
        for i in 0..n_u {
            let u = ugrid.node(i);
            let t = 0.5 * (u + v);
            let r = 0.5 * (v - u);
            let ru = ricci_uu(chi, t, r);
            let om_inv = 0.5 * chi.value(t, r) * sqrt_1v2;
            let idx = k * n_u + i;
            t_uu[idx] = tu[i];
            r_uu[idx] = ru;
            bracket[idx] =
                om_inv * om_inv * tu[i] + ru * psi_row[i] * psi_row[i] / 3.0 + d2_psi_sq[i] / 6.0;
            gradient_sq[idx] = dpsi[i] * dpsi[i];
        }
    }
    Ok(StressField {
        v,
        sphere: sphere.clone(),
        ugrid,
        phi,
        psi,
        t_uu,
        r_uu,
        bracket,
        gradient_sq,
    })
}

impl StressField {
    pub fn sample(&self, node: usize, i: usize) -> NullStressSample {
        let idx = node * self.ugrid.n + i;
        NullStressSample {
            u: self.ugrid.node(i),
            v: self.v,
            node,
            t_uu: self.t_uu[idx],
            r_uu: self.r_uu[idx],
            phi: self.phi[idx],
            psi: self.psi[idx],
        }
    }

    /// Largest deviation between the stress-density bracket and (d_u psi)^2,
    /// relative to the peak density.
    pub fn density_identity_residual(&self) -> f64 {
        let peak = self.gradient_sq.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
        if peak == 0.0 {
            return 0.0;
        }
        self.bracket
            .iter()
            .zip(&self.gradient_sq)
            .map(|(b, g)| (b - g).abs())
            .fold(0.0f64, f64::max)
            / peak
    }

    /// Entropy integral of the stress density against the (u - C) weight.
    pub fn entropy(&self, cut: &CutFunction) -> Result<f64> {
        let cuts = cut.values_on(&self.sphere)?;
        for (node, &c) in cuts.iter().enumerate() {
            if c < self.ugrid.u_min {
                return Err(Error::CutOutsideWindow {
                    node,
                    cut: c,
                    u_min: self.ugrid.u_min,
                });
            }
        }
        let n_u = self.ugrid.n;
        let parts: Vec<f64> = (0..self.sphere.len())
            .into_par_iter()
            .map(|k| {
                let row = &self.bracket[k * n_u..(k + 1) * n_u];
                std::f64::consts::PI
                    * self.sphere.weight(k)
                    * weighted_tail(row, self.ugrid, cuts[k])
            })
            .collect();
        Ok(parts.iter().sum())
    }
}

/// Finite-v stress-tensor representation of the relative entropy.
pub fn entropy_from_stress(
    source: &BulkSource,
    chi: &ConformalFactor,
    cut: &CutFunction,
    v: f64,
    sphere: &Arc<SphereGrid>,
    ugrid: UGrid,
    quad: &Quadrature,
) -> Result<f64> {
    assemble_stress_field(source, chi, v, sphere, ugrid, quad)?.entropy(cut)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::ConformalFactor;
    use crate::grid::BoundaryField;
    use crate::holography::radiation_field;
    use approx::assert_abs_diff_eq;

    #[test]
    fn ricci_examples() {
        assert_eq!(ricci_uu(&ConformalFactor::One, 0.7, 2.0), 0.0);
        // chi = e^{lambda t}: d_u chi = (lambda/2) chi, d_u^2 chi = (lambda^2/4) chi
        // gives R_uu = lambda^2 / 2 at every point
        let lam = 0.3;
        let chi = ConformalFactor::ExpTime { lambda: lam };
        for &(t, r) in &[(0.0, 1.0), (5.0, 2.0), (-3.0, 0.5)] {
            assert_abs_diff_eq!(ricci_uu(&chi, t, r), lam * lam / 2.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn ricci_matches_finite_difference_derivatives() {
        let chi = ConformalFactor::RationalTime { a: 0.8 };
        for &(t, r) in &[(0.4, 1.0), (2.5, 3.0)] {
            let eps = 1e-4;
            let val = |du: f64| chi.value(t + 0.5 * du, r - 0.5 * du);
            let d1 = (val(eps) - val(-eps)) / (2.0 * eps);
            let d2 = (val(eps) - 2.0 * val(0.0) + val(-eps)) / (eps * eps);
            let c = chi.value(t, r);
            let fd = (4.0 * d1 * d1 - 2.0 * c * d2) / (c * c);
            let an = ricci_uu(&chi, t, r);
            assert!(
                (fd - an).abs() <= 1e-6 * (1.0 + an.abs()),
                "R_uu {an} vs fd {fd}"
            );
        }
    }

    #[test]
    fn stress_uu_zero_cases() {
        let ug = UGrid::new(-4.0, 4.0, 64).unwrap();
        let zeros = vec![0.0; 64];
        let t = stress_uu_profile(&zeros, ug, &ConformalFactor::One, 50.0);
        assert!(t.iter().all(|&v| v == 0.0));
        let consts = vec![2.5; 64];
        let t = stress_uu_profile(&consts, ug, &ConformalFactor::One, 50.0);
        assert!(t.iter().all(|&v| v.abs() < 1e-10));
    }

    #[test]
    fn stress_uu_gaussian_matches_symbolic() {
        // chi = 1: T_uu = (Phi')^2 - (Phi^2)''/6 with
        // Phi = e^{-u^2/2}: Phi' = -u Phi, (Phi^2)'' = (4u^2 - 2) Phi^2
        let ug = UGrid::new(-8.0, 8.0, 2048).unwrap();
        let phi: Vec<f64> = ug.nodes().map(|u| (-0.5 * u * u).exp()).collect();
        let t = stress_uu_profile(&phi, ug, &ConformalFactor::One, 60.0);
        let mut max_err: f64 = 0.0;
        for (i, &val) in t.iter().enumerate() {
            let u = ug.node(i);
            let p2 = (-u * u).exp();
            let expect = u * u * p2 - (4.0 * u * u - 2.0) * p2 / 6.0;
            max_err = max_err.max((val - expect).abs());
        }
        assert!(max_err <= 1e-8, "symbolic T_uu mismatch {max_err}");
    }

    #[test]
    fn density_identity_pointwise_flat() {
        let src = BulkSource::single_gaussian(1.0, 0.0, 0.5, [0.0; 3], 0.5);
        let sphere = SphereGrid::new(4, 8).unwrap();
        let ugrid = UGrid::new(-6.0, 6.0, 257).unwrap();
        let quad = Quadrature {
            nodes_per_axis: 24,
            box_override: None,
        };
        let field = assemble_stress_field(&src, &ConformalFactor::One, 60.0, &sphere, ugrid, &quad)
            .unwrap();
        let res = field.density_identity_residual();
        assert!(res <= 1e-4, "density identity residual {res}");
        // with chi = 1 the curvature term is absent
        assert!(field.r_uu.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn stress_entropy_quadratic_in_source() {
        let src = BulkSource::single_gaussian(1.0, 0.5, 0.5, [0.0; 3], 0.5);
        let sphere = SphereGrid::new(4, 8).unwrap();
        let ugrid = UGrid::new(-6.0, 7.0, 129).unwrap();
        let quad = Quadrature {
            nodes_per_axis: 20,
            box_override: None,
        };
        let cut = CutFunction::Constant(-1.0);
        let s1 = entropy_from_stress(
            &src,
            &ConformalFactor::One,
            &cut,
            60.0,
            &sphere,
            ugrid,
            &quad,
        )
        .unwrap();
        let s2 = entropy_from_stress(
            &src.scaled(2.0),
            &ConformalFactor::One,
            &cut,
            60.0,
            &sphere,
            ugrid,
            &quad,
        )
        .unwrap();
        assert!(
            (s2 - 4.0 * s1).abs() <= 1e-10 * s2.abs().max(1.0),
            "quadratic scaling {s1} vs {s2}"
        );
    }

    #[test]
    fn stress_entropy_approaches_boundary_entropy() {
        let (s, w) = (0.5, 0.5);
        let src = BulkSource::single_gaussian(1.0, 0.8, s, [0.0; 3], w);
        let sphere = SphereGrid::new(4, 8).unwrap();
        let ugrid = UGrid::new(-6.0, 7.0, 257).unwrap();
        let quad = Quadrature {
            nodes_per_axis: 24,
            box_override: None,
        };
        let cut = CutFunction::Constant(-2.0);
        let boundary = radiation_field(
            &src,
            &ConformalFactor::One,
            &sphere,
            ugrid,
            &Quadrature::default(),
        )
        .unwrap();
        let s_ref = crate::entropy::entropy(&boundary, &cut).unwrap().total;
        let s60 = entropy_from_stress(
            &src,
            &ConformalFactor::One,
            &cut,
            60.0,
            &sphere,
            ugrid,
            &quad,
        )
        .unwrap();
        let s120 = entropy_from_stress(
            &src,
            &ConformalFactor::One,
            &cut,
            120.0,
            &sphere,
            ugrid,
            &quad,
        )
        .unwrap();
        let e60 = (s60 - s_ref).abs() / s_ref;
        let e120 = (s120 - s_ref).abs() / s_ref;
        assert!(e60 <= 0.05, "v=60 error {e60}");
        assert!(e120 < e60, "no convergence: {e60} -> {e120}");
        let _ = BoundaryField::zeros(sphere, ugrid);
    }

    #[test]
    fn gauge_region_enforced() {
        let src = BulkSource::single_gaussian(1.0, 0.0, 0.5, [0.0; 3], 0.5);
        let sphere = SphereGrid::new(4, 8).unwrap();
        let ugrid = UGrid::new(-4.0, 4.0, 64).unwrap();
        let err = entropy_from_stress(
            &src,
            &ConformalFactor::One,
            &CutFunction::Constant(0.0),
            5.0,
            &sphere,
            ugrid,
            &Quadrature::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::GaugeRegion { .. }));
    }
}
