//! Coordinate atlas of the conformal compactification, cut functions on the
//! sphere, region predicates for deformed cones and half-strips, and the
//! boundary-limit map along outgoing null rays.
//!
//! Conventions: retarded/advanced null coordinates u = t - r, v = t + r;
//! compactified U = arctan u, V = arctan v; the null boundary carries Bondi
//! coordinates (u, theta, phi). A cut function C on the sphere carves out
//! the half-strip {u > C(n)}; the apex cut of a bulk event (t, x) is
//! C(n) = t - x.n, and the deformed cone of C is the set of events whose
//! apex cut dominates C everywhere.

use std::sync::Arc;

use crate::conformal::ConformalFactor;
use crate::error::{Error, Result};
use crate::grid::SphereGrid;
use crate::numerics::real_sph_harm;

/// Strictness tolerance for pointwise cut dominance tests.
pub const STRICT_TOL: f64 = 1e-12;

/// Event in Cartesian coordinates (t, x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartesianEvent {
    pub t: f64,
    pub x: [f64; 3],
}

impl CartesianEvent {
    pub fn new(t: f64, x: [f64; 3]) -> Self {
        CartesianEvent { t, x }
    }

    pub fn r(&self) -> f64 {
        dot(self.x, self.x).sqrt()
    }
}

/// Retarded/advanced null coordinates with a unit direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullCoords {
    pub u: f64,
    pub v: f64,
    pub n: [f64; 3],
}

/// Compactified coordinates U = arctan u, V = arctan v.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompactCoords {
    pub big_u: f64,
    pub big_v: f64,
    pub n: [f64; 3],
}

impl CompactCoords {
    /// Einstein-static time T = V + U.
    pub fn t_static(&self) -> f64 {
        self.big_v + self.big_u
    }

    /// Einstein-static radius R = V - U (nonnegative on the physical chart).
    pub fn r_static(&self) -> f64 {
        self.big_v - self.big_u
    }
}

/// Point of the null boundary in Bondi coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScriPoint {
    pub u: f64,
    pub n: [f64; 3],
}

pub fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Continuous cut C: S^2 -> R selecting the half-strip {u > C(n)}.
#[derive(Debug, Clone)]
pub enum CutFunction {
    Constant(f64),
    /// Apex cut of the event (t, x): n -> t - x.n.
    Apex {
        t: f64,
        x: [f64; 3],
    },
    /// Real spherical-harmonic sum; coefficients flattened as l^2 + l + m.
    HarmonicSum {
        coeffs: Vec<f64>,
    },
    /// Values pinned to the nodes of a specific sphere grid.
    Tabulated {
        grid: Arc<SphereGrid>,
        values: Vec<f64>,
    },
}

impl CutFunction {
    /// Evaluate at a unit direction. Tabulated cuts return the value of the
    /// nearest grid node; the closed-form families evaluate exactly.
    pub fn eval(&self, n: [f64; 3]) -> f64 {
        match self {
            CutFunction::Constant(c) => *c,
            CutFunction::Apex { t, x } => t - dot(*x, n),
            CutFunction::HarmonicSum { coeffs } => {
                let mut acc = 0.0;
                let mut idx = 0usize;
                let mut l = 0usize;
                while idx < coeffs.len() {
                    for m in -(l as i32)..=(l as i32) {
                        if idx >= coeffs.len() {
                            break;
                        }
                        if coeffs[idx] != 0.0 {
                            acc += coeffs[idx] * real_sph_harm(l, m, n);
                        }
                        idx += 1;
                    }
                    l += 1;
                }
                acc
            }
            CutFunction::Tabulated { grid, values } => {
                let mut best = 0usize;
                let mut best_dot = f64::NEG_INFINITY;
                for (k, &node) in grid.nodes().iter().enumerate() {
                    let d = dot(node, n);
                    if d > best_dot {
                        best_dot = d;
                        best = k;
                    }
                }
                values[best]
            }
        }
    }

    /// Values at every node of a grid. Tabulated cuts must be bound to a
    /// grid with the same layout.
    pub fn values_on(&self, grid: &Arc<SphereGrid>) -> Result<Vec<f64>> {
        match self {
            CutFunction::Tabulated { grid: g, values } => {
                if !g.same_layout(grid) {
                    return Err(Error::GridMismatch(
                        "tabulated cut bound to a different sphere grid".into(),
                    ));
                }
                Ok(values.clone())
            }
            _ => Ok(grid.nodes().iter().map(|&n| self.eval(n)).collect()),
        }
    }

    /// Node-wise minimum of two cuts as a tabulated cut.
    pub fn pointwise_min(
        &self,
        other: &CutFunction,
        grid: &Arc<SphereGrid>,
    ) -> Result<CutFunction> {
        let a = self.values_on(grid)?;
        let b = other.values_on(grid)?;
        Ok(CutFunction::Tabulated {
            grid: grid.clone(),
            values: a.iter().zip(&b).map(|(&x, &y)| x.min(y)).collect(),
        })
    }

    /// Node-wise maximum of two cuts as a tabulated cut.
    pub fn pointwise_max(
        &self,
        other: &CutFunction,
        grid: &Arc<SphereGrid>,
    ) -> Result<CutFunction> {
        let a = self.values_on(grid)?;
        let b = other.values_on(grid)?;
        Ok(CutFunction::Tabulated {
            grid: grid.clone(),
            values: a.iter().zip(&b).map(|(&x, &y)| x.max(y)).collect(),
        })
    }

    /// C + s * A as a tabulated cut on the grid.
    pub fn shifted_by(
        &self,
        deformation: &CutFunction,
        s: f64,
        grid: &Arc<SphereGrid>,
    ) -> Result<CutFunction> {
        let c = self.values_on(grid)?;
        let a = deformation.values_on(grid)?;
        Ok(CutFunction::Tabulated {
            grid: grid.clone(),
            values: c.iter().zip(&a).map(|(&cv, &av)| cv + s * av).collect(),
        })
    }
}

/// The two built-in normalizations of the compactification factor Omega.
/// They differ by a smooth positive gauge factor near the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaGauge {
    /// Omega = 2 chi^{-1} (1 + v^2)^{-1/2}; the normalization under which the
    /// rescaled bulk field converges to the boundary radiation profile.
    Bondi,
    /// Omega = chi^{-1} cos(arctan u) cos(arctan v), the Einstein-static
    /// embedding chart factor.
    EinsteinStatic,
}

/// Cartesian event to null coordinates. Fails at the spatial origin where
/// the direction is undefined.
pub fn to_null(e: CartesianEvent) -> Result<NullCoords> {
    let r = e.r();
    if r == 0.0 {
        return Err(Error::DegenerateOrigin);
    }
    Ok(NullCoords {
        u: e.t - r,
        v: e.t + r,
        n: [e.x[0] / r, e.x[1] / r, e.x[2] / r],
    })
}

pub fn from_null(nc: NullCoords) -> CartesianEvent {
    let r = 0.5 * (nc.v - nc.u);
    CartesianEvent {
        t: 0.5 * (nc.u + nc.v),
        x: [r * nc.n[0], r * nc.n[1], r * nc.n[2]],
    }
}

pub fn to_compact(nc: NullCoords) -> CompactCoords {
    CompactCoords {
        big_u: nc.u.atan(),
        big_v: nc.v.atan(),
        n: nc.n,
    }
}

pub fn from_compact(cc: CompactCoords) -> NullCoords {
    NullCoords {
        u: cc.big_u.tan(),
        v: cc.big_v.tan(),
        n: cc.n,
    }
}

/// Compactification factor Omega at a bulk point, in the requested gauge.
pub fn boundary_conformal_factor(chi: &ConformalFactor, nc: &NullCoords, gauge: OmegaGauge) -> f64 {
    let t = 0.5 * (nc.u + nc.v);
    let r = 0.5 * (nc.v - nc.u);
    let inv_chi = 1.0 / chi.value(t, r);
    match gauge {
        OmegaGauge::Bondi => 2.0 * inv_chi / (1.0 + nc.v * nc.v).sqrt(),
        OmegaGauge::EinsteinStatic => {
            inv_chi / ((1.0 + nc.u * nc.u).sqrt() * (1.0 + nc.v * nc.v).sqrt())
        }
    }
}

/// Retarded time of the event x displaced by lambda along the outgoing null
/// ray with direction n, in the cancellation-free rationalized form. The
/// lambda -> infinity limit is the apex cut value t - x.n.
pub fn retarded_time_along_ray(x: CartesianEvent, n: [f64; 3], lambda: f64) -> f64 {
    let xn = dot(x.x, n);
    let x2 = dot(x.x, x.x);
    let num = 2.0 * (x.t - xn) + (x.t * x.t - x2) / lambda;
    let den = x.t / lambda + 1.0 + (x2 / (lambda * lambda) + 1.0 + 2.0 * xn / lambda).sqrt();
    num / den
}

/// The apex cut of a bulk event: the future light cone of (t, x) meets the
/// boundary in the half-strip above n -> t - x.n.
pub fn apex_cut(x: CartesianEvent) -> CutFunction {
    CutFunction::Apex { t: x.t, x: x.x }
}

/// Whether the event lies in the deformed cone of C: its apex cut must
/// strictly dominate C at every grid node (float-safe strictness).
pub fn in_deformed_cone(
    x: CartesianEvent,
    cut: &CutFunction,
    grid: &Arc<SphereGrid>,
) -> Result<bool> {
    let c = cut.values_on(grid)?;
    Ok(grid
        .nodes()
        .iter()
        .zip(&c)
        .all(|(&n, &cv)| x.t - dot(x.x, n) - cv > STRICT_TOL))
}

/// An apex in the deformed cone of C whose boundary cone contains the strip
/// point y. Direction e = n_y, retarded time halfway between the cut and y,
/// advanced time exceeding the covering bound with a fixed margin.
pub fn covering_apex(
    y: ScriPoint,
    cut: &CutFunction,
    grid: &Arc<SphereGrid>,
) -> Result<CartesianEvent> {
    let c_at_y = cut.eval(y.n);
    if !(y.u > c_at_y) {
        return Err(Error::NotInStrip {
            u: y.u,
            cut: c_at_y,
        });
    }
    let e = y.n;
    let u = 0.5 * (c_at_y + y.u);
    let c = cut.values_on(grid)?;
    let mut bound = f64::NEG_INFINITY;
    for (&n, &cv) in grid.nodes().iter().zip(&c) {
        let en = dot(e, n);
        if 1.0 - en > 1e-6 {
            bound = bound.max((2.0 * cv - u * (1.0 + en)) / (1.0 - en));
        }
    }
    let v = (2.0 * bound + 1.0).max(u + 1.0);
    Ok(from_null(NullCoords { u, v, n: e }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grid() -> Arc<SphereGrid> {
        SphereGrid::new(16, 32).unwrap()
    }

    fn random_unit(rng: &mut impl RngExt) -> [f64; 3] {
        loop {
            let v = [
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ];
            let n2 = dot(v, v);
            if n2 > 1e-4 && n2 <= 1.0 {
                let n = n2.sqrt();
                return [v[0] / n, v[1] / n, v[2] / n];
            }
        }
    }

    #[test]
    fn to_null_examples() {
        let nc = to_null(CartesianEvent::new(2.0, [1.0, 0.0, 0.0])).unwrap();
        assert_eq!((nc.u, nc.v), (1.0, 3.0));
        assert_eq!(nc.n, [1.0, 0.0, 0.0]);

        let nc = to_null(CartesianEvent::new(0.0, [0.0, 0.0, 1.0])).unwrap();
        assert_eq!((nc.u, nc.v), (-1.0, 1.0));

        assert!(matches!(
            to_null(CartesianEvent::new(0.0, [0.0, 0.0, 0.0])),
            Err(Error::DegenerateOrigin)
        ));
    }

    #[test]
    fn compact_examples() {
        let n = [0.0, 0.0, 1.0];
        let cc = to_compact(NullCoords { u: 0.0, v: 0.0, n });
        assert_eq!((cc.big_u, cc.big_v), (0.0, 0.0));
        assert_eq!((cc.t_static(), cc.r_static()), (0.0, 0.0));

        let cc = to_compact(NullCoords { u: 1.0, v: 1.0, n });
        let quarter = std::f64::consts::FRAC_PI_4;
        assert_abs_diff_eq!(cc.big_u, quarter, epsilon = 1e-15);
        assert_abs_diff_eq!(cc.big_v, quarter, epsilon = 1e-15);
        assert_abs_diff_eq!(cc.t_static(), std::f64::consts::FRAC_PI_2, epsilon = 1e-15);

        // arctan 3 frozen from an independent high-precision evaluation
        let cc = to_compact(NullCoords { u: -1.0, v: 3.0, n });
        assert_abs_diff_eq!(cc.big_u, -quarter, epsilon = 1e-15);
        assert_abs_diff_eq!(cc.big_v, 1.2490457723982544, epsilon = 1e-15);
    }

    #[test]
    fn coordinate_round_trip_bulk_sample() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5c21);
        for _ in 0..10_000 {
            let log_r = rng.random_range(-6.0..6.0);
            let r = 10f64.powf(log_r);
            let n = random_unit(&mut rng);
            let t = rng.random_range(-1e3..1e3);
            let e = CartesianEvent::new(t, [r * n[0], r * n[1], r * n[2]]);
            let nc = to_null(e).unwrap();
            let back = from_null(nc);
            let scale = 1.0 + e.t.abs() + r;
            assert!((back.t - e.t).abs() <= 1e-12 * scale);
            for i in 0..3 {
                assert!((back.x[i] - e.x[i]).abs() <= 1e-12 * scale);
            }
            // compactified round trip; tan amplifies arctan rounding by
            // 1 + u^2, so past |u| ~ 1e3 only the conditioning bound holds
            let cc = to_compact(nc);
            let nc2 = from_compact(cc);
            for (orig, back) in [(nc.u, nc2.u), (nc.v, nc2.v)] {
                let tol = if orig.abs() <= 1e3 {
                    1e-12 * (1.0 + orig.abs())
                } else {
                    2.0 * f64::EPSILON * (1.0 + orig * orig)
                };
                assert!((back - orig).abs() <= tol, "compact roundtrip at {orig}");
            }
            assert!(cc.r_static() >= 0.0);
        }
    }

    #[test]
    fn omega_gauge_examples() {
        let chi = ConformalFactor::One;
        let nc = NullCoords {
            u: 0.0,
            v: 0.0,
            n: [0.0, 0.0, 1.0],
        };
        assert_abs_diff_eq!(
            boundary_conformal_factor(&chi, &nc, OmegaGauge::Bondi),
            2.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            boundary_conformal_factor(&chi, &nc, OmegaGauge::EinsteinStatic),
            1.0,
            epsilon = 1e-15
        );
        // large-v asymptotics of the Bondi gauge: Omega = (2/v)(1 + O(v^-2))
        for v in [1e3, 1e6] {
            let nc = NullCoords {
                u: 0.3,
                v,
                n: [0.0, 0.0, 1.0],
            };
            let om = boundary_conformal_factor(&chi, &nc, OmegaGauge::Bondi);
            assert!((om * v / 2.0 - 1.0).abs() <= 1.0 / (v * v));
        }
    }

    #[test]
    fn omega_positive_on_bulk_points() {
        let chi = ConformalFactor::ExpTime { lambda: 0.1 };
        for &(u, v) in &[(-3.0, 1.0), (0.0, 10.0), (2.0, 200.0)] {
            let nc = NullCoords {
                u,
                v,
                n: [1.0, 0.0, 0.0],
            };
            assert!(boundary_conformal_factor(&chi, &nc, OmegaGauge::Bondi) > 0.0);
            assert!(boundary_conformal_factor(&chi, &nc, OmegaGauge::EinsteinStatic) > 0.0);
        }
    }

    #[test]
    fn ray_limit_examples() {
        // apex on its own light cone: limit 0
        let x = CartesianEvent::new(1.0, [1.0, 0.0, 0.0]);
        let u = retarded_time_along_ray(x, [1.0, 0.0, 0.0], 1e8);
        assert!(u.abs() < 1e-7);

        // origin sits on every light cone
        let o = CartesianEvent::new(0.0, [0.0, 0.0, 0.0]);
        for lam in [0.5, 3.0, 1e4] {
            assert_eq!(retarded_time_along_ray(o, [0.0, 1.0, 0.0], lam), 0.0);
        }

        // transverse direction, finite lambda, against the direct formula
        let x = CartesianEvent::new(1.0, [1.0, 0.0, 0.0]);
        let n = [0.0, 0.0, 1.0];
        let lam = 1e4;
        let u_rat = retarded_time_along_ray(x, n, lam);
        let direct = (x.t + lam)
            - ((x.x[0] + lam * n[0]).powi(2)
                + (x.x[1] + lam * n[1]).powi(2)
                + (x.x[2] + lam * n[2]).powi(2))
            .sqrt();
        assert!((u_rat - 1.0).abs() <= 1e-3);
        assert!((u_rat - direct).abs() <= 1e-9);
    }

    #[test]
    fn ray_limit_decay_exponent() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5c22);
        for _ in 0..25 {
            let x = CartesianEvent::new(
                rng.random_range(-2.0..2.0),
                [
                    rng.random_range(-2.0..2.0),
                    rng.random_range(-2.0..2.0),
                    rng.random_range(-2.0..2.0),
                ],
            );
            let n = random_unit(&mut rng);
            let limit = x.t - dot(x.x, n);
            let lambdas = [1e2, 1e3, 1e4];
            let errs: Vec<f64> = lambdas
                .iter()
                .map(|&lam| (retarded_time_along_ray(x, n, lam) - limit).abs())
                .collect();
            if errs.iter().any(|&e| e < 1e-12) {
                continue; // exactly on the cone, nothing to fit
            }
            let slope = crate::numerics::log_log_slope(&lambdas, &errs);
            assert!(
                (-1.1..=-0.9).contains(&slope),
                "decay exponent {slope} for {x:?} {n:?}"
            );
            let k = errs[0] * lambdas[0];
            for (e, lam) in errs.iter().zip(&lambdas) {
                assert!(*e <= 1.05 * k / lam + 1e-12);
            }
        }
    }

    #[test]
    fn apex_cut_examples() {
        let g = grid();
        let c = apex_cut(CartesianEvent::new(0.0, [0.0, 0.0, 0.0]));
        assert!(c.values_on(&g).unwrap().iter().all(|&v| v == 0.0));

        let c = apex_cut(CartesianEvent::new(1.0, [0.0, 0.0, 0.0]));
        assert!(c.values_on(&g).unwrap().iter().all(|&v| v == 1.0));

        let c = apex_cut(CartesianEvent::new(0.0, [0.0, 0.0, 1.0]));
        let vals = c.values_on(&g).unwrap();
        for (k, &v) in vals.iter().enumerate() {
            assert_abs_diff_eq!(v, -g.node(k)[2], epsilon = 1e-15);
        }
        assert_abs_diff_eq!(c.eval([0.0, 0.0, 1.0]), -1.0, epsilon = 1e-15);
    }

    #[test]
    fn deformed_cone_membership() {
        let g = grid();
        let zero = CutFunction::Constant(0.0);
        assert!(in_deformed_cone(CartesianEvent::new(1.0, [0.0; 3]), &zero, &g).unwrap());
        assert!(!in_deformed_cone(CartesianEvent::new(0.0, [0.0; 3]), &zero, &g).unwrap());

        // A displaced apex at t = 0 cannot dominate a cut of unit amplitude:
        // min over the sphere of (t - x.n) - (-n_3) here is -1.5 < 0.
        let dip = CutFunction::HarmonicSum {
            coeffs: vec![
                0.0,
                0.0,
                -(4.0 * std::f64::consts::PI / 3.0).sqrt(), // -n_3
                0.0,
            ],
        };
        assert_abs_diff_eq!(dip.eval([0.0, 0.0, 1.0]), -1.0, epsilon = 1e-12);
        let x = CartesianEvent::new(0.0, [0.0, 0.0, -0.5]);
        // dense-sample oracle for min(C_x - C)
        let mut min_gap = f64::INFINITY;
        let fine = SphereGrid::new(64, 128).unwrap();
        for &n in fine.nodes() {
            min_gap = min_gap.min(x.t - dot(x.x, n) - dip.eval(n));
        }
        assert!(min_gap < 0.0, "oracle min gap {min_gap}");
        assert!(!in_deformed_cone(x, &dip, &g).unwrap());

        // a genuinely dominating apex against a shallow cut
        let shallow = CutFunction::HarmonicSum {
            coeffs: vec![
                0.0,
                0.0,
                -0.3 * (4.0 * std::f64::consts::PI / 3.0).sqrt(), // -0.3 n_3
                0.0,
            ],
        };
        let x = CartesianEvent::new(0.5, [0.0, 0.0, -0.1]);
        let mut min_gap = f64::INFINITY;
        for &n in fine.nodes() {
            min_gap = min_gap.min(x.t - dot(x.x, n) - shallow.eval(n));
        }
        assert!(min_gap > 0.0, "oracle min gap {min_gap}");
        assert!(in_deformed_cone(x, &shallow, &g).unwrap());
    }

    #[test]
    fn covering_apex_satisfies_both_predicates() {
        let g = grid();
        let cases = vec![
            (
                ScriPoint {
                    u: 2.0,
                    n: [0.0, 0.0, 1.0],
                },
                CutFunction::Constant(0.0),
            ),
            (
                ScriPoint {
                    u: 0.0,
                    n: [1.0, 0.0, 0.0],
                },
                CutFunction::Constant(-1.0),
            ),
            (
                ScriPoint {
                    u: 0.4,
                    n: [0.6, 0.0, 0.8],
                },
                CutFunction::HarmonicSum {
                    coeffs: vec![0.3, 0.1, -0.2, 0.05],
                },
            ),
        ];
        for (y, cut) in cases {
            let x = covering_apex(y, &cut, &g).unwrap();
            assert!(in_deformed_cone(x, &cut, &g).unwrap(), "apex not in cone");
            // y must lie strictly inside the apex's own strip
            assert!(y.u > x.t - dot(x.x, y.n), "y outside the apex cone");
        }
    }

    #[test]
    fn covering_apex_rejects_boundary_point() {
        let g = grid();
        let y = ScriPoint {
            u: 0.0,
            n: [0.0, 0.0, 1.0],
        };
        let err = covering_apex(y, &CutFunction::Constant(0.0), &g).unwrap_err();
        assert!(matches!(err, Error::NotInStrip { .. }));
    }

    #[test]
    fn apex_order_and_injectivity() {
        let g = grid();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5c23);
        for _ in 0..1000 {
            let x = CartesianEvent::new(
                rng.random_range(-2.0..2.0),
                [
                    rng.random_range(-2.0..2.0),
                    rng.random_range(-2.0..2.0),
                    rng.random_range(-2.0..2.0),
                ],
            );
            // y in the causal future of x
            let dir = random_unit(&mut rng);
            let rad = rng.random_range(0.0..1.5);
            let adv = rng.random_range(0.0..1.5);
            let y = CartesianEvent::new(
                x.t + rad + adv,
                [
                    x.x[0] + rad * dir[0],
                    x.x[1] + rad * dir[1],
                    x.x[2] + rad * dir[2],
                ],
            );
            let cx = apex_cut(x).values_on(&g).unwrap();
            let cy = apex_cut(y).values_on(&g).unwrap();
            for (a, b) in cy.iter().zip(&cx) {
                assert!(a - b >= -1e-12, "apex order violated");
            }
            // injectivity: distinct events separate on the grid
            let z = CartesianEvent::new(x.t + rng.random_range(0.01..0.5), x.x);
            let cz = apex_cut(z).values_on(&g).unwrap();
            let gap = cx
                .iter()
                .zip(&cz)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            assert!(gap > 1e-12);
        }
    }

    #[test]
    fn tabulated_cut_grid_binding() {
        let g = grid();
        let other = SphereGrid::new(8, 16).unwrap();
        let cut = CutFunction::Tabulated {
            grid: g.clone(),
            values: vec![0.0; g.len()],
        };
        assert!(cut.values_on(&g).is_ok());
        assert!(matches!(cut.values_on(&other), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn cut_min_max_partition() {
        let g = grid();
        let c1 = CutFunction::HarmonicSum {
            coeffs: vec![
                0.0,
                0.0,
                0.3 * (4.0 * std::f64::consts::PI / 3.0).sqrt(),
                0.0,
            ],
        };
        let c2 = CutFunction::Constant(0.1);
        let lo = c1.pointwise_min(&c2, &g).unwrap().values_on(&g).unwrap();
        let hi = c1.pointwise_max(&c2, &g).unwrap().values_on(&g).unwrap();
        let a = c1.values_on(&g).unwrap();
        let b = c2.values_on(&g).unwrap();
        for k in 0..g.len() {
            assert_eq!(lo[k] + hi[k], a[k] + b[k]);
            assert!(lo[k] <= hi[k]);
        }
    }
}
