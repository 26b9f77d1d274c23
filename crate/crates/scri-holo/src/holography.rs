//! Bulk-to-boundary transform of smooth sources, its momentum-space form,
//! and the finite-advanced-time Kirchhoff representation of the rescaled
//! bulk field that converges to it.
//!
//! The boundary radiation profile of a source f with conformal factor chi is
//!
//!   psi(u, n) = Int d3x (chi^3 f)(u + n.x, x),
//!
//! a plane-wave (X-ray style) transform of chi^3 f along the null direction.
//! At finite advanced time v the same data is reached from the bulk: the
//! flat-space causal propagator applied to chi^3 f, rescaled by the Bondi
//! conformal factor, converges to psi as v grows, with a 1/v error.

use num_complex::Complex64;
use rayon::prelude::*;
use std::sync::Arc;

use crate::conformal::ConformalFactor;
use crate::error::{Error, Result};
use crate::grid::{BoundaryField, SphereGrid, UGrid};
use crate::numerics::{gauss_legendre, gauss_legendre_on};
use crate::source::{BulkSource, SpaceProfile, TimeProfile};

/// Advanced times below this are too close to the source region for the
/// large-v conformal gauge to apply.
pub const V_GAUGE: f64 = 10.0;

/// Exclusion radius around the Kirchhoff kernel's singular ray. For the
/// advanced times accepted here the singular locus sits far outside any
/// source support; the filter is a guard, not a regularization.
const SINGULAR_EPS: f64 = 1e-8;

/// Spatial quadrature controls for the transform and the Kirchhoff kernel.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    /// Gauss-Legendre nodes per axis of the 3D box rule.
    pub nodes_per_axis: usize,
    /// Optional fixed box; when present the source support must fit inside.
    pub box_override: Option<([f64; 3], [f64; 3])>,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature {
            nodes_per_axis: 48,
            box_override: None,
        }
    }
}

impl Quadrature {
    fn resolve_box(&self, source: &BulkSource) -> Result<([f64; 3], [f64; 3])> {
        let (lo, hi) = source.support_box();
        if let Some((blo, bhi)) = self.box_override {
            for i in 0..3 {
                if lo[i] < blo[i] || hi[i] > bhi[i] {
                    return Err(Error::SupportOverflow(format!(
                        "axis {i}: support [{}, {}] vs box [{}, {}]",
                        lo[i], hi[i], blo[i], bhi[i]
                    )));
                }
            }
            Ok((blo, bhi))
        } else {
            Ok((lo, hi))
        }
    }
}

/// Boundary radiation profile of a bulk source on the given grids.
///
/// Closed form when chi = 1 and every term is Gaussian; otherwise a
/// Gauss-Legendre quadrature of (chi^3 f)(u + n.x, x) over the support box,
/// organized along the ray direction (the built-in conformal families depend
/// on t only, which keeps the transverse integral one-dimensional).
pub fn radiation_field(
    source: &BulkSource,
    chi: &ConformalFactor,
    sphere: &Arc<SphereGrid>,
    ugrid: UGrid,
    quad: &Quadrature,
) -> Result<BoundaryField> {
    quad.resolve_box(source)?;
    if chi.is_flat() && source.all_gaussian() {
        return Ok(radiation_field_closed(source, sphere, ugrid));
    }

    let n_u = ugrid.n;
    let mut out = BoundaryField::zeros(sphere.clone(), ugrid);
    let n_xi = (4 * quad.nodes_per_axis).max(192);

    for term in &source.terms {
        let x0 = term.space.center();
        // widen past the box radius so Gaussian tails are below 1e-12
        let r_xi = 1.3 * term.space.effective_radius();
        let (xi, wxi) = gauss_legendre_on(n_xi, -r_xi, r_xi);
        // transverse integral of the spatial profile at signed offset xi
        let hval: Vec<f64> = xi
            .iter()
            .map(|&x| transverse_profile_integral(&term.space, x))
            .collect();
        let amp = term.amplitude;
        let time = term.time;

        let contributions: Vec<f64> = (0..sphere.len())
            .into_par_iter()
            .flat_map_iter(|k| {
                let n = sphere.node(k);
                let shift = n[0] * x0[0] + n[1] * x0[1] + n[2] * x0[2];
                let xi = &xi;
                let wxi = &wxi;
                let hval = &hval;
                (0..n_u).map(move |i| {
                    let base = ugrid.node(i) + shift;
                    let mut acc = 0.0;
                    for ((&x, &w), &hv) in xi.iter().zip(wxi).zip(hval) {
                        let t = base + x;
                        acc += w * hv * chi.cubed(t, 0.0) * time.eval(t);
                    }
                    amp * acc
                })
            })
            .collect();
        for k in 0..sphere.len() {
            let p = out.profile_mut(k);
            for i in 0..n_u {
                p[i] += contributions[k * n_u + i];
            }
        }
    }
    Ok(out)
}

fn radiation_field_closed(
    source: &BulkSource,
    sphere: &Arc<SphereGrid>,
    ugrid: UGrid,
) -> BoundaryField {
    let terms: Vec<(f64, f64, [f64; 3], f64)> = source
        .terms
        .iter()
        .map(|term| {
            let (t0, s) = match term.time {
                TimeProfile::Gaussian { center, width } => (center, width),
                _ => unreachable!("closed form requires Gaussian terms"),
            };
            let (x0, w) = match term.space {
                SpaceProfile::Gaussian { center, width } => (center, width),
                _ => unreachable!("closed form requires Gaussian terms"),
            };
            let sig2 = s * s + w * w;
            let norm = term.amplitude * (2.0 * std::f64::consts::PI).powf(1.5) * s * w.powi(3)
                / sig2.sqrt();
            (norm, t0, x0, sig2)
        })
        .collect();
    BoundaryField::from_fn(sphere.clone(), ugrid, move |n, u| {
        terms
            .iter()
            .map(|&(norm, t0, x0, sig2)| {
                let c = t0 - (n[0] * x0[0] + n[1] * x0[1] + n[2] * x0[2]);
                norm * (-0.5 * (u - c) * (u - c) / sig2).exp()
            })
            .sum()
    })
}

/// 2D integral of the spatial profile over the plane at signed distance xi
/// from its center.
fn transverse_profile_integral(space: &SpaceProfile, xi: f64) -> f64 {
    match *space {
        SpaceProfile::Gaussian { width, .. } => {
            2.0 * std::f64::consts::PI * width * width * (-0.5 * xi * xi / (width * width)).exp()
        }
        SpaceProfile::Bump { width, .. } => {
            // 2 pi Int_{|xi|}^{w} sigma * bump(sigma) dsigma
            let a = xi.abs();
            if a >= width {
                return 0.0;
            }
            let (s, ws) = gauss_legendre_on(64, a, width);
            let w2 = width * width;
            let val: f64 = s
                .iter()
                .zip(&ws)
                .map(|(&sig, &w)| {
                    let d2 = sig * sig;
                    if d2 >= w2 {
                        0.0
                    } else {
                        w * sig * (1.0 - w2 / (w2 - d2)).exp()
                    }
                })
                .sum();
            2.0 * std::f64::consts::PI * val
        }
    }
}

/// Literal tensor-product 3D quadrature of the defining integral at one
/// boundary point. Slow path kept as an independent cross-check of
/// [`radiation_field`].
pub fn radiation_point_quad3d(
    source: &BulkSource,
    chi: &ConformalFactor,
    n: [f64; 3],
    u: f64,
    quad: &Quadrature,
) -> Result<f64> {
    let (lo, hi) = quad.resolve_box(source)?;
    let m = quad.nodes_per_axis;
    let (gx, wx) = gauss_legendre_on(m, lo[0], hi[0]);
    let (gy, wy) = gauss_legendre_on(m, lo[1], hi[1]);
    let (gz, wz) = gauss_legendre_on(m, lo[2], hi[2]);
    let mut acc = 0.0;
    for (ix, &x) in gx.iter().enumerate() {
        for (iy, &y) in gy.iter().enumerate() {
            let wxy = wx[ix] * wy[iy];
            for (iz, &z) in gz.iter().enumerate() {
                let p = [x, y, z];
                let t = u + n[0] * x + n[1] * y + n[2] * z;
                let r = (x * x + y * y + z * z).sqrt();
                acc += wxy * wz[iz] * chi.cubed(t, r) * source.eval(t, p);
            }
        }
    }
    Ok(acc)
}

/// Momentum-space boundary profile (2 pi)^{3/2} hat f(E, E n) on an energy
/// grid; available for all-Gaussian sources with chi = 1.
pub fn radiation_spectrum(
    source: &BulkSource,
    n: [f64; 3],
    energies: &[f64],
) -> Result<Vec<Complex64>> {
    let c = (2.0 * std::f64::consts::PI).powf(1.5);
    energies
        .iter()
        .map(|&e| {
            source
                .fourier(e, [e * n[0], e * n[1], e * n[2]])
                .map(|v| c * v)
        })
        .collect()
}

/// Flat-space causal propagator of an integrand g, evaluated at the bulk
/// point with null coordinates (u, v, n), v > u, by quadrature over the box.
///
/// The retarded-minus-advanced kernel appears as the bracket
/// g(arg-) - g(arg+) with arg-+ = v/2 (1 -+ q) + u/2 (1 +- q),
/// q = |n - 2y/(v-u)|, weighted by 1/q.
pub fn kirchhoff_point(
    g: &(impl Fn(f64, [f64; 3]) -> f64 + ?Sized),
    bbox: ([f64; 3], [f64; 3]),
    u: f64,
    v: f64,
    n: [f64; 3],
    nodes_per_axis: usize,
) -> f64 {
    assert!(v > u, "kirchhoff kernel needs v > u");
    let (lo, hi) = bbox;
    let m = nodes_per_axis;
    let (gx, wx) = gauss_legendre_on(m, lo[0], hi[0]);
    let (gy, wy) = gauss_legendre_on(m, lo[1], hi[1]);
    let (gz, wz) = gauss_legendre_on(m, lo[2], hi[2]);
    let inv_span = 2.0 / (v - u);
    let mut acc = 0.0;
    for (ix, &x) in gx.iter().enumerate() {
        for (iy, &y) in gy.iter().enumerate() {
            let wxy = wx[ix] * wy[iy];
            for (iz, &z) in gz.iter().enumerate() {
                let qx = n[0] - inv_span * x;
                let qy = n[1] - inv_span * y;
                let qz = n[2] - inv_span * z;
                let q = (qx * qx + qy * qy + qz * qz).sqrt();
                if q <= SINGULAR_EPS {
                    continue;
                }
                let arg_m = 0.5 * v * (1.0 - q) + 0.5 * u * (1.0 + q);
                let arg_p = 0.5 * v * (1.0 + q) + 0.5 * u * (1.0 - q);
                let p = [x, y, z];
                acc += wxy * wz[iz] * (g(arg_m, p) - g(arg_p, p)) / q;
            }
        }
    }
    inv_span * acc
}

/// Causal propagator of chi^3 f at (u, v, n).
pub fn kirchhoff_source(
    source: &BulkSource,
    chi: &ConformalFactor,
    u: f64,
    v: f64,
    n: [f64; 3],
    quad: &Quadrature,
) -> Result<f64> {
    let bbox = quad.resolve_box(source)?;
    let g = |t: f64, y: [f64; 3]| {
        let r = (y[0] * y[0] + y[1] * y[1] + y[2] * y[2]).sqrt();
        chi.cubed(t, r) * source.eval(t, y)
    };
    Ok(kirchhoff_point(&g, bbox, u, v, n, quad.nodes_per_axis))
}

/// Bulk field rescaled by the Bondi conformal factor,
/// (1 + v^2)^{1/2} / 2 times the causal propagator of chi^3 f. Converges to
/// the boundary radiation profile as v -> infinity at fixed (u, n).
pub fn rescaled_bulk_field(
    source: &BulkSource,
    chi: &ConformalFactor,
    u: f64,
    v: f64,
    n: [f64; 3],
    quad: &Quadrature,
) -> Result<f64> {
    if v < V_GAUGE {
        return Err(Error::GaugeRegion {
            v,
            v_gauge: V_GAUGE,
        });
    }
    Ok(0.5 * (1.0 + v * v).sqrt() * kirchhoff_source(source, chi, u, v, n, quad)?)
}

/// Energy grid matched to a source's spectral decay: Gauss-Legendre nodes on
/// (0, e_max] with e_max chosen so the Gaussian spectra are negligible beyond.
pub fn source_energy_rule(source: &BulkSource, n_nodes: usize) -> (Vec<f64>, Vec<f64>) {
    let min_width = source
        .terms
        .iter()
        .map(|t| match (t.time, t.space) {
            (TimeProfile::Gaussian { width: s, .. }, SpaceProfile::Gaussian { width: w, .. }) => {
                (s * s + w * w).sqrt()
            }
            _ => 0.5,
        })
        .fold(f64::INFINITY, f64::min);
    let e_max = 16.0 / min_width.max(1e-3);
    gauss_legendre_on(n_nodes, 0.0, e_max)
}

/// Gauss-Legendre rule of the unit interval scaled for convergence fits.
pub fn unit_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    gauss_legendre(n)
}
