//! One-particle structure of the boundary theory: symplectic forms, the
//! half-line (chiral-current) inner product per angle, their aggregation
//! over the sphere, and the momentum-space norm of bulk sources.
//!
//! Per angle the complex inner product is the positive-energy quadratic form
//!
//!   <f, h> = Int_0^inf conj(hat f(E)) hat h(E) E dE,
//!
//! whose real part is the real inner product (1/2) Int |E| hat f(-E) hat h(E) dE
//! and whose imaginary part is the symplectic form (1/2) Int f dh/du du for
//! real profiles. All energy integrals come from zero-padded DFT profiles
//! with an Euler-Maclaurin endpoint correction that restores O(dE^4)
//! accuracy at E = 0.

use num_complex::Complex64;
use rayon::prelude::*;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::{e_profile_of, BoundaryField, EProfile, SphereGrid, UGrid, DEFAULT_PAD};
use crate::numerics::{derivative_4th, trapezoid};
use crate::source::BulkSource;

/// Real function of the retarded time sampled on a uniform window; the
/// per-angle vector of the one-particle space.
#[derive(Debug, Clone)]
pub struct LineProfile {
    pub ugrid: UGrid,
    pub samples: Vec<f64>,
}

impl LineProfile {
    pub fn from_fn(ugrid: UGrid, f: impl Fn(f64) -> f64) -> Self {
        LineProfile {
            ugrid,
            samples: ugrid.nodes().map(f).collect(),
        }
    }

    pub fn from_field(field: &BoundaryField, node: usize) -> Self {
        LineProfile {
            ugrid: field.ugrid(),
            samples: field.profile(node).to_vec(),
        }
    }

    pub fn spectrum(&self) -> EProfile {
        e_profile_of(&self.samples, self.ugrid, DEFAULT_PAD)
    }

    fn check_grid(&self, other: &LineProfile) -> Result<()> {
        if self.ugrid != other.ugrid {
            return Err(Error::GridMismatch("profiles on different u grids".into()));
        }
        Ok(())
    }
}

/// Symplectic form (1/2) Int f(u) h'(u) du of two real profiles.
pub fn symplectic_form(f: &LineProfile, h: &LineProfile) -> Result<f64> {
    f.check_grid(h)?;
    let dh = derivative_4th(&h.samples, h.ugrid.h());
    let prod: Vec<f64> = f.samples.iter().zip(&dh).map(|(a, b)| a * b).collect();
    Ok(0.5 * trapezoid(&prod, f.ugrid.h()))
}

/// Positive-energy inner product of two spectra on a shared energy grid.
pub fn complex_inner_spectra(f: &EProfile, h: &EProfile) -> Result<Complex64> {
    if !f.compatible(h) {
        return Err(Error::GridMismatch("spectra from different windows".into()));
    }
    let de = f.de;
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, (a, b)) in f.values.iter().zip(&h.values).enumerate().skip(1) {
        acc += a.conj() * b * (k as f64 * de);
    }
    // Euler-Maclaurin endpoint term: the integrand E conj(f) h vanishes at
    // E = 0 with slope conj(f(0)) h(0).
    Ok(acc * de + f.values[0].conj() * h.values[0] * (de * de / 12.0))
}

/// Per-angle complex inner product of real profiles.
pub fn complex_inner(f: &LineProfile, h: &LineProfile) -> Result<Complex64> {
    f.check_grid(h)?;
    complex_inner_spectra(&f.spectrum(), &h.spectrum())
}

/// Real part of the complex inner product (the real one-particle metric).
pub fn real_inner(f: &LineProfile, h: &LineProfile) -> Result<f64> {
    Ok(complex_inner(f, h)?.re)
}

/// Sphere-aggregated inner product of two boundary fields.
pub fn boundary_inner(a: &BoundaryField, b: &BoundaryField) -> Result<Complex64> {
    if !a.same_grids(b) {
        return Err(Error::GridMismatch(
            "boundary fields on different grids".into(),
        ));
    }
    let sphere = a.sphere().clone();
    let ugrid = a.ugrid();
    let per_node: Vec<Complex64> = (0..sphere.len())
        .into_par_iter()
        .map(|k| {
            let fa = e_profile_of(a.profile(k), ugrid, DEFAULT_PAD);
            let fb = e_profile_of(b.profile(k), ugrid, DEFAULT_PAD);
            complex_inner_spectra(&fa, &fb).expect("same window by construction") * sphere.weight(k)
        })
        .collect();
    Ok(per_node.iter().sum())
}

/// Norm squared of a boundary field in the one-particle space.
pub fn boundary_norm_sq(a: &BoundaryField) -> Result<f64> {
    Ok(boundary_inner(a, a)?.re)
}

/// Boundary symplectic form (1/2) Iint (psi1 d_u psi2 - psi2 d_u psi1) du dS^2,
/// oriented so that it equals twice the imaginary part of [`boundary_inner`].
pub fn boundary_symplectic(a: &BoundaryField, b: &BoundaryField) -> Result<f64> {
    if !a.same_grids(b) {
        return Err(Error::GridMismatch(
            "boundary fields on different grids".into(),
        ));
    }
    let da = a.d_du();
    let db = b.d_du();
    let h = a.ugrid().h();
    let sphere = a.sphere().clone();
    let per_node: Vec<f64> = (0..sphere.len())
        .into_par_iter()
        .map(|k| {
            let pa = a.profile(k);
            let pb = b.profile(k);
            let qa = da.profile(k);
            let qb = db.profile(k);
            let integrand: Vec<f64> = (0..pa.len())
                .map(|i| pa[i] * qb[i] - pb[i] * qa[i])
                .collect();
            0.5 * trapezoid(&integrand, h) * sphere.weight(k)
        })
        .collect();
    Ok(per_node.iter().sum())
}

/// Momentum-space norm of the boundary data of an all-Gaussian source:
/// (2 pi)^3 Int d3p/|p| |hat f(|p|, p)|^2, by spherical quadrature of the
/// analytic transform. Equals the boundary norm of the radiation profile
/// when chi = 1.
pub fn momentum_norm_sq(source: &BulkSource) -> Result<f64> {
    momentum_norm_sq_with(source, &SphereGrid::new(32, 64)?, 400)
}

pub fn momentum_norm_sq_with(
    source: &BulkSource,
    directions: &Arc<SphereGrid>,
    n_energy: usize,
) -> Result<f64> {
    let (en, ew) = crate::holography::source_energy_rule(source, n_energy);
    let vals: Vec<Result<f64>> = directions
        .nodes()
        .par_iter()
        .zip(directions.weights().par_iter())
        .map(|(&n, &w)| {
            let mut acc = 0.0;
            for (&e, &we) in en.iter().zip(&ew) {
                let f = source.fourier(e, [e * n[0], e * n[1], e * n[2]])?;
                acc += we * e * f.norm_sqr();
            }
            Ok(w * acc)
        })
        .collect();
    let mut total = 0.0;
    for v in vals {
        total += v?;
    }
    Ok((2.0 * std::f64::consts::PI).powi(3) * total)
}
