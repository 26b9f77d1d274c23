//! Grids, sampling, differentiation, interpolation and Fourier machinery
//! shared by the numerical modules.
//!
//! The sphere is discretized by a Gauss–Legendre rule in cos(theta) tensored
//! with uniform longitudes, which integrates spherical harmonics exactly up
//! to degree min(2 n_theta - 1, n_phi - 1). Retarded time runs on a uniform
//! window wide enough that every field of interest is numerically negligible
//! at both edges.

use std::collections::HashMap;
use std::io::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

use base64::Engine;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{derivative_4th, gauss_legendre, trapezoid, CubicSpline};

/// Default zero-padding factor for Fourier profiles. The spectral resolution
/// is 2 pi / (pad * n_u * h); 8 keeps endpoint-corrected E-quadratures below
/// 1e-7 relative error on the default grids.
pub const DEFAULT_PAD: usize = 8;

/// Quadrature grid on the unit sphere: Gauss–Legendre nodes in cos(theta)
/// tensored with uniform longitudes. Weights sum to 4 pi.
#[derive(Debug, Clone)]
pub struct SphereGrid {
    n_theta: usize,
    n_phi: usize,
    nodes: Vec<[f64; 3]>,
    weights: Vec<f64>,
    thetas: Vec<f64>,
    phis: Vec<f64>,
}

impl SphereGrid {
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Arc<Self>> {
        if n_theta < 4 || n_phi < 8 {
            return Err(Error::BadSize(format!(
                "sphere grid needs n_theta >= 4 and n_phi >= 8, got ({n_theta}, {n_phi})"
            )));
        }
        let (ct, wt) = gauss_legendre(n_theta);
        let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
        let mut nodes = Vec::with_capacity(n_theta * n_phi);
        let mut weights = Vec::with_capacity(n_theta * n_phi);
        let mut thetas = Vec::with_capacity(n_theta * n_phi);
        let mut phis = Vec::with_capacity(n_theta * n_phi);
        for (i, &c) in ct.iter().enumerate() {
            let s = (1.0 - c * c).max(0.0).sqrt();
            let theta = c.acos();
            for j in 0..n_phi {
                let phi = dphi * j as f64;
                nodes.push([s * phi.cos(), s * phi.sin(), c]);
                weights.push(wt[i] * dphi);
                thetas.push(theta);
                phis.push(phi);
            }
        }
        Ok(Arc::new(SphereGrid {
            n_theta,
            n_phi,
            nodes,
            weights,
            thetas,
            phis,
        }))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn node(&self, k: usize) -> [f64; 3] {
        self.nodes[k]
    }

    pub fn nodes(&self) -> &[[f64; 3]] {
        &self.nodes
    }

    pub fn weight(&self, k: usize) -> f64 {
        self.weights[k]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn theta(&self, k: usize) -> f64 {
        self.thetas[k]
    }

    pub fn phi(&self, k: usize) -> f64 {
        self.phis[k]
    }

    /// Quadrature of a function of the unit direction over the sphere.
    pub fn integrate(&self, f: impl Fn([f64; 3]) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&n, &w)| w * f(n))
            .sum()
    }

    /// Two grids are interchangeable when their defining sizes agree.
    pub fn same_layout(&self, other: &SphereGrid) -> bool {
        self.n_theta == other.n_theta && self.n_phi == other.n_phi
    }
}

/// Uniform grid in the retarded time u.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UGrid {
    pub u_min: f64,
    pub u_max: f64,
    pub n: usize,
}

impl UGrid {
    pub fn new(u_min: f64, u_max: f64, n: usize) -> Result<Self> {
        if n < 16 {
            return Err(Error::BadSize(format!("u grid needs n >= 16, got {n}")));
        }
        if !(u_max > u_min) {
            return Err(Error::BadSize(format!(
                "u grid needs u_max > u_min, got [{u_min}, {u_max}]"
            )));
        }
        Ok(UGrid { u_min, u_max, n })
    }

    pub fn h(&self) -> f64 {
        (self.u_max - self.u_min) / (self.n - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        self.u_min + self.h() * i as f64
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.node(i))
    }
}

/// Real samples psi(u, n) on a sphere x retarded-time tensor grid; the
/// concrete carrier of one-particle vectors at the null boundary.
#[derive(Debug, Clone)]
pub struct BoundaryField {
    sphere: Arc<SphereGrid>,
    ugrid: UGrid,
    /// Node-major storage: samples[node * n_u + i].
    samples: Vec<f64>,
}

impl BoundaryField {
    pub fn zeros(sphere: Arc<SphereGrid>, ugrid: UGrid) -> Self {
        let samples = vec![0.0; sphere.len() * ugrid.n];
        BoundaryField {
            sphere,
            ugrid,
            samples,
        }
    }

    /// Build a field from a closure of the direction and retarded time.
    pub fn from_fn(
        sphere: Arc<SphereGrid>,
        ugrid: UGrid,
        f: impl Fn([f64; 3], f64) -> f64 + Sync + Send,
    ) -> Self {
        use rayon::prelude::*;
        let n_u = ugrid.n;
        let f = &f;
        let samples: Vec<f64> = (0..sphere.len())
            .into_par_iter()
            .flat_map_iter(|k| {
                let n = sphere.node(k);
                (0..n_u).map(move |i| f(n, ugrid.node(i)))
            })
            .collect();
        BoundaryField {
            sphere,
            ugrid,
            samples,
        }
    }

    pub fn sphere(&self) -> &Arc<SphereGrid> {
        &self.sphere
    }

    pub fn ugrid(&self) -> UGrid {
        self.ugrid
    }

    pub fn profile(&self, node: usize) -> &[f64] {
        let n_u = self.ugrid.n;
        &self.samples[node * n_u..(node + 1) * n_u]
    }

    pub fn profile_mut(&mut self, node: usize) -> &mut [f64] {
        let n_u = self.ugrid.n;
        &mut self.samples[node * n_u..(node + 1) * n_u]
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn peak(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, &v| m.max(v.abs()))
    }

    /// Largest edge sample relative to the peak; the compact-support-in-window
    /// invariant asks this to be negligible.
    pub fn edge_residual(&self) -> f64 {
        let n_u = self.ugrid.n;
        let peak = self.peak();
        if peak == 0.0 {
            return 0.0;
        }
        let mut worst: f64 = 0.0;
        for k in 0..self.sphere.len() {
            let p = self.profile(k);
            worst = worst.max(p[0].abs()).max(p[n_u - 1].abs());
        }
        worst / peak
    }

    pub fn same_grids(&self, other: &BoundaryField) -> bool {
        self.sphere.same_layout(&other.sphere) && self.ugrid == other.ugrid
    }

    /// In-place linear combination self += c * other.
    pub fn add_scaled(&mut self, c: f64, other: &BoundaryField) -> Result<()> {
        if !self.same_grids(other) {
            return Err(Error::GridMismatch("add_scaled".into()));
        }
        for (a, b) in self.samples.iter_mut().zip(&other.samples) {
            *a += c * b;
        }
        Ok(())
    }

    pub fn scaled(&self, c: f64) -> BoundaryField {
        let mut out = self.clone();
        for v in &mut out.samples {
            *v *= c;
        }
        out
    }

    /// Fourth-order partial derivative in u, node by node.
    pub fn d_du(&self) -> BoundaryField {
        use rayon::prelude::*;
        let h = self.ugrid.h();
        let n_u = self.ugrid.n;
        let samples: Vec<f64> = (0..self.sphere.len())
            .into_par_iter()
            .flat_map_iter(|k| derivative_4th(self.profile(k), h).into_iter())
            .collect();
        debug_assert_eq!(samples.len(), self.sphere.len() * n_u);
        BoundaryField {
            sphere: self.sphere.clone(),
            ugrid: self.ugrid,
            samples,
        }
    }

    /// Resample through a per-node reparametrization of the retarded time:
    /// out(u, n) = self(map(n, u), n), cubic-spline interpolated, zero
    /// outside the original window.
    ///
    /// The map must be strictly monotone in u at every node.
    pub fn resample(&self, map: impl Fn(usize, f64) -> f64 + Sync) -> Result<BoundaryField> {
        use rayon::prelude::*;
        let n_u = self.ugrid.n;
        let h = self.ugrid.h();
        let u0 = self.ugrid.u_min;
        let per_node: Vec<std::result::Result<Vec<f64>, usize>> = (0..self.sphere.len())
            .into_par_iter()
            .map(|k| {
                let abscissae: Vec<f64> = (0..n_u).map(|i| map(k, self.ugrid.node(i))).collect();
                let increasing = abscissae.windows(2).all(|w| w[1] > w[0]);
                let decreasing = abscissae.windows(2).all(|w| w[1] < w[0]);
                if !(increasing || decreasing) {
                    return Err(k);
                }
                let spline = CubicSpline::fit_uniform(u0, h, self.profile(k));
                Ok(abscissae.iter().map(|&x| spline.eval(x)).collect())
            })
            .collect();
        let mut samples = Vec::with_capacity(self.samples.len());
        for row in per_node {
            match row {
                Ok(mut v) => samples.append(&mut v),
                Err(node) => return Err(Error::NonMonotoneMap { node }),
            }
        }
        Ok(BoundaryField {
            sphere: self.sphere.clone(),
            ugrid: self.ugrid,
            samples,
        })
    }

    /// Trapezoid quadrature of a per-node function of the samples, summed
    /// over the sphere with quadrature weights.
    pub fn integrate_nodes(&self, per_node: impl Fn(usize, &[f64]) -> f64 + Sync) -> f64 {
        use rayon::prelude::*;
        let vals: Vec<f64> = (0..self.sphere.len())
            .into_par_iter()
            .map(|k| self.sphere.weight(k) * per_node(k, self.profile(k)))
            .collect();
        vals.iter().sum()
    }

    /// One-dimensional Fourier profile of one node, restricted to E >= 0.
    pub fn e_profile(&self, node: usize) -> EProfile {
        self.e_profile_padded(node, DEFAULT_PAD)
    }

    pub fn e_profile_padded(&self, node: usize, pad: usize) -> EProfile {
        e_profile_of(self.profile(node), self.ugrid, pad)
    }

    /// CSV rows (node index, theta, phi, u, value), RFC 4180 line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("node,theta,phi,u,value\r\n");
        for k in 0..self.sphere.len() {
            let theta = self.sphere.theta(k);
            let phi = self.sphere.phi(k);
            for (i, &v) in self.profile(k).iter().enumerate() {
                let u = self.ugrid.node(i);
                out.push_str(&format!(
                    "{k},{theta:.17e},{phi:.17e},{u:.17e},{v:.17e}\r\n"
                ));
            }
        }
        out
    }

    pub fn write_csv(&self, path: &std::path::Path) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(self.to_csv().as_bytes())?;
        Ok(())
    }

    /// Compact JSON descriptor: grid sizes plus base64 little-endian samples.
    pub fn to_descriptor(&self) -> FieldDescriptor {
        let mut bytes = Vec::with_capacity(self.samples.len() * 8);
        for &v in &self.samples {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
        FieldDescriptor {
            schema: "scri-holo/1".into(),
            n_theta: self.sphere.n_theta,
            n_phi: self.sphere.n_phi,
            u: self.ugrid,
            samples_b64: base64::engine::general_purpose::STANDARD.encode(bytes),
        }
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<BoundaryField> {
        let sphere = SphereGrid::new(d.n_theta, d.n_phi)?;
        let bytes = base64::engine::general_purpose::STANDARD
            .decode(&d.samples_b64)
            .map_err(|e| Error::Config(format!("bad base64 samples: {e}")))?;
        if bytes.len() != sphere.len() * d.u.n * 8 {
            return Err(Error::Config(format!(
                "sample payload has {} bytes, grids need {}",
                bytes.len(),
                sphere.len() * d.u.n * 8
            )));
        }
        let samples: Vec<f64> = bytes
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Ok(BoundaryField {
            sphere,
            ugrid: d.u,
            samples,
        })
    }

    /// Trapezoid of f(u)^2 du at one node (helper for norms in u-space).
    pub fn l2_sq_u(&self, node: usize) -> f64 {
        let h = self.ugrid.h();
        let sq: Vec<f64> = self.profile(node).iter().map(|v| v * v).collect();
        trapezoid(&sq, h)
    }
}

/// Serializable compact form of a [`BoundaryField`].
#[derive(Debug, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub schema: String,
    pub n_theta: usize,
    pub n_phi: usize,
    pub u: UGrid,
    pub samples_b64: String,
}

/// One-sided Fourier data of a single u-profile.
///
/// Values are hat(psi)(E_k) = (2 pi)^{-1/2} Int psi(u) e^{+i E_k u} du for
/// E_k = k dE, k = 0..n_pos, computed from the zero-padded DFT. `values[0]`
/// is the E = 0 limit, kept for the endpoint-corrected quadratures.
#[derive(Debug, Clone)]
pub struct EProfile {
    pub de: f64,
    /// hat(psi) at E_k = k * de, k = 0..=n_pos (index 0 is E = 0).
    pub values: Vec<Complex64>,
    /// Grid fingerprint: (n_pad, h, u_min) of the generating window.
    pub meta: (usize, u64, u64),
}

impl EProfile {
    pub fn energies(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(move |k| k as f64 * self.de)
    }

    pub fn compatible(&self, other: &EProfile) -> bool {
        self.meta == other.meta
    }
}

fn fft_plan(n: usize) -> Arc<dyn Fft<f64>> {
    static PLANS: OnceLock<Mutex<HashMap<usize, Arc<dyn Fft<f64>>>>> = OnceLock::new();
    let plans = PLANS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = plans.lock().unwrap();
    guard
        .entry(n)
        .or_insert_with(|| FftPlanner::new().plan_fft_forward(n))
        .clone()
}

/// Fourier profile of raw samples on a uniform window.
pub fn e_profile_of(samples: &[f64], ugrid: UGrid, pad: usize) -> EProfile {
    assert!(pad >= 4, "zero-padding factor must be at least 4");
    let n_u = samples.len();
    let n_pad = (n_u * pad).next_power_of_two();
    let h = ugrid.h();
    let u0 = ugrid.u_min;
    let mut buf: Vec<Complex64> = Vec::with_capacity(n_pad);
    buf.extend(samples.iter().map(|&v| Complex64::new(v, 0.0)));
    buf.resize(n_pad, Complex64::new(0.0, 0.0));
    fft_plan(n_pad).process(&mut buf);
    // Forward DFT gives sum_j psi_j e^{-2 pi i jk/N}; conjugation (real input)
    // yields the e^{+iEu} convention, and the window origin adds the phase
    // e^{+i E u0}.
    let de = 2.0 * std::f64::consts::PI / (n_pad as f64 * h);
    let scale = h / (2.0 * std::f64::consts::PI).sqrt();
    let n_pos = n_pad / 2;
    let values: Vec<Complex64> = (0..n_pos)
        .map(|k| {
            let e = k as f64 * de;
            let phase = Complex64::from_polar(1.0, e * u0);
            scale * phase * buf[k].conj()
        })
        .collect();
    EProfile {
        de,
        values,
        meta: (n_pad, h.to_bits(), u0.to_bits()),
    }
}
