//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the numerical operations.
#[derive(Debug, Error)]
pub enum Error {
    /// Angular direction undefined at the spatial origin (r = 0).
    #[error("degenerate origin: r = 0, angular direction undefined")]
    DegenerateOrigin,

    /// Grid construction parameters below the supported minimum.
    #[error("bad grid size: {0}")]
    BadSize(String),

    /// A per-node reparametrization handed to `resample` is not strictly monotone.
    #[error("non-monotone reparametrization at node {node}")]
    NonMonotoneMap { node: usize },

    /// Two fields or profiles live on different grids.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// Source support does not fit the configured quadrature box.
    #[error("source support exceeds quadrature box: {0}")]
    SupportOverflow(String),

    /// Analytic Fourier data requested for a non-Gaussian source term.
    #[error("analytic Fourier transform unavailable: source has a non-Gaussian term")]
    NonGaussianTerm,

    /// Advanced time too small for the large-v conformal gauge.
    #[error("v = {v} below the gauge region threshold v_gauge = {v_gauge}")]
    GaugeRegion { v: f64, v_gauge: f64 },

    /// Boundary point lies at or below the cut, no covering cone exists.
    #[error("point not in the half-strip: u = {u} <= cut = {cut}")]
    NotInStrip { u: f64, cut: f64 },

    /// A cut value falls below the u-window of the field.
    #[error("cut {cut} at node {node} below window start {u_min}")]
    CutOutsideWindow { node: usize, cut: f64, u_min: f64 },

    /// Field carries material amplitude below the cut where the operation
    /// requires support inside the half-strip.
    #[error(
        "field not supported above the cut (node {node}, |psi| = {amplitude:.3e} below u = {cut})"
    )]
    SupportViolation {
        node: usize,
        cut: f64,
        amplitude: f64,
    },

    /// Deformation profile takes negative values.
    #[error("deformation profile negative at node {node}: {value}")]
    NegativeDeformation { node: usize, value: f64 },

    /// Configuration file failed validation.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
