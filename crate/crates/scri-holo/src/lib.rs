//! Null-infinity radiation data and entropies of deformed light cones for a
//! massless, conformally coupled scalar field on spacetimes conformal to
//! flat space.
//!
//! The library computes, at desk scale:
//!
//! - the boundary radiation profile of a smooth bulk source (a plane-wave
//!   transform of the conformally weighted source along null directions),
//!   together with its momentum-space form and a finite-advanced-time
//!   Kirchhoff representation converging to it ([`holography`]);
//! - one-particle inner products, symplectic forms and norms of boundary
//!   data, built per angle from the chiral half-line inner product
//!   ([`one_particle`]);
//! - modular flows of half-strips, the modular quadratic form, relative
//!   entropies of coherent states on deformed cones, and the QNEC / ANEC /
//!   monotonicity / superadditivity checks that come with them
//!   ([`entropy`]);
//! - the bulk stress-tensor representation of the same entropy
//!   ([`stress`]);
//! - the Penrose-style coordinate atlas, cut functions on the sphere, and
//!   region predicates for deformed cones ([`geometry`]).
//!
//! Start with the runnable examples (`cargo run --release --example ...`):
//! each major capability has one. The `scri-holo` binary drives the same
//! code from JSON configuration files, and [`suite`] holds the verification
//! battery with pinned tolerances.

pub mod config;
pub mod conformal;
pub mod entropy;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod holography;
pub mod numerics;
pub mod one_particle;
pub mod oracle;
pub mod source;
pub mod stress;
pub mod suite;

pub use conformal::ConformalFactor;
pub use entropy::{
    anec, deformation_scan, distorted_dilate, distorted_translate, entropy, entropy_derivative,
    entropy_second_derivative, modular_flow, modular_form, relative_entropy_between,
    superadditivity_residual, AnecValue, DeformationScan, EntropyReport,
};
pub use error::{Error, Result};
pub use geometry::{
    apex_cut, boundary_conformal_factor, covering_apex, from_compact, from_null, in_deformed_cone,
    retarded_time_along_ray, to_compact, to_null, CartesianEvent, CompactCoords, CutFunction,
    NullCoords, OmegaGauge, ScriPoint,
};
pub use grid::{BoundaryField, EProfile, FieldDescriptor, SphereGrid, UGrid};
pub use holography::{
    kirchhoff_point, kirchhoff_source, radiation_field, radiation_point_quad3d, radiation_spectrum,
    rescaled_bulk_field, Quadrature, V_GAUGE,
};
pub use one_particle::{
    boundary_inner, boundary_norm_sq, boundary_symplectic, complex_inner, momentum_norm_sq,
    real_inner, symplectic_form, LineProfile,
};
pub use source::{BulkSource, SourceTerm, SpaceProfile, TimeProfile};
pub use stress::{assemble_stress_field, entropy_from_stress, ricci_uu, stress_uu_profile};
