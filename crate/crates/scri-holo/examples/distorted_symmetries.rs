//! Distorted lightlike translations and dilations: unitarity on the
//! one-particle space and entropy covariance under strip translation.
//!
//! Run:
//!   cargo run --release -p scri-holo --example distorted_symmetries

use scri_holo::{
    boundary_inner, distorted_dilate, distorted_translate, entropy, radiation_field, BulkSource,
    ConformalFactor, CutFunction, Quadrature, SphereGrid, UGrid,
};

fn main() {
    let sphere = SphereGrid::new(32, 64).unwrap();
    let ugrid = UGrid::new(-12.0, 12.0, 1024).unwrap();
    let src = BulkSource::single_gaussian(1.0, 1.5, 0.8, [0.3, 0.0, -0.2], 0.9);
    let psi = radiation_field(
        &src,
        &ConformalFactor::One,
        &sphere,
        ugrid,
        &Quadrature::default(),
    )
    .unwrap();
    let shift = CutFunction::HarmonicSum {
        coeffs: vec![0.3, -0.1, 0.2, 0.05],
    };

    println!("# Entropy covariance under distorted translation");
    let cut = CutFunction::Constant(-2.0);
    let s0 = entropy(&psi, &cut).unwrap().total;
    let translated = distorted_translate(&psi, &shift).unwrap();
    let shifted_cut = cut.shifted_by(&shift, 1.0, &sphere).unwrap();
    let s1 = entropy(&translated, &shifted_cut).unwrap().total;
    println!("S(psi, C)            = {s0:.10}");
    println!("S(T_A psi, C + A)    = {s1:.10}");
    println!("relative deviation   = {:.3e}", (s0 - s1).abs() / s0);

    println!("\n# Unitarity of the distorted maps");
    let src2 = BulkSource::single_gaussian(0.6, 0.8, 0.7, [0.0, 0.4, 0.1], 1.0);
    let phi = radiation_field(
        &src2,
        &ConformalFactor::One,
        &sphere,
        ugrid,
        &Quadrature::default(),
    )
    .unwrap();
    let ip0 = boundary_inner(&psi, &phi).unwrap();
    let ip_t = boundary_inner(
        &distorted_translate(&psi, &shift).unwrap(),
        &distorted_translate(&phi, &shift).unwrap(),
    )
    .unwrap();
    let mild = CutFunction::HarmonicSum {
        coeffs: vec![0.05, 0.02, -0.03, 0.01],
    };
    let ip_d = boundary_inner(
        &distorted_dilate(&psi, &mild).unwrap(),
        &distorted_dilate(&phi, &mild).unwrap(),
    )
    .unwrap();
    println!("<psi, phi>            = {ip0:.8}");
    println!(
        "after translation     = {ip_t:.8}  (rel {:.2e})",
        (ip0 - ip_t).norm() / ip0.norm()
    );
    println!(
        "after dilation        = {ip_d:.8}  (rel {:.2e})",
        (ip0 - ip_d).norm() / ip0.norm()
    );
}
