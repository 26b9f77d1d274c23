//! Radiation profile of a bulk source at null infinity, with the
//! momentum-space norm identity as a cross-check.
//!
//! Run:
//!   cargo run --release -p scri-holo --example boundary_transform

use scri_holo::{
    boundary_norm_sq, momentum_norm_sq, radiation_field, radiation_spectrum, BulkSource,
    ConformalFactor, Quadrature, SphereGrid, UGrid,
};

fn main() {
    let src = BulkSource::single_gaussian(1.0, 0.5, 0.7, [0.4, -0.3, 0.2], 0.9);
    let sphere = SphereGrid::new(32, 64).unwrap();
    let (lo, hi) = src.u_support();
    let ugrid = UGrid::new(lo - 0.5, hi + 0.5, 1024).unwrap();
    eprintln!(
        "transforming source on {} nodes x {} retarded times ...",
        sphere.len(),
        ugrid.n
    );

    let field = radiation_field(
        &src,
        &ConformalFactor::One,
        &sphere,
        ugrid,
        &Quadrature::default(),
    )
    .unwrap();
    println!("# Radiation profile along one meridian (node, u at peak, peak value)");
    for k in (0..sphere.len()).step_by(sphere.len() / 8) {
        let profile = field.profile(k);
        let (imax, vmax) = profile
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .unwrap();
        println!("{k}\t{:.4}\t{vmax:.6}", ugrid.node(imax));
    }

    let boundary = boundary_norm_sq(&field).unwrap();
    let momentum = momentum_norm_sq(&src).unwrap();
    println!("\n# Norm identity");
    println!("boundary norm^2  = {boundary:.10}");
    println!("momentum norm^2  = {momentum:.10}");
    println!(
        "relative diff    = {:.3e}",
        (boundary - momentum).abs() / momentum
    );

    // spectral form along one direction
    let n = sphere.node(7);
    let p = field.e_profile(7);
    let energies: Vec<f64> = p.energies().take(200).collect();
    let spec = radiation_spectrum(&src, n, &energies).unwrap();
    let max_dev = p
        .values
        .iter()
        .zip(&spec)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    println!("\n# Spectrum vs analytic transform at one node: max dev {max_dev:.3e}");

    let out = std::path::Path::new("out");
    std::fs::create_dir_all(out).unwrap();
    field.write_csv(&out.join("boundary_field.csv")).unwrap();
    std::fs::write(
        out.join("boundary_field.json"),
        serde_json::to_string_pretty(&field.to_descriptor()).unwrap(),
    )
    .unwrap();
    println!("\nwrote out/boundary_field.csv and out/boundary_field.json");
}
