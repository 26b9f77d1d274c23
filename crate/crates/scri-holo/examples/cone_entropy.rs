//! Relative entropies of a coherent boundary profile on deformed cones:
//! constant, apex and harmonic cuts, with the closed-form spot value and
//! the monotonicity of nested strips.
//!
//! Run:
//!   cargo run --release -p scri-holo --example cone_entropy

use scri_holo::{
    apex_cut, entropy, radiation_field, BoundaryField, BulkSource, CartesianEvent, ConformalFactor,
    CutFunction, Quadrature, SphereGrid, UGrid,
};

fn main() {
    let sphere = SphereGrid::new(32, 64).unwrap();
    let ugrid = UGrid::new(-12.0, 12.0, 1024).unwrap();

    // spot value: unit Gaussian profile, cut at zero, entropy 2 pi^2
    let gauss = BoundaryField::from_fn(sphere.clone(), ugrid, |_, u| (-0.5 * u * u).exp());
    let r = entropy(&gauss, &CutFunction::Constant(0.0)).unwrap();
    let expect = 2.0 * std::f64::consts::PI * std::f64::consts::PI;
    println!("# Closed-form spot value");
    println!("entropy(unit gaussian, cut 0) = {:.10}", r.total);
    println!("2 pi^2                        = {expect:.10}");
    println!(
        "relative deviation            = {:.3e}\n",
        (r.total - expect).abs() / expect
    );

    // physical profile from a bulk source
    let src = BulkSource::single_gaussian(1.0, 0.5, 0.7, [0.4, -0.3, 0.2], 0.9);
    let psi = radiation_field(
        &src,
        &ConformalFactor::One,
        &sphere,
        ugrid,
        &Quadrature::default(),
    )
    .unwrap();

    println!("# Monotonicity in the cut (larger cut, smaller strip)");
    println!("cut\tentropy");
    let mut prev = f64::INFINITY;
    for c in [-3.0, -2.0, -1.0, 0.0, 1.0, 2.0] {
        let s = entropy(&psi, &CutFunction::Constant(c)).unwrap().total;
        println!("{c}\t{s:.8}");
        assert!(s <= prev + 1e-12);
        prev = s;
    }

    println!("\n# Cut families at fixed scale");
    let families: Vec<(&str, CutFunction)> = vec![
        ("constant -1", CutFunction::Constant(-1.0)),
        (
            "apex (t=-1, x=0.3 e_z)",
            apex_cut(CartesianEvent::new(-1.0, [0.0, 0.0, 0.3])),
        ),
        (
            "harmonic dipole",
            CutFunction::HarmonicSum {
                coeffs: vec![-(4.0 * std::f64::consts::PI).sqrt() * 0.0, 0.2, -1.0, 0.15],
            },
        ),
    ];
    println!("family\ttotal\tmax density\tmin density");
    for (name, cut) in &families {
        let rep = entropy(&psi, cut).unwrap();
        let max_d = rep
            .per_angle
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        let min_d = rep.per_angle.iter().cloned().fold(f64::INFINITY, f64::min);
        println!("{name}\t{:.6}\t{max_d:.6}\t{min_d:.6}", rep.total);
    }

    println!("\n# Quadratic scaling");
    let c = CutFunction::Constant(-1.0);
    let s1 = entropy(&psi, &c).unwrap().total;
    let s2 = entropy(&psi.scaled(2.0), &c).unwrap().total;
    println!(
        "S(psi) = {s1:.8}, S(2 psi) = {s2:.8}, ratio = {:.12}",
        s2 / s1
    );
}
