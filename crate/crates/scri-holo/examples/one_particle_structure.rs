//! One-particle structure per angle: the complex inner product splits into
//! a real metric plus the symplectic form, and the regularized double-kernel
//! extrapolates to the same number.
//!
//! Run:
//!   cargo run --release -p scri-holo --example one_particle_structure

use scri_holo::oracle::epsilon_kernel_inner;
use scri_holo::{complex_inner, real_inner, symplectic_form, LineProfile, UGrid};

fn main() {
    let ugrid = UGrid::new(-16.0, 16.0, 1024).unwrap();
    let f = LineProfile::from_fn(ugrid, |u| (-0.5 * (u - 0.3) * (u - 0.3)).exp());
    let h = LineProfile::from_fn(ugrid, |u| {
        0.8 * (-0.5 * (u + 0.8) * (u + 0.8) / 0.49).exp() - 0.3 * (-0.5 * u * u / 1.5).exp()
    });

    let ip = complex_inner(&f, &h).unwrap();
    let re = real_inner(&f, &h).unwrap();
    let be = symplectic_form(&f, &h).unwrap();
    println!("# Decomposition <f,h> = real + i symplectic");
    println!("<f,h>          = {:.10} + {:.10} i", ip.re, ip.im);
    println!("real part      = {re:.10}");
    println!("symplectic     = {be:.10}");
    println!(
        "residual       = {:.3e}",
        (ip - num_complex::Complex64::new(re, be)).norm()
    );

    println!("\n# Positivity and Cauchy-Schwarz");
    let nf = complex_inner(&f, &f).unwrap().re;
    let nh = complex_inner(&h, &h).unwrap().re;
    println!("|f|^2 = {nf:.8}, |h|^2 = {nh:.8}");
    println!(
        "|<f,h>|^2 / (|f|^2 |h|^2) = {:.6}",
        ip.norm_sqr() / (nf * nh)
    );

    println!("\n# Regularized kernel route, extrapolated over eps = 0.1, 0.05, 0.025");
    let oracle = epsilon_kernel_inner(&f, &h, &[0.1, 0.05, 0.025]).unwrap();
    println!(
        "kernel extrapolation = {:.10} + {:.10} i",
        oracle.re, oracle.im
    );
    println!(
        "relative deviation   = {:.3e}",
        (ip - oracle).norm() / ip.norm()
    );
}
