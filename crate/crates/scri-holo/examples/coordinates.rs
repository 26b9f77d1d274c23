//! Coordinate atlas of the compactification: null and compact charts,
//! conformal-factor gauges, and the boundary limit along outgoing rays.
//!
//! Run:
//!   cargo run --release -p scri-holo --example coordinates

use scri_holo::{
    boundary_conformal_factor, from_null, retarded_time_along_ray, to_compact, to_null,
    CartesianEvent, ConformalFactor, NullCoords, OmegaGauge,
};

fn main() {
    println!("# Null and compact charts");
    println!("t\tx\t\tu\tv\tU\tV");
    for (t, x) in [
        (2.0, [1.0, 0.0, 0.0]),
        (0.0, [0.0, 0.0, 1.0]),
        (-1.0, [0.3, 0.4, 0.0]),
    ] {
        let nc = to_null(CartesianEvent::new(t, x)).unwrap();
        let cc = to_compact(nc);
        println!(
            "{t}\t{x:?}\t{:.4}\t{:.4}\t{:.4}\t{:.4}",
            nc.u, nc.v, cc.big_u, cc.big_v
        );
    }

    println!("\n# Round-trip residuals across radii");
    println!("r\tresidual");
    for e in [-6, -3, 0, 3, 6] {
        let r = 10f64.powi(e);
        let ev = CartesianEvent::new(0.7, [r, 0.0, 0.0]);
        let back = from_null(to_null(ev).unwrap());
        let resid = ((back.t - ev.t).abs()).max((back.x[0] - ev.x[0]).abs()) / (1.0 + r);
        println!("1e{e}\t{resid:.3e}");
    }

    println!("\n# Conformal factor in both gauges (chi = 1)");
    println!("v\tBondi\tEinsteinStatic\tratio");
    for v in [0.0, 1.0, 10.0, 100.0] {
        let nc = NullCoords {
            u: 0.0,
            v,
            n: [0.0, 0.0, 1.0],
        };
        let b = boundary_conformal_factor(&ConformalFactor::One, &nc, OmegaGauge::Bondi);
        let e = boundary_conformal_factor(&ConformalFactor::One, &nc, OmegaGauge::EinsteinStatic);
        println!("{v}\t{b:.5}\t{e:.5}\t{:.5}", b / e);
    }

    println!("\n# Boundary limit along an outgoing ray (limit = t - x.n)");
    let x = CartesianEvent::new(1.0, [1.0, 0.0, 0.0]);
    let n = [0.0, 0.0, 1.0];
    println!("lambda\tu(lambda)\t|u - limit|");
    let mut prev = f64::NAN;
    for lam in [1e1, 1e2, 1e3, 1e4, 1e5] {
        let u = retarded_time_along_ray(x, n, lam);
        let err = (u - 1.0).abs();
        println!("{lam:.0e}\t{u:.8}\t{err:.3e}");
        if !prev.is_nan() {
            assert!(err < prev, "decay along the ray should be monotone");
        }
        prev = err;
    }
    println!("\nthe error falls off like 1/lambda, as the rationalized form shows");
}
