//! Window construction: the smooth bump, near-field radii, and the
//! automatically sized periodization windows that make a non-periodic
//! problem safe for Fourier treatment on a bounding square.
//!
//! Run: cargo run --example window_cases

use tff2d::geometry::{Boundary, Geometry};
use tff2d::windows::{bump, periodization_window, RadialWindow};

fn main() {
    // The bump transitions from 1 to 0 over (0, 1) with all derivatives
    // vanishing at both ends; that flat contact is what keeps windowed
    // factors spectrally tame.
    println!("bump profile:");
    for u in [0.0, 0.25, 0.5, 0.75, 1.0] {
        println!("  bump({u:.2}) = {:.12}", bump(u));
    }

    let w = RadialWindow::new(0.25, 1.0);
    println!("\nnear-field window w0=0.25 w1=1:");
    for r in [0.1, 0.25, 0.5, 0.9, 1.0, 1.5] {
        println!(
            "  W({r:.2}) = {:.6}   1-W = {:.6}",
            w.eval(r),
            w.eval_complement(r)
        );
    }

    // Periodization windows are sized from the geometry: the density
    // window must be flat over every domain point, the kernel window flat
    // over every difference of domain points, and both must die before
    // half the square period.
    let geom = Geometry::new(Boundary::Teardrop { lx: 3.0, ly: 2.0 }).unwrap();
    let half = 1.6 * std::f64::consts::PI;
    println!(
        "\nteardrop farthest point {:.6}, diameter {:.6}",
        geom.max_point_norm(),
        geom.diameter()
    );
    let wd = periodization_window(geom.max_point_norm(), half).unwrap();
    let wk = periodization_window(geom.diameter(), half).unwrap();
    println!(
        "density window: plateau to {:.4}, support to {:.4}",
        wd.w0, wd.w1
    );
    println!(
        "kernel  window: plateau to {:.4}, support to {:.4}",
        wk.w0, wk.w1
    );
    println!("half period    {half:.4}");

    // Too small a square: the window request is rejected rather than
    // silently aliasing the domain across the period seam.
    match periodization_window(geom.diameter(), 2.0) {
        Err(e) => println!("\nhalf period 2.0 rejected: {e}"),
        Ok(_) => unreachable!(),
    }
}
