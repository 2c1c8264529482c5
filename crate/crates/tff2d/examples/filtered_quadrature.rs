//! The 1D core in isolation: integrating a smooth periodic factor against
//! a discontinuous or singular one by filtering the bad factor.
//!
//! Run: cargo run --example filtered_quadrature

use std::f64::consts::TAU;
use tff2d::filtered_quad::filtered_integral;
use tff2d::series::{interval_indicator_series, xlogx_cut_series};

fn main() {
    let f = |x: f64| x.cos().exp();

    // Reference values from adaptive arbitrary-precision quadrature.
    let cases = [
        ("e^cos(x) * indicator[0,1]", 2.3415748417130532),
        ("e^cos(x) * x log x on [0,0.7]", -0.52530701329447573),
    ];

    println!("{:<34} {:>6} {:>12}", "integrand", "order", "error");
    for (name, exact) in cases {
        for order in [4usize, 8, 16, 32, 64] {
            let g = if name.contains("indicator") {
                interval_indicator_series(0.0, 1.0, TAU, order)
            } else {
                xlogx_cut_series(0.7, TAU, order)
            };
            let got = filtered_integral(f, &g, 0.0);
            println!("{:<34} {:>6} {:>12.3e}", name, order, (got - exact).abs());
        }
        println!();
    }
    println!("Doubling the order gains far more than the guaranteed 16x:");
    println!("the smooth factor's spectrum decays super-algebraically, and the");
    println!("filtered rule's error is built from that tail alone.");
}
