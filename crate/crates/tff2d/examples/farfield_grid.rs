//! Far-field machinery: indicator modes from boundary quadrature, the
//! truncated product with the density modes, and one-shot grid
//! evaluation through an inverse FFT.
//!
//! Run: cargo run --example farfield_grid

use std::f64::consts::PI;
use std::time::Instant;
use tff2d::density::Density;
use tff2d::farfield::{indicator_modes, FarField, FarFieldParams, IndicatorRoute, Square};
use tff2d::geometry::{Boundary, Geometry};
use tff2d::windows::RadialWindow;

fn main() -> tff2d::Result<()> {
    let geom = Geometry::new(Boundary::Teardrop { lx: 3.0, ly: 2.0 })?;
    let square = Square::centered(4.0 * PI);
    let order = 64;

    // The indicator's mean mode is the domain area over the square area;
    // the teardrop's area is exactly 8.
    let t0 = Instant::now();
    let chi = indicator_modes(&geom, square, order, 4096, IndicatorRoute::AlongX);
    println!(
        "indicator modes: {}x{} block in {:.2}s",
        chi.side(),
        chi.side(),
        t0.elapsed().as_secs_f64()
    );
    println!(
        "  mean {:.15}  (area/P^2 = {:.15})",
        chi.get(0, 0).re,
        8.0 / square.period.powi(2)
    );
    println!("  hermitian residue {:.2e}", chi.hermitian_residue());

    let t1 = Instant::now();
    let far = FarField::build(
        &geom,
        &Density::PolyExp,
        RadialWindow::new(0.25, 1.0),
        FarFieldParams::new(square, order),
    )?;
    println!("far field built in {:.2}s", t1.elapsed().as_secs_f64());

    // Grid evaluation is one zero-padded inverse FFT regardless of grid
    // size; per-point evaluation costs a full mode sum each. Both agree.
    let n = 2 * order + 1;
    let t2 = Instant::now();
    let grid = far.eval_grid(n)?;
    println!(
        "{}x{} grid in {:.3}s; sample values:",
        n,
        n,
        t2.elapsed().as_secs_f64()
    );
    for (i, j) in [(n / 2, n / 2), (n / 2 + 3, n / 2 - 2)] {
        let x = square.node(i, j, n);
        let direct = far.eval_points(&[x])?[0];
        println!(
            "  node ({i:>3},{j:>3}) at ({:>7.4}, {:>7.4}): grid {:+.12}, direct {:+.12}",
            x[0],
            x[1],
            grid[i * n + j],
            direct
        );
    }
    Ok(())
}
