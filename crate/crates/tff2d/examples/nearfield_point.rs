//! Near-field evaluation at single points: classification against the
//! window, the corner fan, and accuracy against direct quadrature.
//!
//! Run: cargo run --example nearfield_point

use tff2d::density::Density;
use tff2d::geometry::{Boundary, Geometry, PointClass};
use tff2d::nearfield::{NearField, NearFieldParams};
use tff2d::oracle;
use tff2d::windows::RadialWindow;

fn main() -> tff2d::Result<()> {
    let geom = Geometry::new(Boundary::Teardrop { lx: 3.0, ly: 2.0 })?;
    let density = Density::PolyExp;
    let window = RadialWindow::new(0.25, 1.0);

    let pts: [[f64; 2]; 5] = [
        [1.5, 0.0],   // deep interior, window fully inside
        [2.5, 0.5],   // interior, window cut by the smooth boundary
        [0.4, -0.2],  // interior, window contains the corner
        [3.5, 3.5],   // far outside, no near field at all
        [0.05, -0.4], // outside but near the boundary: unsupported
    ];

    for &x in &pts {
        match geom.classify(x, window.w1)? {
            PointClass::InteriorClear => println!("({}, {}): clear interior", x[0], x[1]),
            PointClass::InteriorCut => {
                println!("({}, {}): interior, boundary cuts the window", x[0], x[1])
            }
            PointClass::CornerWindow(fan) => {
                println!(
                    "({}, {}): corner window, fan angles {:.4} {:.4} {:.4} {:.4}, corner at {:.4}",
                    x[0],
                    x[1],
                    fan.cross_angle[0],
                    fan.cross_angle[1],
                    fan.cross_angle[2],
                    fan.cross_angle[3],
                    fan.corner_angle
                );
            }
            PointClass::FarOutside { boundary_dist } => {
                println!(
                    "({}, {}): far outside (distance {boundary_dist:.3})",
                    x[0], x[1]
                )
            }
            PointClass::OutsideNearBoundary { boundary_dist } => {
                println!("({}, {}): outside near boundary (distance {boundary_dist:.3}), near field undefined", x[0], x[1])
            }
        }
    }

    // Accuracy against adaptive polar quadrature at the corner point,
    // where the split into two smooth radial routes earns its keep.
    let x = [0.4, -0.2];
    let want = oracle::windowed_near_integral(&geom, &density, window, x, &[], 1e-10);
    println!(
        "\nnear-field value at ({}, {}) vs direct quadrature {want:.12}:",
        x[0], x[1]
    );
    for order in [32usize, 64, 128, 256] {
        let near = NearField::new(&geom, &density, NearFieldParams::new(window, order, order)?);
        let got = near.eval(x)?;
        println!("  order {order:>4}: err {:.3e}", (got - want).abs());
    }
    Ok(())
}
