//! Unit disk with unit density: the one configuration with a closed-form
//! answer everywhere, so the full split can be graded absolutely.
//!
//! Run: cargo run --example disk_potential

use std::f64::consts::PI;
use tff2d::config::{DensitySpec, EvalSpec, RunConfig, SquareSpec, WindowSpec};
use tff2d::driver::Evaluator;
use tff2d::oracle;

fn main() -> tff2d::Result<()> {
    let pts: Vec<[f64; 2]> = vec![
        [0.0, 0.0],
        [0.5, 0.0],
        [0.0, -0.75],
        [0.63, 0.64],
        [-0.2, 0.87],
    ];

    println!(
        "max error against (pi/2)(|x|^2 - 1) over {} interior points:",
        pts.len()
    );
    for order in [16usize, 32, 64, 128] {
        let cfg = RunConfig {
            boundary: tff2d::Boundary::Disk { radius: 1.0 },
            density: DensitySpec::One,
            window: WindowSpec::default(),
            square: SquareSpec {
                s0: -1.6 * PI,
                period: 3.2 * PI,
            },
            far_order: order,
            radial_order: None,
            angular_order: None,
            boundary_nodes: None,
            sample_grid: None,
            eval: EvalSpec::Points {
                points: pts.clone(),
            },
        };
        let ev = Evaluator::new(&cfg)?;
        let rows = ev.eval_points(&pts)?;
        let worst = rows
            .iter()
            .map(|r| (r.value - oracle::disk_potential_exact(1.0, r.x)).abs())
            .fold(0.0f64, f64::max);
        println!("  order {order:>4}: {worst:.3e}");
    }
    Ok(())
}
