//! Self-convergence in miniature: errors against a higher-resolution
//! reference at three probe points, with fitted orders. The full-scale
//! protocol lives in the convergence subcommand of the CLI.
//!
//! Run: cargo run --example convergence_study

use std::f64::consts::PI;
use tff2d::config::{DensitySpec, EvalSpec, RunConfig, SquareSpec, WindowSpec};
use tff2d::driver::{convergence_study, fit_order, monotone_decay};

fn main() -> tff2d::Result<()> {
    let cfg = RunConfig {
        boundary: tff2d::Boundary::Teardrop { lx: 3.0, ly: 2.0 },
        density: DensitySpec::PolyExp,
        window: WindowSpec::default(),
        square: SquareSpec {
            s0: -1.6 * PI,
            period: 3.2 * PI,
        },
        far_order: 64,
        radial_order: None,
        angular_order: None,
        boundary_nodes: None,
        sample_grid: None,
        eval: EvalSpec::default(),
    };
    let pts = [[1.5, 0.0], [2.5, 0.5], [0.4, -0.2]];
    let resolutions = [16usize, 32, 64, 128];

    // Reference at 256 keeps this example fast; expect the fitted orders
    // to be a little noisy compared to a 1024 reference.
    let study = convergence_study(&cfg, &pts, &resolutions, 256, None)?;

    for row in &study.rows {
        let order = fit_order(&study.resolutions, &row.errors);
        println!(
            "({:>4}, {:>4})  reference {:>18.12}  order {order:>5.2}  {}",
            row.x[0],
            row.x[1],
            row.reference,
            if monotone_decay(&row.errors) {
                "monotone"
            } else {
                "not monotone"
            }
        );
        print!("   errors:");
        for (r, e) in study.resolutions.iter().zip(&row.errors) {
            print!("  {r}:{e:.2e}");
        }
        println!();
        if let Some(unc) = &row.uncorrected_errors {
            print!("   without corner split:");
            for (r, e) in study.resolutions.iter().zip(unc) {
                print!("  {r}:{e:.2e}");
            }
            println!();
        }
    }
    Ok(())
}
