//! Built-in diagnostic battery: quick numerical checks spanning every
//! layer, from the trapezoidal aliasing identity up to whole-pipeline
//! invariants. Each check measures a defect against two thresholds: under
//! the tight one it passes, under the loose one it passes with a warning,
//! above both it fails.

use crate::config::{DensitySpec, EvalSpec, RunConfig, SquareSpec, WindowSpec};
use crate::density::Density;
use crate::driver::Evaluator;
use crate::farfield::{indicator_modes, IndicatorRoute, Square};
use crate::filtered_quad::{filtered_integral, mode_trapezoid};
use crate::geometry::{Boundary, Geometry};
use crate::nearfield::{NearField, NearFieldParams};
use crate::oracle;
use crate::series::{xlogx_cut_coeff, xlogx_cut_series};
use crate::windows::RadialWindow;
use std::f64::consts::{PI, TAU};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Warn,
    Fail,
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

fn graded(name: &'static str, defect: f64, tight: f64, loose: f64, context: &str) -> CheckOutcome {
    let status = if defect <= tight {
        Status::Pass
    } else if defect <= loose {
        Status::Warn
    } else {
        Status::Fail
    };
    CheckOutcome {
        name,
        status,
        detail: format!("{context}: defect {defect:.3e} (tight {tight:.1e}, loose {loose:.1e})"),
    }
}

fn binary(name: &'static str, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome {
        name,
        status: if passed { Status::Pass } else { Status::Fail },
        detail,
    }
}

fn teardrop_config(far_order: usize, near_order: usize, w0: f64) -> RunConfig {
    RunConfig {
        boundary: Boundary::Teardrop { lx: 3.0, ly: 2.0 },
        density: DensitySpec::PolyExp,
        window: WindowSpec { w0, w1: 1.0 },
        square: SquareSpec {
            s0: -1.6 * PI,
            period: 3.2 * PI,
        },
        far_order,
        radial_order: Some(near_order),
        angular_order: Some(near_order),
        boundary_nodes: None,
        sample_grid: None,
        eval: EvalSpec::default(),
    }
}

fn check_aliasing() -> CheckOutcome {
    let mut worst = 0.0f64;
    for n in [4usize, 8, 16, 32] {
        for k in 0..=64i64 {
            let got = mode_trapezoid(k, n, TAU, 0.0);
            let want = if k % n as i64 == 0 { TAU } else { 0.0 };
            worst = worst.max((got.re - want).abs().max(got.im.abs()));
        }
    }
    graded(
        "trapezoid aliasing identity",
        worst,
        1e-12,
        1e-12,
        "modes 0..=64, 4..=32 nodes",
    )
}

fn check_radial_modes() -> CheckOutcome {
    let mut worst = 0.0f64;
    for n in [-256i64, -64, -7, 0, 3, 64, 256] {
        for cut in [0.1, 0.5, 0.7, 1.0] {
            let closed = xlogx_cut_coeff(n, cut, 2.0);
            let quad = oracle::xlogx_mode_integral(n, cut, 2.0);
            worst = worst.max((closed - quad).norm());
        }
    }
    graded(
        "radial profile coefficients vs quadrature",
        worst,
        1e-12,
        1e-10,
        "28 mode/cut pairs",
    )
}

fn check_filtered_decay() -> CheckOutcome {
    let exact = -0.52530701329447573;
    let err = |order: usize| {
        let g = xlogx_cut_series(0.7, TAU, order);
        (filtered_integral(|x| x.cos().exp(), &g, 0.0) - exact).abs()
    };
    let (e8, e16) = (err(8), err(16));
    let ratio = e8 / e16.max(1e-16);
    binary(
        "filtered quadrature 16x decay",
        e16 <= e8 / 16.0 || e16 < 1e-13,
        format!("error {e8:.3e} -> {e16:.3e} on order doubling (ratio {ratio:.1})"),
    )
}

fn check_indicator_routes() -> CheckOutcome {
    let geom = Geometry::new(Boundary::Teardrop { lx: 3.0, ly: 2.0 }).unwrap();
    let square = Square::centered(4.0 * PI);
    let x = indicator_modes(&geom, square, 8, 1024, IndicatorRoute::AlongX);
    let y = indicator_modes(&geom, square, 8, 1024, IndicatorRoute::AlongY);
    let mut worst = (x.get(0, 0).re - 8.0 / square.period.powi(2)).abs();
    for m in -8..=8i64 {
        for n in -8..=8i64 {
            if m != 0 && n != 0 {
                worst = worst.max((x.get(m, n) - y.get(m, n)).norm());
            }
        }
    }
    graded(
        "indicator modes: route agreement and mean",
        worst,
        1e-12,
        1e-10,
        "teardrop, order 8",
    )
}

fn check_disk_potential() -> CheckOutcome {
    let cfg = RunConfig {
        boundary: Boundary::Disk { radius: 1.0 },
        density: DensitySpec::One,
        ..teardrop_config(64, 64, 0.25)
    };
    let pts = [[0.0, 0.0], [0.5, 0.0], [0.3, -0.8], [0.63, 0.64]];
    let outcome = Evaluator::new(&cfg).and_then(|ev| ev.eval_points(&pts));
    match outcome {
        Ok(rows) => {
            let worst = rows
                .iter()
                .map(|r| (r.value - oracle::disk_potential_exact(1.0, r.x)).abs())
                .fold(0.0f64, f64::max);
            graded(
                "unit disk vs closed-form potential",
                worst,
                1e-5,
                1e-3,
                "4 interior points, order 64",
            )
        }
        Err(e) => binary("unit disk vs closed-form potential", false, e.to_string()),
    }
}

fn check_near_field_oracle() -> CheckOutcome {
    let geom = Geometry::new(Boundary::Teardrop { lx: 3.0, ly: 2.0 }).unwrap();
    let density = Density::PolyExp;
    let window = RadialWindow::new(0.25, 1.0);
    let params = NearFieldParams::new(window, 128, 128).unwrap();
    let near = NearField::new(&geom, &density, params);
    let x = [1.5, 0.0];
    let got = match near.eval(x) {
        Ok(v) => v,
        Err(e) => {
            return binary("near field vs direct quadrature", false, e.to_string());
        }
    };
    let want = oracle::windowed_near_integral(&geom, &density, window, x, &[], 1e-9);
    graded(
        "near field vs direct quadrature",
        (got - want).abs(),
        1e-7,
        1e-5,
        "teardrop interior point, order 128",
    )
}

fn check_partition_invariance() -> CheckOutcome {
    let pts = [[1.5, 0.0], [0.4, -0.2]];
    let run = |w0: f64| -> crate::Result<Vec<f64>> {
        let ev = Evaluator::new(&teardrop_config(128, 256, w0))?;
        Ok(ev.eval_points(&pts)?.into_iter().map(|p| p.value).collect())
    };
    match (run(0.25), run(1.0 / 3.0)) {
        (Ok(a), Ok(b)) => {
            let worst = a
                .iter()
                .zip(&b)
                .map(|(p, q)| (p - q).abs())
                .fold(0.0f64, f64::max);
            graded(
                "window split invariance",
                worst,
                1e-5,
                1e-4,
                "w0 1/4 vs 1/3 at fixed resolution",
            )
        }
        (Err(e), _) | (_, Err(e)) => binary("window split invariance", false, e.to_string()),
    }
}

fn check_determinism() -> CheckOutcome {
    let cfg = teardrop_config(32, 64, 0.25);
    let pts = [[1.5, 0.0], [2.5, 0.5], [0.4, -0.2], [1.0, 1.0], [2.0, -1.0]];
    let run = |threads: usize| -> crate::Result<Vec<u64>> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| crate::Error::config(e.to_string()))?;
        pool.install(|| {
            let ev = Evaluator::new(&cfg)?;
            Ok(ev
                .eval_points(&pts)?
                .into_iter()
                .map(|p| p.value.to_bits())
                .collect())
        })
    };
    match (run(1), run(4)) {
        (Ok(a), Ok(b)) => binary(
            "bitwise determinism across thread counts",
            a == b,
            if a == b {
                "1-thread and 4-thread runs agree bit for bit".to_string()
            } else {
                "thread count changed output bits".to_string()
            },
        ),
        (Err(e), _) | (_, Err(e)) => binary(
            "bitwise determinism across thread counts",
            false,
            e.to_string(),
        ),
    }
}

/// Runs every check; slow items sit at the end so early failures surface
/// fast when output is streamed.
pub fn run_battery() -> Vec<CheckOutcome> {
    vec![
        check_aliasing(),
        check_radial_modes(),
        check_filtered_decay(),
        check_indicator_routes(),
        check_disk_potential(),
        check_near_field_oracle(),
        check_partition_invariance(),
        check_determinism(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_checks_pass() {
        for outcome in [
            check_aliasing(),
            check_radial_modes(),
            check_filtered_decay(),
        ] {
            assert_eq!(
                outcome.status,
                Status::Pass,
                "{}: {}",
                outcome.name,
                outcome.detail
            );
        }
    }
}
