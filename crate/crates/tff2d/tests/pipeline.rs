//! End-to-end checks of the split evaluation: near-field plus far-field
//! totals against frozen high-resolution references and against an
//! independent adaptive-quadrature oracle, plus structural properties
//! (partition invariance, corner-split contrast) that hold independently
//! of resolution.

use std::f64::consts::PI;
use tff2d::config::{DensitySpec, EvalSpec, RunConfig, SquareSpec, WindowSpec};
use tff2d::density::Density;
use tff2d::driver::{self, Evaluator};
use tff2d::farfield::{FarField, FarFieldParams, Square};
use tff2d::geometry::{Boundary, Geometry};
use tff2d::nearfield::{NearField, NearFieldParams};
use tff2d::oracle;
use tff2d::windows::RadialWindow;

fn teardrop() -> Geometry {
    Geometry::new(Boundary::Teardrop { lx: 3.0, ly: 2.0 }).unwrap()
}

/// Square fitted to the teardrop: wide enough for both periodization
/// windows, small enough to keep mode counts down.
fn fitted_square() -> Square {
    Square::centered(1.6 * PI)
}

fn fitted_square_spec() -> SquareSpec {
    SquareSpec {
        s0: -1.6 * PI,
        period: 3.2 * PI,
    }
}

fn teardrop_config(density: DensitySpec, order: usize) -> RunConfig {
    RunConfig {
        boundary: Boundary::Teardrop { lx: 3.0, ly: 2.0 },
        density,
        window: WindowSpec { w0: 0.25, w1: 1.0 },
        square: fitted_square_spec(),
        far_order: order,
        radial_order: Some(order),
        angular_order: Some(order),
        boundary_nodes: None,
        sample_grid: None,
        eval: EvalSpec::default(),
    }
}

fn total_at(
    geom: &Geometry,
    density: &Density,
    window: RadialWindow,
    square: Square,
    order: usize,
    near_order: usize,
    pts: &[[f64; 2]],
) -> Vec<f64> {
    let near = NearField::new(
        geom,
        density,
        NearFieldParams::new(window, near_order, near_order).unwrap(),
    );
    let far = FarField::build(geom, density, window, FarFieldParams::new(square, order)).unwrap();
    let far_vals = far.eval_points(pts).unwrap();
    pts.iter()
        .zip(far_vals)
        .map(|(&x, f)| near.eval(x).unwrap() + f)
        .collect()
}

/// Moderate-resolution smoke: quick to run, catches convention breakage
/// long before the tight checks below would finish.
#[test]
fn teardrop_totals_smoke() {
    let geom = teardrop();
    let pts = [[1.5, 0.0], [2.5, 0.5], [0.4, -0.2], [1.0, 1.0], [2.0, -1.0]];
    let want = [
        30.235399363084,
        30.021982525344,
        76.283938572828,
        84.015618758013,
        -30.485463360865,
    ];
    let got = total_at(
        &geom,
        &Density::PolyExp,
        RadialWindow::new(0.25, 1.0),
        fitted_square(),
        128,
        256,
        &pts,
    );
    for (i, (g, w)) in got.iter().zip(&want).enumerate() {
        let err = (g - w).abs();
        assert!(err < 1e-4, "point {i}: error {err:.3e}");
    }
}

/// Tight check against references frozen from an independent
/// implementation of the same method (different language, different FFT,
/// different boundary solver), run at the same resolution.
#[test]
fn teardrop_totals_match_frozen_references() {
    let cfg = teardrop_config(DensitySpec::PolyExp, 512);
    let pts = [[1.5, 0.0], [2.5, 0.5], [0.4, -0.2], [1.0, 1.0], [2.0, -1.0]];
    let want = [
        30.235399363084,
        30.021982525344,
        76.283938572828,
        84.015618758013,
        -30.485463360865,
    ];
    let ev = Evaluator::new(&cfg).unwrap();
    let got = ev.eval_points(&pts).unwrap();
    for (i, (g, w)) in got.iter().zip(&want).enumerate() {
        let err = (g.value - w).abs();
        println!(
            "point {i}: got {:.12}, want {w:.12}, err {err:.3e}",
            g.value
        );
        assert!(err < 1e-8, "point {i}: error {err:.3e}");
        assert!(g.inside);
    }
}

/// The same totals re-derived with no Fourier machinery at all: polar
/// adaptive quadrature with membership bisection. Production order 256
/// sits near 1e-7 of the converged value, the oracle near 1e-8; their
/// difference must stay within the sum.
#[test]
fn totals_match_adaptive_oracle() {
    let geom = teardrop();
    let density = Density::PolyExp;
    let pts = [[1.5, 0.0], [0.4, -0.2]];
    let got = total_at(
        &geom,
        &density,
        RadialWindow::new(0.25, 1.0),
        fitted_square(),
        256,
        256,
        &pts,
    );
    for (&x, g) in pts.iter().zip(got) {
        let want = oracle::potential(&geom, &density, x, &[], 1e-8);
        let err = (g - want).abs();
        println!(
            "({}, {}): split {g:.10}, oracle {want:.10}, diff {err:.3e}",
            x[0], x[1]
        );
        assert!(err < 5e-7, "({}, {}): diff {err:.3e}", x[0], x[1]);
    }
}

/// Unit-density totals against frozen converged references; exercises a
/// different smooth factor in the far field and the same geometry.
#[test]
fn unit_density_totals_match_frozen_references() {
    let cfg = teardrop_config(DensitySpec::One, 512);
    let pts = [[1.5, 0.0], [0.4, -0.2]];
    let want = [0.0254358526626573, 3.009025429561014];
    let ev = Evaluator::new(&cfg).unwrap();
    let got = ev.eval_points(&pts).unwrap();
    for (i, (g, w)) in got.iter().zip(&want).enumerate() {
        let err = (g.value - w).abs();
        println!(
            "point {i}: got {:.12}, want {w:.12}, err {err:.3e}",
            g.value
        );
        assert!(err < 1e-8, "point {i}: error {err:.3e}");
    }
}

/// With a density that does not vanish at the corner, the corner split is
/// load-bearing: the corrected route keeps converging while the naive
/// radial-cut route stalls orders of magnitude above it.
#[test]
fn corner_split_separates_for_nonvanishing_density() {
    let cfg = teardrop_config(DensitySpec::ExpDiff, 64);
    let pts = [[0.4, -0.2]];
    let resolutions = [32usize, 64, 128, 256];
    let study = driver::convergence_study(&cfg, &pts, &resolutions, 512, None).unwrap();
    let row = &study.rows[0];
    let unc = row.uncorrected_errors.as_ref().expect("corner point");
    let corrected_final = *row.errors.last().unwrap();
    let uncorrected_final = *unc.last().unwrap();
    println!("corrected {:?} | uncorrected {:?}", row.errors, unc);
    assert!(
        driver::monotone_decay(&row.errors),
        "corrected route not monotone: {:?}",
        row.errors
    );
    assert!(
        uncorrected_final > 10.0 * corrected_final,
        "no separation: corrected {corrected_final:.3e}, uncorrected {uncorrected_final:.3e}"
    );
    let corr_order = driver::fit_order(&resolutions, &row.errors);
    assert!(corr_order >= 4.0, "corrected order {corr_order:.2}");
}

/// Tabulated densities round-trip through the config layer: a bandlimited
/// sample file must reproduce the function it sampled.
#[test]
fn tabulated_density_loads_from_file() {
    let dir = std::env::temp_dir().join("tff2d-pipeline-tab");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("samples.txt");
    let (s0, period, n) = (-PI, 2.0 * PI, 48usize);
    let f = |x: f64, y: f64| 0.3 + (x).sin() * (2.0 * y).cos();
    let mut text = String::new();
    for i in 0..n {
        for j in 0..n {
            let x = s0 + period * i as f64 / n as f64;
            let y = s0 + period * j as f64 / n as f64;
            text.push_str(&format!("{}\n", f(x, y)));
        }
    }
    std::fs::write(&path, text).unwrap();
    let spec = DensitySpec::Tabulated {
        path: path.clone(),
        s0,
        period,
        half_order: 4,
    };
    let density = spec.load().unwrap();
    for (x, y) in [(0.0, 0.0), (0.7, -1.1), (-2.0, 2.9)] {
        let got = density.eval([x, y]);
        assert!(
            (got - f(x, y)).abs() < 1e-12,
            "({x}, {y}): {got} vs {}",
            f(x, y)
        );
    }
}

/// Disk sanity: the split at the disk center reproduces the closed form
/// exactly enough to pin both halves, and each half matches its own
/// frozen value.
#[test]
fn disk_center_split_halves() {
    let geom = Geometry::new(Boundary::Disk { radius: 1.0 }).unwrap();
    let density = Density::One;
    let window = RadialWindow::new(0.25, 1.0);
    let near = NearField::new(
        &geom,
        &density,
        NearFieldParams::new(window, 128, 128).unwrap(),
    );
    let i1 = near.eval([0.0, 0.0]).unwrap();
    assert!((i1 - -1.2123737893658042).abs() < 1e-10, "near half {i1}");

    let far = FarField::build(
        &geom,
        &density,
        window,
        FarFieldParams::new(fitted_square(), 128),
    )
    .unwrap();
    let i2 = far.eval_points(&[[0.0, 0.0]]).unwrap()[0];
    assert!((i2 - -0.3584225374290925).abs() < 1e-7, "far half {i2}");
    assert!((i1 + i2 - -PI / 2.0).abs() < 1e-7, "total {}", i1 + i2);
}
