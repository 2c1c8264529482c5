//! Orchestration: build the near- and far-field operators from a run
//! configuration, evaluate on grids or point sets, run convergence
//! studies, and run the self-test battery.

use crate::config::RunConfig;
use crate::density::Density;
use crate::error::Error;
use crate::farfield::{
    indicator_modes, FarField, FarFieldParams, IndicatorRoute, ModeBlock, Square,
};
use crate::geometry::{Boundary, Geometry, PointClass};
use crate::io::{self, PointValue};
use crate::nearfield::{NearField, NearFieldParams};
use crate::windows::RadialWindow;
use crate::Result;
use rayon::prelude::*;
use std::path::{Path, PathBuf};

/// A fully built evaluator: near-field parameters plus far-field mode
/// data for one configuration.
pub struct Evaluator {
    geom: Geometry,
    density: Density,
    near_params: NearFieldParams,
    far: FarField,
}

/// Result of a grid evaluation: row-major values and membership flags
/// over the square's uniform `n x n` grid.
pub struct GridField {
    pub square: Square,
    pub n: usize,
    pub values: Vec<f64>,
    pub inside: Vec<bool>,
}

impl Evaluator {
    pub fn new(cfg: &RunConfig) -> Result<Self> {
        Self::with_cache(cfg, None)
    }

    /// Builds the evaluator, persisting the indicator mode block (the
    /// expensive geometry-only part) under `cache_dir` when given.
    pub fn with_cache(cfg: &RunConfig, cache_dir: Option<&Path>) -> Result<Self> {
        cfg.validate()?;
        let geom = Geometry::new(cfg.boundary.clone())?;
        let density = cfg.density.load()?;
        let window = cfg.window();
        let near_params = NearFieldParams::new(window, cfg.radial_order(), cfg.angular_order())?;
        let mut far_params = FarFieldParams::new(cfg.square(), cfg.far_order);
        far_params.boundary_nodes = cfg.boundary_nodes;
        far_params.sample_grid = cfg.sample_grid;
        let chi = cached_indicator_modes(
            &geom,
            far_params.square,
            far_params.order,
            far_params.boundary_nodes(),
            cache_dir,
        )?;
        let far = FarField::build_with_indicator(&geom, &density, window, far_params, chi)?;
        Ok(Evaluator {
            geom,
            density,
            near_params,
            far,
        })
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geom
    }

    pub fn far_field(&self) -> &FarField {
        &self.far
    }

    pub fn window(&self) -> RadialWindow {
        self.near_params.window
    }

    fn near(&self) -> NearField<'_> {
        NearField::new(&self.geom, &self.density, self.near_params)
    }

    /// Near-field value under the driver's outside-point policy: far
    /// outside contributes nothing, inside gets the windowed quadrature,
    /// and the unsupported strip just outside the boundary yields NaN
    /// (the far field alone is not the answer there).
    fn near_value(&self, near: &NearField<'_>, x: [f64; 2]) -> Result<(f64, bool)> {
        let class = self.geom.classify(x, self.near_params.window.w1)?;
        Ok(match class {
            PointClass::FarOutside { .. } => (0.0, false),
            PointClass::OutsideNearBoundary { .. } => (f64::NAN, false),
            ref c => (near.eval_classified(x, c)?, true),
        })
    }

    /// Values at arbitrary points, deterministically parallel: each point
    /// writes only its own slot and sums in a fixed order.
    pub fn eval_points(&self, pts: &[[f64; 2]]) -> Result<Vec<PointValue>> {
        let far_vals = self.far.eval_points(pts)?;
        let near = self.near();
        let rows: Vec<Result<PointValue>> = pts
            .par_iter()
            .zip(far_vals)
            .map(|(&x, far)| {
                let (near_val, inside) = self.near_value(&near, x)?;
                Ok(PointValue {
                    x,
                    value: near_val + far,
                    inside,
                })
            })
            .collect();
        rows.into_iter().collect()
    }

    /// Values over the uniform `n x n` grid of the square (`n` at least
    /// `2 far_order + 1`).
    pub fn eval_grid(&self, n: usize) -> Result<GridField> {
        let square = self.far.square();
        let mut values = self.far.eval_grid(n)?;
        let near = self.near();
        let inside: Vec<bool> = values
            .par_iter_mut()
            .enumerate()
            .map(|(idx, v)| {
                let x = square.node(idx / n, idx % n, n);
                let (near_val, inside) = self.near_value(&near, x)?;
                *v += near_val;
                Ok(inside)
            })
            .collect::<Result<_>>()?;
        Ok(GridField {
            square,
            n,
            values,
            inside,
        })
    }
}

fn boundary_key(b: &Boundary) -> String {
    match b {
        Boundary::Teardrop { lx, ly } => format!("teardrop_{lx}_{ly}"),
        Boundary::Disk { radius } => format!("disk_{radius}"),
        Boundary::Polyline { vertices } => {
            // Arbitrary vertex lists get a content hash (FNV-1a).
            let mut h: u64 = 0xcbf29ce484222325;
            for v in vertices {
                for x in v {
                    for byte in x.to_le_bytes() {
                        h ^= byte as u64;
                        h = h.wrapping_mul(0x100000001b3);
                    }
                }
            }
            format!("polyline_{h:016x}")
        }
    }
}

/// Indicator modes with a transparent file cache: they depend only on the
/// geometry, square, order, and quadrature size, all of which are encoded
/// in the file name.
pub fn cached_indicator_modes(
    geom: &Geometry,
    square: Square,
    order: usize,
    n_quad: usize,
    cache_dir: Option<&Path>,
) -> Result<ModeBlock> {
    let path: Option<PathBuf> = cache_dir.map(|dir| {
        dir.join(format!(
            "chi_{}_F{}_N{}_s{}_P{}.bin",
            boundary_key(geom.boundary()),
            order,
            n_quad,
            square.s0,
            square.period
        ))
    });
    if let Some(p) = &path {
        if let Ok(f) = std::fs::File::open(p) {
            let block = io::read_mode_block(std::io::BufReader::new(f))?;
            if block.order == order && block.square == square {
                return Ok(block);
            }
        }
    }
    let block = indicator_modes(geom, square, order, n_quad, IndicatorRoute::AlongX);
    if let Some(p) = &path {
        if let Some(dir) = p.parent() {
            std::fs::create_dir_all(dir)?;
        }
        io::write_mode_block(std::io::BufWriter::new(std::fs::File::create(p)?), &block)?;
    }
    Ok(block)
}

/// Error history of one point in a convergence study.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub x: [f64; 2],
    /// Reference value at the study's reference resolution.
    pub reference: f64,
    /// `|u_R - reference|` per study resolution.
    pub errors: Vec<f64>,
    /// Same, with the corner-split correction disabled; only populated
    /// for points whose near field engages the corner machinery.
    pub uncorrected_errors: Option<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct ConvergenceStudy {
    pub resolutions: Vec<usize>,
    pub reference_resolution: usize,
    pub rows: Vec<ConvergenceRow>,
}

/// Least-squares slope of `ln err` against `ln resolution`, negated so
/// a clean order-p method reports about `p`. Pairs at or below the noise
/// floor are excluded; fewer than two usable pairs yields infinity (the
/// errors died faster than the study could measure).
pub fn fit_order(resolutions: &[usize], errors: &[f64]) -> f64 {
    const FLOOR: f64 = 1e-13;
    let pts: Vec<(f64, f64)> = resolutions
        .iter()
        .zip(errors)
        .filter(|(_, &e)| e > FLOOR)
        .map(|(&r, &e)| ((r as f64).ln(), e.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::INFINITY;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    -sxy / sxx
}

/// Whether errors decay monotonically, ignoring jitter at the floor.
pub fn monotone_decay(errors: &[f64]) -> bool {
    errors.windows(2).all(|w| w[1] < w[0] || w[1] <= 1e-12)
}

/// Self-convergence study at fixed geometry, density, window, and square:
/// for each resolution `R`, the far order and both near orders are set to
/// `R`, and errors are measured against the same evaluator at the
/// reference resolution. Corner-window points additionally track the
/// uncorrected near-field route against the corrected reference.
pub fn convergence_study(
    cfg: &RunConfig,
    pts: &[[f64; 2]],
    resolutions: &[usize],
    reference_resolution: usize,
    cache_dir: Option<&Path>,
) -> Result<ConvergenceStudy> {
    if resolutions.is_empty() {
        return Err(Error::config("no resolutions given"));
    }
    if resolutions.iter().any(|&r| r >= reference_resolution) {
        return Err(Error::config(
            "study resolutions must stay below the reference resolution",
        ));
    }
    let at = |r: usize| -> RunConfig {
        let mut c = cfg.clone();
        c.far_order = r;
        c.radial_order = Some(r);
        c.angular_order = Some(r);
        c
    };
    let geom = Geometry::new(cfg.boundary.clone())?;
    let density = cfg.density.load()?;
    let w1 = cfg.window().w1;
    let corner_pt: Vec<bool> = pts
        .iter()
        .map(|&x| matches!(geom.classify(x, w1), Ok(PointClass::CornerWindow(_))))
        .collect();

    let uncorrected_at = |order: usize, far: &FarField| -> Result<Vec<Option<f64>>> {
        let params = NearFieldParams::new(cfg.window(), order, order)?;
        let near = NearField::new(&geom, &density, params);
        let far_vals = far.eval_points(pts)?;
        pts.iter()
            .zip(&corner_pt)
            .zip(far_vals)
            .map(|((&x, &is_corner), fv)| {
                if is_corner {
                    Ok(Some(near.eval_uncorrected(x)? + fv))
                } else {
                    Ok(None)
                }
            })
            .collect()
    };

    let reference_eval = Evaluator::with_cache(&at(reference_resolution), cache_dir)?;
    let reference: Vec<f64> = reference_eval
        .eval_points(pts)?
        .into_iter()
        .map(|p| p.value)
        .collect();

    let mut errors = vec![Vec::with_capacity(resolutions.len()); pts.len()];
    let mut unc_errors = vec![Vec::new(); pts.len()];
    for &r in resolutions {
        let ev = Evaluator::with_cache(&at(r), cache_dir)?;
        let vals = ev.eval_points(pts)?;
        let unc = uncorrected_at(r, ev.far_field())?;
        for (i, (v, u)) in vals.iter().zip(unc).enumerate() {
            errors[i].push((v.value - reference[i]).abs());
            if let Some(uv) = u {
                unc_errors[i].push((uv - reference[i]).abs());
            }
        }
    }

    let rows = pts
        .iter()
        .enumerate()
        .map(|(i, &x)| ConvergenceRow {
            x,
            reference: reference[i],
            errors: std::mem::take(&mut errors[i]),
            uncorrected_errors: if corner_pt[i] {
                Some(std::mem::take(&mut unc_errors[i]))
            } else {
                None
            },
        })
        .collect();
    Ok(ConvergenceStudy {
        resolutions: resolutions.to_vec(),
        reference_resolution,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_fit_recovers_clean_slope() {
        let res = [16usize, 32, 64, 128];
        let errors: Vec<f64> = res.iter().map(|&r| 3.0 * (r as f64).powi(-4)).collect();
        assert!((fit_order(&res, &errors) - 4.0).abs() < 1e-12);
        assert!(monotone_decay(&errors));
    }

    #[test]
    fn order_fit_ignores_floor_noise() {
        let res = [16usize, 32, 64, 128, 256];
        let errors = [1e-4, 1e-6, 1e-8, 3e-14, 5e-14];
        let order = fit_order(&res, &errors);
        assert!(order > 6.0, "order {order}");
        assert!(monotone_decay(&[1e-4, 1e-6, 1e-8, 3e-14, 5e-14]));
    }
}
