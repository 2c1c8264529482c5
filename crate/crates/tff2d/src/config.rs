//! Run configuration: everything a full evaluation needs, deserializable
//! from TOML or JSON.

use crate::density::{Density, TabulatedDensity};
use crate::error::Error;
use crate::farfield::Square;
use crate::geometry::Boundary;
use crate::windows::RadialWindow;
use crate::Result;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

/// Density selector. The closed-form variants evaluate in a few flops and
/// are safe inside the near-field loops; `Tabulated` reads `n x n` grid
/// samples (whitespace-separated text, row-major, `n` inferred from the
/// count) and interpolates them spectrally.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DensitySpec {
    One,
    Zero,
    /// `y1^3 e^{-y2}`.
    PolyExp,
    /// `e^{y1 - y2}`.
    ExpDiff,
    Tabulated {
        path: PathBuf,
        s0: f64,
        period: f64,
        half_order: usize,
    },
}

impl DensitySpec {
    pub fn load(&self) -> Result<Density> {
        Ok(match self {
            DensitySpec::One => Density::One,
            DensitySpec::Zero => Density::Zero,
            DensitySpec::PolyExp => Density::PolyExp,
            DensitySpec::ExpDiff => Density::ExpDiff,
            DensitySpec::Tabulated {
                path,
                s0,
                period,
                half_order,
            } => {
                let text = std::fs::read_to_string(path)?;
                let samples: Vec<f64> = text
                    .split_whitespace()
                    .map(|tok| {
                        tok.parse::<f64>().map_err(|_| {
                            Error::config(format!("bad sample value {tok:?} in {path:?}"))
                        })
                    })
                    .collect::<Result<_>>()?;
                let n = (samples.len() as f64).sqrt().round() as usize;
                if n * n != samples.len() {
                    return Err(Error::config(format!(
                        "{path:?} holds {} samples, not a square grid",
                        samples.len()
                    )));
                }
                Density::Tabulated(TabulatedDensity::from_samples(
                    *s0,
                    *period,
                    n,
                    &samples,
                    *half_order,
                )?)
            }
        })
    }
}

/// Near-field window radii.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct WindowSpec {
    #[serde(default = "default_w0")]
    pub w0: f64,
    #[serde(default = "default_w1")]
    pub w1: f64,
}

fn default_w0() -> f64 {
    0.25
}

fn default_w1() -> f64 {
    1.0
}

impl Default for WindowSpec {
    fn default() -> Self {
        WindowSpec {
            w0: default_w0(),
            w1: default_w1(),
        }
    }
}

/// Bounding square for the periodic far field.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SquareSpec {
    #[serde(default = "default_s0")]
    pub s0: f64,
    #[serde(default = "default_period")]
    pub period: f64,
}

fn default_s0() -> f64 {
    -4.0 * PI
}

fn default_period() -> f64 {
    8.0 * PI
}

impl Default for SquareSpec {
    fn default() -> Self {
        SquareSpec {
            s0: default_s0(),
            period: default_period(),
        }
    }
}

/// Where to evaluate: a uniform grid on the square (`n = 0` picks the
/// smallest grid that resolves the far-field modes) or explicit points.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EvalSpec {
    Grid { n: usize },
    Points { points: Vec<[f64; 2]> },
}

impl Default for EvalSpec {
    fn default() -> Self {
        EvalSpec::Grid { n: 0 }
    }
}

fn default_far_order() -> usize {
    64
}

/// Complete evaluation request.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub boundary: Boundary,
    pub density: DensitySpec,
    #[serde(default)]
    pub window: WindowSpec,
    #[serde(default)]
    pub square: SquareSpec,
    /// Far-field mode order per axis.
    #[serde(default = "default_far_order")]
    pub far_order: usize,
    /// Near-field radial series order; defaults to `far_order`.
    #[serde(default)]
    pub radial_order: Option<usize>,
    /// Near-field angular filter order; defaults to `far_order`.
    #[serde(default)]
    pub angular_order: Option<usize>,
    /// Boundary quadrature nodes for the indicator modes.
    #[serde(default)]
    pub boundary_nodes: Option<usize>,
    /// Sample grid side for density and kernel mode extraction.
    #[serde(default)]
    pub sample_grid: Option<usize>,
    #[serde(default)]
    pub eval: EvalSpec,
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: RunConfig =
            toml::from_str(text).map_err(|e| Error::config(format!("config parse: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| Error::config(format!("config parse: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads TOML or JSON, chosen by file extension (`.json` is JSON,
    /// anything else is treated as TOML).
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        if path.extension().and_then(|e| e.to_str()) == Some("json") {
            Self::from_json_str(&text)
        } else {
            Self::from_toml_str(&text)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.window.w0 > 0.0 && self.window.w0 < self.window.w1) {
            return Err(Error::config("window radii must satisfy 0 < w0 < w1"));
        }
        if self.window.w1 > 1.0 {
            return Err(Error::config(
                "outer window radius above 1 breaks the radial series period",
            ));
        }
        if self.square.period <= 0.0 {
            return Err(Error::config("square period must be positive"));
        }
        if self.far_order < 2 {
            return Err(Error::config("far_order must be at least 2"));
        }
        if let EvalSpec::Grid { n } = self.eval {
            if n != 0 && n < 2 * self.far_order + 1 {
                return Err(Error::config(format!(
                    "eval grid {n} cannot resolve {} far-field modes per axis",
                    2 * self.far_order + 1
                )));
            }
        }
        Ok(())
    }

    pub fn window(&self) -> RadialWindow {
        RadialWindow::new(self.window.w0, self.window.w1)
    }

    pub fn square(&self) -> Square {
        Square {
            s0: self.square.s0,
            period: self.square.period,
        }
    }

    pub fn radial_order(&self) -> usize {
        self.radial_order.unwrap_or(self.far_order)
    }

    pub fn angular_order(&self) -> usize {
        self.angular_order.unwrap_or(self.far_order)
    }

    /// Output grid side, with `0` resolved to the mode-resolving minimum.
    pub fn grid_side(&self) -> usize {
        match self.eval {
            EvalSpec::Grid { n: 0 } => 2 * self.far_order + 1,
            EvalSpec::Grid { n } => n,
            EvalSpec::Points { .. } => 2 * self.far_order + 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_roundtrip_with_defaults() {
        let cfg = RunConfig::from_toml_str(
            r#"
            far_order = 32

            [boundary]
            kind = "teardrop"
            lx = 3.0
            ly = 2.0

            [density]
            kind = "poly_exp"

            [eval]
            kind = "points"
            points = [[1.5, 0.0], [0.4, -0.2]]
            "#,
        )
        .unwrap();
        assert_eq!(cfg.far_order, 32);
        assert_eq!(cfg.radial_order(), 32);
        assert!((cfg.window.w0 - 0.25).abs() < 1e-15);
        assert!((cfg.square.period - 8.0 * PI).abs() < 1e-12);
        match &cfg.eval {
            EvalSpec::Points { points } => assert_eq!(points.len(), 2),
            _ => panic!("expected points"),
        }
    }

    #[test]
    fn json_parses_and_bad_window_rejected() {
        let good = r#"{
            "boundary": {"kind": "disk", "radius": 1.0},
            "density": {"kind": "one"}
        }"#;
        let cfg = RunConfig::from_json_str(good).unwrap();
        assert_eq!(cfg.far_order, 64);

        let bad = r#"{
            "boundary": {"kind": "disk", "radius": 1.0},
            "density": {"kind": "one"},
            "window": {"w0": 0.5, "w1": 0.2}
        }"#;
        assert!(RunConfig::from_json_str(bad).is_err());
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"
            far_order = 32
            far_ordre = 64

            [boundary]
            kind = "disk"
            radius = 1.0

            [density]
            kind = "one"
        "#;
        assert!(RunConfig::from_toml_str(text).is_err());
    }
}
