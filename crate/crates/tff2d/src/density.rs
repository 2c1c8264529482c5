//! Densities that can be convolved against the logarithmic kernel.

use num_complex::Complex64;
use std::f64::consts::TAU;

/// The density `phi` in `int log|x - y| phi(y) dy`. Built-in closed forms
/// cover the shipped studies; `Tabulated` interpolates gridded samples.
#[derive(Debug, Clone)]
pub enum Density {
    /// Constant 1 (pure domain potential).
    One,
    /// Constant 0.
    Zero,
    /// `y1^3 exp(-y2)`: smooth, asymmetric, vanishes to third order on the
    /// axis through the teardrop corner.
    PolyExp,
    /// `exp(y1 - y2)`: smooth and nonzero everywhere, including at the
    /// corner; the contrast partner to `PolyExp` in corner studies.
    ExpDiff,
    /// Trigonometric interpolant of samples on a uniform square grid.
    Tabulated(TabulatedDensity),
}

impl Density {
    pub fn eval(&self, y: [f64; 2]) -> f64 {
        match self {
            Density::One => 1.0,
            Density::Zero => 0.0,
            Density::PolyExp => y[0] * y[0] * y[0] * (-y[1]).exp(),
            Density::ExpDiff => (y[0] - y[1]).exp(),
            Density::Tabulated(t) => t.eval(y),
        }
    }
}

/// Bandlimited interpolant built from `n x n` samples on the square
/// `[s0, s0 + period)^2`: the sample grid's centered Fourier modes up to
/// `half_order` per axis, summed directly at evaluation points.
///
/// Evaluation costs `O(half_order^2)` per point, which is fine for grid
/// dumps and oracles but slow inside the near-field quadrature loops; the
/// built-in closed forms are preferred there.
#[derive(Debug, Clone)]
pub struct TabulatedDensity {
    period: f64,
    half_order: usize,
    /// Centered mode grid, row-major `(2 half_order + 1)^2`, mode indices
    /// `-half_order ..= half_order` per axis.
    modes: Vec<Complex64>,
}

impl TabulatedDensity {
    /// Build from row-major samples, `samples[i * n + j]` at
    /// `(s0 + i period / n, s0 + j period / n)`. Requires `n > 2 half_order`.
    pub fn from_samples(
        s0: f64,
        period: f64,
        n: usize,
        samples: &[f64],
        half_order: usize,
    ) -> crate::Result<Self> {
        if samples.len() != n * n {
            return Err(crate::Error::config(format!(
                "expected {n}x{n} samples, got {}",
                samples.len()
            )));
        }
        if n <= 2 * half_order {
            return Err(crate::Error::config(
                "sample grid too coarse for the requested interpolation order",
            ));
        }
        let mut grid: Vec<Complex64> = samples
            .iter()
            .map(|&v| Complex64::new(v / (n * n) as f64, 0.0))
            .collect();
        crate::fourier::fft2_inplace(&mut grid, n, n);
        let f = half_order as i64;
        let side = 2 * half_order + 1;
        let mut modes = vec![Complex64::default(); side * side];
        // Mode k of data starting at s0 needs the shift e^{-i 2 pi k s0 / P}
        // to convert the grid DFT (indexed from the grid origin) into true
        // Fourier coefficients on the square.
        let phase = |k: i64| Complex64::from_polar(1.0, -TAU * k as f64 * s0 / period);
        for (ai, a) in (-f..=f).enumerate() {
            for (bi, b) in (-f..=f).enumerate() {
                let src = a.rem_euclid(n as i64) as usize * n + b.rem_euclid(n as i64) as usize;
                modes[ai * side + bi] = grid[src] * phase(a) * phase(b);
            }
        }
        Ok(TabulatedDensity {
            period,
            half_order,
            modes,
        })
    }

    pub fn eval(&self, y: [f64; 2]) -> f64 {
        let f = self.half_order as i64;
        let side = 2 * self.half_order + 1;
        let rot1 = Complex64::from_polar(1.0, TAU * y[0] / self.period);
        let rot2 = Complex64::from_polar(1.0, TAU * y[1] / self.period);
        let start1 = Complex64::from_polar(1.0, -TAU * f as f64 * y[0] / self.period);
        let mut acc = Complex64::default();
        let mut p1 = start1;
        for ai in 0..side {
            let mut p2 = Complex64::from_polar(1.0, -TAU * f as f64 * y[1] / self.period);
            let row = &self.modes[ai * side..(ai + 1) * side];
            let mut row_acc = Complex64::default();
            for &m in row {
                row_acc += m * p2;
                p2 *= rot2;
            }
            acc += row_acc * p1;
            p1 *= rot1;
        }
        acc.re
    }
}
