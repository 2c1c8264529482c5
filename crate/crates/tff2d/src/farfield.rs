//! Far-field part of the convolution: everything at distance `w0` and
//! beyond, evaluated as a periodic convolution on a bounding square.
//!
//! The integrand factors as `f(y) g(x - y)` with `f = chi_Omega phi`
//! (domain indicator times density) and `g` the kernel with its
//! singularity windowed away (`log r` times the complement of the
//! near-field window). Both factors are periodized onto the square by
//! radial cutoff windows that are identically 1 wherever the factor
//! matters and vanish before the period edge, so the convolution theorem
//! applies with no boundary effects:
//!
//! ```text
//! Q[I2](x) = P^2 sum_{|j|,|k| <= F} f^t_{jk} ghat_{jk} e^{i 2 pi (j x1 + k x2) / P}
//! ```
//!
//! The indicator's modes come from exact boundary quadrature (divergence
//! identities turn the area integral into a loop integral), the density
//! and kernel modes from plain grid FFTs of smooth samples, and `f^t` is
//! the mode-limited product of the two truncated factors.

use crate::density::Density;
use crate::error::Error;
use crate::fourier::{fft2_inplace, ifft2_inplace};
use crate::geometry::Geometry;
use crate::windows::{periodization_window, RadialWindow};
use crate::Result;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Largest imaginary residue tolerated when a mathematically real result
/// is assembled from complex modes.
pub const MAX_IMAG_RESIDUE: f64 = 1e-10;

/// Axis-aligned bounding square `[s0, s0 + period)^2` shared by every
/// far-field mode grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Square {
    pub s0: f64,
    pub period: f64,
}

impl Square {
    /// Square centered at the origin with the given half-width.
    pub fn centered(half: f64) -> Self {
        Square {
            s0: -half,
            period: 2.0 * half,
        }
    }

    pub fn half(&self) -> f64 {
        self.period / 2.0
    }

    /// Grid node `(i, j)` of the `n x n` uniform grid on the square.
    pub fn node(&self, i: usize, j: usize, n: usize) -> [f64; 2] {
        let h = self.period / n as f64;
        [self.s0 + i as f64 * h, self.s0 + j as f64 * h]
    }
}

/// Centered block of 2D Fourier modes `-order ..= order` per axis on a
/// square, row-major with axis-1 mode varying slowest.
#[derive(Debug, Clone)]
pub struct ModeBlock {
    pub square: Square,
    pub order: usize,
    pub c: Vec<Complex64>,
}

impl ModeBlock {
    pub fn zeros(square: Square, order: usize) -> Self {
        let side = 2 * order + 1;
        ModeBlock {
            square,
            order,
            c: vec![Complex64::default(); side * side],
        }
    }

    pub fn side(&self) -> usize {
        2 * self.order + 1
    }

    fn idx(&self, m: i64, n: i64) -> usize {
        let f = self.order as i64;
        debug_assert!(m.abs() <= f && n.abs() <= f);
        ((m + f) as usize) * self.side() + (n + f) as usize
    }

    pub fn get(&self, m: i64, n: i64) -> Complex64 {
        self.c[self.idx(m, n)]
    }

    pub fn set(&mut self, m: i64, n: i64, v: Complex64) {
        let i = self.idx(m, n);
        self.c[i] = v;
    }

    /// Largest violation of the conjugate symmetry a real field must have.
    pub fn hermitian_residue(&self) -> f64 {
        let f = self.order as i64;
        let mut worst = 0.0f64;
        for m in -f..=f {
            for n in -f..=f {
                worst = worst.max((self.get(m, n) - self.get(-m, -n).conj()).norm());
            }
        }
        worst
    }

    /// Pointwise product of coefficient blocks (same square and order).
    pub fn hadamard(&self, other: &ModeBlock) -> ModeBlock {
        assert_eq!(self.order, other.order);
        assert_eq!(self.square, other.square);
        ModeBlock {
            square: self.square,
            order: self.order,
            c: self.c.iter().zip(&other.c).map(|(a, b)| a * b).collect(),
        }
    }
}

/// Which divergence identity carries the bulk of the indicator modes. The
/// two must agree wherever both apply; comparing them is a quadrature
/// self-check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndicatorRoute {
    /// Loop integral against `gamma2'`, divided by the axis-1 frequency.
    AlongX,
    /// Loop integral against `gamma1'`, divided by the axis-2 frequency.
    AlongY,
}

/// Fourier modes of the domain indicator on the square, via one loop
/// integral per mode:
///
/// ```text
/// m != 0:  c_mn = (1 / (-i alpha_m P^2)) oint e^{-i(alpha_m y1 + alpha_n y2)} gamma2'(t) dt
/// n != 0:  c_mn = (1 / (+i alpha_n P^2)) oint e^{-i(alpha_m y1 + alpha_n y2)} gamma1'(t) dt
/// ```
///
/// with `alpha_k = 2 pi k / P`; the mean is the shoelace area over `P^2`.
/// The chosen route covers its nonzero-frequency block, the opposite route
/// fills the remaining frequency-zero line. Composite Gauss-Legendre
/// panels (with edges on every parameter break, including the teardrop
/// corner at the traversal seam) make the loop quadrature converge
/// geometrically in the panel count.
pub fn indicator_modes(
    geom: &Geometry,
    square: Square,
    order: usize,
    n_quad: usize,
    route: IndicatorRoute,
) -> ModeBlock {
    let f = order as i64;
    let side = 2 * order + 1;
    let omega = TAU / square.period;
    let p2 = square.period * square.period;
    let (ts, ws) = geom.boundary().quadrature_nodes(n_quad);
    let nt = ts.len();
    let mut y1 = vec![0.0; nt];
    let mut y2 = vec![0.0; nt];
    let mut v1 = vec![0.0; nt];
    let mut v2 = vec![0.0; nt];
    for (k, &t) in ts.iter().enumerate() {
        let p = geom.boundary().point(t);
        let v = geom.boundary().velocity(t);
        y1[k] = p[0];
        y2[k] = p[1];
        v1[k] = v[0];
        v2[k] = v[1];
    }

    // Inner-axis phase table: for AlongX the inner sum runs over axis-2
    // frequencies, so tabulate e^{-i omega n y2}; swapped for AlongY.
    let inner_y = match route {
        IndicatorRoute::AlongX => &y2,
        IndicatorRoute::AlongY => &y1,
    };
    let table: Vec<Vec<Complex64>> = (0..=f)
        .into_par_iter()
        .map(|n| {
            inner_y
                .iter()
                .map(|&y| Complex64::from_polar(1.0, -omega * n as f64 * y))
                .collect()
        })
        .collect();
    let inner_phase = |n: i64, k: usize| -> Complex64 {
        if n >= 0 {
            table[n as usize][k]
        } else {
            table[(-n) as usize][k].conj()
        }
    };

    let mut block = ModeBlock::zeros(square, order);
    let rows: Vec<(i64, Vec<Complex64>)> = (1..=f)
        .into_par_iter()
        .map(|m| {
            let am = omega * m as f64;
            let (outer_y, factor, divisor): (&[f64], &[f64], Complex64) = match route {
                IndicatorRoute::AlongX => (&y1, &v2, Complex64::new(0.0, -am)),
                IndicatorRoute::AlongY => (&y2, &v1, Complex64::new(0.0, am)),
            };
            let a: Vec<Complex64> = (0..nt)
                .map(|k| Complex64::from_polar(ws[k] * factor[k], -am * outer_y[k]))
                .collect();
            let mut row = vec![Complex64::default(); side];
            for n in -f..=f {
                let mut acc = Complex64::default();
                for k in 0..nt {
                    acc += a[k] * inner_phase(n, k);
                }
                row[(n + f) as usize] = acc / divisor / p2;
            }
            (m, row)
        })
        .collect();
    for (m, row) in rows {
        for n in -f..=f {
            let v = row[(n + f) as usize];
            match route {
                IndicatorRoute::AlongX => {
                    block.set(m, n, v);
                    block.set(-m, -n, v.conj());
                }
                IndicatorRoute::AlongY => {
                    // Outer index was the axis-2 frequency.
                    block.set(n, m, v);
                    block.set(-n, -m, v.conj());
                }
            }
        }
    }

    // Frequency-zero line from the opposite route.
    let (line_y, line_factor, line_sign) = match route {
        IndicatorRoute::AlongX => (&y2, &v1, 1.0),
        IndicatorRoute::AlongY => (&y1, &v2, -1.0),
    };
    for n in 1..=f {
        let an = omega * n as f64;
        let mut acc = Complex64::default();
        for k in 0..nt {
            acc += Complex64::from_polar(ws[k] * line_factor[k], -an * line_y[k]);
        }
        let v = acc / Complex64::new(0.0, line_sign * an) / p2;
        match route {
            IndicatorRoute::AlongX => {
                block.set(0, n, v);
                block.set(0, -n, v.conj());
            }
            IndicatorRoute::AlongY => {
                block.set(n, 0, v);
                block.set(-n, 0, v.conj());
            }
        }
    }

    // Mean: shoelace area.
    let mut area = 0.0;
    for k in 0..nt {
        area += ws[k] * y1[k] * v2[k];
    }
    block.set(0, 0, Complex64::new(area / p2, 0.0));
    block
}

/// Centered mode block of a smooth scalar field, from an `ng x ng` sample
/// FFT on the square. The per-axis phase converts grid-anchored DFT bins
/// into true square coefficients (the grid starts at `s0`, not 0).
pub fn field_modes(
    field: impl Fn([f64; 2]) -> f64 + Sync,
    square: Square,
    order: usize,
    ng: usize,
) -> ModeBlock {
    assert!(ng > 2 * order, "sample grid must resolve the mode block");
    let h = square.period / ng as f64;
    let mut grid: Vec<Complex64> = vec![Complex64::default(); ng * ng];
    grid.par_chunks_mut(ng).enumerate().for_each(|(i, row)| {
        let x1 = square.s0 + i as f64 * h;
        for (j, cell) in row.iter_mut().enumerate() {
            let x2 = square.s0 + j as f64 * h;
            *cell = Complex64::new(field([x1, x2]) / (ng * ng) as f64, 0.0);
        }
    });
    fft2_inplace(&mut grid, ng, ng);
    let f = order as i64;
    let mut block = ModeBlock::zeros(square, order);
    let phase = |k: i64| Complex64::from_polar(1.0, -TAU * k as f64 * square.s0 / square.period);
    for m in -f..=f {
        for n in -f..=f {
            let src = m.rem_euclid(ng as i64) as usize * ng + n.rem_euclid(ng as i64) as usize;
            block.set(m, n, grid[src] * phase(m) * phase(n));
        }
    }
    block
}

/// Modes of the windowed density `phi(y) W(|y|)`, where the periodization
/// window is 1 on all of the domain (its base radius covers the farthest
/// domain point), so the windowing never touches `chi_Omega phi`.
pub fn density_modes(
    density: &Density,
    geom: &Geometry,
    square: Square,
    order: usize,
    ng: usize,
) -> Result<ModeBlock> {
    let w = periodization_window(geom.max_point_norm(), square.half()).map_err(Error::config)?;
    Ok(field_modes(
        |y| density.eval(y) * w.eval(y[0].hypot(y[1])),
        square,
        order,
        ng,
    ))
}

/// Modes of the smoothed kernel `log|y| (1 - W1(|y|)) W(|y|)`: the
/// near-field window removes the singularity (flat contact at 0), the
/// periodization window (base: domain diameter, so every difference
/// `x - y` that matters is inside its plateau) removes the period seam.
pub fn kernel_modes(
    geom: &Geometry,
    square: Square,
    order: usize,
    ng: usize,
    near_window: RadialWindow,
) -> Result<ModeBlock> {
    let w = periodization_window(geom.diameter(), square.half()).map_err(Error::config)?;
    Ok(field_modes(
        |y| {
            let r = y[0].hypot(y[1]);
            if r == 0.0 {
                return 0.0;
            }
            r.ln() * near_window.eval_complement(r) * w.eval(r)
        },
        square,
        order,
        ng,
    ))
}

/// Mode-limited product of two truncated factors: the `[-F, F]^2` modes of
/// `(sum of chi modes) * (sum of phi modes)`, i.e. the linear convolution
/// of the blocks cropped back to the center block. Computed with one
/// zero-padded FFT pair; padding to at least `4F + 1` per axis makes the
/// circular convolution linear, so the result is exact up to roundoff.
pub fn truncated_product_modes(chi: &ModeBlock, phi: &ModeBlock) -> ModeBlock {
    assert_eq!(chi.order, phi.order);
    assert_eq!(chi.square, phi.square);
    let f = chi.order;
    let side = 2 * f + 1;
    let l = 4 * f + 2;
    let mut a = vec![Complex64::default(); l * l];
    let mut b = vec![Complex64::default(); l * l];
    for i in 0..side {
        for j in 0..side {
            a[i * l + j] = chi.c[i * side + j];
            b[i * l + j] = phi.c[i * side + j];
        }
    }
    fft2_inplace(&mut a, l, l);
    fft2_inplace(&mut b, l, l);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    ifft2_inplace(&mut a, l, l);
    let scale = 1.0 / (l * l) as f64;
    let mut out = ModeBlock::zeros(chi.square, f);
    for i in 0..side {
        for j in 0..side {
            out.c[i * side + j] = a[(i + f) * l + (j + f)] * scale;
        }
    }
    out
}

fn take_real(values: Vec<Complex64>, context: &str) -> Result<Vec<f64>> {
    let mut max_re = 0.0f64;
    let mut max_im = 0.0f64;
    for v in &values {
        max_re = max_re.max(v.re.abs());
        max_im = max_im.max(v.im.abs());
    }
    if max_im > MAX_IMAG_RESIDUE * max_re.max(1.0) {
        return Err(Error::numerics(format!(
            "{context}: imaginary residue {max_im:.3e} exceeds the allowance \
             (real scale {max_re:.3e}); mode data is not conjugate-symmetric"
        )));
    }
    Ok(values.into_iter().map(|v| v.re).collect())
}

/// The far-field operator for a fixed geometry, density, window, and
/// square: holds the truncated-product modes and the kernel modes, and
/// evaluates their weighted mode sum at points or on a grid.
pub struct FarField {
    f_modes: ModeBlock,
    g_modes: ModeBlock,
}

/// Resolution knobs for [`FarField::build`].
#[derive(Debug, Clone, Copy)]
pub struct FarFieldParams {
    pub square: Square,
    /// Mode block order `F` per axis.
    pub order: usize,
    /// Boundary quadrature node count; default `max(4096, 16 F)`.
    pub boundary_nodes: Option<usize>,
    /// Field sample grid; default `max(1024, 4 F)`.
    pub sample_grid: Option<usize>,
}

impl FarFieldParams {
    pub fn new(square: Square, order: usize) -> Self {
        FarFieldParams {
            square,
            order,
            boundary_nodes: None,
            sample_grid: None,
        }
    }

    pub fn boundary_nodes(&self) -> usize {
        self.boundary_nodes
            .unwrap_or_else(|| 4096.max(16 * self.order))
    }

    pub fn sample_grid(&self) -> usize {
        self.sample_grid.unwrap_or_else(|| 1024.max(4 * self.order))
    }
}

impl FarField {
    pub fn build(
        geom: &Geometry,
        density: &Density,
        near_window: RadialWindow,
        params: FarFieldParams,
    ) -> Result<Self> {
        let chi = indicator_modes(
            geom,
            params.square,
            params.order,
            params.boundary_nodes(),
            IndicatorRoute::AlongX,
        );
        Self::build_with_indicator(geom, density, near_window, params, chi)
    }

    /// Variant that reuses precomputed indicator modes (they depend only on
    /// geometry, square, and order, so they are worth caching).
    pub fn build_with_indicator(
        geom: &Geometry,
        density: &Density,
        near_window: RadialWindow,
        params: FarFieldParams,
        chi: ModeBlock,
    ) -> Result<Self> {
        if chi.order != params.order || chi.square != params.square {
            return Err(Error::config(
                "indicator modes do not match the requested order and square",
            ));
        }
        let ng = params.sample_grid();
        let phi = density_modes(density, geom, params.square, params.order, ng)?;
        let f_modes = truncated_product_modes(&chi, &phi);
        let g_modes = kernel_modes(geom, params.square, params.order, ng, near_window)?;
        Ok(FarField { f_modes, g_modes })
    }

    pub fn order(&self) -> usize {
        self.f_modes.order
    }

    pub fn square(&self) -> Square {
        self.f_modes.square
    }

    pub fn f_modes(&self) -> &ModeBlock {
        &self.f_modes
    }

    pub fn g_modes(&self) -> &ModeBlock {
        &self.g_modes
    }

    /// Smooth-part values at arbitrary points:
    /// `P^2 sum f^t_{jk} ghat_{jk} e^{i 2 pi (j x1 + k x2)/P}`.
    pub fn eval_points(&self, pts: &[[f64; 2]]) -> Result<Vec<f64>> {
        let h = self.f_modes.hadamard(&self.g_modes);
        let f = h.order as i64;
        let side = h.side();
        let p = h.square.period;
        let scale = p * p;
        let vals: Vec<Complex64> = pts
            .par_iter()
            .map(|x| {
                let e1: Vec<Complex64> = (-f..=f)
                    .map(|j| Complex64::from_polar(1.0, TAU * j as f64 * x[0] / p))
                    .collect();
                let e2: Vec<Complex64> = (-f..=f)
                    .map(|k| Complex64::from_polar(1.0, TAU * k as f64 * x[1] / p))
                    .collect();
                let mut acc = Complex64::default();
                for (ji, &p1) in e1.iter().enumerate() {
                    let mut row_acc = Complex64::default();
                    for (ki, &p2) in e2.iter().enumerate() {
                        row_acc += h.c[ji * side + ki] * p2;
                    }
                    acc += row_acc * p1;
                }
                acc * scale
            })
            .collect();
        take_real(vals, "far-field point evaluation")
    }

    /// Smooth-part values on the uniform `nout x nout` output grid of the
    /// square (`nout >= 2F + 1`), via one zero-padded inverse FFT. Node
    /// `(i, j)` is `square.node(i, j, nout)`; values are row-major.
    pub fn eval_grid(&self, nout: usize) -> Result<Vec<f64>> {
        let h = self.f_modes.hadamard(&self.g_modes);
        let f = h.order as i64;
        if nout < h.side() {
            return Err(Error::config(format!(
                "output grid {nout} too small for {} modes per axis",
                h.side()
            )));
        }
        let p = h.square.period;
        // Modes evaluated at nodes s0 + i h need e^{+i 2 pi m s0 / P} folded
        // into their bin, the reverse of the extraction phase.
        let phase = |k: i64| Complex64::from_polar(1.0, TAU * k as f64 * h.square.s0 / p);
        let mut big = vec![Complex64::default(); nout * nout];
        for m in -f..=f {
            for n in -f..=f {
                let dst =
                    m.rem_euclid(nout as i64) as usize * nout + n.rem_euclid(nout as i64) as usize;
                big[dst] = h.get(m, n) * phase(m) * phase(n);
            }
        }
        ifft2_inplace(&mut big, nout, nout);
        let scale = p * p;
        for v in big.iter_mut() {
            *v *= scale;
        }
        take_real(big, "far-field grid evaluation")
    }
}
