//! Truncated Fourier series of the nonsmooth factors.
//!
//! Everything the filtered quadrature needs boils down to exact Fourier
//! coefficients of three families of functions on a period `d`:
//!
//! - `x log x` restricted to `[0, r]` (the radial kernel profile cut at a
//!   boundary crossing), via a closed form in the exponential integral;
//! - the even radial profile `|r| log |r|` with independent cuts on the two
//!   sides of the origin, assembled from the one-sided coefficients;
//! - interval indicators (angular sector filters, 1D test integrands).
//!
//! Coefficient convention: `c_n = (1/d) int_0^d f(x) e^{-i 2 pi n x / d} dx`,
//! so partial sums read `f(x) ~ sum c_n e^{+i 2 pi n x / d}`. All functions
//! here are real-valued, hence only `n >= 0` is stored and negative modes
//! follow by conjugation.

use crate::fourier::ifft_inplace;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Exponential integral `Ei(i y)` on the imaginary axis, `y != 0`.
///
/// Power series around the origin for `|y| <= 10`; beyond that the
/// continued fraction for `E_1` evaluated by the modified Lentz algorithm,
/// mapped back through `Ei(iy) = -conj(E_1(iy)) + i pi` (for `y > 0`).
/// Accurate to about 1e-14 relative over the range used here.
pub fn ei_imag(y: f64) -> Complex64 {
    assert!(y != 0.0, "Ei has a logarithmic singularity at 0");
    if y < 0.0 {
        return ei_imag(-y).conj();
    }
    if y <= 10.0 {
        // Ei(z) = gamma + ln z + sum_{k>=1} z^k / (k k!), z = i y.
        let z = Complex64::new(0.0, y);
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 1..=80 {
            term = term * z / k as f64;
            let contrib = term / k as f64;
            sum += contrib;
            if contrib.norm() < 1e-18 * (1.0 + sum.norm()) {
                break;
            }
        }
        return Complex64::new(EULER_GAMMA + y.ln(), FRAC_PI_2) + sum;
    }
    let e1 = e1_imag_cf(y);
    -e1.conj() + Complex64::new(0.0, PI)
}

/// `E_1(i y)` for `y > 10` via the continued fraction
/// `E_1(z) = e^{-z} / (z + 1 - 1^2/(z + 3 - 2^2/(z + 5 - ...)))`,
/// evaluated bottom-up-free with modified Lentz.
fn e1_imag_cf(y: f64) -> Complex64 {
    let z = Complex64::new(0.0, y);
    let tiny = Complex64::new(1e-300, 0.0);
    let mut f = z + 1.0;
    if f.norm() == 0.0 {
        f = tiny;
    }
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    for j in 1..=400u64 {
        let a = -((j * j) as f64);
        let b = z + (2 * j + 1) as f64;
        d = b + d * a;
        if d.norm() < 1e-300 {
            d = tiny;
        }
        c = b + a / c;
        if c.norm() < 1e-300 {
            c = tiny;
        }
        d = d.inv();
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    (-z).exp() / f
}

/// Fourier coefficient on period `period` of `x log x` restricted to
/// `[0, cut]` and extended by zero:
///
/// `C_n = (1/d) int_0^cut x log x e^{-i 2 pi n x / d} dx`.
///
/// Closed form for `n != 0` with `beta = 2 pi n / d`:
///
/// `C_n = [e^{-i beta cut}(i beta cut ln cut + ln cut + 1)
///         - Ei(-i beta cut) - (1 - gamma - ln(-i beta))] / (beta^2 d)`,
///
/// principal logarithm, `C_0 = cut^2 (2 ln cut - 1) / (4 d)`, and
/// `C_{-n} = conj(C_n)` since the function is real.
pub fn xlogx_cut_coeff(n: i64, cut: f64, period: f64) -> Complex64 {
    debug_assert!(cut >= 0.0 && period > 0.0);
    if cut == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    if n == 0 {
        return Complex64::new(cut * cut * (2.0 * cut.ln() - 1.0) / (4.0 * period), 0.0);
    }
    if n < 0 {
        return xlogx_cut_coeff(-n, cut, period).conj();
    }
    let beta = TAU * n as f64 / period;
    let lr = cut.ln();
    let bc = beta * cut;
    let boundary = Complex64::from_polar(1.0, -bc) * Complex64::new(lr + 1.0, bc * lr);
    // Ei(-i beta cut) = conj(Ei(i beta cut)); ln(-i beta) = ln beta - i pi/2.
    let ei = ei_imag(bc).conj();
    let origin = Complex64::new(1.0 - EULER_GAMMA - beta.ln(), FRAC_PI_2);
    (boundary - ei - origin) / (beta * beta * period)
}

/// Truncated Fourier series of a real periodic function: coefficients for
/// modes `0..=order`, negative modes implied by conjugate symmetry.
#[derive(Debug, Clone)]
pub struct HermitianSeries {
    period: f64,
    c: Vec<Complex64>,
}

impl HermitianSeries {
    /// Wrap explicit nonnegative-mode coefficients. `c[0]` must be the mean
    /// and should be (numerically) real.
    pub fn new(period: f64, c: Vec<Complex64>) -> Self {
        assert!(period > 0.0 && !c.is_empty());
        HermitianSeries { period, c }
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Highest retained mode index.
    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    /// Coefficient of mode `n`, any sign.
    pub fn coeff(&self, n: i64) -> Complex64 {
        let k = n.unsigned_abs() as usize;
        if k >= self.c.len() {
            return Complex64::new(0.0, 0.0);
        }
        if n >= 0 {
            self.c[k]
        } else {
            self.c[k].conj()
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.c
    }

    /// Partial sum at one point: `c_0 + 2 Re sum_{n=1}^F c_n e^{i 2 pi n x / d}`.
    pub fn eval(&self, x: f64) -> f64 {
        let omega = TAU * x / self.period;
        let rot = Complex64::from_polar(1.0, omega);
        let mut phase = Complex64::new(1.0, 0.0);
        let mut acc = 0.0;
        for &cn in &self.c[1..] {
            phase *= rot;
            acc += (cn * phase).re;
        }
        self.c[0].re + 2.0 * acc
    }

    /// Partial sum at the `n_nodes` uniform nodes `start + j d / n_nodes`.
    ///
    /// Modes are folded into DFT bins (mode `n` and `n - n_nodes` share a
    /// bin, each carrying its own phase `e^{i 2 pi n start / d}`), then one
    /// inverse FFT produces all values. Exact up to roundoff for any node
    /// count, including `n_nodes = 2 * order` where the `+-order` modes
    /// alias onto the same bin.
    pub fn eval_uniform(&self, n_nodes: usize, start: f64) -> Vec<f64> {
        assert!(n_nodes > 0);
        let f = self.order() as i64;
        let mut bins = vec![Complex64::new(0.0, 0.0); n_nodes];
        for n in -f..=f {
            let b = n.rem_euclid(n_nodes as i64) as usize;
            let phase = Complex64::from_polar(1.0, TAU * n as f64 * start / self.period);
            bins[b] += self.coeff(n) * phase;
        }
        ifft_inplace(&mut bins);
        bins.into_iter().map(|v| v.re).collect()
    }
}

/// Series of `x log x` on `[0, cut]`, zero elsewhere on the period.
pub fn xlogx_cut_series(cut: f64, period: f64, order: usize) -> HermitianSeries {
    let c = (0..=order as i64)
        .map(|n| xlogx_cut_coeff(n, cut, period))
        .collect();
    HermitianSeries::new(period, c)
}

/// One-sided radial kernel profile on the canonical radial period 2:
/// `r log r` on `[0, cut]`, zero on the rest of `[-1, 1)`.
pub fn radial_series_one_sided(cut: f64, order: usize) -> HermitianSeries {
    xlogx_cut_series(cut, 2.0, order)
}

/// Two-sided radial kernel profile on period 2: the even function
/// `|r| log |r|` supported on `[-cut_minus, cut_plus]`. Coefficients are
/// `C_n(cut_plus) + conj(C_n(cut_minus))`; conjugating the negative-side
/// contribution flips its modes, which is exactly the reflection `r -> -r`.
pub fn radial_series_two_sided(cut_minus: f64, cut_plus: f64, order: usize) -> HermitianSeries {
    let c = (0..=order as i64)
        .map(|n| xlogx_cut_coeff(n, cut_plus, 2.0) + xlogx_cut_coeff(n, cut_minus, 2.0).conj())
        .collect();
    HermitianSeries::new(2.0, c)
}

/// Indicator of the interval `[a, b]` (with `0 <= b - a <= period`) as a
/// truncated series on the given period.
pub fn interval_indicator_series(a: f64, b: f64, period: f64, order: usize) -> HermitianSeries {
    let len = b - a;
    assert!(
        (0.0..=period).contains(&len),
        "interval length {len} outside [0, period]"
    );
    let mut c = Vec::with_capacity(order + 1);
    c.push(Complex64::new(len / period, 0.0));
    for n in 1..=order as i64 {
        let w = TAU * n as f64 / period;
        let num = Complex64::from_polar(1.0, -w * a) - Complex64::from_polar(1.0, -w * b);
        c.push(num / Complex64::new(0.0, TAU * n as f64));
    }
    HermitianSeries::new(period, c)
}

/// Indicator of the counterclockwise arc from `alpha` to `beta` on the unit
/// circle (period 2 pi), traversal length `(beta - alpha) mod 2 pi`.
pub fn ccw_arc_indicator_series(alpha: f64, beta: f64, order: usize) -> HermitianSeries {
    let len = (beta - alpha).rem_euclid(TAU);
    interval_indicator_series(alpha, alpha + len, TAU, order)
}
