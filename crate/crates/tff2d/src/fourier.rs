//! FFT plumbing shared by the series evaluators and the far-field pipeline.
//!
//! rustfft conventions used throughout:
//! - forward:  `X[k] = sum_j x[j] e^{-i 2 pi j k / N}` (no scaling)
//! - inverse:  `x[j] = sum_k X[k] e^{+i 2 pi j k / N}` (no 1/N)
//!
//! Callers apply their own normalization; every site states which one.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::{Arc, Mutex};

static PLANNER: Mutex<Option<FftPlanner<f64>>> = Mutex::new(None);

fn plan(len: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    let mut guard = PLANNER.lock().unwrap();
    let planner = guard.get_or_insert_with(FftPlanner::new);
    if forward {
        planner.plan_fft_forward(len)
    } else {
        planner.plan_fft_inverse(len)
    }
}

/// Unscaled forward DFT in place.
pub fn fft_inplace(buf: &mut [Complex64]) {
    plan(buf.len(), true).process(buf);
}

/// Unscaled inverse DFT in place (no 1/N factor).
pub fn ifft_inplace(buf: &mut [Complex64]) {
    plan(buf.len(), false).process(buf);
}

/// Row-major 2D forward DFT in place on an `n1 x n2` grid.
pub fn fft2_inplace(buf: &mut [Complex64], n1: usize, n2: usize) {
    transform2(buf, n1, n2, true);
}

/// Row-major 2D inverse DFT in place (no 1/(n1 n2) factor).
pub fn ifft2_inplace(buf: &mut [Complex64], n1: usize, n2: usize) {
    transform2(buf, n1, n2, false);
}

fn transform2(buf: &mut [Complex64], n1: usize, n2: usize, forward: bool) {
    assert_eq!(buf.len(), n1 * n2, "grid shape mismatch");
    let row_fft = plan(n2, forward);
    for row in buf.chunks_exact_mut(n2) {
        row_fft.process(row);
    }
    let col_fft = plan(n1, forward);
    let mut col = vec![Complex64::default(); n1];
    for j in 0..n2 {
        for i in 0..n1 {
            col[i] = buf[i * n2 + j];
        }
        col_fft.process(&mut col);
        for i in 0..n1 {
            buf[i * n2 + j] = col[i];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn fft_roundtrip() {
        let n = 48;
        let orig: Vec<Complex64> = (0..n)
            .map(|j| Complex64::new((j as f64).sin(), (j as f64 * 0.7).cos()))
            .collect();
        let mut buf = orig.clone();
        fft_inplace(&mut buf);
        ifft_inplace(&mut buf);
        for (a, b) in buf.iter().zip(&orig) {
            assert!((a - b * n as f64).norm() < 1e-12);
        }
    }

    #[test]
    fn fft_forward_sign_convention() {
        // x[j] = e^{+i 2 pi 3 j / N} must land in bin k = 3.
        let n = 16;
        let mut buf: Vec<Complex64> = (0..n)
            .map(|j| Complex64::from_polar(1.0, TAU * 3.0 * j as f64 / n as f64))
            .collect();
        fft_inplace(&mut buf);
        assert!((buf[3] - Complex64::new(n as f64, 0.0)).norm() < 1e-12);
        assert!(buf[5].norm() < 1e-12);
    }

    #[test]
    fn fft2_matches_nested_1d() {
        let (n1, n2) = (6, 10);
        let mut grid: Vec<Complex64> = (0..n1 * n2)
            .map(|j| Complex64::new((j as f64 * 0.31).sin(), (j as f64 * 0.17).cos()))
            .collect();
        let mut reference = grid.clone();

        fft2_inplace(&mut grid, n1, n2);

        for row in reference.chunks_exact_mut(n2) {
            fft_inplace(row);
        }
        let mut col = vec![Complex64::default(); n1];
        for j in 0..n2 {
            for i in 0..n1 {
                col[i] = reference[i * n2 + j];
            }
            fft_inplace(&mut col);
            for i in 0..n1 {
                reference[i * n2 + j] = col[i];
            }
        }
        for (a, b) in grid.iter().zip(&reference) {
            assert!((a - b).norm() < 1e-10);
        }
    }
}
