//! Smooth cutoff windows.
//!
//! All windows here are built from one C-infinity bump profile that is
//! exactly 1 at the left edge and exactly 0 at the right edge, with all
//! derivatives vanishing at both ends. Flat contact at the edges is what
//! lets the near-field code cap radial cuts at the window's outer radius
//! without introducing a visible kink: any cut discontinuity parked at a
//! radius where the window vanishes to all orders is annihilated by the
//! window factor.

/// Transition profile on `(0, 1)`: `exp(2 e^{-1/u} / (u - 1))`.
///
/// Equals 1 as `u -> 0+` and 0 as `u -> 1-`, monotone in between, with all
/// derivatives vanishing at both endpoints. Guards clamp the argument so
/// the exponentials cannot overflow near the edges.
pub fn bump(u: f64) -> f64 {
    if u < 1e-15 {
        return 1.0;
    }
    if u > 1.0 - 1e-15 {
        return 0.0;
    }
    (2.0 * (-1.0 / u).exp() / (u - 1.0)).exp()
}

/// Radial window: 1 for `|r| <= w0`, 0 for `|r| >= w1`, smooth between.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialWindow {
    pub w0: f64,
    pub w1: f64,
}

impl RadialWindow {
    pub fn new(w0: f64, w1: f64) -> Self {
        assert!(0.0 < w0 && w0 < w1, "window radii must satisfy 0 < w0 < w1");
        RadialWindow { w0, w1 }
    }

    /// Window value at signed radius `r` (even in `r`).
    pub fn eval(&self, r: f64) -> f64 {
        bump((r.abs() - self.w0) / (self.w1 - self.w0))
    }

    /// Complement `1 - W(r)`, used to smooth the kernel away from its
    /// singularity.
    pub fn eval_complement(&self, r: f64) -> f64 {
        1.0 - self.eval(r)
    }
}

/// Fraction of the available slack reserved on both sides when sizing an
/// origin-centered periodization window. Keeping the window identically 1
/// on the data and identically 0 before the period edge needs nonzero
/// margins; 5% of the slack on each side leaves the bulk of the room for
/// the smooth transition, which controls the window's own Fourier tail.
pub const PERIODIZATION_MARGIN: f64 = 0.05;

/// Window that is 1 on `|s| <= base` and 0 near `|s| = half_period`,
/// for periodizing data of known extent onto a square of the given period.
///
/// Returns an error description if the data does not fit with margins.
pub fn periodization_window(base: f64, half_period: f64) -> Result<RadialWindow, String> {
    if !(base > 0.0) {
        return Err(format!("window base must be positive, got {base}"));
    }
    let slack = half_period - base;
    if slack <= 0.0 {
        return Err(format!(
            "data extent {base} does not fit inside half-period {half_period}"
        ));
    }
    let margin = PERIODIZATION_MARGIN * slack;
    Ok(RadialWindow::new(base + margin, half_period - margin))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_limits_and_monotonicity() {
        assert_eq!(bump(-1.0), 1.0);
        assert_eq!(bump(0.0), 1.0);
        assert_eq!(bump(1.0), 0.0);
        assert_eq!(bump(2.0), 0.0);
        let mut prev = 1.0;
        for i in 1..100 {
            let v = bump(i as f64 / 100.0);
            assert!(v <= prev + 1e-15, "bump must be nonincreasing");
            assert!((0.0..=1.0).contains(&v));
            prev = v;
        }
    }

    #[test]
    fn bump_flat_contact_at_edges() {
        // Near the edges the profile approaches its limit faster than any
        // power; check it is already indistinguishable from the limit at
        // distance 1e-3.
        assert!((bump(1e-3) - 1.0).abs() < 1e-100);
        assert!(bump(1.0 - 1e-3) < 1e-100);
    }

    #[test]
    fn radial_window_plateau_and_support() {
        let w = RadialWindow::new(0.25, 1.0);
        assert_eq!(w.eval(0.0), 1.0);
        assert_eq!(w.eval(0.2), 1.0);
        assert_eq!(w.eval(-0.2), 1.0);
        assert_eq!(w.eval(1.0), 0.0);
        assert_eq!(w.eval(-3.0), 0.0);
        let mid = w.eval(0.6);
        assert!(mid > 0.0 && mid < 1.0);
        assert_eq!(w.eval(0.6), w.eval(-0.6));
        assert_eq!(w.eval_complement(0.2), 0.0);
        assert_eq!(w.eval_complement(1.5), 1.0);
    }

    #[test]
    fn periodization_window_margins() {
        // base 4 inside half-period 4*pi: slack ~ 8.566, margin 5% of it.
        let half = 4.0 * std::f64::consts::PI;
        let w = periodization_window(4.0, half).unwrap();
        let margin = PERIODIZATION_MARGIN * (half - 4.0);
        assert!((w.w0 - (4.0 + margin)).abs() < 1e-14);
        assert!((w.w1 - (half - margin)).abs() < 1e-14);
        assert_eq!(w.eval(4.0), 1.0);
        assert_eq!(w.eval(half), 0.0);

        assert!(periodization_window(5.0, 4.0).is_err());
        assert!(periodization_window(0.0, 4.0).is_err());
    }
}
