//! Parametrized boundaries and the geometric queries the quadratures need:
//! inside tests, ray-boundary cuts, distance to the boundary, and the
//! corner fan used by the split-path near-field treatment.

use crate::error::Error;
use crate::Result;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// 16-point Gauss-Legendre rule on [-1, 1], positive half (nodes are
/// symmetric, weights repeat). Used for composite-panel boundary quadrature.
const GL16: [(f64, f64); 8] = [
    (0.09501250983763745, 0.18945061045506859),
    (0.2816035507792589, 0.1826034150449236),
    (0.45801677765722737, 0.16915651939500262),
    (0.6178762444026438, 0.14959598881657676),
    (0.755404408355003, 0.12462897125553403),
    (0.8656312023878318, 0.09515851168249259),
    (0.9445750230732326, 0.062253523938647706),
    (0.9894009349916499, 0.027152459411754037),
];

/// Closed boundary curve, traversed counterclockwise with parameter in
/// `[0, 2 pi)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Boundary {
    /// `t -> (lx sin(t/2), -ly sin t)`: a smooth loop except for one corner
    /// at the origin (t = 0), where the two tangents meet at an interior
    /// wedge angle of about 106 degrees for the default 3 x 2 scaling.
    /// The same formula over `t in [2 pi, 4 pi)` traces the mirror image
    /// `x1 <= 0`; that smooth continuation through the corner is what the
    /// near-field split-path treatment integrates along.
    Teardrop { lx: f64, ly: f64 },
    /// Circle of the given radius centered at the origin.
    Disk { radius: f64 },
    /// Closed polygon; each edge gets an equal parameter span.
    Polyline { vertices: Vec<[f64; 2]> },
}

impl Boundary {
    /// Curve point at parameter `t`. For the teardrop, `t` may range over
    /// the doubled period `[0, 4 pi)` to address the mirror sheet; the
    /// other variants are `2 pi`-periodic.
    pub fn point(&self, t: f64) -> [f64; 2] {
        match self {
            Boundary::Teardrop { lx, ly } => [lx * (t / 2.0).sin(), -ly * t.sin()],
            Boundary::Disk { radius } => [radius * t.cos(), radius * t.sin()],
            Boundary::Polyline { vertices } => {
                let (a, b, s) = polyline_locate(vertices, t);
                [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])]
            }
        }
    }

    /// Parameter derivative of [`Boundary::point`].
    pub fn velocity(&self, t: f64) -> [f64; 2] {
        match self {
            Boundary::Teardrop { lx, ly } => [lx / 2.0 * (t / 2.0).cos(), -ly * t.cos()],
            Boundary::Disk { radius } => [-radius * t.sin(), radius * t.cos()],
            Boundary::Polyline { vertices } => {
                let m = vertices.len() as f64;
                let (a, b, _) = polyline_locate(vertices, t);
                let scale = m / TAU;
                [(b[0] - a[0]) * scale, (b[1] - a[1]) * scale]
            }
        }
    }

    /// Corner location, if the curve has one the near-field treatment
    /// knows how to split around.
    pub fn corner(&self) -> Option<[f64; 2]> {
        match self {
            Boundary::Teardrop { .. } => Some([0.0, 0.0]),
            _ => None,
        }
    }

    /// Composite 16-point Gauss-Legendre nodes and weights over one full
    /// traversal, with panel edges pinned to every parameter where the
    /// velocity jumps (the teardrop corner sits at the traversal seam, so
    /// uniform panels already respect it; polygon vertices get their own
    /// panel edges). At least `n` nodes total.
    pub fn quadrature_nodes(&self, n: usize) -> (Vec<f64>, Vec<f64>) {
        let breaks: Vec<f64> = match self {
            Boundary::Polyline { vertices } => {
                let m = vertices.len();
                (0..=m).map(|k| TAU * k as f64 / m as f64).collect()
            }
            _ => vec![0.0, TAU],
        };
        let segments = breaks.len() - 1;
        let per_segment = (n + 16 * segments - 1) / (16 * segments);
        let mut ts = Vec::new();
        let mut ws = Vec::new();
        for seg in breaks.windows(2) {
            let h = (seg[1] - seg[0]) / per_segment as f64;
            for p in 0..per_segment {
                let mid = seg[0] + (p as f64 + 0.5) * h;
                for &(xg, wg) in &GL16 {
                    for sign in [-1.0, 1.0] {
                        ts.push(mid + sign * xg * h / 2.0);
                        ws.push(wg * h / 2.0);
                    }
                }
            }
        }
        (ts, ws)
    }

    fn is_counterclockwise(&self) -> bool {
        // Shoelace sign from a coarse traversal.
        let n = 512;
        let mut area2 = 0.0;
        let mut prev = self.point(0.0);
        for k in 1..=n {
            let p = self.point(TAU * k as f64 / n as f64);
            area2 += prev[0] * p[1] - prev[1] * p[0];
            prev = p;
        }
        area2 > 0.0
    }
}

fn polyline_locate<'a>(vertices: &'a [[f64; 2]], t: f64) -> (&'a [f64; 2], &'a [f64; 2], f64) {
    let m = vertices.len();
    assert!(m >= 3, "polyline needs at least 3 vertices");
    let u = t.rem_euclid(TAU) / TAU * m as f64;
    let i = (u as usize).min(m - 1);
    (&vertices[i], &vertices[(i + 1) % m], u - i as f64)
}

/// Number of cached curve samples over the doubled teardrop period.
const CACHE_SAMPLES: usize = 8192;
/// Extra wrapped samples past the doubled period, so crossing brackets that
/// straddle the seam are still visible to the scan.
const CACHE_WRAP: usize = 1024;
/// Smallest ray distance treated as a genuine crossing; closer roots are
/// the ray's own origin sitting on the curve.
const RHO_MIN: f64 = 1e-12;

/// A boundary plus cached sample grids for crossing scans.
#[derive(Debug, Clone)]
pub struct Geometry {
    boundary: Boundary,
    /// Teardrop only: parameters over `[0, 4 pi)` plus wrap.
    t_cache: Vec<f64>,
    b_cache: Vec<[f64; 2]>,
}

/// Circle-boundary crossing data around a corner inside the near-field
/// window: where the circle `|y - x| = w1` meets the extended curve, and
/// the angles (from `x`) of those crossings and of the corner itself.
#[derive(Debug, Clone, Copy)]
pub struct CornerFan {
    /// Crossing parameters, ascending. Entries 0 and 1 lie on the physical
    /// loop (`t < 2 pi`), entries 2 and 3 on the mirror sheet.
    pub t_cross: [f64; 4],
    /// Angles from `x` to the four crossings, same order.
    pub cross_angle: [f64; 4],
    /// Angle from `x` to the corner.
    pub corner_angle: f64,
    /// Whether the curve runs counterclockwise around `x`'s side; the
    /// split-path sector tables swap their arc endpoints when it does not.
    pub ccw: bool,
}

/// Near-field classification of an evaluation point against the window
/// radius `w1`.
#[derive(Debug, Clone)]
pub enum PointClass {
    /// Outside the domain, window ball disjoint from it: near field is 0.
    FarOutside { boundary_dist: f64 },
    /// Outside the domain but within `w1` of it: not supported.
    OutsideNearBoundary { boundary_dist: f64 },
    /// Window ball entirely inside the domain: every radial cut is `w1`.
    InteriorClear,
    /// Boundary crosses the window ball; corner (if any) stays outside it.
    InteriorCut,
    /// Corner lies inside the window ball.
    CornerWindow(CornerFan),
}

impl Geometry {
    pub fn new(boundary: Boundary) -> Result<Self> {
        match &boundary {
            Boundary::Teardrop { lx, ly } => {
                if !(*lx > 0.0 && *ly > 0.0) {
                    return Err(Error::config("teardrop scales must be positive"));
                }
            }
            Boundary::Disk { radius } => {
                if !(*radius > 0.0) {
                    return Err(Error::config("disk radius must be positive"));
                }
            }
            Boundary::Polyline { vertices } => {
                if vertices.len() < 3 {
                    return Err(Error::config("polyline needs at least 3 vertices"));
                }
            }
        }
        if !boundary.is_counterclockwise() {
            return Err(Error::geometry("boundary must run counterclockwise"));
        }
        let (t_cache, b_cache) = match &boundary {
            Boundary::Teardrop { .. } => {
                let step = 2.0 * TAU / CACHE_SAMPLES as f64;
                let ts: Vec<f64> = (0..CACHE_SAMPLES + CACHE_WRAP)
                    .map(|i| i as f64 * step)
                    .collect();
                let bs = ts.iter().map(|&t| boundary.point(t)).collect();
                (ts, bs)
            }
            _ => (Vec::new(), Vec::new()),
        };
        Ok(Geometry {
            boundary,
            t_cache,
            b_cache,
        })
    }

    pub fn boundary(&self) -> &Boundary {
        &self.boundary
    }

    /// Whether `x` lies strictly inside the domain.
    pub fn inside(&self, x: [f64; 2]) -> bool {
        match &self.boundary {
            Boundary::Teardrop { lx, ly } => {
                if !(0.0 < x[0] && x[0] < *lx) {
                    return false;
                }
                let t = 2.0 * (x[0] / lx).asin();
                x[1].abs() < ly * t.sin()
            }
            Boundary::Disk { radius } => x[0].hypot(x[1]) < *radius,
            Boundary::Polyline { vertices } => {
                // Even-odd rule with a horizontal ray towards +x1.
                let mut crossings = 0;
                let m = vertices.len();
                for i in 0..m {
                    let (a, b) = (vertices[i], vertices[(i + 1) % m]);
                    if (a[1] > x[1]) != (b[1] > x[1]) {
                        let x_at = a[0] + (x[1] - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
                        if x_at > x[0] {
                            crossings += 1;
                        }
                    }
                }
                crossings % 2 == 1
            }
        }
    }

    /// All ray-boundary crossings `(t, rho)` with `x + rho (cos th, sin th)`
    /// on the curve, `RHO_MIN < rho <= r_max` and `t` in `[t_lo, t_hi]`.
    /// Teardrop only: `t` addresses the extended (doubled-period) curve, so
    /// stub searches can follow a smooth branch through the corner and onto
    /// the mirror sheet. Crossings are clamped to `r_max`; the radial
    /// window vanishes to all orders there, so the clamp is invisible to
    /// the filtered integrand.
    pub fn ray_crossings(
        &self,
        x: [f64; 2],
        theta: f64,
        t_lo: f64,
        t_hi: f64,
        r_max: f64,
    ) -> Vec<(f64, f64)> {
        assert!(
            matches!(self.boundary, Boundary::Teardrop { .. }),
            "extended-curve crossing scan is teardrop-specific"
        );
        let dir = [theta.cos(), theta.sin()];
        let offset = |t: f64| {
            let p = self.boundary.point(t);
            (p[0] - x[0]) * dir[1] - (p[1] - x[1]) * dir[0]
        };
        let mut out = Vec::new();
        for i in 0..self.t_cache.len() - 1 {
            if self.t_cache[i] < t_lo - 1e-12 || self.t_cache[i + 1] > t_hi + 1e-12 {
                continue;
            }
            let s0 = {
                let p = self.b_cache[i];
                (p[0] - x[0]) * dir[1] - (p[1] - x[1]) * dir[0]
            };
            let s1 = {
                let p = self.b_cache[i + 1];
                (p[0] - x[0]) * dir[1] - (p[1] - x[1]) * dir[0]
            };
            if s0 * s1 >= 0.0 {
                continue;
            }
            let t_star = bisect(self.t_cache[i], self.t_cache[i + 1], s0, &offset);
            let p = self.boundary.point(t_star);
            let rho = (p[0] - x[0]) * dir[0] + (p[1] - x[1]) * dir[1];
            if RHO_MIN < rho && rho <= r_max + 1e-12 {
                out.push((t_star, rho.min(r_max)));
            }
        }
        out
    }

    /// Distance along direction `theta` from `x` to the first boundary
    /// crossing, clamped to `r_max`. An even crossing count means the ray
    /// leaves and re-enters before `r_max`, so the endpoint is back inside
    /// and the cut stays at `r_max` (this also absorbs tangential
    /// double roots).
    pub fn radial_cut(&self, x: [f64; 2], theta: f64, r_max: f64) -> f64 {
        let crossings: Vec<f64> = match &self.boundary {
            Boundary::Teardrop { .. } => self
                .ray_crossings(x, theta, 0.0, TAU, r_max)
                .into_iter()
                .map(|(_, rho)| rho)
                .collect(),
            Boundary::Disk { radius } => {
                // |x + rho d|^2 = R^2, quadratic in rho.
                let d = [theta.cos(), theta.sin()];
                let b = x[0] * d[0] + x[1] * d[1];
                let c = x[0] * x[0] + x[1] * x[1] - radius * radius;
                let disc = b * b - c;
                if disc <= 0.0 {
                    Vec::new()
                } else {
                    let s = disc.sqrt();
                    [-b - s, -b + s]
                        .into_iter()
                        .filter(|&rho| RHO_MIN < rho && rho <= r_max + 1e-12)
                        .map(|rho| rho.min(r_max))
                        .collect()
                }
            }
            Boundary::Polyline { vertices } => {
                let d = [theta.cos(), theta.sin()];
                let m = vertices.len();
                let mut v = Vec::new();
                for i in 0..m {
                    let (a, b) = (vertices[i], vertices[(i + 1) % m]);
                    let e = [b[0] - a[0], b[1] - a[1]];
                    let det = d[0] * (-e[1]) - d[1] * (-e[0]);
                    if det.abs() < 1e-300 {
                        continue;
                    }
                    let r = [a[0] - x[0], a[1] - x[1]];
                    let rho = (r[0] * (-e[1]) - r[1] * (-e[0])) / det;
                    let s = (d[0] * r[1] - d[1] * r[0]) / det;
                    if (0.0..1.0).contains(&s) && RHO_MIN < rho && rho <= r_max + 1e-12 {
                        v.push(rho.min(r_max));
                    }
                }
                v
            }
        };
        if crossings.is_empty() || crossings.len() % 2 == 0 {
            return r_max;
        }
        crossings.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Shortest distance from `x` to the boundary (teardrop: to the
    /// extended curve; near the corner that coincides with the physical
    /// distance, and elsewhere the mirror sheet is farther than the window
    /// radius ever reaches).
    pub fn boundary_distance(&self, x: [f64; 2]) -> f64 {
        match &self.boundary {
            Boundary::Teardrop { .. } => {
                let d2 = |t: f64| {
                    let p = self.boundary.point(t);
                    let (dx, dy) = (p[0] - x[0], p[1] - x[1]);
                    dx * dx + dy * dy
                };
                // Only the physical loop t in [0, 2pi] bounds the domain; the
                // mirror sheet beyond it must not attract the distance.
                let mut best = (f64::INFINITY, 0.0);
                for (i, p) in self.b_cache[..CACHE_SAMPLES / 2 + 1].iter().enumerate() {
                    let (dx, dy) = (p[0] - x[0], p[1] - x[1]);
                    let v = dx * dx + dy * dy;
                    if v < best.0 {
                        best = (v, self.t_cache[i]);
                    }
                }
                let step = self.t_cache[1] - self.t_cache[0];
                let lo = (best.1 - step).max(0.0);
                let hi = (best.1 + step).min(TAU);
                golden_min(lo, hi, &d2).sqrt()
            }
            Boundary::Disk { radius } => (x[0].hypot(x[1]) - radius).abs(),
            Boundary::Polyline { vertices } => {
                let m = vertices.len();
                (0..m)
                    .map(|i| segment_distance(vertices[i], vertices[(i + 1) % m], x))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// Largest distance from the origin to a domain point (attained on the
    /// boundary). Grid scan refined by golden section.
    pub fn max_point_norm(&self) -> f64 {
        match &self.boundary {
            Boundary::Disk { radius } => *radius,
            Boundary::Polyline { vertices } => vertices
                .iter()
                .map(|v| v[0].hypot(v[1]))
                .fold(0.0, f64::max),
            Boundary::Teardrop { .. } => {
                let neg_n2 = |t: f64| {
                    let p = self.boundary.point(t);
                    -(p[0] * p[0] + p[1] * p[1])
                };
                let n = 2048;
                let mut best = (f64::INFINITY, 0.0);
                for k in 0..n {
                    let t = TAU * k as f64 / n as f64;
                    let v = neg_n2(t);
                    if v < best.0 {
                        best = (v, t);
                    }
                }
                let step = TAU / n as f64;
                (-golden_min(best.1 - step, best.1 + step, &neg_n2)).sqrt()
            }
        }
    }

    /// Domain diameter: coarse all-pairs boundary scan refined by
    /// coordinate-wise golden section.
    pub fn diameter(&self) -> f64 {
        match &self.boundary {
            Boundary::Disk { radius } => 2.0 * radius,
            Boundary::Polyline { vertices } => {
                let mut d = 0.0f64;
                for (i, a) in vertices.iter().enumerate() {
                    for b in &vertices[i + 1..] {
                        d = d.max((a[0] - b[0]).hypot(a[1] - b[1]));
                    }
                }
                d
            }
            Boundary::Teardrop { .. } => {
                let n = 1024;
                let pts: Vec<[f64; 2]> = (0..n)
                    .map(|k| self.boundary.point(TAU * k as f64 / n as f64))
                    .collect();
                let mut best = (0.0f64, 0.0f64, 0.0f64);
                for i in 0..n {
                    for j in i + 1..n {
                        let d = (pts[i][0] - pts[j][0]).hypot(pts[i][1] - pts[j][1]);
                        if d > best.0 {
                            best = (d, TAU * i as f64 / n as f64, TAU * j as f64 / n as f64);
                        }
                    }
                }
                let (_, mut s, mut t) = best;
                let step = TAU / n as f64;
                let neg_d2 = |a: f64, b: f64| {
                    let p = self.boundary.point(a);
                    let q = self.boundary.point(b);
                    -((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2))
                };
                for _ in 0..8 {
                    s = golden_argmin(s - step, s + step, &|a| neg_d2(a, t));
                    t = golden_argmin(t - step, t + step, &|b| neg_d2(s, b));
                }
                (-neg_d2(s, t)).sqrt()
            }
        }
    }

    /// Circle-boundary fan around the corner for a point `x` whose window
    /// ball (radius `w1`) contains the corner. The circle must cross the
    /// extended curve exactly four times: twice on the physical loop (the
    /// lower and upper branch) and twice on the mirror sheet.
    pub fn corner_fan(&self, x: [f64; 2], w1: f64) -> Result<CornerFan> {
        let corner = self
            .boundary
            .corner()
            .ok_or_else(|| Error::geometry("boundary has no corner"))?;
        let h = |t: f64| {
            let p = self.boundary.point(t);
            (p[0] - x[0]).hypot(p[1] - x[1]) - w1
        };
        let mut roots = Vec::new();
        for i in 0..CACHE_SAMPLES {
            let h0 = {
                let p = self.b_cache[i];
                (p[0] - x[0]).hypot(p[1] - x[1]) - w1
            };
            let h1 = {
                let p = self.b_cache[i + 1];
                (p[0] - x[0]).hypot(p[1] - x[1]) - w1
            };
            if h0 * h1 >= 0.0 {
                continue;
            }
            roots.push(bisect(self.t_cache[i], self.t_cache[i + 1], h0, &h));
        }
        if roots.len() != 4 {
            return Err(Error::geometry(format!(
                "window circle crosses the extended curve {} times, need exactly 4; \
                 shrink the window or move the point",
                roots.len()
            )));
        }
        roots.sort_by(f64::total_cmp);
        let physical = roots.iter().filter(|&&t| t < TAU).count();
        if physical != 2 {
            return Err(Error::geometry(
                "window circle must cross the physical loop exactly twice",
            ));
        }
        let angle_to = |p: [f64; 2]| (p[1] - x[1]).atan2(p[0] - x[0]);
        let t_cross = [roots[0], roots[1], roots[2], roots[3]];
        let cross_angle = [
            angle_to(self.boundary.point(roots[0])),
            angle_to(self.boundary.point(roots[1])),
            angle_to(self.boundary.point(roots[2])),
            angle_to(self.boundary.point(roots[3])),
        ];
        let corner_angle = angle_to(corner);
        // Counterclockwise traversal puts the last mirror crossing on the
        // arc from the upper physical crossing to the corner.
        let ccw = in_ccw_arc(cross_angle[3], cross_angle[1], corner_angle);
        Ok(CornerFan {
            t_cross,
            cross_angle,
            corner_angle,
            ccw,
        })
    }

    /// Near-field classification against window radius `w1`.
    pub fn classify(&self, x: [f64; 2], w1: f64) -> Result<PointClass> {
        if !self.inside(x) {
            let d = self.boundary_distance(x);
            return Ok(if d > w1 {
                PointClass::FarOutside { boundary_dist: d }
            } else {
                PointClass::OutsideNearBoundary { boundary_dist: d }
            });
        }
        if let Some(c) = self.boundary.corner() {
            if (x[0] - c[0]).hypot(x[1] - c[1]) < w1 {
                return Ok(PointClass::CornerWindow(self.corner_fan(x, w1)?));
            }
        }
        if let Boundary::Polyline { vertices } = &self.boundary {
            let near_vertex = vertices
                .iter()
                .any(|v| (x[0] - v[0]).hypot(x[1] - v[1]) < w1);
            if near_vertex {
                return Err(Error::geometry(
                    "polygon vertex inside the near-field window: corner treatment \
                     is only available for the teardrop",
                ));
            }
        }
        Ok(if self.boundary_distance(x) >= w1 {
            PointClass::InteriorClear
        } else {
            PointClass::InteriorCut
        })
    }
}

/// Whether `theta` lies on the counterclockwise arc from `a` to `b`
/// (inclusive, with a roundoff allowance).
pub fn in_ccw_arc(theta: f64, a: f64, b: f64) -> bool {
    (theta - a).rem_euclid(TAU) <= (b - a).rem_euclid(TAU) + 1e-15
}

/// Sign-change bisection: `f` changes sign on `[a, b]`, `fa = f(a)`.
fn bisect(mut a: f64, mut b: f64, mut fa: f64, f: &impl Fn(f64) -> f64) -> f64 {
    for _ in 0..80 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fa * fm <= 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
        if b - a < 1e-14 {
            break;
        }
    }
    0.5 * (a + b)
}

fn golden_argmin(mut a: f64, mut b: f64, f: &impl Fn(f64) -> f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        if b - a < 1e-13 {
            break;
        }
    }
    0.5 * (a + b)
}

fn golden_min(a: f64, b: f64, f: &impl Fn(f64) -> f64) -> f64 {
    f(golden_argmin(a, b, f))
}

fn segment_distance(a: [f64; 2], b: [f64; 2], x: [f64; 2]) -> f64 {
    let e = [b[0] - a[0], b[1] - a[1]];
    let r = [x[0] - a[0], x[1] - a[1]];
    let len2 = e[0] * e[0] + e[1] * e[1];
    let s = if len2 > 0.0 {
        ((r[0] * e[0] + r[1] * e[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (r[0] - s * e[0]).hypot(r[1] - s * e[1])
}
