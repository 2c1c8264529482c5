//! Evaluation of weakly singular convolutions
//!
//! ```text
//! u(x) = int_Omega log|x - y| phi(y) dy
//! ```
//!
//! over piecewise-smooth planar domains, including domains with a boundary
//! corner. The integral is split by a radial partition of unity into a
//! singular near-field part, evaluated per point in polar coordinates, and a
//! smooth far-field part, evaluated for a whole grid at once through a
//! periodic convolution on a bounding square.
//!
//! Both parts rely on the same device: a factor of the integrand that is
//! discontinuous or singular (the radial kernel profile, the domain
//! indicator, an angular sector indicator) is replaced by a truncated
//! Fourier series, and the trapezoidal rule is applied with twice as many
//! nodes as retained modes. The aliasing structure of the trapezoidal rule
//! then cancels the slowly decaying coefficient tail, so smooth-factor
//! accuracy is recovered even though the filtered factor itself converges
//! poorly pointwise.
//!
//! Crate layout:
//! - [`filtered_quad`]: the 1D quadrature core and its aliasing identity.
//! - [`series`]: closed-form Fourier coefficients of `x log x` cut at an
//!   arbitrary radius, the exponential integral on the imaginary axis, and
//!   assembly of radial / angular filter series.
//! - [`windows`]: smooth radial bump windows and their sizing rules.
//! - [`geometry`]: parametrized boundaries, ray-boundary cuts, corner fans,
//!   and point classification against the near-field window.
//! - [`nearfield`]: the per-point polar quadrature, including the split-path
//!   corner treatment.
//! - [`farfield`]: bounding-square Fourier data (domain indicator through
//!   boundary quadrature, windowed density, smoothed kernel) and the
//!   truncated-convolution grid evaluation.
//! - [`density`]: built-in and tabulated densities.
//! - [`driver`]: grid evaluation, convergence studies, indicator caching.
//! - [`config`]: run configuration (TOML or JSON).
//! - [`io`]: result CSVs, binary dumps, cached mode blocks.
//! - [`oracle`]: independent adaptive-quadrature references used by the
//!   self-test battery and the validation suite, never by the fast path.

pub mod config;
pub mod density;
pub mod driver;
pub mod error;
pub mod farfield;
pub mod filtered_quad;
pub mod fourier;
pub mod geometry;
pub mod io;
pub mod nearfield;
pub mod oracle;
pub mod selftest;
pub mod series;
pub mod windows;

pub use config::RunConfig;
pub use density::Density;
pub use driver::Evaluator;
pub use error::Error;
pub use geometry::Boundary;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
