//! Solver library for the 1D periodic space-fractional nonlinear Schrödinger
//! equation
//!
//! ```text
//!     i u_t - (-Δ)^{α/2} u + β |u|² u = 0,   x ∈ [a, b],   1 < α ≤ 2,
//! ```
//!
//! discretized with a Fourier pseudo-spectral method in space and the implicit
//! midpoint (Crank–Nicolson) rule in time. The fully discrete scheme conserves
//! the discrete mass `M = ‖U‖²_h` and energy `E = |U|²_{H^{α/2}_h} - (β/2)‖U‖⁴_{l⁴_h}`
//! exactly up to the tolerance of the inner fixed-point solve, which makes the
//! pair (M, E) a sharp long-time diagnostic.
//!
//! Module map:
//! - [`grid`]: periodic grid, trigonometric interpolation transforms, discrete
//!   inner product and `l^p` norms.
//! - [`fractional`]: the spectral multiplier `d_p = |μp|^α`, the discrete
//!   fractional Laplacian, fractional Sobolev (semi-)norms, and the explicit
//!   constants used by the inequality checks.
//! - [`scheme`]: the conservative time integrator with its fixed-point inner
//!   solver and per-step diagnostics.
//! - [`problems`]: built-in initial data (plane wave, soliton), exact
//!   solutions where available, and error norms.
//! - [`reference`]: naive O(N²) transform and operator evaluations, kept as an
//!   independent cross-check for everything the fast path computes.
//! - [`rng`]: small deterministic generator for verification batteries.

pub mod error;
pub mod fractional;
pub mod grid;
pub mod problems;
pub mod reference;
pub mod rng;
pub mod scheme;

pub use error::{Error, Result};
pub use fractional::FractionalSymbol;
pub use grid::{DftPath, GridFunction, GridSpec, SpectrumFunction};
pub use scheme::{RunObserver, RunRecord, SchemeParams, State};
