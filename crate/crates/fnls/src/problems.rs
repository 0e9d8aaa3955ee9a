//! Built-in problem definitions and error metrics.
//!
//! Two canonical setups are shipped: a plane wave with a closed-form solution
//! on any domain that resolves its mode, and a sech-profile soliton on
//! `[-20, 20]` whose field decays to ~1.4e-6 at the boundary, so periodic
//! truncation is accepted as-is. Custom initial data enters through the CLI as
//! sampled node values.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{self, GridFunction, GridSpec};

/// Initial data selector for the harness and demos.
#[derive(Debug, Clone, PartialEq)]
pub enum Problem {
    /// `u(x, t) = A e^{i(λμx - ωt)}` with `ω = |μλ|^α - β|A|²`.
    PlaneWave { amplitude: f64, mode: i64 },
    /// `u(x, 0) = sech(√2 x / 2) e^{i x / 2}`.
    Soliton,
    /// Arbitrary sampled node values.
    Custom(Vec<Complex64>),
}

impl Problem {
    /// Initial field at `t = 0`.
    pub fn initial(&self, spec: &GridSpec) -> Result<GridFunction> {
        match self {
            // ω t = 0 regardless of α and β.
            Problem::PlaneWave { amplitude, mode } => {
                plane_wave_exact(spec, 0.0, *amplitude, *mode, 2.0, 0.0)
            }
            Problem::Soliton => soliton_initial(spec),
            Problem::Custom(values) => GridFunction::from_values(*spec, values.clone()),
        }
    }

    /// Exact solution at time `t`, when one is known.
    pub fn exact(
        &self,
        spec: &GridSpec,
        t: f64,
        alpha: f64,
        beta: f64,
    ) -> Option<Result<GridFunction>> {
        match self {
            Problem::PlaneWave { amplitude, mode } => {
                Some(plane_wave_exact(spec, t, *amplitude, *mode, alpha, beta))
            }
            _ => None,
        }
    }
}

/// Plane wave `u_j = A e^{i(λμx_j - ωt)}`, `ω = |μλ|^α - β|A|²`. On `[-π, π]`
/// (μ = 1) this is the textbook `ω = |λ|^α - β|A|²`. The mode must be
/// resolvable: `|λ| < N/2`.
pub fn plane_wave_exact(
    spec: &GridSpec,
    t: f64,
    amplitude: f64,
    lambda: i64,
    alpha: f64,
    beta: f64,
) -> Result<GridFunction> {
    if lambda.unsigned_abs() as usize >= spec.len() / 2 {
        return Err(Error::InvalidParameter(format!(
            "mode λ = {lambda} is not resolvable on {} nodes (need |λ| < N/2)",
            spec.len()
        )));
    }
    let mu = spec.mu();
    let omega = plane_wave_omega(mu, amplitude, lambda, alpha, beta);
    GridFunction::from_fn(*spec, |x| {
        Complex64::from_polar(amplitude, lambda as f64 * mu * x - omega * t)
    })
}

/// Dispersion relation of the plane wave: `ω = |μλ|^α - β|A|²`.
pub fn plane_wave_omega(mu: f64, amplitude: f64, lambda: i64, alpha: f64, beta: f64) -> f64 {
    (mu * lambda.unsigned_abs() as f64).powf(alpha) - beta * amplitude * amplitude
}

/// Soliton initial profile `sech(√2 x/2) e^{ix/2}` sampled at the nodes.
/// The domain must cover `[-20, 20]`; the default setup uses it exactly.
pub fn soliton_initial(spec: &GridSpec) -> Result<GridFunction> {
    if spec.a() > -20.0 || spec.b() < 20.0 {
        return Err(Error::InvalidParameter(format!(
            "soliton domain must cover [-20, 20], got [{}, {}]",
            spec.a(),
            spec.b()
        )));
    }
    GridFunction::from_fn(*spec, |x| {
        let envelope = 1.0 / ((2f64.sqrt() * x / 2.0).cosh());
        envelope * Complex64::from_polar(1.0, x / 2.0)
    })
}

/// `(L^∞, L²)` error pair between a numerical and a reference field. The L²
/// entry is the h-weighted norm `(h Σ_j |e_j|²)^{1/2}` — the discrete stand-in
/// for the continuous integral, and the normalization under which a
/// constant-modulus error field on `[-π, π]` has `L² = √(2π) · L^∞`.
pub fn error_norms(numeric: &GridFunction, exact: &GridFunction) -> Result<(f64, f64)> {
    let diff = numeric.sub(exact)?;
    let linf = grid::norm_linf(&diff);
    let length = numeric.spec().b() - numeric.spec().a();
    let l2 = length.sqrt() * grid::norm_l2(&diff);
    Ok((linf, l2))
}
