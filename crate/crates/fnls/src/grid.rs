//! Periodic grid, discrete Fourier transform pair, and discrete norms.
//!
//! The grid covers `Ω = [a, b)` with `N` equispaced nodes `x_j = a + j h`,
//! `h = (b - a)/N`, and fundamental wavenumber `μ = 2π/(b - a)`. The transform
//! pair is the trigonometric interpolation pair
//!
//! ```text
//!     û_k = (1/N) Σ_j u_j e^{-i k μ x_j},      k = -N/2, …, N/2 - 1,
//!     u_j = Σ_k û_k e^{i k μ x_j},
//! ```
//!
//! and the discrete inner product is `(u, v)_h = (1/N) Σ_j u_j conj(v_j)`, so
//! Parseval reads `(u, v)_h = Σ_k û_k conj(v̂_k)` with no extra constants.
//!
//! Coefficients are stored in natural k-order: slot `i` holds wavenumber
//! `k = i - N/2`. The fast path delegates to an FFT working in index space
//! (`e^{-2πi jk/N}`, wavenumber slot `k mod N`); the bijection between the two
//! layouts is `backend index m = (k + N) mod N`, and the physical-node phase
//! is restored by multiplying coefficient `k` with `e^{∓ i k μ a}`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::reference;

/// Which evaluation route transforms take: the FFT-backed fast path or the
/// naive O(N²) summation kept as an independent verification oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DftPath {
    #[default]
    Fast,
    Reference,
}

/// Uniform periodic grid on `[a, b)` with an even number of nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    a: f64,
    b: f64,
    n: usize,
}

impl GridSpec {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || b <= a {
            return Err(Error::InvalidParameter(format!(
                "domain endpoints must be finite with b > a, got [{a}, {b}]"
            )));
        }
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "node count must be an even integer >= 4, got {n}"
            )));
        }
        Ok(Self { a, b, n })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Node count N.
    pub fn len(&self) -> usize {
        self.n
    }

    /// Never empty: construction requires N ≥ 4.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Node spacing `h = (b - a)/N`.
    pub fn h(&self) -> f64 {
        (self.b - self.a) / self.n as f64
    }

    /// Fundamental wavenumber `μ = 2π/(b - a)`.
    pub fn mu(&self) -> f64 {
        2.0 * PI / (self.b - self.a)
    }

    /// Node `x_j = a + j h`.
    pub fn node(&self, j: usize) -> f64 {
        self.a + j as f64 * self.h()
    }

    /// All nodes in index order.
    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.node(j)).collect()
    }

    /// Wavenumbers in natural order `-N/2, …, N/2 - 1`.
    pub fn wavenumbers(&self) -> impl Iterator<Item = i64> + '_ {
        let half = self.n as i64 / 2;
        -half..half
    }

    /// Natural-order slot of wavenumber `k`.
    pub fn slot_of(&self, k: i64) -> Option<usize> {
        let half = self.n as i64 / 2;
        if (-half..half).contains(&k) {
            Some((k + half) as usize)
        } else {
            None
        }
    }

    fn check_same(&self, other: &GridSpec, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!(
                "{what}: [{}, {}] N={} vs [{}, {}] N={}",
                self.a, self.b, self.n, other.a, other.b, other.n
            )))
        }
    }
}

/// Complex samples of a field at the grid nodes, immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    spec: GridSpec,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn from_values(spec: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(Error::GridMismatch(format!(
                "value vector has length {} but the grid has {} nodes",
                values.len(),
                spec.len()
            )));
        }
        if values
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidParameter(
                "grid function values must be finite".into(),
            ));
        }
        Ok(Self { spec, values })
    }

    /// Samples `f(x_j)` at every node.
    pub fn from_fn(spec: GridSpec, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = (0..spec.len()).map(|j| f(spec.node(j))).collect();
        Self::from_values(spec, values)
    }

    pub fn zeros(spec: GridSpec) -> Self {
        Self {
            values: vec![Complex64::default(); spec.len()],
            spec,
        }
    }

    /// In-crate constructor for solver internals: skips the finiteness scan so
    /// a diverging fixed-point iterate surfaces as non-convergence, not as a
    /// validation error. Callers guarantee the length.
    pub(crate) fn from_values_unchecked(spec: GridSpec, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), spec.len());
        Self { spec, values }
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Pointwise difference on a shared grid.
    pub fn sub(&self, other: &GridFunction) -> Result<GridFunction> {
        self.spec
            .check_same(&other.spec, "difference of grid functions")?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| x - y)
            .collect();
        Ok(GridFunction {
            spec: self.spec,
            values,
        })
    }

    /// Max-norm distance, usable across iterates without allocating.
    pub fn max_abs_diff(&self, other: &GridFunction) -> Result<f64> {
        self.spec
            .check_same(&other.spec, "distance of grid functions")?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }
}

/// Fourier coefficients in natural k-order: slot `i` holds `k = i - N/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumFunction {
    spec: GridSpec,
    coeffs: Vec<Complex64>,
}

impl SpectrumFunction {
    pub fn from_coeffs(spec: GridSpec, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != spec.len() {
            return Err(Error::GridMismatch(format!(
                "coefficient vector has length {} but the grid has {} modes",
                coeffs.len(),
                spec.len()
            )));
        }
        Ok(Self { spec, coeffs })
    }

    pub fn zeros(spec: GridSpec) -> Self {
        Self {
            coeffs: vec![Complex64::default(); spec.len()],
            spec,
        }
    }

    pub(crate) fn from_coeffs_unchecked(spec: GridSpec, coeffs: Vec<Complex64>) -> Self {
        debug_assert_eq!(coeffs.len(), spec.len());
        Self { spec, coeffs }
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    /// Coefficients in natural k-order.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    /// Coefficient of wavenumber `k`, zero outside the stored range.
    pub fn coeff(&self, k: i64) -> Complex64 {
        match self.spec.slot_of(k) {
            Some(i) => self.coeffs[i],
            None => Complex64::default(),
        }
    }
}

// Keyed by (length, is_forward); plans are per-thread, so callers can share
// grid values across threads freely.
type PlanCache = HashMap<(usize, bool), Arc<dyn Fft<f64>>>;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
    static PLAN_CACHE: RefCell<PlanCache> = RefCell::new(HashMap::new());
}

fn plan(n: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    PLAN_CACHE.with(|cache| {
        cache
            .borrow_mut()
            .entry((n, forward))
            .or_insert_with(|| {
                PLANNER.with(|p| {
                    let mut p = p.borrow_mut();
                    if forward {
                        p.plan_fft_forward(n)
                    } else {
                        p.plan_fft_inverse(n)
                    }
                })
            })
            .clone()
    })
}

/// Forward transform `û_k = (1/N) Σ_j u_j e^{-i k μ x_j}` via FFT.
pub fn forward_dft(u: &GridFunction) -> SpectrumFunction {
    forward_dft_via(DftPath::Fast, u)
}

/// Inverse transform `u_j = Σ_k û_k e^{i k μ x_j}` via FFT.
pub fn inverse_dft(s: &SpectrumFunction) -> GridFunction {
    inverse_dft_via(DftPath::Fast, s)
}

pub fn forward_dft_via(path: DftPath, u: &GridFunction) -> SpectrumFunction {
    match path {
        DftPath::Fast => fast_forward(u),
        DftPath::Reference => reference::naive_forward_dft(u),
    }
}

pub fn inverse_dft_via(path: DftPath, s: &SpectrumFunction) -> GridFunction {
    match path {
        DftPath::Fast => fast_inverse(s),
        DftPath::Reference => reference::naive_inverse_dft(s),
    }
}

fn fast_forward(u: &GridFunction) -> SpectrumFunction {
    let spec = *u.spec();
    let n = spec.len();
    let half = n / 2;
    let mut buf = u.values().to_vec();
    plan(n, true).process(&mut buf);

    let scale = 1.0 / n as f64;
    let mu_a = spec.mu() * spec.a();
    let mut coeffs = vec![Complex64::default(); n];
    for (i, k) in spec.wavenumbers().enumerate() {
        let m = (i + half) % n; // backend slot of wavenumber k
                                // e^{-i k μ a} restores the physical-node phase of Ω = [a, b).
        let phase = Complex64::from_polar(1.0, -(k as f64) * mu_a);
        coeffs[i] = buf[m] * scale * phase;
    }
    SpectrumFunction { spec, coeffs }
}

fn fast_inverse(s: &SpectrumFunction) -> GridFunction {
    let spec = *s.spec();
    let n = spec.len();
    let half = n / 2;
    let mu_a = spec.mu() * spec.a();
    let mut buf = vec![Complex64::default(); n];
    for (i, k) in spec.wavenumbers().enumerate() {
        let m = (i + half) % n;
        let phase = Complex64::from_polar(1.0, (k as f64) * mu_a);
        buf[m] = s.coeffs[i] * phase;
    }
    plan(n, false).process(&mut buf);
    GridFunction { spec, values: buf }
}

/// Discrete inner product `(u, v)_h = (1/N) Σ_j u_j conj(v_j)`.
pub fn inner_product(u: &GridFunction, v: &GridFunction) -> Result<Complex64> {
    u.spec.check_same(&v.spec, "inner product")?;
    let sum: Complex64 = u
        .values
        .iter()
        .zip(&v.values)
        .map(|(x, y)| x * y.conj())
        .sum();
    Ok(sum / u.spec.len() as f64)
}

/// `‖u‖_h = ((1/N) Σ_j |u_j|²)^{1/2}`.
pub fn norm_l2(u: &GridFunction) -> f64 {
    let sum: f64 = u.values.iter().map(|z| z.norm_sqr()).sum();
    (sum / u.spec.len() as f64).sqrt()
}

/// `‖u‖_{l^p_h} = ((1/N) Σ_j |u_j|^p)^{1/p}` for finite `p ≥ 1`.
pub fn norm_lp(u: &GridFunction, p: f64) -> Result<f64> {
    if !p.is_finite() || p < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "l^p norm requires finite p >= 1, got {p}"
        )));
    }
    let sum: f64 = u.values.iter().map(|z| z.norm().powf(p)).sum();
    Ok((sum / u.spec.len() as f64).powf(1.0 / p))
}

/// `‖u‖_∞ = max_j |u_j|`.
pub fn norm_linf(u: &GridFunction) -> f64 {
    u.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
