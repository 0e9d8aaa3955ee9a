//! Naive O(N²) reference evaluations.
//!
//! Each function here evaluates its defining sum term by term, with no FFT and
//! no layout code shared with the fast path. The sums are compensated and the
//! twiddle phases are reduced modulo the period before calling sin/cos
//! (`k μ x_j = k μ a + 2π jk/N` exactly, since `μ h = 2π/N`); both are exact
//! rewrites, kept so the reference stays trustworthy at the top wavenumbers,
//! where the operator multiplier amplifies every coefficient error by
//! `d_{N/2} = |μN/2|^α`.

use num_complex::Complex64;

use crate::fractional::FractionalSymbol;
use crate::grid::{GridFunction, SpectrumFunction};

/// Kahan-compensated complex accumulator.
#[derive(Default, Clone, Copy)]
struct Kahan {
    sum: Complex64,
    carry: Complex64,
}

impl Kahan {
    fn add(&mut self, term: Complex64) {
        let y = term - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> Complex64 {
        self.sum
    }
}

/// `e^{2πi m/n}` with the index reduced into `[0, n)` first.
fn unit_root(m: i64, n: usize) -> Complex64 {
    let m = m.rem_euclid(n as i64);
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * m as f64 / n as f64)
}

/// `û_k = (1/N) Σ_j u_j e^{-i k μ x_j}` by direct summation.
pub fn naive_forward_dft(u: &GridFunction) -> SpectrumFunction {
    let spec = *u.spec();
    let n = spec.len();
    let mu_a = spec.mu() * spec.a();
    let coeffs = spec
        .wavenumbers()
        .map(|k| {
            let mut acc = Kahan::default();
            for (j, &uj) in u.values().iter().enumerate() {
                acc.add(uj * unit_root(-k * j as i64, n));
            }
            // e^{-i k μ x_j} = e^{-i k μ a} e^{-2πi jk/N}
            acc.value() * Complex64::from_polar(1.0, -(k as f64) * mu_a) / n as f64
        })
        .collect();
    SpectrumFunction::from_coeffs(spec, coeffs).expect("coefficient count matches grid")
}

/// `u_j = Σ_k û_k e^{i k μ x_j}` by direct summation.
pub fn naive_inverse_dft(s: &SpectrumFunction) -> GridFunction {
    let spec = *s.spec();
    let n = spec.len();
    let mu_a = spec.mu() * spec.a();
    let values = (0..n)
        .map(|j| {
            let mut acc = Kahan::default();
            for (k, &ck) in spec.wavenumbers().zip(s.coeffs()) {
                let phase = Complex64::from_polar(1.0, k as f64 * mu_a);
                acc.add(ck * phase * unit_root(k * j as i64, n));
            }
            acc.value()
        })
        .collect();
    GridFunction::from_values(spec, values).expect("value count matches grid")
}

/// Discrete fractional Laplacian by the index-space double sum
/// `(D_α U)_k = Σ_p d_p ((1/N) Σ_j U_j e^{-2πi jp/N}) e^{2πi pk/N}`.
pub fn naive_fractional_laplacian(sym: &FractionalSymbol, u: &GridFunction) -> GridFunction {
    let spec = *u.spec();
    assert_eq!(
        sym.spec(),
        &spec,
        "reference operator requires matching grids"
    );
    let n = spec.len();

    // Inner index-space transform, one coefficient per stored wavenumber.
    let mut inner = Vec::with_capacity(n);
    for p in spec.wavenumbers() {
        let mut acc = Kahan::default();
        for (j, &uj) in u.values().iter().enumerate() {
            acc.add(uj * unit_root(-p * j as i64, n));
        }
        inner.push(acc.value() / n as f64);
    }

    let values = (0..n)
        .map(|node| {
            let mut acc = Kahan::default();
            for ((p, d), c) in spec.wavenumbers().zip(sym.multipliers()).zip(&inner) {
                acc.add(d * c * unit_root(p * node as i64, n));
            }
            acc.value()
        })
        .collect();
    GridFunction::from_values(spec, values).expect("value count matches grid")
}

/// Spectral-side seminorm `(Σ_k |μk|^{2σ} |û_k|²)^{1/2}` with the naive
/// transform, for cross-checking the fast Sobolev norms.
pub fn naive_seminorm_sobolev(u: &GridFunction, sigma: f64) -> f64 {
    let s = naive_forward_dft(u);
    let mu = u.spec().mu();
    let mut acc = 0.0;
    for (k, c) in u.spec().wavenumbers().zip(s.coeffs()) {
        acc += (mu * k.unsigned_abs() as f64).powf(2.0 * sigma) * c.norm_sqr();
    }
    acc.sqrt()
}
