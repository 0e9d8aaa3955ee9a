//! Fast-path vs naive-path verification battery.
//!
//! Every transform-dependent quantity is evaluated twice — once through the
//! FFT pipeline, once by the O(N²) reference sums — on seeded random fields
//! over two domains (one with a ≠ 0 to exercise the phase convention). The
//! battery passes when every discrepancy stays at most `threshold`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use fnls::fractional::{self, FractionalSymbol};
use fnls::grid::{self, GridFunction, GridSpec, SpectrumFunction};
use fnls::reference;
use fnls::rng::{random_grid_function, SplitMix64};

pub const DEFAULT_THRESHOLD: f64 = 1e-12;
pub const BATTERY_SIZES: [usize; 4] = [8, 16, 32, 64];
pub const BATTERY_ALPHAS: [f64; 4] = [1.1, 1.4, 1.7, 2.0];

#[derive(Debug, Clone)]
pub struct OracleEntry {
    pub check: String,
    pub n: usize,
    pub max_error: f64,
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub threshold: f64,
    pub entries: Vec<OracleEntry>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.max_error <= self.threshold)
    }

    pub fn max_discrepancy(&self) -> f64 {
        self.entries.iter().map(|e| e.max_error).fold(0.0, f64::max)
    }

    /// Entry with the largest discrepancy — the located failure when the
    /// battery does not pass.
    pub fn worst(&self) -> Option<&OracleEntry> {
        self.entries
            .iter()
            .max_by(|a, b| a.max_error.total_cmp(&b.max_error))
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "check,N,max_abs_error,pass");
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                e.check,
                e.n,
                crate::csvout::fmt_float(e.max_error),
                e.max_error <= self.threshold
            );
        }
        let _ = writeln!(
            out,
            "# overall: {} (max discrepancy {:.3e}, threshold {:.1e})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.max_discrepancy(),
            self.threshold
        );
        out
    }
}

fn max_coeff_diff(a: &SpectrumFunction, b: &SpectrumFunction) -> f64 {
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Run the full battery with a fixed seed.
pub fn verify_battery(seed: u64, threshold: f64) -> OracleReport {
    let mut rng = SplitMix64::new(seed);
    let mut entries = Vec::new();

    for n in BATTERY_SIZES {
        let domains = [
            GridSpec::new(-PI, PI, n).expect("valid grid"),
            GridSpec::new(0.0, 2.0 * PI, n).expect("valid grid"),
        ];
        for (which, spec) in domains.into_iter().enumerate() {
            let tag = if which == 0 { "sym" } else { "off" };
            let u = random_grid_function(spec, &mut rng);

            let fast_fwd = grid::forward_dft(&u);
            let naive_fwd = reference::naive_forward_dft(&u);
            entries.push(OracleEntry {
                check: format!("forward_dft[{tag}]"),
                n,
                max_error: max_coeff_diff(&fast_fwd, &naive_fwd),
            });

            let back_fast = grid::inverse_dft(&fast_fwd);
            let back_naive = reference::naive_inverse_dft(&fast_fwd);
            entries.push(OracleEntry {
                check: format!("inverse_dft[{tag}]"),
                n,
                max_error: back_fast
                    .max_abs_diff(&back_naive)
                    .expect("same grid by construction"),
            });

            for alpha in BATTERY_ALPHAS {
                let sym = FractionalSymbol::new(spec, alpha).expect("valid symbol");
                let fast = sym.apply(&u).expect("matching grids");
                let naive = reference::naive_fractional_laplacian(&sym, &u);
                entries.push(OracleEntry {
                    check: format!("fractional_laplacian[{tag},alpha={alpha}]"),
                    n,
                    max_error: fast.max_abs_diff(&naive).expect("same grid"),
                });

                let semi_fast =
                    fractional::seminorm_sobolev(&u, alpha / 2.0).expect("sigma in range");
                let semi_naive = reference::naive_seminorm_sobolev(&u, alpha / 2.0);
                entries.push(OracleEntry {
                    check: format!("seminorm_sobolev[{tag},alpha={alpha}]"),
                    n,
                    max_error: (semi_fast - semi_naive).abs(),
                });
            }

            // Nodal norms against literal re-summation.
            let direct_l2 =
                (u.values().iter().map(|z| z.norm_sqr()).sum::<f64>() / n as f64).sqrt();
            entries.push(OracleEntry {
                check: format!("norm_l2[{tag}]"),
                n,
                max_error: (grid::norm_l2(&u) - direct_l2).abs(),
            });
            let direct_l4 =
                (u.values().iter().map(|z| z.norm().powi(4)).sum::<f64>() / n as f64).powf(0.25);
            entries.push(OracleEntry {
                check: format!("norm_l4[{tag}]"),
                n,
                max_error: (grid::norm_lp(&u, 4.0).expect("p = 4") - direct_l4).abs(),
            });
        }
    }

    OracleReport { threshold, entries }
}

/// Max discrepancy between an operator evaluation with the given multipliers
/// (fast transforms) and the naive evaluation of the true symbol. Fault
/// injection hands in a corrupted multiplier array to confirm the battery
/// localizes it.
pub fn operator_discrepancy_with_multipliers(
    sym: &FractionalSymbol,
    multipliers: &[f64],
    u: &GridFunction,
) -> f64 {
    let mut s = grid::forward_dft(u);
    for (c, d) in s.coeffs_mut().iter_mut().zip(multipliers) {
        *c *= *d;
    }
    let fast = grid::inverse_dft(&s);
    let naive = reference::naive_fractional_laplacian(sym, u);
    fast.max_abs_diff(&naive).expect("same grid")
}
