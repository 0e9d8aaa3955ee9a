//! Browser bindings for the fractional NLS solver.
//!
//! Three interactive operations back the static demo page in `www/`:
//! a steppable soliton simulation with live conservation drift, a temporal
//! convergence study for the plane-wave problem, and the fractional symbol /
//! per-mode phase-defect curves that explain the scheme's behavior.
//!
//! Build with `wasm-pack build crates/fnls-web --target web --out-dir www/pkg`
//! and serve `www/`.

use wasm_bindgen::prelude::*;

use fnls::fractional::FractionalSymbol;
use fnls::grid::{self, GridSpec};
use fnls::problems;
use fnls::scheme::{self, SchemeParams, State};

fn js_err(err: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&err.to_string())
}

/// Soliton propagation on `[-20, 20]`, advanced interactively step by step.
#[wasm_bindgen]
pub struct SolitonSim {
    state: State,
    sym: FractionalSymbol,
    params: SchemeParams,
    initial_mass: f64,
    initial_energy: f64,
    last_fp_iters: usize,
}

impl SolitonSim {
    fn try_new(alpha: f64, n: usize, tau: f64) -> fnls::Result<SolitonSim> {
        let spec = GridSpec::new(-20.0, 20.0, n)?;
        let initial = problems::soliton_initial(&spec)?;
        let sym = FractionalSymbol::new(spec, alpha)?;
        let params = SchemeParams::new(alpha, 1.0, tau, 1)?;
        let initial_mass = scheme::mass(&initial);
        let initial_energy = scheme::energy(&initial, &sym, 1.0)?;
        Ok(SolitonSim {
            state: State::initial(initial),
            sym,
            params,
            initial_mass,
            initial_energy,
            last_fp_iters: 0,
        })
    }
}

#[wasm_bindgen]
impl SolitonSim {
    /// `alpha ∈ (1, 2]`, even `n ≥ 4` grid nodes, time step `tau > 0`.
    #[wasm_bindgen(constructor)]
    pub fn new(alpha: f64, n: usize, tau: f64) -> Result<SolitonSim, JsValue> {
        Self::try_new(alpha, n, tau).map_err(js_err)
    }

    /// Advance `count` steps.
    pub fn step(&mut self, count: usize) -> Result<(), JsValue> {
        for _ in 0..count {
            let (next, iters) = scheme::crank_nicolson_step(&self.state, &self.sym, &self.params)
                .map_err(js_err)?;
            self.state = next;
            self.last_fp_iters = iters;
        }
        Ok(())
    }

    /// `|u(x_j, t)|` at every node.
    pub fn abs_u(&self) -> Vec<f64> {
        self.state
            .field()
            .values()
            .iter()
            .map(|z| z.norm())
            .collect()
    }

    /// Node positions, for the x-axis.
    pub fn nodes(&self) -> Vec<f64> {
        self.state.field().spec().nodes()
    }

    pub fn time(&self) -> f64 {
        self.state.time()
    }

    pub fn step_index(&self) -> usize {
        self.state.step_index()
    }

    pub fn last_fp_iters(&self) -> usize {
        self.last_fp_iters
    }

    pub fn rel_mass_drift(&self) -> f64 {
        let m = scheme::mass(self.state.field());
        if self.initial_mass == 0.0 {
            0.0
        } else {
            ((m - self.initial_mass) / self.initial_mass).abs()
        }
    }

    pub fn rel_energy_drift(&self) -> f64 {
        let e = match scheme::energy(self.state.field(), &self.sym, 1.0) {
            Ok(e) => e,
            Err(_) => return f64::NAN,
        };
        if self.initial_energy == 0.0 {
            0.0
        } else {
            ((e - self.initial_energy) / self.initial_energy).abs()
        }
    }
}

/// Temporal convergence study for the plane wave (λ = 4, A = 1, β = -2 on
/// `[-π, π]`, N = 256): integrates to `t_final` for each τ and returns
/// row-major `[tau, linf_error, order]` triples, with `order = NaN` on the
/// first row.
#[wasm_bindgen]
pub fn plane_wave_temporal_errors(alpha: f64, t_final: f64) -> Result<Vec<f64>, JsValue> {
    let spec = GridSpec::new(-std::f64::consts::PI, std::f64::consts::PI, 256).map_err(js_err)?;
    let sym = FractionalSymbol::new(spec, alpha).map_err(js_err)?;
    let taus = [0.05, 0.025, 0.0125, 0.00625];
    let mut rows = Vec::with_capacity(taus.len() * 3);
    let mut prev: Option<(f64, f64)> = None;
    for tau in taus {
        let n_steps = (t_final / tau).round().max(1.0) as usize;
        let params = SchemeParams::new(alpha, -2.0, tau, n_steps).map_err(js_err)?;
        let mut state = State::initial(
            problems::plane_wave_exact(&spec, 0.0, 1.0, 4, alpha, -2.0).map_err(js_err)?,
        );
        for _ in 0..n_steps {
            let (next, _) = scheme::crank_nicolson_step(&state, &sym, &params).map_err(js_err)?;
            state = next;
        }
        let exact =
            problems::plane_wave_exact(&spec, state.time(), 1.0, 4, alpha, -2.0).map_err(js_err)?;
        let (linf, _) = problems::error_norms(state.field(), &exact).map_err(js_err)?;
        let order = match prev {
            Some((tau_prev, err_prev)) => (err_prev / linf).ln() / (tau_prev / tau).ln(),
            None => f64::NAN,
        };
        rows.extend_from_slice(&[tau, linf, order]);
        prev = Some((tau, linf));
    }
    Ok(rows)
}

/// Multipliers `d_k = |μk|^α` in natural k-order (`k = -n/2 … n/2-1`) on a
/// domain of the given length.
#[wasm_bindgen]
pub fn symbol_multipliers(alpha: f64, n: usize, length: f64) -> Result<Vec<f64>, JsValue> {
    let spec = GridSpec::new(0.0, length, n).map_err(js_err)?;
    let sym = FractionalSymbol::new(spec, alpha).map_err(js_err)?;
    Ok(sym.multipliers().to_vec())
}

/// Per-step phase defect `d_k τ - 2 atan(d_k τ / 2)` of the midpoint rule for
/// every mode, in natural k-order. The defect's τ³ scaling is the visible
/// face of the scheme's second order.
#[wasm_bindgen]
pub fn cayley_phase_defects(
    alpha: f64,
    n: usize,
    length: f64,
    tau: f64,
) -> Result<Vec<f64>, JsValue> {
    let spec = GridSpec::new(0.0, length, n).map_err(js_err)?;
    let sym = FractionalSymbol::new(spec, alpha).map_err(js_err)?;
    Ok(sym
        .multipliers()
        .iter()
        .map(|d| (d * tau - 2.0 * (d * tau / 2.0).atan()).abs())
        .collect())
}

/// Spectral magnitudes `|û_k|` of the current soliton state — used by the
/// demo to show the resolved spectrum.
#[wasm_bindgen]
pub fn spectrum_magnitudes(sim: &SolitonSim) -> Vec<f64> {
    grid::forward_dft(sim.state.field())
        .coeffs()
        .iter()
        .map(|c| c.norm())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn soliton_sim_steps_and_conserves() {
        let mut sim = SolitonSim::new(1.7, 128, 0.02).unwrap();
        sim.step(50).unwrap();
        assert_eq!(sim.step_index(), 50);
        assert!((sim.time() - 1.0).abs() < 1e-12);
        assert!(sim.rel_mass_drift() < 1e-11);
        assert!(sim.rel_energy_drift() < 1e-11);
        assert_eq!(sim.abs_u().len(), 128);
        assert_eq!(spectrum_magnitudes(&sim).len(), 128);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(SolitonSim::try_new(0.9, 128, 0.02).is_err());
        assert!(SolitonSim::try_new(1.7, 7, 0.02).is_err());
        assert!(SolitonSim::try_new(1.7, 128, 0.0).is_err());
    }

    #[test]
    fn temporal_errors_show_second_order() {
        let rows = plane_wave_temporal_errors(2.0, 1.0).unwrap();
        assert_eq!(rows.len(), 12);
        assert!(rows[2].is_nan());
        for row in 1..4 {
            let order = rows[3 * row + 2];
            assert!((1.8..=2.1).contains(&order), "order = {order}");
        }
    }

    #[test]
    fn symbol_and_defect_curves() {
        let d = symbol_multipliers(1.5, 16, 2.0 * std::f64::consts::PI).unwrap();
        assert_eq!(d.len(), 16);
        assert_eq!(d[8], 0.0); // k = 0
        let defects = cayley_phase_defects(1.5, 16, 2.0 * std::f64::consts::PI, 0.05).unwrap();
        assert!(defects.iter().all(|x| *x >= 0.0));
    }
}
