//! Flat `key = value` configuration files.
//!
//! One assignment per line; blank lines and `#` comments are skipped; lists
//! are comma-separated. Recognized keys:
//!
//! ```text
//! experiment      run | convergence_time | convergence_space | conservation | oracle_verify
//! problem         plane_wave | soliton | custom
//! alpha, beta     equation parameters (α ∈ (1, 2], β real)
//! domain_a, domain_b, N
//! tau, T          time step and horizon
//! A, lambda       plane-wave amplitude and integer mode
//! initial_data    node-ordered `re,im` file for problem = custom
//! fp_tolerance, fp_max_iters
//! sweep_tau       τ list for convergence_time (scalar tau must be absent)
//! sweep_N         N list for convergence_space (scalar N must be absent)
//! output          CSV destination path
//! oracle_mode     route all transforms through the O(N²) reference path
//! snapshot_stride emit |u| snapshots every this many steps (0 = never)
//! ```
//!
//! The subcommand selects the experiment; a config `experiment` key, when
//! present, must agree with it. Unknown and duplicate keys are rejected so a
//! config file reads back exactly as it ran.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use fnls::grid::{DftPath, GridSpec};
use fnls::problems::Problem;
use fnls::scheme::SchemeParams;

use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Run,
    ConvergenceTime,
    ConvergenceSpace,
    Conservation,
    OracleVerify,
}

impl ExperimentKind {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "run" => Ok(Self::Run),
            "convergence_time" => Ok(Self::ConvergenceTime),
            "convergence_space" => Ok(Self::ConvergenceSpace),
            "conservation" => Ok(Self::Conservation),
            "oracle_verify" => Ok(Self::OracleVerify),
            other => Err(CliError::Config(format!("unknown experiment '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    PlaneWave,
    Soliton,
    Custom,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub problem: ProblemKind,
    pub alpha: f64,
    pub beta: f64,
    pub domain_a: f64,
    pub domain_b: f64,
    pub n: Option<usize>,
    pub tau: Option<f64>,
    pub t_final: f64,
    pub amplitude: f64,
    pub lambda: i64,
    pub initial_data: Option<PathBuf>,
    pub fp_tolerance: f64,
    pub fp_max_iters: usize,
    pub sweep_tau: Vec<f64>,
    pub sweep_n: Vec<usize>,
    pub output: Option<PathBuf>,
    pub oracle_mode: bool,
    pub snapshot_stride: usize,
}

const KNOWN_KEYS: &[&str] = &[
    "experiment",
    "problem",
    "alpha",
    "beta",
    "domain_a",
    "domain_b",
    "N",
    "tau",
    "T",
    "A",
    "lambda",
    "initial_data",
    "fp_tolerance",
    "fp_max_iters",
    "sweep_tau",
    "sweep_N",
    "output",
    "oracle_mode",
    "snapshot_stride",
];

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn parse_pairs(text: &str) -> Result<HashMap<String, String>> {
    let mut pairs = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| bad(format!("line {}: expected 'key = value'", lineno + 1)))?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(bad(format!("line {}: unknown key '{key}'", lineno + 1)));
        }
        if pairs.insert(key.clone(), value).is_some() {
            return Err(bad(format!("line {}: duplicate key '{key}'", lineno + 1)));
        }
    }
    Ok(pairs)
}

fn take_f64(pairs: &HashMap<String, String>, key: &str) -> Result<Option<f64>> {
    pairs
        .get(key)
        .map(|v| {
            v.parse::<f64>()
                .map_err(|_| bad(format!("key '{key}': '{v}' is not a number")))
        })
        .transpose()
}

fn take_usize(pairs: &HashMap<String, String>, key: &str) -> Result<Option<usize>> {
    pairs
        .get(key)
        .map(|v| {
            v.parse::<usize>()
                .map_err(|_| bad(format!("key '{key}': '{v}' is not a nonnegative integer")))
        })
        .transpose()
}

fn take_list_f64(pairs: &HashMap<String, String>, key: &str) -> Result<Vec<f64>> {
    match pairs.get(key) {
        None => Ok(Vec::new()),
        Some(v) => v
            .split(',')
            .map(|item| {
                let item = item.trim();
                item.parse::<f64>()
                    .map_err(|_| bad(format!("key '{key}': '{item}' is not a number")))
            })
            .collect(),
    }
}

fn take_list_usize(pairs: &HashMap<String, String>, key: &str) -> Result<Vec<usize>> {
    match pairs.get(key) {
        None => Ok(Vec::new()),
        Some(v) => v
            .split(',')
            .map(|item| {
                let item = item.trim();
                item.parse::<usize>()
                    .map_err(|_| bad(format!("key '{key}': '{item}' is not an integer")))
            })
            .collect(),
    }
}

fn strictly_monotone<T: PartialOrd>(xs: &[T]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1]) || xs.windows(2).all(|w| w[0] > w[1])
}

/// `T/τ` rounded to the nearest integer, provided it is integral to 1e-9.
pub fn steps_for(t_final: f64, tau: f64) -> Result<usize> {
    if !(tau.is_finite() && t_final.is_finite()) || tau <= 0.0 || t_final <= 0.0 {
        return Err(bad(format!(
            "time parameters must be positive: tau = {tau}, T = {t_final}"
        )));
    }
    let q = t_final / tau;
    if (q - q.round()).abs() > 1e-9 {
        return Err(bad(format!(
            "T/tau = {q} is not integral to within 1e-9 (tau = {tau}, T = {t_final})"
        )));
    }
    Ok(q.round() as usize)
}

impl ExperimentConfig {
    pub fn from_str(text: &str, experiment: ExperimentKind) -> Result<Self> {
        let pairs = parse_pairs(text)?;

        if let Some(name) = pairs.get("experiment") {
            let declared = ExperimentKind::parse(name)?;
            if declared != experiment {
                return Err(bad(format!(
                    "config declares experiment '{name}' but the subcommand selects another"
                )));
            }
        }

        let problem = match pairs.get("problem").map(String::as_str) {
            Some("plane_wave") => ProblemKind::PlaneWave,
            Some("soliton") => ProblemKind::Soliton,
            Some("custom") => ProblemKind::Custom,
            Some(other) => return Err(bad(format!("unknown problem '{other}'"))),
            None if experiment == ExperimentKind::OracleVerify => ProblemKind::PlaneWave,
            None => return Err(bad("missing key 'problem'")),
        };

        let oracle_mode = match pairs.get("oracle_mode").map(String::as_str) {
            None => false,
            Some("true") => true,
            Some("false") => false,
            Some(other) => {
                return Err(bad(format!(
                    "oracle_mode must be true/false, got '{other}'"
                )))
            }
        };

        let needs_dynamics = experiment != ExperimentKind::OracleVerify;
        let require_f64 = |key: &str| -> Result<f64> {
            take_f64(&pairs, key)?.ok_or_else(|| bad(format!("missing key '{key}'")))
        };

        let config = ExperimentConfig {
            experiment,
            problem,
            alpha: if needs_dynamics {
                require_f64("alpha")?
            } else {
                take_f64(&pairs, "alpha")?.unwrap_or(1.5)
            },
            beta: if needs_dynamics {
                require_f64("beta")?
            } else {
                take_f64(&pairs, "beta")?.unwrap_or(0.0)
            },
            domain_a: if needs_dynamics {
                require_f64("domain_a")?
            } else {
                take_f64(&pairs, "domain_a")?.unwrap_or(0.0)
            },
            domain_b: if needs_dynamics {
                require_f64("domain_b")?
            } else {
                take_f64(&pairs, "domain_b")?.unwrap_or(1.0)
            },
            n: take_usize(&pairs, "N")?,
            tau: take_f64(&pairs, "tau")?,
            t_final: if needs_dynamics {
                require_f64("T")?
            } else {
                take_f64(&pairs, "T")?.unwrap_or(1.0)
            },
            amplitude: take_f64(&pairs, "A")?.unwrap_or(1.0),
            lambda: match pairs.get("lambda") {
                Some(v) => v
                    .parse::<i64>()
                    .map_err(|_| bad(format!("key 'lambda': '{v}' is not an integer")))?,
                None => 1,
            },
            initial_data: pairs.get("initial_data").map(PathBuf::from),
            fp_tolerance: take_f64(&pairs, "fp_tolerance")?.unwrap_or(1e-13),
            fp_max_iters: take_usize(&pairs, "fp_max_iters")?.unwrap_or(200),
            sweep_tau: take_list_f64(&pairs, "sweep_tau")?,
            sweep_n: take_list_usize(&pairs, "sweep_N")?,
            output: pairs.get("output").map(PathBuf::from),
            oracle_mode,
            snapshot_stride: take_usize(&pairs, "snapshot_stride")?.unwrap_or(0),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path, experiment: ExperimentKind) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| bad(format!("cannot read config '{}': {e}", path.display())))?;
        Self::from_str(&text, experiment)
    }

    fn validate(&self) -> Result<()> {
        if self.experiment == ExperimentKind::OracleVerify {
            return Ok(());
        }

        if self.problem == ProblemKind::Custom && self.initial_data.is_none() {
            return Err(bad("problem = custom requires key 'initial_data'"));
        }

        match self.experiment {
            ExperimentKind::Run | ExperimentKind::Conservation => {
                if !self.sweep_tau.is_empty() || !self.sweep_n.is_empty() {
                    return Err(bad("sweep keys are only valid for convergence experiments"));
                }
                let tau = self.tau.ok_or_else(|| bad("missing key 'tau'"))?;
                self.n.ok_or_else(|| bad("missing key 'N'"))?;
                steps_for(self.t_final, tau)?;
            }
            ExperimentKind::ConvergenceTime => {
                if self.tau.is_some() {
                    return Err(bad(
                        "convergence_time uses sweep_tau; remove the scalar 'tau' key",
                    ));
                }
                if self.sweep_tau.is_empty() {
                    return Err(bad("convergence_time requires a nonempty 'sweep_tau'"));
                }
                if !strictly_monotone(&self.sweep_tau) {
                    return Err(bad("'sweep_tau' must be strictly monotone"));
                }
                self.n.ok_or_else(|| bad("missing key 'N'"))?;
                for &tau in &self.sweep_tau {
                    steps_for(self.t_final, tau)?;
                }
                if self.problem != ProblemKind::PlaneWave {
                    return Err(bad(
                        "convergence experiments need the plane_wave exact solution",
                    ));
                }
            }
            ExperimentKind::ConvergenceSpace => {
                if self.n.is_some() {
                    return Err(bad(
                        "convergence_space uses sweep_N; remove the scalar 'N' key",
                    ));
                }
                if self.sweep_n.is_empty() {
                    return Err(bad("convergence_space requires a nonempty 'sweep_N'"));
                }
                if !strictly_monotone(&self.sweep_n) {
                    return Err(bad("'sweep_N' must be strictly monotone"));
                }
                let tau = self.tau.ok_or_else(|| bad("missing key 'tau'"))?;
                steps_for(self.t_final, tau)?;
                if self.problem != ProblemKind::PlaneWave {
                    return Err(bad(
                        "convergence experiments need the plane_wave exact solution",
                    ));
                }
            }
            ExperimentKind::OracleVerify => unreachable!(),
        }

        // Grid-level checks for the experiments with a fixed N.
        if let Some(n) = self.n {
            let spec = self.grid_spec_with(n)?;
            if self.problem == ProblemKind::PlaneWave {
                fnls::problems::plane_wave_exact(
                    &spec,
                    0.0,
                    self.amplitude,
                    self.lambda,
                    self.alpha,
                    self.beta,
                )
                .map_err(|e| bad(e.to_string()))?;
            }
        }
        for &n in &self.sweep_n {
            let spec = self.grid_spec_with(n)?;
            fnls::problems::plane_wave_exact(
                &spec,
                0.0,
                self.amplitude,
                self.lambda,
                self.alpha,
                self.beta,
            )
            .map_err(|e| bad(e.to_string()))?;
        }
        Ok(())
    }

    pub fn grid_spec_with(&self, n: usize) -> Result<GridSpec> {
        GridSpec::new(self.domain_a, self.domain_b, n).map_err(|e| bad(e.to_string()))
    }

    pub fn grid_spec(&self) -> Result<GridSpec> {
        let n = self.n.ok_or_else(|| bad("missing key 'N'"))?;
        self.grid_spec_with(n)
    }

    pub fn dft_path(&self) -> DftPath {
        if self.oracle_mode {
            DftPath::Reference
        } else {
            DftPath::Fast
        }
    }

    /// Scheme parameters for a concrete (τ, step count) pair.
    pub fn scheme_params(&self, tau: f64, n_steps: usize) -> Result<SchemeParams> {
        SchemeParams::new(self.alpha, self.beta, tau, n_steps)
            .and_then(|p| p.with_fp_tolerance(self.fp_tolerance))
            .and_then(|p| p.with_fp_max_iters(self.fp_max_iters))
            .map(|p| p.with_dft_path(self.dft_path()))
            .map_err(|e| bad(e.to_string()))
    }

    /// Materialize the configured problem, loading custom data if needed.
    pub fn problem(&self, spec: &GridSpec) -> Result<Problem> {
        match self.problem {
            ProblemKind::PlaneWave => Ok(Problem::PlaneWave {
                amplitude: self.amplitude,
                mode: self.lambda,
            }),
            ProblemKind::Soliton => Ok(Problem::Soliton),
            ProblemKind::Custom => {
                let path = self
                    .initial_data
                    .as_ref()
                    .ok_or_else(|| bad("problem = custom requires key 'initial_data'"))?;
                Ok(Problem::Custom(read_initial_data(path, spec.len())?))
            }
        }
    }
}

/// Node-ordered `re,im` samples, one row per node.
pub fn read_initial_data(path: &Path, n: usize) -> Result<Vec<Complex64>> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        bad(format!(
            "cannot read initial data '{}': {e}",
            path.display()
        ))
    })?;
    let mut values = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (re, im) = line.split_once(',').ok_or_else(|| {
            bad(format!(
                "initial data line {}: expected 're,im'",
                lineno + 1
            ))
        })?;
        let re: f64 = re
            .trim()
            .parse()
            .map_err(|_| bad(format!("initial data line {}: bad real part", lineno + 1)))?;
        let im: f64 = im.trim().parse().map_err(|_| {
            bad(format!(
                "initial data line {}: bad imaginary part",
                lineno + 1
            ))
        })?;
        values.push(Complex64::new(re, im));
    }
    if values.len() != n {
        return Err(bad(format!(
            "initial data has {} rows but the grid has {} nodes",
            values.len(),
            n
        )));
    }
    Ok(values)
}
