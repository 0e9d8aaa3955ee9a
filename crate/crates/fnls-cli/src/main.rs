use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use fnls_cli::config::{ExperimentConfig, ExperimentKind};
use fnls_cli::{csvout, experiments, oracle, CliError};

const USAGE: &str = "\
Usage: fnls <subcommand> --config <path> [--long]

Subcommands:
  run                integrate the configured problem, stream per-step CSV
  conservation       same integration, emphasis on invariant drift columns
  convergence-time   temporal order study over sweep_tau (needs plane_wave)
  convergence-space  spatial accuracy study over sweep_N (needs plane_wave)
  oracle-verify      compare FFT and naive O(N²) paths on a random battery

Options:
  --config <path>    flat key = value experiment description (required)
  --long             convergence-space only: full-scale study
                     (tau = 1e-6, T = 1) instead of the configured desk scale

Exit codes: 0 success, 1 configuration error, 2 solver non-convergence,
3 oracle failure.";

/// Battery seed for `oracle-verify`; fixed so reports are reproducible.
const ORACLE_SEED: u64 = 0x5face;

struct Args {
    kind: ExperimentKind,
    subcommand: String,
    config: PathBuf,
    long: bool,
}

fn parse_args(argv: &[String]) -> Result<Args, String> {
    let mut it = argv.iter();
    let subcommand = it.next().ok_or_else(|| USAGE.to_string())?.clone();
    let kind = match subcommand.as_str() {
        "run" => ExperimentKind::Run,
        "conservation" => ExperimentKind::Conservation,
        "convergence-time" => ExperimentKind::ConvergenceTime,
        "convergence-space" => ExperimentKind::ConvergenceSpace,
        "oracle-verify" => ExperimentKind::OracleVerify,
        "-h" | "--help" | "help" => return Err(USAGE.to_string()),
        other => return Err(format!("unknown subcommand '{other}'\n\n{USAGE}")),
    };

    let mut config = None;
    let mut long = false;
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--config" => {
                let path = it
                    .next()
                    .ok_or_else(|| format!("--config needs a path\n\n{USAGE}"))?;
                config = Some(PathBuf::from(path));
            }
            "--long" => long = true,
            other => return Err(format!("unknown argument '{other}'\n\n{USAGE}")),
        }
    }
    if long && kind != ExperimentKind::ConvergenceSpace {
        return Err("--long is only valid for convergence-space".to_string());
    }
    Ok(Args {
        kind,
        subcommand,
        config: config.ok_or_else(|| format!("missing --config\n\n{USAGE}"))?,
        long,
    })
}

fn create_output(path: &Path) -> Result<BufWriter<fs::File>, CliError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    Ok(BufWriter::new(fs::File::create(path)?))
}

fn require_output(config: &ExperimentConfig) -> Result<PathBuf, CliError> {
    config
        .output
        .clone()
        .ok_or_else(|| CliError::Config("missing key 'output'".into()))
}

fn run_streaming(config: &ExperimentConfig) -> Result<(), CliError> {
    let output = require_output(config)?;
    let sink = create_output(&output)?;
    let mut observer = csvout::CsvStreamObserver::new(sink, &output)?;
    let records = experiments::run_with_observer(config, &mut observer)?;
    if let Some(err) = observer.io_error.take() {
        return Err(CliError::Io(err));
    }
    let last = records
        .last()
        .expect("run emits at least the initial record");
    println!(
        "{} steps to t = {}: rel mass drift {:.3e}, rel energy drift {:.3e} -> {}",
        last.step_index,
        last.time,
        records.iter().map(|r| r.rel_mass_drift).fold(0.0, f64::max),
        records
            .iter()
            .map(|r| r.rel_energy_drift)
            .fold(0.0, f64::max),
        output.display()
    );
    Ok(())
}

fn print_rows(rows: &[experiments::ConvergenceRow]) {
    println!("alpha   tau          N      L_inf         L2            order(L_inf)  order(L2)");
    for r in rows {
        println!(
            "{:<7} {:<12} {:<6} {:<13.6e} {:<13.6e} {:<13} {:<13}",
            r.alpha,
            r.tau,
            r.n,
            r.linf_err,
            r.l2_err,
            r.order_linf
                .map(|o| format!("{o:.4}"))
                .unwrap_or_else(|| "-".into()),
            r.order_l2
                .map(|o| format!("{o:.4}"))
                .unwrap_or_else(|| "-".into()),
        );
    }
}

fn dispatch(args: &Args) -> Result<(), CliError> {
    let config = ExperimentConfig::load(&args.config, args.kind)?;
    match args.kind {
        ExperimentKind::Run | ExperimentKind::Conservation => run_streaming(&config),
        ExperimentKind::ConvergenceTime => {
            let rows = experiments::run_convergence_time(&config)?;
            let output = require_output(&config)?;
            csvout::save_convergence_csv(&output, &rows)?;
            print_rows(&rows);
            println!("-> {}", output.display());
            Ok(())
        }
        ExperimentKind::ConvergenceSpace => {
            let rows = experiments::run_convergence_space(&config, args.long)?;
            let output = require_output(&config)?;
            csvout::save_convergence_csv(&output, &rows)?;
            print_rows(&rows);
            println!("-> {}", output.display());
            Ok(())
        }
        ExperimentKind::OracleVerify => {
            let report = oracle::verify_battery(ORACLE_SEED, oracle::DEFAULT_THRESHOLD);
            print!("{}", report.render());
            if let Some(path) = &config.output {
                let mut sink = create_output(path)?;
                sink.write_all(report.render().as_bytes())?;
                sink.flush()?;
            }
            if report.passed() {
                Ok(())
            } else {
                let worst = report.worst().expect("non-empty battery");
                Err(CliError::Oracle(format!(
                    "max discrepancy {:.3e} in {} at N = {}",
                    worst.max_error, worst.check, worst.n
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let args = match parse_args(&argv) {
        Ok(args) => args,
        Err(msg) => {
            eprintln!("{msg}");
            return ExitCode::from(1);
        }
    };
    match dispatch(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("fnls {}: {err}", args.subcommand);
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
