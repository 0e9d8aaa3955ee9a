//! Binary-level checks: subcommands, exit codes, CSV determinism, snapshot
//! emission, custom initial data ingestion.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fnls"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fnls-cli-test-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn run_to_completion(mut cmd: Command) -> Output {
    cmd.output().expect("binary spawns")
}

const PI_STR: &str = "3.141592653589793";

fn conservation_config(output: &Path, stride: usize) -> String {
    format!(
        "experiment = conservation\n\
         problem = plane_wave\n\
         alpha = 1.7\n\
         beta = -2\n\
         domain_a = -{PI_STR}\n\
         domain_b = {PI_STR}\n\
         N = 32\n\
         tau = 0.05\n\
         T = 2\n\
         A = 1\n\
         lambda = 4\n\
         snapshot_stride = {stride}\n\
         output = {}\n",
        output.display()
    )
}

#[test]
fn conservation_run_is_byte_deterministic() {
    let dir = tmp_dir("determinism");
    let out1 = dir.join("a.csv");
    let out2 = dir.join("b.csv");
    for (name, out) in [("c1.cfg", &out1), ("c2.cfg", &out2)] {
        let cfg = write_config(&dir, name, &conservation_config(out, 0));
        let result = run_to_completion({
            let mut c = bin();
            c.args(["conservation", "--config", cfg.to_str().unwrap()]);
            c
        });
        assert!(result.status.success(), "{result:?}");
    }
    let a = fs::read(&out1).unwrap();
    let b = fs::read(&out2).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "identical configs must produce identical bytes");

    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "step,time,mass,energy,rel_mass_drift,rel_energy_drift,rel_mass_drift_paper_norm,fp_iters"
    );
    assert_eq!(text.lines().count(), 42); // header + 41 records
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 8);
        for value in &fields[4..7] {
            let drift: f64 = value.parse().unwrap();
            assert!(drift.is_finite() && drift >= 0.0);
        }
    }
}

#[test]
fn snapshots_are_emitted_at_the_stride() {
    let dir = tmp_dir("snapshots");
    let out = dir.join("run.csv");
    let cfg = write_config(&dir, "snap.cfg", &conservation_config(&out, 10));
    let result = run_to_completion({
        let mut c = bin();
        c.args(["conservation", "--config", cfg.to_str().unwrap()]);
        c
    });
    assert!(result.status.success(), "{result:?}");

    // 40 steps, stride 10: snapshots at 0, 10, 20, 30, 40.
    for step in [0usize, 10, 20, 30, 40] {
        let snap = dir.join(format!("run_snapshot_{step:06}.csv"));
        let text = fs::read_to_string(&snap).unwrap_or_else(|_| panic!("missing {snap:?}"));
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "x,abs_u");
        assert_eq!(lines.count(), 32);
    }
    assert!(!dir.join("run_snapshot_000005.csv").exists());
}

#[test]
fn convergence_time_emits_chained_orders() {
    let dir = tmp_dir("convtime");
    let out = dir.join("table.csv");
    let cfg = write_config(
        &dir,
        "conv.cfg",
        &format!(
            "problem = plane_wave\n\
             alpha = 2\n\
             beta = -2\n\
             domain_a = -{PI_STR}\n\
             domain_b = {PI_STR}\n\
             N = 64\n\
             T = 1\n\
             A = 1\n\
             lambda = 4\n\
             sweep_tau = 0.05, 0.025, 0.0125\n\
             output = {}\n",
            out.display()
        ),
    );
    let result = run_to_completion({
        let mut c = bin();
        c.args(["convergence-time", "--config", cfg.to_str().unwrap()]);
        c
    });
    assert!(result.status.success(), "{result:?}");

    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "alpha,tau,N,linf_err,l2_err,order_linf,order_l2");
    assert_eq!(lines.len(), 4);
    // k rows carry exactly k-1 order entries; the first row's cells are empty.
    assert!(lines[1].ends_with(",,"));
    for line in &lines[2..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 7);
        let order: f64 = fields[5].parse().unwrap();
        assert!((order - 2.0).abs() < 0.2, "{order}");
    }
}

#[test]
fn custom_initial_data_round_trips() {
    let dir = tmp_dir("custom");
    let out = dir.join("zero.csv");
    // Zero field: every drift column must be exactly zero (0/0 guard).
    let data = "0,0\n".repeat(16);
    let data_path = dir.join("init.csv");
    fs::write(&data_path, data).unwrap();
    let cfg = write_config(
        &dir,
        "custom.cfg",
        &format!(
            "experiment = run\n\
             problem = custom\n\
             initial_data = {}\n\
             alpha = 1.5\n\
             beta = 1\n\
             domain_a = -{PI_STR}\n\
             domain_b = {PI_STR}\n\
             N = 16\n\
             tau = 0.1\n\
             T = 1\n\
             output = {}\n",
            data_path.display(),
            out.display()
        ),
    );
    let result = run_to_completion({
        let mut c = bin();
        c.args(["run", "--config", cfg.to_str().unwrap()]);
        c
    });
    assert!(result.status.success(), "{result:?}");
    let text = fs::read_to_string(&out).unwrap();
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        for value in &fields[2..7] {
            assert_eq!(value.parse::<f64>().unwrap(), 0.0);
        }
    }
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = tmp_dir("exitcodes");

    // Missing config file: 1.
    let missing = run_to_completion({
        let mut c = bin();
        c.args(["run", "--config", dir.join("nope.cfg").to_str().unwrap()]);
        c
    });
    assert_eq!(missing.status.code(), Some(1));

    // Bad key: 1.
    let bad = write_config(&dir, "bad.cfg", "nonsense = 1\n");
    let bad_run = run_to_completion({
        let mut c = bin();
        c.args(["run", "--config", bad.to_str().unwrap()]);
        c
    });
    assert_eq!(bad_run.status.code(), Some(1));

    // Unknown subcommand / missing --config: 1.
    let unknown = run_to_completion({
        let mut c = bin();
        c.arg("frobnicate");
        c
    });
    assert_eq!(unknown.status.code(), Some(1));

    // Solver non-convergence: 2.
    let out = dir.join("nc.csv");
    let nc_cfg = write_config(
        &dir,
        "nc.cfg",
        &format!("{}fp_max_iters = 1\n", conservation_config(&out, 0)),
    );
    let nc = run_to_completion({
        let mut c = bin();
        c.args(["conservation", "--config", nc_cfg.to_str().unwrap()]);
        c
    });
    assert_eq!(nc.status.code(), Some(2), "{nc:?}");
    let stderr = String::from_utf8_lossy(&nc.stderr);
    assert!(stderr.contains("did not converge"), "{stderr}");
}

#[test]
fn oracle_verify_passes_and_reports() {
    let dir = tmp_dir("oracle");
    let out = dir.join("report.csv");
    let cfg = write_config(&dir, "oracle.cfg", &format!("output = {}\n", out.display()));
    let result = run_to_completion({
        let mut c = bin();
        c.args(["oracle-verify", "--config", cfg.to_str().unwrap()]);
        c
    });
    assert!(result.status.success(), "{result:?}");
    let stdout = String::from_utf8_lossy(&result.stdout);
    assert!(stdout.contains("overall: PASS"), "{stdout}");
    let report = fs::read_to_string(&out).unwrap();
    assert!(report.contains("fractional_laplacian"));
    assert!(report.contains("overall: PASS"));
}

#[test]
fn long_flag_is_rejected_outside_convergence_space() {
    let dir = tmp_dir("longflag");
    let out = dir.join("out.csv");
    let cfg = write_config(&dir, "c.cfg", &conservation_config(&out, 0));
    let result = run_to_completion({
        let mut c = bin();
        c.args(["conservation", "--config", cfg.to_str().unwrap(), "--long"]);
        c
    });
    assert_eq!(result.status.code(), Some(1));
}
