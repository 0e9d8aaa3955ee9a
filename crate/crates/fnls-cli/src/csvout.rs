//! Deterministic CSV emission.
//!
//! Floating-point fields print with 17 significant digits so a value survives
//! a parse round trip bit-exactly; identical configs therefore produce
//! identical bytes.
//!
//! Schemas:
//! - run/conservation: `step,time,mass,energy,rel_mass_drift,rel_energy_drift,rel_mass_drift_paper_norm,fp_iters`
//! - convergence: `alpha,tau,N,linf_err,l2_err,order_linf,order_l2` (empty
//!   cells where a row has no order entry)
//! - snapshots: `x,abs_u`, one file per snapshot named by step index.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use fnls::grid::GridFunction;
use fnls::scheme::{RunObserver, RunRecord};

use crate::experiments::ConvergenceRow;
use crate::Result;

/// 17 significant digits, scientific notation.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub const RUN_HEADER: &str =
    "step,time,mass,energy,rel_mass_drift,rel_energy_drift,rel_mass_drift_paper_norm,fp_iters";

pub const CONVERGENCE_HEADER: &str = "alpha,tau,N,linf_err,l2_err,order_linf,order_l2";

/// Mass drift normalized the way the reference experiments print it: by the
/// initial energy. Defined as 0 whenever the denominator vanishes.
pub fn paper_norm_mass_drift(mass: f64, initial_mass: f64, initial_energy: f64) -> f64 {
    if initial_energy == 0.0 {
        0.0
    } else {
        ((mass - initial_mass) / initial_energy).abs()
    }
}

pub fn write_run_record<W: Write>(
    w: &mut W,
    rec: &RunRecord,
    initial_mass: f64,
    initial_energy: f64,
) -> io::Result<()> {
    writeln!(
        w,
        "{},{},{},{},{},{},{},{}",
        rec.step_index,
        fmt_float(rec.time),
        fmt_float(rec.mass),
        fmt_float(rec.energy),
        fmt_float(rec.rel_mass_drift),
        fmt_float(rec.rel_energy_drift),
        fmt_float(paper_norm_mass_drift(
            rec.mass,
            initial_mass,
            initial_energy
        )),
        rec.fp_iters_used,
    )
}

pub fn write_convergence_rows<W: Write>(w: &mut W, rows: &[ConvergenceRow]) -> io::Result<()> {
    writeln!(w, "{CONVERGENCE_HEADER}")?;
    for row in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            fmt_float(row.alpha),
            fmt_float(row.tau),
            row.n,
            fmt_float(row.linf_err),
            fmt_float(row.l2_err),
            row.order_linf.map(fmt_float).unwrap_or_default(),
            row.order_l2.map(fmt_float).unwrap_or_default(),
        )?;
    }
    Ok(())
}

/// Streams records as CSV rows the moment they arrive and mirrors field
/// snapshots into per-step files next to the main output.
pub struct CsvStreamObserver<W: Write> {
    sink: W,
    snapshot_dir: PathBuf,
    snapshot_stem: String,
    initial: Option<(f64, f64)>,
    pub io_error: Option<io::Error>,
}

impl<W: Write> CsvStreamObserver<W> {
    pub fn new(mut sink: W, output_path: &Path) -> io::Result<Self> {
        writeln!(sink, "{RUN_HEADER}")?;
        let snapshot_dir = output_path
            .parent()
            .filter(|p| !p.as_os_str().is_empty())
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from("."));
        let snapshot_stem = output_path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "run".into());
        Ok(Self {
            sink,
            snapshot_dir,
            snapshot_stem,
            initial: None,
            io_error: None,
        })
    }

    pub fn snapshot_path(&self, step: usize) -> PathBuf {
        self.snapshot_dir
            .join(format!("{}_snapshot_{step:06}.csv", self.snapshot_stem))
    }

    fn record(&mut self, rec: &RunRecord) -> io::Result<()> {
        let (m0, e0) = *self.initial.get_or_insert((rec.mass, rec.energy));
        write_run_record(&mut self.sink, rec, m0, e0)
    }

    fn snapshot(&mut self, step: usize, field: &GridFunction) -> io::Result<()> {
        let mut file = io::BufWriter::new(fs::File::create(self.snapshot_path(step))?);
        writeln!(file, "x,abs_u")?;
        for (j, z) in field.values().iter().enumerate() {
            writeln!(
                file,
                "{},{}",
                fmt_float(field.spec().node(j)),
                fmt_float(z.norm())
            )?;
        }
        file.flush()
    }
}

impl<W: Write> RunObserver for CsvStreamObserver<W> {
    fn on_record(&mut self, record: &RunRecord) {
        if self.io_error.is_none() {
            if let Err(e) = self.record(record) {
                self.io_error = Some(e);
            }
        }
    }

    fn on_state(&mut self, step_index: usize, _time: f64, field: &GridFunction) {
        if self.io_error.is_none() {
            if let Err(e) = self.snapshot(step_index, field) {
                self.io_error = Some(e);
            }
        }
    }
}

/// Write convergence rows to a file, creating parent directories.
pub fn save_convergence_csv(path: &Path, rows: &[ConvergenceRow]) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    let mut file = io::BufWriter::new(fs::File::create(path)?);
    write_convergence_rows(&mut file, rows)?;
    file.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_has_17_significant_digits() {
        assert_eq!(fmt_float(0.05), "5.0000000000000003e-2");
        assert_eq!(fmt_float(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_float(0.0), "0.0000000000000000e0");
        let x = 0.1529;
        let parsed: f64 = fmt_float(x).parse().unwrap();
        assert_eq!(parsed, x);
    }

    #[test]
    fn zero_denominator_guard() {
        assert_eq!(paper_norm_mass_drift(0.0, 0.0, 0.0), 0.0);
        assert!((paper_norm_mass_drift(1.5, 1.0, 2.0) - 0.25).abs() < 1e-15);
    }
}
