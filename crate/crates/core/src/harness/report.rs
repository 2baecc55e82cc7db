//! CSV and JSON emission.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{HarnessError, RunStats};
use crate::exact::ExactReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    #[default]
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            _ => Err(format!("unknown format {s:?}, expected csv or json")),
        }
    }
}

pub const SUMMARY_HEADER: [&str; 9] = [
    "instance",
    "algorithm",
    "trials",
    "seed",
    "mean_w",
    "ci_lo",
    "ci_hi",
    "opt_w",
    "ratio",
];
pub const FREQUENCY_HEADER: [&str; 4] = ["instance", "algorithm", "element", "frequency"];
pub const EXACT_HEADER: [&str; 4] = ["algorithm", "element", "selection_probability", "in_opt"];

fn opt_cell(x: Option<f64>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

/// One summary row per run.
pub fn write_summary_csv<W: Write>(runs: &[RunStats], out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SUMMARY_HEADER)?;
    for s in runs {
        w.write_record([
            s.instance.clone(),
            s.algorithm.to_string(),
            s.trials.to_string(),
            s.seed.to_string(),
            s.mean_weight.to_string(),
            s.ci_low.to_string(),
            s.ci_high.to_string(),
            s.opt_weight.to_string(),
            opt_cell(s.ratio),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Long format: one row per (run, element).
pub fn write_frequencies_csv<W: Write>(runs: &[RunStats], out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(FREQUENCY_HEADER)?;
    for s in runs {
        for (e, f) in s.frequencies.iter().enumerate() {
            w.write_record([
                s.instance.clone(),
                s.algorithm.to_string(),
                e.to_string(),
                f.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_exact_csv<W: Write>(report: &ExactReport, out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(EXACT_HEADER)?;
    for (e, p) in report.selection_probability.iter().enumerate() {
        let in_opt = report.opt.iter().any(|f| f.index() == e);
        w.write_record([
            report.algorithm.to_string(),
            e.to_string(),
            p.to_string(),
            in_opt.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Sibling path for the long-format frequency table: `out.csv` becomes
/// `out.frequencies.csv`.
pub fn frequencies_path(path: &Path) -> PathBuf {
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    path.with_file_name(format!("{stem}.frequencies.csv"))
}

fn create(path: &Path) -> Result<BufWriter<File>, HarnessError> {
    Ok(BufWriter::new(File::create(path)?))
}

/// Writes run statistics. CSV output also writes the per-element frequency
/// table next to `path`.
pub fn emit_runs(runs: &[RunStats], format: ReportFormat, path: &Path) -> Result<(), HarnessError> {
    match format {
        ReportFormat::Json => {
            let mut w = create(path)?;
            if let [single] = runs {
                serde_json::to_writer_pretty(&mut w, single)?;
            } else {
                serde_json::to_writer_pretty(&mut w, runs)?;
            }
            w.flush()?;
        }
        ReportFormat::Csv => {
            write_summary_csv(runs, create(path)?)?;
            write_frequencies_csv(runs, create(&frequencies_path(path))?)?;
        }
    }
    Ok(())
}

pub fn emit_exact(
    report: &ExactReport,
    format: ReportFormat,
    path: &Path,
) -> Result<(), HarnessError> {
    match format {
        ReportFormat::Json => {
            let mut w = create(path)?;
            serde_json::to_writer_pretty(&mut w, report)?;
            w.flush()?;
        }
        ReportFormat::Csv => write_exact_csv(report, create(path)?)?,
    }
    Ok(())
}

pub fn read_run_stats(path: &Path) -> Result<RunStats, HarnessError> {
    Ok(serde_json::from_reader(std::io::BufReader::new(
        File::open(path)?,
    ))?)
}
