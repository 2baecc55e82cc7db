use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use matsec_core::exact::{exact_free_order, exact_laminar};
use matsec_core::harness::{
    check_instance, emit_exact, emit_runs, generate_raw, run_trials, suite, write_exact_csv,
    write_frequencies_csv, write_summary_csv, ExperimentConfig, GeneratorKind, GeneratorParams,
    HarnessError, ReportFormat, DEFAULT_TRIALS,
};
use matsec_core::instance::{instance_from_json, validate_instance};
use matsec_core::laminar::{Phase2Order, IMPROVED_SAMPLE_PROBABILITY, SIMPLE_SAMPLE_PROBABILITY};
use matsec_core::{Algorithm, InstanceF64};

const EXIT_VALIDATION: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

#[derive(Parser)]
#[command(name = "matsec", version, about = "Matroid secretary experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo estimate of an algorithm's expected weight.
    Run(RunArgs),
    /// Exact expectations by enumerating every sample (n ≤ 14).
    Exact(ExactArgs),
    /// Axiom and lemma checks on an instance or on the built-in suite.
    Check(CheckArgs),
    /// Write a generated instance as JSON.
    Gen(GenArgs),
}

#[derive(Args)]
struct Output {
    /// Output file; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: ReportFormat,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_parser = parse_algorithm)]
    algorithm: Algorithm,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample probability for the laminar algorithms.
    #[arg(long)]
    q: Option<f64>,
    #[arg(long, default_value = "random", value_parser = parse_phase2)]
    phase2_order: Phase2Order,
    /// Free order only: reveal the unsampled elements in random order.
    #[arg(long)]
    naive: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_parser = parse_algorithm)]
    algorithm: Algorithm,
    #[arg(long)]
    q: Option<f64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct CheckArgs {
    /// Instance to check; the built-in suite when omitted.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Write the check lines as JSON here.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: GeneratorKind,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long)]
    parts: Option<usize>,
    #[arg(long)]
    vertices: Option<usize>,
    #[arg(long, default_value_t = 3)]
    depth: usize,
    #[arg(long)]
    cluster_size: Option<usize>,
    #[arg(long, default_value_t = 1)]
    cluster_capacity: usize,
    #[arg(long, default_value_t = 0.7)]
    decay: f64,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

fn parse_kind(s: &str) -> Result<GeneratorKind, String> {
    s.parse()
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    s.parse()
}

fn parse_phase2(s: &str) -> Result<Phase2Order, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|_| {
        format!(
            "unknown phase-2 order {s:?}, expected random, adversarial-id, reversed or opt-last"
        )
    })
}

/// Error carrying the process exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        let code = if e.is_validation() {
            EXIT_VALIDATION
        } else {
            1
        };
        Failure {
            code,
            error: e.into(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure { code: 1, error }
    }
}

fn load(path: &Path) -> Result<InstanceF64, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    instance_from_json(&text).map_err(|e| Failure {
        code: EXIT_VALIDATION,
        error: anyhow::Error::new(e).context(format!("invalid instance {}", path.display())),
    })
}

fn label(path: &Path) -> String {
    path.file_stem().map_or_else(
        || path.display().to_string(),
        |s| s.to_string_lossy().into_owned(),
    )
}

fn run(args: RunArgs) -> Result<(), Failure> {
    let instance = load(&args.instance)?;
    let config = ExperimentConfig {
        instance: label(&args.instance),
        algorithm: args.algorithm,
        trials: args.trials,
        seed: args.seed,
        q: args.q,
        phase2_order: args.phase2_order,
        naive_free_order: args.naive,
    };
    let stats = run_trials(&instance, &config)?;
    match &args.output.output {
        Some(path) => emit_runs(std::slice::from_ref(&stats), args.output.format, path)?,
        None => {
            let mut out = io::stdout().lock();
            match args.output.format {
                ReportFormat::Json => {
                    serde_json::to_writer_pretty(&mut out, &stats).context("writing report")?;
                    writeln!(out).context("writing report")?;
                }
                ReportFormat::Csv => {
                    write_summary_csv(std::slice::from_ref(&stats), &mut out)?;
                    writeln!(out).context("writing report")?;
                    write_frequencies_csv(std::slice::from_ref(&stats), &mut out)?;
                }
            }
        }
    }
    Ok(())
}

fn exact(args: ExactArgs) -> Result<(), Failure> {
    let instance = load(&args.instance)?;
    let report = match args.algorithm {
        Algorithm::FreeOrder => exact_free_order(&instance),
        Algorithm::LaminarSimple => exact_laminar(
            &instance,
            args.algorithm,
            args.q.unwrap_or(SIMPLE_SAMPLE_PROBABILITY),
        ),
        Algorithm::LaminarImproved => exact_laminar(
            &instance,
            args.algorithm,
            args.q.unwrap_or(IMPROVED_SAMPLE_PROBABILITY),
        ),
    }
    .map_err(HarnessError::from)?;
    match &args.output.output {
        Some(path) => emit_exact(&report, args.output.format, path)?,
        None => {
            let mut out = io::stdout().lock();
            match args.output.format {
                ReportFormat::Json => {
                    serde_json::to_writer_pretty(&mut out, &report).context("writing report")?;
                    writeln!(out).context("writing report")?;
                }
                ReportFormat::Csv => write_exact_csv(&report, &mut out)?,
            }
        }
    }
    if !report.is_clean() {
        eprintln!(
            "warning: {} lemma violations recorded",
            report.violation_count
        );
    }
    Ok(())
}

fn check(args: CheckArgs) -> Result<(), Failure> {
    let targets: Vec<(String, InstanceF64)> = match &args.instance {
        Some(path) => vec![(label(path), load(path)?)],
        None => suite().into_iter().map(|s| (s.name, s.instance)).collect(),
    };
    let mut lines = Vec::new();
    for (name, instance) in &targets {
        lines.extend(check_instance(name, instance)?);
    }
    let mut out = io::stdout().lock();
    for l in &lines {
        let verdict = if l.passed { "PASS" } else { "FAIL" };
        writeln!(out, "{verdict} {} {}: {}", l.instance, l.check, l.detail).context("writing")?;
    }
    if let Some(path) = &args.output {
        fs::write(
            path,
            serde_json::to_string_pretty(&lines).context("serializing")?,
        )
        .with_context(|| format!("writing {}", path.display()))?;
    }
    let failed = lines.iter().filter(|l| !l.passed).count();
    if failed > 0 {
        return Err(Failure {
            code: EXIT_VIOLATION,
            error: anyhow::anyhow!("{failed} of {} checks failed", lines.len()),
        });
    }
    Ok(())
}

fn gen(args: GenArgs) -> Result<(), Failure> {
    let params = GeneratorParams {
        n: args.n,
        rank: args.rank,
        parts: args.parts,
        vertices: args.vertices,
        depth: args.depth,
        cluster_size: args.cluster_size,
        cluster_capacity: args.cluster_capacity,
        decay: args.decay,
    };
    let raw = generate_raw(args.kind, &params, args.seed).map_err(HarnessError::from)?;
    validate_instance(raw.clone()).map_err(HarnessError::from)?;
    let text = serde_json::to_string_pretty(&raw).context("serializing instance")?;
    match &args.output {
        Some(path) => {
            fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => run(a),
        Command::Exact(a) => exact(a),
        Command::Check(a) => check(a),
        Command::Gen(a) => gen(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
