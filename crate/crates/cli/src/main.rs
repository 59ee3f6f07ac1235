use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use eightvertex::poly::families::Spec;
use eightvertex::poly::oracle::oracle_x;
use eightvertex::poly::recurrence::{recurrence_h, CoefficientSet};
use eightvertex::report::Report;
use eightvertex::suites::{self, Config};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "eightv", version, about = "Verification suites for the eight-vertex model at eta = pi/3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvector, exchange, flip, periodicity, wheel and size-recurrence checks.
    VerifyGroundstate(RunArgs),
    /// Partition-function symmetries, size recurrence, double zero and X_n.
    VerifyPartition(RunArgs),
    /// Determinant identities, Pfaffian recurrences, Slater ratios and rational/elliptic consistency.
    VerifyClosedforms(RunArgs),
    /// Oracle/recurrence tables and exact divisibility of every recurrence step.
    VerifyRecurrences(RunArgs),
    /// Exact derivative relations, Toda identity, divided-difference and second-order equations.
    VerifyAnalytics(RunArgs),
    /// zeta -> 0 and zeta -> 1 limits.
    Limits(RunArgs),
    /// Every suite.
    All(RunArgs),
    /// Print H_2m(S) or X_n polynomials in zeta.
    Sequences(SeqArgs),
}

#[derive(Clone, Copy, ValueEnum, Default, PartialEq)]
enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "txt",
        }
    }
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Report file; defaults to <EIGHTV_OUTPUT_DIR>/<command>.<ext> when that is set, else stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, env = "EIGHTV_OUTPUT_DIR", hide_env_values = true)]
    output_dir: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Largest m for the oracle/recurrence comparison.
    #[arg(long, default_value_t = 6)]
    m_max: usize,
    /// Largest m for the exact-divisibility run.
    #[arg(long, default_value_t = 8)]
    m_div: usize,
    /// Odd chain lengths.
    #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
    sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.3")]
    nomes: Vec<f64>,
    /// Random draws per (size, nome) case.
    #[arg(long, default_value_t = 3)]
    draws: usize,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum SeqFamily {
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "X", alias = "x")]
    X,
}

#[derive(Args)]
struct SeqArgs {
    #[arg(long, value_enum, default_value = "H")]
    family: SeqFamily,
    /// Subset of J2,J3,J4 among the arguments, comma separated, or "none".
    #[arg(long, default_value = "none")]
    spec: String,
    #[arg(long, default_value_t = 4)]
    m_max: usize,
    #[command(flatten)]
    out: Output,
}

#[derive(Serialize)]
struct Entry {
    m: usize,
    variable: &'static str,
    scale: &'static str,
    coeffs: Vec<String>,
}

impl RunArgs {
    fn config(&self) -> Result<Config> {
        if let Some(l) = self.sizes.iter().find(|l| **l % 2 == 0 || **l < 3) {
            bail!("chain length {l} must be odd and at least 3");
        }
        if let Some(p) = self.nomes.iter().find(|p| !(**p > 0.0 && **p < 1.0)) {
            bail!("nome {p} must lie in (0, 1)");
        }
        Ok(Config {
            seed: self.seed,
            m_max: self.m_max,
            m_div: self.m_div,
            sizes: self.sizes.clone(),
            nomes: self.nomes.clone(),
            draws_per_case: self.draws.max(1),
        })
    }
}

fn emit(out: &Output, command: &str, body: &str) -> Result<()> {
    let path = out.output.clone().or_else(|| out.output_dir.as_ref().map(|d| d.join(format!("{command}.{}", out.format.ext()))));
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            std::fs::write(&p, body).with_context(|| format!("writing {}", p.display()))
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn render(report: &Report, f: Format) -> String {
    match f {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    }
}

fn run_suites(command: &str, names: &[&str], args: &RunArgs) -> Result<bool> {
    let cfg = args.config()?;
    let suites = names.iter().filter_map(|n| suites::run_named(n, &cfg)).collect();
    let report = Report::new(cfg.seed, suites);
    emit(&args.out, command, &render(&report, args.out.format))?;
    for s in &report.suites {
        for c in s.failures() {
            eprintln!("FAIL [{}] {}: {}", s.name, c.name, c.residual.map(|r| format!("{r:e}")).unwrap_or_else(|| c.detail.clone()));
        }
    }
    Ok(report.passed)
}

fn sequences(a: &SeqArgs) -> Result<bool> {
    let spec = Spec::parse(&a.spec).with_context(|| format!("unknown coupling subset {:?}", a.spec))?;
    let mut entries = Vec::new();
    match a.family {
        SeqFamily::H => {
            for m in spec.min_m().max(1)..=a.m_max {
                let p = recurrence_h(&spec, m, CoefficientSet::VALIDATED)? * spec.scale_factor(m);
                entries.push(Entry { m, variable: "zeta", scale: spec.scale_label(), coeffs: p.coeff_strings() });
            }
        }
        SeqFamily::X => {
            if !spec.is_empty() {
                bail!("--spec applies to --family h only");
            }
            for n in 1..=a.m_max {
                entries.push(Entry { m: n, variable: "zeta", scale: "(1-zeta^2)^n 2^{n+1}", coeffs: oracle_x(n)?.coeff_strings() });
            }
        }
    }
    let body = match a.out.format {
        Format::Json => serde_json::to_string_pretty(&entries)? + "\n",
        Format::Csv => {
            let mut s = String::from("m,scale,coeffs\n");
            for e in &entries {
                s += &format!("{},{},{}\n", e.m, e.scale, e.coeffs.join(" "));
            }
            s
        }
        Format::Text => entries.iter().map(|e| format!("m={} [{}] {}\n", e.m, e.scale, e.coeffs.join(", "))).collect(),
    };
    emit(&a.out, "sequences", &body)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::VerifyGroundstate(a) => run_suites("verify-groundstate", &["groundstate"], a),
        Command::VerifyPartition(a) => run_suites("verify-partition", &["partition"], a),
        Command::VerifyClosedforms(a) => run_suites("verify-closedforms", &["closedforms"], a),
        Command::VerifyRecurrences(a) => run_suites("verify-recurrences", &["tables", "divisibility"], a),
        Command::VerifyAnalytics(a) => run_suites("verify-analytics", &["analytics"], a),
        Command::Limits(a) => run_suites("limits", &["limits"], a),
        Command::All(a) => run_suites("all", &suites::SUITE_NAMES, a),
        Command::Sequences(a) => sequences(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
