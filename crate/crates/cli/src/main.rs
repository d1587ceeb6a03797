use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use youngheinz_core::harness::{
    self, lookup, parse_nu_grid, run_audit, run_suite, run_sweep, AuditConfig, Inputs, Params, Selection,
};
use youngheinz_core::norms::NormSpec;
use youngheinz_core::sampling::SampleConfig;
use youngheinz_core::scalar::ConvexProbe;
use youngheinz_core::Variant;

const EXIT_VIOLATIONS: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "youngheinz", version, about = "Numerical verifier for refined Young and Heinz inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every check (or one) over the seeded population.
    Suite(RunArgs),
    /// Evaluate one check on inputs read from a JSON file.
    Check(CheckArgs),
    /// Minimal slack of one check per ν.
    Sweep(RunArgs),
    /// Evaluate both variants on a dense grid and list violating inputs.
    Audit(RunArgs),
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Default)]
struct Common {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[arg(long)]
    variant: Option<Variant>,
    /// Relative slack tolerance, overriding each check's own.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    norm: Option<NormSpec>,
    #[arg(long)]
    probe: Option<ConvexProbe>,
}

impl Common {
    fn params(&self) -> Option<Params> {
        let p = Params { norm: self.norm, m: self.m, probe: self.probe };
        (p != Params::default()).then_some(p)
    }
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Check id, or `all`.
    #[arg(long)]
    check: Option<String>,
    /// JSON config file with the same keys as the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest matrix dimension.
    #[arg(long)]
    n: Option<usize>,
    /// Samples per check (matrix checks; scalar checks in `suite` use ×100).
    #[arg(long)]
    samples: Option<usize>,
    /// Comma list or `lo:hi:steps`.
    #[arg(long)]
    nu_grid: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Check id.
    #[arg(long)]
    check: String,
    /// JSON file with `a`/`b` or `A`/`B`/`X` (rows of `[re, im]` pairs).
    #[arg(long)]
    inputs: PathBuf,
    #[arg(long)]
    nu: Option<f64>,
    #[command(flatten)]
    common: Common,
}

/// Failure with its exit code.
struct Failure(u8, String);

impl From<youngheinz_core::Error> for Failure {
    fn from(e: youngheinz_core::Error) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_IO, format!("{}: {e}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| Failure(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn emit(common: &Common, json: &impl Serialize, csv: impl FnOnce() -> String) -> Result<(), Failure> {
    let mut text = match common.format {
        Format::Json => serde_json::to_string_pretty(json).map_err(|e| Failure(EXIT_IO, e.to_string()))?,
        Format::Csv => csv(),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &common.out {
        Some(path) => fs::write(path, text).map_err(|e| io_err(path, e)),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure(EXIT_IO, e.to_string())),
    }
}

fn check_filter(check: &Option<String>) -> Option<String> {
    check.clone().filter(|c| c != "all")
}

fn sample_config(args: &RunArgs) -> Result<SampleConfig, Failure> {
    let mut cfg: SampleConfig = match &args.config {
        Some(path) => read_json(path)?,
        None => SampleConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(n) = args.n {
        cfg.n = n;
    }
    if let Some(s) = args.samples {
        cfg.count = s;
        cfg.scalar_count = s.saturating_mul(100);
    }
    if let Some(g) = &args.nu_grid {
        cfg.nu_grid = parse_nu_grid(g)?;
    }
    if args.common.tol.is_some() {
        cfg.tol = args.common.tol;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn gate(violations: usize) -> ExitCode {
    if violations == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VIOLATIONS)
    }
}

fn cmd_suite(args: RunArgs) -> Result<ExitCode, Failure> {
    let cfg = sample_config(&args)?;
    let check = check_filter(&args.check);
    if let Some(id) = &check {
        lookup(id)?;
    }
    let sel = Selection { check, kind: None, variant: args.common.variant, params: args.common.params() };
    let report = run_suite(&cfg, &sel)?;
    emit(&args.common, &report, || report.to_csv())?;
    Ok(gate(report.gated_violations()))
}

fn cmd_sweep(args: RunArgs) -> Result<ExitCode, Failure> {
    let id = check_filter(&args.check).ok_or_else(|| Failure(EXIT_USAGE, "sweep needs --check <id>".into()))?;
    let spec = lookup(&id)?;
    let cfg = sample_config(&args)?;
    let report = run_sweep(&cfg, &id, args.common.variant, args.common.params().unwrap_or_default(), &cfg.nu_grid)?;
    emit(&args.common, &report, || report.to_csv())?;
    Ok(gate(report.gated_violations(&spec)))
}

fn cmd_audit(args: RunArgs) -> Result<ExitCode, Failure> {
    let mut cfg: AuditConfig = match &args.config {
        Some(path) => read_json(path)?,
        None => AuditConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(n) = args.n {
        cfg.n = n;
    }
    if let Some(s) = args.samples {
        cfg.matrix_samples = s;
    }
    if let Some(g) = &args.nu_grid {
        cfg.nu_grid = parse_nu_grid(g)?;
    }
    if args.common.tol.is_some() {
        cfg.tol = args.common.tol;
    }
    let check = check_filter(&args.check);
    let report = run_audit(&cfg, check.as_deref())?;
    emit(&args.common, &report, || report.to_csv())?;
    Ok(gate(report.gated_violations()))
}

fn cmd_check(args: CheckArgs) -> Result<ExitCode, Failure> {
    let spec = lookup(&args.check)?;
    let mut inputs: Inputs = read_json(&args.inputs)?;
    if args.nu.is_some() {
        inputs.nu = args.nu;
    }
    let given = inputs.params();
    let over = args.common.params().unwrap_or_default();
    let params = Params { norm: over.norm.or(given.norm), m: over.m.or(given.m), probe: over.probe.or(given.probe) };
    let inputs = inputs.with_params(params);
    let variant = spec.resolve_variant(args.common.variant);
    let verdict = harness::evaluate(&spec, variant, &inputs, args.common.tol)?;
    emit(&args.common, &verdict, || {
        let mut out = String::from("kind,label,value\n");
        for c in &verdict.chain {
            out.push_str(&format!("chain,{},{:e}\n", c.label, c.value));
        }
        for s in &verdict.slacks {
            out.push_str(&format!("slack,{},{:e}\n", s.label, s.value));
        }
        out
    })?;
    Ok(gate(usize::from(!verdict.holds)))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Suite(a) => cmd_suite(a),
        Command::Check(a) => cmd_check(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Audit(a) => cmd_audit(a),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
