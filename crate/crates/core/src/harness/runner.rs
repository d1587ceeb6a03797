use serde::{Deserialize, Serialize};

use super::eval::{evaluate_matrix, evaluate_scalar, Inputs, MatrixSample};
use super::registry::{registry, CheckKind, CheckSpec, Params};
use crate::checks::{Digest, NuRange, Verdict};
use crate::error::{Error, Result};
use crate::matrix::HermitianPSD;
use crate::sampling::{gen_matrix, gen_psd, gen_scalar, mix, structured_cases, SampleConfig, StructuredCase};
use crate::Variant;

/// Extra draws allowed, as a multiple of the target, when samples fall
/// outside a check's domain.
const MAX_DRAW_FACTOR: usize = 20;
/// Matrix samples with index divisible by this get a rescaled `A`.
const RESCALE_EVERY: usize = 3;

/// Aggregate over one (check, parameters, variant) population.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub check_id: String,
    pub params: Params,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub variant: Option<Variant>,
    /// Whether this is the variant the suite gates on.
    pub pinned: bool,
    pub samples: usize,
    /// Draws outside the check's domain (not counted in `samples`).
    pub skipped: usize,
    pub violations: usize,
    /// Smallest slack relative to its scale.
    pub min_slack: Option<f64>,
    pub raw_slack_at_min: Option<f64>,
    pub argmin_inputs: Option<Inputs>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub argmin_case: Option<String>,
    pub nu_at_min: Option<f64>,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub run_id: String,
    pub seed: u64,
    pub created_at: String,
    pub config: SampleConfig,
    pub entries: Vec<ReportEntry>,
}

impl Report {
    /// Violations among the entries the exit code gates on.
    pub fn gated_violations(&self) -> usize {
        self.entries.iter().filter(|e| e.pinned).map(|e| e.violations).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("check_id,params,variant,pinned,samples,skipped,violations,min_slack,nu_at_min\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                e.check_id,
                params_label(&e.params),
                e.variant.map_or("", Variant::as_str),
                e.pinned,
                e.samples,
                e.skipped,
                e.violations,
                opt_num(e.min_slack),
                opt_num(e.nu_at_min),
            ));
        }
        out
    }
}

pub fn params_label(p: &Params) -> String {
    let mut parts = Vec::new();
    if let Some(n) = p.norm {
        parts.push(format!("norm={n}"));
    }
    if let Some(m) = p.m {
        parts.push(format!("m={m}"));
    }
    if let Some(probe) = p.probe {
        parts.push(format!("probe={probe}"));
    }
    parts.join(";")
}

fn opt_num(v: Option<f64>) -> String {
    v.map_or(String::new(), |x| format!("{x:e}"))
}

pub fn run_id(kind: &str, config: &impl Serialize) -> String {
    let json = serde_json::to_string(config).unwrap_or_default();
    let mut d = Digest::default();
    d.str(kind).str(&json);
    format!("{kind}-{:016x}", d.finish())
}

/// Where a verdict's inputs came from, so witnesses are materialized lazily.
#[derive(Debug, Clone)]
enum Source<'a> {
    Scalar { a: f64, b: f64 },
    Matrix(&'a MatrixSample),
    Case(&'a StructuredCase),
}

impl Source<'_> {
    fn inputs(&self, nu: Option<f64>, p: &Params) -> Inputs {
        let base = match self {
            Source::Scalar { a, b } => Inputs { a: Some(*a), b: Some(*b), ..Inputs::default() },
            Source::Matrix(s) => s.to_inputs(),
            Source::Case(c) => MatrixSample { a: c.a.clone(), b: c.b.clone(), x: c.x.clone() }.to_inputs(),
        };
        Inputs { nu, ..base }.with_params(*p)
    }

    fn label(&self) -> Option<String> {
        match self {
            Source::Case(c) => Some(c.label.clone()),
            _ => None,
        }
    }
}

/// Running minimum of relative slack plus counts.
#[derive(Debug, Default)]
struct Tally {
    samples: usize,
    skipped: usize,
    violations: usize,
    best: Option<(f64, f64, Option<f64>, Inputs, Option<String>)>,
}

impl Tally {
    /// Returns whether the verdict held.
    fn record(&mut self, v: &Verdict, src: &Source<'_>, nu: Option<f64>, p: &Params) -> bool {
        self.samples += 1;
        if !v.holds {
            self.violations += 1;
        }
        let rel = v.rel_min_slack();
        let better = match &self.best {
            None => true,
            Some((r, ..)) => rel < *r || (rel.is_nan() && !r.is_nan()),
        };
        if better && (rel.is_finite() || self.best.is_none()) {
            self.best = Some((rel, v.min_slack(), nu, src.inputs(nu, p), src.label()));
        }
        v.holds
    }

    fn entry(self, check: &CheckSpec, params: Params, variant: Option<Variant>, tol: f64) -> ReportEntry {
        let finite = |x: f64| x.is_finite().then_some(x);
        let (min_slack, raw, nu, inputs, case) = match self.best {
            Some((r, raw, nu, inputs, case)) => (finite(r), finite(raw), nu, Some(inputs), case),
            None => (None, None, None, None, None),
        };
        ReportEntry {
            check_id: check.id.to_string(),
            params,
            variant,
            pinned: check.is_pinned(variant),
            samples: self.samples,
            skipped: self.skipped,
            violations: self.violations,
            min_slack,
            raw_slack_at_min: raw,
            argmin_inputs: inputs,
            argmin_case: case,
            nu_at_min: nu,
            tol,
        }
    }
}

fn admissible(grid: &[f64], range: NuRange) -> Vec<f64> {
    grid.iter().copied().filter(|&nu| range.contains(nu)).collect()
}

/// Lazily generated matrix population shared by every check of a run.
pub struct Population {
    seed: u64,
    n: usize,
    vary_n: bool,
    samples: Vec<MatrixSample>,
}

impl Population {
    pub fn new(seed: u64, n: usize, vary_n: bool) -> Self {
        Self { seed: mix(seed, 0x6d61_7472_6978), n, vary_n, samples: Vec::new() }
    }

    pub fn get(&mut self, i: usize) -> Result<&MatrixSample> {
        while self.samples.len() <= i {
            let k = self.samples.len();
            let s = self.generate(k)?;
            self.samples.push(s);
        }
        Ok(&self.samples[i])
    }

    /// Grid index for sample `i`, decorrelated from the sample itself.
    pub fn nu_index(&self, i: usize, len: usize) -> usize {
        (mix(self.seed ^ 0x6e75, i as u64) % len as u64) as usize
    }

    fn generate(&self, i: usize) -> Result<MatrixSample> {
        let dim = if self.vary_n { 1 + i % self.n } else { self.n };
        let base = mix(self.seed, i as u64);
        let mut a = gen_psd(mix(base, 0), dim)?;
        if i % RESCALE_EVERY == 0 {
            let f = gen_scalar(mix(base, 3), (1e-2, 1e2))?;
            a = HermitianPSD::new(a.matrix().scale(f))?;
        }
        let b = gen_psd(mix(base, 1), dim)?;
        let x = gen_matrix(mix(base, 2), dim, dim)?;
        Ok(MatrixSample { a, b, x })
    }
}

fn scalar_pair(seed: u64, i: usize, range: (f64, f64)) -> Result<(f64, f64)> {
    let s = mix(seed, 0x7363_616c_6172);
    let i = i as u64;
    Ok((gen_scalar(mix(s, 2 * i), range)?, gen_scalar(mix(s, 2 * i + 1), range)?))
}

/// Evaluate, turning domain errors into `None` (precondition unmet).
fn attempt(r: Result<Verdict>) -> Result<Option<Verdict>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Domain(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Structured cases at the run's top dimension plus the 1×1 embeddings.
pub fn structured_population(n: usize) -> Result<Vec<StructuredCase>> {
    structured_cases(n)
}

struct RunCtx<'a> {
    config: &'a SampleConfig,
    population: Population,
    structured: Vec<StructuredCase>,
}

impl<'a> RunCtx<'a> {
    fn new(config: &'a SampleConfig) -> Result<Self> {
        config.validate()?;
        let structured = if config.include_structured { structured_population(config.n)? } else { Vec::new() };
        Ok(Self { config, population: Population::new(config.seed, config.n, config.vary_n), structured })
    }
}

fn run_scalar(
    cfg: &SampleConfig,
    check: &CheckSpec,
    params: &Params,
    variant: Option<Variant>,
    tol: f64,
    count: usize,
    fixed_nu: Option<f64>,
) -> Result<ReportEntry> {
    let grid = match fixed_nu {
        Some(nu) => vec![nu],
        None => admissible(&cfg.nu_grid, check.nu),
    };
    let mut tally = Tally::default();
    if grid.is_empty() {
        return Ok(tally.entry(check, *params, variant, tol));
    }
    let mut i = 0;
    while tally.samples < count && i < count * MAX_DRAW_FACTOR {
        let (a, b) = scalar_pair(cfg.seed, i, cfg.scalar_range)?;
        let nu = grid[i % grid.len()];
        i += 1;
        match attempt(evaluate_scalar(check, variant, params, a, b, nu, tol))? {
            Some(v) => {
                tally.record(&v, &Source::Scalar { a, b }, Some(nu), params);
            }
            None => tally.skipped += 1,
        }
    }
    Ok(tally.entry(check, *params, variant, tol))
}

fn run_matrix(
    ctx: &mut RunCtx<'_>,
    check: &CheckSpec,
    params: &Params,
    variant: Option<Variant>,
    tol: f64,
    count: usize,
    fixed_nu: Option<f64>,
) -> Result<ReportEntry> {
    let uses_nu = check.nu != NuRange::None;
    let grid = match fixed_nu {
        Some(nu) => vec![nu],
        None if uses_nu => admissible(&ctx.config.nu_grid, check.nu),
        None => vec![0.5],
    };
    let mut tally = Tally::default();
    if grid.is_empty() {
        return Ok(tally.entry(check, *params, variant, tol));
    }
    let stored_nu = |nu: f64| uses_nu.then_some(nu);

    for case in &ctx.structured {
        let nus: Vec<f64> = match (case.nu, fixed_nu, uses_nu) {
            (_, _, false) => vec![0.5],
            (Some(nu), None, true) => vec![nu],
            (Some(nu), Some(f), true) if nu == f => vec![nu],
            (Some(_), Some(_), true) => vec![],
            (None, _, true) => grid.clone(),
        };
        let sample = MatrixSample { a: case.a.clone(), b: case.b.clone(), x: case.x.clone() };
        for nu in nus.into_iter().filter(|&nu| !uses_nu || check.nu.contains(nu)) {
            match attempt(evaluate_matrix(check, variant, params, &sample, nu, tol))? {
                Some(v) => {
                    tally.record(&v, &Source::Case(case), stored_nu(nu), params);
                }
                None => tally.skipped += 1,
            }
        }
    }

    let mut random = 0;
    let mut i = 0;
    while random < count && i < count * MAX_DRAW_FACTOR {
        let nu = grid[ctx.population.nu_index(i, grid.len())];
        let sample = ctx.population.get(i)?;
        i += 1;
        match attempt(evaluate_matrix(check, variant, params, sample, nu, tol))? {
            Some(v) => {
                random += 1;
                tally.record(&v, &Source::Matrix(sample), stored_nu(nu), params);
            }
            None => tally.skipped += 1,
        }
    }
    Ok(tally.entry(check, *params, variant, tol))
}

/// Which checks and variants a run covers.
#[derive(Debug, Clone, Default)]
pub struct Selection {
    /// Restrict to one check id.
    pub check: Option<String>,
    /// Restrict to one kind.
    pub kind: Option<CheckKind>,
    /// Run this variant where a check has it; the pinned variant otherwise.
    pub variant: Option<Variant>,
    /// Override the suite's parameter grid.
    pub params: Option<Params>,
}

impl Selection {
    fn checks(&self) -> Result<Vec<CheckSpec>> {
        let all: Vec<CheckSpec> = match &self.check {
            Some(id) => vec![super::registry::lookup(id)?],
            None => registry(),
        };
        Ok(all.into_iter().filter(|c| self.kind.map_or(true, |k| c.kind == k)).collect())
    }

    fn grid(&self, check: &CheckSpec) -> Vec<Params> {
        match self.params {
            Some(p) => vec![check.complete(p)],
            None => check.param_grid(),
        }
    }
}

/// Run every selected check over the configured population.
pub fn run_suite(config: &SampleConfig, selection: &Selection) -> Result<Report> {
    let mut ctx = RunCtx::new(config)?;
    let mut entries = Vec::new();
    for check in selection.checks()? {
        let variant = check.resolve_variant(selection.variant);
        let tol = config.tol.unwrap_or(check.tol);
        for params in selection.grid(&check) {
            let entry = match check.kind {
                CheckKind::Scalar => run_scalar(config, &check, &params, variant, tol, config.scalar_count, None)?,
                CheckKind::Matrix => run_matrix(&mut ctx, &check, &params, variant, tol, config.count, None)?,
            };
            entries.push(entry);
        }
    }
    Ok(Report {
        run_id: run_id("suite", &(config, selection.check.as_deref(), selection.variant)),
        seed: config.seed,
        created_at: now(),
        config: config.clone(),
        entries,
    })
}

pub fn run_scalar_suite(config: &SampleConfig) -> Result<Report> {
    run_suite(config, &Selection { kind: Some(CheckKind::Scalar), ..Selection::default() })
}

pub fn run_matrix_suite(config: &SampleConfig) -> Result<Report> {
    run_suite(config, &Selection { kind: Some(CheckKind::Matrix), ..Selection::default() })
}

pub(crate) fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub nu: f64,
    pub samples: usize,
    pub violations: usize,
    pub min_slack: Option<f64>,
    pub argmin_digest: Option<String>,
    pub argmin_inputs: Option<Inputs>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub run_id: String,
    pub seed: u64,
    pub created_at: String,
    pub check_id: String,
    pub params: Params,
    pub variant: Option<Variant>,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("nu,min_slack,argmin_digest\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.nu, opt_num(r.min_slack), r.argmin_digest.as_deref().unwrap_or("")));
        }
        out
    }

    pub fn gated_violations(&self, check: &CheckSpec) -> usize {
        if check.is_pinned(self.variant) {
            self.rows.iter().map(|r| r.violations).sum()
        } else {
            0
        }
    }
}

/// Minimal slack per ν of `grid`, each from `config.count` samples.
pub fn run_sweep(config: &SampleConfig, check_id: &str, variant: Option<Variant>, params: Params, grid: &[f64]) -> Result<SweepReport> {
    let check = super::registry::lookup(check_id)?;
    let variant = check.resolve_variant(variant);
    let params = check.complete(params);
    let tol = config.tol.unwrap_or(check.tol);
    let mut ctx = RunCtx::new(config)?;
    let mut rows = Vec::new();
    for &nu in grid {
        if check.nu != NuRange::None && !check.nu.contains(nu) {
            return Err(crate::error::domain(format!("ν = {nu} outside the range of `{check_id}`")));
        }
        let e = match check.kind {
            CheckKind::Scalar => run_scalar(config, &check, &params, variant, tol, config.count, Some(nu))?,
            CheckKind::Matrix => run_matrix(&mut ctx, &check, &params, variant, tol, config.count, Some(nu))?,
        };
        let argmin_digest = match &e.argmin_inputs {
            Some(inputs) => Some(format!("{:016x}", super::evaluate(&check, variant, inputs, Some(tol))?.inputs_digest)),
            None => None,
        };
        rows.push(SweepRow {
            nu,
            samples: e.samples,
            violations: e.violations,
            min_slack: e.min_slack,
            argmin_digest,
            argmin_inputs: e.argmin_inputs,
        });
    }
    Ok(SweepReport {
        run_id: run_id("sweep", &(config, check_id, variant, params, grid)),
        seed: config.seed,
        created_at: now(),
        check_id: check_id.to_string(),
        params,
        variant,
        rows,
    })
}

/// Parse `0.1,0.2` or `lo:hi:steps` (inclusive, `steps` points).
pub fn parse_nu_grid(s: &str) -> Result<Vec<f64>> {
    let bad = || Error::Parse(format!("bad ν grid `{s}`"));
    let s = s.trim();
    let grid: Vec<f64> = if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let steps: usize = parts[2].trim().parse().map_err(|_| bad())?;
        match steps {
            0 => return Err(bad()),
            1 => vec![lo],
            _ => (0..steps).map(|k| lo + (hi - lo) * k as f64 / (steps - 1) as f64).collect(),
        }
    } else {
        s.split(',').map(|t| t.trim().parse::<f64>().map_err(|_| bad())).collect::<Result<_>>()?
    };
    if grid.is_empty() || grid.iter().any(|v| !v.is_finite()) {
        return Err(bad());
    }
    Ok(grid)
}
