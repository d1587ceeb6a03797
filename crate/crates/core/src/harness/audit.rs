//! Both variants of every check on a fixed grid, with violating witnesses.

use serde::{Deserialize, Serialize};

use super::eval::{evaluate_matrix, evaluate_scalar, Inputs, MatrixSample};
use super::registry::{registry, CheckKind, CheckSpec, Params};
use super::runner::{now, run_id, Population};
use crate::checks::{NuRange, Verdict};
use crate::error::{Error, Result};
use crate::sampling::{default_nu_grid, structured_cases};
use crate::Variant;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AuditConfig {
    pub seed: u64,
    pub n: usize,
    /// Points per axis of the log-spaced scalar grid.
    pub scalar_grid: usize,
    pub scalar_range: (f64, f64),
    /// Random matrix samples, on top of the structured cases.
    pub matrix_samples: usize,
    pub nu_grid: Vec<f64>,
    pub max_witnesses: usize,
    pub tol: Option<f64>,
}

impl Default for AuditConfig {
    fn default() -> Self {
        Self {
            seed: 20_240_917,
            n: 6,
            scalar_grid: 200,
            scalar_range: (1e-3, 1e3),
            matrix_samples: 500,
            nu_grid: default_nu_grid(),
            max_witnesses: 256,
            tol: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub case: Option<String>,
    pub inputs: Inputs,
    pub slack: f64,
    pub rel_slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub check_id: String,
    pub params: Params,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub variant: Option<Variant>,
    pub pinned: bool,
    pub evaluated: usize,
    pub skipped: usize,
    pub violations: usize,
    pub holds_on_grid: bool,
    pub min_slack: Option<f64>,
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub run_id: String,
    pub created_at: String,
    pub config: AuditConfig,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn gated_violations(&self) -> usize {
        self.entries.iter().filter(|e| e.pinned).map(|e| e.violations).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("check_id,params,variant,pinned,evaluated,skipped,violations,holds_on_grid,min_slack\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                e.check_id,
                super::runner::params_label(&e.params),
                e.variant.map_or("", Variant::as_str),
                e.pinned,
                e.evaluated,
                e.skipped,
                e.violations,
                e.holds_on_grid,
                e.min_slack.map_or(String::new(), |x| format!("{x:e}")),
            ));
        }
        out
    }
}

struct Collector<'a> {
    entry: AuditEntry,
    max: usize,
    params: &'a Params,
}

impl Collector<'_> {
    fn push(&mut self, r: Result<Verdict>, inputs: impl FnOnce() -> Inputs, case: Option<&str>) -> Result<()> {
        let v = match r {
            Ok(v) => v,
            Err(Error::Domain(_)) => {
                self.entry.skipped += 1;
                return Ok(());
            }
            Err(e) => return Err(e),
        };
        self.entry.evaluated += 1;
        let rel = v.rel_min_slack();
        if rel.is_finite() && self.entry.min_slack.map_or(true, |m| rel < m) {
            self.entry.min_slack = Some(rel);
        }
        if !v.holds {
            self.entry.violations += 1;
            if self.entry.witnesses.len() < self.max {
                self.entry.witnesses.push(Witness {
                    case: case.map(str::to_string),
                    inputs: inputs().with_params(*self.params),
                    slack: v.min_slack(),
                    rel_slack: rel,
                });
            }
        }
        Ok(())
    }
}

fn log_grid(n: usize, (lo, hi): (f64, f64)) -> Vec<f64> {
    if n <= 1 {
        return vec![lo];
    }
    (0..n).map(|k| (lo.ln() + (hi.ln() - lo.ln()) * k as f64 / (n - 1) as f64).exp()).collect()
}

fn audit_one(
    config: &AuditConfig,
    check: &CheckSpec,
    params: &Params,
    variant: Option<Variant>,
    cases: &[crate::sampling::StructuredCase],
    population: &mut Population,
) -> Result<AuditEntry> {
    let tol = config.tol.unwrap_or(check.tol);
    let uses_nu = check.nu != NuRange::None;
    let grid: Vec<f64> = if uses_nu {
        config.nu_grid.iter().copied().filter(|&nu| check.nu.contains(nu)).collect()
    } else {
        vec![0.5]
    };
    let stored = |nu: f64| uses_nu.then_some(nu);
    let mut c = Collector {
        entry: AuditEntry {
            check_id: check.id.to_string(),
            params: *params,
            variant,
            pinned: check.is_pinned(variant),
            evaluated: 0,
            skipped: 0,
            violations: 0,
            holds_on_grid: true,
            min_slack: None,
            witnesses: Vec::new(),
        },
        max: config.max_witnesses,
        params,
    };
    match check.kind {
        CheckKind::Scalar => {
            let axis = log_grid(config.scalar_grid, config.scalar_range);
            for &nu in &grid {
                for &a in &axis {
                    for &b in &axis {
                        let r = evaluate_scalar(check, variant, params, a, b, nu, tol);
                        c.push(r, || Inputs { a: Some(a), b: Some(b), nu: Some(nu), ..Inputs::default() }, None)?;
                    }
                }
            }
        }
        CheckKind::Matrix => {
            for case in cases {
                let sample = MatrixSample { a: case.a.clone(), b: case.b.clone(), x: case.x.clone() };
                let nus: Vec<f64> = match case.nu {
                    _ if !uses_nu => vec![0.5],
                    Some(nu) if check.nu.contains(nu) => vec![nu],
                    Some(_) => vec![],
                    None => grid.clone(),
                };
                for nu in nus {
                    let r = evaluate_matrix(check, variant, params, &sample, nu, tol);
                    c.push(r, || Inputs { nu: stored(nu), ..sample.to_inputs() }, Some(&case.label))?;
                }
            }
            if !grid.is_empty() {
                for i in 0..config.matrix_samples {
                    let nu = grid[population.nu_index(i, grid.len())];
                    let sample = population.get(i)?;
                    let r = evaluate_matrix(check, variant, params, sample, nu, tol);
                    c.push(r, || Inputs { nu: stored(nu), ..sample.to_inputs() }, None)?;
                }
            }
        }
    }
    c.entry.holds_on_grid = c.entry.violations == 0;
    Ok(c.entry)
}

/// Evaluate every variant of every selected check.
pub fn run_audit(config: &AuditConfig, check_id: Option<&str>) -> Result<AuditReport> {
    let checks = match check_id {
        Some(id) => vec![super::registry::lookup(id)?],
        None => registry(),
    };
    let cases = structured_cases(config.n)?;
    let mut population = Population::new(config.seed, config.n, true);
    let mut entries = Vec::new();
    for check in &checks {
        for params in check.param_grid() {
            for variant in check.audit_variants() {
                entries.push(audit_one(config, check, &params, variant, &cases, &mut population)?);
            }
        }
    }
    Ok(AuditReport { run_id: run_id("audit", &(config, check_id)), created_at: now(), config: config.clone(), entries })
}
