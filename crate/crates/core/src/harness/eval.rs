use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::registry::{CheckKind, CheckSpec, Params};
use crate::checks::{self, Digest, Verdict, VerdictBuilder, YoungForm};
use crate::error::{domain, Error, Result};
use crate::matrix::{ComplexMatrix, HermitianPSD};
use crate::norms::NormSpec;
use crate::scalar::{self, ConvexProbe, Inequality, PhiSandwich, Sandwich};
use crate::Variant;

/// Row-major `[re, im]` pairs.
pub type MatrixLiteral = Vec<Vec<[f64; 2]>>;

pub fn matrix_to_literal(m: &ComplexMatrix) -> MatrixLiteral {
    m.to_rows().iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect()
}

pub fn literal_to_matrix(lit: &MatrixLiteral) -> Result<ComplexMatrix> {
    let rows: Vec<Vec<Complex64>> =
        lit.iter().map(|r| r.iter().map(|p| Complex64::new(p[0], p[1])).collect()).collect();
    ComplexMatrix::from_rows(&rows)
}

/// Serialized inputs of one check evaluation, as read by `check` and written
/// as report witnesses.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<f64>,
    #[serde(rename = "A", skip_serializing_if = "Option::is_none", default)]
    pub a_matrix: Option<MatrixLiteral>,
    #[serde(rename = "B", skip_serializing_if = "Option::is_none", default)]
    pub b_matrix: Option<MatrixLiteral>,
    #[serde(rename = "X", skip_serializing_if = "Option::is_none", default)]
    pub x_matrix: Option<MatrixLiteral>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub norm: Option<NormSpec>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub probe: Option<ConvexProbe>,
}

impl Inputs {
    pub fn params(&self) -> Params {
        Params { norm: self.norm, m: self.m, probe: self.probe }
    }

    pub fn with_params(mut self, p: Params) -> Self {
        self.norm = p.norm;
        self.m = p.m;
        self.probe = p.probe;
        self
    }
}

/// A matrix triple with its decompositions already computed.
#[derive(Debug, Clone)]
pub struct MatrixSample {
    pub a: HermitianPSD,
    pub b: HermitianPSD,
    pub x: ComplexMatrix,
}

impl MatrixSample {
    pub fn from_inputs(inputs: &Inputs) -> Result<Self> {
        let get = |m: &Option<MatrixLiteral>, name: &str| {
            m.as_ref().ok_or_else(|| Error::Parse(format!("missing matrix {name}"))).and_then(literal_to_matrix)
        };
        let a = HermitianPSD::new(get(&inputs.a_matrix, "A")?)?;
        let b = HermitianPSD::new(get(&inputs.b_matrix, "B")?)?;
        let x = match &inputs.x_matrix {
            Some(x) => literal_to_matrix(x)?,
            None => ComplexMatrix::identity(a.dim()),
        };
        Ok(Self { a, b, x })
    }

    /// Serialized form; the stored (symmetrized) matrices rebuild the same
    /// decompositions bit for bit.
    pub fn to_inputs(&self) -> Inputs {
        Inputs {
            a_matrix: Some(matrix_to_literal(self.a.matrix())),
            b_matrix: Some(matrix_to_literal(self.b.matrix())),
            x_matrix: Some(matrix_to_literal(&self.x)),
            ..Inputs::default()
        }
    }
}

fn need<T>(v: Option<T>, what: &str, id: &str) -> Result<T> {
    v.ok_or_else(|| Error::Parse(format!("check `{id}` needs {what}")))
}

fn scalar_digest(id: &str, a: f64, b: f64, nu: f64, p: &Params, variant: Option<Variant>) -> Digest {
    let mut d = Digest::default();
    d.str(id).f64(a).f64(b).f64(nu);
    if let Some(m) = p.m {
        d.f64(f64::from(m));
    }
    if let Some(probe) = p.probe {
        d.str(&probe.to_string());
    }
    if let Some(v) = variant {
        d.str(v.as_str());
    }
    d
}

fn sandwich_verdict(
    id: &'static str,
    variant: Option<Variant>,
    digest: &Digest,
    s: &Sandwich,
    labels: [&str; 3],
    tol: f64,
) -> Verdict {
    let mut v = VerdictBuilder::new(id, variant, digest);
    v.terms([s.scale]).le(labels[0], s.lower, labels[1], s.middle).le(labels[1], s.middle, labels[2], s.upper);
    v.finish(tol)
}

fn inequality_verdict(id: &'static str, digest: &Digest, i: &Inequality, labels: [&str; 2], tol: f64) -> Verdict {
    let mut v = VerdictBuilder::new(id, None, digest);
    v.terms([i.scale]).le(labels[0], i.lhs, labels[1], i.rhs);
    v.finish(tol)
}

fn phi_verdict(id: &'static str, digest: &Digest, s: &PhiSandwich, tol: f64) -> Verdict {
    let mut v = VerdictBuilder::new(id, None, digest);
    v.terms([s.chain.scale]);
    v.le("phi(z)-phi(w)", s.chain.lower, "phi(x)-phi(y)", s.chain.middle)
        .le("phi(x)-phi(y)", s.chain.middle, "phi(z')-phi(w')", s.chain.upper);
    for (label, link) in &s.hypotheses.links {
        v.terms([link.scale]).slack(label, link.slack());
    }
    v.finish(tol)
}

/// Evaluate a scalar check at `(a, b, ν)`.
pub fn evaluate_scalar(
    check: &CheckSpec,
    variant: Option<Variant>,
    params: &Params,
    a: f64,
    b: f64,
    nu: f64,
    tol: f64,
) -> Result<Verdict> {
    if check.kind != CheckKind::Scalar {
        return Err(domain(format!("`{}` is a matrix check", check.id)));
    }
    check.nu.require(nu)?;
    let v = variant.unwrap_or(Variant::Printed);
    let d = scalar_digest(check.id, a, b, nu, params, variant);
    let id = check.id;
    Ok(match id {
        "young-refined" => sandwich_verdict(
            "young-refined",
            variant,
            &d,
            &scalar::young_refined(a, b, nu, v)?,
            ["refined lower", "(1-v)a+vb", "reverse upper"],
            tol,
        ),
        "young-squared" => sandwich_verdict(
            "young-squared",
            variant,
            &d,
            &scalar::young_squared(a, b, nu, v)?,
            ["lower", "((1-v)a+vb)^2", "upper"],
            tol,
        ),
        "quadratic-gap" => sandwich_verdict(
            "quadratic-gap",
            variant,
            &d,
            &scalar::quadratic_gap_bounds(a, b, nu, v)?,
            ["lower", "gap", "upper"],
            tol,
        ),
        "heinz-mean" => sandwich_verdict(
            "heinz-mean",
            None,
            &d,
            &scalar::heinz_bounds(a, b, nu)?,
            ["sqrt(ab)", "H_v(a,b)", "(a+b)/2"],
            tol,
        ),
        "phi-sandwich" => {
            phi_verdict("phi-sandwich", &d, &scalar::phi_sandwich(need(params.probe, "a probe", id)?, a, b, nu)?, tol)
        }
        "heinz-sandwich" => {
            phi_verdict("heinz-sandwich", &d, &scalar::heinz_sandwich(need(params.probe, "a probe", id)?, a, b, nu)?, tol)
        }
        "power-sandwich" => sandwich_verdict(
            "power-sandwich",
            None,
            &d,
            &scalar::power_sandwich(need(params.m, "an order m", id)?, a, b, nu)?,
            ["z^m-w^m", "x^m-y^m", "z'^m-w'^m"],
            tol,
        ),
        "heinz-power-sandwich" => sandwich_verdict(
            "heinz-power-sandwich",
            None,
            &d,
            &scalar::heinz_power_sandwich(need(params.m, "an order m", id)?, a, b, nu)?,
            ["z^m-w^m", "x^m-y^m", "z'^m-w'^m"],
            tol,
        ),
        "lemma312" => inequality_verdict("lemma312", &d, &scalar::lemma312_gap(a, b, nu)?, ["lhs", "(a+b)^2"], tol),
        "squared-young" => inequality_verdict(
            "squared-young",
            &d,
            &scalar::squared_young_refined(a, b, nu)?,
            ["lhs", "(1-v)a^2+vb^2"],
            tol,
        ),
        other => return Err(Error::Parse(format!("unknown scalar check `{other}`"))),
    })
}

/// Evaluate a matrix check on a prepared sample.
pub fn evaluate_matrix(
    check: &CheckSpec,
    variant: Option<Variant>,
    params: &Params,
    s: &MatrixSample,
    nu: f64,
    tol: f64,
) -> Result<Verdict> {
    if check.kind != CheckKind::Matrix {
        return Err(domain(format!("`{}` is a scalar check", check.id)));
    }
    let id = check.id;
    let v = variant.unwrap_or(Variant::Printed);
    let (a, b, x) = (&s.a, &s.b, &s.x);
    let norm = || need(params.norm, "a norm spec", id);
    let m = || need(params.m, "an order m", id);
    let verdict = match id {
        "sv-young" => checks::check_sv_young(a, b, nu)?,
        "trace-young" => checks::check_classical_young(YoungForm::Trace, a, b, None, nu)?,
        "det-young" => checks::check_classical_young(YoungForm::Det, a, b, None, nu)?,
        "norm-young" => checks::check_classical_young(YoungForm::Norm(norm()?), a, b, Some(x), nu)?,
        "sababheh" => checks::check_sababheh(norm()?, a, b, x, nu, v)?,
        "zhaowu-hs" => checks::check_zhaowu_hs(a, b, x, nu, v)?,
        "thm34" => checks::check_thm34(a, b, nu, m()?)?,
        "thm35" => checks::check_thm35(a, b, nu, m()?, v)?,
        "thm36" => checks::check_thm36(norm()?, a, b, x, nu, m()?)?,
        "remark37-det" => checks::check_remark37_det(a, b, nu, m()?, v)?,
        "remark37-norm" => checks::check_remark37_norm(norm()?, a, b, x, nu, m()?, v)?,
        "prop38" => checks::check_prop38(a, b, x, nu, v)?,
        "thm39" => checks::check_thm39(need(params.probe, "a probe", id)?, a, b, x, nu, v)?,
        "example311" => checks::check_example311(a, b, x, nu, m()?, v)?,
        "thm313" => checks::check_thm313(a, b, x, nu)?,
        "prop314" => checks::check_prop314(norm()?, a, b, x, nu, v)?,
        "lemma31" => checks::check_lemma31(a, b)?,
        "lemma32" => checks::check_lemma32(norm()?, a, b, x, nu)?,
        "lemma33" => checks::check_lemma33(a, b)?,
        "bhatia-kittaneh" => checks::check_bhatia_kittaneh(norm()?, a, b, x)?,
        "hs-identities" => checks::check_hs_identities(a, b, x)?,
        other => return Err(Error::Parse(format!("unknown matrix check `{other}`"))),
    };
    let mut verdict = verdict.with_tolerance(tol);
    if check.variants.is_empty() {
        verdict.variant = None;
    }
    Ok(verdict)
}

/// Evaluate any check from serialized inputs.
pub fn evaluate(check: &CheckSpec, variant: Option<Variant>, inputs: &Inputs, tol: Option<f64>) -> Result<Verdict> {
    let params = check.complete(inputs.params());
    let variant = check.resolve_variant(variant);
    let tol = tol.unwrap_or(check.tol);
    match check.kind {
        CheckKind::Scalar => {
            let a = need(inputs.a, "scalar a", check.id)?;
            let b = need(inputs.b, "scalar b", check.id)?;
            let nu = need(inputs.nu, "ν", check.id)?;
            evaluate_scalar(check, variant, &params, a, b, nu, tol)
        }
        CheckKind::Matrix => {
            let sample = MatrixSample::from_inputs(inputs)?;
            let nu = match check.nu {
                crate::checks::NuRange::None => inputs.nu.unwrap_or(0.5),
                _ => need(inputs.nu, "ν", check.id)?,
            };
            evaluate_matrix(check, variant, &params, &sample, nu, tol)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::registry::lookup;

    #[test]
    fn inputs_json_shape() {
        let json = r#"{"A": [[[2.0, 0.0]]], "B": [[[3.0, 0.0]]], "X": [[[1.0, 0.0]]]}"#;
        let inputs: Inputs = serde_json::from_str(json).unwrap();
        let v = evaluate(&lookup("hs-identities").unwrap(), None, &inputs, None).unwrap();
        assert!(v.holds);
        assert!(serde_json::from_str::<Inputs>(r#"{"Y": 1}"#).is_err());
    }

    #[test]
    fn scalar_inputs() {
        let inputs = Inputs { a: Some(16.0), b: Some(1.0), nu: Some(0.25), ..Inputs::default() };
        let v = evaluate(&lookup("young-refined").unwrap(), None, &inputs, None).unwrap();
        assert_eq!(v.variant, Some(Variant::Corrected));
        assert_eq!(v.chain[1].value, 12.25);
        let missing = Inputs { a: Some(1.0), ..Inputs::default() };
        assert!(evaluate(&lookup("young-refined").unwrap(), None, &missing, None).is_err());
    }

    #[test]
    fn sample_round_trip_is_bit_exact() {
        let a = crate::sampling::gen_psd(11, 4).unwrap();
        let b = crate::sampling::gen_psd(12, 4).unwrap();
        let x = crate::sampling::gen_matrix(13, 4, 4).unwrap();
        let s = MatrixSample { a, b, x };
        let text = serde_json::to_string(&s.to_inputs()).unwrap();
        let back = MatrixSample::from_inputs(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.a, s.a);
        assert_eq!(back.b, s.b);
        assert_eq!(back.x, s.x);
    }
}
