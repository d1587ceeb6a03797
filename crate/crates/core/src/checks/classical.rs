//! Unrefined Young-type inequalities and the auxiliary lemmas.

use super::{
    convex_combination, digest_of, require_pd, same_dim, NuRange, Verdict, VerdictBuilder, MATRIX_TOL,
};
use crate::error::{domain, Result};
use crate::matrix::{singular_values, ComplexMatrix, HermitianPSD};
use crate::norms::{norm, NormSpec};

/// `s_j(A^{1−ν}B^ν) ≤ s_j((1−ν)A + νB)` for every index j.
pub fn check_sv_young(a: &HermitianPSD, b: &HermitianPSD, nu: f64) -> Result<Verdict> {
    same_dim(a, b, None)?;
    NuRange::Closed.require(nu)?;
    let lhs = singular_values(&(&a.frac_power(1.0 - nu)? * &b.frac_power(nu)?))?;
    let rhs = singular_values(&convex_combination(a, b, nu))?;
    let digest = digest_of(a, b, None, &[nu], &[]);
    let mut v = VerdictBuilder::new("sv-young", None, &digest);
    for (j, (l, r)) in lhs.iter().zip(&rhs).enumerate() {
        v.le(&format!("s{}(A^(1-v)B^v)", j + 1), *l, &format!("s{}((1-v)A+vB)", j + 1), *r);
    }
    Ok(v.finish(MATRIX_TOL))
}

/// Which classical Young inequality to check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum YoungForm {
    /// `tr|A^{1−ν}B^ν| ≤ tr((1−ν)A + νB)`
    Trace,
    /// `det(A)^{1−ν}det(B)^ν ≤ det((1−ν)A + νB)`
    Det,
    /// `‖A^{1−ν}XB^ν‖ ≤ (1−ν)‖AX‖ + ν‖XB‖`
    Norm(NormSpec),
}

pub fn check_classical_young(
    form: YoungForm,
    a: &HermitianPSD,
    b: &HermitianPSD,
    x: Option<&ComplexMatrix>,
    nu: f64,
) -> Result<Verdict> {
    same_dim(a, b, x)?;
    match form {
        YoungForm::Trace => {
            NuRange::Closed.require(nu)?;
            let s = singular_values(&(&a.frac_power(1.0 - nu)? * &b.frac_power(nu)?))?;
            let lhs: f64 = s.iter().sum();
            let rhs = convex_combination(a, b, nu).trace().re;
            let digest = digest_of(a, b, None, &[nu], &[]);
            let mut v = VerdictBuilder::new("trace-young", None, &digest);
            v.terms(s).le("tr|A^(1-v)B^v|", lhs, "tr((1-v)A+vB)", rhs);
            Ok(v.finish(MATRIX_TOL))
        }
        YoungForm::Det => {
            NuRange::Closed.require(nu)?;
            let lhs = a.det().powf(1.0 - nu) * b.det().powf(nu);
            let rhs = convex_combination(a, b, nu).det()?.re;
            let digest = digest_of(a, b, None, &[nu], &[]);
            let mut v = VerdictBuilder::new("det-young", None, &digest);
            v.terms([a.det(), b.det()]).le("det(A)^(1-v)det(B)^v", lhs, "det((1-v)A+vB)", rhs);
            Ok(v.finish(MATRIX_TOL))
        }
        YoungForm::Norm(spec) => {
            NuRange::OpenClosed.require(nu)?;
            let x = x.ok_or_else(|| domain("the norm form needs X"))?;
            let y = norm(spec, &(&(&a.frac_power(1.0 - nu)? * x) * &b.frac_power(nu)?))?;
            let p = norm(spec, &(a.matrix() * x))?;
            let q = norm(spec, &(x * b.matrix()))?;
            let tag = spec.to_string();
            let digest = digest_of(a, b, Some(x), &[nu], &[&tag]);
            let mut v = VerdictBuilder::new("norm-young", None, &digest);
            v.terms([p, q]).le("|||A^(1-v)XB^v|||", y, "(1-v)|||AX|||+v|||XB|||", (1.0 - nu) * p + nu * q);
            Ok(v.finish(MATRIX_TOL))
        }
    }
}

/// `Σ_j s_j(AB) ≤ Σ_j s_j(A) s_j(B)`.
pub fn check_lemma31(a: &HermitianPSD, b: &HermitianPSD) -> Result<Verdict> {
    same_dim(a, b, None)?;
    let s = singular_values(&(a.matrix() * b.matrix()))?;
    let lhs: f64 = s.iter().sum();
    let rhs: f64 = a.eigenvalues().iter().zip(b.eigenvalues()).map(|(x, y)| x * y).sum();
    let digest = digest_of(a, b, None, &[], &[]);
    let mut v = VerdictBuilder::new("lemma31", None, &digest);
    v.terms(s).le("sum s_j(AB)", lhs, "sum s_j(A)s_j(B)", rhs);
    Ok(v.finish(MATRIX_TOL))
}

/// `‖A^{1−ν}XB^ν‖ ≤ ‖AX‖^{1−ν}‖XB‖^ν`.
pub fn check_lemma32(
    spec: NormSpec,
    a: &HermitianPSD,
    b: &HermitianPSD,
    x: &ComplexMatrix,
    nu: f64,
) -> Result<Verdict> {
    same_dim(a, b, Some(x))?;
    NuRange::Closed.require(nu)?;
    let y = norm(spec, &(&(&a.frac_power(1.0 - nu)? * x) * &b.frac_power(nu)?))?;
    let p = norm(spec, &(a.matrix() * x))?;
    let q = norm(spec, &(x * b.matrix()))?;
    let tag = spec.to_string();
    let digest = digest_of(a, b, Some(x), &[nu], &[&tag]);
    let mut v = VerdictBuilder::new("lemma32", None, &digest);
    v.terms([p, q]).le("|||A^(1-v)XB^v|||", y, "|||AX|||^(1-v)|||XB|||^v", p.powf(1.0 - nu) * q.powf(nu));
    Ok(v.finish(MATRIX_TOL))
}

/// `det(A)^{1/n} + det(B)^{1/n} ≤ det(A + B)^{1/n}` for positive definite A, B.
pub fn check_lemma33(a: &HermitianPSD, b: &HermitianPSD) -> Result<Verdict> {
    same_dim(a, b, None)?;
    require_pd(a, "A")?;
    require_pd(b, "B")?;
    let n = a.dim() as f64;
    let sum = (a.matrix() + b.matrix()).det()?.re;
    let lhs = a.det().powf(1.0 / n) + b.det().powf(1.0 / n);
    let digest = digest_of(a, b, None, &[], &[]);
    let mut v = VerdictBuilder::new("lemma33", None, &digest);
    v.le("det(A)^(1/n)+det(B)^(1/n)", lhs, "det(A+B)^(1/n)", sum.max(0.0).powf(1.0 / n));
    Ok(v.finish(MATRIX_TOL))
}

/// `2‖A^{1/2}XB^{1/2}‖ ≤ ‖AX + XB‖`.
pub fn check_bhatia_kittaneh(
    spec: NormSpec,
    a: &HermitianPSD,
    b: &HermitianPSD,
    x: &ComplexMatrix,
) -> Result<Verdict> {
    same_dim(a, b, Some(x))?;
    let mid = &(&a.frac_power(0.5)? * x) * &b.frac_power(0.5)?;
    let lhs = 2.0 * norm(spec, &mid)?;
    let ax = a.matrix() * x;
    let xb = x * b.matrix();
    let rhs = norm(spec, &(&ax + &xb))?;
    let tag = spec.to_string();
    let digest = digest_of(a, b, Some(x), &[], &[&tag]);
    let mut v = VerdictBuilder::new("bhatia-kittaneh", None, &digest);
    v.terms([norm(spec, &ax)?, norm(spec, &xb)?]).le("2|||A^(1/2)XB^(1/2)|||", lhs, "|||AX+XB|||", rhs);
    Ok(v.finish(MATRIX_TOL))
}
