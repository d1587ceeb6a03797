//! Refinements built from scalar summaries (traces, determinants, norms) and
//! their m-th powers.
//!
//! Subtracted bases such as `2ν√(PQ) − r₀(⁴√(PQ) − √P)²` may be negative;
//! they are raised to integer powers as signed reals.

use super::{
    convex_combination, digest_of, require_order, require_pd, same_dim, NuRange, Verdict, VerdictBuilder,
    MATRIX_TOL,
};
use crate::error::Result;
use crate::matrix::{singular_values, ComplexMatrix, HermitianPSD};
use crate::norms::{norm, NormSpec};
use crate::scalar::nu_context;
use crate::Variant;

fn spow(base: f64, m: u32) -> f64 {
    base.powi(m as i32)
}

/// Powered refinement for a pair of positive summaries `(p, q)`, weight ν
/// and order m, following the lower branch for ν ≤ 1/2 and the mirrored
/// branch otherwise:
///
/// `c^m (p+q)^m − (2c√(pq) − r₀(⁴√(pq) − √s)²)^m`
///
/// with `c = ν, s = p` below 1/2 and `c = 1 − ν, s = q` above.
struct PoweredBlock {
    correction: f64,
    floor: f64,
}

fn powered_block(p: f64, q: f64, nu: f64, m: u32, upper_branch: bool) -> Result<PoweredBlock> {
    let ctx = nu_context(nu)?;
    let g = (p * q).sqrt();
    let (c, side) = if upper_branch { (1.0 - nu, q) } else { (nu, p) };
    let base = 2.0 * c * g - ctx.r0 * (g.sqrt() - side.sqrt()).powi(2);
    Ok(PoweredBlock { correction: spow(c * (p + q), m), floor: spow(base, m) })
}

/// Shared evaluation for the trace and norm versions: `lhs ≤ mid ≤ rhs` with
/// `lhs = t^m + block`, `mid = (p^{1−ν}q^ν)^m + block`, `rhs = ((1−ν)p + νq)^m`.
fn powered_chain(v: &mut VerdictBuilder, t: f64, p: f64, q: f64, nu: f64, m: u32, upper: bool, labels: [&str; 3]) -> Result<()> {
    let blk = powered_block(p, q, nu, m, upper)?;
    let lhs = spow(t, m) + blk.correction - blk.floor;
    let mid = spow(p.powf(1.0 - nu) * q.powf(nu), m) + blk.correction - blk.floor;
    let rhs = spow((1.0 - nu) * p + nu * q, m);
    v.terms([spow(t, m), blk.correction, blk.floor, spow(p + q, m)]);
    v.le(labels[0], lhs, labels[1], mid).le(labels[1], mid, labels[2], rhs);
    Ok(())
}

/// Trace refinement of Young's inequality raised to the m-th power, positive
/// definite A, B. For ν ≤ 1/2 the lower branch is checked, for ν ≥ 1/2 the
/// mirrored one; at ν = 1/2 both.
pub fn check_thm34(a: &HermitianPSD, b: &HermitianPSD, nu: f64, m: u32) -> Result<Verdict> {
    same_dim(a, b, None)?;
    NuRange::OpenClosed.require(nu)?;
    require_order(m, 1)?;
    require_pd(a, "A")?;
    require_pd(b, "B")?;
    let t: f64 = singular_values(&(&a.frac_power(1.0 - nu)? * &b.frac_power(nu)?))?.iter().sum();
    let (ta, tb) = (a.trace(), b.trace());
    let digest = digest_of(a, b, None, &[nu, f64::from(m)], &[]);
    let mut v = VerdictBuilder::new("thm34", None, &digest);
    if nu <= 0.5 {
        powered_chain(&mut v, t, ta, tb, nu, m, false, ["lhs", "mid", "(tr((1-v)A+vB))^m"])?;
    }
    if nu >= 0.5 {
        powered_chain(&mut v, t, ta, tb, nu, m, true, ["lhs'", "mid'", "(tr((1-v)A+vB))^m"])?;
    }
    Ok(v.finish(MATRIX_TOL))
}

/// Determinant refinement, shared by the ν ≤ 1/2 statement and its mirror.
fn det_refinement(
    id: &'static str,
    a: &HermitianPSD,
    b: &HermitianPSD,
    nu: f64,
    m: u32,
    variant: Variant,
    upper: bool,
) -> Result<Verdict> {
    same_dim(a, b, None)?;
    require_order(m, 1)?;
    require_pd(a, "A")?;
    require_pd(b, "B")?;
    let n = a.dim() as u32;
    let (da, db) = (a.det(), b.det());
    let rhs = spow(convex_combination(a, b, nu).det()?.re, m);
    let geo = spow(da.powf(1.0 - nu) * db.powf(nu), m);
    let digest = digest_of(a, b, None, &[nu, f64::from(m)], &[variant.as_str()]);
    let mut v = VerdictBuilder::new(id, Some(variant), &digest);
    match variant {
        Variant::Printed => {
            // the typeset form: determinants enter directly with power m,
            // only the weight carries the exponent mn
            let ctx = nu_context(nu)?;
            let g = (da * db).sqrt();
            let (c, side) = if upper { (1.0 - nu, db) } else { (nu, da) };
            let base = 2.0 * c * g - ctx.r0 * (g.sqrt() - side.sqrt()).powi(2);
            let correction = c.powi((m * n) as i32) * spow(da + db, m);
            let floor = spow(base, m);
            let lhs = geo + correction - floor;
            v.terms([geo, correction, floor, rhs]).le("lhs", lhs, "det((1-v)A+vB)^m", rhs);
        }
        Variant::Corrected => {
            // the Minkowski step reduces to scalars α = det(A)^{1/n},
            // β = det(B)^{1/n} with power mn
            let inv = 1.0 / f64::from(n);
            let (al, be) = (da.powf(inv), db.powf(inv));
            let blk = powered_block(al, be, nu, m * n, upper)?;
            let lhs = geo + blk.correction - blk.floor;
            let mid = spow((1.0 - nu) * al + nu * be, m * n);
            v.terms([geo, blk.correction, blk.floor, spow(al + be, m * n)]);
            v.le("lhs", lhs, "((1-v)a+vb)^(mn)", mid).le("((1-v)a+vb)^(mn)", mid, "det((1-v)A+vB)^m", rhs);
        }
    }
    Ok(v.finish(MATRIX_TOL))
}

/// Determinant refinement for 0 < ν ≤ 1/2.
pub fn check_thm35(a: &HermitianPSD, b: &HermitianPSD, nu: f64, m: u32, variant: Variant) -> Result<Verdict> {
    NuRange::LowerHalf.require(nu)?;
    det_refinement("thm35", a, b, nu, m, variant, false)
}

/// Determinant refinement for 1/2 ≤ ν ≤ 1.
pub fn check_remark37_det(a: &HermitianPSD, b: &HermitianPSD, nu: f64, m: u32, variant: Variant) -> Result<Verdict> {
    NuRange::UpperHalf.require(nu)?;
    det_refinement("remark37-det", a, b, nu, m, variant, true)
}

struct NormTriple {
    y: f64,
    p: f64,
    q: f64,
}

fn norm_triple(spec: NormSpec, a: &HermitianPSD, b: &HermitianPSD, x: &ComplexMatrix, nu: f64) -> Result<NormTriple> {
    same_dim(a, b, Some(x))?;
    Ok(NormTriple {
        y: norm(spec, &(&(&a.frac_power(1.0 - nu)? * x) * &b.frac_power(nu)?))?,
        p: norm(spec, &(a.matrix() * x))?,
        q: norm(spec, &(x * b.matrix()))?,
    })
}

/// Norm refinement for 0 < ν ≤ 1/2, m ≥ 1, positive definite A, B.
pub fn check_thm36(
    spec: NormSpec,
    a: &HermitianPSD,
    b: &HermitianPSD,
    x: &ComplexMatrix,
    nu: f64,
    m: u32,
) -> Result<Verdict> {
    NuRange::LowerHalf.require(nu)?;
    require_order(m, 1)?;
    require_pd(a, "A")?;
    require_pd(b, "B")?;
    let NormTriple { y, p, q } = norm_triple(spec, a, b, x, nu)?;
    let tag = spec.to_string();
    let digest = digest_of(a, b, Some(x), &[nu, f64::from(m)], &[&tag]);
    let mut v = VerdictBuilder::new("thm36", None, &digest);
    powered_chain(&mut v, y, p, q, nu, m, false, ["lhs", "mid", "((1-v)|||AX|||+v|||XB|||)^m"])?;
    Ok(v.finish(MATRIX_TOL))
}

/// Norm refinement for 1/2 ≤ ν ≤ 1. `Printed` evaluates the typeset floor
/// `2(1−ν)√(PQ) − r₀⁴√(PQ) − √Q`, which has lost its square.
pub fn check_remark37_norm(
    spec: NormSpec,
    a: &HermitianPSD,
    b: &HermitianPSD,
    x: &ComplexMatrix,
    nu: f64,
    m: u32,
    variant: Variant,
) -> Result<Verdict> {
    NuRange::UpperHalf.require(nu)?;
    require_order(m, 1)?;
    require_pd(a, "A")?;
    require_pd(b, "B")?;
    let NormTriple { y, p, q } = norm_triple(spec, a, b, x, nu)?;
    let tag = spec.to_string();
    let digest = digest_of(a, b, Some(x), &[nu, f64::from(m)], &[&tag, variant.as_str()]);
    let mut v = VerdictBuilder::new("remark37-norm", Some(variant), &digest);
    let labels = ["lhs", "mid", "((1-v)|||AX|||+v|||XB|||)^m"];
    match variant {
        Variant::Corrected => powered_chain(&mut v, y, p, q, nu, m, true, labels)?,
        Variant::Printed => {
            let r0 = nu_context(nu)?.r0;
            let g = (p * q).sqrt();
            let floor = spow(2.0 * (1.0 - nu) * g - r0 * g.sqrt() - q.sqrt(), m);
            let correction = spow((1.0 - nu) * (p + q), m);
            let lhs = spow(y, m) + correction - floor;
            let rhs = spow((1.0 - nu) * p + nu * q, m);
            v.terms([spow(y, m), correction, floor, spow(p + q, m)]).le(labels[0], lhs, labels[2], rhs);
        }
    }
    Ok(v.finish(MATRIX_TOL))
}

/// `‖A^{1−ν}XB^ν‖ + ν(P+Q) − (2ν√(PQ) − r₀(√P ∓ ⁴√(PQ))²) ≤ (1−ν)P + νQ`
/// for 0 < ν ≤ 1/2, with `P = ‖AX‖`, `Q = ‖XB‖`. `Corrected` takes the minus
/// sign inside the square, `Printed` the typeset plus.
pub fn check_sababheh(
    spec: NormSpec,
    a: &HermitianPSD,
    b: &HermitianPSD,
    x: &ComplexMatrix,
    nu: f64,
    variant: Variant,
) -> Result<Verdict> {
    NuRange::LowerHalf.require(nu)?;
    let NormTriple { y, p, q } = norm_triple(spec, a, b, x, nu)?;
    let r0 = nu_context(nu)?.r0;
    let g = (p * q).sqrt();
    let inner = match variant {
        Variant::Corrected => p.sqrt() - g.sqrt(),
        Variant::Printed => p.sqrt() + g.sqrt(),
    };
    let floor = 2.0 * nu * g - r0 * inner * inner;
    let lhs = y + nu * (p + q) - floor;
    let rhs = (1.0 - nu) * p + nu * q;
    let tag = spec.to_string();
    let digest = digest_of(a, b, Some(x), &[nu], &[&tag, variant.as_str()]);
    let mut v = VerdictBuilder::new("sababheh", Some(variant), &digest);
    v.terms([p, q, floor]).le("lhs", lhs, "(1-v)|||AX|||+v|||XB|||", rhs);
    Ok(v.finish(MATRIX_TOL))
}

/// Heinz-type norm refinement for 0 < ν ≤ 1/2:
/// `‖A^{1−ν}XB^ν + A^νXB^{1−ν}‖ ≤ (1−2ν)(P+Q) + 4ν√(PQ) − r₀((√P−⁴√(PQ))² + (√Q−⁴√(PQ))²)`.
/// `Printed` evaluates the typeset `(1−2ν)(P+Q) − (2(2ν√(PQ)) − r₀((√P+⁴√(PQ))² + (√Q+⁴√(PQ))²))`.
pub fn check_prop314(
    spec: NormSpec,
    a: &HermitianPSD,
    b: &HermitianPSD,
    x: &ComplexMatrix,
    nu: f64,
    variant: Variant,
) -> Result<Verdict> {
    NuRange::LowerHalf.require(nu)?;
    same_dim(a, b, Some(x))?;
    let sum = &(&(&a.frac_power(1.0 - nu)? * x) * &b.frac_power(nu)?) + &(&(&a.frac_power(nu)? * x) * &b.frac_power(1.0 - nu)?);
    let lhs = norm(spec, &sum)?;
    let p = norm(spec, &(a.matrix() * x))?;
    let q = norm(spec, &(x * b.matrix()))?;
    let r0 = nu_context(nu)?.r0;
    let g = (p * q).sqrt();
    let f = g.sqrt();
    let rhs = match variant {
        Variant::Corrected => {
            (1.0 - 2.0 * nu) * (p + q) + 4.0 * nu * g - r0 * ((p.sqrt() - f).powi(2) + (q.sqrt() - f).powi(2))
        }
        Variant::Printed => {
            (1.0 - 2.0 * nu) * (p + q)
                - (2.0 * (2.0 * nu * g) - r0 * ((p.sqrt() + f).powi(2) + (q.sqrt() + f).powi(2)))
        }
    };
    let tag = spec.to_string();
    let digest = digest_of(a, b, Some(x), &[nu], &[&tag, variant.as_str()]);
    let mut v = VerdictBuilder::new("prop314", Some(variant), &digest);
    v.terms([p, q]).le("|||A^(1-v)XB^v+A^vXB^(1-v)|||", lhs, "rhs", rhs);
    Ok(v.finish(MATRIX_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: f64) -> HermitianPSD {
        HermitianPSD::new(ComplexMatrix::diag(&[v])).unwrap()
    }

    #[test]
    fn sababheh_identity_counterexample() {
        let id = s(1.0);
        let x = ComplexMatrix::identity(1);
        let p = check_sababheh(NormSpec::HilbertSchmidt, &id, &id, &x, 0.3, Variant::Printed).unwrap();
        assert!((p.min_slack() + 1.6).abs() < 1e-12, "{p:?}");
        assert!(!p.holds);
        let c = check_sababheh(NormSpec::HilbertSchmidt, &id, &id, &x, 0.3, Variant::Corrected).unwrap();
        assert!(c.min_slack().abs() < 1e-15);
    }

    #[test]
    fn thm34_scalar_identity_is_tight() {
        let id = s(1.0);
        let v = check_thm34(&id, &id, 0.3, 2).unwrap();
        assert!((v.chain[0].value - 1.0).abs() < 1e-15);
        assert!(v.min_slack().abs() < 1e-15);
    }

    #[test]
    fn equal_pd_pair_is_tight_at_first_order() {
        let a = HermitianPSD::new(ComplexMatrix::diag(&[2.0, 0.5, 3.0])).unwrap();
        let v = check_thm34(&a, &a, 0.4, 1).unwrap();
        assert!(v.min_slack().abs() < 1e-13);
        let x = ComplexMatrix::identity(3);
        let v = check_thm36(NormSpec::HilbertSchmidt, &a, &a, &x, 0.4, 1).unwrap();
        assert!(v.min_slack().abs() < 1e-13);
    }

    #[test]
    fn prop314_identity() {
        let id = s(1.0);
        let x = ComplexMatrix::identity(1);
        let c = check_prop314(NormSpec::HilbertSchmidt, &id, &id, &x, 0.3, Variant::Corrected).unwrap();
        assert_eq!(c.chain[0].value, 2.0);
        assert!((c.chain[1].value - 2.0).abs() < 1e-15);
    }

    #[test]
    fn det_identity_pair_holds() {
        let id = HermitianPSD::new(ComplexMatrix::identity(2)).unwrap();
        for m in 1..=3 {
            for variant in [Variant::Printed, Variant::Corrected] {
                assert!(check_thm35(&id, &id, 0.25, m, variant).unwrap().holds);
            }
        }
    }

    #[test]
    fn pd_required() {
        let sing = s(0.0);
        assert!(check_thm34(&sing, &s(1.0), 0.3, 1).is_err());
    }
}
