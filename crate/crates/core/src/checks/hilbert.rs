//! Hilbert–Schmidt refinements and their convex-function compositions.

use super::{digest_of, require_order, same_dim, NuRange, Verdict, VerdictBuilder, IDENTITY_TOL, MATRIX_TOL};
use crate::error::Result;
use crate::matrix::{ComplexMatrix, HermitianPSD};
use crate::scalar::{nu_context, ConvexProbe, NuContext, SandwichPoints};
use crate::Variant;

/// Squared Hilbert–Schmidt norms shared by the HS checks, so that checks
/// built from the same quantities also share one rounding scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsTerms {
    /// `‖AX + XB‖²`
    pub sum: f64,
    /// `‖AX − XB‖²`
    pub diff: f64,
    /// `‖A^{1/2}XB^{1/2}‖²`
    pub half: f64,
    /// `‖A^{3/4}XB^{1/4}‖²`
    pub a_quarter: f64,
    /// `‖A^{1/4}XB^{3/4}‖²`
    pub b_quarter: f64,
    /// `‖A^{1/2}XB^{1/2} + AX‖²`
    pub a_plus: f64,
    /// `‖A^{1/2}XB^{1/2} + XB‖²`
    pub b_plus: f64,
    /// `‖A^{1/2}XB^{1/2} − AX‖²`
    pub a_minus: f64,
    /// `‖A^{1/2}XB^{1/2} − XB‖²`
    pub b_minus: f64,
}

impl HsTerms {
    pub fn new(a: &HermitianPSD, b: &HermitianPSD, x: &ComplexMatrix) -> Result<Self> {
        same_dim(a, b, Some(x))?;
        let ax = a.matrix() * x;
        let xb = x * b.matrix();
        let mid = &(&a.frac_power(0.5)? * x) * &b.frac_power(0.5)?;
        let aq = &(&a.frac_power(0.75)? * x) * &b.frac_power(0.25)?;
        let bq = &(&a.frac_power(0.25)? * x) * &b.frac_power(0.75)?;
        Ok(Self {
            sum: (&ax + &xb).hs_norm_sq(),
            diff: (&ax - &xb).hs_norm_sq(),
            half: mid.hs_norm_sq(),
            a_quarter: aq.hs_norm_sq(),
            b_quarter: bq.hs_norm_sq(),
            a_plus: (&mid + &ax).hs_norm_sq(),
            b_plus: (&mid + &xb).hs_norm_sq(),
            a_minus: (&mid - &ax).hs_norm_sq(),
            b_minus: (&mid - &xb).hs_norm_sq(),
        })
    }

    pub fn all(&self) -> [f64; 9] {
        [
            self.sum,
            self.diff,
            self.half,
            self.a_quarter,
            self.b_quarter,
            self.a_plus,
            self.b_plus,
            self.a_minus,
            self.b_minus,
        ]
    }
}

/// `‖(1−ν)AX + νXB‖²` and `‖A^{1−ν}XB^ν‖²`.
fn young_gap_terms(a: &HermitianPSD, b: &HermitianPSD, x: &ComplexMatrix, nu: f64) -> Result<(f64, f64)> {
    let ax = a.matrix() * x;
    let xb = x * b.matrix();
    let mean = (&ax.scale(1.0 - nu) + &xb.scale(nu)).hs_norm_sq();
    let geo = (&(&a.frac_power(1.0 - nu)? * x) * &b.frac_power(nu)?).hs_norm_sq();
    Ok((mean, geo))
}

const LOWER: &str = "lower";
const GAP: &str = "|||(1-v)AX+vXB|||^2-|||A^(1-v)XB^v|||^2";
const UPPER: &str = "upper";

fn gap_chain(v: &mut VerdictBuilder, lower: f64, gap: f64, upper: f64) {
    v.le(LOWER, lower, GAP, gap).le(GAP, gap, UPPER, upper);
}

/// Refined and reversed Young inequalities for the squared HS norm.
///
/// For ν ≤ 1/2 both variants evaluate
/// `r²‖AX−XB‖² + r₀‖A^{1/2}XB^{1/2}−AX‖² ≤ gap ≤ R²‖AX−XB‖² − r₀‖A^{1/2}XB^{1/2}−XB‖²`.
/// For ν > 1/2 `Corrected` keeps `r²` below and `R²` above with the
/// refinement terms mirrored, while `Printed` exchanges `r²` and `R²`.
pub fn check_zhaowu_hs(
    a: &HermitianPSD,
    b: &HermitianPSD,
    x: &ComplexMatrix,
    nu: f64,
    variant: Variant,
) -> Result<Verdict> {
    NuRange::Open.require(nu)?;
    let t = HsTerms::new(a, b, x)?;
    let (mean, geo) = young_gap_terms(a, b, x, nu)?;
    let NuContext { r, big_r, r0, .. } = nu_context(nu)?;
    let (lower, upper) = if nu <= 0.5 {
        (r * r * t.diff + r0 * t.a_minus, big_r * big_r * t.diff - r0 * t.b_minus)
    } else {
        match variant {
            Variant::Corrected => (r * r * t.diff + r0 * t.b_minus, big_r * big_r * t.diff - r0 * t.a_minus),
            Variant::Printed => (big_r * big_r * t.diff + r0 * t.b_minus, r * r * t.diff - r0 * t.a_minus),
        }
    };
    let digest = digest_of(a, b, Some(x), &[nu], &[variant.as_str()]);
    let mut v = VerdictBuilder::new("zhaowu-hs", Some(variant), &digest);
    v.terms(t.all()).terms([mean, geo]);
    gap_chain(&mut v, lower, mean - geo, upper);
    Ok(v.finish(MATRIX_TOL))
}

/// The same bounds rewritten through `‖AX−XB‖² = ‖AX+XB‖² − 4‖A^{1/2}XB^{1/2}‖²`
/// and its two one-sided companions.
///
/// `Corrected` substitutes the identities exactly, so it equals
/// [`check_zhaowu_hs`] (Corrected) up to rounding. `Printed` evaluates the
/// typeset factor and sign placement.
pub fn check_prop38(
    a: &HermitianPSD,
    b: &HermitianPSD,
    x: &ComplexMatrix,
    nu: f64,
    variant: Variant,
) -> Result<Verdict> {
    NuRange::Open.require(nu)?;
    let t = HsTerms::new(a, b, x)?;
    let (mean, geo) = young_gap_terms(a, b, x, nu)?;
    let NuContext { r, big_r, r0, .. } = nu_context(nu)?;
    let (r2, rr2) = (r * r, big_r * big_r);
    let (lower, upper) = match (variant, nu <= 0.5) {
        (Variant::Corrected, true) => (
            r2 * t.sum - (4.0 * (r2 * t.half + r0 * t.a_quarter) - r0 * t.a_plus),
            rr2 * t.sum - (4.0 * (rr2 * t.half - r0 * t.b_quarter) + r0 * t.b_plus),
        ),
        (Variant::Corrected, false) => (
            r2 * t.sum - (4.0 * (r2 * t.half + r0 * t.b_quarter) - r0 * t.b_plus),
            rr2 * t.sum - (4.0 * (rr2 * t.half - r0 * t.a_quarter) + r0 * t.a_plus),
        ),
        (Variant::Printed, true) => (
            r2 * t.sum - 4.0 * (r2 * t.half + r0 * t.a_quarter - r0 * t.a_plus),
            rr2 * t.sum - (4.0 * (rr2 * t.half + t.b_quarter) - r0 * t.b_plus),
        ),
        (Variant::Printed, false) => (
            rr2 * t.sum - (4.0 * (rr2 * t.half + r0 * t.b_quarter) - r0 * t.b_minus),
            r2 * t.sum - (4.0 * (r2 * t.half + r0 * t.a_quarter) - r0 * t.a_plus),
        ),
    };
    let digest = digest_of(a, b, Some(x), &[nu], &[variant.as_str()]);
    let mut v = VerdictBuilder::new("prop38", Some(variant), &digest);
    v.terms(t.all()).terms([mean, geo]);
    gap_chain(&mut v, lower, mean - geo, upper);
    Ok(v.finish(MATRIX_TOL))
}

/// Sandwich points of the HS refinement for 0 < ν ≤ 1/2: `x`, `y` are the two
/// squared norms of the Young gap, `(z, w)` and `(z′, w′)` the lower and upper
/// pairs whose differences bracket `x − y`.
fn thm39_points(
    a: &HermitianPSD,
    b: &HermitianPSD,
    x: &ComplexMatrix,
    nu: f64,
    variant: Variant,
) -> Result<(SandwichPoints, HsTerms)> {
    NuRange::LowerHalf.require(nu)?;
    let t = HsTerms::new(a, b, x)?;
    let (mean, geo) = young_gap_terms(a, b, x, nu)?;
    let NuContext { r, big_r, r0, .. } = nu_context(nu)?;
    let (r2, rr2) = (r * r, big_r * big_r);
    let w_upper = match variant {
        Variant::Corrected => 4.0 * (rr2 * t.half - r0 * t.b_quarter) + r0 * t.b_plus,
        Variant::Printed => 4.0 * (rr2 * t.half + t.b_quarter) - r0 * t.b_plus,
    };
    let points = SandwichPoints {
        x: mean,
        y: geo,
        z: r2 * t.sum,
        w: 4.0 * (r2 * t.half + r0 * t.a_quarter) - r0 * t.a_plus,
        z_upper: rr2 * t.sum,
        w_upper,
    };
    Ok((points, t))
}

fn push_hypotheses(v: &mut VerdictBuilder, points: &SandwichPoints) {
    for (label, link) in points.hypotheses().links {
        v.slack(label, link.slack());
    }
}

/// `φ(z) − φ(w) ≤ φ(‖(1−ν)AX+νXB‖²) − φ(‖A^{1−ν}XB^ν‖²) ≤ φ(z′) − φ(w′)`,
/// with the hypotheses `w ≤ z ≤ x`, `y ≤ x`, `z−w ≤ x−y`, `x ≤ z′`, `w′ ≤ z′`
/// and `x−y ≤ z′−w′` checked as extra links.
pub fn check_thm39(
    probe: ConvexProbe,
    a: &HermitianPSD,
    b: &HermitianPSD,
    x: &ComplexMatrix,
    nu: f64,
    variant: Variant,
) -> Result<Verdict> {
    let (points, t) = thm39_points(a, b, x, nu, variant)?;
    let s = points.compose_probe(probe)?;
    let tag = probe.to_string();
    let digest = digest_of(a, b, Some(x), &[nu], &[&tag, variant.as_str()]);
    let mut v = VerdictBuilder::new("thm39", Some(variant), &digest);
    v.terms(t.all()).terms([s.chain.scale]);
    v.le("phi(z)-phi(w)", s.chain.lower, "phi(x)-phi(y)", s.chain.middle)
        .le("phi(x)-phi(y)", s.chain.middle, "phi(z')-phi(w')", s.chain.upper);
    push_hypotheses(&mut v, &points);
    Ok(v.finish(MATRIX_TOL))
}

/// The `x^{m/2}` instance of [`check_thm39`], m ≥ 2. `Printed` evaluates the
/// typeset parenthesization of the lower floor, `(4r²H + r₀T − r₀U)^{m/2}`.
pub fn check_example311(
    a: &HermitianPSD,
    b: &HermitianPSD,
    x: &ComplexMatrix,
    nu: f64,
    m: u32,
    variant: Variant,
) -> Result<Verdict> {
    require_order(m, 2)?;
    let (mut points, t) = thm39_points(a, b, x, nu, variant)?;
    if variant == Variant::Printed {
        let NuContext { r, r0, .. } = nu_context(nu)?;
        points.w = 4.0 * r * r * t.half + r0 * t.a_quarter - r0 * t.a_plus;
    }
    let probe = ConvexProbe::HalfPower(m);
    let s = points.compose_probe(probe)?;
    let digest = digest_of(a, b, Some(x), &[nu, f64::from(m)], &[variant.as_str()]);
    let mut v = VerdictBuilder::new("example311", Some(variant), &digest);
    v.terms(t.all()).terms([s.chain.scale]);
    v.le("z^(m/2)-w^(m/2)", s.chain.lower, "x^(m/2)-y^(m/2)", s.chain.middle)
        .le("x^(m/2)-y^(m/2)", s.chain.middle, "z'^(m/2)-w'^(m/2)", s.chain.upper);
    if variant == Variant::Corrected {
        push_hypotheses(&mut v, &points);
    }
    Ok(v.finish(MATRIX_TOL))
}

/// `‖A^νXB^{1−ν} + A^{1−ν}XB^ν‖² ≤ ‖AX+XB‖² − 2r‖AX−XB‖² − r₀(‖A^{1/2}XB^{1/2}−AX‖² + ‖A^{1/2}XB^{1/2}−XB‖²)`.
pub fn check_thm313(a: &HermitianPSD, b: &HermitianPSD, x: &ComplexMatrix, nu: f64) -> Result<Verdict> {
    NuRange::LowerHalf.require(nu)?;
    let t = HsTerms::new(a, b, x)?;
    let NuContext { r, r0, .. } = nu_context(nu)?;
    let left = &(&a.frac_power(nu)? * x) * &b.frac_power(1.0 - nu)?;
    let right = &(&a.frac_power(1.0 - nu)? * x) * &b.frac_power(nu)?;
    let lhs = (&left + &right).hs_norm_sq();
    let rhs = t.sum - 2.0 * r * t.diff - r0 * (t.a_minus + t.b_minus);
    let digest = digest_of(a, b, Some(x), &[nu], &[]);
    let mut v = VerdictBuilder::new("thm313", None, &digest);
    v.terms(t.all()).le("|||A^vXB^(1-v)+A^(1-v)XB^v|||^2", lhs, "rhs", rhs);
    Ok(v.finish(MATRIX_TOL))
}

/// The three decomposition identities behind the HS rewrites:
/// `‖AX−XB‖² = ‖AX+XB‖² − 4‖A^{1/2}XB^{1/2}‖²` and the A- and B-sided
/// `‖A^{1/2}XB^{1/2} ∓ AX‖²`, `‖A^{1/2}XB^{1/2} ∓ XB‖²` analogues.
pub fn check_hs_identities(a: &HermitianPSD, b: &HermitianPSD, x: &ComplexMatrix) -> Result<Verdict> {
    let t = HsTerms::new(a, b, x)?;
    let digest = digest_of(a, b, Some(x), &[], &[]);
    let mut v = VerdictBuilder::new("hs-identities", None, &digest);
    v.terms(t.all());
    v.eq("|||AX-XB|||^2", t.diff, "|||AX+XB|||^2-4|||A^(1/2)XB^(1/2)|||^2", t.sum - 4.0 * t.half)
        .eq("|||M-AX|||^2", t.a_minus, "|||M+AX|||^2-4|||A^(3/4)XB^(1/4)|||^2", t.a_plus - 4.0 * t.a_quarter)
        .eq("|||M-XB|||^2", t.b_minus, "|||M+XB|||^2-4|||A^(1/4)XB^(3/4)|||^2", t.b_plus - 4.0 * t.b_quarter);
    Ok(v.finish(IDENTITY_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: f64) -> HermitianPSD {
        HermitianPSD::new(ComplexMatrix::diag(&[v])).unwrap()
    }

    fn one() -> ComplexMatrix {
        ComplexMatrix::identity(1)
    }

    #[test]
    fn identities_in_one_dimension() {
        let v = check_hs_identities(&s(2.0), &s(3.0), &one()).unwrap();
        assert!((v.chain[0].value - 1.0).abs() < 1e-14);
        assert!((v.chain[1].value - 1.0).abs() < 1e-14);
        assert!(v.holds);
        let zero = ComplexMatrix::zeros(1, 1);
        let v = check_hs_identities(&s(2.0), &s(3.0), &zero).unwrap();
        assert!(v.chain.iter().all(|c| c.value == 0.0));
    }

    #[test]
    fn equal_pair_with_identity_x_collapses() {
        let a = HermitianPSD::new(ComplexMatrix::diag(&[2.0, 5.0])).unwrap();
        let id = ComplexMatrix::identity(2);
        for variant in [Variant::Printed, Variant::Corrected] {
            for nu in [0.3, 0.7] {
                let z = check_zhaowu_hs(&a, &a, &id, nu, variant).unwrap();
                let p = check_prop38(&a, &a, &id, nu, Variant::Corrected).unwrap();
                for c in z.chain.iter().chain(&p.chain) {
                    assert!(c.value.abs() < 1e-12, "{c:?}");
                }
            }
        }
        let t = check_thm39(ConvexProbe::Power(1), &a, &a, &id, 0.3, Variant::Corrected).unwrap();
        assert!(t.chain.iter().all(|c| c.value.abs() < 1e-12));
    }

    #[test]
    fn thm313_identity_is_tight() {
        let id = HermitianPSD::new(ComplexMatrix::identity(1)).unwrap();
        let v = check_thm313(&id, &id, &one(), 0.3).unwrap();
        assert_eq!(v.chain[0].value, 4.0);
        assert!(v.min_slack().abs() < 1e-14);
    }

    #[test]
    fn identity_probe_matches_prop38() {
        let a = HermitianPSD::new(ComplexMatrix::diag(&[4.0, 0.5])).unwrap();
        let b = HermitianPSD::new(ComplexMatrix::diag(&[1.0, 3.0])).unwrap();
        let x = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![-1.0, 0.5]]).unwrap();
        let p = check_prop38(&a, &b, &x, 0.3, Variant::Corrected).unwrap();
        let t = check_thm39(ConvexProbe::Power(1), &a, &b, &x, 0.3, Variant::Corrected).unwrap();
        for (pc, tc) in p.chain.iter().zip(&t.chain) {
            assert_eq!(pc.value, tc.value);
        }
    }
}
