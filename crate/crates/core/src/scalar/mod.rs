//! Scalar Young and Heinz bounds.
//!
//! Every function validates its inputs and returns the bound chain it
//! evaluates; whether the chain is ordered is decided by the caller against a
//! tolerance (see [`Sandwich::holds`]).

mod chain;
mod probe;
mod sandwich;

pub use chain::{magnitude, Inequality, Sandwich};
pub use probe::{ConvexProbe, Domain};
pub use sandwich::{
    power_sandwich, heinz_power_sandwich, heinz_points, heinz_sandwich, phi_sandwich, young_points,
    HypothesisCheck, PhiSandwich, SandwichPoints,
};

use crate::error::{domain, Result};
use crate::Variant;

/// Constants derived from the weight ν.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuContext {
    pub nu: f64,
    /// `min{ν, 1 − ν}`
    pub r: f64,
    /// `max{ν, 1 − ν}`
    pub big_r: f64,
    /// `min{2r, 1 − 2r}`
    pub r0: f64,
    /// `⌊2ν⌋`
    pub k2: u8,
    /// `⌊4ν⌋`, the floor index of the refinement term `S₁`.
    pub j4: u8,
}

impl NuContext {
    /// Like [`nu_context`] but also accepts ν = 0, for results stated on the
    /// closed interval.
    pub fn closed(nu: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&nu) {
            return Err(domain(format!("ν = {nu} outside [0, 1]")));
        }
        let r = nu.min(1.0 - nu);
        Ok(Self {
            nu,
            r,
            big_r: 1.0 - r,
            r0: (2.0 * r).min(1.0 - 2.0 * r),
            // scaling by a power of two is exact, so these floors see the true value
            k2: (2.0 * nu).floor() as u8,
            j4: (4.0 * nu).floor() as u8,
        })
    }

    /// Coefficient of the squared quartic-root difference in `S₁`.
    pub fn s1_coefficient(&self) -> f64 {
        let j = i32::from(self.j4);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sign * 2.0 * self.nu - sign * f64::from((j + 1) / 2)
    }
}

/// ν-constants for 0 < ν ≤ 1.
pub fn nu_context(nu: f64) -> Result<NuContext> {
    if !(nu > 0.0 && nu <= 1.0) {
        return Err(domain(format!("ν = {nu} outside (0, 1]")));
    }
    NuContext::closed(nu)
}

fn ensure_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} = {v} must be positive and finite")))
    }
}

fn ensure_nonnegative(name: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} = {v} must be nonnegative and finite")))
    }
}

fn ensure_open_unit(nu: f64) -> Result<()> {
    if nu > 0.0 && nu < 1.0 {
        Ok(())
    } else {
        Err(domain(format!("ν = {nu} outside (0, 1)")))
    }
}

/// `a^{1−ν} b^ν`
pub fn weighted_geometric(a: f64, b: f64, nu: f64) -> f64 {
    a.powf(1.0 - nu) * b.powf(nu)
}

/// `(1−ν)a + νb`
pub fn weighted_arithmetic(a: f64, b: f64, nu: f64) -> f64 {
    (1.0 - nu) * a + nu * b
}

fn s1_unchecked(ctx: &NuContext, a: f64, b: f64) -> f64 {
    let k = i32::from(ctx.k2);
    let left = (b.powi(2 - k) * a.powi(k)).powf(0.25);
    let right = (a.powi(k + 1) * b.powi(1 - k)).powf(0.25);
    ctx.s1_coefficient() * (left - right).powi(2)
}

/// The refinement term `S₁(ν)` as typeset:
/// `((−1)^{j4}·2ν + (−1)^{j4+1}·⌊(j4+1)/2⌋)·(⁴√(b^{2−k}a^k) − ⁴√(a^{k+1}b^{1−k}))²`
/// with `k = ⌊2ν⌋`, `j4 = ⌊4ν⌋`.
///
/// For ν ≤ 1/2 the quartic-root difference sits on the `b` side, which is the
/// orientation the reverse inequality needs. The forward refinement needs
/// the mirrored term, see [`s1_mirrored`].
pub fn s1(nu: f64, a: f64, b: f64) -> Result<f64> {
    let ctx = nu_context(nu)?;
    ensure_positive("a", a)?;
    ensure_positive("b", b)?;
    Ok(s1_unchecked(&ctx, a, b))
}

/// `S₁` with the roles of `a` and `b` exchanged: `min{2r', …}·(√a − ⁴√(ab))²`
/// for ν ≤ 1/2 and `(⁴√(ab) − √b)²` for ν > 1/2.
pub fn s1_mirrored(nu: f64, a: f64, b: f64) -> Result<f64> {
    s1(nu, b, a)
}

/// Refined Young inequality and its reverse:
/// `a^{1−ν}b^ν + S + r(√a−√b)² ≤ (1−ν)a + νb ≤ a^{1−ν}b^ν + R(√a−√b)² − S₁`.
///
/// `Printed` uses the typeset `S₁` on both sides; `Corrected` uses the
/// mirrored term on the refinement side.
pub fn young_refined(a: f64, b: f64, nu: f64, variant: Variant) -> Result<Sandwich> {
    let ctx = nu_context(nu)?;
    ensure_positive("a", a)?;
    ensure_positive("b", b)?;
    let y = weighted_geometric(a, b, nu);
    let x = weighted_arithmetic(a, b, nu);
    let d = (a.sqrt() - b.sqrt()).powi(2);
    let reverse_term = s1_unchecked(&ctx, a, b);
    let forward_term = match variant {
        Variant::Printed => reverse_term,
        Variant::Corrected => s1_unchecked(&ctx, b, a),
    };
    let lower = y + forward_term + ctx.r * d;
    let upper = y + ctx.big_r * d - reverse_term;
    Ok(Sandwich::new(lower, x, upper, magnitude([a, b, y, x, d])))
}

/// Squared Young refinement and its reverse
/// `(a^{1−ν}b^ν)² + r²(a−b)² + S ≤ ((1−ν)a + νb)² ≤ (a^{1−ν}b^ν)² + c(a−b)² − S′`.
///
/// `Printed`: `S = S′ = S₁(ν; a, b)` and `c = (1−ν)²`.
/// `Corrected`: the terms are evaluated at the squared arguments `a², b²`
/// (mirrored on the refinement side) and `c = R²`.
pub fn young_squared(a: f64, b: f64, nu: f64, variant: Variant) -> Result<Sandwich> {
    ensure_open_unit(nu)?;
    let ctx = nu_context(nu)?;
    ensure_positive("a", a)?;
    ensure_positive("b", b)?;
    let y2 = weighted_geometric(a, b, nu).powi(2);
    let x2 = weighted_arithmetic(a, b, nu).powi(2);
    let d2 = (a - b).powi(2);
    let (forward, reverse, upper_coeff) = match variant {
        Variant::Printed => {
            let s = s1_unchecked(&ctx, a, b);
            (s, s, (1.0 - nu).powi(2))
        }
        Variant::Corrected => (
            s1_unchecked(&ctx, b * b, a * a),
            s1_unchecked(&ctx, a * a, b * b),
            ctx.big_r.powi(2),
        ),
    };
    let lower = y2 + ctx.r.powi(2) * d2 + forward;
    let upper = y2 + upper_coeff * d2 - reverse;
    Ok(Sandwich::new(lower, x2, upper, magnitude([a * a, b * b, y2, x2, d2])))
}

/// Bounds on the quadratic gap `((1−ν)a + νb)² − (a^{1−ν}b^ν)²`.
///
/// `Printed` evaluates the typeset bounds, branching on ν ≤ 1/2.
/// `Corrected` evaluates the expansion of the squared refinement, which is
/// [`young_squared`] (corrected) with `(a^{1−ν}b^ν)²` subtracted throughout.
pub fn quadratic_gap_bounds(a: f64, b: f64, nu: f64, variant: Variant) -> Result<Sandwich> {
    ensure_open_unit(nu)?;
    let ctx = nu_context(nu)?;
    ensure_positive("a", a)?;
    ensure_positive("b", b)?;
    let y2 = weighted_geometric(a, b, nu).powi(2);
    let x2 = weighted_arithmetic(a, b, nu).powi(2);
    let gap = x2 - y2;
    let (lower, upper) = match variant {
        Variant::Printed => {
            let g = (a * b).sqrt();
            let r0 = ctx.r0;
            let a_sided = |c: f64| {
                c * c * (a * a + b * b) - (2.0 * c * c * a * b + 2.0 * r0 * a * g - r0 * (a * b + a * a))
            };
            if nu <= 0.5 {
                let c = 1.0 - nu;
                let upper = c * c * (a * a + b * b) - (2.0 * c * c * a * b + r0 * b * g - r0 * (a * b + b * b));
                (a_sided(nu), upper)
            } else {
                let c = 1.0 - nu;
                let lower = c * c * (a * a + b * b)
                    - (2.0 * c * c * a * b + 2.0 * r0 * b * g - r0 * (a * b + b * b));
                (lower, a_sided(nu))
            }
        }
        Variant::Corrected => {
            let d2 = (a - b).powi(2);
            let lower = ctx.r.powi(2) * d2 + s1_unchecked(&ctx, b * b, a * a);
            let upper = ctx.big_r.powi(2) * d2 - s1_unchecked(&ctx, a * a, b * b);
            (lower, upper)
        }
    };
    Ok(Sandwich::new(lower, gap, upper, magnitude([a * a, b * b, x2, y2])))
}

/// Heinz mean `(a^{1−ν}b^ν + a^νb^{1−ν})/2` for 0 ≤ ν ≤ 1.
pub fn heinz_mean(a: f64, b: f64, nu: f64) -> Result<f64> {
    NuContext::closed(nu)?;
    ensure_positive("a", a)?;
    ensure_positive("b", b)?;
    Ok((weighted_geometric(a, b, nu) + weighted_geometric(a, b, 1.0 - nu)) / 2.0)
}

/// Heinz inequalities `√(ab) ≤ H_ν(a, b) ≤ (a+b)/2`.
pub fn heinz_bounds(a: f64, b: f64, nu: f64) -> Result<Sandwich> {
    let h = heinz_mean(a, b, nu)?;
    let g = (a * b).sqrt();
    let m = (a + b) / 2.0;
    Ok(Sandwich::new(g, h, m, magnitude([a, b])))
}

/// Refined Heinz-type bound for a, b ≥ 0, 0 ≤ ν ≤ 1:
/// `(a^{1−ν}b^ν + a^νb^{1−ν})² + 2r(a−b)² + r₀[(√(ab)−a)² + (√(ab)−b)²] ≤ (a+b)²`.
///
/// Zero bases follow IEEE `powf`: `0⁰ = 1` and `0^t = 0` for t > 0.
pub fn lemma312_gap(a: f64, b: f64, nu: f64) -> Result<Inequality> {
    let ctx = NuContext::closed(nu)?;
    ensure_nonnegative("a", a)?;
    ensure_nonnegative("b", b)?;
    let g = (a * b).sqrt();
    let heinz_sum = weighted_geometric(a, b, nu) + weighted_geometric(a, b, 1.0 - nu);
    let lhs = heinz_sum.powi(2) + 2.0 * ctx.r * (a - b).powi(2) + ctx.r0 * ((g - a).powi(2) + (g - b).powi(2));
    let rhs = (a + b).powi(2);
    Ok(Inequality::new(lhs, rhs, magnitude([heinz_sum.powi(2), a * a, b * b])))
}

/// Young refinement at squared arguments, 0 < ν ≤ 1/2:
/// `(a^{1−ν}b^ν)² + r₀(√(ab)−a)² + r(a−b)² ≤ (1−ν)a² + νb²`.
pub fn squared_young_refined(a: f64, b: f64, nu: f64) -> Result<Inequality> {
    let ctx = nu_context(nu)?;
    if nu > 0.5 {
        return Err(domain(format!("ν = {nu} > 1/2 is not covered")));
    }
    ensure_positive("a", a)?;
    ensure_positive("b", b)?;
    let y2 = weighted_geometric(a, b, nu).powi(2);
    let g = (a * b).sqrt();
    let lhs = y2 + ctx.r0 * (g - a).powi(2) + ctx.r * (a - b).powi(2);
    let rhs = (1.0 - nu) * a * a + nu * b * b;
    Ok(Inequality::new(lhs, rhs, magnitude([y2, a * a, b * b])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const TOL: f64 = 1e-12;

    #[test]
    fn nu_context_examples() {
        let c = nu_context(0.3).unwrap();
        assert_relative_eq!(c.r, 0.3);
        assert_relative_eq!(c.big_r, 0.7);
        assert_relative_eq!(c.r0, 0.4, epsilon = 1e-15);
        assert_eq!((c.k2, c.j4), (0, 1));

        let c = nu_context(0.5).unwrap();
        assert_eq!((c.r, c.big_r, c.r0, c.k2, c.j4), (0.5, 0.5, 0.0, 1, 2));

        let c = nu_context(0.25).unwrap();
        assert_eq!((c.r, c.big_r, c.r0, c.k2, c.j4), (0.25, 0.75, 0.5, 0, 1));

        let c = nu_context(1.0).unwrap();
        assert_eq!((c.r, c.r0, c.k2, c.j4), (0.0, 0.0, 2, 4));
    }

    #[test]
    fn nu_context_rejects_out_of_range() {
        for nu in [0.0, -0.1, 1.0 + 1e-12, f64::NAN] {
            assert!(matches!(nu_context(nu), Err(crate::Error::Domain(_))), "{nu}");
        }
    }

    #[test]
    fn s1_coefficient_is_min_of_local_weights() {
        // coefficient reproduces min{2ν, 1−2ν} below 1/2 and min{2ν−1, 2−2ν} above
        for i in 1..100 {
            let nu = f64::from(i) / 100.0;
            let c = nu_context(nu).unwrap().s1_coefficient();
            let expected = if nu <= 0.5 { (2.0 * nu).min(1.0 - 2.0 * nu) } else { (2.0 * nu - 1.0).min(2.0 - 2.0 * nu) };
            assert_relative_eq!(c, expected, epsilon = 1e-15);
        }
    }

    #[test]
    fn s1_examples() {
        assert_eq!(s1(0.5, 7.0, 0.2).unwrap(), 0.0);
        assert_relative_eq!(s1(0.25, 16.0, 1.0).unwrap(), 0.5, epsilon = TOL);
        assert_eq!(s1(0.25, 4.0, 4.0).unwrap(), 0.0);
        assert_relative_eq!(s1_mirrored(0.25, 16.0, 1.0).unwrap(), 2.0, epsilon = TOL);
        assert!(s1(0.3, 0.0, 1.0).is_err());
        assert!(s1(0.3, 1.0, -2.0).is_err());
    }

    #[test]
    fn young_refined_examples() {
        let p = young_refined(16.0, 1.0, 0.25, Variant::Printed).unwrap();
        assert_relative_eq!(p.lower, 10.75, epsilon = TOL);
        assert_relative_eq!(p.middle, 12.25, epsilon = TOL);
        assert_relative_eq!(p.upper, 14.25, epsilon = TOL);

        let c = young_refined(16.0, 1.0, 0.25, Variant::Corrected).unwrap();
        assert_relative_eq!(c.lower, 12.25, epsilon = TOL);
        assert_relative_eq!(c.upper, 14.25, epsilon = TOL);
        assert!(c.holds(TOL));

        for variant in [Variant::Printed, Variant::Corrected] {
            let eq = young_refined(3.5, 3.5, 0.37, variant).unwrap();
            assert_relative_eq!(eq.lower, 3.5, epsilon = TOL);
            assert_relative_eq!(eq.middle, 3.5, epsilon = TOL);
            assert_relative_eq!(eq.upper, 3.5, epsilon = TOL);
        }

        // frozen mpmath values at an extreme ratio
        let e = young_refined(1.0, 1e-6, 0.3, Variant::Corrected).unwrap();
        assert_relative_eq!(e.lower, 0.690_351_010_643_264_1, epsilon = 1e-13);
        assert_relative_eq!(e.middle, 0.700_000_3, epsilon = 1e-13);
        assert_relative_eq!(e.upper, 0.714_074_530_145_892_5, epsilon = 1e-13);
    }

    #[test]
    fn printed_young_refinement_has_a_counterexample() {
        let p = young_refined(1.0, 16.0, 0.1, Variant::Printed).unwrap();
        assert!(!p.holds(1e-9));
        assert!(young_refined(1.0, 16.0, 0.1, Variant::Corrected).unwrap().holds(1e-12));
    }

    #[test]
    fn young_squared_examples() {
        let c = young_squared(4.0, 1.0, 0.25, Variant::Corrected).unwrap();
        assert_relative_eq!(c.lower, 10.5625, epsilon = TOL);
        assert_relative_eq!(c.middle, 10.5625, epsilon = TOL);
        assert_relative_eq!(c.upper, 12.5625, epsilon = TOL);

        let p = young_squared(4.0, 1.0, 0.25, Variant::Printed).unwrap();
        assert_relative_eq!(p.lower, 8.648_286_437_626_905, epsilon = TOL);
        assert_relative_eq!(p.upper, 12.976_713_562_373_095, epsilon = TOL);

        let h = young_squared(100.0, 1.0, 0.49, Variant::Corrected).unwrap();
        assert_relative_eq!(h.lower, 2624.867_919_614_318_5, max_relative = 1e-13);
        assert_relative_eq!(h.middle, 2651.2201, max_relative = 1e-13);
        assert_relative_eq!(h.upper, 2657.267_919_614_318_5, max_relative = 1e-13);

        let eq = young_squared(2.0, 2.0, 0.8, Variant::Corrected).unwrap();
        assert_relative_eq!(eq.lower, 4.0, epsilon = TOL);
        assert_relative_eq!(eq.upper, 4.0, epsilon = TOL);
        assert!(young_squared(2.0, 3.0, 1.0, Variant::Corrected).is_err());
    }

    #[test]
    fn quadratic_gap_examples() {
        let q = quadratic_gap_bounds(4.0, 1.0, 0.25, Variant::Printed).unwrap();
        assert_relative_eq!(q.lower, 2.5625, epsilon = TOL);
        assert_relative_eq!(q.middle, 2.5625, epsilon = TOL);
        assert_relative_eq!(q.upper, 6.5625, epsilon = TOL);

        let q = quadratic_gap_bounds(1.0, 100.0, 0.45, Variant::Printed).unwrap();
        assert_relative_eq!(q.lower, 1992.8025, max_relative = 1e-13);
        assert_relative_eq!(q.middle, 2011.706_765_551_980_7, max_relative = 1e-13);

        let q = quadratic_gap_bounds(5.0, 5.0, 0.7, Variant::Printed).unwrap();
        assert!(q.lower.abs() < TOL && q.middle.abs() < TOL);
    }

    #[test]
    fn heinz_mean_examples() {
        assert_relative_eq!(heinz_mean(16.0, 1.0, 0.5).unwrap(), 4.0, epsilon = TOL);
        assert_relative_eq!(heinz_mean(16.0, 1.0, 0.0).unwrap(), 8.5, epsilon = TOL);
        assert_relative_eq!(heinz_mean(16.0, 1.0, 0.3).unwrap(), 4.630_900_608_181_532, epsilon = TOL);
        assert_eq!(heinz_mean(3.0, 7.0, 0.2).unwrap(), heinz_mean(3.0, 7.0, 0.8).unwrap());
        assert!(heinz_bounds(3.0, 7.0, 0.2).unwrap().holds(TOL));
        assert!(heinz_mean(0.0, 1.0, 0.2).is_err());
    }

    #[test]
    fn lemma312_examples() {
        let eq = lemma312_gap(2.5, 2.5, 0.3).unwrap();
        assert_relative_eq!(eq.lhs, 25.0, epsilon = TOL);
        assert_relative_eq!(eq.rhs, 25.0, epsilon = TOL);

        for nu in [0.25, 0.3, 0.4, 0.5] {
            let t = lemma312_gap(1.0, 0.0, nu).unwrap();
            assert!((t.lhs - 1.0).abs() < TOL && t.rhs == 1.0, "{nu}: {t:?}");
        }
        let t = lemma312_gap(4.0, 1.0, 0.25).unwrap();
        assert_relative_eq!(t.lhs, 25.0, epsilon = TOL);
        assert!(t.holds(TOL));
        assert!(lemma312_gap(-1.0, 1.0, 0.3).is_err());
    }

    #[test]
    fn squared_young_examples() {
        let t = squared_young_refined(4.0, 1.0, 0.25).unwrap();
        assert_relative_eq!(t.lhs, 12.25, epsilon = TOL);
        assert_relative_eq!(t.rhs, 12.25, epsilon = TOL);
        let t = squared_young_refined(1.0, 4.0, 0.25).unwrap();
        assert_relative_eq!(t.lhs, 4.75, epsilon = TOL);
        assert!(t.holds(TOL));
        let t = squared_young_refined(3.0, 3.0, 0.1).unwrap();
        assert_relative_eq!(t.lhs, t.rhs, epsilon = TOL);
        assert!(squared_young_refined(1.0, 4.0, 0.6).is_err());
    }
}
