//! φ-sandwich forms: for a strictly increasing convex φ and points with
//! `w ≤ z ≤ x`, `y ≤ x` and `z − w ≤ x − y`, the differences satisfy
//! `φ(z) − φ(w) ≤ φ(x) − φ(y)`. The hypothesis chain is checked explicitly
//! before the composed bound is reported.

use super::chain::{magnitude, Inequality, Sandwich};
use super::probe::ConvexProbe;
use super::{ensure_positive, nu_context, weighted_arithmetic, weighted_geometric, NuContext};
use crate::error::{domain, Result};

/// Points of a two-sided sandwich: the inner pair `(x, y)` is bracketed below
/// by `(z, w)` and above by `(z_upper, w_upper)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SandwichPoints {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub w: f64,
    pub z_upper: f64,
    pub w_upper: f64,
}

/// The hypotheses under which the composed bound follows.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisCheck {
    pub links: Vec<(&'static str, Inequality)>,
}

impl HypothesisCheck {
    pub fn holds(&self, tol: f64) -> bool {
        self.links.iter().all(|(_, l)| l.holds(tol))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhiSandwich {
    pub chain: Sandwich,
    pub hypotheses: HypothesisCheck,
}

impl PhiSandwich {
    pub fn holds(&self, tol: f64) -> bool {
        self.hypotheses.holds(tol) && self.chain.holds(tol)
    }
}

impl SandwichPoints {
    fn all(&self) -> [f64; 6] {
        [self.x, self.y, self.z, self.w, self.z_upper, self.w_upper]
    }

    pub fn hypotheses(&self) -> HypothesisCheck {
        let s = magnitude(self.all());
        let p = self;
        HypothesisCheck {
            links: vec![
                ("w ≤ z", Inequality::new(p.w, p.z, s)),
                ("z ≤ x", Inequality::new(p.z, p.x, s)),
                ("y ≤ x", Inequality::new(p.y, p.x, s)),
                ("z − w ≤ x − y", Inequality::new(p.z - p.w, p.x - p.y, s)),
                ("x ≤ z′", Inequality::new(p.x, p.z_upper, s)),
                ("w′ ≤ z′", Inequality::new(p.w_upper, p.z_upper, s)),
                ("x − y ≤ z′ − w′", Inequality::new(p.x - p.y, p.z_upper - p.w_upper, s)),
            ],
        }
    }

    /// `[φ(z) − φ(w), φ(x) − φ(y), φ(z′) − φ(w′)]` without domain checks.
    pub fn compose(&self, f: impl Fn(f64) -> f64) -> Sandwich {
        let v = self.all().map(&f);
        let [fx, fy, fz, fw, fzu, fwu] = v;
        Sandwich::new(fz - fw, fx - fy, fzu - fwu, magnitude(v))
    }

    /// Compose with a probe, failing if any point leaves its domain.
    pub fn compose_probe(&self, probe: ConvexProbe) -> Result<PhiSandwich> {
        let probe = probe.validate()?;
        let d = probe.domain();
        if let Some(bad) = self.all().into_iter().find(|v| !d.contains(*v)) {
            return Err(domain(format!("argument {bad} outside the domain of {probe}")));
        }
        Ok(PhiSandwich { chain: self.compose(|t| probe.eval(t)), hypotheses: self.hypotheses() })
    }
}

fn a_sided_floor(ctx: &NuContext, weight: f64, a: f64, b: f64) -> f64 {
    // 2c√(ab) + 2r₀√a·⁴√(ab) − r₀(√(ab) + a)
    let g = (a * b).sqrt();
    2.0 * weight * g + 2.0 * ctx.r0 * a.sqrt() * g.sqrt() - ctx.r0 * (g + a)
}

/// Points of the convex-function refinement of Young's inequality, with the
/// branch (ν ≤ 1/2 or ν > 1/2) selecting which pair brackets from below.
pub fn young_points(a: f64, b: f64, nu: f64) -> Result<SandwichPoints> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(domain(format!("ν = {nu} outside (0, 1)")));
    }
    let ctx = nu_context(nu)?;
    ensure_positive("a", a)?;
    ensure_positive("b", b)?;
    let x = weighted_arithmetic(a, b, nu);
    let y = weighted_geometric(a, b, nu);
    let a_pair = (nu * (a + b), a_sided_floor(&ctx, nu, a, b));
    let b_pair = ((1.0 - nu) * (a + b), a_sided_floor(&ctx, 1.0 - nu, b, a));
    let (lower, upper) = if nu <= 0.5 { (a_pair, b_pair) } else { (b_pair, a_pair) };
    Ok(SandwichPoints { x, y, z: lower.0, w: lower.1, z_upper: upper.0, w_upper: upper.1 })
}

/// Points of the convex-function refinement of the Heinz inequality,
/// 0 ≤ ν ≤ 1.
pub fn heinz_points(a: f64, b: f64, nu: f64) -> Result<SandwichPoints> {
    let ctx = NuContext::closed(nu)?;
    ensure_positive("a", a)?;
    ensure_positive("b", b)?;
    let g = (a * b).sqrt();
    let q = g.sqrt();
    let s = a.sqrt() + b.sqrt();
    let floor = |c: f64| 2.0 * c * g + ctx.r0 * q * s - ctx.r0 / 2.0 * s * s;
    let heinz = (weighted_geometric(a, b, nu) + weighted_geometric(a, b, 1.0 - nu)) / 2.0;
    Ok(SandwichPoints {
        x: (a + b) / 2.0,
        y: heinz,
        z: ctx.r * (a + b),
        w: floor(ctx.r),
        z_upper: ctx.big_r * (a + b),
        w_upper: floor(ctx.big_r),
    })
}

/// `φ(z) − φ(w) ≤ φ((1−ν)a + νb) − φ(a^{1−ν}b^ν) ≤ φ(z′) − φ(w′)` for
/// 0 < ν < 1.
pub fn phi_sandwich(probe: ConvexProbe, a: f64, b: f64, nu: f64) -> Result<PhiSandwich> {
    young_points(a, b, nu)?.compose_probe(probe)
}

/// `φ(r(a+b)) − φ(w) ≤ φ((a+b)/2) − φ(H_ν(a,b)) ≤ φ(R(a+b)) − φ(w′)` for
/// 0 ≤ ν ≤ 1.
pub fn heinz_sandwich(probe: ConvexProbe, a: f64, b: f64, nu: f64) -> Result<PhiSandwich> {
    heinz_points(a, b, nu)?.compose_probe(probe)
}

fn check_order(m: u32) -> Result<()> {
    if m == 0 {
        Err(domain("power order m must be ≥ 1"))
    } else {
        Ok(())
    }
}

/// The `x^m` instance of [`phi_sandwich`], evaluated for every a, b > 0 with
/// signed integer powers (no domain restriction on the floor points).
pub fn power_sandwich(m: u32, a: f64, b: f64, nu: f64) -> Result<Sandwich> {
    check_order(m)?;
    Ok(young_points(a, b, nu)?.compose(|t| t.powi(m as i32)))
}

/// The `x^m` instance of [`heinz_sandwich`], with signed integer powers.
pub fn heinz_power_sandwich(m: u32, a: f64, b: f64, nu: f64) -> Result<Sandwich> {
    check_order(m)?;
    Ok(heinz_points(a, b, nu)?.compose(|t| t.powi(m as i32)))
}
