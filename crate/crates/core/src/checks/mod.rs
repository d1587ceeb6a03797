//! Executable matrix inequality checks.
//!
//! Every check evaluates its bound chain and returns a [`Verdict`]; a chain
//! link `lo ≤ hi` passes iff `hi − lo ≥ −tol·scale`, where `scale` is the
//! largest magnitude among the terms that entered the chain (floored at 1).

mod classical;
mod hilbert;
mod powered;

pub use classical::{
    check_bhatia_kittaneh, check_classical_young, check_lemma31, check_lemma32, check_lemma33,
    check_sv_young, YoungForm,
};
pub use hilbert::{
    check_example311, check_hs_identities, check_prop38, check_thm313, check_thm39, check_zhaowu_hs,
    HsTerms,
};
pub use powered::{
    check_prop314, check_remark37_det, check_remark37_norm, check_sababheh, check_thm34, check_thm35,
    check_thm36,
};

use serde::{Deserialize, Serialize};

use crate::error::{dimension, domain, Result};
use crate::matrix::{ComplexMatrix, HermitianPSD};
use crate::Variant;

/// Default relative tolerance for matrix checks.
pub const MATRIX_TOL: f64 = 1e-8;
/// Relative tolerance for exact identities.
pub const IDENTITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Labeled {
    pub label: String,
    pub value: f64,
}

/// One evaluation of an inequality chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub variant: Option<Variant>,
    pub inputs_digest: u64,
    pub chain: Vec<Labeled>,
    /// `hi − lo` per link; nonnegative means the link holds.
    pub slacks: Vec<Labeled>,
    pub scale: f64,
    pub tol_used: f64,
    pub holds: bool,
}

impl Verdict {
    /// Smallest raw slack (`NaN` if any slack is `NaN`).
    pub fn min_slack(&self) -> f64 {
        self.slacks.iter().map(|s| s.value).fold(f64::INFINITY, |acc, v| {
            if acc.is_nan() || v.is_nan() {
                f64::NAN
            } else {
                acc.min(v)
            }
        })
    }

    pub fn rel_min_slack(&self) -> f64 {
        self.min_slack() / self.scale
    }

    /// Re-judge the chain under another tolerance.
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol_used = tol;
        self.holds = judge(&self.slacks, self.scale, tol);
        self
    }

    pub fn chain_value(&self, label: &str) -> Option<f64> {
        self.chain.iter().find(|c| c.label == label).map(|c| c.value)
    }
}

fn judge(slacks: &[Labeled], scale: f64, tol: f64) -> bool {
    slacks.iter().all(|s| s.value >= -tol * scale)
}

/// FNV-1a over the bit patterns of a check's inputs.
#[derive(Debug, Clone)]
pub struct Digest(u64);

impl Default for Digest {
    fn default() -> Self {
        Self(0xcbf2_9ce4_8422_2325)
    }
}

impl Digest {
    pub fn bytes(&mut self, bytes: &[u8]) -> &mut Self {
        for b in bytes {
            self.0 ^= u64::from(*b);
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
        self
    }

    pub fn f64(&mut self, v: f64) -> &mut Self {
        self.bytes(&v.to_bits().to_le_bytes())
    }

    pub fn str(&mut self, s: &str) -> &mut Self {
        self.bytes(s.as_bytes()).bytes(&[0xff])
    }

    pub fn matrix(&mut self, m: &ComplexMatrix) -> &mut Self {
        self.bytes(&(m.rows() as u64).to_le_bytes()).bytes(&(m.cols() as u64).to_le_bytes());
        for z in m.data() {
            self.f64(z.re).f64(z.im);
        }
        self
    }

    pub fn finish(&self) -> u64 {
        self.0
    }
}

pub(crate) struct VerdictBuilder {
    id: &'static str,
    variant: Option<Variant>,
    digest: u64,
    chain: Vec<Labeled>,
    slacks: Vec<Labeled>,
    scale: f64,
}

impl VerdictBuilder {
    pub(crate) fn new(id: &'static str, variant: Option<Variant>, digest: &Digest) -> Self {
        Self { id, variant, digest: digest.finish(), chain: Vec::new(), slacks: Vec::new(), scale: 1.0 }
    }

    /// Terms that contribute to the rounding scale without being chain members.
    pub(crate) fn terms(&mut self, terms: impl IntoIterator<Item = f64>) -> &mut Self {
        for t in terms {
            self.scale = self.scale.max(t.abs());
        }
        self
    }

    fn push(&mut self, label: &str, value: f64) {
        self.terms([value]);
        if self.chain.last().map_or(true, |c| c.label != label) {
            self.chain.push(Labeled { label: label.to_string(), value });
        }
    }

    /// Link `lo ≤ hi`.
    pub(crate) fn le(&mut self, lo_label: &str, lo: f64, hi_label: &str, hi: f64) -> &mut Self {
        self.push(lo_label, lo);
        self.push(hi_label, hi);
        self.slacks.push(Labeled { label: format!("{lo_label} ≤ {hi_label}"), value: hi - lo });
        self
    }

    /// Equality `a = b`, scored as `−|a − b|`.
    pub(crate) fn eq(&mut self, a_label: &str, a: f64, b_label: &str, b: f64) -> &mut Self {
        self.push(a_label, a);
        self.push(b_label, b);
        self.slacks.push(Labeled { label: format!("{a_label} = {b_label}"), value: -(a - b).abs() });
        self
    }

    /// A precomputed slack (e.g. a hypothesis link) without chain members.
    pub(crate) fn slack(&mut self, label: &str, value: f64) -> &mut Self {
        self.slacks.push(Labeled { label: label.to_string(), value });
        self
    }

    pub(crate) fn finish(&self, tol: f64) -> Verdict {
        Verdict {
            id: self.id.to_string(),
            variant: self.variant,
            inputs_digest: self.digest,
            chain: self.chain.clone(),
            slacks: self.slacks.clone(),
            scale: self.scale,
            tol_used: tol,
            holds: judge(&self.slacks, self.scale, tol),
        }
    }
}

/// Admissible weights of a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NuRange {
    /// `[0, 1]`
    Closed,
    /// `(0, 1]`
    OpenClosed,
    /// `(0, 1)`
    Open,
    /// `(0, 1/2]`
    LowerHalf,
    /// `[1/2, 1]`
    UpperHalf,
    /// The check takes no weight.
    None,
}

impl NuRange {
    pub fn contains(self, nu: f64) -> bool {
        match self {
            NuRange::Closed => (0.0..=1.0).contains(&nu),
            NuRange::OpenClosed => nu > 0.0 && nu <= 1.0,
            NuRange::Open => nu > 0.0 && nu < 1.0,
            NuRange::LowerHalf => nu > 0.0 && nu <= 0.5,
            NuRange::UpperHalf => (0.5..=1.0).contains(&nu),
            NuRange::None => true,
        }
    }

    pub(crate) fn require(self, nu: f64) -> Result<()> {
        if self.contains(nu) {
            Ok(())
        } else {
            Err(domain(format!("ν = {nu} outside the admissible range {self:?}")))
        }
    }
}

pub(crate) fn same_dim(a: &HermitianPSD, b: &HermitianPSD, x: Option<&ComplexMatrix>) -> Result<()> {
    let n = a.dim();
    if b.dim() != n {
        return Err(dimension(format!("A is {n}×{n} but B is {0}×{0}", b.dim())));
    }
    if let Some(x) = x {
        if x.rows() != n || x.cols() != n {
            return Err(dimension(format!("X is {}×{} but A is {n}×{n}", x.rows(), x.cols())));
        }
    }
    Ok(())
}

pub(crate) fn require_pd(a: &HermitianPSD, name: &str) -> Result<()> {
    if a.is_positive_definite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be positive definite")))
    }
}

pub(crate) fn require_order(m: u32, min: u32) -> Result<()> {
    if m >= min {
        Ok(())
    } else {
        Err(domain(format!("order m = {m} must be ≥ {min}")))
    }
}

/// `(1−ν)A + νB`.
pub(crate) fn convex_combination(a: &HermitianPSD, b: &HermitianPSD, nu: f64) -> ComplexMatrix {
    &a.matrix().scale(1.0 - nu) + &b.matrix().scale(nu)
}

pub(crate) fn digest_of(
    a: &HermitianPSD,
    b: &HermitianPSD,
    x: Option<&ComplexMatrix>,
    extra: &[f64],
    tags: &[&str],
) -> Digest {
    let mut d = Digest::default();
    d.matrix(a.matrix()).matrix(b.matrix());
    if let Some(x) = x {
        d.matrix(x);
    }
    for v in extra {
        d.f64(*v);
    }
    for t in tags {
        d.str(t);
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_dedupes_shared_chain_members() {
        let d = Digest::default();
        let mut b = VerdictBuilder::new("t", None, &d);
        b.le("lo", 1.0, "mid", 2.0).le("mid", 2.0, "hi", 1.5);
        let v = b.finish(1e-8);
        assert_eq!(v.chain.len(), 3);
        assert_eq!(v.slacks.len(), 2);
        assert!(!v.holds);
        assert_eq!(v.min_slack(), -0.5);
        assert_eq!(v.scale, 2.0);
        assert!(v.clone().with_tolerance(0.3).holds);
    }

    #[test]
    fn digest_depends_on_every_bit() {
        let mut a = Digest::default();
        let mut b = Digest::default();
        a.f64(0.3);
        b.f64(0.3 + f64::EPSILON);
        assert_ne!(a.finish(), b.finish());
    }

    #[test]
    fn nu_ranges() {
        assert!(NuRange::LowerHalf.contains(0.5) && !NuRange::LowerHalf.contains(0.0));
        assert!(NuRange::UpperHalf.contains(1.0) && !NuRange::UpperHalf.contains(0.49));
        assert!(!NuRange::Open.contains(1.0));
    }
}
