use serde::{Deserialize, Serialize};

use crate::checks::NuRange;
use crate::error::{Error, Result};
use crate::norms::{all_default_specs, NormSpec};
use crate::scalar::ConvexProbe;
use crate::Variant;

pub const SCALAR_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Scalar,
    Matrix,
}

/// Extra parameters a check is quantified over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    None,
    Norm,
    /// Order m over the given values.
    Order(&'static [u32]),
    NormOrder(&'static [u32]),
    Probe,
}

/// One parameter assignment.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub norm: Option<NormSpec>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub probe: Option<ConvexProbe>,
}

#[derive(Debug, Clone)]
pub struct CheckSpec {
    pub id: &'static str,
    pub kind: CheckKind,
    /// Empty when the formula has a single reading.
    pub variants: &'static [Variant],
    /// Variant the suite runs by default.
    pub pinned: Option<Variant>,
    pub params: ParamKind,
    pub nu: NuRange,
    pub tol: f64,
    pub summary: &'static str,
}

impl CheckSpec {
    /// Every parameter assignment the suite covers.
    pub fn param_grid(&self) -> Vec<Params> {
        match self.params {
            ParamKind::None => vec![Params::default()],
            ParamKind::Norm => all_default_specs().into_iter().map(|n| Params { norm: Some(n), ..Params::default() }).collect(),
            ParamKind::Order(ms) => ms.iter().map(|&m| Params { m: Some(m), ..Params::default() }).collect(),
            ParamKind::NormOrder(ms) => all_default_specs()
                .into_iter()
                .flat_map(|n| ms.iter().map(move |&m| Params { norm: Some(n), m: Some(m), probe: None }))
                .collect(),
            ParamKind::Probe => ConvexProbe::registry()
                .into_iter()
                .map(|p| Params { probe: Some(p), ..Params::default() })
                .collect(),
        }
    }

    /// Fill missing parameters with the first grid value.
    pub fn complete(&self, given: Params) -> Params {
        let first = self.param_grid()[0];
        Params {
            norm: given.norm.or(first.norm),
            m: given.m.or(first.m),
            probe: given.probe.or(first.probe),
        }
    }

    /// The variant to evaluate: the requested one if the check has it, the
    /// pinned one otherwise.
    pub fn resolve_variant(&self, requested: Option<Variant>) -> Option<Variant> {
        if self.variants.is_empty() {
            None
        } else {
            requested.filter(|v| self.variants.contains(v)).or(self.pinned)
        }
    }

    pub fn is_pinned(&self, variant: Option<Variant>) -> bool {
        variant == self.pinned
    }

    /// Variants the audit evaluates.
    pub fn audit_variants(&self) -> Vec<Option<Variant>> {
        if self.variants.is_empty() {
            vec![None]
        } else {
            self.variants.iter().copied().map(Some).collect()
        }
    }
}

const BOTH: &[Variant] = &[Variant::Printed, Variant::Corrected];
const M123: &[u32] = &[1, 2, 3];
const M234: &[u32] = &[2, 3, 4];

macro_rules! check {
    ($id:expr, $kind:ident, $variants:expr, $pinned:expr, $params:expr, $nu:ident, $tol:expr, $summary:expr) => {
        CheckSpec {
            id: $id,
            kind: CheckKind::$kind,
            variants: $variants,
            pinned: $pinned,
            params: $params,
            nu: NuRange::$nu,
            tol: $tol,
            summary: $summary,
        }
    };
}

/// All checks, scalar first, in the order reports list them.
pub fn registry() -> Vec<CheckSpec> {
    use crate::checks::{IDENTITY_TOL, MATRIX_TOL};
    use Variant::Corrected;
    let c = Some(Corrected);
    let none: &[Variant] = &[];
    vec![
        check!("young-refined", Scalar, BOTH, c, ParamKind::None, OpenClosed, SCALAR_TOL, "refined Young inequality and its reverse"),
        check!("young-squared", Scalar, BOTH, c, ParamKind::None, Open, SCALAR_TOL, "refined Young inequality for squares"),
        check!("quadratic-gap", Scalar, BOTH, c, ParamKind::None, Open, SCALAR_TOL, "bounds on the gap of squared means"),
        check!("heinz-mean", Scalar, none, None, ParamKind::None, Closed, SCALAR_TOL, "geometric ≤ Heinz ≤ arithmetic mean"),
        check!("phi-sandwich", Scalar, none, None, ParamKind::Probe, Open, SCALAR_TOL, "convex-function refinement of Young's inequality"),
        check!("power-sandwich", Scalar, none, None, ParamKind::Order(M123), Open, SCALAR_TOL, "x^m refinement of Young's inequality"),
        check!("heinz-sandwich", Scalar, none, None, ParamKind::Probe, Closed, SCALAR_TOL, "convex-function refinement of the Heinz inequality"),
        check!("heinz-power-sandwich", Scalar, none, None, ParamKind::Order(M123), Closed, SCALAR_TOL, "x^m refinement of the Heinz inequality"),
        check!("lemma312", Scalar, none, None, ParamKind::None, Closed, SCALAR_TOL, "squared Heinz sum bound"),
        check!("squared-young", Scalar, none, None, ParamKind::None, LowerHalf, SCALAR_TOL, "refined Young inequality at squared arguments"),
        check!("sv-young", Matrix, none, None, ParamKind::None, Closed, MATRIX_TOL, "singular value Young inequality"),
        check!("trace-young", Matrix, none, None, ParamKind::None, Closed, MATRIX_TOL, "trace Young inequality"),
        check!("det-young", Matrix, none, None, ParamKind::None, Closed, MATRIX_TOL, "determinant Young inequality"),
        check!("norm-young", Matrix, none, None, ParamKind::Norm, OpenClosed, MATRIX_TOL, "Young inequality for unitarily invariant norms"),
        check!("sababheh", Matrix, BOTH, c, ParamKind::Norm, LowerHalf, MATRIX_TOL, "refined norm Young inequality"),
        check!("zhaowu-hs", Matrix, BOTH, c, ParamKind::None, Open, MATRIX_TOL, "refined and reversed HS Young inequalities"),
        check!("thm34", Matrix, none, None, ParamKind::Order(M123), OpenClosed, MATRIX_TOL, "m-th power trace refinement"),
        check!("thm35", Matrix, BOTH, c, ParamKind::Order(M123), LowerHalf, MATRIX_TOL, "m-th power determinant refinement"),
        check!("thm36", Matrix, none, None, ParamKind::NormOrder(M123), LowerHalf, MATRIX_TOL, "m-th power norm refinement"),
        check!("remark37-det", Matrix, BOTH, c, ParamKind::Order(M123), UpperHalf, MATRIX_TOL, "determinant refinement for ν ≥ 1/2"),
        check!("remark37-norm", Matrix, BOTH, c, ParamKind::NormOrder(M123), UpperHalf, MATRIX_TOL, "norm refinement for ν ≥ 1/2"),
        check!("prop38", Matrix, BOTH, c, ParamKind::None, Open, MATRIX_TOL, "HS refinement through the decomposition identities"),
        check!("thm39", Matrix, BOTH, c, ParamKind::Probe, LowerHalf, MATRIX_TOL, "convex-function HS refinement"),
        check!("example311", Matrix, BOTH, c, ParamKind::Order(M234), LowerHalf, MATRIX_TOL, "x^(m/2) HS refinement"),
        check!("thm313", Matrix, none, None, ParamKind::None, LowerHalf, MATRIX_TOL, "refined HS Heinz inequality"),
        check!("prop314", Matrix, BOTH, c, ParamKind::Norm, LowerHalf, MATRIX_TOL, "refined norm Heinz inequality"),
        check!("lemma31", Matrix, none, None, ParamKind::None, None, MATRIX_TOL, "singular values of a product"),
        check!("lemma32", Matrix, none, None, ParamKind::Norm, Closed, MATRIX_TOL, "Heinz–Kato type norm inequality"),
        check!("lemma33", Matrix, none, None, ParamKind::None, None, MATRIX_TOL, "Minkowski determinant inequality"),
        check!("bhatia-kittaneh", Matrix, none, None, ParamKind::Norm, None, MATRIX_TOL, "arithmetic–geometric mean norm inequality"),
        check!("hs-identities", Matrix, none, None, ParamKind::None, None, IDENTITY_TOL, "HS decomposition identities"),
    ]
}

pub fn lookup(id: &str) -> Result<CheckSpec> {
    registry()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::Parse(format!("unknown check id `{id}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_resolvable() {
        let all = registry();
        let mut ids: Vec<_> = all.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), all.len());
        assert!(lookup("thm313").is_ok());
        assert!(matches!(lookup("thm99"), Err(Error::Parse(_))));
    }

    #[test]
    fn pinned_variant_is_registered() {
        for c in registry() {
            match c.pinned {
                Some(v) => assert!(c.variants.contains(&v), "{}", c.id),
                None => assert!(c.variants.is_empty(), "{}", c.id),
            }
        }
    }

    #[test]
    fn variant_resolution() {
        let s = lookup("sababheh").unwrap();
        assert_eq!(s.resolve_variant(None), Some(Variant::Corrected));
        assert_eq!(s.resolve_variant(Some(Variant::Printed)), Some(Variant::Printed));
        let t = lookup("thm313").unwrap();
        assert_eq!(t.resolve_variant(Some(Variant::Printed)), None);
        assert_eq!(lookup("thm36").unwrap().param_grid().len(), 24);
    }
}
