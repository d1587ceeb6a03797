use serde::{Deserialize, Serialize};

/// Largest magnitude among the terms that entered a computation, floored at 1.
///
/// Chains are differences of terms of comparable size, so rounding error is
/// proportional to the terms rather than to the (possibly tiny) differences.
pub fn magnitude<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    terms.into_iter().fold(1.0_f64, |acc, t| acc.max(t.abs()))
}

/// `lhs ≤ rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Inequality {
    pub lhs: f64,
    pub rhs: f64,
    pub scale: f64,
}

impl Inequality {
    pub fn new(lhs: f64, rhs: f64, scale: f64) -> Self {
        Self { lhs, rhs, scale: scale.max(lhs.abs()).max(rhs.abs()).max(1.0) }
    }

    pub fn slack(&self) -> f64 {
        self.rhs - self.lhs
    }

    pub fn rel_slack(&self) -> f64 {
        self.slack() / self.scale
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.slack() >= -tol * self.scale
    }
}

/// `lower ≤ middle ≤ upper`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sandwich {
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
    pub scale: f64,
}

impl Sandwich {
    pub fn new(lower: f64, middle: f64, upper: f64, scale: f64) -> Self {
        let scale = magnitude([scale, lower, middle, upper]);
        Self { lower, middle, upper, scale }
    }

    /// `[middle − lower, upper − middle]`.
    pub fn slacks(&self) -> [f64; 2] {
        [self.middle - self.lower, self.upper - self.middle]
    }

    pub fn min_slack(&self) -> f64 {
        let [lo, hi] = self.slacks();
        lo.min(hi)
    }

    pub fn rel_slack(&self) -> f64 {
        self.min_slack() / self.scale
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.min_slack() >= -tol * self.scale
    }
}
