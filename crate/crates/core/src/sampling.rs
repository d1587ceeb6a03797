//! Deterministic sample generation.
//!
//! All randomness comes from SplitMix64. Sample `i` of a run with seed `s`
//! draws from a fresh stream seeded with [`mix`]`(s, i)`, so any sample can be
//! regenerated on its own and evaluation order never changes a value.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::matrix::{ComplexMatrix, HermitianPSD, MAX_DIM};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn finalize(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Sub-seed for stream `index` of `seed`: the SplitMix64 finalizer applied to
/// `seed + (index + 1)·γ`, with γ the 64-bit golden-ratio increment.
pub fn mix(seed: u64, index: u64) -> u64 {
    finalize(seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN)))
}

/// SplitMix64 generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        finalize(self.state)
    }

    /// Uniform on [0, 1) with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal pair via Box–Muller.
    pub fn next_normal_pair(&mut self) -> (f64, f64) {
        let u1 = 1.0 - self.next_f64(); // (0, 1]
        let u2 = self.next_f64();
        let rad = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
        (rad * c, rad * s)
    }

    /// Complex normal with independent N(0, 1/2) parts, so `E|z|² = 1`.
    pub fn next_complex_normal(&mut self) -> Complex64 {
        let (x, y) = self.next_normal_pair();
        Complex64::new(x, y) * std::f64::consts::FRAC_1_SQRT_2
    }

    pub fn below(&mut self, n: u64) -> u64 {
        // n is tiny in every use, so modulo bias is below 2⁻⁵⁰
        self.next_u64() % n.max(1)
    }
}

fn check_dim(n: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(domain(format!("dimension {n} outside 1..={MAX_DIM}")))
    }
}

fn fill(rng: &mut SplitMix64, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| rng.next_complex_normal()).collect();
    ComplexMatrix::from_vec(rows, cols, data).expect("finite entries of the right length")
}

/// `rows × cols` matrix of complex standard normals.
pub fn gen_matrix(seed: u64, rows: usize, cols: usize) -> Result<ComplexMatrix> {
    check_dim(rows)?;
    check_dim(cols)?;
    Ok(fill(&mut SplitMix64::new(seed), rows, cols))
}

/// `G G*` for `G` of complex standard normals.
pub fn gen_psd(seed: u64, n: usize) -> Result<HermitianPSD> {
    check_dim(n)?;
    let g = fill(&mut SplitMix64::new(seed), n, n);
    HermitianPSD::new(&g * &g.adjoint())
}

/// Log-uniform scalar on `[lo, hi]`.
pub fn gen_scalar(seed: u64, range: (f64, f64)) -> Result<f64> {
    let (lo, hi) = range;
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
        return Err(domain(format!("invalid log-uniform range [{lo}, {hi}]")));
    }
    let u = SplitMix64::new(seed).next_f64();
    Ok((lo.ln() + u * (hi.ln() - lo.ln())).exp().clamp(lo, hi))
}

/// A hand-picked matrix case with a short description.
#[derive(Debug, Clone)]
pub struct StructuredCase {
    pub label: String,
    pub a: HermitianPSD,
    pub b: HermitianPSD,
    pub x: ComplexMatrix,
    /// Weight the case is tight at, if any. Cases without one run over the
    /// whole ν grid.
    pub nu: Option<f64>,
}

/// Edge cases: identity and equal pairs, commuting diagonals, rank-deficient
/// and near-singular matrices, and 1×1 embeddings of the tight scalar cases.
pub fn structured_cases(n: usize) -> Result<Vec<StructuredCase>> {
    check_dim(n)?;
    let psd = |m: ComplexMatrix| HermitianPSD::new(m);
    let case = |label: &str, a: ComplexMatrix, b: ComplexMatrix, x: ComplexMatrix, nu: Option<f64>| {
        Ok::<_, crate::Error>(StructuredCase { label: label.to_string(), a: psd(a)?, b: psd(b)?, x, nu })
    };
    let id = ComplexMatrix::identity(n);
    let ramp: Vec<f64> = (1..=n).map(|i| i as f64).collect();
    let rev: Vec<f64> = ramp.iter().rev().copied().collect();
    let wide = gen_psd(mix(0x5eed_u64, n as u64), n)?;
    let x_rand = gen_matrix(mix(0x5eed_u64, 1000 + n as u64), n, n)?;

    let mut out = Vec::new();
    // identity first: the audit reports violating witnesses in this order,
    // and the identity triple is the canonical counterexample
    out.push(case("identity", id.clone(), id.clone(), id.clone(), None)?);
    let one = ComplexMatrix::identity(1);
    out.push(case("scalar-identity", one.clone(), one.clone(), one, None)?);
    out.push(case("equal-pair", wide.matrix().clone(), wide.matrix().clone(), id.clone(), None)?);
    out.push(case("equal-pair-random-x", wide.matrix().clone(), wide.matrix().clone(), x_rand.clone(), None)?);
    out.push(case("commuting-diagonal", ComplexMatrix::diag(&ramp), ComplexMatrix::diag(&rev), id.clone(), None)?);
    out.push(case(
        "commuting-diagonal-spread",
        ComplexMatrix::diag(&ramp.iter().map(|v| v * v * 10.0).collect::<Vec<_>>()),
        ComplexMatrix::diag(&ramp.iter().map(|v| 0.1 / v).collect::<Vec<_>>()),
        x_rand.clone(),
        None,
    )?);

    let d = wide.decomp();
    let lmax = d.eigenvalues[0];
    let mut deficient = d.eigenvalues.clone();
    let mut near = d.eigenvalues.clone();
    if let Some(l) = deficient.last_mut() {
        *l = 0.0;
    }
    if let Some(l) = near.last_mut() {
        *l = 1e-12 * lmax;
    }
    let rank_def = d.reconstruct_from(&deficient);
    let near_sing = d.reconstruct_from(&near);
    let other = gen_psd(mix(0x5eed_u64, 2000 + n as u64), n)?;
    out.push(case("rank-deficient", rank_def.clone(), other.matrix().clone(), x_rand.clone(), None)?);
    out.push(case("rank-deficient-both", rank_def.clone(), rank_def, id.clone(), None)?);
    out.push(case("near-singular", near_sing, other.matrix().clone(), x_rand, None)?);

    // 1×1 embeddings of tight scalar cases
    let s = |v: f64| ComplexMatrix::diag(&[v]);
    for nu in [0.25, 0.5, 0.75] {
        out.push(case(&format!("scalar-equal-nu{nu}"), s(2.0), s(2.0), s(1.0), Some(nu))?);
        out.push(case(&format!("scalar-4-1-nu{nu}"), s(4.0), s(1.0), s(1.0), Some(nu))?);
    }
    out.push(case("scalar-1-eps-nu0.3", s(1.0), s(1e-15), s(1.0), Some(0.3))?);
    out.push(case("scalar-1-0-nu0.3", s(1.0), s(0.0), s(1.0), Some(0.3))?);
    out.push(case("scalar-extreme-nu0.3", s(1.0), s(1e-6), s(1.0), Some(0.3))?);
    Ok(out)
}

/// Run configuration; deserializable from the CLI's JSON config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SampleConfig {
    pub seed: u64,
    /// Largest matrix dimension.
    pub n: usize,
    /// Matrix samples per check.
    pub count: usize,
    /// Scalar samples per check.
    pub scalar_count: usize,
    pub scalar_range: (f64, f64),
    pub nu_grid: Vec<f64>,
    pub include_structured: bool,
    /// Cycle matrix dimensions through `1..=n` instead of fixing `n`.
    pub vary_n: bool,
    /// Overrides the per-check relative tolerance.
    pub tol: Option<f64>,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            seed: 20_240_917,
            n: 6,
            count: 1000,
            scalar_count: 100_000,
            scalar_range: (1e-3, 1e3),
            nu_grid: default_nu_grid(),
            include_structured: true,
            vary_n: true,
            tol: None,
        }
    }
}

impl SampleConfig {
    pub fn validate(&self) -> Result<()> {
        check_dim(self.n)?;
        let (lo, hi) = self.scalar_range;
        if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
            return Err(domain(format!("invalid scalar range [{lo}, {hi}]")));
        }
        if self.nu_grid.is_empty() {
            return Err(domain("empty ν grid"));
        }
        if let Some(nu) = self.nu_grid.iter().find(|v| !(**v >= 0.0 && **v <= 1.0)) {
            return Err(domain(format!("ν = {nu} outside [0, 1]")));
        }
        if let Some(t) = self.tol {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(domain(format!("invalid tolerance {t}")));
            }
        }
        Ok(())
    }
}

/// `{0.01, 0.02, …, 0.99}`.
pub fn default_nu_grid() -> Vec<f64> {
    (1..=99).map(|k| f64::from(k) / 100.0).collect()
}
