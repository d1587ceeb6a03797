//! Dense complex matrices and the Hermitian spectral machinery built on them.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{dimension, domain, Error, Result};

/// Largest dimension accepted by [`HermitianPSD::new`].
pub const MAX_DIM: usize = 64;
/// Relative Hermitian defect tolerated at construction.
pub const TAU_HERM: f64 = 1e-10;
/// Negative eigenvalues down to `-TAU_PSD * λ_max` are clamped to 0.
pub const TAU_PSD: f64 = 1e-10;
/// Relative reconstruction error tolerated for `U diag(λ) U*`.
pub const TAU_RECON: f64 = 1e-9;

const JACOBI_SWEEPS: usize = 100;
const JACOBI_TOL: f64 = 1e-14;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from row-major data; fails on a length mismatch or non-finite entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(dimension(format!("{} entries for a {rows}×{cols} matrix", data.len())));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(domain("matrix entries must be finite"));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(dimension("ragged rows"));
        }
        Self::from_vec(rows.len(), cols, rows.concat())
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> =
            rows.iter().map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.cols.max(1)).map(<[Complex64]>::to_vec).take(self.rows).collect()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Entrywise Hilbert–Schmidt (Frobenius) norm.
    pub fn hs_norm(&self) -> f64 {
        self.hs_norm_sq().sqrt()
    }

    pub fn hs_norm_sq(&self) -> f64 {
        self.data.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(dimension(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(dimension(format!(
                "shape {}×{} vs {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    /// Determinant by LU factorization with partial pivoting.
    pub fn det(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(dimension("determinant of a non-square matrix"));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for k in 0..n {
            let pivot = (k..n)
                .max_by(|&i, &j| a[i * n + k].norm().total_cmp(&a[j * n + k].norm()))
                .unwrap_or(k);
            if a[pivot * n + k].norm() == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            if pivot != k {
                for j in 0..n {
                    a.swap(k * n + j, pivot * n + j);
                }
                det = -det;
            }
            let p = a[k * n + k];
            det *= p;
            for i in k + 1..n {
                let f = a[i * n + k] / p;
                for j in k + 1..n {
                    let t = a[k * n + j];
                    a[i * n + j] -= f * t;
                }
            }
        }
        Ok(det)
    }

    /// `‖M − M*‖_HS`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                s += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        s.sqrt()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    s += self[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch; use the `checked_*` methods for
// fallible arithmetic.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: Self) -> ComplexMatrix {
        self.checked_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: Self) -> ComplexMatrix {
        self.checked_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: Self) -> ComplexMatrix {
        self.checked_sub(rhs).expect("matrix difference shape mismatch")
    }
}

/// Eigenvalues in descending order and the unitary whose columns are the
/// corresponding eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomp {
    pub eigenvalues: Vec<f64>,
    pub unitary: ComplexMatrix,
}

impl SpectralDecomp {
    /// `U diag(f(λ)) U*`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        self.reconstruct_from(&fl)
    }

    /// `U diag(values) U*` for replacement eigenvalues in the same order.
    pub fn reconstruct_from(&self, fl: &[f64]) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        assert_eq!(fl.len(), n, "one value per eigenvalue");
        let u = &self.unitary;
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    if fl[k] != 0.0 {
                        s += u[(i, k)] * u[(j, k)].conj() * fl[k];
                    }
                }
                if i == j {
                    out[(i, i)] = Complex64::new(s.re, 0.0);
                } else {
                    out[(i, j)] = s;
                    out[(j, i)] = s.conj();
                }
            }
        }
        out
    }
}

/// Cyclic Jacobi eigensolver for a Hermitian matrix.
///
/// The matrix is symmetrized before iterating. Sweeps run in fixed row-major
/// pair order, so the result is a deterministic function of the input.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<SpectralDecomp> {
    if !m.is_square() {
        return Err(domain("eigendecomposition of a non-square matrix"));
    }
    let norm = m.hs_norm();
    if m.hermitian_defect() > TAU_HERM * norm {
        return Err(domain("matrix is not Hermitian within tolerance"));
    }
    let n = m.rows();
    let mut a = symmetrized(m);
    let mut v = ComplexMatrix::identity(n);

    let mut converged = false;
    for _ in 0..JACOBI_SWEEPS {
        if a.off_diagonal_norm() <= JACOBI_TOL * norm {
            converged = true;
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                rotated |= rotate(&mut a, &mut v, p, q);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged && a.off_diagonal_norm() > JACOBI_TOL * norm {
        return Err(Error::Numerical(format!("Jacobi did not converge in {JACOBI_SWEEPS} sweeps")));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut unitary = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            unitary[(i, dst)] = v[(i, src)];
        }
    }
    Ok(SpectralDecomp { eigenvalues, unitary })
}

fn symmetrized(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.rows();
    let mut out = m.clone();
    for i in 0..n {
        out[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
        for j in i + 1..n {
            let z = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            out[(i, j)] = z;
            out[(j, i)] = z.conj();
        }
    }
    out
}

/// One Jacobi rotation annihilating `a[p][q]`; returns false if it was already 0.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) -> bool {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return false;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // below rounding level of the diagonal: zeroing it changes nothing
    if mag <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = Complex64::new(0.0, 0.0);
        a[(q, p)] = Complex64::new(0.0, 0.0);
        return true;
    }
    let phase = apq / mag;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 { 1.0 } else { -1.0 } / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let ph = phase.conj();
    // J = [[c, s], [-s·e^{-iφ}, c·e^{-iφ}]] on the (p, q) plane
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = ph * (-s);
    let jqq = ph * c;

    let n = a.rows();
    for i in 0..n {
        let (xp, xq) = (a[(i, p)], a[(i, q)]);
        a[(i, p)] = xp * jpp + xq * jqp;
        a[(i, q)] = xp * jpq + xq * jqq;
        let (vp, vq) = (v[(i, p)], v[(i, q)]);
        v[(i, p)] = vp * jpp + vq * jqp;
        v[(i, q)] = vp * jpq + vq * jqq;
    }
    for j in 0..n {
        let (xp, xq) = (a[(p, j)], a[(q, j)]);
        a[(p, j)] = jpp.conj() * xp + jqp.conj() * xq;
        a[(q, j)] = jpq.conj() * xp + jqq.conj() * xq;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    true
}

/// A validated positive semidefinite matrix with its spectral decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianPSD {
    matrix: ComplexMatrix,
    decomp: SpectralDecomp,
}

impl HermitianPSD {
    /// Validate, symmetrize and decompose. Eigenvalues in
    /// `[-TAU_PSD·λ_max, 0)` are clamped to 0; more negative ones reject.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() || m.rows() == 0 {
            return Err(domain(format!("expected a non-empty square matrix, got {}×{}", m.rows(), m.cols())));
        }
        if m.rows() > MAX_DIM {
            return Err(domain(format!("dimension {} exceeds {MAX_DIM}", m.rows())));
        }
        let mut decomp = eig_hermitian(&m)?;
        let lmax = decomp.eigenvalues[0].max(0.0);
        if let Some(&low) = decomp.eigenvalues.last() {
            if low < -TAU_PSD * lmax || (lmax == 0.0 && low < 0.0) {
                return Err(domain(format!("matrix not positive semidefinite (eigenvalue {low:e})")));
            }
        }
        for l in &mut decomp.eigenvalues {
            *l = l.max(0.0);
        }
        let matrix = symmetrized(&m);
        let norm = matrix.hs_norm();
        let err = (&decomp.reconstruct_with(|l| l) - &matrix).hs_norm();
        if err > TAU_RECON * norm.max(f64::MIN_POSITIVE) && err > 0.0 {
            return Err(Error::Numerical(format!("reconstruction error {err:e} too large")));
        }
        Ok(Self { matrix, decomp })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// The symmetrized input matrix.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn decomp(&self) -> &SpectralDecomp {
        &self.decomp
    }

    /// Eigenvalues, descending and clamped to be nonnegative.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.decomp.eigenvalues
    }

    /// Smallest eigenvalue above rounding level, `64·n·ε·λ_max`.
    pub fn is_positive_definite(&self) -> bool {
        let e = self.eigenvalues();
        let floor = 64.0 * e.len() as f64 * f64::EPSILON * e[0];
        e.last().is_some_and(|&l| l > floor)
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Product of eigenvalues.
    pub fn det(&self) -> f64 {
        self.eigenvalues().iter().product()
    }

    /// `A^t = U diag(λ^t) U*`, with `A⁰ = I` even for singular `A`.
    pub fn frac_power(&self, t: f64) -> Result<ComplexMatrix> {
        if !t.is_finite() {
            return Err(domain("power must be finite"));
        }
        if t < 0.0 && !self.is_positive_definite() {
            return Err(domain("negative power of a singular matrix"));
        }
        if t == 0.0 {
            return Ok(ComplexMatrix::identity(self.dim()));
        }
        if t == 1.0 {
            return Ok(self.matrix.clone());
        }
        Ok(self.decomp.reconstruct_with(|l| l.powf(t)))
    }
}

/// Singular values, descending: square roots of the eigenvalues of `M*M`.
///
/// One-sided Jacobi: rotates column pairs of `M` until they are orthogonal,
/// which diagonalizes `M*M` without forming it. Small singular values keep
/// their relative accuracy, unlike square roots of the Gram eigenvalues.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if m.rows() == 1 || m.cols() == 1 {
        // a vector has one nonzero singular value: its length
        let mut s = vec![0.0; m.rows().min(m.cols())];
        if let Some(first) = s.first_mut() {
            *first = m.hs_norm();
        }
        return Ok(s);
    }
    let work = if m.cols() > m.rows() { m.adjoint() } else { m.clone() };
    let (rows, k) = (work.rows(), work.cols());
    // column-major copy so column pairs are contiguous
    let mut cols: Vec<Vec<Complex64>> = (0..k).map(|j| (0..rows).map(|i| work[(i, j)]).collect()).collect();
    let thresh = rows as f64 * f64::EPSILON;
    let mut converged = false;
    for _ in 0..JACOBI_SWEEPS {
        let mut rotated = false;
        for p in 0..k {
            for q in p + 1..k {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = cols[p].iter().zip(&cols[q]).map(|(a, b)| a.conj() * b).sum();
                let g = gamma.norm();
                if g <= thresh * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(q);
                for (up, uq) in left[p].iter_mut().zip(right[0].iter_mut()) {
                    let a = *up;
                    let b = *uq * phase;
                    *up = a * c - b * s;
                    *uq = a * s + b * c;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numerical(format!("one-sided Jacobi did not converge in {JACOBI_SWEEPS} sweeps")));
    }
    let mut s: Vec<f64> = cols.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    if s.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("non-finite singular value".into()));
    }
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn hermitian_sample() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![c(4.0, 0.0), c(1.0, 2.0), c(0.0, -1.0)],
            vec![c(1.0, -2.0), c(3.0, 0.0), c(0.5, 0.5)],
            vec![c(0.0, 1.0), c(0.5, -0.5), c(6.0, 0.0)],
        ])
        .unwrap()
    }

    #[test]
    fn eig_of_diagonal_and_two_by_two() {
        let d = eig_hermitian(&ComplexMatrix::diag(&[1.0, 3.0])).unwrap();
        assert_eq!(d.eigenvalues, vec![3.0, 1.0]);
        let m = ComplexMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let d = eig_hermitian(&m).unwrap();
        assert!((d.eigenvalues[0] - 3.0).abs() < 1e-14);
        assert!((d.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_reconstructs_and_is_unitary() {
        let m = hermitian_sample();
        let d = eig_hermitian(&m).unwrap();
        let err = (&d.reconstruct_with(|l| l) - &m).hs_norm();
        assert!(err < 1e-13 * m.hs_norm());
        let u = &d.unitary;
        let defect = (&(&u.adjoint() * u) - &ComplexMatrix::identity(3)).hs_norm();
        assert!(defect < 1e-13);
        let trace: f64 = d.eigenvalues.iter().sum();
        assert!((trace - 13.0).abs() < 1e-12);
    }

    #[test]
    fn eig_rejects_bad_input() {
        let rect = ComplexMatrix::zeros(2, 3);
        assert!(matches!(eig_hermitian(&rect), Err(Error::Domain(_))));
        let skew = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
        assert!(matches!(eig_hermitian(&skew), Err(Error::Domain(_))));
    }

    #[test]
    fn frac_power_examples() {
        let a = HermitianPSD::new(ComplexMatrix::diag(&[4.0, 9.0])).unwrap();
        let h = a.frac_power(0.5).unwrap();
        assert!((&h - &ComplexMatrix::diag(&[2.0, 3.0])).hs_norm() < 1e-15);

        let g = HermitianPSD::new(&hermitian_sample().adjoint() * &hermitian_sample()).unwrap();
        let p = &g.frac_power(0.3).unwrap() * &g.frac_power(0.7).unwrap();
        assert!((&p - g.matrix()).hs_norm() < 1e-12 * g.matrix().hs_norm());

        let singular = HermitianPSD::new(ComplexMatrix::diag(&[1.0, 0.0])).unwrap();
        assert_eq!(singular.frac_power(0.0).unwrap(), ComplexMatrix::identity(2));
        assert!(singular.frac_power(-1.0).is_err());
    }

    #[test]
    fn psd_validation() {
        assert!(HermitianPSD::new(ComplexMatrix::diag(&[1.0, -1.0])).is_err());
        let clamped = HermitianPSD::new(ComplexMatrix::diag(&[1.0, -1e-12])).unwrap();
        assert_eq!(clamped.eigenvalues(), &[1.0, 0.0]);
        assert!(!clamped.is_positive_definite());
        assert!(HermitianPSD::new(ComplexMatrix::identity(65)).is_err());
    }

    #[test]
    fn singular_value_examples() {
        let m = ComplexMatrix::from_real_rows(&[vec![3.0, 4.0], vec![0.0, 0.0]]).unwrap();
        let s = singular_values(&m).unwrap();
        assert!((s[0] - 5.0).abs() < 1e-14 && s[1].abs() < 1e-7);
        let u = eig_hermitian(&hermitian_sample()).unwrap().unitary;
        for s in singular_values(&u).unwrap() {
            assert!((s - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn det_and_trace() {
        assert_eq!(ComplexMatrix::identity(4).det().unwrap(), c(1.0, 0.0));
        assert_eq!(ComplexMatrix::diag(&[1.0, 2.0, 3.0]).trace(), c(6.0, 0.0));
        let m = hermitian_sample();
        let d = m.det().unwrap();
        let psd = HermitianPSD::new(&m.adjoint() * &m).unwrap();
        assert!((psd.det() - d.norm_sqr()).abs() < 1e-10 * d.norm_sqr());
        let sq = ComplexMatrix::from_rows(&[vec![c(0.0, 1.0), c(2.0, 0.0)], vec![c(1.0, 1.0), c(0.0, 0.0)]]).unwrap();
        assert_eq!(sq.det().unwrap(), c(-2.0, -2.0));
    }

    #[test]
    fn adjoint_is_involutive() {
        let m = hermitian_sample().scale(0.5);
        assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn one_by_one_is_scalar_arithmetic() {
        let a = HermitianPSD::new(ComplexMatrix::diag(&[7.25])).unwrap();
        assert_eq!(a.frac_power(0.3).unwrap()[(0, 0)].re, 7.25_f64.powf(0.3));
        assert_eq!(a.det(), 7.25);
        assert_eq!(singular_values(&ComplexMatrix::diag(&[-2.5])).unwrap(), vec![2.5]);
    }
}
