//! Small dense complex linear algebra: matrices, a cyclic Jacobi Hermitian
//! eigensolver, PSD tests, square roots, operator norms and random isometries.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MathError {
    #[error("matrix is not Hermitian (asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eig:.3e})")]
    NotPsd { min_eig: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix has non-finite entries")]
    NonFinite,
}

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixDoc")]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

#[derive(Deserialize)]
struct MatrixDoc {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl TryFrom<MatrixDoc> for CMatrix {
    type Error = MathError;

    fn try_from(d: MatrixDoc) -> Result<Self, MathError> {
        Self::new(d.rows, d.cols, d.data)
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self, MathError> {
        if rows == 0 || cols == 0 {
            return Err(MathError::DimensionMismatch(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if rows.checked_mul(cols) != Some(data.len()) {
            return Err(MathError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(MathError::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from real row slices. Panics on ragged input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        Self::from_fn(r, c, |i, j| {
            assert_eq!(rows[i].len(), c, "ragged rows");
            C64::new(rows[i][j], 0.0)
        })
    }

    pub fn diag_real(d: &[f64]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |i, j| if i == j { C64::new(d[i], 0.0) } else { ZERO })
    }

    pub fn scalar(n: usize, z: C64) -> Self {
        Self::identity(n).scale(z)
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

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, z: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * z).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest absolute entry of `M - M*`.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `(M + M*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let a = self.adjoint();
        Self::from_fn(self.rows, self.cols, |i, j| (self[(i, j)] + a[(i, j)]) * 0.5)
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        Self::from_fn(r, c, |i, j| {
            self[(i / other.rows, j / other.cols)] * other[(i % other.rows, j % other.cols)]
        })
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, m: &Self) {
        for i in 0..m.rows {
            for j in 0..m.cols {
                self[(r0 + i, c0 + j)] = m[(i, j)];
            }
        }
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn mat_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.cols, "mat_vec dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, MathError> {
        if self.cols != other.rows {
            return Err(MathError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = vec![ZERO; self.rows * other.cols];
        for i in 0..self.rows {
            let orow = &mut out[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Ok(Self { rows: self.rows, cols: other.cols, data: out })
    }

    /// Frobenius distance to `other`; infinite when shapes differ.
    pub fn dist(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
    }

    /// `M*M` computed without materialising the adjoint.
    pub fn gram(&self) -> Self {
        self.adjoint().checked_mul(self).expect("shapes agree")
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.checked_mul(rhs).expect("matrix product dimension mismatch")
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum dimension mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference dimension mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale_real(-1.0)
    }
}

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues ascend; column `k`
/// of `eigenvectors` belongs to `eigenvalues[k]`.
#[derive(Debug, Clone)]
pub struct HermEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl HermEig {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    /// `Q f(Λ) Q*`.
    pub fn apply_fn(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let q = &self.eigenvectors;
        let n = q.rows();
        let vals: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        CMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| q[(i, k)] * q[(j, k)].conj() * vals[k]).sum()
        })
    }
}

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_REL_TOL: f64 = 1e-13;

/// Hermitian eigen-decomposition by cyclic complex Jacobi rotations.
pub fn herm_eig(m: &CMatrix) -> Result<HermEig, MathError> {
    if !m.is_square() {
        return Err(MathError::DimensionMismatch(format!("{}x{} is not square", m.rows, m.cols)));
    }
    let scale = m.frobenius_norm();
    if !scale.is_finite() {
        return Err(MathError::NonFinite);
    }
    let asym = m.hermitian_defect();
    if asym > 1e-10 * (1.0 + scale) {
        return Err(MathError::NotHermitian { asymmetry: asym });
    }
    let n = m.rows;
    let mut a = m.hermitian_part().data;
    for i in 0..n {
        a[i * n + i] = C64::new(a[i * n + i].re, 0.0);
    }
    let mut v = CMatrix::identity(n).data;
    let threshold = JACOBI_REL_TOL * scale;

    let off_norm = |a: &[C64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off_norm(&a) > threshold {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(MathError::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let b = a[p * n + q];
                let bn = b.norm();
                if bn == 0.0 || bn < 1e-300 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let phase_conj = (b / bn).conj();
                let tau = (aqq - app) / (2.0 * bn);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // G = diag(1, conj(phase)) * [[c, s], [-s, c]]
                let g_pp = C64::new(c, 0.0);
                let g_pq = C64::new(s, 0.0);
                let g_qp = phase_conj * (-s);
                let g_qq = phase_conj * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * g_pp + akq * g_qp;
                    a[k * n + q] = akp * g_pq + akq * g_qq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = g_pp.conj() * apk + g_qp.conj() * aqk;
                    a[q * n + k] = g_pq.conj() * apk + g_qq.conj() * aqk;
                }
                a[p * n + q] = ZERO;
                a[q * n + p] = ZERO;
                a[p * n + p] = C64::new(a[p * n + p].re, 0.0);
                a[q * n + q] = C64::new(a[q * n + q].re, 0.0);
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * g_pp + vkq * g_qp;
                    v[k * n + q] = vkp * g_pq + vkq * g_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let eigenvalues = order.iter().map(|&i| a[i * n + i].re).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |i, k| v[i * n + order[k]]);
    Ok(HermEig { eigenvalues, eigenvectors })
}

/// Outcome of a PSD test. `pass` iff `min_eig >= -tol * (1 + max(max_eig, 0))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsdVerdict {
    pub pass: bool,
    pub min_eig: f64,
    pub max_eig: f64,
    pub tol: f64,
}

impl PsdVerdict {
    /// `min_eig / (1 + max_eig)`: the quantity compared against `-tol`.
    pub fn relative_slack(&self) -> f64 {
        self.min_eig / (1.0 + self.max_eig.max(0.0))
    }
}

pub fn is_psd(m: &CMatrix, tol: f64) -> Result<PsdVerdict, MathError> {
    let eig = herm_eig(m)?;
    Ok(psd_verdict(eig.min(), eig.max(), tol))
}

pub fn psd_verdict(min_eig: f64, max_eig: f64, tol: f64) -> PsdVerdict {
    PsdVerdict { pass: min_eig >= -tol * (1.0 + max_eig.max(0.0)), min_eig, max_eig, tol }
}

/// Principal square root of a PSD matrix. Eigenvalues in `[-tol(1+λmax), 0)`
/// are clamped to zero; anything more negative is rejected.
pub fn psd_sqrt(m: &CMatrix, tol: f64) -> Result<CMatrix, MathError> {
    let eig = herm_eig(m)?;
    let verdict = psd_verdict(eig.min(), eig.max(), tol);
    if !verdict.pass {
        return Err(MathError::NotPsd { min_eig: verdict.min_eig });
    }
    Ok(eig.apply_fn(|l| l.max(0.0).sqrt()))
}

/// Largest singular value.
pub fn op_norm(m: &CMatrix) -> f64 {
    let g = if m.rows <= m.cols { m * &m.adjoint() } else { m.gram() };
    match herm_eig(&g) {
        Ok(e) => e.max().max(0.0).sqrt(),
        Err(_) => f64::NAN,
    }
}

/// Moore–Penrose pseudo-inverse of a Hermitian PSD matrix, dropping
/// eigenvalues below `rel_cut * λmax`.
pub fn psd_pinv(m: &CMatrix, rel_cut: f64) -> Result<CMatrix, MathError> {
    let eig = herm_eig(m)?;
    let cut = rel_cut * eig.max().max(0.0);
    Ok(eig.apply_fn(|l| if l > cut && l > 0.0 { 1.0 / l } else { 0.0 }))
}

/// Complex matrix with i.i.d. standard Gaussian real and imaginary parts.
pub fn random_gaussian<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    })
}

pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    random_gaussian(n, n, rng).hermitian_part()
}

/// Random isometry `C^{n_from} -> C^{n_to}` (so `V*V = I`), by Gram–Schmidt
/// on a Gaussian matrix (two passes).
pub fn random_isometry<R: Rng + ?Sized>(
    n_from: usize,
    n_to: usize,
    rng: &mut R,
) -> Result<CMatrix, MathError> {
    if n_from == 0 || n_from > n_to {
        return Err(MathError::DimensionMismatch(format!(
            "isometry from dimension {n_from} into {n_to}"
        )));
    }
    loop {
        let g = random_gaussian(n_to, n_from, rng);
        if let Some(q) = orthonormalize_columns(&g) {
            return Ok(q);
        }
    }
}

/// Gram–Schmidt with reorthogonalisation; `None` if the columns are
/// numerically dependent.
pub fn orthonormalize_columns(m: &CMatrix) -> Option<CMatrix> {
    let (rows, cols) = (m.rows, m.cols);
    let mut qs: Vec<Vec<C64>> = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut v = m.column(j);
        let orig = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for _ in 0..2 {
            for q in &qs {
                let ip: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= ip * qi;
                }
            }
        }
        let nrm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if nrm <= 1e-10 * orig.max(1e-300) {
            return None;
        }
        for vi in &mut v {
            *vi /= nrm;
        }
        qs.push(v);
    }
    Some(CMatrix::from_fn(rows, cols, |i, j| qs[j][i]))
}

/// Seeded-constructor convenience for [`random_isometry`].
pub fn random_isometry_seeded(n_from: usize, n_to: usize, seed: u64) -> Result<CMatrix, MathError> {
    random_isometry(n_from, n_to, &mut crate::rng::seeded(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn eig_identity_and_diagonal() {
        let e = herm_eig(&CMatrix::identity(2)).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 1.0]);
        let e = herm_eig(&CMatrix::diag_real(&[3.0, -1.0])).unwrap();
        assert_eq!(e.eigenvalues, vec![-1.0, 3.0]);
    }

    #[test]
    fn eig_pauli_x() {
        // det([[−λ,1],[1,−λ]]) = λ² − 1
        let m = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let e = herm_eig(&m).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_complex_2x2() {
        // [[1, i],[−i, 1]] has characteristic polynomial (1−λ)² − 1.
        let m = CMatrix::new(2, 2, vec![c(1.0), C64::i(), -C64::i(), c(1.0)]).unwrap();
        let e = herm_eig(&m).unwrap();
        assert!((e.eigenvalues[0]).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(herm_eig(&m), Err(MathError::NotHermitian { .. })));
    }

    #[test]
    fn eig_reconstructs_random_hermitian() {
        let mut rng = seeded(11);
        for n in 1..=12 {
            let m = random_hermitian(n, &mut rng);
            let e = herm_eig(&m).unwrap();
            let q = &e.eigenvectors;
            let rec = e.apply_fn(|l| l);
            assert!(rec.dist(&m) <= 1e-10 * (1.0 + m.frobenius_norm()));
            assert!(q.gram().dist(&CMatrix::identity(n)) <= 1e-10);
            assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn psd_examples() {
        let v = is_psd(&CMatrix::identity(2), 1e-8).unwrap();
        assert!(v.pass);
        assert!((v.min_eig - 1.0).abs() < 1e-15);

        let v = is_psd(&CMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 1.0]]), 1e-8).unwrap();
        assert!(!v.pass);
        assert!((v.min_eig + 1.0).abs() < 1e-13);

        let v = is_psd(&CMatrix::zeros(3, 3), 1e-8).unwrap();
        assert!(v.pass);
        assert_eq!(v.min_eig, 0.0);
    }

    #[test]
    fn sqrt_of_four_identity() {
        let r = psd_sqrt(&CMatrix::scalar(3, c(4.0)), 1e-12).unwrap();
        assert!(r.dist(&CMatrix::scalar(3, c(2.0))) < 1e-14);
    }

    #[test]
    fn sqrt_rejects_negative() {
        let m = CMatrix::diag_real(&[1.0, -0.5]);
        assert!(matches!(psd_sqrt(&m, 1e-10), Err(MathError::NotPsd { .. })));
        // tiny negative eigenvalues are clamped
        let m = CMatrix::diag_real(&[1.0, -1e-14]);
        let r = psd_sqrt(&m, 1e-10).unwrap();
        assert!(r.dist(&CMatrix::diag_real(&[1.0, 0.0])) < 1e-14);
    }

    #[test]
    fn op_norm_nilpotent() {
        // singular values of [[0,2],[0,0]] are {2, 0}
        let m = CMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]);
        assert!((op_norm(&m) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn isometry_postcondition() {
        let v = random_isometry_seeded(2, 6, 5).unwrap();
        assert_eq!((v.rows(), v.cols()), (6, 2));
        assert!(v.gram().dist(&CMatrix::identity(2)) < 1e-10);
        assert!(random_isometry_seeded(3, 2, 5).is_err());
    }

    #[test]
    fn constructor_validates() {
        assert!(CMatrix::new(2, 2, vec![ZERO; 3]).is_err());
        assert!(CMatrix::new(1, 1, vec![C64::new(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn kron_shapes_and_values() {
        let a = CMatrix::diag_real(&[1.0, 2.0]);
        let b = CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k[(2, 3)], c(2.0));
        assert_eq!(k[(0, 3)], ZERO);
    }
}
