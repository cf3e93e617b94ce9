//! Dense complex linear algebra for Hermitian matrices.
//!
//! Everything here is sized for small spin-model workloads: matrices are
//! dense squares of dimension 2^N, the eigensolver is a cyclic Jacobi
//! iteration, and matrix functions go through the spectral decomposition.
//! All values are immutable after construction and safe to share across
//! threads.

mod jacobi;
mod sym3;

pub use num_complex::Complex64;
pub use sym3::{max_eig_sym3, Axis, SymmetricMatrix3};

pub(crate) use jacobi::sort_pairs as sort_spectrum;

use crate::error::{Error, Result};
use crate::thermal::DensityMatrix;

/// Off-diagonal Frobenius norm (relative to the input norm) at which the
/// Jacobi iteration is considered converged.
pub const JACOBI_TOL: f64 = 1e-13;

/// Hard cap on Jacobi sweeps before reporting non-convergence.
pub const MAX_JACOBI_SWEEPS: usize = 100;

/// Largest asymmetry accepted when constructing a [`HermitianMatrix`];
/// anything below this is removed by exact symmetrization.
const HERMITICITY_TOL: f64 = 1e-12;

/// Dense square complex matrix with row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m.set(k, k, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik.re == 0.0 && aik.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Kronecker product; `self` occupies the more significant bits.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (n, m) = (self.dim, other.dim);
        let mut out = Matrix::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out.set(i * m + k, j * m + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim, "matrix sum dimension mismatch");
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(other.data.iter()) {
            *x += *y;
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim, "matrix difference dimension mismatch");
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(other.data.iter()) {
            *x -= *y;
        }
        out
    }

    pub fn scaled(&self, factor: Complex64) -> Matrix {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x *= factor;
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.dim, v.len(), "matrix-vector dimension mismatch");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|k| self.get(k, k)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.dim, other.dim, "matrix comparison dimension mismatch");
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Hermitian matrix: construction symmetrizes the input exactly, so
/// `get(j, k) == get(k, j).conj()` holds bit-for-bit afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    inner: Matrix,
}

impl HermitianMatrix {
    /// Validates finiteness and approximate hermiticity, then stores the
    /// exactly symmetrized matrix (A + A†)/2.
    pub fn from_matrix(m: Matrix) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFiniteEntries);
        }
        let scale = m.frobenius_norm().max(1.0);
        let mut asymmetry = 0.0f64;
        for i in 0..m.dim() {
            for j in i..m.dim() {
                let d = (m.get(i, j) - m.get(j, i).conj()).norm();
                asymmetry = asymmetry.max(d);
            }
        }
        if asymmetry > HERMITICITY_TOL * scale {
            return Err(Error::NotHermitian { asymmetry });
        }
        Ok(Self::symmetrized(m))
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        Self::from_matrix(Matrix::from_rows(rows)?)
    }

    /// Wraps a matrix that is Hermitian by construction.
    pub(crate) fn from_exact(m: Matrix) -> Self {
        debug_assert!(
            {
                let mut ok = true;
                for i in 0..m.dim() {
                    for j in i..m.dim() {
                        ok &= m.get(i, j) == m.get(j, i).conj();
                    }
                }
                ok
            },
            "from_exact called with a non-Hermitian matrix"
        );
        Self { inner: m }
    }

    fn symmetrized(mut m: Matrix) -> Self {
        for i in 0..m.dim() {
            let d = m.get(i, i);
            m.set(i, i, Complex64::new(d.re, 0.0));
            for j in (i + 1)..m.dim() {
                let avg = (m.get(i, j) + m.get(j, i).conj()) * 0.5;
                m.set(i, j, avg);
                m.set(j, i, avg.conj());
            }
        }
        Self { inner: m }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            inner: Matrix::zeros(dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            inner: Matrix::identity(dim),
        }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Matrix::zeros(values.len());
        for (k, &v) in values.iter().enumerate() {
            m.set(k, k, Complex64::new(v, 0.0));
        }
        Self { inner: m }
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.inner.get(row, col)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.inner
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.frobenius_norm()
    }

    /// Real trace (the diagonal is exactly real after symmetrization).
    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|k| self.get(k, k).re).sum()
    }

    pub fn kron(&self, other: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix::from_exact(self.inner.kron(&other.inner))
    }

    pub fn eigh(&self) -> Result<EigenSystem> {
        eigh(self)
    }
}

/// Spectral decomposition of a Hermitian matrix: ascending real eigenvalues
/// paired with the columns of a unitary matrix.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    values: Vec<f64>,
    vectors: Matrix,
}

impl EigenSystem {
    pub(crate) fn from_parts(values: Vec<f64>, vectors: Matrix) -> Self {
        debug_assert_eq!(values.len(), vectors.dim());
        Self { values, vectors }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Eigenvector columns; column `k` pairs with `values()[k]`.
    pub fn vectors(&self) -> &Matrix {
        &self.vectors
    }

    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }

    /// Assembles `V diag(d) V†` for a replacement diagonal `d`; the upper
    /// triangle is computed once and mirrored, so the result is exactly
    /// Hermitian.
    pub fn assemble(&self, diagonal: &[f64]) -> HermitianMatrix {
        assert_eq!(diagonal.len(), self.dim(), "diagonal length mismatch");
        let n = self.dim();
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &d) in diagonal.iter().enumerate() {
                    acc += self.vectors.get(i, k) * self.vectors.get(j, k).conj() * d;
                }
                if i == j {
                    out.set(i, i, Complex64::new(acc.re, 0.0));
                } else {
                    out.set(i, j, acc);
                    out.set(j, i, acc.conj());
                }
            }
        }
        HermitianMatrix::from_exact(out)
    }

    /// Rebuilds the matrix the decomposition came from.
    pub fn reconstruction(&self) -> HermitianMatrix {
        self.assemble(&self.values)
    }

    /// Largest ‖M·v_k − λ_k·v_k‖₂ over all eigenpairs.
    pub fn max_residual(&self, m: &HermitianMatrix) -> f64 {
        let mut worst = 0.0f64;
        for (k, &lambda) in self.values.iter().enumerate() {
            let v = self.vector(k);
            let mv = m.matrix().matvec(&v);
            let r2: f64 = mv
                .iter()
                .zip(v.iter())
                .map(|(a, b)| (a - b * lambda).norm_sqr())
                .sum();
            worst = worst.max(r2.sqrt());
        }
        worst
    }

    /// Largest entrywise deviation of V†V from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for r in 0..n {
                    acc += self.vectors.get(r, i).conj() * self.vectors.get(r, j);
                }
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((acc - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }
}

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Eigenvalues come out ascending; ties are broken by lexicographic order of
/// the phase-fixed eigenvector entries, so identical inputs give identical
/// outputs.
pub fn eigh(m: &HermitianMatrix) -> Result<EigenSystem> {
    jacobi::eigh(m)
}

/// Applies a real function to a Hermitian matrix through its spectrum,
/// returning V f(Λ) V†.
pub fn mat_func(m: &HermitianMatrix, f: impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
    let eig = eigh(m)?;
    let mut mapped = Vec::with_capacity(eig.dim());
    for &lambda in eig.values() {
        let y = f(lambda);
        if !y.is_finite() {
            return Err(Error::UndefinedAtEigenvalue { eigenvalue: lambda });
        }
        mapped.push(y);
    }
    Ok(eig.assemble(&mapped))
}

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
///
/// Evaluated in the eigenbasis of one of the states: with W = V† σ V the
/// matrix M_ij = sqrt(p_i) W_ij sqrt(p_j) has the same spectrum as
/// sqrt(rho) sigma sqrt(rho), and scaling by sqrt(p) after the basis change
/// keeps the tiny eigenvalues of rank-deficient states at their true size
/// instead of smearing them to machine-epsilon of the matrix norm. The state
/// closer to rank deficiency supplies the basis, which both conditions the
/// grading and makes the evaluation independent of the argument order.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let (pivot, other) = if rho.probabilities()[0] <= sigma.probabilities()[0] {
        (rho, sigma)
    } else {
        (sigma, rho)
    };
    let v = pivot.spectrum().vectors();
    let w = v.adjoint().mul(other.matrix().matrix()).mul(v);
    let sqrt_p: Vec<f64> = pivot
        .probabilities()
        .iter()
        .map(|&p| p.max(0.0).sqrt())
        .collect();
    let n = pivot.dim();
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, w.get(i, j) * (sqrt_p[i] * sqrt_p[j]));
        }
    }
    let eig = eigh(&HermitianMatrix::from_matrix(m)?)?;
    let trace_root: f64 = eig.values().iter().map(|&x| x.max(0.0).sqrt()).sum();
    Ok(trace_root * trace_root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermal::DensityMatrix;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigh_diagonal_input() {
        let m = HermitianMatrix::diagonal(&[3.0, -1.0]);
        let eig = eigh(&m).unwrap();
        assert_eq!(eig.values(), &[-1.0, 3.0]);
        // permuted identity columns
        assert_eq!(eig.vectors().get(1, 0), c(1.0, 0.0));
        assert_eq!(eig.vectors().get(0, 1), c(1.0, 0.0));
        assert_eq!(eig.vectors().get(0, 0), c(0.0, 0.0));
    }

    #[test]
    fn eigh_pauli_y() {
        let m = HermitianMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, -1.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let eig = eigh(&m).unwrap();
        assert!((eig.values()[0] + 1.0).abs() < 1e-14);
        assert!((eig.values()[1] - 1.0).abs() < 1e-14);
        assert!(eig.max_residual(&m) < 1e-14);
        assert!(eig.orthonormality_error() < 1e-14);
    }

    #[test]
    fn eigh_two_spin_exchange_hamiltonian() {
        let params = crate::spin::ModelParams {
            coupling: 1.0,
            temperature: 1.0,
            ..Default::default()
        };
        let h = crate::spin::build_hamiltonian(&params).unwrap();
        let eig = eigh(&h).unwrap();
        let expected = [-1.0, 0.0, 0.0, 1.0];
        for (got, want) in eig.values().iter().zip(expected.iter()) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn eigh_zero_matrix() {
        let m = HermitianMatrix::zeros(3);
        let eig = eigh(&m).unwrap();
        assert_eq!(eig.values(), &[0.0, 0.0, 0.0]);
        assert!(eig.orthonormality_error() == 0.0);
    }

    #[test]
    fn eigh_deterministic_tie_break() {
        let m = HermitianMatrix::diagonal(&[2.0, 2.0, -1.0]);
        let a = eigh(&m).unwrap();
        let b = eigh(&m).unwrap();
        assert_eq!(a.values(), b.values());
        assert_eq!(a.vectors(), b.vectors());
    }

    #[test]
    fn construction_rejects_non_hermitian() {
        let m = Matrix::from_rows(&[
            vec![c(1.0, 0.0), c(1.0, 0.0)],
            vec![c(0.5, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(
            HermitianMatrix::from_matrix(m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn construction_rejects_non_finite() {
        let m = Matrix::from_rows(&[
            vec![c(f64::NAN, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(
            HermitianMatrix::from_matrix(m),
            Err(Error::NonFiniteEntries)
        ));
    }

    #[test]
    fn mat_func_exp_of_zero_is_identity() {
        let out = mat_func(&HermitianMatrix::zeros(4), f64::exp).unwrap();
        assert!(out.matrix().max_abs_diff(&Matrix::identity(4)) < 1e-15);
    }

    #[test]
    fn mat_func_sqrt_of_diagonal() {
        let out = mat_func(&HermitianMatrix::diagonal(&[4.0, 9.0]), f64::sqrt).unwrap();
        assert!((out.get(0, 0).re - 2.0).abs() < 1e-14);
        assert!((out.get(1, 1).re - 3.0).abs() < 1e-14);
    }

    #[test]
    fn mat_func_rejects_sqrt_of_negative() {
        let err = mat_func(&HermitianMatrix::diagonal(&[-1.0, 4.0]), f64::sqrt);
        assert!(matches!(err, Err(Error::UndefinedAtEigenvalue { .. })));
    }

    #[test]
    fn fidelity_identical_states_is_one() {
        let rho = DensityMatrix::maximally_mixed(4);
        let f = fidelity(&rho, &rho).unwrap();
        assert!((f - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fidelity_orthogonal_pure_states_is_zero() {
        let zero = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let three = [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let a = DensityMatrix::pure(&zero).unwrap();
        let b = DensityMatrix::pure(&three).unwrap();
        assert!(fidelity(&a, &b).unwrap() < 1e-20);
    }

    #[test]
    fn fidelity_mixed_versus_pure_qubit() {
        let mixed = DensityMatrix::maximally_mixed(2);
        let plus = [c(std::f64::consts::FRAC_1_SQRT_2, 0.0), c(std::f64::consts::FRAC_1_SQRT_2, 0.0)];
        let pure = DensityMatrix::pure(&plus).unwrap();
        let f = fidelity(&mixed, &pure).unwrap();
        assert!((f - 0.5).abs() < 1e-12);
        let g = fidelity(&pure, &mixed).unwrap();
        assert!((f - g).abs() < 1e-10);
    }
}
