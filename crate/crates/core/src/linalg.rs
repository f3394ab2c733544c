//! Dense complex linear-algebra helpers shared by every module.
//!
//! Matrices and vectors are plain `nalgebra` dynamic types over `Complex64`;
//! real-valued objects (the listed frames, the projection matrices) are stored with
//! zero imaginary parts so there is a single code path.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Tolerance used when validating that an input operator is Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Build a complex matrix from real row-major data.
pub fn real_matrix(rows: usize, cols: usize, data: &[f64]) -> CMatrix {
    assert_eq!(data.len(), rows * cols);
    CMatrix::from_fn(rows, cols, |i, j| cr(data[i * cols + j]))
}

pub fn real_vector(data: &[f64]) -> CVector {
    CVector::from_iterator(data.len(), data.iter().map(|&x| cr(x)))
}

/// `|a⟩⟨b|`
pub fn outer(a: &CVector, b: &CVector) -> CMatrix {
    a * b.adjoint()
}

/// Hilbert–Schmidt inner product `⟨⟨A, B⟩⟩ = Tr(A† B)`.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// `Tr(A B)` without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    debug_assert_eq!(a.ncols(), b.nrows());
    debug_assert_eq!(a.nrows(), b.ncols());
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

pub fn hs_norm(a: &CMatrix) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entrywise modulus.
pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn is_square(a: &CMatrix) -> bool {
    a.nrows() == a.ncols()
}

pub fn is_hermitian(a: &CMatrix, tol: f64) -> bool {
    is_square(a) && max_abs_diff(a, &a.adjoint()) <= tol
}

pub fn is_unitary(u: &CMatrix, tol: f64) -> bool {
    is_square(u) && max_abs_diff(&(u.adjoint() * u), &CMatrix::identity(u.nrows(), u.ncols())) <= tol
}

/// `(A + A†)/2`
pub fn hermitian_part(a: &CMatrix) -> CMatrix {
    (a + a.adjoint()).scale(0.5)
}

/// Validate `A` as Hermitian within [`HERMITIAN_TOL`] and return its symmetrized copy.
pub fn checked_hermitian(a: &CMatrix) -> Result<CMatrix> {
    if !is_square(a) {
        return Err(Error::input(format!(
            "expected a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let dev = max_abs_diff(a, &a.adjoint());
    if dev > HERMITIAN_TOL {
        return Err(Error::input(format!(
            "matrix is not Hermitian (max |A - A†| = {dev:.3e})"
        )));
    }
    Ok(hermitian_part(a))
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues in descending order and
/// eigenvectors as the matching columns.
pub fn hermitian_eigen(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = a.nrows();
    let eig = SymmetricEigen::new(hermitian_part(a));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, k| eig.eigenvectors[(r, order[k])]);
    (values, vectors)
}

/// `Q diag(f(λ)) Q†` for Hermitian `A = Q diag(λ) Q†`.
pub fn hermitian_function(a: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let (values, q) = hermitian_eigen(a);
    let n = a.nrows();
    let mut scaled = q.clone();
    for (k, &lam) in values.iter().enumerate() {
        let s = f(lam);
        for r in 0..n {
            scaled[(r, k)] *= s;
        }
    }
    scaled * q.adjoint()
}

/// `A^{-1/2}` for a Hermitian positive-definite `A`; eigenvalues below `floor` are
/// rejected rather than regularised.
pub fn inverse_sqrt(a: &CMatrix, floor: f64) -> Result<CMatrix> {
    let (values, _) = hermitian_eigen(a);
    let min = values.last().copied().unwrap_or(0.0);
    if min <= floor {
        return Err(Error::NotAFrame(format!(
            "smallest eigenvalue {min:.3e} is below {floor:.1e}"
        )));
    }
    Ok(hermitian_function(a, |x| 1.0 / x.sqrt()))
}

/// Kronecker product with system 1 as the slow index.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// `Tr₁ A` for `A` acting on `C^{d1} ⊗ C^{d2}`.
pub fn partial_trace_first(a: &CMatrix, d1: usize, d2: usize) -> CMatrix {
    assert_eq!(a.nrows(), d1 * d2);
    CMatrix::from_fn(d2, d2, |l, m| (0..d1).map(|j| a[(j * d2 + l, j * d2 + m)]).sum())
}

/// `Tr₂ A` for `A` acting on `C^{d1} ⊗ C^{d2}`.
pub fn partial_trace_second(a: &CMatrix, d1: usize, d2: usize) -> CMatrix {
    assert_eq!(a.nrows(), d1 * d2);
    CMatrix::from_fn(d1, d1, |j, k| (0..d2).map(|l| a[(j * d2 + l, k * d2 + l)]).sum())
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CVector {
    CVector::from_fn(d, |_, _| {
        c(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    })
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        c(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    })
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    hermitian_part(&random_matrix(rng, d, d))
}

/// Random density matrix `G G† / Tr(G G†)` with Gaussian `G`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let g = random_matrix(rng, d, d);
    let rho = &g * g.adjoint();
    let tr = rho.trace().re;
    hermitian_part(&rho.unscale(tr))
}

/// Random unitary from the QR decomposition of a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    random_matrix(rng, d, d).qr().q()
}
