//! Operator frames built from a tight frame `{v_j}` of `C^d`.
//!
//! `V_jk = |v_j⟩⟨v_k|` is a tight frame of all operators on `C^d` and the
//! Hermitian combinations
//!
//! ```text
//! W_jj = V_jj
//! W_jk = (V_jk + V_kj)/√2        j < k
//! W_jk = i(V_kj − V_jk)/√2       j > k
//! ```
//!
//! a tight frame of the self-adjoint ones. Tables are indexed `(j, k)` row-major
//! with this convention; it is also the serialization order.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::frames::{self, Frame, FrameKind};
use crate::linalg::{self, c, outer, CMatrix};

/// Real `(r+1) × (r+1)` table of frame Wigner coefficients `Tr(A W_jk)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerTable {
    count: usize,
    values: Vec<f64>,
}

impl WignerTable {
    pub fn new(count: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != count * count {
            return Err(Error::input(format!(
                "table of size {count} needs {} values, got {}",
                count * count,
                values.len()
            )));
        }
        Ok(WignerTable { count, values })
    }

    pub fn zeros(count: usize) -> Self {
        WignerTable { count, values: vec![0.0; count * count] }
    }

    pub fn from_fn(count: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let values = (0..count * count).map(|i| f(i / count, i % count)).collect();
        WignerTable { count, values }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.values[j * self.count + k]
    }

    pub fn set(&mut self, j: usize, k: usize, v: f64) {
        self.values[j * self.count + k] = v;
    }

    /// Row-major values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn diagonal_sum(&self) -> f64 {
        (0..self.count).map(|j| self.get(j, j)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `Σ values²`, the purity when the table comes from a state.
    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    pub fn max_abs_diff(&self, other: &WignerTable) -> f64 {
        assert_eq!(self.count, other.count);
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// Complex table of characteristic-function values `Tr(A V_jk†)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharTable {
    count: usize,
    values: Vec<Complex64>,
}

impl CharTable {
    pub fn new(count: usize, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != count * count {
            return Err(Error::input(format!(
                "table of size {count} needs {} values, got {}",
                count * count,
                values.len()
            )));
        }
        Ok(CharTable { count, values })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.values[j * self.count + k]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// The `(r+1)²` rank-one operators `V_jk = |v_j⟩⟨v_k|`.
#[derive(Debug, Clone)]
pub struct OperatorFrame {
    frame: Frame,
    ops: Vec<CMatrix>,
}

impl OperatorFrame {
    pub fn d(&self) -> usize {
        self.frame.d()
    }

    pub fn count(&self) -> usize {
        self.frame.count()
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn get(&self, j: usize, k: usize) -> &CMatrix {
        &self.ops[j * self.count() + k]
    }

    pub fn ops(&self) -> &[CMatrix] {
        &self.ops
    }

    /// Largest deviation of `Σ |V_jk⟩⟩⟨⟨V_jk|` from the identity, measured on the
    /// matrix units `E_il`.
    pub fn resolution_defect(&self) -> f64 {
        let d = self.d();
        let mut worst = 0.0f64;
        for i in 0..d {
            for l in 0..d {
                // ⟨⟨V_jk|E_il⟩⟩ = conj(V_jk[i, l])
                let image = self
                    .ops
                    .iter()
                    .fold(CMatrix::zeros(d, d), |acc, v| acc + v * v[(i, l)].conj());
                for r in 0..d {
                    for s in 0..d {
                        let want = if (r, s) == (i, l) { 1.0 } else { 0.0 };
                        worst = worst.max((image[(r, s)] - want).norm());
                    }
                }
            }
        }
        worst
    }
}

/// The `(r+1)²` Hermitian operators `W_jk`.
#[derive(Debug, Clone)]
pub struct HermitianFrame {
    frame: Frame,
    ops: Vec<CMatrix>,
}

impl HermitianFrame {
    pub fn d(&self) -> usize {
        self.frame.d()
    }

    pub fn count(&self) -> usize {
        self.frame.count()
    }

    /// The underlying frame of `C^d`.
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn get(&self, j: usize, k: usize) -> &CMatrix {
        &self.ops[j * self.count() + k]
    }

    /// Operators in row-major `(j, k)` order.
    pub fn ops(&self) -> &[CMatrix] {
        &self.ops
    }

    /// `Tr(A W_jk)` computed from the stored operator.
    pub fn coefficient(&self, a: &CMatrix, j: usize, k: usize) -> f64 {
        linalg::trace_product(a, self.get(j, k)).re
    }

    /// Largest deviation of `Σ |W_jk⟩⟩⟨⟨W_jk|` from the identity on the Hermitian
    /// operators, measured on an orthonormal Hermitian basis.
    pub fn resolution_defect(&self) -> f64 {
        let d = self.d();
        let basis = build_hermitian_frame(&frames::standard_frame(FrameKind::Orthonormal, d).unwrap())
            .expect("orthonormal basis is tight");
        basis
            .ops
            .iter()
            .map(|e| {
                let image = self.ops.iter().fold(CMatrix::zeros(d, d), |acc, w| {
                    acc + w.scale(linalg::trace_product(w, e).re)
                });
                linalg::max_abs_diff(&image, e)
            })
            .fold(0.0, f64::max)
    }
}

pub fn build_operator_frame(frame: &Frame) -> Result<OperatorFrame> {
    frame.require_tight()?;
    let n = frame.count();
    let ops = (0..n * n)
        .map(|i| outer(frame.vector(i / n), frame.vector(i % n)))
        .collect();
    Ok(OperatorFrame { frame: frame.clone(), ops })
}

pub fn build_hermitian_frame(frame: &Frame) -> Result<HermitianFrame> {
    frame.require_tight()?;
    Ok(HermitianFrame { frame: frame.clone(), ops: hermitian_ops(frame) })
}

fn hermitian_ops(frame: &Frame) -> Vec<CMatrix> {
    let n = frame.count();
    let v = |j: usize, k: usize| outer(frame.vector(j), frame.vector(k));
    (0..n * n)
        .map(|i| {
            let (j, k) = (i / n, i % n);
            if j == k {
                v(j, j)
            } else if j < k {
                (v(j, k) + v(k, j)).unscale(SQRT_2)
            } else {
                (v(k, j) - v(j, k)) * c(0.0, 1.0 / SQRT_2)
            }
        })
        .collect()
}

/// `⟨v_k|A|v_j⟩` for all `(j, k)`, row-major in `j`.
fn matrix_elements(a: &CMatrix, frame: &Frame) -> Vec<Vec<Complex64>> {
    let vs = frame.vectors();
    vs.par_iter()
        .map(|vj| {
            let avj = a * vj;
            vs.iter().map(|vk| vk.dotc(&avj)).collect()
        })
        .collect()
}

fn check_dim(a: &CMatrix, d: usize) -> Result<()> {
    if a.nrows() != d || a.ncols() != d {
        return Err(Error::input(format!(
            "operator is {}x{} but the frame lives in dimension {d}",
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(())
}

/// Frame Wigner function `𝒲_A(j,k) = Tr(A W_jk)` of a Hermitian operator.
///
/// Evaluated through `⟨v_j|A|v_j⟩`, `√2 Re⟨v_k|A|v_j⟩` (j < k) and
/// `√2 Im⟨v_k|A|v_j⟩` (j > k) without materializing the `W_jk`.
pub fn wigner(a: &CMatrix, w: &HermitianFrame) -> Result<WignerTable> {
    wigner_for_frame(a, w.frame())
}

/// Same as [`wigner`], taking the vector frame directly.
pub fn wigner_for_frame(a: &CMatrix, frame: &Frame) -> Result<WignerTable> {
    check_dim(a, frame.d())?;
    let a = linalg::checked_hermitian(a)?;
    let n = frame.count();
    let elems = matrix_elements(&a, frame);
    Ok(WignerTable::from_fn(n, |j, k| {
        let z = elems[j][k];
        match j.cmp(&k) {
            std::cmp::Ordering::Equal => z.re,
            std::cmp::Ordering::Less => SQRT_2 * z.re,
            std::cmp::Ordering::Greater => SQRT_2 * z.im,
        }
    }))
}

/// Characteristic function `χ_A(j,k) = Tr(A V_jk†) = ⟨v_j|A|v_k⟩`.
pub fn char_function(a: &CMatrix, v: &OperatorFrame) -> Result<CharTable> {
    check_dim(a, v.d())?;
    let n = v.count();
    let elems = matrix_elements(a, v.frame());
    // elems[j][k] = ⟨v_k|A|v_j⟩, so χ(j,k) = elems[k][j]
    let values = (0..n * n).map(|i| elems[i % n][i / n]).collect();
    CharTable::new(n, values)
}

/// `Σ χ(j,k) V_jk`
pub fn reconstruct_from_char(table: &CharTable, v: &OperatorFrame) -> Result<CMatrix> {
    if table.count() != v.count() {
        return Err(Error::input("table size does not match the operator frame"));
    }
    let d = v.d();
    Ok(v.ops()
        .iter()
        .zip(table.values())
        .fold(CMatrix::zeros(d, d), |acc, (op, &x)| acc + op * x))
}

/// `Σ 𝒲(j,k) W_jk`, returned Hermitian.
pub fn reconstruct(table: &WignerTable, w: &HermitianFrame) -> Result<CMatrix> {
    if table.count() != w.count() {
        return Err(Error::input(format!(
            "table has size {} but the frame has {} vectors",
            table.count(),
            w.count()
        )));
    }
    let d = w.d();
    let sum = w
        .ops()
        .iter()
        .zip(table.values())
        .fold(CMatrix::zeros(d, d), |acc, (op, &x)| acc + op.scale(x));
    Ok(linalg::hermitian_part(&sum))
}

/// `Σ_{j,k} 𝒲_A(j,k) 𝒲_B(j,k)`, which equals `Tr(AB)`.
pub fn trace_pairing(a: &WignerTable, b: &WignerTable) -> Result<f64> {
    if a.count() != b.count() {
        return Err(Error::input("tables have different sizes"));
    }
    Ok(a.values().iter().zip(b.values()).map(|(x, y)| x * y).sum())
}

/// `W'_jk = U W_jk U†`, the Hermitian frame of the rotated vectors `U v_j`.
pub fn conjugate_frame(w: &HermitianFrame, u: &CMatrix) -> Result<HermitianFrame> {
    if u.nrows() != w.d() || !linalg::is_unitary(u, 1e-10) {
        return Err(Error::input("conjugating matrix must be a unitary of the frame dimension"));
    }
    let ud = u.adjoint();
    Ok(HermitianFrame {
        frame: w.frame().transformed(u)?,
        ops: w.ops().iter().map(|op| u * op * &ud).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::standard_frame;
    use crate::linalg::{cr, max_abs_diff, real_matrix};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn triangle() -> HermitianFrame {
        build_hermitian_frame(&standard_frame(FrameKind::Polygon, 3).unwrap()).unwrap()
    }

    #[test]
    fn orthonormal_qubit_kernel() {
        let w = build_hermitian_frame(&standard_frame(FrameKind::Orthonormal, 2).unwrap()).unwrap();
        let h = 1.0 / SQRT_2;
        assert!(max_abs_diff(w.get(0, 1), &real_matrix(2, 2, &[0.0, h, h, 0.0])) < 1e-15);
        let w10 = CMatrix::from_row_slice(2, 2, &[cr(0.0), c(0.0, h), c(0.0, -h), cr(0.0)]);
        assert!(max_abs_diff(w.get(1, 0), &w10) < 1e-15);
    }

    #[test]
    fn operator_frame_relations() {
        let f = standard_frame(FrameKind::Tetrahedron, 0).unwrap();
        let v = build_operator_frame(&f).unwrap();
        let g = f.gram();
        let n = v.count();
        for j in 0..n {
            for k in 0..n {
                assert!(max_abs_diff(&v.get(j, k).adjoint(), v.get(k, j)) < 1e-15);
                for p in 0..n {
                    for m in 0..n {
                        let lhs = v.get(j, k) * v.get(p, m);
                        let rhs = v.get(j, m) * g[(k, p)];
                        assert!(max_abs_diff(&lhs, &rhs) < 1e-12);
                    }
                }
            }
        }
        assert!(v.resolution_defect() < 1e-10);
    }

    #[test]
    fn hermitian_frame_invariants() {
        let w = triangle();
        for op in w.ops() {
            assert!(linalg::is_hermitian(op, 1e-12));
        }
        let diag = (0..3).fold(CMatrix::zeros(2, 2), |acc, j| acc + w.get(j, j));
        assert!(max_abs_diff(&diag, &CMatrix::identity(2, 2)) < 1e-12);
        assert!(w.resolution_defect() < 1e-10);
    }

    #[test]
    fn non_tight_frames_rejected() {
        let f = Frame::from_real(&[&[1.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(build_operator_frame(&f), Err(Error::Precondition(_))));
        assert!(matches!(build_hermitian_frame(&f), Err(Error::Precondition(_))));
    }

    #[test]
    fn wigner_of_maximally_mixed_qubit() {
        let t = wigner(&CMatrix::identity(2, 2).scale(0.5), &triangle()).unwrap();
        for j in 0..3 {
            assert!((t.get(j, j) - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn wigner_of_ground_state() {
        let rho = real_matrix(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let t = wigner(&rho, &triangle()).unwrap();
        assert!((t.get(0, 0) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn wigner_diagonal_sum_is_trace() {
        let t = wigner(&CMatrix::identity(2, 2), &triangle()).unwrap();
        assert!((t.diagonal_sum() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn wigner_matches_trace_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let w = build_hermitian_frame(&standard_frame(FrameKind::Icosahedron, 0).unwrap()).unwrap();
        let a = linalg::random_hermitian(&mut rng, 3);
        let t = wigner(&a, &w).unwrap();
        for j in 0..6 {
            for k in 0..6 {
                assert!((t.get(j, k) - w.coefficient(&a, j, k)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn wigner_rejects_bad_input() {
        let w = triangle();
        let a = real_matrix(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(wigner(&a, &w).is_err());
        assert!(wigner(&CMatrix::identity(3, 3), &w).is_err());
    }

    #[test]
    fn char_function_of_identity_is_gram() {
        let f = standard_frame(FrameKind::Polygon, 3).unwrap();
        let v = build_operator_frame(&f).unwrap();
        let chi = char_function(&CMatrix::identity(2, 2), &v).unwrap();
        assert!((chi.get(0, 0) - cr(2.0 / 3.0)).norm() < 1e-15);
        assert!((chi.get(0, 1) - cr(-1.0 / 3.0)).norm() < 1e-15);
        let zero = char_function(&CMatrix::zeros(2, 2), &v).unwrap();
        assert!(zero.values().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn char_function_round_trip_and_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = standard_frame(FrameKind::Tetrahedron, 0).unwrap();
        let v = build_operator_frame(&f).unwrap();
        let a = linalg::random_matrix(&mut rng, 3, 3);
        let chi = char_function(&a, &v).unwrap();
        assert!(max_abs_diff(&reconstruct_from_char(&chi, &v).unwrap(), &a) < 1e-12);
        let h = linalg::random_hermitian(&mut rng, 3);
        let chi = char_function(&h, &v).unwrap();
        for j in 0..4 {
            for k in 0..4 {
                assert!((chi.get(j, k) - chi.get(k, j).conj()).norm() < 1e-12);
                let direct = linalg::trace_product(&h, &v.get(j, k).adjoint());
                assert!((chi.get(j, k) - direct).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn reconstruct_round_trips() {
        let w = triangle();
        let i2 = CMatrix::identity(2, 2);
        let back = reconstruct(&wigner(&i2, &w).unwrap(), &w).unwrap();
        assert!(max_abs_diff(&back, &i2) < 1e-12);
        let half = i2.scale(0.5);
        let back = reconstruct(&wigner(&half, &w).unwrap(), &w).unwrap();
        assert!(max_abs_diff(&back, &half) < 1e-12);
        assert!(reconstruct(&WignerTable::zeros(4), &w).is_err());
    }

    #[test]
    fn trace_pairing_values() {
        let w = triangle();
        let pure = crate::states::pure1();
        let t = wigner(&pure, &w).unwrap();
        assert!((trace_pairing(&t, &t).unwrap() - 1.0).abs() < 1e-12);
        let t = wigner(&CMatrix::identity(2, 2).scale(0.5), &w).unwrap();
        assert!((trace_pairing(&t, &t).unwrap() - 0.5).abs() < 1e-12);
        let t = wigner(&crate::states::mixed1(), &w).unwrap();
        assert!((trace_pairing(&t, &t).unwrap() - 7.0 / 9.0).abs() < 1e-12);
        assert!(trace_pairing(&t, &WignerTable::zeros(2)).is_err());
    }

    #[test]
    fn conjugation_by_identity_and_covariance() {
        let w = triangle();
        let same = conjugate_frame(&w, &CMatrix::identity(2, 2)).unwrap();
        for (a, b) in w.ops().iter().zip(same.ops()) {
            assert!(max_abs_diff(a, b) < 1e-15);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let u = linalg::random_unitary(&mut rng, 2);
        let wp = conjugate_frame(&w, &u).unwrap();
        let a = linalg::random_hermitian(&mut rng, 2);
        let lhs = wigner(&(u.adjoint() * &a * &u), &w).unwrap();
        let rhs = wigner(&a, &wp).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        for j in 0..3 {
            for k in 0..3 {
                assert!((rhs.get(j, k) - wp.coefficient(&a, j, k)).abs() < 1e-12);
            }
        }
        assert!(conjugate_frame(&w, &real_matrix(2, 2, &[1.0, 1.0, 0.0, 1.0])).is_err());
    }

    #[test]
    fn kernel_is_not_standardized() {
        let w = triangle();
        let total = w.ops().iter().fold(CMatrix::zeros(2, 2), |acc, op| acc + op);
        assert!(max_abs_diff(&total, &CMatrix::identity(2, 2)) > 0.1);
    }
}
