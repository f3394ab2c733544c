//! Bipartite systems: `{W¹_jk ⊗ W²_lm}` is a tight frame of the Hermitian
//! operators on `H₁ ⊗ H₂`, giving a four-index Wigner table `𝒲_A(j,l,k,m)`.
//!
//! Storage order is `(j, l, k, m)` flattened lexicographically. Tensor products put
//! system 1 first.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::opframes::{self, HermitianFrame, WignerTable};

#[derive(Debug, Clone, PartialEq)]
pub struct CompositeWignerTable {
    counts: (usize, usize),
    values: Vec<f64>,
}

impl CompositeWignerTable {
    pub fn counts(&self) -> (usize, usize) {
        self.counts
    }

    fn index(&self, j: usize, l: usize, k: usize, m: usize) -> usize {
        let (n1, n2) = self.counts;
        ((j * n2 + l) * n1 + k) * n2 + m
    }

    pub fn get(&self, j: usize, l: usize, k: usize, m: usize) -> f64 {
        self.values[self.index(j, l, k, m)]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `Σ_{j,l} 𝒲(j,l,j,l)`, the trace of the represented operator.
    pub fn double_diagonal_sum(&self) -> f64 {
        let (n1, n2) = self.counts;
        (0..n1)
            .flat_map(|j| (0..n2).map(move |l| (j, l)))
            .map(|(j, l)| self.get(j, l, j, l))
            .sum()
    }
}

/// The product frame, materialized. Only sensible for small factors.
#[derive(Debug, Clone)]
pub struct TensorHermitianFrame {
    counts: (usize, usize),
    ops: Vec<CMatrix>,
}

impl TensorHermitianFrame {
    pub fn counts(&self) -> (usize, usize) {
        self.counts
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// `W¹_jk ⊗ W²_lm`
    pub fn get(&self, j: usize, l: usize, k: usize, m: usize) -> &CMatrix {
        let (n1, n2) = self.counts;
        &self.ops[((j * n2 + l) * n1 + k) * n2 + m]
    }

    pub fn ops(&self) -> &[CMatrix] {
        &self.ops
    }
}

pub fn tensor_hermitian_frame(w1: &HermitianFrame, w2: &HermitianFrame) -> TensorHermitianFrame {
    let (n1, n2) = (w1.count(), w2.count());
    let mut ops = Vec::with_capacity(n1 * n1 * n2 * n2);
    for j in 0..n1 {
        for l in 0..n2 {
            for k in 0..n1 {
                for m in 0..n2 {
                    ops.push(linalg::kron(w1.get(j, k), w2.get(l, m)));
                }
            }
        }
    }
    TensorHermitianFrame { counts: (n1, n2), ops }
}

/// `Tr₁[A (X ⊗ I)]`
fn contract_first(a: &CMatrix, x: &CMatrix, d1: usize, d2: usize) -> CMatrix {
    CMatrix::from_fn(d2, d2, |l, m| {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for p in 0..d1 {
            for q in 0..d1 {
                acc += a[(p * d2 + l, q * d2 + m)] * x[(q, p)];
            }
        }
        acc
    })
}

/// `𝒲_A(j,l,k,m) = Tr(A (W¹_jk ⊗ W²_lm))`
pub fn wigner_composite(
    a: &CMatrix,
    w1: &HermitianFrame,
    w2: &HermitianFrame,
) -> Result<CompositeWignerTable> {
    let (d1, d2) = (w1.d(), w2.d());
    if a.nrows() != d1 * d2 || a.ncols() != d1 * d2 {
        return Err(Error::input(format!(
            "operator is {}x{} but the product space has dimension {}",
            a.nrows(),
            a.ncols(),
            d1 * d2
        )));
    }
    let a = linalg::checked_hermitian(a)?;
    let (n1, n2) = (w1.count(), w2.count());

    // For each (j,k) reduce to an operator on H₂ and take its frame-2 Wigner table.
    let blocks: Vec<WignerTable> = (0..n1 * n1)
        .into_par_iter()
        .map(|i| {
            let reduced = linalg::hermitian_part(&contract_first(&a, w1.get(i / n1, i % n1), d1, d2));
            opframes::wigner_for_frame(&reduced, w2.frame())
        })
        .collect::<Result<_>>()?;

    let mut values = vec![0.0; n1 * n1 * n2 * n2];
    for j in 0..n1 {
        for l in 0..n2 {
            for k in 0..n1 {
                let block = &blocks[j * n1 + k];
                for m in 0..n2 {
                    values[((j * n2 + l) * n1 + k) * n2 + m] = block.get(l, m);
                }
            }
        }
    }
    Ok(CompositeWignerTable { counts: (n1, n2), values })
}

/// `Σ 𝒲(j,l,k,m) W¹_jk ⊗ W²_lm`
pub fn reconstruct_composite(
    t: &CompositeWignerTable,
    w1: &HermitianFrame,
    w2: &HermitianFrame,
) -> Result<CMatrix> {
    let (n1, n2) = t.counts();
    if (n1, n2) != (w1.count(), w2.count()) {
        return Err(Error::input("table counts do not match the frames"));
    }
    let (d1, d2) = (w1.d(), w2.d());
    let mut out = CMatrix::zeros(d1 * d2, d1 * d2);
    for j in 0..n1 {
        for k in 0..n1 {
            let inner = WignerTable::from_fn(n2, |l, m| t.get(j, l, k, m));
            let second = opframes::reconstruct(&inner, w2)?;
            out += linalg::kron(w1.get(j, k), &second);
        }
    }
    Ok(linalg::hermitian_part(&out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Wigner table of a partial trace from the four-index table: tracing out the
/// first system gives `Σ_j 𝒲(j,l,j,m)`, the second `Σ_l 𝒲(j,l,k,l)`.
pub fn partial_trace_wigner(t: &CompositeWignerTable, traced: Subsystem) -> WignerTable {
    let (n1, n2) = t.counts();
    match traced {
        Subsystem::First => WignerTable::from_fn(n2, |l, m| (0..n1).map(|j| t.get(j, l, j, m)).sum()),
        Subsystem::Second => WignerTable::from_fn(n1, |j, k| (0..n2).map(|l| t.get(j, l, k, l)).sum()),
    }
}

/// `slice(j,k) = 𝒲(j,j,k,k)`; both factors must use frames of the same size.
pub fn equal_coordinate_slice(t: &CompositeWignerTable) -> Result<WignerTable> {
    let (n1, n2) = t.counts();
    if n1 != n2 {
        return Err(Error::input(format!(
            "equal-coordinate slice needs equal frame sizes, got {n1} and {n2}"
        )));
    }
    Ok(WignerTable::from_fn(n1, |j, k| t.get(j, j, k, k)))
}

/// `𝒲(j,j,k,k) = Tr(A (W¹_jk ⊗ W²_jk))` computed directly, without the full
/// four-index table.
pub fn equal_coordinate_wigner(a: &CMatrix, w1: &HermitianFrame, w2: &HermitianFrame) -> Result<WignerTable> {
    let (d1, d2) = (w1.d(), w2.d());
    if w1.count() != w2.count() {
        return Err(Error::input(format!(
            "equal-coordinate slice needs equal frame sizes, got {} and {}",
            w1.count(),
            w2.count()
        )));
    }
    if a.nrows() != d1 * d2 || a.ncols() != d1 * d2 {
        return Err(Error::input(format!(
            "operator is {}x{} but the product space has dimension {}",
            a.nrows(),
            a.ncols(),
            d1 * d2
        )));
    }
    let a = linalg::checked_hermitian(a)?;
    let n = w1.count();
    let values: Vec<f64> = (0..n * n)
        .into_par_iter()
        .map(|i| {
            let (j, k) = (i / n, i % n);
            linalg::trace_product(&contract_first(&a, w1.get(j, k), d1, d2), w2.get(j, k)).re
        })
        .collect();
    WignerTable::new(n, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{standard_frame, FrameKind};
    use crate::linalg::max_abs_diff;
    use crate::opframes::{build_hermitian_frame, wigner};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn polygon(m: usize) -> HermitianFrame {
        build_hermitian_frame(&standard_frame(FrameKind::Polygon, m).unwrap()).unwrap()
    }

    #[test]
    fn triangle_squared_has_81_operators() {
        let w = polygon(3);
        let t = tensor_hermitian_frame(&w, &w);
        assert_eq!(t.len(), 81);
        assert!(t.ops().iter().all(|op| op.nrows() == 4));
    }

    #[test]
    fn materialized_frame_matches_table() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let w1 = polygon(3);
        let w2 = build_hermitian_frame(&standard_frame(FrameKind::Polygon, 4).unwrap()).unwrap();
        let tf = tensor_hermitian_frame(&w1, &w2);
        let a = linalg::random_hermitian(&mut rng, 4);
        let t = wigner_composite(&a, &w1, &w2).unwrap();
        for j in 0..3 {
            for l in 0..4 {
                for k in 0..3 {
                    for m in 0..4 {
                        let direct = linalg::trace_product(&a, tf.get(j, l, k, m)).re;
                        assert!((direct - t.get(j, l, k, m)).abs() < 1e-12);
                    }
                }
            }
        }
        let back = reconstruct_composite(&t, &w1, &w2).unwrap();
        assert!(max_abs_diff(&back, &a) < 1e-12);
    }

    #[test]
    fn orthonormal_product_is_orthonormal_basis() {
        let w = build_hermitian_frame(&standard_frame(FrameKind::Orthonormal, 2).unwrap()).unwrap();
        let tf = tensor_hermitian_frame(&w, &w);
        for (a, x) in tf.ops().iter().enumerate() {
            for (b, y) in tf.ops().iter().enumerate() {
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((linalg::trace_product(x, y).re - want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn product_state_factorizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let w = polygon(5);
        let r1 = linalg::random_density(&mut rng, 2);
        let r2 = linalg::random_density(&mut rng, 2);
        let t = wigner_composite(&linalg::kron(&r1, &r2), &w, &w).unwrap();
        let t1 = wigner(&r1, &w).unwrap();
        let t2 = wigner(&r2, &w).unwrap();
        for j in 0..5 {
            for l in 0..5 {
                for k in 0..5 {
                    for m in 0..5 {
                        assert!((t.get(j, l, k, m) - t1.get(j, k) * t2.get(l, m)).abs() < 1e-12);
                    }
                }
            }
        }
        assert!(partial_trace_wigner(&t, Subsystem::First).max_abs_diff(&t2) < 1e-12);
        let slice = equal_coordinate_slice(&t).unwrap();
        for j in 0..5 {
            for k in 0..5 {
                assert!((slice.get(j, k) - t1.get(j, k) * t2.get(j, k)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn identity_on_two_qubits() {
        let w = polygon(3);
        let t = wigner_composite(&CMatrix::identity(4, 4), &w, &w).unwrap();
        assert!((t.double_diagonal_sum() - 4.0).abs() < 1e-12);
        let marginal = partial_trace_wigner(&t, Subsystem::Second);
        let want = wigner(&CMatrix::identity(2, 2).scale(2.0), &w).unwrap();
        assert!(marginal.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn bell_marginal_is_flat_diagonal() {
        let m = 7;
        let w = polygon(m);
        let t = wigner_composite(&crate::states::bell(), &w, &w).unwrap();
        assert!((t.double_diagonal_sum() - 1.0).abs() < 1e-12);
        let marginal = partial_trace_wigner(&t, Subsystem::First);
        for l in 0..m {
            assert!((marginal.get(l, l) - 1.0 / m as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn direct_slice_matches_full_table() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let w = polygon(6);
        let a = linalg::random_hermitian(&mut rng, 4);
        let full = equal_coordinate_slice(&wigner_composite(&a, &w, &w).unwrap()).unwrap();
        let direct = equal_coordinate_wigner(&a, &w, &w).unwrap();
        assert!(full.max_abs_diff(&direct) < 1e-12);
        assert!(equal_coordinate_wigner(&a, &w, &polygon(5)).is_err());
    }

    #[test]
    fn zero_operator_and_bad_inputs() {
        let w = polygon(3);
        let t = wigner_composite(&CMatrix::zeros(4, 4), &w, &w).unwrap();
        assert!(equal_coordinate_slice(&t).unwrap().values().iter().all(|&v| v == 0.0));
        assert!(wigner_composite(&CMatrix::zeros(3, 3), &w, &w).is_err());
        let w4 = polygon(4);
        let t = wigner_composite(&CMatrix::zeros(4, 4), &w, &w4).unwrap();
        assert!(equal_coordinate_slice(&t).is_err());
    }
}
