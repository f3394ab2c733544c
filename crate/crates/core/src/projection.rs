//! The qubit as an orthogonal projection of the qutrit.
//!
//! The mercedes frame of `C²` embeds into `C³` as the plane `𝒮` orthogonal to
//! `(1,1,1)`. With `L` the `2×3` matrix whose rows span `𝒮` and `P = LᵀL`, the
//! map `A ↦ L P A P Lᵀ` sends the canonical Hermitian basis `E_jk` of the qutrit to
//! the mercedes kernel `W_jk`.

use crate::error::{Error, Result};
use crate::frames::{naimark_embedding, standard_frame, FrameKind};
use crate::linalg::{self, CMatrix};
use crate::opframes::{build_hermitian_frame, HermitianFrame, WignerTable};

/// Orthonormal Hermitian basis of `d×d` matrices under `Tr(AB)`: the operator
/// frame built on the canonical basis, `E_jk` in row-major order.
pub fn hermitian_basis(d: usize) -> Result<Vec<CMatrix>> {
    let w = build_hermitian_frame(&standard_frame(FrameKind::Orthonormal, d)?)?;
    Ok(w.ops().to_vec())
}

#[derive(Debug, Clone)]
pub struct ProjectionPair {
    /// `2×3`, rows `w₀ᵀ`, `w₁ᵀ`.
    pub l: CMatrix,
    /// `3×3`, `LᵀL`.
    pub p: CMatrix,
}

pub fn projection_pair() -> ProjectionPair {
    let mercedes = standard_frame(FrameKind::Mercedes, 0).expect("mercedes frame");
    let embedding = naimark_embedding(&mercedes).expect("mercedes frame is tight");
    let l = embedding.isometry.transpose();
    let p = embedding.projector;
    ProjectionPair { l, p }
}

/// The mercedes Hermitian frame `W_jk`.
pub fn mercedes_kernel() -> HermitianFrame {
    build_hermitian_frame(&standard_frame(FrameKind::Mercedes, 0).expect("mercedes frame"))
        .expect("mercedes frame is tight")
}

fn require_qutrit(a: &CMatrix) -> Result<CMatrix> {
    if a.shape() != (3, 3) {
        return Err(Error::input(format!("expected a 3x3 operator, got {}x{}", a.nrows(), a.ncols())));
    }
    linalg::checked_hermitian(a)
}

/// `A′ = L P A P Lᵀ`
pub fn project_operator(a: &CMatrix) -> Result<CMatrix> {
    let a = require_qutrit(a)?;
    let ProjectionPair { l, p } = projection_pair();
    Ok(linalg::hermitian_part(&(&l * &p * a * &p * l.transpose())))
}

/// `𝒲_{A′}(j,k) = Tr(E_jk P A P)`, without forming `A′`.
pub fn wigner_of_projection(a: &CMatrix) -> Result<WignerTable> {
    let a = require_qutrit(a)?;
    let p = projection_pair().p;
    let pap = &p * a * &p;
    let basis = hermitian_basis(3)?;
    Ok(WignerTable::from_fn(3, |j, k| linalg::trace_product(&basis[3 * j + k], &pap).re))
}
