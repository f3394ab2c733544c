//! Finite frames of `C^d`: frame operator, bounds, canonical tightening, the
//! named frames used throughout the crate, and the Naimark embedding of a tight
//! frame into `C^{r+1}`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, cr, outer, CMatrix, CVector};

/// Default tolerance for the tightness check `‖Σ|v⟩⟨v| − I‖_max`.
pub const DEFAULT_TIGHT_TOL: f64 = 1e-10;

/// Eigenvalue floor below which the frame operator is treated as singular.
pub const EIGEN_FLOOR: f64 = 1e-12;

/// An ordered family of vectors of `C^d`.
///
/// The order is part of the value: Wigner tables are indexed by it.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    d: usize,
    vectors: Vec<CVector>,
    tight_tol: f64,
}

impl Frame {
    pub fn new(vectors: Vec<CVector>) -> Result<Self> {
        let first = vectors
            .first()
            .ok_or_else(|| Error::input("a frame needs at least one vector"))?;
        let d = first.len();
        if d == 0 {
            return Err(Error::input("frame vectors must have positive dimension"));
        }
        if let Some((i, v)) = vectors.iter().enumerate().find(|(_, v)| v.len() != d) {
            return Err(Error::input(format!(
                "vector {i} has dimension {} but the frame has dimension {d}",
                v.len()
            )));
        }
        Ok(Frame { d, vectors, tight_tol: DEFAULT_TIGHT_TOL })
    }

    /// Real-valued frame from row data, one slice per vector.
    pub fn from_real(vectors: &[&[f64]]) -> Result<Self> {
        Frame::new(vectors.iter().map(|v| linalg::real_vector(v)).collect())
    }

    pub fn with_tight_tol(mut self, tol: f64) -> Self {
        self.tight_tol = tol;
        self
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of vectors, `r + 1`.
    pub fn count(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[CVector] {
        &self.vectors
    }

    pub fn vector(&self, k: usize) -> &CVector {
        &self.vectors[k]
    }

    pub fn tight_tol(&self) -> f64 {
        self.tight_tol
    }

    /// `max |S − I|` for the frame operator `S`.
    pub fn tightness_defect(&self) -> f64 {
        linalg::max_abs_diff(&frame_operator(self), &CMatrix::identity(self.d, self.d))
    }

    pub fn is_tight(&self) -> bool {
        self.tightness_defect() <= self.tight_tol
    }

    pub(crate) fn require_tight(&self) -> Result<()> {
        let defect = self.tightness_defect();
        if defect > self.tight_tol {
            return Err(Error::Precondition(format!(
                "frame is not tight: max |S - I| = {defect:.3e} > {:.1e}",
                self.tight_tol
            )));
        }
        Ok(())
    }

    /// Gram matrix `G_jk = ⟨v_j|v_k⟩`.
    pub fn gram(&self) -> CMatrix {
        let n = self.count();
        CMatrix::from_fn(n, n, |j, k| self.vectors[j].dotc(&self.vectors[k]))
    }

    /// Frame obtained by applying `U` to every vector.
    pub fn transformed(&self, u: &CMatrix) -> Result<Frame> {
        if u.ncols() != self.d || u.nrows() != self.d {
            return Err(Error::input("transform dimension does not match the frame"));
        }
        let mut out = Frame::new(self.vectors.iter().map(|v| u * v).collect())?;
        out.tight_tol = self.tight_tol;
        Ok(out)
    }
}

/// `S = Σ_k |v_k⟩⟨v_k|`
pub fn frame_operator(frame: &Frame) -> CMatrix {
    let d = frame.d();
    frame
        .vectors()
        .iter()
        .fold(CMatrix::zeros(d, d), |acc, v| acc + outer(v, v))
}

/// Optimal frame bounds `(λ_min(S), λ_max(S))`.
pub fn frame_bounds(frame: &Frame) -> (f64, f64) {
    let (values, _) = linalg::hermitian_eigen(&frame_operator(frame));
    (*values.last().unwrap(), values[0])
}

/// `v_k ↦ S^{-1/2} v_k`, the closest tight frame to `frame`.
pub fn canonical_tight_frame(frame: &Frame) -> Result<Frame> {
    let s = frame_operator(frame);
    let root = linalg::inverse_sqrt(&s, EIGEN_FLOOR)?;
    let mut out = Frame::new(frame.vectors().iter().map(|v| &root * v).collect())?;
    out.tight_tol = frame.tight_tol;
    Ok(out)
}

/// Canonical tightening of `count` Gaussian random vectors in `C^d`.
pub fn random_tight_frame<R: Rng + ?Sized>(rng: &mut R, d: usize, count: usize) -> Result<Frame> {
    let raw = Frame::new((0..count).map(|_| linalg::random_vector(rng, d)).collect())?;
    canonical_tight_frame(&raw)
}

/// The named frames.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameKind {
    /// `m` vectors `√(2/m)(cos 2kπ/m, sin 2kπ/m)` of `C²`.
    Polygon,
    /// Four vertices of a regular tetrahedron in `C³`.
    Tetrahedron,
    /// Six vertices (one per antipodal pair) of a regular icosahedron in `C³`.
    Icosahedron,
    /// Canonical basis of `C^param`.
    Orthonormal,
    /// The three-vector frame of `C²` with `u_0 + u_1 + u_2 = 0`, written with exact radicals.
    Mercedes,
}

impl FrameKind {
    pub fn name(self) -> &'static str {
        match self {
            FrameKind::Polygon => "polygon",
            FrameKind::Tetrahedron => "tetrahedron",
            FrameKind::Icosahedron => "icosahedron",
            FrameKind::Orthonormal => "orthonormal",
            FrameKind::Mercedes => "mercedes",
        }
    }
}

impl fmt::Display for FrameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FrameKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "polygon" => Ok(FrameKind::Polygon),
            "tetrahedron" => Ok(FrameKind::Tetrahedron),
            "icosahedron" => Ok(FrameKind::Icosahedron),
            "orthonormal" => Ok(FrameKind::Orthonormal),
            "mercedes" => Ok(FrameKind::Mercedes),
            other => Err(Error::input(format!("unknown frame kind '{other}'"))),
        }
    }
}

/// Build one of the named frames. `param` is `m` for polygons and the dimension
/// for orthonormal bases; other kinds ignore it.
pub fn standard_frame(kind: FrameKind, param: usize) -> Result<Frame> {
    match kind {
        FrameKind::Polygon => {
            if param < 3 {
                return Err(Error::input(format!("polygon frame needs m >= 3, got {param}")));
            }
            Ok(polygon(param))
        }
        FrameKind::Mercedes => {
            let a = (2.0f64 / 3.0).sqrt();
            let b = 1.0 / 6f64.sqrt();
            let h = 1.0 / 2f64.sqrt();
            Frame::from_real(&[&[a, 0.0], &[-b, h], &[-b, -h]])
        }
        FrameKind::Tetrahedron => Frame::from_real(&[
            &[-0.5, 0.5, 0.5],
            &[0.5, -0.5, 0.5],
            &[0.5, 0.5, -0.5],
            &[-0.5, -0.5, -0.5],
        ]),
        FrameKind::Icosahedron => {
            let tau = (1.0 + 5f64.sqrt()) / 2.0;
            let n = 1.0 / (5.0 + 5f64.sqrt()).sqrt();
            let raw: [[f64; 3]; 6] = [
                [1.0, tau, 0.0],
                [-1.0, tau, 0.0],
                [-tau, 0.0, 1.0],
                [0.0, -1.0, tau],
                [tau, 0.0, 1.0],
                [0.0, 1.0, tau],
            ];
            Frame::new(raw.iter().map(|v| CVector::from_iterator(3, v.iter().map(|&x| cr(n * x)))).collect())
        }
        FrameKind::Orthonormal => {
            if param == 0 {
                return Err(Error::input("orthonormal basis needs dimension >= 1"));
            }
            Frame::new(
                (0..param)
                    .map(|k| CVector::from_fn(param, |i, _| if i == k { cr(1.0) } else { cr(0.0) }))
                    .collect(),
            )
        }
    }
}

fn polygon(m: usize) -> Frame {
    let scale = (2.0 / m as f64).sqrt();
    let vectors = (0..m)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
            CVector::from_vec(vec![cr(scale * angle.cos()), cr(scale * angle.sin())])
        })
        .collect();
    Frame { d: 2, vectors, tight_tol: DEFAULT_TIGHT_TOL }
}

/// Realisation of a tight frame `{u_k}` of `C^d` as the orthogonal projection of
/// the canonical basis `{ε_k}` of `C^{r+1}`.
#[derive(Debug, Clone)]
pub struct NaimarkEmbedding {
    /// `(r+1) × d`, column `k` is `w_k = (⟨u_0|e_k⟩, …, ⟨u_r|e_k⟩)ᵀ`.
    pub isometry: CMatrix,
    /// `P = Σ_j |w_j⟩⟨w_j|`.
    pub projector: CMatrix,
}

impl NaimarkEmbedding {
    pub fn column(&self, k: usize) -> CVector {
        self.isometry.column(k).into_owned()
    }

    /// Image of `x ∈ C^d` in `C^{r+1}`.
    pub fn embed(&self, x: &CVector) -> CVector {
        &self.isometry * x
    }
}

pub fn naimark_embedding(frame: &Frame) -> Result<NaimarkEmbedding> {
    frame.require_tight()?;
    let isometry = CMatrix::from_fn(frame.count(), frame.d(), |i, k| frame.vector(i)[k].conj());
    let projector = &isometry * isometry.adjoint();
    Ok(NaimarkEmbedding { isometry, projector })
}

/// Analysis coefficients `c_k = ⟨v_k|x⟩` of a tight frame.
pub fn analyze(frame: &Frame, x: &CVector) -> Result<Vec<num_complex::Complex64>> {
    if x.len() != frame.d() {
        return Err(Error::input(format!(
            "vector has dimension {} but the frame has dimension {}",
            x.len(),
            frame.d()
        )));
    }
    frame.require_tight()?;
    Ok(frame.vectors().iter().map(|v| v.dotc(x)).collect())
}

/// `Σ_k c_k v_k`
pub fn synthesize(frame: &Frame, coeffs: &[num_complex::Complex64]) -> Result<CVector> {
    if coeffs.len() != frame.count() {
        return Err(Error::input(format!(
            "expected {} coefficients, got {}",
            frame.count(),
            coeffs.len()
        )));
    }
    Ok(frame
        .vectors()
        .iter()
        .zip(coeffs)
        .fold(CVector::zeros(frame.d()), |acc, (v, &ck)| acc + v * ck))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, max_abs_diff, real_matrix};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(i: usize, d: usize) -> CVector {
        CVector::from_fn(d, |r, _| if r == i { cr(1.0) } else { cr(0.0) })
    }

    #[test]
    fn frame_operator_of_repeated_vector() {
        let f = Frame::new(vec![e(0, 2), e(0, 2), e(1, 2)]).unwrap();
        let s = frame_operator(&f);
        assert!(max_abs_diff(&s, &real_matrix(2, 2, &[2.0, 0.0, 0.0, 1.0])) < 1e-15);
        let (a, b) = frame_bounds(&f);
        assert!((a - 1.0).abs() < 1e-14 && (b - 2.0).abs() < 1e-14);
    }

    #[test]
    fn single_vector_is_not_a_frame() {
        let f = Frame::new(vec![e(0, 2)]).unwrap();
        assert!(max_abs_diff(&frame_operator(&f), &real_matrix(2, 2, &[1.0, 0.0, 0.0, 0.0])) < 1e-15);
        assert!(frame_bounds(&f).0.abs() < 1e-15);
        assert!(matches!(canonical_tight_frame(&f), Err(Error::NotAFrame(_))));
    }

    #[test]
    fn mixed_dimensions_rejected() {
        assert!(Frame::new(vec![e(0, 2), e(0, 3)]).is_err());
        assert!(Frame::new(vec![]).is_err());
    }

    #[test]
    fn canonical_tightening_of_repeated_vector() {
        let f = Frame::new(vec![e(0, 2), e(0, 2), e(1, 2)]).unwrap();
        let t = canonical_tight_frame(&f).unwrap();
        let h = 1.0 / 2f64.sqrt();
        let expected = [[h, 0.0], [h, 0.0], [0.0, 1.0]];
        for (v, want) in t.vectors().iter().zip(expected) {
            assert!((v[0] - cr(want[0])).norm() < 1e-14);
            assert!((v[1] - cr(want[1])).norm() < 1e-14);
        }
        assert!(t.is_tight());
    }

    #[test]
    fn tight_input_is_fixed_point() {
        let f = standard_frame(FrameKind::Polygon, 3).unwrap();
        let t = canonical_tight_frame(&f).unwrap();
        for (a, b) in f.vectors().iter().zip(t.vectors()) {
            assert!((a - b).camax() < 1e-12);
        }
    }

    #[test]
    fn random_spanning_sets_tighten() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for count in 3..8 {
            let t = random_tight_frame(&mut rng, 3, count).unwrap();
            let (a, b) = frame_bounds(&t);
            assert!((a - 1.0).abs() < 1e-10 && (b - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn named_frames_are_tight() {
        for (kind, p) in [
            (FrameKind::Polygon, 3),
            (FrameKind::Polygon, 8),
            (FrameKind::Mercedes, 0),
            (FrameKind::Tetrahedron, 0),
            (FrameKind::Icosahedron, 0),
            (FrameKind::Orthonormal, 4),
        ] {
            let f = standard_frame(kind, p).unwrap();
            assert!(f.tightness_defect() < 1e-12, "{kind} not tight");
        }
        assert!(standard_frame(FrameKind::Polygon, 2).is_err());
    }

    #[test]
    fn polygon_three_matches_mercedes() {
        let p = standard_frame(FrameKind::Polygon, 3).unwrap();
        let m = standard_frame(FrameKind::Mercedes, 0).unwrap();
        for (a, b) in p.vectors().iter().zip(m.vectors()) {
            assert!((a - b).camax() < 1e-15);
        }
    }

    #[test]
    fn mercedes_null_sum() {
        let m = standard_frame(FrameKind::Mercedes, 0).unwrap();
        let s = m.vectors().iter().fold(CVector::zeros(2), |acc, v| acc + v);
        assert!(s.camax() <= 1e-15);
    }

    #[test]
    fn analyze_triangle_e0() {
        let f = standard_frame(FrameKind::Polygon, 3).unwrap();
        let coeffs = analyze(&f, &e(0, 2)).unwrap();
        let want = [(2.0f64 / 3.0).sqrt(), -1.0 / 6f64.sqrt(), -1.0 / 6f64.sqrt()];
        for (got, w) in coeffs.iter().zip(want) {
            assert!((got - cr(w)).norm() < 1e-15);
        }
        let back = synthesize(&f, &coeffs).unwrap();
        assert!((back - e(0, 2)).camax() < 1e-12);
    }

    #[test]
    fn analyze_zero_and_dimension_mismatch() {
        let f = standard_frame(FrameKind::Mercedes, 0).unwrap();
        let coeffs = analyze(&f, &CVector::zeros(2)).unwrap();
        assert!(coeffs.iter().all(|z| z.norm() == 0.0));
        assert!(analyze(&f, &CVector::zeros(3)).is_err());
    }

    #[test]
    fn analyze_orthonormal_gives_components() {
        let f = standard_frame(FrameKind::Orthonormal, 3).unwrap();
        let x = CVector::from_vec(vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0)]);
        let coeffs = analyze(&f, &x).unwrap();
        for i in 0..3 {
            assert_eq!(coeffs[i], x[i]);
        }
    }

    #[test]
    fn naimark_of_mercedes() {
        let f = standard_frame(FrameKind::Mercedes, 0).unwrap();
        let n = naimark_embedding(&f).unwrap();
        let w0 = [(2.0f64 / 3.0).sqrt(), -1.0 / 6f64.sqrt(), -1.0 / 6f64.sqrt()];
        let w1 = [0.0, 1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt()];
        for i in 0..3 {
            assert!((n.isometry[(i, 0)] - cr(w0[i])).norm() < 1e-15);
            assert!((n.isometry[(i, 1)] - cr(w1[i])).norm() < 1e-15);
        }
        let p = real_matrix(
            3,
            3,
            &[2.0, -1.0, -1.0, -1.0, 2.0, -1.0, -1.0, -1.0, 2.0].map(|x| x / 3.0),
        );
        assert!(max_abs_diff(&n.projector, &p) < 1e-15);
        for k in 0..3 {
            let eps = e(k, 3);
            let lhs = &n.projector * eps;
            assert!((lhs - n.embed(f.vector(k))).camax() < 1e-12);
        }
    }

    #[test]
    fn naimark_of_orthonormal_is_identity() {
        let f = standard_frame(FrameKind::Orthonormal, 3).unwrap();
        let n = naimark_embedding(&f).unwrap();
        assert!(max_abs_diff(&n.projector, &CMatrix::identity(3, 3)) < 1e-15);
    }

    #[test]
    fn naimark_requires_tight() {
        let f = Frame::new(vec![e(0, 2), e(0, 2), e(1, 2)]).unwrap();
        assert!(matches!(naimark_embedding(&f), Err(Error::Precondition(_))));
    }
}
