//! Rotation orbits of frame kernels, and the measurement-noise experiment that
//! compares reconstruction from a redundant frame with reconstruction from the
//! displaced-parity basis.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Uniform};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::DensityMatrix;
use crate::error::{Error, Result};
use crate::frames::Frame;
use crate::linalg::{self, cr, CMatrix};
use crate::opframes::{build_hermitian_frame, wigner, HermitianFrame};
use crate::weylref::{OddDimension, PhasePointOperators};

const PERMUTATION_TOL: f64 = 1e-10;
const RELATION_TOL: f64 = 1e-12;

pub type IndexPair = (usize, usize);

/// `W_target = sign · R W_source R†`
#[derive(Debug, Clone)]
pub struct RotationRelation {
    pub target: IndexPair,
    pub source: IndexPair,
    pub rotation: CMatrix,
    pub sign: f64,
}

#[derive(Debug, Clone)]
pub struct RotationCover {
    pub relations: Vec<RotationRelation>,
    /// Number of orbit classes of index pairs; one measurement setup per class.
    pub num_setups: usize,
    pub representatives: Vec<IndexPair>,
}

impl RotationCover {
    pub fn find(&self, target: IndexPair, source: IndexPair) -> impl Iterator<Item = &RotationRelation> {
        self.relations.iter().filter(move |r| r.target == target && r.source == source)
    }
}

/// `R_α`, counterclockwise rotation of the plane.
pub fn plane_rotation(alpha: f64) -> CMatrix {
    let (s, c) = alpha.sin_cos();
    linalg::real_matrix(2, 2, &[c, -s, s, c])
}

/// `R_{±π/3}`, `R_{±2π/3}`.
pub fn triangle_rotations() -> Vec<CMatrix> {
    [PI / 3.0, -PI / 3.0, 2.0 * PI / 3.0, -2.0 * PI / 3.0].into_iter().map(plane_rotation).collect()
}

/// `ℛ₀ … ℛ₄`
pub fn tetrahedron_rotations() -> Vec<CMatrix> {
    let rows: [[f64; 9]; 5] = [
        [-1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -1.0],
        [0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0, 0.0, -1.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, -1.0, -1.0, 0.0, 0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0, -1.0, 0.0, 0.0, 0.0, -1.0, 0.0],
    ];
    rows.iter().map(|r| linalg::real_matrix(3, 3, r)).collect()
}

/// `R^r` for `r = 1..m−1`, `R` the rotation by `2π/m`.
pub fn polygon_rotations(m: usize) -> Vec<CMatrix> {
    (1..m).map(|r| plane_rotation(2.0 * PI * r as f64 / m as f64)).collect()
}

/// Orbit relation of the polygon kernel under the cyclic rotation `R`: returns
/// `(source, r)` with `W_jk = R^r W_source R^{−r}`. For `j < k` this is
/// `(0, k−j)` with `r = j`; for `j > k` it is `(j−k, 0)` with `r = k`.
pub fn polygon_orbit_source(j: usize, k: usize) -> (IndexPair, usize) {
    if j <= k {
        ((0, k - j), j)
    } else {
        ((j - k, 0), k)
    }
}

/// `R v_p = s_p v_{π(p)}` with `s_p = ±1` and `π` a permutation. Frames with
/// parallel vectors admit several matches; unused targets are taken first.
fn signed_permutation(frame: &Frame, r: &CMatrix, element: usize) -> Result<Vec<(usize, f64)>> {
    let mut used = vec![false; frame.count()];
    let mut perm = Vec::with_capacity(frame.count());
    for (p, v) in frame.vectors().iter().enumerate() {
        let image = r * v;
        let hit = frame.vectors().iter().enumerate().find_map(|(q, u)| {
            if used[q] {
                return None;
            }
            [1.0, -1.0]
                .into_iter()
                .find(|&s| (&image - u.scale(s)).camax() <= PERMUTATION_TOL)
                .map(|s| (q, s))
        });
        let (q, s) = hit.ok_or_else(|| {
            Error::Precondition(format!(
                "group element {element} does not map frame vector {p} to a frame vector up to sign"
            ))
        })?;
        used[q] = true;
        perm.push((q, s));
    }
    Ok(perm)
}

/// Image of `W_pq` under a signed permutation: `R W_pq R† = sign · W_target`.
fn image_pair(p: usize, q: usize, perm: &[(usize, f64)]) -> (IndexPair, f64) {
    let (a, sa) = perm[p];
    let (b, sb) = perm[q];
    let s = sa * sb;
    if p == q {
        return ((a, a), 1.0);
    }
    match (p < q, a < b) {
        (true, true) | (false, false) => ((a, b), s),
        (true, false) => ((b, a), s),
        (false, true) => ((b, a), -s),
    }
}

struct Classes {
    parent: Vec<usize>,
}

impl Classes {
    fn new(n: usize) -> Self {
        Classes { parent: (0..n).collect() }
    }

    fn root(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn join(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.root(a), self.root(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Relations `W_target = ±R W_source R†` generated by the group elements and their
/// adjoints, plus the relations `W_target = ±W_source` that follow from linear
/// dependence of the frame. Every emitted relation is verified numerically.
pub fn rotation_cover(frame: &Frame, group: &[CMatrix]) -> Result<RotationCover> {
    let d = frame.d();
    for (i, r) in group.iter().enumerate() {
        if r.shape() != (d, d) || !linalg::is_unitary(r, PERMUTATION_TOL) {
            return Err(Error::input(format!("group element {i} is not a {d}x{d} unitary")));
        }
    }
    let w = build_hermitian_frame(frame)?;
    let n = w.count();
    let mut relations = Vec::new();

    let mut elements = Vec::with_capacity(2 * group.len());
    for (i, r) in group.iter().enumerate() {
        elements.push((i, r.clone()));
        elements.push((i, r.adjoint()));
    }
    for (i, r) in &elements {
        let perm = signed_permutation(frame, r, *i)?;
        let rd = r.adjoint();
        for p in 0..n {
            for q in 0..n {
                let (target, sign) = image_pair(p, q, &perm);
                let image = (r * w.get(p, q) * &rd).scale(sign);
                let dev = linalg::max_abs_diff(&image, w.get(target.0, target.1));
                if dev > RELATION_TOL {
                    return Err(Error::Numerical(format!(
                        "relation W{:?} = R W({p},{q}) R† fails by {dev:.3e}",
                        target
                    )));
                }
                relations.push(RotationRelation { target, source: (p, q), rotation: r.clone(), sign });
            }
        }
    }

    let identity = CMatrix::identity(d, d);
    for a in 0..n * n {
        for b in a + 1..n * n {
            let (x, y) = (w.get(a / n, a % n), w.get(b / n, b % n));
            for sign in [1.0, -1.0] {
                if linalg::max_abs_diff(x, &y.scale(sign)) <= RELATION_TOL {
                    relations.push(RotationRelation {
                        target: (a / n, a % n),
                        source: (b / n, b % n),
                        rotation: identity.clone(),
                        sign,
                    });
                }
            }
        }
    }

    let mut classes = Classes::new(n * n);
    for r in &relations {
        classes.join(r.target.0 * n + r.target.1, r.source.0 * n + r.source.1);
    }
    let representatives: Vec<IndexPair> =
        (0..n * n).filter(|&i| classes.root(i) == i).map(|i| (i / n, i % n)).collect();
    Ok(RotationCover { num_setups: representatives.len(), representatives, relations })
}

/// Name of the random source recorded in reports.
pub const RNG_ID: &str = "ChaCha8Rng(seed_from_u64(seed), stream = trial index)";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseExperimentReport {
    pub epsilon: f64,
    pub trials: usize,
    pub seed: u64,
    pub mean_frame: f64,
    pub mean_basis: f64,
    pub stderr_frame: f64,
    pub stderr_basis: f64,
    pub rng: String,
    #[serde(skip_serializing, default)]
    pub frame_errors: Vec<f64>,
    #[serde(skip_serializing, default)]
    pub basis_errors: Vec<f64>,
}

/// Both reconstruction errors for given perturbations:
/// `‖ρ − Σ(𝒲_ρ(j,k) + λ_jk) W_jk‖` and `‖ρ − Σ((1/d)Tr(ρΠ(j,k)) + μ_jk) Π(j,k)‖`,
/// Hilbert–Schmidt norms. `λ` is indexed like the Wigner table, `μ` like the grid.
pub fn reconstruction_errors(
    rho: &CMatrix,
    w: &HermitianFrame,
    ops: &PhasePointOperators,
    lambda: &[f64],
    mu: &[f64],
) -> Result<(f64, f64)> {
    let n = w.count();
    let d = ops.dim.d();
    if lambda.len() != n * n || mu.len() != d * d {
        return Err(Error::input("perturbation lengths do not match the frame and grid"));
    }
    let table = wigner(rho, w)?;
    let mut frame_sum = CMatrix::zeros(w.d(), w.d());
    for (i, op) in w.ops().iter().enumerate() {
        frame_sum += op.map(|z| z * cr(table.values()[i] + lambda[i]));
    }
    let mut basis_sum = CMatrix::zeros(d, d);
    for (i, pi) in ops.parities.iter().enumerate() {
        let coeff = linalg::trace_product(rho, pi).re / d as f64 + mu[i];
        basis_sum += pi.map(|z| z * cr(coeff));
    }
    Ok((linalg::hs_norm(&(rho - frame_sum)), linalg::hs_norm(&(rho - basis_sum))))
}

fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Monte-Carlo comparison of frame and parity-basis reconstruction under uniform
/// coefficient noise on `(−ε, ε)`. Trial `t` draws from its own ChaCha8 stream, so
/// the result does not depend on scheduling.
pub fn noise_experiment(
    rho: &DensityMatrix,
    w: &HermitianFrame,
    epsilon: f64,
    trials: usize,
    seed: u64,
) -> Result<NoiseExperimentReport> {
    let dim = OddDimension::new(w.d())?;
    if rho.dim() != w.d() {
        return Err(Error::input(format!(
            "state has dimension {} but the frame has dimension {}",
            rho.dim(),
            w.d()
        )));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::input(format!("epsilon must be positive, got {epsilon}")));
    }
    if trials == 0 {
        return Err(Error::input("at least one trial is required"));
    }
    let ops = PhasePointOperators::new(dim);
    let noise = Uniform::new(-epsilon, epsilon).map_err(|e| Error::input(e.to_string()))?;
    let (nf, nb) = (w.count() * w.count(), dim.d() * dim.d());

    let errors: Vec<(f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let lambda: Vec<f64> = (0..nf).map(|_| noise.sample(&mut rng)).collect();
            let mu: Vec<f64> = (0..nb).map(|_| noise.sample(&mut rng)).collect();
            reconstruction_errors(rho.matrix(), w, &ops, &lambda, &mu)
        })
        .collect::<Result<_>>()?;
    let (frame_errors, basis_errors): (Vec<f64>, Vec<f64>) = errors.into_iter().unzip();
    let (mean_frame, stderr_frame) = mean_and_stderr(&frame_errors);
    let (mean_basis, stderr_basis) = mean_and_stderr(&basis_errors);
    Ok(NoiseExperimentReport {
        epsilon,
        trials,
        seed,
        mean_frame,
        mean_basis,
        stderr_frame,
        stderr_basis,
        rng: RNG_ID.to_string(),
        frame_errors,
        basis_errors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{standard_frame, FrameKind};

    fn kernel(kind: FrameKind, m: usize) -> (Frame, HermitianFrame) {
        let f = standard_frame(kind, m).unwrap();
        let w = build_hermitian_frame(&f).unwrap();
        (f, w)
    }

    fn conj(r: &CMatrix, a: &CMatrix) -> CMatrix {
        r * a * r.adjoint()
    }

    #[test]
    fn triangle_relations_and_setups() {
        let (f, w) = kernel(FrameKind::Polygon, 3);
        let p = PI / 3.0;
        let checks = [((1, 1), -p, (0, 0)), ((0, 1), p, (1, 2)), ((2, 2), p, (0, 0)), ((0, 2), -p, (1, 2))];
        for (t, a, s) in checks {
            let got = conj(&plane_rotation(a), w.get(s.0, s.1));
            assert!(linalg::max_abs_diff(&got, w.get(t.0, t.1)) < 1e-12);
        }
        let cover = rotation_cover(&f, &triangle_rotations()).unwrap();
        assert_eq!(cover.num_setups, 3);
        assert!(cover.find((1, 0), (2, 0)).any(|r| r.sign == -1.0));
        assert!(cover.find((1, 0), (2, 1)).any(|r| r.sign == 1.0));
        for r in &cover.relations {
            let got = conj(&r.rotation, w.get(r.source.0, r.source.1)).scale(r.sign);
            assert!(linalg::max_abs_diff(&got, w.get(r.target.0, r.target.1)) < 1e-12);
        }
    }

    #[test]
    fn tetrahedron_has_three_setups() {
        let (f, _) = kernel(FrameKind::Tetrahedron, 0);
        let cover = rotation_cover(&f, &tetrahedron_rotations()).unwrap();
        assert_eq!(cover.num_setups, 3);
        let r = tetrahedron_rotations();
        assert!(cover.find((0, 0), (3, 3)).any(|x| x.rotation == r[4] && x.sign == 1.0));
        assert!(cover.find((2, 0), (1, 0)).any(|x| x.rotation == r[3].adjoint() && x.sign == 1.0));
    }

    #[test]
    fn polygon_orbits() {
        for m in [4, 5, 7] {
            let (f, w) = kernel(FrameKind::Polygon, m);
            let rot = plane_rotation(2.0 * PI / m as f64);
            for j in 0..m {
                for k in 0..m {
                    let (s, r) = polygon_orbit_source(j, k);
                    let rr = rot.pow(r as u32);
                    let got = conj(&rr, w.get(s.0, s.1));
                    assert!(linalg::max_abs_diff(&got, w.get(j, k)) < 1e-12, "m={m} ({j},{k})");
                }
            }
            let cover = rotation_cover(&f, &polygon_rotations(m)).unwrap();
            assert!(cover.num_setups <= 1 + 2 * (m / 2));
        }
    }

    #[test]
    fn non_symmetry_is_reported() {
        let (f, _) = kernel(FrameKind::Polygon, 3);
        let err = rotation_cover(&f, &[plane_rotation(0.1)]).unwrap_err();
        assert!(err.to_string().contains("group element 0"));
        assert!(rotation_cover(&f, &[linalg::real_matrix(2, 2, &[2.0, 0.0, 0.0, 1.0])]).is_err());
    }

    #[test]
    fn zero_perturbation_is_exact() {
        let (_, w) = kernel(FrameKind::Icosahedron, 0);
        let ops = PhasePointOperators::new(OddDimension::new(3).unwrap());
        let rho = crate::linalg::real_matrix(3, 3, &[0.5, 0.1, 0.0, 0.1, 0.3, 0.0, 0.0, 0.0, 0.2]);
        let (fe, be) = reconstruction_errors(&rho, &w, &ops, &[0.0; 36], &[0.0; 9]).unwrap();
        assert!(fe < 1e-12 && be < 1e-12);
    }

    #[test]
    fn noise_experiment_basics() {
        let (_, w) = kernel(FrameKind::Icosahedron, 0);
        let rho = DensityMatrix::new(CMatrix::identity(3, 3).unscale(3.0)).unwrap();
        let tiny = noise_experiment(&rho, &w, 1e-12, 20, 1).unwrap();
        assert!(tiny.mean_frame <= 1e-9 && tiny.mean_basis <= 1e-9);
        let a = noise_experiment(&rho, &w, 0.01, 200, 9).unwrap();
        let b = noise_experiment(&rho, &w, 0.01, 200, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.frame_errors.len(), 200);
        assert!(a.mean_frame < a.mean_basis);
        assert!(noise_experiment(&rho, &w, 0.0, 10, 1).is_err());
        let (_, wq) = kernel(FrameKind::Polygon, 3);
        let q = DensityMatrix::new(crate::states::mixed1()).unwrap();
        assert!(matches!(noise_experiment(&q, &wq, 0.01, 10, 1), Err(Error::UnsupportedDimension(2))));
    }
}
