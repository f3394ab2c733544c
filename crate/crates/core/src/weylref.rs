//! Odd-dimensional Weyl reference machinery.
//!
//! For `d = 2s + 1` states are functions on `{−s, …, s}` (row `i` of a matrix is
//! the point `n = i − s`). Displacements
//!
//! ```text
//! D(j,k) ψ(n) = e^{−πi kj/d} e^{2πi kn/d} ψ(n − j)
//! ```
//!
//! and displaced parities `Π(j,k) = D(j,k) Π D(j,k)†` give the standard discrete
//! characteristic and Wigner functions. This module is the independent baseline
//! that the frame construction is compared against, plus the Wootters–Feynman
//! qubit kernel.
//!
//! The Fourier transform is the unitary one, `F[ψ](k) = d^{-1/2} Σ_n e^{−2πi kn/d} ψ(n)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::frames::Frame;
use crate::linalg::{self, c, cr, CMatrix, CVector};
use crate::opframes::{CharTable, WignerTable};

/// Terms of the periodized Gaussian below this are dropped.
pub const GAUSSIAN_TRUNCATION: f64 = 1e-17;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OddDimension {
    d: usize,
}

impl OddDimension {
    pub fn new(d: usize) -> Result<Self> {
        if d < 3 || d.is_multiple_of(2) {
            return Err(Error::UnsupportedDimension(d));
        }
        Ok(OddDimension { d })
    }

    pub fn d(self) -> usize {
        self.d
    }

    pub fn s(self) -> i64 {
        (self.d as i64 - 1) / 2
    }

    /// Centered points `−s..=s`.
    pub fn points(self) -> impl Iterator<Item = i64> {
        let s = self.s();
        -s..=s
    }

    /// Matrix row of the point `n` (any integer, taken mod d).
    pub fn row(self, n: i64) -> usize {
        (n + self.s()).rem_euclid(self.d as i64) as usize
    }

    /// Table index of the grid point `(j, k)` with `j, k ∈ {−s..s}`.
    pub fn grid_index(self, j: i64, k: i64) -> usize {
        self.row(j) * self.d + self.row(k)
    }
}

fn phase(turns: f64) -> num_complex::Complex64 {
    let a = 2.0 * PI * turns;
    c(a.cos(), a.sin())
}

/// `D(j,k)`. The indices are used literally in the phase `e^{−πi kj/d}`, so values
/// outside `{−s..s}` follow the same formula (this is what makes the composition
/// law hold without reduction).
pub fn displacement(dim: OddDimension, j: i64, k: i64) -> CMatrix {
    let d = dim.d as i64;
    let df = d as f64;
    let global = -((k * j) as f64) / (2.0 * df);
    let mut m = CMatrix::zeros(dim.d, dim.d);
    for n in dim.points() {
        let t = global + ((k * n).rem_euclid(d)) as f64 / df;
        m[(dim.row(n), dim.row(n - j))] = phase(t);
    }
    m
}

/// `Π ψ(n) = ψ(−n)`
pub fn parity(dim: OddDimension) -> CMatrix {
    let mut m = CMatrix::zeros(dim.d, dim.d);
    for n in dim.points() {
        m[(dim.row(n), dim.row(-n))] = cr(1.0);
    }
    m
}

pub fn displaced_parity(dim: OddDimension, j: i64, k: i64) -> CMatrix {
    let dj = displacement(dim, j, k);
    &dj * parity(dim) * dj.adjoint()
}

/// All `D(j,k)` and `Π(j,k)` on the centered grid, indexed by
/// [`OddDimension::grid_index`].
#[derive(Debug, Clone)]
pub struct PhasePointOperators {
    pub dim: OddDimension,
    pub displacements: Vec<CMatrix>,
    pub parities: Vec<CMatrix>,
}

impl PhasePointOperators {
    pub fn new(dim: OddDimension) -> Self {
        let mut displacements = Vec::with_capacity(dim.d * dim.d);
        let mut parities = Vec::with_capacity(dim.d * dim.d);
        for j in dim.points() {
            for k in dim.points() {
                displacements.push(displacement(dim, j, k));
                parities.push(displaced_parity(dim, j, k));
            }
        }
        PhasePointOperators { dim, displacements, parities }
    }

    pub fn displacement(&self, j: i64, k: i64) -> &CMatrix {
        &self.displacements[self.dim.grid_index(j, k)]
    }

    pub fn parity(&self, j: i64, k: i64) -> &CMatrix {
        &self.parities[self.dim.grid_index(j, k)]
    }
}

fn check_square(a: &CMatrix, d: usize) -> Result<()> {
    if a.nrows() != d || a.ncols() != d {
        return Err(Error::input(format!(
            "operator is {}x{}, expected {d}x{d}",
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(())
}

/// `χ_A(j,k) = (1/d) Tr(A D(j,k)†)` for any operator `A`.
pub fn weyl_char(a: &CMatrix, ops: &PhasePointOperators) -> Result<CharTable> {
    let d = ops.dim.d;
    check_square(a, d)?;
    let values = ops
        .displacements
        .iter()
        .map(|dm| linalg::hs_inner(dm, a) / d as f64)
        .collect();
    CharTable::new(d, values)
}

/// Characteristic function and Wigner function `𝒲_A(j,k) = (1/d) Tr(A Π(j,k))` of a
/// Hermitian operator.
pub fn weyl_wigner(a: &CMatrix, dim: OddDimension) -> Result<(CharTable, WignerTable)> {
    let ops = PhasePointOperators::new(dim);
    weyl_wigner_with(a, &ops)
}

pub fn weyl_wigner_with(a: &CMatrix, ops: &PhasePointOperators) -> Result<(CharTable, WignerTable)> {
    let d = ops.dim.d;
    check_square(a, d)?;
    let a = linalg::checked_hermitian(a)?;
    let chi = weyl_char(&a, ops)?;
    let values = ops
        .parities
        .iter()
        .map(|p| linalg::trace_product(&a, p).re / d as f64)
        .collect();
    Ok((chi, WignerTable::new(d, values)?))
}

/// `Σ χ(j,k) D(j,k)`
pub fn reconstruct_from_char(chi: &CharTable, ops: &PhasePointOperators) -> CMatrix {
    let d = ops.dim.d;
    ops.displacements
        .iter()
        .zip(chi.values())
        .fold(CMatrix::zeros(d, d), |acc, (dm, &x)| acc + dm * x)
}

/// `Σ 𝒲(j,k) Π(j,k)`
pub fn reconstruct_from_wigner(w: &WignerTable, ops: &PhasePointOperators) -> CMatrix {
    let d = ops.dim.d;
    ops.parities
        .iter()
        .zip(w.values())
        .fold(CMatrix::zeros(d, d), |acc, (p, &x)| acc + p.scale(x))
}

/// Periodized Gaussian `g_κ(n) = Σ_m e^{−(κπ/d)(n + md)²}` on `{−s..s}`.
pub fn discrete_gaussian(dim: OddDimension, kappa: f64) -> Result<CVector> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::input(format!("kappa must be positive, got {kappa}")));
    }
    let d = dim.d as f64;
    let term = |x: f64| (-(kappa * PI / d) * x * x).exp();
    let mut g = CVector::zeros(dim.d);
    for n in dim.points() {
        let n = n as f64;
        let mut sum = term(n);
        for dir in [1.0, -1.0] {
            let mut m = 1.0;
            loop {
                let t = term(n + dir * m * d);
                if t < GAUSSIAN_TRUNCATION {
                    break;
                }
                sum += t;
                m += 1.0;
            }
        }
        g[dim.row(n as i64)] = cr(sum);
    }
    Ok(g)
}

/// Unitary discrete Fourier transform on the centered grid.
pub fn fourier_matrix(dim: OddDimension) -> CMatrix {
    let d = dim.d as i64;
    let norm = 1.0 / (dim.d as f64).sqrt();
    let mut f = CMatrix::zeros(dim.d, dim.d);
    for k in dim.points() {
        for n in dim.points() {
            let t = -((k * n).rem_euclid(d) as f64) / d as f64;
            f[(dim.row(k), dim.row(n))] = phase(t) * norm;
        }
    }
    f
}

/// Discrete vacuum `|0,0⟩ = g_1 / ‖g_1‖`.
pub fn vacuum_state(dim: OddDimension) -> CVector {
    let g = discrete_gaussian(dim, 1.0).expect("kappa = 1 is valid");
    let norm = g.norm();
    g.unscale(norm)
}

/// Coherent states `|j,k⟩ = D(j,k)|0,0⟩`, `j`-major over the centered grid.
///
/// The family is tight with bound `d`: `(1/d) Σ |j,k⟩⟨j,k| = I`.
pub fn coherent_states(dim: OddDimension) -> Frame {
    let vac = vacuum_state(dim);
    let mut vectors = Vec::with_capacity(dim.d * dim.d);
    for j in dim.points() {
        for k in dim.points() {
            vectors.push(displacement(dim, j, k) * &vac);
        }
    }
    Frame::new(vectors).expect("coherent states share the dimension")
}

/// The Wootters–Feynman qubit phase-point operators `K_jk`, `j, k ∈ {0, 1}`.
#[derive(Debug, Clone)]
pub struct WoottersFeynmanKernel {
    ops: [CMatrix; 4],
}

impl WoottersFeynmanKernel {
    pub fn get(&self, j: usize, k: usize) -> &CMatrix {
        &self.ops[2 * j + k]
    }

    pub fn ops(&self) -> &[CMatrix] {
        &self.ops
    }

    /// `𝒲_A(j,k) = ½ Tr(A K_jk)`
    pub fn wigner(&self, a: &CMatrix) -> Result<WignerTable> {
        check_square(a, 2)?;
        let a = linalg::checked_hermitian(a)?;
        WignerTable::new(2, self.ops.iter().map(|k| 0.5 * linalg::trace_product(&a, k).re).collect())
    }
}

pub fn wootters_feynman_kernel() -> WoottersFeynmanKernel {
    let id = CMatrix::identity(2, 2);
    let sx = CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)]);
    let sy = CMatrix::from_row_slice(2, 2, &[cr(0.0), c(0.0, -1.0), c(0.0, 1.0), cr(0.0)]);
    let sz = CMatrix::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(-1.0)]);
    let k = |x: f64, y: f64, z: f64| (&id + sx.scale(x) + sy.scale(y) + sz.scale(z)).scale(0.5);
    WoottersFeynmanKernel {
        ops: [k(1.0, 1.0, 1.0), k(-1.0, -1.0, 1.0), k(1.0, -1.0, -1.0), k(-1.0, 1.0, -1.0)],
    }
}
