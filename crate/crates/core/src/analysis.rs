//! Functionals of qubit Wigner tables over the polygon frames and Gaussian qubit
//! states.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{standard_frame, FrameKind};
use crate::linalg::{self, cr, CMatrix};
use crate::opframes::{build_hermitian_frame, wigner, WignerTable};

/// m-values of the negativity/coherence table.
pub const TABLE1_M_VALUES: [usize; 18] =
    [3, 4, 5, 6, 7, 8, 9, 10, 15, 20, 30, 40, 50, 60, 70, 80, 90, 100];
pub const TABLE2_KAPPAS: [f64; 2] = [0.5, 1.0];
pub const TABLE2_M_VALUES: [usize; 6] = [3, 5, 7, 9, 11, 21];

const STATE_TOL: f64 = 1e-10;

/// A validated density matrix: Hermitian, unit trace, no eigenvalue below `-1e-10`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let matrix = linalg::checked_hermitian(&matrix)?;
        let tr = matrix.trace().re;
        if (tr - 1.0).abs() > STATE_TOL {
            return Err(Error::input(format!("trace is {tr}, expected 1")));
        }
        let min = spectrum(&matrix)?.last().copied().unwrap_or(0.0);
        if min < -STATE_TOL {
            return Err(Error::input(format!("not positive semidefinite (eigenvalue {min:.3e})")));
        }
        Ok(DensityMatrix { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }
}

/// `N_m = Σ(|𝒲| − 𝒲) / (2 m² max|𝒲|)`
pub fn negativity(t: &WignerTable) -> Result<f64> {
    let m = t.count() as f64;
    let max = t.max_abs();
    if max == 0.0 {
        return Err(Error::Numerical("negativity of an all-zero table is undefined".into()));
    }
    let volume: f64 = t.values().iter().map(|&v| v.abs() - v).sum();
    Ok(volume / (2.0 * m * m * max))
}

/// `C_m = (1/m) Σ_{j≠k} |𝒲(j,k)|`
pub fn coherence(t: &WignerTable) -> f64 {
    let m = t.count();
    let mut sum = 0.0;
    for j in 0..m {
        for k in 0..m {
            if j != k {
                sum += t.get(j, k).abs();
            }
        }
    }
    sum / m as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRecord {
    pub m_values: Vec<usize>,
    pub n_values: Vec<f64>,
    pub c_values: Vec<f64>,
    pub n_limit: f64,
    pub c_limit: f64,
    /// Largest change of either functional across the last three entries.
    pub limit_spread: f64,
}

fn tail_spread(values: &[f64]) -> f64 {
    let tail = &values[values.len().saturating_sub(3)..];
    let lo = tail.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    hi - lo
}

/// `(N_m, C_m)` of a qubit state under the polygon frame with `m` vectors.
pub fn polygon_functionals(rho: &DensityMatrix, m: usize) -> Result<(f64, f64)> {
    let w = build_hermitian_frame(&standard_frame(FrameKind::Polygon, m)?)?;
    let t = wigner(rho.matrix(), &w)?;
    Ok((negativity(&t)?, coherence(&t)))
}

/// Evaluate `N_m`, `C_m` for each `m` with polygon frames. The limit estimates are
/// the values at the largest `m`.
pub fn convergence_scan(rho: &DensityMatrix, m_list: &[usize]) -> Result<ConvergenceRecord> {
    if rho.dim() != 2 {
        return Err(Error::input("convergence scan is defined for qubit states"));
    }
    if m_list.is_empty() {
        return Err(Error::input("empty m list"));
    }
    if m_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::input("m list must be strictly ascending"));
    }
    let pairs: Vec<(f64, f64)> =
        m_list.par_iter().map(|&m| polygon_functionals(rho, m)).collect::<Result<_>>()?;
    let (n_values, c_values): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    let limit_spread = tail_spread(&n_values).max(tail_spread(&c_values));
    Ok(ConvergenceRecord {
        m_values: m_list.to_vec(),
        n_limit: *n_values.last().unwrap(),
        c_limit: *c_values.last().unwrap(),
        n_values,
        c_values,
        limit_spread,
    })
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn spectrum(a: &CMatrix) -> Result<Vec<f64>> {
    let a = linalg::checked_hermitian(a)?;
    Ok(linalg::hermitian_eigen(&a).0)
}

/// `f_κ(j,k) = e^{−κ(j²+k²)}` for `j, k ∈ {−ℓ..ℓ}`; entry `[j+ℓ][k+ℓ]`.
pub fn gaussian_2d(m: usize, kappa: f64) -> Result<Vec<Vec<f64>>> {
    if m.is_multiple_of(2) {
        return Err(Error::input(format!("m must be odd, got {m}")));
    }
    let l = (m / 2) as i64;
    Ok((-l..=l)
        .map(|j| (-l..=l).map(|k| (-kappa * (j * j + k * k) as f64).exp()).collect())
        .collect())
}

#[derive(Debug, Clone)]
pub struct GaussianState {
    pub rho: CMatrix,
    /// Descending.
    pub spectrum: Vec<f64>,
    /// Smallest eigenvalue is at least `-1e-10`.
    pub is_positive: bool,
}

/// `ρ_κ ∝ Σ_{j,k=−ℓ}^{ℓ} e^{−κ(j²+k²)} W_{j mod m, k mod m}` over the polygon frame.
/// Positivity is reported, not enforced.
pub fn gaussian_state(m: usize, kappa: f64) -> Result<GaussianState> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::input(format!("m must be odd and at least 3, got {m}")));
    }
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::input(format!("kappa must be positive, got {kappa}")));
    }
    let w = build_hermitian_frame(&standard_frame(FrameKind::Polygon, m)?)?;
    let l = (m / 2) as i64;
    let wrap = |x: i64| x.rem_euclid(m as i64) as usize;
    let mut sum = CMatrix::zeros(2, 2);
    for j in -l..=l {
        for k in -l..=l {
            let g = (-kappa * (j * j + k * k) as f64).exp();
            sum += w.get(wrap(j), wrap(k)).map(|z| z * cr(g));
        }
    }
    let tr = sum.trace().re;
    if tr <= 0.0 {
        return Err(Error::Numerical(format!("unnormalized Gaussian sum has trace {tr:.3e}")));
    }
    let rho = linalg::hermitian_part(&sum.unscale(tr));
    let spectrum = spectrum(&rho)?;
    let is_positive = spectrum.last().is_some_and(|&x| x >= -STATE_TOL);
    Ok(GaussianState { rho, spectrum, is_positive })
}
