//! Named states used by the tables, figures and CLI.

use crate::error::{Error, Result};
use crate::linalg::{c, cr, outer, CMatrix, CVector};

/// `|ψ⟩⟨ψ|` with `ψ = (1, −i)/√2`.
pub fn pure1() -> CMatrix {
    let h = 1.0 / 2f64.sqrt();
    let psi = CVector::from_vec(vec![cr(h), c(0.0, -h)]);
    outer(&psi, &psi)
}

/// `(1/3) [[1, i], [−i, 2]]`
pub fn mixed1() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[cr(1.0), c(0.0, 1.0), c(0.0, -1.0), cr(2.0)]).unscale(3.0)
}

/// Bell state `(|0⟩⊗|1⟩ + |1⟩⊗|0⟩)/√2` as a 4×4 density matrix.
pub fn bell() -> CMatrix {
    let h = 1.0 / 2f64.sqrt();
    let psi = CVector::from_vec(vec![cr(0.0), cr(h), cr(h), cr(0.0)]);
    outer(&psi, &psi)
}

/// Look up a preset by name (`pure1`, `mixed1`, `bell`).
pub fn preset(name: &str) -> Result<CMatrix> {
    match name {
        "pure1" => Ok(pure1()),
        "mixed1" => Ok(mixed1()),
        "bell" => Ok(bell()),
        other => Err(Error::input(format!("unknown state preset '{other}'"))),
    }
}
