//! Tight-frame representations of finite-dimensional quantum systems.
//!
//! Starting from a tight frame `{v_j}` of a `d`-dimensional Hilbert space, the
//! rank-one operators `V_jk = |v_j⟩⟨v_k|` form a tight frame of all operators and
//! their Hermitian combinations `W_jk` a tight frame of the self-adjoint ones. The
//! coefficients `Tr(A W_jk)` give a real, frame-indexed Wigner function.
//!
//! # Modules
//!
//! - [`frames`]: frame construction, bounds, canonical tightening, Naimark embedding
//! - [`opframes`]: operator frames, Hermitian frames, Wigner and characteristic tables
//! - [`weylref`]: odd-dimension displacement/parity reference kernels, discrete Gaussians
//! - [`composite`]: bipartite Wigner tables, partial-trace marginals, slices
//! - [`analysis`]: negativity, coherence, Gaussian qubit states
//! - [`projection`]: the qubit as an orthogonal projection of the qutrit
//! - [`tomo`]: rotation covers of frame kernels and the measurement-noise experiment
//!
//! # Example
//!
//! ```
//! use qudit_frames::{frames, opframes, states};
//!
//! let frame = frames::standard_frame(frames::FrameKind::Polygon, 3).unwrap();
//! let kernel = opframes::build_hermitian_frame(&frame).unwrap();
//! let rho = states::pure1();
//! let table = opframes::wigner(&rho, &kernel).unwrap();
//! let diag: f64 = (0..3).map(|j| table.get(j, j)).sum();
//! assert!((diag - 1.0).abs() < 1e-12);
//! ```

pub mod analysis;
pub mod composite;
pub mod error;
pub mod frames;
pub mod io;
pub mod linalg;
pub mod opframes;
pub mod projection;
pub mod states;
pub mod tomo;
pub mod weylref;

pub use error::{Error, Result};
pub use frames::{Frame, FrameKind, NaimarkEmbedding};
pub use linalg::{CMatrix, CVector};
pub use num_complex::Complex64;
pub use opframes::{CharTable, HermitianFrame, OperatorFrame, WignerTable};
