//! Entropy and entanglement diagnostics for qutrit states.
//!
//! A qutrit density matrix is embedded into 4x4 by adding a zero row and
//! column, after which two-qubit tools apply: partial traces give two
//! "artificial qubit" reductions and a subadditivity slack I_q, the partial
//! transpose gives a negativity sum, and the spin flip gives a concurrence.
//! A 4x4 state can likewise be padded to 6x6 and split as 2x3.

pub mod cli;
pub mod density;
pub mod entanglement;
pub mod entropy;
pub mod error;
pub mod families;
pub mod io;
pub mod linalg;
pub mod spin_basis;
pub mod tolerance;

pub use density::{DensityMatrix, PaddedState, Party, Split};
pub use entanglement::{EntanglementReport, Negativity};
pub use entropy::{EntropyReport, Route};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, ComplexScalar, Spectrum};
