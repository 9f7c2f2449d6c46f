use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max |m_ij - conj(m_ji)| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("trace is not one (|tr - 1| = {deviation:e})")]
    TraceNotOne { deviation: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue = {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("state has no bipartite split")]
    NoSplit,

    #[error("matrix has non-negligible imaginary parts (max |im| = {max_imag:e})")]
    NotReal { max_imag: f64 },

    #[error("singlet weight {weight} leaves nothing to renormalize")]
    SingletDominant { weight: f64 },

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("negative radicand {value:e} in closed form (parameters outside the PSD domain)")]
    NegativeRadicand { value: f64 },

    #[error("empty parameter grid")]
    EmptyGrid,
}

impl Error {
    /// True for the three density-matrix property violations.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NotHermitian { .. } | Error::TraceNotOne { .. } | Error::NotPsd { .. }
        )
    }

    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::NegativeRadicand { .. } | Error::SingletDominant { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
