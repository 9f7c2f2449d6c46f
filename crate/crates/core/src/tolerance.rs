//! Numerical thresholds shared across the crate.

/// Relative Hermiticity slack: max |m_ij - conj(m_ji)| <= this * max |m_ij|.
pub const HERMITIAN_REL: f64 = 1e-12;

/// Allowed |tr(rho) - 1| for a density matrix.
pub const TRACE: f64 = 1e-9;

/// Eigenvalues down to -PSD are treated as roundoff and clamped to zero.
pub const PSD: f64 = 1e-10;

/// Jacobi stopping threshold on the off-diagonal Frobenius norm.
pub const JACOBI: f64 = 1e-12;

pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues below this contribute exactly zero to an entropy sum.
pub const ENTROPY_FLOOR: f64 = 1e-15;

/// Eigenvalues of sqrt(rho) rho~ sqrt(rho) below this are roundoff and are set
/// to zero before the square roots in the concurrence are taken.
pub const LAMBDA_FLOOR: f64 = 1e-14;

/// Negativity sums above 1 + this flag a state as entangled.
pub const ENTANGLED_SLACK: f64 = 1e-9;

/// Largest imaginary part tolerated by the real-matrix closed forms.
pub const REAL_IMAG: f64 = 1e-14;

/// Slack on the coherent family's PSD domain b^2 <= p (1 - 2p).
pub const DOMAIN: f64 = 1e-12;

/// Runtime-adjustable subset used by validation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub hermitian: f64,
    pub trace: f64,
    pub psd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            hermitian: HERMITIAN_REL,
            trace: TRACE,
            psd: PSD,
        }
    }
}
