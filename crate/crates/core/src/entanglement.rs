//! PPT negativity, spin-flip concurrence, and the product-state test.
//!
//! Qutrit states are handled through their corner padding to 4x4 with a
//! 2x2 split. The concurrence eigenvalues of rho * rho~ are obtained from
//! the isospectral Hermitian matrix sqrt(rho) rho~ sqrt(rho), which is PSD
//! because the spin-flipped state rho~ is itself PSD.

use crate::density::{pad_qutrit_to_4, partial_trace, partial_transpose, DensityMatrix, Party};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_spectrum, hermitian_sqrt, pauli_y, ComplexMatrix, Spectrum};
use crate::tolerance;

/// Spectrum of the partially transposed matrix and its absolute sum.
#[derive(Debug, Clone, PartialEq)]
pub struct Negativity {
    pub ppt_spectrum: Spectrum,
    pub sum: f64,
    pub entangled: bool,
}

impl Negativity {
    fn from_spectrum(ppt_spectrum: Spectrum) -> Self {
        let sum = ppt_spectrum.abs_sum();
        Negativity {
            entangled: sum > 1.0 + tolerance::ENTANGLED_SLACK,
            ppt_spectrum,
            sum,
        }
    }

    /// max(0, sum - 1)
    pub fn excess(&self) -> f64 {
        (self.sum - 1.0).max(0.0)
    }
}

/// Negativity sum of a qutrit, via partial transpose of the second factor
/// of its 4x4 corner padding.
pub fn negativity(q: &DensityMatrix) -> Result<Negativity> {
    let padded = pad_qutrit_to_4(q)?;
    bipartite_negativity(&padded.padded)
}

/// Negativity sum of any state carrying a split, transposing factor B.
pub fn bipartite_negativity(m: &DensityMatrix) -> Result<Negativity> {
    let pt = partial_transpose(m, Party::B)?;
    Ok(Negativity::from_spectrum(hermitian_spectrum(
        &pt,
        tolerance::JACOBI,
    )?))
}

/// sigma_y (x) sigma_y
pub fn sigma_yy() -> ComplexMatrix {
    pauli_y().kron(&pauli_y()).expect("4x4")
}

/// (sigma_y (x) sigma_y) conj(m) (sigma_y (x) sigma_y)
pub fn spin_flip(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if m.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "spin flip needs a 4x4 matrix, got {}x{}",
            m.dim(),
            m.dim()
        )));
    }
    let yy = sigma_yy();
    yy.matmul(&m.conj())?.matmul(&yy)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Concurrence {
    pub value: f64,
    /// Eigenvalues of rho * spin_flip(rho), descending, with values below
    /// [`tolerance::LAMBDA_FLOOR`] set to zero.
    pub lambda: [f64; 4],
}

/// max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)) over descending eigenvalues,
/// clamped to [0, 1].
pub fn concurrence_from_lambda(lambda: &[f64; 4]) -> f64 {
    let r: Vec<f64> = lambda.iter().map(|l| l.max(0.0).sqrt()).collect();
    (r[0] - r[1] - r[2] - r[3]).clamp(0.0, 1.0)
}

/// Concurrence of a 4x4 state (a genuine two-qubit state or a padded qutrit).
pub fn concurrence(m: &DensityMatrix) -> Result<Concurrence> {
    if m.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "concurrence needs a 4x4 state, got {}x{}",
            m.dim(),
            m.dim()
        )));
    }
    let root = hermitian_sqrt(m.matrix())?;
    let flipped = spin_flip(m.matrix())?;
    let h = root.matmul(&flipped)?.matmul(&root)?.hermitian_part();
    let spec = hermitian_spectrum(&h, tolerance::JACOBI)?;
    let mut lambda = [0.0; 4];
    for (dst, &v) in lambda.iter_mut().zip(&spec.values) {
        *dst = if v > tolerance::LAMBDA_FLOOR { v } else { 0.0 };
    }
    Ok(Concurrence {
        value: concurrence_from_lambda(&lambda),
        lambda,
    })
}

/// Concurrence of a qutrit through its corner padding.
pub fn qutrit_concurrence(q: &DensityMatrix) -> Result<Concurrence> {
    concurrence(&pad_qutrit_to_4(q)?.padded)
}

/// Closed-form eigenvalues of rho~ rho^C for a real qutrit, in the displayed
/// order (lambda1 uses the + branch, which need not be the larger one):
///
/// ```text
/// l_{1,2} = (r23^2 + r32^2 +- (r23 + r32) sqrt((r23 - r32)^2 + 4 r22 r33)) / 2 + r22 r33
/// l3 = l4 = 0
/// ```
pub fn closed_form_lambda_real(q: &DensityMatrix) -> Result<[f64; 4]> {
    if q.dim() != 3 {
        return Err(Error::DimensionMismatch(format!(
            "closed-form lambda needs a 3x3 state, got {}x{}",
            q.dim(),
            q.dim()
        )));
    }
    let m = q.matrix();
    let max_imag = m.max_imag();
    if max_imag > tolerance::REAL_IMAG {
        return Err(Error::NotReal { max_imag });
    }
    let r22 = m[(1, 1)].re;
    let r33 = m[(2, 2)].re;
    let r23 = m[(1, 2)].re;
    let r32 = m[(2, 1)].re;
    let radical = (r23 * r23 - 2.0 * r23 * r32 + r32 * r32 + 4.0 * r22 * r33)
        .max(0.0)
        .sqrt();
    let base = (r23 * r23 + r32 * r32) / 2.0 + r22 * r33;
    let arm = (r23 + r32) * radical / 2.0;
    Ok([base + arm, base - arm, 0.0, 0.0])
}

/// Everything the CLI reports about entanglement for one state.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementReport {
    pub ppt_spectrum: Spectrum,
    pub negativity_sum: f64,
    pub entangled_by_ppt: bool,
    pub concurrence: f64,
    pub lambda_c: [f64; 4],
}

impl EntanglementReport {
    fn new(neg: Negativity, conc: Concurrence) -> Self {
        EntanglementReport {
            ppt_spectrum: neg.ppt_spectrum,
            negativity_sum: neg.sum,
            entangled_by_ppt: neg.entangled,
            concurrence: conc.value,
            lambda_c: conc.lambda,
        }
    }

    pub fn negativity_excess(&self) -> f64 {
        (self.negativity_sum - 1.0).max(0.0)
    }
}

/// Report for a qutrit (padded to 4x4) or a two-qubit state (2x2 split implied).
pub fn entanglement_report(m: &DensityMatrix) -> Result<EntanglementReport> {
    match m.dim() {
        3 => Ok(EntanglementReport::new(negativity(m)?, qutrit_concurrence(m)?)),
        4 => {
            let m = m.clone().with_split(2, 2)?;
            Ok(EntanglementReport::new(
                bipartite_negativity(&m)?,
                concurrence(&m)?,
            ))
        }
        d => Err(Error::DimensionMismatch(format!(
            "entanglement report needs a 3x3 or 4x4 state, got {d}x{d}"
        ))),
    }
}

/// True when m equals the product of its own reductions within `tol` (max-abs).
pub fn is_product_state(m: &DensityMatrix, tol: f64) -> Result<bool> {
    let a = partial_trace(m, Party::A)?;
    let b = partial_trace(m, Party::B)?;
    let prod = a.matrix().kron(b.matrix())?;
    Ok(prod.max_abs_diff(m.matrix())? <= tol)
}
