//! Change of basis between the product basis e = (|uu>, |ud>, |du>, |dd>)
//! and the total-spin basis g = (|1,1>, |1,0>, |1,-1>, |0,0>) of two spin-1/2
//! particles, and the symmetric (triplet) truncation of a two-qubit state.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Total spin j and projection m of a g-basis vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinBasisLabel {
    pub j: u8,
    pub m: i8,
}

pub const G_BASIS_LABELS: [SpinBasisLabel; 4] = [
    SpinBasisLabel { j: 1, m: 1 },
    SpinBasisLabel { j: 1, m: 0 },
    SpinBasisLabel { j: 1, m: -1 },
    SpinBasisLabel { j: 0, m: 0 },
];

/// Index of the singlet |0,0> in the g basis.
pub const SINGLET: usize = 3;

/// Column j holds the e-basis coefficients of g_j:
/// g_1 = e_1, g_2 = (e_2 + e_3)/sqrt2, g_3 = e_4, g_4 = (e_2 - e_3)/sqrt2.
///
/// This is the symmetric matrix [[1,0,0,0],[0,h,h,0],[0,h,-h,0],[0,0,0,1]]
/// with its last two columns swapped, so that the singlet sits in column 4
/// as the labels require. It is real and unitary but not self-inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisChange {
    c: ComplexMatrix,
}

impl Default for BasisChange {
    fn default() -> Self {
        Self::new()
    }
}

impl BasisChange {
    pub fn new() -> Self {
        let h = FRAC_1_SQRT_2;
        let c = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, h, 0.0, h],
            &[0.0, h, 0.0, -h],
            &[0.0, 0.0, 1.0, 0.0],
        ])
        .expect("4x4");
        BasisChange { c }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.c
    }
}

fn require_4(m: &ComplexMatrix) -> Result<()> {
    if m.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "basis change needs a 4x4 matrix, got {}x{}",
            m.dim(),
            m.dim()
        )));
    }
    Ok(())
}

/// C^dagger m C: matrix elements <g_i| rho |g_j>.
pub fn to_g_basis(m: &DensityMatrix) -> Result<DensityMatrix> {
    Ok(DensityMatrix::trusted(g_from_e(m.matrix())?, None))
}

/// C m C^dagger, the inverse of [`to_g_basis`].
pub fn to_e_basis(m: &DensityMatrix) -> Result<DensityMatrix> {
    Ok(DensityMatrix::trusted(e_from_g(m.matrix())?, None))
}

pub fn g_from_e(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    require_4(m)?;
    let c = BasisChange::new();
    c.c.adjoint().matmul(m)?.matmul(&c.c)
}

pub fn e_from_g(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    require_4(m)?;
    let c = BasisChange::new();
    c.c.matmul(m)?.matmul(&c.c.adjoint())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Truncation {
    /// g-basis matrix with the singlet row and column zeroed.
    pub matrix: ComplexMatrix,
    /// The removed (4,4) population.
    pub singlet_weight: f64,
    pub renormalized: bool,
}

/// Zeroes the singlet row and column of a g-basis state. Without
/// renormalization the result has trace 1 - singlet_weight.
pub fn symmetric_truncation(m: &DensityMatrix, renormalize: bool) -> Result<Truncation> {
    let g = m.matrix();
    require_4(g)?;
    let singlet_weight = g[(SINGLET, SINGLET)].re;
    if renormalize && singlet_weight >= 1.0 - 1e-12 {
        return Err(Error::SingletDominant {
            weight: singlet_weight,
        });
    }
    let scale = if renormalize {
        1.0 / (1.0 - singlet_weight)
    } else {
        1.0
    };
    let matrix = ComplexMatrix::from_fn(4, |i, j| {
        if i == SINGLET || j == SINGLET {
            num_complex::Complex64::new(0.0, 0.0)
        } else {
            g[(i, j)] * scale
        }
    })?;
    Ok(Truncation {
        matrix,
        singlet_weight,
        renormalized: renormalize,
    })
}

/// Projects a two-qubit state (e basis) onto its triplet sector and returns
/// the renormalized 3x3 spin-1 state.
pub fn qutrit_from_symmetric(m: &DensityMatrix) -> Result<DensityMatrix> {
    let g = to_g_basis(m)?;
    let t = symmetric_truncation(&g, true)?;
    let q = ComplexMatrix::from_fn(3, |i, j| t.matrix[(i, j)])?;
    DensityMatrix::validate(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::random_density;
    use num_complex::Complex64;

    fn ket(v: &[f64]) -> DensityMatrix {
        let amps: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        DensityMatrix::pure(&amps).unwrap()
    }

    #[test]
    fn basis_change_is_unitary() {
        let c = BasisChange::new();
        let id = ComplexMatrix::identity(4).unwrap();
        let cc = c.matrix().matmul(&c.matrix().adjoint()).unwrap();
        assert!(cc.max_abs_diff(&id).unwrap() < 1e-12);
        let cc = c.matrix().adjoint().matmul(c.matrix()).unwrap();
        assert!(cc.max_abs_diff(&id).unwrap() < 1e-12);
        assert_eq!(c.matrix().max_imag(), 0.0);
    }

    #[test]
    fn columns_are_the_labelled_states() {
        let c = BasisChange::new();
        let h = FRAC_1_SQRT_2;
        let col = |j: usize| -> Vec<f64> { (0..4).map(|k| c.matrix()[(k, j)].re).collect() };
        assert_eq!(col(0), vec![1.0, 0.0, 0.0, 0.0]);
        assert_eq!(col(1), vec![0.0, h, h, 0.0]);
        assert_eq!(col(2), vec![0.0, 0.0, 0.0, 1.0]);
        assert_eq!(col(SINGLET), vec![0.0, h, -h, 0.0]);
    }

    #[test]
    fn swapping_back_gives_the_symmetric_form() {
        let c = BasisChange::new();
        let swapped = ComplexMatrix::from_fn(4, |i, j| {
            let j = match j {
                2 => 3,
                3 => 2,
                j => j,
            };
            c.matrix()[(i, j)]
        })
        .unwrap();
        let id = ComplexMatrix::identity(4).unwrap();
        assert_eq!(swapped, swapped.transpose());
        assert!(swapped.matmul(&swapped).unwrap().max_abs_diff(&id).unwrap() < 1e-12);
    }

    #[test]
    fn labels_are_frozen() {
        assert_eq!(G_BASIS_LABELS[0], SpinBasisLabel { j: 1, m: 1 });
        assert_eq!(G_BASIS_LABELS[SINGLET], SpinBasisLabel { j: 0, m: 0 });
        assert!(G_BASIS_LABELS.iter().all(|l| l.m.unsigned_abs() <= l.j));
    }

    #[test]
    fn g_basis_examples() {
        let mixed = DensityMatrix::maximally_mixed(4).unwrap();
        let g = to_g_basis(&mixed).unwrap();
        assert!(g.matrix().max_abs_diff(mixed.matrix()).unwrap() < 1e-15);

        let sym = ket(&[0.0, 1.0, 1.0, 0.0]);
        let g = to_g_basis(&sym).unwrap();
        let mut expected = ComplexMatrix::zeros(4).unwrap();
        expected[(1, 1)] = Complex64::new(1.0, 0.0);
        assert!(g.matrix().max_abs_diff(&expected).unwrap() < 1e-15);

        let rho = random_density(4, 12).unwrap();
        let back = to_e_basis(&to_g_basis(&rho).unwrap()).unwrap();
        assert!(back.matrix().max_abs_diff(rho.matrix()).unwrap() < 1e-15);
    }

    #[test]
    fn truncation_examples() {
        let up = to_g_basis(&ket(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        let t = symmetric_truncation(&up, false).unwrap();
        assert_eq!(t.singlet_weight, 0.0);
        assert!(t.matrix.max_abs_diff(up.matrix()).unwrap() < 1e-15);

        let mixed = DensityMatrix::maximally_mixed(4).unwrap();
        let t = symmetric_truncation(&mixed, true).unwrap();
        assert!((t.singlet_weight - 0.25).abs() < 1e-15);
        let expected = ComplexMatrix::from_diag(&[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0]).unwrap();
        assert!(t.matrix.max_abs_diff(&expected).unwrap() < 1e-15);

        let raw = symmetric_truncation(&mixed, false).unwrap();
        assert!((raw.matrix.trace().re - 0.75).abs() < 1e-15);

        let singlet = to_g_basis(&ket(&[0.0, 1.0, -1.0, 0.0])).unwrap();
        assert!(matches!(
            symmetric_truncation(&singlet, true),
            Err(Error::SingletDominant { .. })
        ));
    }

    #[test]
    fn qutrit_from_symmetric_examples() {
        let q = qutrit_from_symmetric(&ket(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        assert!(q.matrix().max_abs_diff(&ComplexMatrix::from_diag(&[1.0, 0.0, 0.0]).unwrap()).unwrap() < 1e-15);

        let q = qutrit_from_symmetric(&ket(&[0.0, 1.0, 1.0, 0.0])).unwrap();
        assert!(q.matrix().max_abs_diff(&ComplexMatrix::from_diag(&[0.0, 1.0, 0.0]).unwrap()).unwrap() < 1e-15);

        let q = qutrit_from_symmetric(&ket(&[0.0, 0.0, 0.0, 1.0])).unwrap();
        assert!(q.matrix().max_abs_diff(&ComplexMatrix::from_diag(&[0.0, 0.0, 1.0]).unwrap()).unwrap() < 1e-15);

        let q = qutrit_from_symmetric(&DensityMatrix::maximally_mixed(4).unwrap()).unwrap();
        let third = ComplexMatrix::identity(3).unwrap().scale_real(1.0 / 3.0);
        assert!(q.matrix().max_abs_diff(&third).unwrap() < 1e-15);
    }
}
