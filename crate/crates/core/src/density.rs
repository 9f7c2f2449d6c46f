//! Density matrices, zero-padding embeddings, and bipartite operations.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_spectrum, ComplexMatrix, Spectrum, MAX_DIM};
use crate::tolerance::{self, Tolerances};

/// Factorization dim = dim_a * dim_b; basis index i maps to (i / dim_b, i % dim_b).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Split {
    pub dim_a: usize,
    pub dim_b: usize,
}

impl Split {
    pub const QUBIT_QUBIT: Split = Split { dim_a: 2, dim_b: 2 };
    pub const QUBIT_QUTRIT: Split = Split { dim_a: 2, dim_b: 3 };

    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Party {
    A,
    B,
}

/// Projection of a spin-1/2 along z, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfSpin(i8);

impl HalfSpin {
    pub const UP: HalfSpin = HalfSpin(1);
    pub const DOWN: HalfSpin = HalfSpin(-1);

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }
}

/// Two-qubit basis labels: index 0 <-> (1/2, 1/2), 1 <-> (1/2, -1/2),
/// 2 <-> (-1/2, 1/2), 3 <-> (-1/2, -1/2).
pub const INDEX_MAP: [(HalfSpin, HalfSpin); 4] = [
    (HalfSpin::UP, HalfSpin::UP),
    (HalfSpin::UP, HalfSpin::DOWN),
    (HalfSpin::DOWN, HalfSpin::UP),
    (HalfSpin::DOWN, HalfSpin::DOWN),
];

pub fn spin_labels(index: usize) -> Option<(HalfSpin, HalfSpin)> {
    INDEX_MAP.get(index).copied()
}

pub fn index_of(m1: HalfSpin, m2: HalfSpin) -> Option<usize> {
    INDEX_MAP.iter().position(|&pair| pair == (m1, m2))
}

/// Measured deviations of a candidate matrix from the density-matrix axioms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    pub hermitian_deviation: f64,
    pub trace_deviation: f64,
    /// `None` when the matrix is too far from Hermitian to diagonalize.
    pub min_eigenvalue: Option<f64>,
    pub tolerances: Tolerances,
    max_abs: f64,
}

impl ValidationReport {
    pub fn hermitian_ok(&self) -> bool {
        self.hermitian_deviation <= self.tolerances.hermitian * self.max_abs
    }

    pub fn trace_ok(&self) -> bool {
        self.trace_deviation <= self.tolerances.trace
    }

    pub fn psd_ok(&self) -> bool {
        self.min_eigenvalue.is_some_and(|v| v >= -self.tolerances.psd)
    }

    pub fn passed(&self) -> bool {
        self.hermitian_ok() && self.trace_ok() && self.psd_ok()
    }

    /// The first violated property, in the order Hermitian, trace, PSD.
    pub fn first_violation(&self) -> Option<Error> {
        if !self.hermitian_ok() {
            Some(Error::NotHermitian {
                deviation: self.hermitian_deviation,
            })
        } else if !self.trace_ok() {
            Some(Error::TraceNotOne {
                deviation: self.trace_deviation,
            })
        } else if !self.psd_ok() {
            Some(Error::NotPsd {
                min_eigenvalue: self.min_eigenvalue.unwrap_or(f64::NAN),
            })
        } else {
            None
        }
    }
}

pub fn check(m: &ComplexMatrix, tol: &Tolerances) -> Result<ValidationReport> {
    if !(2..=MAX_DIM).contains(&m.dim()) {
        return Err(Error::DimensionMismatch(format!(
            "density matrix dimension {} outside 2..={MAX_DIM}",
            m.dim()
        )));
    }
    let max_abs = m.max_abs();
    let hermitian_deviation = m.hermitian_deviation();
    let trace = m.trace();
    let trace_deviation = (trace - Complex64::new(1.0, 0.0)).norm();
    let hermitian_ok = m.is_finite() && hermitian_deviation <= tol.hermitian * max_abs;
    let min_eigenvalue = if hermitian_ok {
        Some(hermitian_spectrum(&m.hermitian_part(), tolerance::JACOBI)?.min())
    } else {
        None
    };
    Ok(ValidationReport {
        hermitian_deviation,
        trace_deviation,
        min_eigenvalue,
        tolerances: *tol,
        max_abs,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    split: Option<Split>,
}

impl DensityMatrix {
    /// Validates against the default tolerances.
    pub fn validate(m: ComplexMatrix) -> Result<Self> {
        Self::validate_with(m, &Tolerances::default())
    }

    pub fn validate_with(m: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let report = check(&m, tol)?;
        if let Some(err) = report.first_violation() {
            return Err(err);
        }
        Ok(DensityMatrix {
            mat: m.hermitian_part(),
            split: None,
        })
    }

    /// For matrices that are density matrices by construction.
    pub(crate) fn trusted(mat: ComplexMatrix, split: Option<Split>) -> Self {
        DensityMatrix {
            mat: mat.hermitian_part(),
            split,
        }
    }

    /// |psi><psi| / <psi|psi>
    pub fn pure(amplitudes: &[Complex64]) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if norm == 0.0 {
            return Err(Error::Domain("zero state vector".into()));
        }
        let m = ComplexMatrix::from_fn(amplitudes.len(), |i, j| {
            amplitudes[i] * amplitudes[j].conj() / norm
        })?;
        Self::validate(m)
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Self::validate(ComplexMatrix::identity(dim)?.scale_real(1.0 / dim as f64))
    }

    pub fn with_split(mut self, dim_a: usize, dim_b: usize) -> Result<Self> {
        let split = Split { dim_a, dim_b };
        if split.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "split {dim_a}x{dim_b} does not factor dimension {}",
                self.dim()
            )));
        }
        self.split = Some(split);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn split(&self) -> Option<Split> {
        self.split
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        hermitian_spectrum(&self.mat, tolerance::JACOBI)
    }

    fn require_split(&self) -> Result<Split> {
        self.split.ok_or(Error::NoSplit)
    }

    fn require_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch(format!(
                "expected a {dim}x{dim} state, got {}x{}",
                self.dim(),
                self.dim()
            )));
        }
        Ok(())
    }
}

/// A state embedded in a larger space by adding zero rows and columns.
#[derive(Debug, Clone)]
pub struct PaddedState {
    pub original: DensityMatrix,
    pub padded: DensityMatrix,
    /// placement[i] is the padded index holding original index i.
    pub placement: Vec<usize>,
}

impl PaddedState {
    fn embed(original: &DensityMatrix, dim: usize, placement: Vec<usize>, split: Split) -> Result<Self> {
        let mut m = ComplexMatrix::zeros(dim)?;
        for (i, &pi) in placement.iter().enumerate() {
            for (j, &pj) in placement.iter().enumerate() {
                m[(pi, pj)] = original.mat[(i, j)];
            }
        }
        Ok(PaddedState {
            original: original.clone(),
            padded: DensityMatrix::trusted(m, Some(split)),
            placement,
        })
    }

    pub fn is_qutrit_to_4(&self) -> bool {
        self.original.dim() == 3 && self.padded.dim() == 4 && self.placement == [0, 1, 2]
    }
}

/// Corner embedding of a qutrit: the original occupies the top-left 3x3 block
/// and the fourth row and column are zero. The result carries a 2x2 split.
pub fn pad_qutrit_to_4(q: &DensityMatrix) -> Result<PaddedState> {
    q.require_dim(3)?;
    PaddedState::embed(q, 4, vec![0, 1, 2], Split::QUBIT_QUBIT)
}

/// Center embedding of a 4x4 state into 6x6: rows/columns 1..=4 (zero-based)
/// hold the original, the first and last are zero. Carries a 2x3 split.
pub fn pad_4_to_6(m: &DensityMatrix) -> Result<PaddedState> {
    m.require_dim(4)?;
    PaddedState::embed(m, 6, vec![1, 2, 3, 4], Split::QUBIT_QUTRIT)
}

/// Reduced state of one factor of a bipartite state.
pub fn partial_trace(m: &DensityMatrix, keep: Party) -> Result<DensityMatrix> {
    let split = m.require_split()?;
    let (da, db) = (split.dim_a, split.dim_b);
    let rho = &m.mat;
    let out = match keep {
        Party::A => ComplexMatrix::from_fn(da, |a, a2| {
            (0..db).map(|b| rho[(a * db + b, a2 * db + b)]).sum()
        })?,
        Party::B => ComplexMatrix::from_fn(db, |b, b2| {
            (0..da).map(|a| rho[(a * db + b, a * db + b2)]).sum()
        })?,
    };
    Ok(DensityMatrix::trusted(out, None))
}

/// Transposes the indices of one factor: for side B,
/// out[(a, b), (a', b')] = m[(a, b'), (a', b)].
pub fn partial_transpose(m: &DensityMatrix, side: Party) -> Result<ComplexMatrix> {
    let split = m.require_split()?;
    partial_transpose_matrix(&m.mat, split, side)
}

pub(crate) fn partial_transpose_matrix(
    rho: &ComplexMatrix,
    split: Split,
    side: Party,
) -> Result<ComplexMatrix> {
    let db = split.dim_b;
    ComplexMatrix::from_fn(split.dim(), |i, j| {
        let (a, b) = (i / db, i % db);
        let (a2, b2) = (j / db, j % db);
        match side {
            Party::B => rho[(a * db + b2, a2 * db + b)],
            Party::A => rho[(a2 * db + b, a * db + b2)],
        }
    })
}

/// The two 2x2 "artificial qubit" reductions of a corner-padded qutrit:
///
/// ```text
/// r1 = [[p11 + p22, p13], [p31, p33]]
/// r2 = [[p11 + p33, p12], [p21, p22]]
/// ```
pub fn artificial_qubit_reductions(p: &PaddedState) -> Result<(DensityMatrix, DensityMatrix)> {
    if !p.is_qutrit_to_4() {
        return Err(Error::DimensionMismatch(
            "artificial qubit reductions need a 3 -> 4 corner padding".into(),
        ));
    }
    let r = &p.original.mat;
    let r1 = ComplexMatrix::from_rows(vec![
        vec![r[(0, 0)] + r[(1, 1)], r[(0, 2)]],
        vec![r[(2, 0)], r[(2, 2)]],
    ])?;
    let r2 = ComplexMatrix::from_rows(vec![
        vec![r[(0, 0)] + r[(2, 2)], r[(0, 1)]],
        vec![r[(1, 0)], r[(1, 1)]],
    ])?;
    Ok((DensityMatrix::trusted(r1, None), DensityMatrix::trusted(r2, None)))
}

/// Ginibre-ensemble state G G^dagger / tr(G G^dagger), with G drawn from a
/// ChaCha8 stream seeded by `seed`.
pub fn random_density(dim: usize, seed: u64) -> Result<DensityMatrix> {
    if !(2..=MAX_DIM).contains(&dim) {
        return Err(Error::DimensionMismatch(format!(
            "random state dimension {dim} outside 2..={MAX_DIM}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = ComplexMatrix::zeros(dim)?;
    for i in 0..dim {
        for j in 0..dim {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            g[(i, j)] = Complex64::new(re, im);
        }
    }
    let gg = g.matmul(&g.adjoint())?;
    let tr = gg.trace().re;
    Ok(DensityMatrix::trusted(gg.scale_real(1.0 / tr), None))
}

/// Like [`random_density`] but with real Gaussian entries, giving a real symmetric state.
pub fn random_real_density(dim: usize, seed: u64) -> Result<DensityMatrix> {
    if !(2..=MAX_DIM).contains(&dim) {
        return Err(Error::DimensionMismatch(format!(
            "random state dimension {dim} outside 2..={MAX_DIM}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = ComplexMatrix::zeros(dim)?;
    for i in 0..dim {
        for j in 0..dim {
            let re: f64 = StandardNormal.sample(&mut rng);
            g[(i, j)] = Complex64::new(re, 0.0);
        }
    }
    let gg = g.matmul(&g.transpose())?;
    let tr = gg.trace().re;
    Ok(DensityMatrix::trusted(gg.scale_real(1.0 / tr), None))
}
