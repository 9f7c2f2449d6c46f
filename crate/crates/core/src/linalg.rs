//! Dense complex linear algebra for the small matrices (dimension 1 to 8)
//! that appear in qutrit and two-qubit problems.
//!
//! Everything here is plain value arithmetic. The only iterative piece is
//! the cyclic complex Jacobi eigensolver used for Hermitian spectra.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance;

pub type ComplexScalar = Complex64;

/// Largest supported matrix dimension.
pub const MAX_DIM: usize = 8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square, row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(ComplexMatrix {
            dim,
            data: vec![ZERO; dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        Ok(m)
    }

    pub fn from_diag(diag: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        Ok(m)
    }

    /// Builds a matrix from rows; every row must have as many entries as there are rows.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        check_dim(dim)?;
        let mut data = Vec::with_capacity(dim * dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    dim
                )));
            }
            data.extend(row);
        }
        Ok(ComplexMatrix { dim, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entries in row-major order.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn matmul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.same_dim(rhs, "matmul")?;
        let n = self.dim;
        let mut out = ComplexMatrix {
            dim: n,
            data: vec![ZERO; n * n],
        };
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.same_dim(rhs, "add")?;
        Ok(self.zip_map(rhs, |a, b| a + b))
    }

    pub fn sub(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.same_dim(rhs, "sub")?;
        Ok(self.zip_map(rhs, |a, b| a - b))
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        self.map(|z| z * factor)
    }

    pub fn scale_real(&self, factor: f64) -> ComplexMatrix {
        self.map(|z| z * factor)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> ComplexMatrix {
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(j, i)];
            }
        }
        out
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> ComplexMatrix {
        self.map(|z| z.conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Kronecker product; the result indexes as (i_a * dim_b + i_b, j_a * dim_b + j_b).
    pub fn kron(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        let (na, nb) = (self.dim, rhs.dim);
        let n = na * nb;
        if n > MAX_DIM {
            return Err(Error::DimensionMismatch(format!(
                "kron of {na}x{na} and {nb}x{nb} exceeds dimension {MAX_DIM}"
            )));
        }
        ComplexMatrix::from_fn(n, |i, j| {
            self[(i / nb, j / nb)] * rhs[(i % nb, j % nb)]
        })
    }

    /// Similarity transform u * self * u^dagger.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<ComplexMatrix> {
        u.matmul(self)?.matmul(&u.adjoint())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, rhs: &ComplexMatrix) -> Result<f64> {
        self.same_dim(rhs, "max_abs_diff")?;
        Ok(self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// max |m_ij - conj(m_ji)|
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// (m + m^dagger) / 2
    pub fn hermitian_part(&self) -> ComplexMatrix {
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            out[(i, i)] = Complex64::new(self[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let z = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                out[(i, j)] = z;
                out[(j, i)] = z.conj();
            }
        }
        out
    }

    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> ComplexMatrix {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    fn zip_map(
        &self,
        rhs: &ComplexMatrix,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> ComplexMatrix {
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn same_dim(&self, rhs: &ComplexMatrix, op: &str) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(format!(
                "{op}: {}x{} vs {}x{}",
                self.dim, self.dim, rhs.dim, rhs.dim
            )));
        }
        Ok(())
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::DimensionMismatch(format!(
            "dimension {dim} outside 1..={MAX_DIM}"
        )));
    }
    Ok(())
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>10.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Real eigenvalues in non-increasing order, with the off-diagonal norm
/// left behind by the eigensolver.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub residual: f64,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn abs_sum(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum()
    }
}

/// Eigenvalues (descending) and the unitary whose columns are the matching eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub spectrum: Spectrum,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// Rebuilds V f(Lambda) V^dagger.
    pub fn reconstruct(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.vectors.dim();
        let weights: Vec<f64> = self.spectrum.values.iter().map(|&v| f(v)).collect();
        let mut out = self.vectors.map(|_| ZERO);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ZERO;
                for (k, &w) in weights.iter().enumerate() {
                    if w != 0.0 {
                        acc += self.vectors[(i, k)] * self.vectors[(j, k)].conj() * w;
                    }
                }
                out[(i, j)] = acc;
            }
        }
        out.hermitian_part()
    }
}

fn check_hermitian(m: &ComplexMatrix) -> Result<()> {
    let deviation = m.hermitian_deviation();
    if deviation > tolerance::HERMITIAN_REL * m.max_abs() || !m.is_finite() {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Each pivot (p, q) is handled by first rotating the phase of a_pq away
/// with diag(1, e^{-i phi}) and then applying the real symmetric Jacobi
/// rotation. Sweeps stop once the off-diagonal Frobenius norm drops below
/// `tol * max(1, ||m||_F)`.
pub fn hermitian_eigen(m: &ComplexMatrix, tol: f64) -> Result<HermitianEigen> {
    check_hermitian(m)?;
    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n)?;

    let scale = a.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let threshold = tol * scale.max(1.0);

    let mut residual = off_diagonal_norm(&a);
    let mut sweeps = 0;
    while residual > threshold {
        if sweeps == tolerance::JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, residual });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        residual = off_diagonal_norm(&a);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])])?;
    Ok(HermitianEigen {
        spectrum: Spectrum { values, residual },
        vectors,
    })
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Skip rotations that cannot change the diagonal in floating point.
    if r < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    let phase = apq / r; // e^{i phi}
    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // J = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;

        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}

/// Eigenvalues of a Hermitian matrix in descending order.
pub fn hermitian_spectrum(m: &ComplexMatrix, tol: f64) -> Result<Spectrum> {
    hermitian_eigen(m, tol).map(|e| e.spectrum)
}

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-1e-10, 0) are clamped to zero; anything more negative is rejected.
pub fn hermitian_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(m, tolerance::JACOBI)?;
    let min = eig.spectrum.min();
    if min < -tolerance::PSD {
        return Err(Error::NotPsd { min_eigenvalue: min });
    }
    Ok(eig.reconstruct(|v| v.max(0.0).sqrt()))
}

/// sigma_y
pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(vec![
        vec![ZERO, Complex64::new(0.0, -1.0)],
        vec![Complex64::new(0.0, 1.0), ZERO],
    ])
    .expect("2x2")
}
