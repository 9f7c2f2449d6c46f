//! Von Neumann entropies and the subadditivity slack I_q = S1 + S2 - S12.

use crate::density::{
    artificial_qubit_reductions, pad_4_to_6, pad_qutrit_to_4, partial_trace, DensityMatrix, Party,
};
use crate::error::{Error, Result};
use crate::families::{build_diagonal, DiagonalParam};
use crate::tolerance;

/// -sum(l ln l) over eigenvalues clamped to [0, 1]; values under 1e-15 add nothing.
pub fn entropy_from_spectrum(values: &[f64]) -> f64 {
    values
        .iter()
        .map(|&v| v.clamp(0.0, 1.0))
        .filter(|&v| v >= tolerance::ENTROPY_FLOOR)
        .map(|v| -v * v.ln())
        .sum()
}

/// Entropy in nats, computed from the spectrum.
pub fn von_neumann_entropy(m: &DensityMatrix) -> Result<f64> {
    Ok(entropy_from_spectrum(&m.spectrum()?.values))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Genuine bipartite state, reductions by partial trace.
    TwoQubit,
    /// Qutrit padded to 4x4, reductions are the artificial qubit states.
    PaddedQutrit,
    /// 4x4 state center-padded to 6x6 and split 2x3.
    Padded6x6,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::TwoQubit => "two-qubit",
            Route::PaddedQutrit => "padded-qutrit",
            Route::Padded6x6 => "padded-6x6",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport {
    pub s1: f64,
    pub s2: f64,
    pub s12: f64,
    pub iq: f64,
    pub route: Route,
}

impl EntropyReport {
    fn new(s1: f64, s2: f64, s12: f64, route: Route) -> Self {
        EntropyReport {
            s1,
            s2,
            s12,
            iq: s1 + s2 - s12,
            route,
        }
    }
}

/// Entropies along the requested route.
///
/// `TwoQubit` expects a state with a split; `PaddedQutrit` a 3x3 state;
/// `Padded6x6` a 4x4 state.
pub fn subadditivity_report(m: &DensityMatrix, route: Route) -> Result<EntropyReport> {
    match route {
        Route::TwoQubit => {
            let r1 = partial_trace(m, Party::A)?;
            let r2 = partial_trace(m, Party::B)?;
            Ok(EntropyReport::new(
                von_neumann_entropy(&r1)?,
                von_neumann_entropy(&r2)?,
                von_neumann_entropy(m)?,
                route,
            ))
        }
        Route::PaddedQutrit => {
            let padded = pad_qutrit_to_4(m)?;
            let (r1, r2) = artificial_qubit_reductions(&padded)?;
            Ok(EntropyReport::new(
                von_neumann_entropy(&r1)?,
                von_neumann_entropy(&r2)?,
                von_neumann_entropy(&padded.padded)?,
                route,
            ))
        }
        Route::Padded6x6 => {
            let padded = pad_4_to_6(m)?;
            let r1 = partial_trace(&padded.padded, Party::A)?;
            let r2 = partial_trace(&padded.padded, Party::B)?;
            Ok(EntropyReport::new(
                von_neumann_entropy(&r1)?,
                von_neumann_entropy(&r2)?,
                von_neumann_entropy(&padded.padded)?,
                route,
            ))
        }
    }
}

/// (b, I_q) for the diagonal family diag(1+b, 1+b, 1-2b)/3.
pub fn iq_curve_diagonal(grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    grid.iter()
        .map(|&b| {
            let rho = build_diagonal(DiagonalParam::new(b)?)?;
            Ok((b, subadditivity_report(&rho, Route::PaddedQutrit)?.iq))
        })
        .collect()
}

/// Rejects routes that do not apply to a state of this dimension.
pub fn route_for_dim(route: Route, dim: usize) -> Result<()> {
    let ok = match route {
        Route::PaddedQutrit => dim == 3,
        Route::Padded6x6 | Route::TwoQubit => dim == 4,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "route {} does not apply to a {dim}x{dim} state",
            route.name()
        )))
    }
}
