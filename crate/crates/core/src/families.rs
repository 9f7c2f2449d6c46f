//! The two parametric qutrit families and parameter sweeps over them.
//!
//! * `Diagonal`: diag(1 + b, 1 + b, 1 - 2b) / 3 with b in [-1, 1/2].
//! * `Coherent`: [[p, 0, 0], [0, 1 - 2p, b], [0, b, p]], PSD exactly when
//!   0 <= p <= 1/2 and b^2 <= p (1 - 2p).
//!
//! Figure presets use a narrower plotting window for `Coherent`:
//! 0 < p < 1/2 and 2p^2 - p < b < 0.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::density::DensityMatrix;
use crate::entanglement::{negativity, qutrit_concurrence};
use crate::entropy::{subadditivity_report, Route};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalParam {
    b: f64,
}

impl DiagonalParam {
    pub fn new(b: f64) -> Result<Self> {
        if !(-1.0..=0.5).contains(&b) {
            return Err(Error::Domain(format!("b = {b} outside [-1, 1/2]")));
        }
        Ok(DiagonalParam { b })
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentParam {
    p: f64,
    b: f64,
}

impl CoherentParam {
    pub fn new(p: f64, b: f64) -> Result<Self> {
        let slack = tolerance::DOMAIN;
        if !(p.is_finite() && b.is_finite()) {
            return Err(Error::Domain(format!("non-finite parameters p = {p}, b = {b}")));
        }
        if p < -slack {
            return Err(Error::Domain(format!("p = {p} violates p >= 0")));
        }
        if 1.0 - 2.0 * p < -slack {
            return Err(Error::Domain(format!("p = {p} violates 1 - 2p >= 0")));
        }
        let bound = p * (1.0 - 2.0 * p);
        if b * b > bound + slack {
            return Err(Error::Domain(format!(
                "b^2 = {} exceeds p(1 - 2p) = {bound}",
                b * b
            )));
        }
        Ok(CoherentParam { p, b })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// 0 < p < 1/2 and 2p^2 - p < b < 0
    pub fn in_plot_window(&self) -> bool {
        let (p, b) = (self.p, self.b);
        p > 0.0 && p < 0.5 && 2.0 * p * p - p < b && b < 0.0
    }
}

pub fn build_diagonal(param: DiagonalParam) -> Result<DensityMatrix> {
    let b = param.b;
    let m = ComplexMatrix::from_diag(&[(1.0 + b) / 3.0, (1.0 + b) / 3.0, (1.0 - 2.0 * b) / 3.0])?;
    DensityMatrix::validate(m)
}

pub fn build_coherent(param: CoherentParam) -> Result<DensityMatrix> {
    let (p, b) = (param.p, param.b);
    let m = ComplexMatrix::from_real_rows(&[&[p, 0.0, 0.0], &[0.0, 1.0 - 2.0 * p, b], &[0.0, b, p]])?;
    DensityMatrix::validate(m)
}

/// |1 - 2p| + |p| + |p/2 - sqrt(4b^2 + p^2)/2| + |p/2 + sqrt(4b^2 + p^2)/2|,
/// evaluated term by term.
pub fn closed_form_negativity_coherent(param: CoherentParam) -> f64 {
    let (p, b) = (param.p, param.b);
    let root = (4.0 * b * b + p * p).sqrt();
    (1.0 - 2.0 * p).abs() + p.abs() + (p / 2.0 - root / 2.0).abs() + (p / 2.0 + root / 2.0).abs()
}

/// max{0, sqrt(p + b^2 - 2p^2 - 2b s) - sqrt(p + b^2 - 2p^2 + 2b s)} with
/// s = sqrt(p - 2p^2), evaluated literally.
///
/// The two radicands are (s - b)^2 and (s + b)^2, so this equals 2|b| for
/// b <= 0 and collapses to 0 for b > 0 (where the numeric concurrence is
/// still 2|b|).
pub fn closed_form_concurrence_coherent(param: CoherentParam) -> Result<f64> {
    let (p, b) = (param.p, param.b);
    let s2 = p - 2.0 * p * p;
    check_radicand(s2)?;
    let s = s2.max(0.0).sqrt();
    let minus = p + b * b - 2.0 * p * p - 2.0 * b * s;
    let plus = p + b * b - 2.0 * p * p + 2.0 * b * s;
    check_radicand(minus)?;
    check_radicand(plus)?;
    Ok((minus.max(0.0).sqrt() - plus.max(0.0).sqrt()).max(0.0))
}

fn check_radicand(value: f64) -> Result<()> {
    if value < -tolerance::DOMAIN {
        return Err(Error::NegativeRadicand { value });
    }
    Ok(())
}

/// Evenly spaced axis with both endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(min: f64, max: f64, count: usize) -> Self {
        Grid { min, max, count }
    }

    pub fn points(&self) -> Vec<f64> {
        match self.count {
            0 => Vec::new(),
            1 => vec![self.min],
            n => {
                let step = (self.max - self.min) / (n - 1) as f64;
                (0..n)
                    .map(|i| if i == n - 1 { self.max } else { self.min + step * i as f64 })
                    .collect()
            }
        }
    }
}

impl FromStr for Grid {
    type Err = String;

    /// `min:max:count`
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid '{s}' is not min:max:count"));
        }
        let min: f64 = parts[0]
            .trim()
            .parse()
            .map_err(|_| format!("bad grid minimum '{}'", parts[0]))?;
        let max: f64 = parts[1]
            .trim()
            .parse()
            .map_err(|_| format!("bad grid maximum '{}'", parts[1]))?;
        let count: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| format!("bad grid count '{}'", parts[2]))?;
        if !(min.is_finite() && max.is_finite()) {
            return Err(format!("grid '{s}' has non-finite bounds"));
        }
        Ok(Grid { min, max, count })
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Diagonal,
    Coherent,
}

/// What to sweep. Coherent rows are ordered p-major, then b.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepSpec {
    Diagonal { b: Vec<f64> },
    Coherent { p: Vec<f64>, b: Vec<f64>, plot_window: bool },
}

impl SweepSpec {
    pub fn family(&self) -> Family {
        match self {
            SweepSpec::Diagonal { .. } => Family::Diagonal,
            SweepSpec::Coherent { .. } => Family::Coherent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RowValues {
    pub iq: f64,
    pub negativity_sum: f64,
    pub concurrence: f64,
    /// Only for Coherent.
    pub closed_form_negativity: Option<f64>,
    /// Only for Coherent with b <= 0, where the literal closed form applies.
    pub closed_form_concurrence: Option<f64>,
}

impl RowValues {
    pub fn negativity_excess(&self) -> f64 {
        (self.negativity_sum - 1.0).max(0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub b: f64,
    pub p: Option<f64>,
    /// `None` when the point lies outside the family's domain.
    pub values: Option<RowValues>,
}

impl SweepRow {
    pub fn skipped(&self) -> bool {
        self.values.is_none()
    }

    /// The density matrix this row was computed from.
    pub fn state(&self) -> Result<DensityMatrix> {
        match self.p {
            None => build_diagonal(DiagonalParam::new(self.b)?),
            Some(p) => build_coherent(CoherentParam::new(p, self.b)?),
        }
    }
}

/// Numeric diagnostics of one qutrit state.
pub fn diagnose(rho: &DensityMatrix) -> Result<(f64, f64, f64)> {
    let iq = subadditivity_report(rho, Route::PaddedQutrit)?.iq;
    let neg = negativity(rho)?;
    let conc = qutrit_concurrence(rho)?;
    Ok((iq, neg.sum, conc.value))
}

fn diagonal_row(b: f64) -> Result<SweepRow> {
    let values = match DiagonalParam::new(b) {
        Ok(param) => {
            let (iq, negativity_sum, concurrence) = diagnose(&build_diagonal(param)?)?;
            Some(RowValues {
                iq,
                negativity_sum,
                concurrence,
                closed_form_negativity: None,
                closed_form_concurrence: None,
            })
        }
        Err(_) => None,
    };
    Ok(SweepRow { b, p: None, values })
}

fn coherent_row(p: f64, b: f64, plot_window: bool) -> Result<SweepRow> {
    let param = match CoherentParam::new(p, b) {
        Ok(param) if !plot_window || param.in_plot_window() => param,
        _ => return Ok(SweepRow { b, p: Some(p), values: None }),
    };
    let (iq, negativity_sum, concurrence) = diagnose(&build_coherent(param)?)?;
    let closed_form_concurrence = if b <= 0.0 {
        Some(closed_form_concurrence_coherent(param)?)
    } else {
        None
    };
    Ok(SweepRow {
        b,
        p: Some(p),
        values: Some(RowValues {
            iq,
            negativity_sum,
            concurrence,
            closed_form_negativity: Some(closed_form_negativity_coherent(param)),
            closed_form_concurrence,
        }),
    })
}

/// Evaluates every grid point; out-of-domain points come back as skipped rows.
/// Rows are computed in parallel and returned in grid order.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    match spec {
        SweepSpec::Diagonal { b } => {
            if b.is_empty() {
                return Err(Error::EmptyGrid);
            }
            b.par_iter().map(|&b| diagonal_row(b)).collect()
        }
        SweepSpec::Coherent { p, b, plot_window } => {
            if p.is_empty() || b.is_empty() {
                return Err(Error::EmptyGrid);
            }
            let points: Vec<(f64, f64)> = p
                .iter()
                .flat_map(|&p| b.iter().map(move |&b| (p, b)))
                .collect();
            points
                .par_iter()
                .map(|&(p, b)| coherent_row(p, b, *plot_window))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_builds() {
        let m = build_diagonal(DiagonalParam::new(0.0).unwrap()).unwrap();
        let third = ComplexMatrix::identity(3).unwrap().scale_real(1.0 / 3.0);
        assert!(m.matrix().max_abs_diff(&third).unwrap() < 1e-16);
        let m = build_diagonal(DiagonalParam::new(0.5).unwrap()).unwrap();
        assert!(m.matrix().max_abs_diff(&ComplexMatrix::from_diag(&[0.5, 0.5, 0.0]).unwrap()).unwrap() < 1e-16);
        let m = build_diagonal(DiagonalParam::new(-1.0).unwrap()).unwrap();
        assert!(m.matrix().max_abs_diff(&ComplexMatrix::from_diag(&[0.0, 0.0, 1.0]).unwrap()).unwrap() < 1e-16);
        assert!(DiagonalParam::new(0.6).is_err());
        assert!(DiagonalParam::new(-1.01).is_err());
        assert!(DiagonalParam::new(f64::NAN).is_err());
    }

    #[test]
    fn coherent_domain() {
        let m = build_coherent(CoherentParam::new(1.0 / 3.0, 0.0).unwrap()).unwrap();
        let third = ComplexMatrix::identity(3).unwrap().scale_real(1.0 / 3.0);
        assert!(m.matrix().max_abs_diff(&third).unwrap() < 1e-15);
        assert!(CoherentParam::new(0.4, -0.2).is_ok());
        match CoherentParam::new(0.4, -0.3) {
            Err(Error::Domain(msg)) => assert!(msg.contains("p(1 - 2p)")),
            other => panic!("expected Domain error, got {other:?}"),
        }
        assert!(CoherentParam::new(-0.1, 0.0).is_err());
        assert!(CoherentParam::new(0.6, 0.0).is_err());
    }

    #[test]
    fn plot_window_is_inside_psd_domain() {
        let p = CoherentParam::new(0.25, -0.1).unwrap();
        assert!(p.in_plot_window());
        assert!(!CoherentParam::new(0.25, 0.0).unwrap().in_plot_window());
        // PSD allows |b| up to sqrt(p - 2p^2) ~ 0.3536, the box stops at p - 2p^2 = 0.125.
        assert!(!CoherentParam::new(0.25, -0.2).unwrap().in_plot_window());
    }

    #[test]
    fn closed_form_negativity_examples() {
        let n = closed_form_negativity_coherent(CoherentParam::new(1.0 / 3.0, 0.0).unwrap());
        assert!((n - 1.0).abs() < 1e-15);
        let n = closed_form_negativity_coherent(CoherentParam::new(0.4, -0.2).unwrap());
        assert!((n - 1.165685).abs() < 1e-6);
        let n = closed_form_negativity_coherent(CoherentParam::new(0.25, -0.1).unwrap());
        assert!((n - (0.75 + 0.1025f64.sqrt())).abs() < 1e-15);
        assert!((n - 1.070156).abs() < 1e-6);
    }

    #[test]
    fn closed_form_concurrence_examples() {
        let c = closed_form_concurrence_coherent(CoherentParam::new(1.0 / 3.0, 0.0).unwrap()).unwrap();
        assert!(c.abs() < 1e-12);
        let c = closed_form_concurrence_coherent(CoherentParam::new(0.4, -0.2).unwrap()).unwrap();
        assert!((c - 0.4).abs() < 1e-12);
        let c = closed_form_concurrence_coherent(CoherentParam::new(0.25, -0.1).unwrap()).unwrap();
        assert!((c - 0.2).abs() < 1e-12);
        // Literal form vanishes for positive b.
        let c = closed_form_concurrence_coherent(CoherentParam::new(0.4, 0.2).unwrap()).unwrap();
        assert_eq!(c, 0.0);
    }

    #[test]
    fn grid_points_include_endpoints() {
        let g: Grid = "-1:0.5:4".parse().unwrap();
        assert_eq!(g.points(), vec![-1.0, -0.5, 0.0, 0.5]);
        assert_eq!(Grid::new(0.2, 0.9, 1).points(), vec![0.2]);
        assert!(Grid::new(0.0, 1.0, 0).points().is_empty());
        assert!("1:2".parse::<Grid>().is_err());
        assert!("a:2:3".parse::<Grid>().is_err());
        assert!("0:1:-3".parse::<Grid>().is_err());
    }

    #[test]
    fn sweep_diagonal_examples() {
        let rows = sweep(&SweepSpec::Diagonal { b: vec![-1.0, 0.0, 0.5, 0.7] }).unwrap();
        let iq: Vec<f64> = rows.iter().take(3).map(|r| r.values.unwrap().iq).collect();
        assert!(iq[0].abs() < 1e-12);
        assert!((iq[1] - 0.174416).abs() < 1e-6);
        assert!(iq[2].abs() < 1e-12);
        assert!(rows[3].skipped());
        assert_eq!(sweep(&SweepSpec::Diagonal { b: vec![] }), Err(Error::EmptyGrid));
    }

    #[test]
    fn sweep_coherent_examples() {
        let p = Grid::new(0.15, 0.35, 21).points();
        let rows = sweep(&SweepSpec::Coherent { p, b: vec![-0.1], plot_window: false }).unwrap();
        let neg: Vec<f64> = rows.iter().map(|r| r.values.unwrap().negativity_sum).collect();
        assert!(neg.windows(2).all(|w| w[1] < w[0]));

        let rows = sweep(&SweepSpec::Coherent { p: vec![0.3], b: vec![0.0], plot_window: false }).unwrap();
        let v = rows[0].values.unwrap();
        assert!(v.concurrence.abs() < 1e-12);
        assert!((v.negativity_sum - 1.0).abs() < 1e-12);

        let rows = sweep(&SweepSpec::Coherent { p: vec![0.3], b: vec![0.0], plot_window: true }).unwrap();
        assert!(rows[0].skipped());
    }

    #[test]
    fn sweep_order_is_p_major() {
        let rows = sweep(&SweepSpec::Coherent {
            p: vec![0.2, 0.3],
            b: vec![-0.1, 0.0],
            plot_window: false,
        })
        .unwrap();
        let keys: Vec<(f64, f64)> = rows.iter().map(|r| (r.p.unwrap(), r.b)).collect();
        assert_eq!(keys, vec![(0.2, -0.1), (0.2, 0.0), (0.3, -0.1), (0.3, 0.0)]);
    }
}
