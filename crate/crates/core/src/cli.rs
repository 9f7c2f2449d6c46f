//! Command-line front end.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::density::{check, random_density, DensityMatrix};
use crate::entanglement::{closed_form_lambda_real, entanglement_report, is_product_state};
use crate::entropy::{route_for_dim, subadditivity_report, Route};
use crate::error::Error;
use crate::families::{sweep, Grid, SweepSpec};
use crate::io::{format_sig12, parse_matrix, write_matrix, write_sweep_csv, ParseError};
use crate::linalg::ComplexMatrix;
use crate::spin_basis::{e_from_g, symmetric_truncation, to_g_basis};
use crate::tolerance::{self, Tolerances};

#[derive(Debug, Parser)]
#[command(name = "qutrit", version, about = "Entropy and entanglement diagnostics for qutrit and two-qubit states")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Smallest eigenvalue accepted as non-negative is -TOL_PSD
    #[arg(long, global = true, default_value_t = tolerance::PSD)]
    pub tol_psd: f64,

    /// Allowed |trace - 1|
    #[arg(long, global = true, default_value_t = tolerance::TRACE)]
    pub tol_trace: f64,
}

impl RunConfig {
    fn tolerances(&self) -> Tolerances {
        Tolerances {
            psd: self.tol_psd,
            trace: self.tol_trace,
            ..Tolerances::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a matrix file against the density-matrix properties
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Entropy and entanglement report for a 3x3 or 4x4 state
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        /// Entropy route (4x4 inputs: two-qubit or padded-6x6)
        #[arg(long, value_enum)]
        route: Option<RouteArg>,
        /// Also write a one-row CSV
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parameter sweep over one of the qutrit families
    Sweep {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// min:max:count, first for the leading axis (b for eq16, p for eq22), then b for eq22
        #[arg(long, allow_hyphen_values = true)]
        grid: Vec<Grid>,
        /// Explicit b values for eq22
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b_values: Option<Vec<f64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Curve data for the three figure presets
    Figure {
        #[arg(value_enum)]
        preset: Preset,
        /// b values for fig2/fig3
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b_values: Option<Vec<f64>>,
        /// p axis for fig2/fig3 (default 0:0.5:201)
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<Grid>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a 4x4 state between the product and total-spin bases
    Basis {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = BasisArg::G)]
        to: BasisArg,
        /// Zero the singlet row and column (g basis only)
        #[arg(long)]
        truncate: bool,
        /// Rescale the truncated block to unit trace
        #[arg(long, requires = "truncate")]
        renormalize: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random density matrices
    Random {
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory; files are named random_0000.txt, ...
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    TwoQubit,
    PaddedQutrit,
    #[value(name = "padded-6x6")]
    Padded6x6,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Route {
        match r {
            RouteArg::TwoQubit => Route::TwoQubit,
            RouteArg::PaddedQutrit => Route::PaddedQutrit,
            RouteArg::Padded6x6 => Route::Padded6x6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "eq16")]
    Diagonal,
    #[value(name = "eq22")]
    Coherent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Fig1,
    Fig2,
    Fig3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    G,
    E,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] Error),
}

impl CliError {
    /// 1 for I/O, parse and usage problems, 2 for invalid states, 3 for domain errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(e) if e.is_validation() => 2,
            CliError::Compute(e) if e.is_domain() => 3,
            _ => 1,
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;

fn read_matrix(path: &Path) -> Result<ComplexMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_matrix(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(out: &mut dyn Write, path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, contents),
        None => out.write_all(contents.as_bytes()).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

fn join(values: &[f64]) -> String {
    values.iter().map(|&v| format_sig12(v)).collect::<Vec<_>>().join(",")
}

/// Runs one command, writing reports to `out`. Returns the exit status for
/// outcomes that are not errors (validate FAIL is exit 2).
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let tol = config.tolerances();
    match &config.command {
        Command::Validate { input } => cmd_validate(input, &tol, out),
        Command::Analyze { input, route, out: csv } => {
            cmd_analyze(input, route.map(Route::from), csv.as_deref(), &tol, out)
        }
        Command::Sweep {
            family,
            grid,
            b_values,
            out: path,
        } => cmd_sweep(*family, grid, b_values.as_deref(), path.as_deref(), out),
        Command::Figure {
            preset,
            b_values,
            grid,
            out: path,
        } => cmd_figure(*preset, b_values.as_deref(), *grid, path.as_deref(), out),
        Command::Basis {
            input,
            to,
            truncate,
            renormalize,
            out: path,
        } => cmd_basis(input, *to, *truncate, *renormalize, path.as_deref(), &tol, out),
        Command::Random {
            dim,
            count,
            seed,
            out: dir,
        } => cmd_random(*dim, *count, *seed, dir.as_deref(), out),
    }
}

fn cmd_validate(input: &Path, tol: &Tolerances, out: &mut dyn Write) -> Result<i32, CliError> {
    let m = read_matrix(input)?;
    let report = check(&m, tol)?;
    let mut text = String::new();
    let verdict = |ok: bool| if ok { "ok" } else { "FAIL" };
    let _ = writeln!(text, "{}", if report.passed() { "PASS" } else { "FAIL" });
    let _ = writeln!(text, "dim={}", m.dim());
    let _ = writeln!(
        text,
        "hermitian_deviation={:e} {}",
        report.hermitian_deviation,
        verdict(report.hermitian_ok())
    );
    let _ = writeln!(
        text,
        "trace_deviation={:e} {}",
        report.trace_deviation,
        verdict(report.trace_ok())
    );
    match report.min_eigenvalue {
        Some(v) => {
            let _ = writeln!(text, "min_eigenvalue={:e} {}", v, verdict(report.psd_ok()));
        }
        None => {
            let _ = writeln!(text, "min_eigenvalue=unavailable FAIL");
        }
    }
    emit(out, None, &text)?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_INVALID })
}

/// Key/value lines and a CSV row for one analyzed state.
pub struct Analysis {
    pub lines: String,
    pub csv: String,
}

pub fn analyze(m: &DensityMatrix, route: Option<Route>) -> Result<Analysis, CliError> {
    let route = match (m.dim(), route) {
        (3, None) => Route::PaddedQutrit,
        (4, None) => Route::TwoQubit,
        (_, Some(r)) => r,
        (d, None) => {
            return Err(CliError::Usage(format!(
                "analyze supports 3x3 and 4x4 states, got {d}x{d}"
            )))
        }
    };
    route_for_dim(route, m.dim())?;
    let state = if route == Route::TwoQubit {
        m.clone().with_split(2, 2)?
    } else {
        m.clone()
    };
    let ent = subadditivity_report(&state, route)?;
    let rep = entanglement_report(m)?;

    let mut lines = String::new();
    let _ = writeln!(lines, "dim={}", m.dim());
    let _ = writeln!(lines, "route={}", route.name());
    let _ = writeln!(lines, "s1={}", format_sig12(ent.s1));
    let _ = writeln!(lines, "s2={}", format_sig12(ent.s2));
    let _ = writeln!(lines, "s12={}", format_sig12(ent.s12));
    let _ = writeln!(lines, "iq={}", format_sig12(ent.iq));
    let _ = writeln!(lines, "ppt_spectrum={}", join(&rep.ppt_spectrum.values));
    let _ = writeln!(lines, "negativity_sum={}", format_sig12(rep.negativity_sum));
    let _ = writeln!(lines, "negativity_excess={}", format_sig12(rep.negativity_excess()));
    let _ = writeln!(lines, "entangled_by_ppt={}", rep.entangled_by_ppt);
    let _ = writeln!(lines, "concurrence={}", format_sig12(rep.concurrence));
    let _ = writeln!(lines, "lambda_c={}", join(&rep.lambda_c));
    if m.dim() == 3 {
        if let Ok(l) = closed_form_lambda_real(m) {
            let _ = writeln!(lines, "lambda_c_closed_form={}", join(&l));
        }
    } else {
        let split = m.clone().with_split(2, 2)?;
        let product = is_product_state(&split, tolerance::TRACE)?;
        let _ = writeln!(lines, "correlated={}", !product);
    }

    let csv = format!(
        "route,s1,s2,s12,iq,negativity_sum,negativity_excess,entangled,concurrence\n{},{},{},{},{},{},{},{},{}\n",
        route.name(),
        format_sig12(ent.s1),
        format_sig12(ent.s2),
        format_sig12(ent.s12),
        format_sig12(ent.iq),
        format_sig12(rep.negativity_sum),
        format_sig12(rep.negativity_excess()),
        u8::from(rep.entangled_by_ppt),
        format_sig12(rep.concurrence),
    );
    Ok(Analysis { lines, csv })
}

fn cmd_analyze(
    input: &Path,
    route: Option<Route>,
    csv: Option<&Path>,
    tol: &Tolerances,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let m = DensityMatrix::validate_with(read_matrix(input)?, tol)?;
    let analysis = analyze(&m, route)?;
    emit(out, None, &analysis.lines)?;
    if let Some(path) = csv {
        write_file(path, &analysis.csv)?;
    }
    Ok(EXIT_OK)
}

pub fn sweep_spec(
    family: FamilyArg,
    grids: &[Grid],
    b_values: Option<&[f64]>,
) -> Result<SweepSpec, CliError> {
    match family {
        FamilyArg::Diagonal => {
            if b_values.is_some() {
                return Err(CliError::Usage("eq16 takes its b axis from --grid".into()));
            }
            match grids {
                [b] => Ok(SweepSpec::Diagonal { b: b.points() }),
                _ => Err(CliError::Usage("eq16 needs exactly one --grid (the b axis)".into())),
            }
        }
        FamilyArg::Coherent => {
            let (p, b) = match (grids, b_values) {
                ([p], Some(b)) => (p.points(), b.to_vec()),
                ([p, b], None) => (p.points(), b.points()),
                _ => {
                    return Err(CliError::Usage(
                        "eq22 needs --grid for p and either a second --grid or --b-values for b".into(),
                    ))
                }
            };
            Ok(SweepSpec::Coherent {
                p,
                b,
                plot_window: false,
            })
        }
    }
}

fn cmd_sweep(
    family: FamilyArg,
    grids: &[Grid],
    b_values: Option<&[f64]>,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let spec = sweep_spec(family, grids, b_values)?;
    let rows = sweep(&spec)?;
    emit(out, path, &write_sweep_csv(&rows))?;
    Ok(EXIT_OK)
}

pub const FIG1_GRID: Grid = Grid {
    min: -1.0,
    max: 0.5,
    count: 301,
};

pub const FIG23_P_GRID: Grid = Grid {
    min: 0.0,
    max: 0.5,
    count: 201,
};

/// Sweep specification behind a figure preset.
pub fn figure_spec(
    preset: Preset,
    b_values: Option<&[f64]>,
    grid: Option<Grid>,
) -> Result<SweepSpec, CliError> {
    match preset {
        Preset::Fig1 => {
            if b_values.is_some() || grid.is_some() {
                return Err(CliError::Usage("fig1 has a fixed b grid".into()));
            }
            Ok(SweepSpec::Diagonal {
                b: FIG1_GRID.points(),
            })
        }
        Preset::Fig2 | Preset::Fig3 => {
            let b = b_values.ok_or_else(|| {
                CliError::Usage("fig2 and fig3 need --b-values (comma separated)".into())
            })?;
            Ok(SweepSpec::Coherent {
                p: grid.unwrap_or(FIG23_P_GRID).points(),
                b: b.to_vec(),
                plot_window: true,
            })
        }
    }
}

pub fn figure_csv(preset: Preset, b_values: Option<&[f64]>, grid: Option<Grid>) -> Result<String, CliError> {
    let spec = figure_spec(preset, b_values, grid)?;
    Ok(write_sweep_csv(&sweep(&spec)?))
}

fn cmd_figure(
    preset: Preset,
    b_values: Option<&[f64]>,
    grid: Option<Grid>,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let csv = figure_csv(preset, b_values, grid)?;
    emit(out, path, &csv)?;
    Ok(EXIT_OK)
}

fn cmd_basis(
    input: &Path,
    to: BasisArg,
    truncate: bool,
    renormalize: bool,
    path: Option<&Path>,
    tol: &Tolerances,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let m = DensityMatrix::validate_with(read_matrix(input)?, tol)?;
    if m.dim() != 4 {
        return Err(CliError::Usage(format!(
            "basis needs a 4x4 state, got {}x{}",
            m.dim(),
            m.dim()
        )));
    }
    let text = match (to, truncate) {
        (BasisArg::G, false) => write_matrix(to_g_basis(&m)?.matrix()),
        (BasisArg::G, true) => {
            let t = symmetric_truncation(&to_g_basis(&m)?, renormalize)?;
            format!(
                "# singlet_weight={}\n{}",
                format_sig12(t.singlet_weight),
                write_matrix(&t.matrix)
            )
        }
        (BasisArg::E, false) => write_matrix(&e_from_g(m.matrix())?),
        (BasisArg::E, true) => {
            return Err(CliError::Usage("--truncate applies to --to g only".into()))
        }
    };
    emit(out, path, &text)?;
    Ok(EXIT_OK)
}

fn cmd_random(
    dim: usize,
    count: usize,
    seed: u64,
    dir: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if let Some(d) = dir {
        fs::create_dir_all(d).map_err(|source| CliError::Io {
            path: d.to_path_buf(),
            source,
        })?;
    }
    let mut stream = String::new();
    for i in 0..count {
        let sample_seed = seed.wrapping_add(i as u64);
        let rho = random_density(dim, sample_seed)?;
        let text = format!("# seed={sample_seed}\n{}", write_matrix(rho.matrix()));
        match dir {
            Some(d) => write_file(&d.join(format!("random_{i:04}.txt")), &text)?,
            None => stream.push_str(&text),
        }
    }
    emit(out, None, &stream)?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        RunConfig::command().debug_assert();
    }

    #[test]
    fn rejects_unknown_flags() {
        assert!(RunConfig::try_parse_from(["qutrit", "validate", "--in", "x", "--bogus"]).is_err());
        assert!(RunConfig::try_parse_from(["qutrit"]).is_err());
    }

    #[test]
    fn parses_negative_values() {
        let cfg = RunConfig::try_parse_from([
            "qutrit", "figure", "fig2", "--b-values", "-0.1,-0.05", "--grid", "0:0.5:11",
        ])
        .unwrap();
        match cfg.command {
            Command::Figure { b_values, grid, .. } => {
                assert_eq!(b_values, Some(vec![-0.1, -0.05]));
                assert_eq!(grid, Some(Grid::new(0.0, 0.5, 11)));
            }
            other => panic!("unexpected {other:?}"),
        }
        let cfg = RunConfig::try_parse_from(["qutrit", "sweep", "--family", "eq16", "--grid", "-1:0.5:4"]).unwrap();
        assert!(matches!(cfg.command, Command::Sweep { ref grid, .. } if grid.len() == 1));
    }

    #[test]
    fn sweep_spec_axes() {
        let g = Grid::new(0.1, 0.4, 4);
        assert!(sweep_spec(FamilyArg::Coherent, &[g], None).is_err());
        assert!(sweep_spec(FamilyArg::Diagonal, &[], None).is_err());
        let spec = sweep_spec(FamilyArg::Coherent, &[g, Grid::new(-0.1, 0.0, 3)], None).unwrap();
        assert!(matches!(spec, SweepSpec::Coherent { ref b, .. } if b.len() == 3));
    }

    #[test]
    fn fig2_requires_b_values() {
        let err = figure_spec(Preset::Fig2, None, None).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Compute(Error::NotPsd { min_eigenvalue: -1.0 }).exit_code(), 2);
        assert_eq!(CliError::Compute(Error::Domain("x".into())).exit_code(), 3);
        assert_eq!(CliError::Compute(Error::NoSplit).exit_code(), 1);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
    }
}
