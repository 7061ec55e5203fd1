//! Command-line front end. Units at this boundary are mm and GHz.
//!
//! Exit codes: 0 success, 1 validation or numerical failure, 2 usage error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::angular::{
    apply_raising, build_tesseral, casimir_eigenvalue_estimate, commutator_defect, sectoral, AngularFunction, ThetaGrid,
};
use crate::error::{Error, Result};
use crate::modes::{enumerate_spectrum, Polarisation, WedgeConfig};
use crate::oracle::legendre_spectrum_fd;
use crate::report::{
    load_reference, render, validate_block, wedge_angles, BlockValidation, Format, Renderable, RowStatus,
};
use crate::specfun::{legendre_theta, ln_gamma, riccati_derivative, spherical_j};

/// Relative sup-norm bound on `L₊` applied to a sectoral profile.
pub const HIGHEST_WEIGHT_TOL: f64 = 1e-8;
/// Relative bound on Rayleigh quotients against `ν(ν+1)`.
pub const CASIMIR_TOL: f64 = 1e-5;
/// Accepted band for the observed convergence order of the commutator defect.
pub const COMMUTATOR_ORDER_BAND: (f64, f64) = (3.5, 4.5);

#[derive(Parser, Debug)]
#[command(
    name = "wedge-spectrum",
    version,
    about = "Resonant spectrum of a spherical cavity with a PEC wedge"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate resonant modes below a cutoff frequency.
    Spectrum(SpectrumArgs),
    /// Compare computed spectra with the embedded reference tables.
    Validate(ValidateArgs),
    /// Check the ladder-operator algebra on a uniform grid.
    LadderCheck(LadderArgs),
    /// Finite-difference Legendre eigenvalues at weight m.
    Oracle(OracleArgs),
    /// Evaluate one special function.
    Eval(EvalArgs),
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[arg(long)]
    radius_mm: f64,
    #[arg(long)]
    wedge_deg: f64,
    #[arg(long)]
    fmax_ghz: f64,
    #[arg(long, value_enum, default_value_t = PolChoice::Both)]
    pol: PolChoice,
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PolChoice {
    Te,
    Tm,
    Both,
}

impl PolChoice {
    fn polarisations(self) -> Vec<Polarisation> {
        match self {
            PolChoice::Te => vec![Polarisation::Te],
            PolChoice::Tm => vec![Polarisation::Tm],
            PolChoice::Both => vec![Polarisation::Tm, Polarisation::Te],
        }
    }
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[arg(long, conflicts_with = "all")]
    wedge_deg: Option<f64>,
    /// Validate every embedded configuration (the default).
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 0.2)]
    tol_pct: f64,
}

#[derive(Args, Debug)]
struct LadderArgs {
    #[arg(long, default_value_t = 2.0 / 3.0)]
    m: f64,
    #[arg(long, default_value_t = 2)]
    k: u32,
    #[arg(long, default_value_t = 4096)]
    grid: usize,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    m: f64,
    #[arg(long, default_value_t = 4000)]
    grid: usize,
    #[arg(long, default_value_t = 3)]
    count: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Function {
    SphJ,
    RiccatiD,
    LegendreTheta,
    LnGamma,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long = "fn", value_enum)]
    function: Function,
    #[arg(long, allow_negative_numbers = true)]
    nu: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    m: Option<f64>,
    /// Argument `x`; the polar angle θ for `legendre-theta`.
    #[arg(long, allow_negative_numbers = true)]
    x: f64,
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 2 { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Spectrum(a) => spectrum(a, stdout),
        Command::Validate(a) => validate(a, stdout, stderr),
        Command::LadderCheck(a) => ladder_check(a, stdout, stderr),
        Command::Oracle(a) => oracle(a, stdout),
        Command::Eval(a) => eval(a, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Domain(_) | Error::Precondition(_) => 2,
        Error::Convergence { .. } | Error::RootNotFound { .. } | Error::Integrity(_) => 1,
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Integrity(format!("write failed: {e}"))
}

fn spectrum(a: SpectrumArgs, out: &mut dyn Write) -> Result<i32> {
    let format: Format = a.format.parse()?;
    if !(a.fmax_ghz > 0.0) {
        return Err(Error::Usage(format!("--fmax-ghz must be positive, got {}", a.fmax_ghz)));
    }
    let config = WedgeConfig::from_mm_deg(a.radius_mm, a.wedge_deg)?;
    let records = enumerate_spectrum(&config, a.fmax_ghz * 1e9, &a.pol.polarisations())?;
    out.write_all(&render(Renderable::Spectrum(&records), format)?)
        .map_err(io_err)?;
    Ok(0)
}

fn validate(a: ValidateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    if !(a.tol_pct > 0.0) {
        return Err(Error::Usage(format!("--tol-pct must be positive, got {}", a.tol_pct)));
    }
    let reference = load_reference()?;
    let angles = match a.wedge_deg {
        Some(w) => vec![w],
        None => wedge_angles(&reference),
    };
    let blocks: Vec<BlockValidation> = angles
        .iter()
        .map(|&w| validate_block(&reference, w, a.tol_pct / 100.0))
        .collect::<Result<_>>()?;

    let rows: Vec<_> = blocks.iter().flat_map(|b| b.report.rows.iter().cloned()).collect();
    out.write_all(&render(Renderable::Comparison(&rows), Format::Csv)?)
        .map_err(io_err)?;

    writeln!(out, "# summary").map_err(io_err)?;
    writeln!(
        out,
        "wedge_deg,mean_abs_dev_pct,published_mean_abs_dev_pct,rows,ok,out_of_tolerance,missing"
    )
    .map_err(io_err)?;
    let mut failed = 0;
    for b in &blocks {
        let count = |s: RowStatus| b.report.rows.iter().filter(|r| r.status == s).count();
        let (ok, off, missing) = (
            count(RowStatus::Ok),
            count(RowStatus::OutOfTolerance),
            count(RowStatus::Missing),
        );
        failed += off + missing;
        let opt = |v: Option<f64>| v.map(|v| format!("{v:.3}")).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{ok},{off},{missing}",
            b.wedge_deg,
            opt(b.report.mean_abs_dev_vs_hfss.map(|d| 100.0 * d)),
            opt(b.published_mean_pct),
            b.report.rows.len(),
        )
        .map_err(io_err)?;
    }
    if failed > 0 {
        let _ = writeln!(err, "validation failed: {failed} reference rows outside {}%", a.tol_pct);
        return Ok(1);
    }
    Ok(0)
}

/// Outcome of the ladder-operator checks at one weight.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderReport {
    pub m: f64,
    pub grid: usize,
    /// `sup|L₊ sectoral(m)| / sup|sectoral(m)|`.
    pub highest_weight: f64,
    /// `(k, Rayleigh quotient, (m+k)(m+k+1))` for `k = 0..=K`.
    pub casimir: Vec<(u32, f64, f64)>,
    /// Relative commutator defect norms at `grid/4`, `grid/2`, `grid`.
    pub commutator: [f64; 3],
}

impl LadderReport {
    pub fn commutator_orders(&self) -> [f64; 2] {
        let c = self.commutator;
        [(c[0] / c[1]).log2(), (c[1] / c[2]).log2()]
    }

    pub fn passes(&self) -> bool {
        let (lo, hi) = COMMUTATOR_ORDER_BAND;
        self.highest_weight < HIGHEST_WEIGHT_TOL
            && self
                .casimir
                .iter()
                .all(|&(_, q, want)| ((q - want) / want).abs() < CASIMIR_TOL)
            && self.commutator_orders().iter().all(|o| (lo..=hi).contains(o))
    }
}

/// Runs the highest-weight, Casimir and commutator checks. The commutator
/// is probed with `(sin θ)^m cos 5θ`, whose truncation error stays well
/// above rounding on all three grids.
pub fn ladder_report(m: f64, k: u32, grid: usize) -> Result<LadderReport> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::Domain(format!("ladder checks need m > 0, got {m}")));
    }
    if grid < 64 {
        return Err(Error::Usage(format!("--grid must be at least 64, got {grid}")));
    }
    let g = ThetaGrid::uniform(grid)?;
    let f = sectoral(m, &g)?;
    let highest_weight = apply_raising(&f)?.max_abs() / f.max_abs();
    let casimir = (0..=k)
        .map(|j| {
            let nu = m + j as f64;
            let q = casimir_eigenvalue_estimate(&build_tesseral(m, j, &g)?)?;
            Ok((j, q, nu * (nu + 1.0)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut commutator = [0.0; 3];
    for (slot, n) in commutator.iter_mut().zip([grid / 4, grid / 2, grid]) {
        let g = ThetaGrid::uniform(n)?;
        let probe = AngularFunction::from_fn(m, &g, |t| t.sin().powf(m) * (5.0 * t).cos())?;
        *slot = commutator_defect(&probe)?.weighted_norm() / probe.weighted_norm();
    }
    Ok(LadderReport {
        m,
        grid,
        highest_weight,
        casimir,
        commutator,
    })
}

fn ladder_check(a: LadderArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let r = ladder_report(a.m, a.k, a.grid)?;
    writeln!(out, "check,value").map_err(io_err)?;
    let mut w = |key: String, v: f64| writeln!(out, "{key},{v:.6e}").map_err(io_err);
    w("highest_weight_rel_sup".into(), r.highest_weight)?;
    for &(j, q, want) in &r.casimir {
        w(format!("casimir_k{j}"), q)?;
        w(format!("casimir_k{j}_rel_err"), ((q - want) / want).abs())?;
    }
    for (n, d) in [r.grid / 4, r.grid / 2, r.grid].iter().zip(r.commutator) {
        w(format!("commutator_defect_n{n}"), d)?;
    }
    for (i, o) in r.commutator_orders().iter().enumerate() {
        w(format!("commutator_order_{i}"), *o)?;
    }
    if r.passes() {
        Ok(0)
    } else {
        let _ = writeln!(err, "ladder checks failed at m = {}", r.m);
        Ok(1)
    }
}

fn oracle(a: OracleArgs, out: &mut dyn Write) -> Result<i32> {
    let r = legendre_spectrum_fd(a.m, a.grid, a.count)?;
    writeln!(out, "k,lambda,nu,nu_expected,rel_dev").map_err(io_err)?;
    for (k, (lambda, nu)) in r.lambdas.iter().zip(&r.nus).enumerate() {
        let want = a.m + k as f64;
        writeln!(out, "{k},{lambda:.9e},{nu:.9e},{want:.9e},{:.3e}", (nu - want) / want).map_err(io_err)?;
    }
    Ok(0)
}

fn eval(a: EvalArgs, out: &mut dyn Write) -> Result<i32> {
    let nu = || {
        a.nu.ok_or_else(|| Error::Usage("--nu is required for this function".into()))
    };
    let value = match a.function {
        Function::SphJ => spherical_j(nu()?, a.x)?,
        Function::RiccatiD => riccati_derivative(nu()?, a.x)?,
        Function::LegendreTheta => {
            let m =
                a.m.ok_or_else(|| Error::Usage("--m is required for legendre-theta".into()))?;
            legendre_theta(nu()?, m, a.x)?
        }
        Function::LnGamma => ln_gamma(a.x)?,
    };
    writeln!(out, "{value:.16e}").map_err(io_err)?;
    Ok(0)
}
