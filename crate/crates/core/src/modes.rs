//! Resonant modes of a spherical cavity of radius `a` with a conducting
//! wedge that leaves the azimuthal domain `[0, Φ]` open.
//!
//! The wedge quantises `m = nπ/Φ`; regularity at both poles forces
//! `ν = m + k` with integer `k ≥ 0`. TM modes satisfy `d/dx[x j_ν(x)] = 0`
//! and TE modes `j_ν(x) = 0` at `x = ka`.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, precondition, Error, Result};
use crate::specfun::{legendre_theta, riccati_derivative, spherical_j, MAX_ARGUMENT};

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Spacing of the sign-change scan used by the root finders.
pub const SCAN_STEP: f64 = 0.05;

/// Relative bracket width at which bisection stops.
const ROOT_REL_WIDTH: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Polarisation {
    #[serde(rename = "TM")]
    Tm,
    #[serde(rename = "TE")]
    Te,
}

impl Polarisation {
    pub fn as_str(self) -> &'static str {
        match self {
            Polarisation::Tm => "TM",
            Polarisation::Te => "TE",
        }
    }

    /// Smallest admissible azimuthal harmonic.
    pub fn min_harmonic(self) -> u32 {
        match self {
            Polarisation::Tm => 1,
            Polarisation::Te => 0,
        }
    }
}

impl fmt::Display for Polarisation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Polarisation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "TM" => Ok(Polarisation::Tm),
            "TE" => Ok(Polarisation::Te),
            _ => Err(Error::Usage(format!("unknown polarisation {s:?}"))),
        }
    }
}

/// Sectoral (`ν = m > 0`), tesseral (`ν > m > 0`) or zonal (`m = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Sectoral,
    Tesseral,
    Zonal,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Sectoral => "sectoral",
            Family::Tesseral => "tesseral",
            Family::Zonal => "zonal",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Cavity radius and wedge geometry. `domain_phi = 2π − wedge_angle`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WedgeConfig {
    radius_a: f64,
    wedge_angle: f64,
    domain_phi: f64,
}

impl WedgeConfig {
    /// `radius_a` in metres, `wedge_angle` in radians within `[0, 2π)`.
    pub fn new(radius_a: f64, wedge_angle: f64) -> Result<Self> {
        if !(radius_a > 0.0) || !radius_a.is_finite() {
            return Err(domain(format!("radius must be positive, got {radius_a}")));
        }
        if !(0.0..2.0 * PI).contains(&wedge_angle) {
            return Err(domain(format!("wedge angle must lie in [0, 2π), got {wedge_angle}")));
        }
        Ok(Self {
            radius_a,
            wedge_angle,
            domain_phi: 2.0 * PI - wedge_angle,
        })
    }

    pub fn from_mm_deg(radius_mm: f64, wedge_deg: f64) -> Result<Self> {
        Self::new(radius_mm * 1e-3, wedge_deg.to_radians())
    }

    pub fn radius_a(&self) -> f64 {
        self.radius_a
    }

    pub fn wedge_angle(&self) -> f64 {
        self.wedge_angle
    }

    pub fn domain_phi(&self) -> f64 {
        self.domain_phi
    }
}

/// Quantum numbers of one cavity mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeId {
    polarisation: Polarisation,
    n: u32,
    k: u32,
    s: u32,
    m: f64,
    nu: f64,
}

impl ModeId {
    pub fn new(polarisation: Polarisation, n: u32, k: u32, s: u32, config: &WedgeConfig) -> Result<Self> {
        Self::with_weight(polarisation, n, k, s, azimuthal_index(n, config))
    }

    /// Builds the id from an explicit azimuthal weight `m`.
    pub fn with_weight(polarisation: Polarisation, n: u32, k: u32, s: u32, m: f64) -> Result<Self> {
        if n < polarisation.min_harmonic() {
            return Err(precondition(format!(
                "{polarisation} modes need n >= {}",
                polarisation.min_harmonic()
            )));
        }
        if s < 1 {
            return Err(precondition("radial index s starts at 1"));
        }
        if !(m >= 0.0) || !m.is_finite() {
            return Err(domain(format!("azimuthal weight must be >= 0, got {m}")));
        }
        Ok(Self {
            polarisation,
            n,
            k,
            s,
            m,
            nu: m + k as f64,
        })
    }

    pub fn polarisation(&self) -> Polarisation {
        self.polarisation
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn s(&self) -> u32 {
        self.s
    }
    pub fn m(&self) -> f64 {
        self.m
    }
    pub fn nu(&self) -> f64 {
        self.nu
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeRecord {
    pub id: ModeId,
    /// Dimensionless root `x = ka`.
    pub x: f64,
    pub freq_hz: f64,
    pub family: Family,
}

impl ModeRecord {
    pub fn new(id: ModeId, x: f64, radius_a: f64) -> Self {
        Self {
            id,
            x,
            freq_hz: frequency(x, radius_a),
            family: classify(&id),
        }
    }

    pub fn freq_ghz(&self) -> f64 {
        self.freq_hz * 1e-9
    }
}

/// `m_n = nπ/Φ`.
pub fn azimuthal_index(n: u32, config: &WedgeConfig) -> f64 {
    n as f64 * PI / config.domain_phi
}

/// `f = c x / (2π a)`.
pub fn frequency(x: f64, radius_a: f64) -> f64 {
    SPEED_OF_LIGHT * x / (2.0 * PI * radius_a)
}

/// Inverse of [`frequency`].
pub fn root_for_frequency(freq_hz: f64, radius_a: f64) -> f64 {
    2.0 * PI * radius_a * freq_hz / SPEED_OF_LIGHT
}

pub fn classify(id: &ModeId) -> Family {
    if id.m == 0.0 {
        Family::Zonal
    } else if id.k == 0 {
        Family::Sectoral
    } else {
        Family::Tesseral
    }
}

fn bisect<F>(f: &F, mut lo: f64, mut hi: f64, mut f_lo: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    while hi - lo > ROOT_REL_WIDTH * 0.5 * (lo + hi) {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Positive zeros of `f` on `(0, cap]`, ascending, at most `limit` of them.
fn scan_roots<F>(f: F, cap: f64, limit: usize) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut roots = Vec::new();
    let mut x_prev = SCAN_STEP;
    let mut f_prev = f(x_prev)?;
    if f_prev == 0.0 {
        roots.push(x_prev);
    }
    let mut i = 2;
    while roots.len() < limit {
        let x = SCAN_STEP * i as f64;
        if x > cap {
            break;
        }
        let fx = f(x)?;
        if fx == 0.0 {
            roots.push(x);
        } else if f_prev != 0.0 && (fx < 0.0) != (f_prev < 0.0) {
            roots.push(bisect(&f, x_prev, x, f_prev)?);
        }
        x_prev = x;
        f_prev = fx;
        i += 1;
    }
    Ok(roots)
}

fn boundary_function(pol: Polarisation) -> fn(f64, f64) -> Result<f64> {
    match pol {
        Polarisation::Te => spherical_j,
        Polarisation::Tm => riccati_derivative,
    }
}

fn nth_root(pol: Polarisation, nu: f64, s: u32) -> Result<f64> {
    if s < 1 {
        return Err(precondition("radial index s starts at 1"));
    }
    let g = boundary_function(pol);
    let roots = scan_roots(|x| g(nu, x), MAX_ARGUMENT, s as usize)?;
    roots.get(s as usize - 1).copied().ok_or_else(|| Error::RootNotFound {
        what: format!("{pol} boundary condition at ν={nu}"),
        index: s as usize,
        cap: MAX_ARGUMENT,
    })
}

/// `s`-th positive zero of `j_ν`.
pub fn te_root(nu: f64, s: u32) -> Result<f64> {
    nth_root(Polarisation::Te, nu, s)
}

/// `s`-th positive zero of `d/dx[x j_ν(x)]`.
pub fn tm_root(nu: f64, s: u32) -> Result<f64> {
    nth_root(Polarisation::Tm, nu, s)
}

/// All boundary-condition roots at most `x_max` for one `(pol, ν)`.
fn roots_below(pol: Polarisation, nu: f64, x_max: f64) -> Result<Vec<f64>> {
    let g = boundary_function(pol);
    let cap = (x_max + SCAN_STEP).min(MAX_ARGUMENT);
    let mut roots = scan_roots(|x| g(nu, x), cap, usize::MAX)?;
    roots.retain(|&x| x <= x_max);
    Ok(roots)
}

/// True when the angular data lie in the kernel of the field extraction:
/// `ν(ν+1) = 0` with a constant profile, i.e. `ν = m = 0`.
pub fn null_field_check(nu: f64, m: f64) -> bool {
    nu * (nu + 1.0) == 0.0 && m == 0.0
}

fn mode_order(a: &ModeRecord, b: &ModeRecord) -> Ordering {
    a.freq_hz
        .total_cmp(&b.freq_hz)
        .then(a.id.polarisation.cmp(&b.id.polarisation))
        .then(a.id.n.cmp(&b.id.n))
        .then(a.id.k.cmp(&b.id.k))
        .then(a.id.s.cmp(&b.id.s))
}

/// Every mode with frequency at most `f_max_hz`, sorted by frequency (ties
/// broken by polarisation TM before TE, then `n`, `k`, `s`).
///
/// The search relies on the roots increasing with `ν`: for each `n` the
/// `k`-loop stops at the first `ν` without a root below the cutoff, and the
/// `n`-loop stops once the sectoral mode itself is above it.
pub fn enumerate_spectrum(
    config: &WedgeConfig,
    f_max_hz: f64,
    polarisations: &[Polarisation],
) -> Result<Vec<ModeRecord>> {
    if !(f_max_hz > 0.0) {
        return Err(domain(format!("f_max must be positive, got {f_max_hz}")));
    }
    let x_max = root_for_frequency(f_max_hz, config.radius_a);
    if x_max > MAX_ARGUMENT {
        return Err(domain(format!(
            "cutoff corresponds to x = {x_max:.3}, beyond the series range {MAX_ARGUMENT}"
        )));
    }

    let mut pols = polarisations.to_vec();
    pols.sort();
    pols.dedup();

    let mut out = Vec::new();
    for pol in pols {
        for n in pol.min_harmonic().. {
            let m = azimuthal_index(n, config);
            let mut found_any = false;
            for k in 0.. {
                let nu = m + k as f64;
                if null_field_check(nu, m) {
                    continue;
                }
                let roots = roots_below(pol, nu, x_max)?;
                if roots.is_empty() {
                    break;
                }
                found_any = true;
                for (i, x) in roots.into_iter().enumerate() {
                    let id = ModeId::with_weight(pol, n, k, i as u32 + 1, m)?;
                    out.push(ModeRecord::new(id, x, config.radius_a));
                }
            }
            // The zonal family starts at k = 1 and says nothing about n ≥ 1.
            if !found_any && n > 0 {
                break;
            }
        }
    }
    out.sort_by(mode_order);
    Ok(out)
}

/// TE electric-field shape `(E_θ, E_φ)` with the `iωμ` prefactor and the
/// `e^{imφ}` phase scaled out:
/// `E_θ = (m/sin θ) j_ν(x) Θ(θ)`, `E_φ = j_ν(x) dΘ/dθ`.
pub fn te_field_shape(nu: f64, m: f64, x_arg: f64, theta: f64) -> Result<(f64, f64)> {
    if !(theta > 0.0 && theta < PI) {
        return Err(domain(format!("theta must lie in (0, π), got {theta}")));
    }
    let radial = spherical_j(nu, x_arg)?;
    let e_theta = if m == 0.0 {
        0.0
    } else {
        m / theta.sin() * radial * legendre_theta(nu, m, theta)?
    };
    let h = 1e-3 * theta.min(PI - theta).min(1.0);
    let th = |d: f64| legendre_theta(nu, m, theta + d);
    let d_theta = (th(-2.0 * h)? - 8.0 * th(-h)? + 8.0 * th(h)? - th(2.0 * h)?) / (12.0 * h);
    Ok((e_theta, radial * d_theta))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(w: f64) -> WedgeConfig {
        WedgeConfig::from_mm_deg(15.0, w).unwrap()
    }

    #[test]
    fn config_invariants() {
        let c = deg(90.0);
        assert!((c.domain_phi() + c.wedge_angle() - 2.0 * PI).abs() < 1e-15);
        assert!(WedgeConfig::new(0.0, 1.0).is_err());
        assert!(WedgeConfig::new(0.01, 2.0 * PI).is_err());
        assert!(WedgeConfig::new(0.01, -0.1).is_err());
        assert!(WedgeConfig::new(0.01, 0.0).is_ok());
    }

    #[test]
    fn azimuthal_examples() {
        assert!((azimuthal_index(1, &deg(90.0)) - 2.0 / 3.0).abs() < 1e-15);
        assert!((azimuthal_index(2, &deg(47.0)) - 1.1502).abs() < 5e-5);
        assert!((azimuthal_index(1, &deg(180.0)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mode_id_invariants() {
        let c = deg(90.0);
        assert!(ModeId::new(Polarisation::Tm, 0, 1, 1, &c).is_err());
        assert!(ModeId::new(Polarisation::Te, 0, 1, 1, &c).is_ok());
        assert!(ModeId::new(Polarisation::Te, 1, 0, 0, &c).is_err());
        let id = ModeId::new(Polarisation::Tm, 2, 1, 1, &c).unwrap();
        assert!((id.nu() - id.m() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn te_roots() {
        assert!((te_root(0.0, 1).unwrap() - PI).abs() < 1e-11);
        // First zero of the closed form sin x/x² − cos x/x, by bisection.
        assert!((te_root(1.0, 1).unwrap() - 4.493_409_457_909_064).abs() < 1e-10);
        assert!((te_root(2.0 / 3.0, 1).unwrap() - 4.0548).abs() < 5e-4);
        for s in 1..=5 {
            assert!((te_root(0.0, s).unwrap() - s as f64 * PI).abs() < 1e-10);
        }
    }

    #[test]
    fn tm_roots() {
        assert!((tm_root(0.0, 1).unwrap() - PI / 2.0).abs() < 1e-10);
        assert!((tm_root(1.0, 1).unwrap() - 2.7437).abs() < 5e-4);
        assert!((tm_root(2.0 / 3.0, 1).unwrap() - 2.3600).abs() < 5e-4);
    }

    #[test]
    fn root_index_checks() {
        assert!(matches!(te_root(1.0, 0), Err(Error::Precondition(_))));
        assert!(matches!(te_root(0.0, 20), Err(Error::RootNotFound { .. })));
    }

    #[test]
    fn frequency_examples() {
        let a = 0.015;
        assert!((frequency(2.3600, a) * 1e-9 - 7.507).abs() < 7.507 * 1.5e-3);
        assert!((frequency(PI, a) - SPEED_OF_LIGHT / (2.0 * a)).abs() < 1e-3);
        assert!((frequency(PI, a) * 1e-9 - 9.9931).abs() < 1e-4);
        assert!((frequency(4.493_409, a) * 1e-9 - 14.293).abs() < 14.293 * 1e-3);
        assert!((root_for_frequency(frequency(2.5, a), a) - 2.5).abs() < 1e-14);
    }

    #[test]
    fn classification() {
        let id = |m: f64, k: u32| ModeId::with_weight(Polarisation::Te, 1, k, 1, m).unwrap();
        assert_eq!(classify(&id(2.0 / 3.0, 0)), Family::Sectoral);
        assert_eq!(classify(&id(2.0 / 3.0, 1)), Family::Tesseral);
        assert_eq!(classify(&id(0.0, 1)), Family::Zonal);
    }

    #[test]
    fn ninety_degree_spectrum() {
        let modes = enumerate_spectrum(&deg(90.0), 14e9, &[Polarisation::Tm, Polarisation::Te]).unwrap();
        let got: Vec<_> = modes
            .iter()
            .map(|r| (r.id.polarisation(), r.id.n(), r.id.k()))
            .collect();
        use Polarisation::*;
        assert_eq!(
            got,
            vec![(Tm, 1, 0), (Tm, 2, 0), (Tm, 1, 1), (Tm, 3, 0), (Te, 1, 0), (Tm, 2, 1)]
        );
        let nus = [2.0 / 3.0, 4.0 / 3.0, 5.0 / 3.0, 2.0, 2.0 / 3.0, 7.0 / 3.0];
        for (r, nu) in modes.iter().zip(nus) {
            assert!((r.id.nu() - nu).abs() < 1e-12);
        }
        let families: Vec<_> = modes.iter().map(|r| r.family).collect();
        use Family::*;
        assert_eq!(
            families,
            vec![Sectoral, Sectoral, Tesseral, Sectoral, Sectoral, Tesseral]
        );
    }

    #[test]
    fn half_sphere_spectrum_structure() {
        // The ν = 2 level appears as the degenerate pair (n=1,k=1), (n=2,k=0);
        // the TE zonal ν = 1 mode sits exactly on the TE n = 1 sectoral one.
        let modes = enumerate_spectrum(&deg(180.0), 14.5e9, &[Polarisation::Tm, Polarisation::Te]).unwrap();
        use Polarisation::*;
        let got: Vec<_> = modes
            .iter()
            .map(|r| (r.id.polarisation(), r.id.n(), r.id.k()))
            .collect();
        assert_eq!(got, vec![(Tm, 1, 0), (Tm, 1, 1), (Tm, 2, 0), (Te, 0, 1), (Te, 1, 0)]);
        assert_eq!(modes[1].freq_hz, modes[2].freq_hz);
        assert!((modes[0].freq_ghz() - 8.727).abs() < 1e-3);
    }

    #[test]
    fn nothing_below_one_hertz() {
        assert!(
            enumerate_spectrum(&deg(47.0), 1.0, &[Polarisation::Tm, Polarisation::Te])
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn cutoff_must_fit_series_range() {
        assert!(enumerate_spectrum(&deg(90.0), 200e9, &[Polarisation::Te]).is_err());
        assert!(enumerate_spectrum(&deg(90.0), 0.0, &[Polarisation::Te]).is_err());
    }

    #[test]
    fn null_field() {
        assert!(null_field_check(0.0, 0.0));
        assert!(!null_field_check(1.0, 0.0));
        assert!(!null_field_check(2.0 / 3.0, 2.0 / 3.0));
    }

    #[test]
    fn te_field_examples() {
        for th in [0.3, 1.0, 2.0] {
            let (et, _) = te_field_shape(1.0, 0.0, 2.0, th).unwrap();
            assert_eq!(et, 0.0);
            let (et, ep) = te_field_shape(0.0, 0.0, 1.3, th).unwrap();
            assert_eq!((et, ep), (0.0, 0.0));
            let (_, ep) = te_field_shape(1.0, 1.0, 2.0, th).unwrap();
            let want = spherical_j(1.0, 2.0).unwrap() * th.cos();
            assert!((ep - want).abs() < 1e-10);
        }
    }

    #[test]
    fn roots_increase_with_order() {
        for s in 1..=2 {
            let mut prev_te = 0.0;
            let mut prev_tm = 0.0;
            for i in 0..=30 {
                let nu = 0.1 * i as f64;
                let te = te_root(nu, s).unwrap();
                let tm = tm_root(nu, s).unwrap();
                assert!(te > prev_te && tm > prev_tm, "ν={nu} s={s}");
                prev_te = te;
                prev_tm = tm;
            }
        }
    }

    #[test]
    fn records_satisfy_boundary_conditions() {
        for w in [27.0, 47.0, 73.0, 90.0, 180.0] {
            let modes = enumerate_spectrum(&deg(w), 20e9, &[Polarisation::Tm, Polarisation::Te]).unwrap();
            for r in &modes {
                let g = boundary_function(r.id.polarisation());
                assert!(g(r.id.nu(), r.x).unwrap().abs() < 1e-9);
                assert!((r.freq_hz - frequency(r.x, 0.015)).abs() < 1e-3);
            }
            let again = enumerate_spectrum(&deg(w), 20e9, &[Polarisation::Te, Polarisation::Tm]).unwrap();
            assert_eq!(modes, again);
        }
    }
}
