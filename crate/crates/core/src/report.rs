//! Reference tables, theory-versus-reference comparison and CSV/JSON output.
//!
//! The published mode tables ship inside the crate as CSV resources guarded
//! by SHA-256 digests. Deviations are signed as `(f_computed − f_ref)/f_ref`.

use std::f64::consts::PI;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::modes::{enumerate_spectrum, root_for_frequency, ModeId, ModeRecord, Polarisation, WedgeConfig};
use crate::specfun::{riccati_derivative, spherical_j};

/// Version of the embedded reference resources.
pub const REFERENCE_VERSION: u32 = 1;

/// Cavity radius used for every published configuration, in metres.
pub const REFERENCE_RADIUS: f64 = 0.015;

/// Matching tolerance on `m` between computed and tabulated modes.
pub const WEIGHT_MATCH_TOL: f64 = 1e-3;

/// Default relative tolerance against tabulated theory values.
pub const DEFAULT_THEORY_TOL: f64 = 2e-3;

const MODE_TABLE: &[u8] = include_bytes!("../data/reference_modes.csv");
const MODE_TABLE_SHA256: &str = "b6629daac2f2ca099d91c4ff815bfdd7197f6180f8ed765e2269d735f75f7e7c";
const WEDGE_CONFIGS: &[u8] = include_bytes!("../data/wedge_configs.csv");
const WEDGE_CONFIGS_SHA256: &str = "28e779048f2f79b47a9e7fb4df1241e2e4cd577f366712ecf60e5803fe6886bd";
const SUMMARY: &[u8] = include_bytes!("../data/validation_summary.csv");
const SUMMARY_SHA256: &str = "b83902b31143fdac3e29758d127c55f6b92e5b02d5523b09bec933699d56a6c3";

/// One tabulated mode: quantum numbers, published theory and simulated
/// frequencies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub wedge_deg: f64,
    pub mode_index: u32,
    #[serde(rename = "pol")]
    pub polarisation: Polarisation,
    pub m: f64,
    pub k: u32,
    pub nu: f64,
    pub f_theory_ghz: f64,
    pub f_hfss_ghz: f64,
}

/// Wedge geometry row (angle, remaining domain, first two azimuthal indices).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryRow {
    pub wedge_deg: f64,
    pub domain_deg: f64,
    pub m1: f64,
    pub m2: f64,
    pub kind: String,
}

/// Published per-configuration summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub wedge_deg: f64,
    pub m1: f64,
    pub kind: String,
    pub sectoral: u32,
    pub tesseral: u32,
    pub matched: u32,
    pub mean_abs_dev_pct: f64,
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn verify(bytes: &[u8], expected: &str, name: &str) -> Result<()> {
    let got = sha256_hex(bytes);
    if got != expected {
        return Err(Error::Integrity(format!(
            "{name}: sha256 {got} does not match {expected}"
        )));
    }
    Ok(())
}

fn parse_csv<T: for<'de> Deserialize<'de>>(bytes: &[u8], name: &str) -> Result<Vec<T>> {
    csv::Reader::from_reader(bytes)
        .deserialize()
        .collect::<std::result::Result<Vec<T>, _>>()
        .map_err(|e| Error::Integrity(format!("{name}: {e}")))
}

/// Parses reference rows after checking the SHA-256 digest of `bytes`.
pub fn parse_reference(bytes: &[u8], sha256: &str) -> Result<Vec<ReferenceRow>> {
    verify(bytes, sha256, "reference_modes.csv")?;
    parse_reference_rows(bytes)
}

/// Parses and checks reference rows without a digest (e.g. rendered output).
pub fn parse_reference_rows(bytes: &[u8]) -> Result<Vec<ReferenceRow>> {
    let rows: Vec<ReferenceRow> = parse_csv(bytes, "reference rows")?;
    for r in &rows {
        let bad = |what: &str| {
            Err(Error::Integrity(format!(
                "row {}°/{}: {what}",
                r.wedge_deg, r.mode_index
            )))
        };
        if (r.nu - r.m - r.k as f64).abs() >= 1e-4 {
            return bad("nu differs from m + k");
        }
        if !(r.f_theory_ghz > 0.0 && r.f_hfss_ghz > 0.0) {
            return bad("non-positive frequency");
        }
        if !(1..=6).contains(&r.mode_index) {
            return bad("mode index outside 1..=6");
        }
    }
    Ok(rows)
}

/// All 30 tabulated modes (five configurations of six modes).
pub fn load_reference() -> Result<Vec<ReferenceRow>> {
    parse_reference(MODE_TABLE, MODE_TABLE_SHA256)
}

pub fn load_geometry() -> Result<Vec<GeometryRow>> {
    verify(WEDGE_CONFIGS, WEDGE_CONFIGS_SHA256, "wedge_configs.csv")?;
    parse_csv(WEDGE_CONFIGS, "wedge_configs.csv")
}

pub fn load_published_summary() -> Result<Vec<SummaryRow>> {
    verify(SUMMARY, SUMMARY_SHA256, "validation_summary.csv")?;
    parse_csv(SUMMARY, "validation_summary.csv")
}

/// Rows of one configuration, in table order.
pub fn reference_block(rows: &[ReferenceRow], wedge_deg: f64) -> Vec<ReferenceRow> {
    rows.iter().filter(|r| r.wedge_deg == wedge_deg).cloned().collect()
}

/// Distinct wedge angles present in the rows, in first-seen order.
pub fn wedge_angles(rows: &[ReferenceRow]) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for r in rows {
        if !out.contains(&r.wedge_deg) {
            out.push(r.wedge_deg);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    OutOfTolerance,
    Missing,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub reference: ReferenceRow,
    pub f_computed_ghz: Option<f64>,
    /// `(f_computed − f_theory)/f_theory`.
    pub dev_vs_theory: Option<f64>,
    /// `(f_computed − f_hfss)/f_hfss`.
    pub dev_vs_hfss: Option<f64>,
    pub status: RowStatus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub rows: Vec<ComparisonRow>,
    /// Mean `|Δf/f|` against the simulated values over matched rows;
    /// `None` when nothing matched.
    pub mean_abs_dev_vs_hfss: Option<f64>,
}

impl ComparisonReport {
    pub fn all_within_tolerance(&self) -> bool {
        self.rows.iter().all(|r| r.status == RowStatus::Ok)
    }
}

/// Matches each reference row to the lowest computed mode with the same
/// polarisation, `k`, and `m` within [`WEIGHT_MATCH_TOL`]. Several reference
/// rows may share one computed mode.
pub fn compare(computed: &[ModeRecord], reference: &[ReferenceRow], tol: f64) -> ComparisonReport {
    let rows: Vec<ComparisonRow> = reference
        .iter()
        .map(|r| {
            let hit = computed
                .iter()
                .filter(|c| {
                    c.id.polarisation() == r.polarisation
                        && c.id.k() == r.k
                        && (c.id.m() - r.m).abs() <= WEIGHT_MATCH_TOL
                })
                .min_by(|a, b| a.freq_hz.total_cmp(&b.freq_hz));
            match hit {
                Some(c) => {
                    let f = c.freq_ghz();
                    let dev_th = (f - r.f_theory_ghz) / r.f_theory_ghz;
                    let dev_hfss = (f - r.f_hfss_ghz) / r.f_hfss_ghz;
                    let status = if dev_th.abs() <= tol {
                        RowStatus::Ok
                    } else {
                        RowStatus::OutOfTolerance
                    };
                    ComparisonRow {
                        reference: r.clone(),
                        f_computed_ghz: Some(f),
                        dev_vs_theory: Some(dev_th),
                        dev_vs_hfss: Some(dev_hfss),
                        status,
                    }
                }
                None => ComparisonRow {
                    reference: r.clone(),
                    f_computed_ghz: None,
                    dev_vs_theory: None,
                    dev_vs_hfss: None,
                    status: RowStatus::Missing,
                },
            }
        })
        .collect();
    let devs: Vec<f64> = rows.iter().filter_map(|r| r.dev_vs_hfss).map(f64::abs).collect();
    let mean = (!devs.is_empty()).then(|| devs.iter().sum::<f64>() / devs.len() as f64);
    ComparisonReport {
        rows,
        mean_abs_dev_vs_hfss: mean,
    }
}

/// Mode records built from the tabulated theory frequencies themselves.
pub fn records_from_reference(rows: &[ReferenceRow], radius_a: f64) -> Result<Vec<ModeRecord>> {
    rows.iter()
        .map(|r| {
            let domain = (360.0 - r.wedge_deg).to_radians();
            let n = (r.m * domain / PI).round() as u32;
            let id = ModeId::with_weight(r.polarisation, n, r.k, 1, r.m)?;
            let x = root_for_frequency(r.f_theory_ghz * 1e9, radius_a);
            Ok(ModeRecord::new(id, x, radius_a))
        })
        .collect()
}

/// Boundary-condition residual of a tabulated theory frequency, i.e.
/// `|j_ν(x)|` (TE) or `|d/dx[x j_ν]|` (TM) at `x = 2πaf/c`.
pub fn transcription_residual(row: &ReferenceRow, radius_a: f64) -> Result<f64> {
    let x = root_for_frequency(row.f_theory_ghz * 1e9, radius_a);
    let g = match row.polarisation {
        Polarisation::Te => spherical_j(row.nu, x)?,
        Polarisation::Tm => riccati_derivative(row.nu, x)?,
    };
    Ok(g.abs())
}

/// Outcome of reproducing one published configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockValidation {
    pub wedge_deg: f64,
    pub report: ComparisonReport,
    pub published_mean_pct: Option<f64>,
}

/// Enumerates the spectrum of one published configuration and compares it
/// with the tabulated rows. The cutoff sits 25 % above the highest
/// tabulated frequency so every assigned mode is available for matching.
pub fn validate_block(reference: &[ReferenceRow], wedge_deg: f64, tol: f64) -> Result<BlockValidation> {
    let block = reference_block(reference, wedge_deg);
    if block.is_empty() {
        return Err(Error::Usage(format!("no reference data for a {wedge_deg}° wedge")));
    }
    let config = WedgeConfig::from_mm_deg(REFERENCE_RADIUS * 1e3, wedge_deg)?;
    let top = block
        .iter()
        .map(|r| r.f_theory_ghz.max(r.f_hfss_ghz))
        .fold(0.0, f64::max);
    let computed = enumerate_spectrum(&config, 1.25 * top * 1e9, &[Polarisation::Tm, Polarisation::Te])?;
    let published_mean_pct = load_published_summary()?
        .into_iter()
        .find(|s| s.wedge_deg == wedge_deg)
        .map(|s| s.mean_abs_dev_pct);
    Ok(BlockValidation {
        wedge_deg,
        report: compare(&computed, &block, tol),
        published_mean_pct,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Usage(format!("unknown format {other:?} (expected csv or json)"))),
        }
    }
}

/// Something [`render`] can serialise.
#[derive(Debug, Clone, Copy)]
pub enum Renderable<'a> {
    Spectrum(&'a [ModeRecord]),
    Comparison(&'a [ComparisonRow]),
    Reference(&'a [ReferenceRow]),
}

/// Rounds to six significant digits.
fn sig6(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.5e}").parse().unwrap_or(v)
}

#[derive(Serialize)]
struct SpectrumView {
    pol: Polarisation,
    n: u32,
    k: u32,
    m: f64,
    nu: f64,
    s: u32,
    x: f64,
    freq_ghz: f64,
    family: &'static str,
}

const SPECTRUM_HEADER: [&str; 9] = ["pol", "n", "k", "m", "nu", "s", "x", "freq_ghz", "family"];

#[derive(Serialize)]
struct ComparisonView {
    wedge_deg: f64,
    mode_index: u32,
    pol: Polarisation,
    m: f64,
    k: u32,
    nu: f64,
    f_theory_ghz: f64,
    f_hfss_ghz: f64,
    freq_ghz: Option<f64>,
    dev_vs_theory_pct: Option<f64>,
    dev_vs_hfss_pct: Option<f64>,
    status: RowStatus,
}

const COMPARISON_HEADER: [&str; 12] = [
    "wedge_deg",
    "mode_index",
    "pol",
    "m",
    "k",
    "nu",
    "f_theory_ghz",
    "f_hfss_ghz",
    "freq_ghz",
    "dev_vs_theory_pct",
    "dev_vs_hfss_pct",
    "status",
];

const REFERENCE_HEADER: [&str; 8] = [
    "wedge_deg",
    "mode_index",
    "pol",
    "m",
    "k",
    "nu",
    "f_theory_ghz",
    "f_hfss_ghz",
];

fn spectrum_views(records: &[ModeRecord]) -> Vec<SpectrumView> {
    records
        .iter()
        .map(|r| SpectrumView {
            pol: r.id.polarisation(),
            n: r.id.n(),
            k: r.id.k(),
            m: sig6(r.id.m()),
            nu: sig6(r.id.nu()),
            s: r.id.s(),
            x: sig6(r.x),
            freq_ghz: sig6(r.freq_ghz()),
            family: r.family.as_str(),
        })
        .collect()
}

fn comparison_views(rows: &[ComparisonRow]) -> Vec<ComparisonView> {
    rows.iter()
        .map(|c| {
            let r = &c.reference;
            ComparisonView {
                wedge_deg: r.wedge_deg,
                mode_index: r.mode_index,
                pol: r.polarisation,
                m: sig6(r.m),
                k: r.k,
                nu: sig6(r.nu),
                f_theory_ghz: sig6(r.f_theory_ghz),
                f_hfss_ghz: sig6(r.f_hfss_ghz),
                freq_ghz: c.f_computed_ghz.map(sig6),
                dev_vs_theory_pct: c.dev_vs_theory.map(|d| sig6(100.0 * d)),
                dev_vs_hfss_pct: c.dev_vs_hfss.map(|d| sig6(100.0 * d)),
                status: c.status,
            }
        })
        .collect()
}

fn reference_views(rows: &[ReferenceRow]) -> Vec<ReferenceRow> {
    rows.iter()
        .map(|r| ReferenceRow {
            m: sig6(r.m),
            nu: sig6(r.nu),
            f_theory_ghz: sig6(r.f_theory_ghz),
            f_hfss_ghz: sig6(r.f_hfss_ghz),
            ..r.clone()
        })
        .collect()
}

fn write_csv<T: Serialize>(header: &[&str], rows: &[T]) -> Result<Vec<u8>> {
    let io = |e: csv::Error| Error::Integrity(format!("csv output: {e}"));
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.serialize(row).map_err(io)?;
    }
    w.into_inner().map_err(|e| Error::Integrity(format!("csv output: {e}")))
}

fn write_json<T: Serialize>(rows: &[T]) -> Result<Vec<u8>> {
    let mut out = serde_json::to_vec(rows).map_err(|e| Error::Integrity(format!("json output: {e}")))?;
    out.push(b'\n');
    Ok(out)
}

/// Serialises spectra, comparisons or reference rows. Floating-point
/// fields carry six significant digits; key order is fixed.
pub fn render(item: Renderable<'_>, format: Format) -> Result<Vec<u8>> {
    match (item, format) {
        (Renderable::Spectrum(r), Format::Csv) => write_csv(&SPECTRUM_HEADER, &spectrum_views(r)),
        (Renderable::Spectrum(r), Format::Json) => write_json(&spectrum_views(r)),
        (Renderable::Comparison(r), Format::Csv) => write_csv(&COMPARISON_HEADER, &comparison_views(r)),
        (Renderable::Comparison(r), Format::Json) => write_json(&comparison_views(r)),
        (Renderable::Reference(r), Format::Csv) => write_csv(&REFERENCE_HEADER, &reference_views(r)),
        (Renderable::Reference(r), Format::Json) => write_json(&reference_views(r)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modes::{tm_root, Family};

    fn row(rows: &[ReferenceRow], w: f64, i: u32) -> ReferenceRow {
        rows.iter()
            .find(|r| r.wedge_deg == w && r.mode_index == i)
            .unwrap()
            .clone()
    }

    #[test]
    fn embedded_tables_load() {
        let rows = load_reference().unwrap();
        assert_eq!(rows.len(), 30);
        assert_eq!(wedge_angles(&rows), vec![27.0, 47.0, 73.0, 90.0, 180.0]);

        let r = row(&rows, 90.0, 1);
        assert_eq!(r.polarisation, Polarisation::Tm);
        assert!((r.m - 2.0 / 3.0).abs() < 1e-6);
        assert_eq!(r.k, 0);
        assert_eq!((r.f_theory_ghz, r.f_hfss_ghz), (7.507, 7.569));

        let r = row(&rows, 180.0, 5);
        assert_eq!((r.polarisation, r.m, r.k, r.nu), (Polarisation::Tm, 1.0, 2, 3.0));
        assert_eq!((r.f_theory_ghz, r.f_hfss_ghz), (13.47, 13.498));

        assert_eq!(load_geometry().unwrap().len(), 5);
        assert_eq!(load_published_summary().unwrap().len(), 5);
    }

    #[test]
    fn corrupted_resource_is_rejected() {
        let mut bytes = MODE_TABLE.to_vec();
        let pos = bytes.iter().position(|&b| b == b'7').unwrap();
        bytes[pos] = b'8';
        assert!(matches!(
            parse_reference(&bytes, MODE_TABLE_SHA256),
            Err(Error::Integrity(_))
        ));
    }

    #[test]
    fn inconsistent_rows_are_rejected() {
        let csv = "wedge_deg,mode_index,pol,m,k,nu,f_theory_ghz,f_hfss_ghz\n90,1,TM,0.5,1,0.5,7.0,7.1\n";
        assert!(matches!(parse_reference_rows(csv.as_bytes()), Err(Error::Integrity(_))));
    }

    #[test]
    fn reference_round_trips_through_csv() {
        let rows = load_reference().unwrap();
        let out = render(Renderable::Reference(&rows), Format::Csv).unwrap();
        assert_eq!(parse_reference_rows(&out).unwrap(), rows);
    }

    #[test]
    fn self_comparison_has_zero_theory_deviation() {
        let rows = load_reference().unwrap();
        for w in wedge_angles(&rows) {
            let block = reference_block(&rows, w);
            let records = records_from_reference(&block, REFERENCE_RADIUS).unwrap();
            let report = compare(&records, &block, DEFAULT_THEORY_TOL);
            for r in &report.rows {
                assert!(r.dev_vs_theory.unwrap().abs() < 1e-12, "{w}: {r:?}");
            }
        }
    }

    #[test]
    fn degenerate_pair_shares_one_record() {
        let rows = load_reference().unwrap();
        let block = reference_block(&rows, 180.0);
        let config = WedgeConfig::from_mm_deg(15.0, 180.0).unwrap();
        let computed = enumerate_spectrum(&config, 18e9, &[Polarisation::Tm, Polarisation::Te]).unwrap();
        let report = compare(&computed, &block, DEFAULT_THEORY_TOL);
        let (r3, r4) = (&report.rows[2], &report.rows[3]);
        assert_eq!(r3.f_computed_ghz, r4.f_computed_ghz);
        assert!(r3.f_computed_ghz.is_some());
        assert_eq!(r3.status, RowStatus::Ok);
    }

    #[test]
    fn missing_mode_is_reported_not_raised() {
        let rows = load_reference().unwrap();
        let block = reference_block(&rows, 90.0);
        let report = compare(&[], &block, DEFAULT_THEORY_TOL);
        assert!(report.rows.iter().all(|r| r.status == RowStatus::Missing));
        assert_eq!(report.mean_abs_dev_vs_hfss, None);
        assert!(!report.all_within_tolerance());
    }

    #[test]
    fn sectoral_json_record() {
        let id = ModeId::with_weight(Polarisation::Tm, 1, 0, 1, 2.0 / 3.0).unwrap();
        let x = tm_root(2.0 / 3.0, 1).unwrap();
        let rec = ModeRecord::new(id, x, REFERENCE_RADIUS);
        assert_eq!(rec.family, Family::Sectoral);
        let out = String::from_utf8(render(Renderable::Spectrum(&[rec]), Format::Json).unwrap()).unwrap();
        assert_eq!(
            out.trim(),
            r#"[{"pol":"TM","n":1,"k":0,"m":0.666667,"nu":0.666667,"s":1,"x":2.35998,"freq_ghz":7.50684,"family":"sectoral"}]"#
        );
    }

    #[test]
    fn empty_spectrum_csv_is_header_only() {
        let out = render(Renderable::Spectrum(&[]), Format::Csv).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "pol,n,k,m,nu,s,x,freq_ghz,family\n");
        let out = render(Renderable::Spectrum(&[]), Format::Json).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "[]\n");
    }

    #[test]
    fn comparison_csv_carries_signed_deviation() {
        let rows = load_reference().unwrap();
        let v = validate_block(&rows, 90.0, DEFAULT_THEORY_TOL).unwrap();
        let out = String::from_utf8(render(Renderable::Comparison(&v.report.rows[..1]), Format::Csv).unwrap()).unwrap();
        let mut lines = out.lines();
        assert_eq!(lines.next().unwrap(), COMPARISON_HEADER.join(","));
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        let dev: f64 = fields[10].parse().unwrap();
        assert!((dev - -0.82).abs() < 0.005, "{dev}");
        assert_eq!(fields[11], "ok");
        assert_eq!(v.published_mean_pct, Some(0.65));
    }

    #[test]
    fn unknown_format_is_a_usage_error() {
        assert!(matches!("xml".parse::<Format>(), Err(Error::Usage(_))));
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
    }

    // Tabulated theory values that follow from their own (pol, ν) satisfy
    // the boundary condition to table rounding. The remaining rows are
    // listed explicitly: their values are not roots for the stated ν.
    #[test]
    fn transcription_residuals() {
        let inconsistent = [
            (47.0, 3),
            (47.0, 6),
            (73.0, 3),
            (73.0, 6),
            (90.0, 6),
            (180.0, 2),
            (180.0, 5),
        ];
        for r in load_reference().unwrap() {
            let res = transcription_residual(&r, REFERENCE_RADIUS).unwrap();
            let listed = inconsistent.contains(&(r.wedge_deg, r.mode_index));
            if listed {
                assert!(res > 1e-2, "{}°/{} residual {res}", r.wedge_deg, r.mode_index);
            } else {
                assert!(res < 1e-2, "{}°/{} residual {res}", r.wedge_deg, r.mode_index);
            }
        }
    }
}
