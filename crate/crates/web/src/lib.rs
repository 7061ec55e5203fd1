//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export is a thin wrapper over a plain Rust function so the logic
//! can be tested natively.

use serde_json::json;
use wasm_bindgen::prelude::*;

use wedge_spectrum::angular::{build_tesseral, casimir_eigenvalue_estimate, ThetaGrid};
use wedge_spectrum::modes::{enumerate_spectrum, Polarisation, WedgeConfig};
use wedge_spectrum::oracle::legendre_spectrum_fd;
use wedge_spectrum::report::{render, Format, Renderable};

/// Largest angular grid the page may request.
pub const MAX_PROFILE_POINTS: usize = 4096;

/// Mode list as a JSON array (same keys as the CLI's JSON output).
pub fn spectrum(radius_mm: f64, wedge_deg: f64, fmax_ghz: f64) -> Result<String, String> {
    let config = WedgeConfig::from_mm_deg(radius_mm, wedge_deg).map_err(|e| e.to_string())?;
    let modes = enumerate_spectrum(&config, fmax_ghz * 1e9, &[Polarisation::Tm, Polarisation::Te])
        .map_err(|e| e.to_string())?;
    let bytes = render(Renderable::Spectrum(&modes), Format::Json).map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

/// `{theta, value, casimir, expected}` for the tesseral profile at weight
/// `m` and `k` lowering steps, scaled to unit peak.
pub fn profile(m: f64, k: u32, points: usize) -> Result<String, String> {
    if points > MAX_PROFILE_POINTS {
        return Err(format!("at most {MAX_PROFILE_POINTS} points, got {points}"));
    }
    let grid = ThetaGrid::uniform(points).map_err(|e| e.to_string())?;
    let f = build_tesseral(m, k, &grid).map_err(|e| e.to_string())?;
    let q = casimir_eigenvalue_estimate(&f).map_err(|e| e.to_string())?;
    let peak = f.max_abs();
    let values: Vec<f64> = f.values().iter().map(|v| v / peak).collect();
    let nu = m + k as f64;
    Ok(json!({
        "theta": grid.nodes(),
        "value": values,
        "casimir": q,
        "expected": nu * (nu + 1.0),
    })
    .to_string())
}

/// Lowest `count` degrees `ν` from the finite-difference eigenproblem.
pub fn fd_degrees(m: f64, grid: usize, count: usize) -> Result<Vec<f64>, String> {
    legendre_spectrum_fd(m, grid, count)
        .map(|r| r.nus)
        .map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = spectrumJson)]
pub fn spectrum_json(radius_mm: f64, wedge_deg: f64, fmax_ghz: f64) -> Result<String, JsError> {
    spectrum(radius_mm, wedge_deg, fmax_ghz).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = angularProfile)]
pub fn angular_profile(m: f64, k: u32, points: usize) -> Result<String, JsError> {
    profile(m, k, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = fdDegrees)]
pub fn fd_degrees_js(m: f64, grid: usize, count: usize) -> Result<Vec<f64>, JsError> {
    fd_degrees(m, grid, count).map_err(|e| JsError::new(&e))
}
