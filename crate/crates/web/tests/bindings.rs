use serde_json::Value;
use wedge_spectrum_web::{fd_degrees, profile, spectrum};

#[test]
fn spectrum_is_json_array() {
    let v: Value = serde_json::from_str(&spectrum(15.0, 90.0, 14.0).unwrap()).unwrap();
    let modes = v.as_array().unwrap();
    assert_eq!(modes.len(), 6);
    assert_eq!(modes[0]["pol"], "TM");
    assert_eq!(modes[0]["freq_ghz"], 7.50684);
}

#[test]
fn spectrum_rejects_bad_geometry() {
    assert!(spectrum(15.0, 360.0, 14.0).is_err());
    assert!(spectrum(15.0, 90.0, 200.0).is_err());
}

#[test]
fn profile_is_unit_peak_eigenfunction() {
    let v: Value = serde_json::from_str(&profile(2.0 / 3.0, 1, 512).unwrap()).unwrap();
    let values: Vec<f64> = v["value"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(values.len(), 512);
    assert_eq!(v["theta"].as_array().unwrap().len(), 512);
    let peak = values.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    assert!((peak - 1.0).abs() < 1e-15);
    let (q, want) = (v["casimir"].as_f64().unwrap(), v["expected"].as_f64().unwrap());
    assert!(((q - want) / want).abs() < 1e-5);
    assert!(profile(0.5, 0, 10_000).is_err());
}

#[test]
fn fd_degrees_follow_m_plus_k() {
    let nus = fd_degrees(1.0, 1000, 3).unwrap();
    for (k, nu) in nus.iter().enumerate() {
        assert!((nu - (1.0 + k as f64)).abs() < 0.02);
    }
    assert!(fd_degrees(1.0, 10, 3).is_err());
}
