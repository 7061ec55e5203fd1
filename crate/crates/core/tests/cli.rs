use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wedge-spectrum"))
        .args(args)
        .output()
        .unwrap()
}

const SPECTRUM_90: [&str; 9] = [
    "spectrum",
    "--radius-mm",
    "15",
    "--wedge-deg",
    "90",
    "--fmax-ghz",
    "14",
    "--format",
    "csv",
];

#[test]
fn spectrum_90_degrees() {
    let out = bin(&SPECTRUM_90);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stderr.is_empty());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[1], "TM,1,0,0.666667,0.666667,1,2.35998,7.50684,sectoral");
    assert!(lines[5].starts_with("TE,1,0,0.666667,"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &SPECTRUM_90[..],
        &[
            "spectrum",
            "--radius-mm",
            "15",
            "--wedge-deg",
            "27",
            "--fmax-ghz",
            "16",
            "--format",
            "json",
        ],
        &["validate", "--all"],
        &["oracle", "--m", "0.5405", "--grid", "800"],
    ] {
        let (a, b) = (bin(args), bin(args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn validate_reports_failures_with_exit_one() {
    let out = bin(&["validate", "--wedge-deg", "27"]);
    assert_eq!(out.status.code(), Some(0));
    let out = bin(&["validate", "--all", "--tol-pct", "0.2"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# summary\n"));
    assert!(String::from_utf8(out.stderr).unwrap().contains("validation failed"));
}

#[test]
fn usage_errors_exit_two_on_stderr() {
    for args in [
        &["bogus"][..],
        &["spectrum", "--radius-mm", "15"],
        &[
            "spectrum",
            "--radius-mm",
            "15",
            "--wedge-deg",
            "90",
            "--fmax-ghz",
            "14",
            "--pol",
            "xx",
        ],
        &["eval", "--fn", "sph-j", "--nu", "-1", "--x", "1"],
        &["validate", "--wedge-deg", "33"],
    ] {
        let out = bin(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn eval_functions() {
    let value = |args: &[&str]| -> f64 {
        let out = bin(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        String::from_utf8(out.stdout).unwrap().trim().parse().unwrap()
    };
    assert!(value(&["eval", "--fn", "sph-j", "--nu", "0", "--x", "3.14159265"]).abs() < 1e-8);
    assert!(value(&["eval", "--fn", "riccati-d", "--nu", "0", "--x", "1.5707963267948966"]).abs() < 1e-12);
    let theta = value(&[
        "eval",
        "--fn",
        "legendre-theta",
        "--nu",
        "0.5",
        "--m",
        "0.5",
        "--x",
        "1.0",
    ]);
    assert!((theta - 1f64.sin().sqrt()).abs() < 1e-12);
    assert!((value(&["eval", "--fn", "ln-gamma", "--x", "0.5"]) - 0.5723649429247001).abs() < 1e-13);
}
