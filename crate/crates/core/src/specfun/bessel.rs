use std::f64::consts::PI;

use super::dd::DoubleDouble;
use super::{ln_gamma, SeriesControl};
use crate::error::{domain, Error, Result};

/// Upper end of the argument range served by the power series.
pub const MAX_ARGUMENT: f64 = 40.0;

/// Bessel function of the first kind `J_order(x)` for real `order ≥ 0`.
///
/// Sums `Σ (−1)^k (x/2)^{2k+order} / (k! Γ(k+order+1))` until the terms fall
/// below `rel_tol` of the partial sum. Valid for `0 < x ≤ 40`.
pub fn bessel_j(order: f64, x: f64, ctl: SeriesControl) -> Result<f64> {
    if !(order >= 0.0) || !order.is_finite() {
        return Err(domain(format!("bessel_j requires order >= 0, got {order}")));
    }
    cylinder_j(order, x, ctl)
}

/// Same series as [`bessel_j`] but admitting `order > −1`, which the
/// Riccati–Bessel derivative needs for `ν < 1/2`.
pub(crate) fn cylinder_j(order: f64, x: f64, ctl: SeriesControl) -> Result<f64> {
    if !(order > -1.0) || !order.is_finite() {
        return Err(domain(format!("series J requires order > -1, got {order}")));
    }
    if !(x > 0.0 && x <= MAX_ARGUMENT) {
        return Err(domain(format!("x must lie in (0, {MAX_ARGUMENT}], got {x}")));
    }

    let prefactor = (order * (0.5 * x).ln() - ln_gamma(order + 1.0)?).exp();

    // −x²/4, exact in double-double.
    let step = DoubleDouble::product(x, x) * DoubleDouble::from_f64(-0.25);
    let order_dd = DoubleDouble::from_f64(order);
    let mut term = DoubleDouble::ONE;
    let mut sum = DoubleDouble::ONE;
    for k in 1..=ctl.max_terms() {
        let kf = DoubleDouble::from_f64(k as f64);
        let denom = kf * (kf + order_dd);
        term = term * step / denom;
        sum = sum + term;
        let past_peak = denom.hi > step.hi.abs();
        if past_peak && term.abs().hi <= ctl.rel_tol() * sum.abs().hi {
            return Ok(prefactor * sum.to_f64());
        }
    }
    Err(Error::Convergence {
        what: format!("J_{order}({x}) power series"),
        terms: ctl.max_terms(),
    })
}

/// Spherical Bessel function `j_ν(x) = √(π/2x) J_{ν+1/2}(x)`.
pub fn spherical_j(nu: f64, x: f64) -> Result<f64> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(domain(format!("spherical_j requires nu >= 0, got {nu}")));
    }
    let j = cylinder_j(nu + 0.5, x, SeriesControl::default())?;
    Ok((PI / (2.0 * x)).sqrt() * j)
}

/// `d/dx [x j_ν(x)]`, whose zeros are the TM resonances.
///
/// Uses `d/dx[x j_ν] = x j_{ν−1} − ν j_ν` with both spherical functions
/// written through `J`, so that `ν < 1` only needs `J` of order in
/// `[−1/2, 1/2)`.
pub fn riccati_derivative(nu: f64, x: f64) -> Result<f64> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(domain(format!("riccati_derivative requires nu >= 0, got {nu}")));
    }
    let ctl = SeriesControl::default();
    let lower = cylinder_j(nu - 0.5, x, ctl)?;
    let upper = cylinder_j(nu + 0.5, x, ctl)?;
    Ok((0.5 * PI * x).sqrt() * (lower - (nu / x) * upper))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn half_order_closed_form() {
        let v = bessel_j(0.5, PI / 2.0, SeriesControl::default()).unwrap();
        assert!((v - 2.0 / PI).abs() < 1e-14);
    }

    #[test]
    fn order_zero_near_origin() {
        let v = bessel_j(0.0, 1e-8, SeriesControl::default()).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn seven_sixths_at_two() {
        // Frozen from oracle::bessel_series_reference(7/6, 2, 60); agrees
        // with a 40-digit evaluation to all printed digits.
        let v = bessel_j(7.0 / 6.0, 2.0, SeriesControl::default()).unwrap();
        assert!(rel(v, 0.559_694_424_015_606_6) < 1e-14);
    }

    #[test]
    fn large_arguments_keep_accuracy() {
        // 40-digit reference values.
        let cases = [
            (2.0 / 3.0, 20.0, 0.139_048_261_221_165_4),
            (2.5, 20.0, -0.172_580_193_843_876_42),
            (0.0, 40.0, 0.007_366_890_584_237_29),
            (1.3, 35.0, 0.096_171_808_798_258_17),
        ];
        for (order, x, want) in cases {
            let got = bessel_j(order, x, SeriesControl::default()).unwrap();
            assert!((got - want).abs() < 1e-13, "J_{order}({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn domain_errors() {
        let ctl = SeriesControl::default();
        assert!(matches!(bessel_j(1.0, 0.0, ctl), Err(Error::Domain(_))));
        assert!(matches!(bessel_j(1.0, 40.5, ctl), Err(Error::Domain(_))));
        assert!(matches!(bessel_j(-0.5, 1.0, ctl), Err(Error::Domain(_))));
        assert!(spherical_j(-1.0, 1.0).is_err());
        assert!(riccati_derivative(0.5, -1.0).is_err());
    }

    #[test]
    fn truncation_reports_non_convergence() {
        let ctl = SeriesControl::new(3, 1e-15).unwrap();
        assert!(matches!(bessel_j(0.0, 10.0, ctl), Err(Error::Convergence { .. })));
    }

    #[test]
    fn spherical_examples() {
        assert!((spherical_j(0.0, 1.0).unwrap() - 0.841_471_0).abs() < 1e-7);
        assert!((spherical_j(1.0, 2.0).unwrap() - 0.435_397_8).abs() < 1e-7);
        // 90° wedge, TE mode 5 at 12.898 GHz, a = 15 mm.
        assert!(spherical_j(2.0 / 3.0, 4.0548).unwrap().abs() < 1e-4);
    }

    #[test]
    fn riccati_examples() {
        assert!((riccati_derivative(0.0, PI).unwrap() + 1.0).abs() < 1e-14);
        // Half-sphere mode 1 (8.727 GHz) and 90° mode 1 (7.507 GHz).
        assert!(riccati_derivative(1.0, 2.7437).unwrap().abs() < 1e-3);
        assert!(riccati_derivative(2.0 / 3.0, 2.3600).unwrap().abs() < 1e-3);
    }

    fn closed_forms(nu: usize, x: f64) -> f64 {
        let (s, c) = x.sin_cos();
        match nu {
            0 => s / x,
            1 => s / (x * x) - c / x,
            2 => (3.0 / (x * x * x) - 1.0 / x) * s - 3.0 * c / (x * x),
            _ => unreachable!(),
        }
    }

    #[test]
    fn integer_orders_match_closed_forms() {
        // Below x ≈ 0.5 the closed form for j_2 itself cancels badly.
        for nu in 0..3 {
            let mut x = 0.5;
            while x <= 20.0 {
                let got = spherical_j(nu as f64, x).unwrap();
                let want = closed_forms(nu, x);
                // Relative where the value is not near a zero.
                let scale = want.abs().max(1e-3);
                assert!((got - want).abs() < 1e-10 * scale, "nu={nu} x={x}: {got} vs {want}");
                x += 0.0731;
            }
        }
    }

    #[test]
    fn riccati_matches_finite_differences() {
        let h = 1e-3;
        let g = |nu: f64, x: f64| x * spherical_j(nu, x).unwrap();
        for nu in [0.54, 2.0 / 3.0, 1.0, 5.0 / 3.0] {
            let mut x = 0.5;
            while x <= 10.0 {
                let fd =
                    (-g(nu, x + 2.0 * h) + 8.0 * g(nu, x + h) - 8.0 * g(nu, x - h) + g(nu, x - 2.0 * h)) / (12.0 * h);
                let d = riccati_derivative(nu, x).unwrap();
                assert!(rel(d, fd) < 1e-8, "nu={nu} x={x}: {d} vs {fd}");
                x += 0.173;
            }
        }
    }
}
