use super::{CompensatedSum, SeriesControl};
use crate::error::{domain, Error, Result};

/// Series control used by [`legendre_theta`]. The hypergeometric series
/// converges like `tⁿ` with `t = sin²(θ/2)`, so points near the south pole
/// need far more terms than the Bessel default.
pub const LEGENDRE_CONTROL: SeriesControl = SeriesControl {
    max_terms: 200_000,
    rel_tol: 1e-15,
};

/// Solution of the associated Legendre equation
/// `(1/sin θ)(sin θ Θ′)′ + (ν(ν+1) − m²/sin²θ) Θ = 0` that is regular at
/// `θ = 0`, normalised so that `Θ/(sin θ)^m → 1` there.
///
/// Evaluated as `(sin θ)^m · ₂F₁(m−ν, m+ν+1; m+1; sin²(θ/2))`. When `ν − m`
/// is a non-negative integer the series is a polynomial.
pub fn legendre_theta(nu: f64, m: f64, theta: f64) -> Result<f64> {
    legendre_theta_with(nu, m, theta, LEGENDRE_CONTROL)
}

pub fn legendre_theta_with(nu: f64, m: f64, theta: f64, ctl: SeriesControl) -> Result<f64> {
    if !(nu >= 0.0) || !(m >= 0.0) || !nu.is_finite() || !m.is_finite() {
        return Err(domain(format!(
            "legendre_theta requires nu, m >= 0, got nu={nu}, m={m}"
        )));
    }
    legendre_branch(nu, m, theta, ctl)
}

/// Frobenius branch `(sin θ)^μ · ₂F₁(μ−ν, μ+ν+1; μ+1; sin²(θ/2))` for any
/// real `μ` with `μ+1` not a non-positive integer. `μ = −m` gives the branch
/// that is singular at the origin of `θ`.
pub(crate) fn legendre_branch(nu: f64, mu: f64, theta: f64, ctl: SeriesControl) -> Result<f64> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(domain(format!("theta must lie in (0, π), got {theta}")));
    }
    let c = mu + 1.0;
    if c <= 0.0 && c.fract() == 0.0 {
        return Err(domain(format!("μ + 1 = {c} is a non-positive integer")));
    }
    let half = (0.5 * theta).sin();
    let t = half * half;
    let weight = theta.sin().powf(mu);

    let offset = nu - mu;
    let rounded = offset.round();
    let terminating = rounded >= 0.0 && (offset - rounded).abs() < 1e-10;
    // Exact termination instead of relying on a ~1e-16 leftover coefficient.
    let a = if terminating { -rounded } else { mu - nu };
    let b = mu + nu + 1.0;

    let mut term = 1.0;
    let mut sum = CompensatedSum::new(1.0);
    for n in 0..ctl.max_terms() {
        let nf = n as f64;
        if terminating && nf >= rounded {
            return Ok(weight * sum.value());
        }
        let ratio = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * t;
        term *= ratio;
        sum.add(term);
        let r = ratio.abs();
        if !terminating && r < 1.0 {
            let tail = term.abs() / (1.0 - r);
            if tail <= ctl.rel_tol() * sum.value().abs() {
                return Ok(weight * sum.value());
            }
        }
    }
    Err(Error::Convergence {
        what: format!("Legendre θ-series at ν={nu}, μ={mu}, θ={theta}"),
        terms: ctl.max_terms(),
    })
}
