//! Brute-force cross-checks that share no code path with the main solvers.
//!
//! * A second-order finite-difference discretisation of the Legendre
//!   equation, solved as a symmetric tridiagonal eigenproblem by Sturm
//!   bisection, which should recover `ν = m + k`.
//! * The Bessel power series evaluated backwards (nested form) in its own
//!   double-double arithmetic, with an independent Stirling-series gamma.

use std::f64::consts::PI;

use crate::error::{domain, precondition, Result};

/// Distance from each pole where the FD problem imposes Dirichlet data.
pub const FD_POLE_CLEARANCE: f64 = 1e-3;

/// Lowest eigenvalues of the discretised Legendre operator at weight `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    pub m: f64,
    /// Ascending estimates of `λ = ν(ν+1)`.
    pub lambdas: Vec<f64>,
    /// `ν = (−1 + √(1+4λ))/2` for each `λ`.
    pub nus: Vec<f64>,
    pub grid_size: usize,
}

pub fn nu_from_lambda(lambda: f64) -> f64 {
    0.5 * (-1.0 + (1.0 + 4.0 * lambda).sqrt())
}

/// Discretises `−(1/sin θ)(sin θ Θ′)′ + (m²/sin²θ) Θ = λ Θ` on
/// `[ε, π − ε]` with `grid_size` interior nodes and Dirichlet ends, then
/// returns the `count` lowest eigenvalues.
pub fn legendre_spectrum_fd(m: f64, grid_size: usize, count: usize) -> Result<EigenResult> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(domain(format!("FD spectrum needs m > 0, got {m}")));
    }
    if grid_size < 500 {
        return Err(precondition(format!("grid_size must be at least 500, got {grid_size}")));
    }
    if count < 1 || count > grid_size {
        return Err(precondition(format!("count must lie in [1, {grid_size}], got {count}")));
    }

    let eps = FD_POLE_CLEARANCE;
    let h = (PI - 2.0 * eps) / (grid_size + 1) as f64;
    let node = |i: usize| eps + h * i as f64;
    let h2 = h * h;

    // Symmetrised with D^{1/2}, D = diag(sin θ_i).
    let mut diag = Vec::with_capacity(grid_size);
    let mut off = Vec::with_capacity(grid_size - 1);
    for i in 1..=grid_size {
        let s = node(i).sin();
        let p_minus = (node(i) - 0.5 * h).sin();
        let p_plus = (node(i) + 0.5 * h).sin();
        diag.push((p_minus + p_plus) / (h2 * s) + m * m / (s * s));
        if i < grid_size {
            off.push(-p_plus / (h2 * (s * node(i + 1).sin()).sqrt()));
        }
    }

    let lambdas = lowest_eigenvalues(&diag, &off, count);
    let nus = lambdas.iter().map(|&l| nu_from_lambda(l)).collect();
    Ok(EigenResult {
        m,
        lambdas,
        nus,
        grid_size,
    })
}

/// Number of eigenvalues of the symmetric tridiagonal matrix below `x`.
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let coupling = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] / q };
        q = diag[i] - x - coupling;
        if q == 0.0 {
            q = f64::EPSILON * (diag[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn lowest_eigenvalues(diag: &[f64], off: &[f64], count: usize) -> Vec<f64> {
    let n = diag.len();
    let radius = |i: usize| {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { off[i].abs() } else { 0.0 };
        left + right
    };
    let lower = (0..n).map(|i| diag[i] - radius(i)).fold(f64::INFINITY, f64::min);
    let upper = (0..n).map(|i| diag[i] + radius(i)).fold(f64::NEG_INFINITY, f64::max);

    (0..count)
        .map(|k| {
            let (mut lo, mut hi) = (lower, upper);
            while hi - lo > 1e-13 * lo.abs().max(hi.abs()).max(1.0) {
                let mid = 0.5 * (lo + hi);
                if sturm_count(diag, off, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

/// Double-double pair private to the oracle.
#[derive(Clone, Copy)]
struct Wide(f64, f64);

impl Wide {
    fn add(self, o: Wide) -> Wide {
        let s = self.0 + o.0;
        let v = s - self.0;
        let e = (self.0 - (s - v)) + (o.0 - v) + self.1 + o.1;
        let hi = s + e;
        Wide(hi, e - (hi - s))
    }

    fn mul(self, o: Wide) -> Wide {
        let p = self.0 * o.0;
        let e = self.0.mul_add(o.0, -p) + self.0 * o.1 + self.1 * o.0;
        let hi = p + e;
        Wide(hi, e - (hi - p))
    }

    fn div(self, o: Wide) -> Wide {
        let q = self.0 / o.0;
        let r = self.add(o.mul(Wide(-q, 0.0)));
        let q2 = r.0 / o.0;
        let r = r.add(o.mul(Wide(-q2, 0.0)));
        let q3 = r.0 / o.0;
        Wide(q, 0.0).add(Wide(q2, 0.0)).add(Wide(q3, 0.0))
    }
}

/// `Γ(z)` for `z > 0` by upward shift and the Stirling series.
fn stirling_gamma(z: f64) -> f64 {
    const BERNOULLI: [f64; 6] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
    ];
    let mut w = z;
    let mut shift = 1.0;
    while w < 20.0 {
        shift *= w;
        w += 1.0;
    }
    let mut series = 0.0;
    let mut wp = w;
    for (j, b) in BERNOULLI.iter().enumerate() {
        let two_j = 2.0 * (j + 1) as f64;
        series += b / (two_j * (two_j - 1.0) * wp);
        wp *= w * w;
    }
    let ln = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series;
    ln.exp() / shift
}

/// `J_order(x)` from the first `terms` terms of the ascending series,
/// nested from the innermost term outwards in double-double arithmetic.
pub fn bessel_series_reference(order: f64, x: f64, terms: usize) -> Result<f64> {
    if terms < 40 {
        return Err(precondition(format!(
            "reference series needs at least 40 terms, got {terms}"
        )));
    }
    if !(x > 0.0 && x <= 20.0) {
        return Err(domain(format!("reference series covers x in (0, 20], got {x}")));
    }
    if !(order > -1.0) {
        return Err(domain(format!("reference series needs order > -1, got {order}")));
    }
    let y = Wide(x, 0.0).mul(Wide(x, 0.0)).mul(Wide(-0.25, 0.0));
    let mut acc = Wide(1.0, 0.0);
    for k in (1..terms).rev() {
        let kk = Wide(k as f64, 0.0);
        let denom = kk.mul(kk.add(Wide(order, 0.0)));
        acc = Wide(1.0, 0.0).add(y.div(denom).mul(acc));
    }
    let prefactor = (0.5 * x).powf(order) / stirling_gamma(order + 1.0);
    Ok(prefactor * (acc.0 + acc.1))
}
