//! The angular-momentum ladder algebra acting on sampled θ-profiles.
//!
//! A profile `f(θ)` at azimuthal weight `m` stands for `f(θ)e^{imφ}`. With
//! `∂_φ → im` the ladder operators reduce to
//!
//! * `L₊ : f ↦ f′ − m cot θ f` (weight `m+1`)
//! * `L₋ : f ↦ −f′ − m cot θ f` (weight `m−1`)
//! * `L² : f ↦ −(1/sin θ)(sin θ f′)′ + m²/sin²θ f`
//!
//! Derivatives are taken on the weight-stripped profile `g = f/(sin θ)^m`,
//! using `L₊ f = (sin θ)^m g′` and `L₋ f = −(sin θ)^{−m} ((sin θ)^{2m} g)′`.
//! For physical profiles `g` is smooth up to the poles, so the fourth-order
//! stencils stay accurate where `f′` itself blows up like `θ^{m−1}`.

mod ode;
mod stencil;

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{domain, precondition, Result};
use crate::specfun::{legendre_branch, LEGENDRE_CONTROL};

/// Distance kept from each pole by the default grids.
pub const POLE_CLEARANCE: f64 = 1e-4;

/// Smallest grid the operators accept.
pub const MIN_GRID_POINTS: usize = 16;

/// Uniform grid on a closed sub-interval of `(0, π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaGrid {
    nodes: Arc<[f64]>,
    step: f64,
}

impl ThetaGrid {
    /// `n` points spanning `[ε, π − ε]` with `ε = POLE_CLEARANCE`.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::uniform_between(POLE_CLEARANCE, PI - POLE_CLEARANCE, n)
    }

    pub fn uniform_between(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if n < MIN_GRID_POINTS {
            return Err(precondition(format!(
                "grid needs at least {MIN_GRID_POINTS} points, got {n}"
            )));
        }
        if !(lo > 0.0 && hi < PI && lo < hi) {
            return Err(domain(format!("grid [{lo}, {hi}] must lie inside (0, π)")));
        }
        let step = (hi - lo) / (n - 1) as f64;
        let nodes: Arc<[f64]> = (0..n)
            .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
            .collect();
        Ok(Self { nodes, step })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Trapezoidal quadrature of `Σ w_i · values_i` with weight `sin θ`.
    fn weighted_integral(&self, values: impl Iterator<Item = f64>) -> f64 {
        let n = self.len();
        self.nodes
            .iter()
            .zip(values)
            .enumerate()
            .map(|(i, (th, v))| {
                let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
                w * th.sin() * v
            })
            .sum::<f64>()
            * self.step
    }
}

/// Sampled θ-profile `f(θ)` carrying azimuthal weight `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularFunction {
    m: f64,
    grid: ThetaGrid,
    values: Vec<f64>,
}

impl AngularFunction {
    pub fn new(m: f64, grid: ThetaGrid, values: Vec<f64>) -> Result<Self> {
        if !m.is_finite() {
            return Err(domain(format!("weight must be finite, got {m}")));
        }
        if values.len() != grid.len() {
            return Err(precondition(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(domain("profile values must be finite"));
        }
        Ok(Self { m, grid, values })
    }

    pub fn from_fn(m: f64, grid: &ThetaGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.nodes().iter().map(|&th| f(th)).collect();
        Self::new(m, grid.clone(), values)
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn grid(&self) -> &ThetaGrid {
        &self.grid
    }

    pub fn theta(&self) -> &[f64] {
        self.grid.nodes()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// Pointwise `self − other` on a shared grid, keeping `self`'s weight.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.check_same_grid(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Self::new(self.m, self.grid.clone(), values)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            m: self.m,
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    /// `‖f‖ = (∫ f² sin θ dθ)^{1/2}` by the trapezoid rule.
    pub fn weighted_norm(&self) -> f64 {
        self.grid.weighted_integral(self.values.iter().map(|v| v * v)).sqrt()
    }

    fn check_same_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(precondition("profiles live on different grids"));
        }
        Ok(())
    }

    /// `g = f/(sin θ)^m`.
    fn stripped(&self) -> Vec<f64> {
        self.theta()
            .iter()
            .zip(&self.values)
            .map(|(th, v)| v / th.sin().powf(self.m))
            .collect()
    }
}

/// Angular singularity fit near the south pole: the profile is matched to
/// `a_reg · R₊(π−θ) + b_sing · R₋(π−θ)` where `R±(u) ~ u^{±m}` are the
/// Frobenius branches there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularityFit {
    pub a_reg: f64,
    pub b_sing: f64,
    /// Relative RMS misfit over the fitting window.
    pub residual: f64,
}

impl SingularityFit {
    /// `|b_sing| / |a_reg|`.
    pub fn singular_ratio(&self) -> f64 {
        self.b_sing.abs() / self.a_reg.abs()
    }
}

fn check_grid(f: &AngularFunction) -> Result<()> {
    if f.grid.len() < MIN_GRID_POINTS {
        return Err(precondition(format!(
            "grid needs at least {MIN_GRID_POINTS} points, got {}",
            f.grid.len()
        )));
    }
    Ok(())
}

/// Highest-weight profile `(sin θ)^m`.
pub fn sectoral(m: f64, grid: &ThetaGrid) -> Result<AngularFunction> {
    if !(m >= 0.0) || !m.is_finite() {
        return Err(domain(format!("sectoral profile needs m >= 0, got {m}")));
    }
    AngularFunction::from_fn(m, grid, |th| th.sin().powf(m))
}

/// `L₊`: profile `f′ − m cot θ f` at weight `m + 1`.
pub fn apply_raising(f: &AngularFunction) -> Result<AngularFunction> {
    check_grid(f)?;
    let m = f.m;
    let dg = stencil::first_derivative(&f.stripped(), f.grid.step());
    let values = f.theta().iter().zip(&dg).map(|(th, d)| th.sin().powf(m) * d).collect();
    AngularFunction::new(m + 1.0, f.grid.clone(), values)
}

/// `L₋`: profile `−f′ − m cot θ f` at weight `m − 1`.
pub fn apply_lowering(f: &AngularFunction) -> Result<AngularFunction> {
    check_grid(f)?;
    let m = f.m;
    let g = f.stripped();
    let dg = stencil::first_derivative(&g, f.grid.step());
    let values = f
        .theta()
        .iter()
        .zip(g.iter().zip(&dg))
        .map(|(th, (g, d))| {
            let (s, c) = th.sin_cos();
            -s.powf(m - 1.0) * (2.0 * m * c * g + s * d)
        })
        .collect();
    AngularFunction::new(m - 1.0, f.grid.clone(), values)
}

/// `L²`: the angular Laplacian at fixed weight.
pub fn apply_casimir(f: &AngularFunction) -> Result<AngularFunction> {
    check_grid(f)?;
    let m = f.m;
    let h = f.grid.step();
    let g = f.stripped();
    let d1 = stencil::first_derivative(&g, h);
    let d2 = stencil::second_derivative(&g, h);
    let values = f
        .theta()
        .iter()
        .enumerate()
        .map(|(i, th)| {
            let (s, c) = th.sin_cos();
            s.powf(m) * (-d2[i] - (2.0 * m + 1.0) * c / s * d1[i] + m * (m + 1.0) * g[i])
        })
        .collect();
    AngularFunction::new(m, f.grid.clone(), values)
}

/// `[L₊, L₋]f − 2m f`, which vanishes for exact operators.
pub fn commutator_defect(f: &AngularFunction) -> Result<AngularFunction> {
    let up_down = apply_raising(&apply_lowering(f)?)?;
    let down_up = apply_lowering(&apply_raising(f)?)?;
    let values = up_down
        .values
        .iter()
        .zip(&down_up.values)
        .zip(&f.values)
        .map(|((a, b), v)| a - b - 2.0 * f.m * v)
        .collect();
    AngularFunction::new(f.m, f.grid.clone(), values)
}

/// Lowers `sectoral(m + k)` `k` times, giving the profile at weight `m` with
/// Casimir eigenvalue `(m+k)(m+k+1)`.
pub fn build_tesseral(m: f64, k: u32, grid: &ThetaGrid) -> Result<AngularFunction> {
    let mut f = sectoral(m + k as f64, grid)?;
    for _ in 0..k {
        f = apply_lowering(&f)?;
    }
    // Repeated `− 1.0` can leave the weight an ulp away from `m`.
    f.m = m;
    Ok(f)
}

/// Rayleigh quotient `⟨f, L²f⟩ / ⟨f, f⟩` with the `sin θ` measure.
pub fn casimir_eigenvalue_estimate(f: &AngularFunction) -> Result<f64> {
    let den = f.grid.weighted_integral(f.values.iter().map(|v| v * v));
    if den == 0.0 {
        return Err(domain("Rayleigh quotient of the zero function"));
    }
    let lf = apply_casimir(f)?;
    let num = f
        .grid
        .weighted_integral(f.values.iter().zip(&lf.values).map(|(a, b)| a * b));
    Ok(num / den)
}

/// Cosine similarity `⟨f, g⟩ / (‖f‖‖g‖)` with the `sin θ` measure. The sign
/// is kept, so anti-collinear profiles give −1.
pub fn cosine_similarity(f: &AngularFunction, g: &AngularFunction) -> Result<f64> {
    f.check_same_grid(g)?;
    let fg = f
        .grid
        .weighted_integral(f.values.iter().zip(&g.values).map(|(a, b)| a * b));
    let ff = f.grid.weighted_integral(f.values.iter().map(|v| v * v));
    let gg = f.grid.weighted_integral(g.values.iter().map(|v| v * v));
    if ff == 0.0 || gg == 0.0 {
        return Err(domain("cosine similarity with a zero profile"));
    }
    Ok(fg / (ff.sqrt() * gg.sqrt()))
}

/// Start of the integration, measured from the north pole.
const ODE_START: f64 = 1e-4;
const ODE_REL_TOL: f64 = 1e-10;
/// Fitting window in `u = π − θ`.
const FIT_WINDOW: (f64, f64) = (0.01, 0.2);
const FIT_SAMPLES: usize = 50;

/// Integrates the Legendre equation from the regular north-pole data
/// `f = θ^m` and decomposes the solution near `θ = π` into the regular and
/// singular branches there.
///
/// `m` must lie in `(0, 1)`, where the two exponents `±m` are well separated
/// and `1 − m` keeps the singular series well defined.
pub fn south_pole_coefficient(nu: f64, m: f64) -> Result<SingularityFit> {
    if !(m > 0.0 && m < 1.0) {
        return Err(domain(format!("singularity fit needs 0 < m < 1, got {m}")));
    }
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(domain(format!("nu must be >= 0, got {nu}")));
    }
    let lambda = nu * (nu + 1.0);
    let rhs = |th: f64, y: &ode::State| {
        let (s, c) = th.sin_cos();
        [y[1], -c / s * y[1] - (lambda - m * m / (s * s)) * y[0]]
    };
    let integrator = ode::Integrator {
        rel_tol: ODE_REL_TOL,
        abs_tol: 1e-14,
        max_steps: 1_000_000,
    };

    // Sample points in ascending θ, i.e. descending u.
    let (u_lo, u_hi) = FIT_WINDOW;
    let us: Vec<f64> = (0..FIT_SAMPLES)
        .map(|j| u_hi - (u_hi - u_lo) * j as f64 / (FIT_SAMPLES - 1) as f64)
        .collect();

    let mut theta = ODE_START;
    let mut y = [ODE_START.powf(m), m * ODE_START.powf(m - 1.0)];
    let mut h = 1e-2 * ODE_START;
    let mut samples = Vec::with_capacity(FIT_SAMPLES);
    for &u in &us {
        let target = PI - u;
        let (next, h_next) = integrator.advance(&rhs, theta, target, y, h)?;
        theta = target;
        y = next;
        h = h_next;
        samples.push(y[0]);
    }

    let mut basis = Vec::with_capacity(FIT_SAMPLES);
    for &u in &us {
        let reg = legendre_branch(nu, m, u, LEGENDRE_CONTROL)?;
        let sing = legendre_branch(nu, -m, u, LEGENDRE_CONTROL)?;
        basis.push((reg, sing));
    }

    // Two-column least squares via the normal equations; the columns are
    // rescaled to unit norm first.
    let norm_r = basis.iter().map(|b| b.0 * b.0).sum::<f64>().sqrt();
    let norm_s = basis.iter().map(|b| b.1 * b.1).sum::<f64>().sqrt();
    let (mut rr, mut rs, mut ss, mut ry, mut sy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for ((r, s), f) in basis.iter().zip(&samples) {
        let (r, s) = (r / norm_r, s / norm_s);
        rr += r * r;
        rs += r * s;
        ss += s * s;
        ry += r * f;
        sy += s * f;
    }
    let det = rr * ss - rs * rs;
    let a = (ry * ss - sy * rs) / det / norm_r;
    let b = (sy * rr - ry * rs) / det / norm_s;

    let (mut res2, mut f2) = (0.0, 0.0);
    for ((r, s), f) in basis.iter().zip(&samples) {
        let d = f - (a * r + b * s);
        res2 += d * d;
        f2 += f * f;
    }
    Ok(SingularityFit {
        a_reg: a,
        b_sing: b,
        residual: (res2 / f2).sqrt(),
    })
}
