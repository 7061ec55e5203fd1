//! Real-order special functions.
//!
//! Everything here is evaluated from ascending power series. The Bessel
//! series carries its terms in double-double so that the alternating sum
//! keeps full double accuracy up to `x = 40`.

mod bessel;
mod dd;
mod gamma;
mod legendre;

pub use bessel::{bessel_j, riccati_derivative, spherical_j, MAX_ARGUMENT};
pub use gamma::ln_gamma;
pub use legendre::{legendre_theta, legendre_theta_with, LEGENDRE_CONTROL};

pub(crate) use legendre::legendre_branch;

use crate::error::{precondition, Result};

/// Truncation control for power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    max_terms: usize,
    rel_tol: f64,
}

impl SeriesControl {
    pub fn new(max_terms: usize, rel_tol: f64) -> Result<Self> {
        if max_terms < 1 {
            return Err(precondition("max_terms must be at least 1"));
        }
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(precondition(format!("rel_tol must lie in (0, 1), got {rel_tol}")));
        }
        Ok(Self { max_terms, rel_tol })
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            max_terms: 200,
            rel_tol: 1e-15,
        }
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new(first: f64) -> Self {
        Self { sum: first, carry: 0.0 }
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}
