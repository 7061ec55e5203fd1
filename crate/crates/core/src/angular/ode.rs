//! Adaptive Dormand–Prince 5(4) integrator for a two-component system.

use crate::error::{Error, Result};

pub(crate) type State = [f64; 2];

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

pub(crate) struct Integrator {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

impl Integrator {
    /// Advances `y` from `t0` to `t1`, returning the state at `t1` and the
    /// last accepted step size (a good first guess for the next leg).
    pub fn advance<F>(&self, rhs: &F, t0: f64, t1: f64, y: State, h0: f64) -> Result<(State, f64)>
    where
        F: Fn(f64, &State) -> State,
    {
        let mut t = t0;
        let mut y = y;
        let mut h = h0.min(t1 - t0);
        let mut last_ok = h;
        for _ in 0..self.max_steps {
            if t >= t1 {
                return Ok((y, last_ok));
            }
            let hit_end = t + h >= t1;
            if hit_end {
                h = t1 - t;
            }
            let mut k = [[0.0; 2]; 7];
            for s in 0..7 {
                let mut ys = y;
                for (j, kj) in k.iter().enumerate().take(s) {
                    ys[0] += h * A[s][j] * kj[0];
                    ys[1] += h * A[s][j] * kj[1];
                }
                k[s] = rhs(t + C[s] * h, &ys);
            }
            let mut y5 = y;
            let mut err: f64 = 0.0;
            for c in 0..2 {
                let mut hi = 0.0;
                let mut lo = 0.0;
                for s in 0..7 {
                    hi += B5[s] * k[s][c];
                    lo += B4[s] * k[s][c];
                }
                y5[c] += h * hi;
                let scale = self.abs_tol + self.rel_tol * y[c].abs().max(y5[c].abs());
                err = err.max((h * (hi - lo)).abs() / scale);
            }
            if err <= 1.0 {
                t = if hit_end { t1 } else { t + h };
                y = y5;
                last_ok = h;
            }
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            h *= factor;
        }
        Err(Error::Convergence {
            what: "adaptive Runge–Kutta integration".into(),
            terms: self.max_steps,
        })
    }
}
