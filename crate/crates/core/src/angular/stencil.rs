//! Fourth-order finite differences on a uniform grid. Interior nodes use
//! central stencils, the two nodes at each end use one-sided ones.

pub(crate) fn first_derivative(v: &[f64], h: f64) -> Vec<f64> {
    let n = v.len();
    debug_assert!(n >= 6);
    let mut d = vec![0.0; n];
    let w = 12.0 * h;
    d[0] = (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) / w;
    d[1] = (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]) / w;
    for i in 2..n - 2 {
        d[i] = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / w;
    }
    let (a, b, c, e, f) = (v[n - 1], v[n - 2], v[n - 3], v[n - 4], v[n - 5]);
    d[n - 1] = (25.0 * a - 48.0 * b + 36.0 * c - 16.0 * e + 3.0 * f) / w;
    d[n - 2] = (3.0 * a + 10.0 * b - 18.0 * c + 6.0 * e - f) / w;
    d
}

pub(crate) fn second_derivative(v: &[f64], h: f64) -> Vec<f64> {
    let n = v.len();
    debug_assert!(n >= 6);
    let mut d = vec![0.0; n];
    let w = 12.0 * h * h;
    let fwd0 = |v: &dyn Fn(usize) -> f64| {
        (45.0 * v(0) - 154.0 * v(1) + 214.0 * v(2) - 156.0 * v(3) + 61.0 * v(4) - 10.0 * v(5)) / w
    };
    let fwd1 =
        |v: &dyn Fn(usize) -> f64| (10.0 * v(0) - 15.0 * v(1) - 4.0 * v(2) + 14.0 * v(3) - 6.0 * v(4) + v(5)) / w;
    d[0] = fwd0(&|j| v[j]);
    d[1] = fwd1(&|j| v[j]);
    d[n - 1] = fwd0(&|j| v[n - 1 - j]);
    d[n - 2] = fwd1(&|j| v[n - 1 - j]);
    for i in 2..n - 2 {
        d[i] = (-v[i - 2] + 16.0 * v[i - 1] - 30.0 * v[i] + 16.0 * v[i + 1] - v[i + 2]) / w;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_quartics() {
        let h = 0.1;
        let xs: Vec<f64> = (0..12).map(|i| i as f64 * h).collect();
        let p: Vec<f64> = xs.iter().map(|x| x.powi(4) - 2.0 * x.powi(3) + x).collect();
        let d1 = first_derivative(&p, h);
        let d2 = second_derivative(&p, h);
        for (i, x) in xs.iter().enumerate() {
            assert!((d1[i] - (4.0 * x.powi(3) - 6.0 * x * x + 1.0)).abs() < 1e-11);
            assert!((d2[i] - (12.0 * x * x - 12.0 * x)).abs() < 1e-9);
        }
    }
}
