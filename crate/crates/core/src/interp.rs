//! Cubic-spline interpolation and the hybrid sampling grid shared by the
//! correction pipelines.

/// Natural cubic spline through strictly increasing knots.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    // second derivatives at the knots
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(xs: &[f64], ys: &[f64]) -> Self {
        assert_eq!(xs.len(), ys.len());
        assert!(xs.len() >= 3);
        let n = xs.len();
        let mut a = vec![0.0; n];
        let mut b = vec![0.0; n];
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        b[0] = 1.0;
        b[n - 1] = 1.0;
        for i in 1..n - 1 {
            let h0 = xs[i] - xs[i - 1];
            let h1 = xs[i + 1] - xs[i];
            a[i] = h0 / 6.0;
            b[i] = (h0 + h1) / 3.0;
            c[i] = h1 / 6.0;
            d[i] = (ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0;
        }
        // Thomas algorithm
        let mut cp = vec![0.0; n];
        let mut dp = vec![0.0; n];
        cp[0] = c[0] / b[0];
        dp[0] = d[0] / b[0];
        for i in 1..n {
            let denom = b[i] - a[i] * cp[i - 1];
            cp[i] = c[i] / denom;
            dp[i] = (d[i] - a[i] * dp[i - 1]) / denom;
        }
        let mut m = vec![0.0; n];
        m[n - 1] = dp[n - 1];
        for i in (0..n - 1).rev() {
            m[i] = dp[i] - cp[i] * m[i + 1];
        }
        Self {
            xs: xs.to_vec(),
            ys: ys.to_vec(),
            m,
        }
    }

    /// Index of the knot interval containing `x` (clamped to the ends).
    fn segment(&self, x: f64) -> usize {
        match self
            .xs
            .binary_search_by(|v| v.partial_cmp(&x).expect("finite knots"))
        {
            Ok(i) => i.min(self.xs.len() - 2),
            Err(0) => 0,
            Err(i) => (i - 1).min(self.xs.len() - 2),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let i = self.segment(x);
        let h = self.xs[i + 1] - self.xs[i];
        let t0 = self.xs[i + 1] - x;
        let t1 = x - self.xs[i];
        (self.m[i] * t0 * t0 * t0 + self.m[i + 1] * t1 * t1 * t1) / (6.0 * h)
            + (self.ys[i] / h - self.m[i] * h / 6.0) * t0
            + (self.ys[i + 1] / h - self.m[i + 1] * h / 6.0) * t1
    }
}

/// Hybrid grid: `n_lin + 1` uniform points on `[0, split]` followed by
/// `n_log` log-spaced points up to `max` (dropped if `max <= split`).
pub fn hybrid_grid(split: f64, max: f64, n_lin: usize, n_log: usize) -> Vec<f64> {
    let mut g = Vec::with_capacity(n_lin + n_log + 1);
    let split = split.min(max);
    for i in 0..=n_lin {
        g.push(split * i as f64 / n_lin as f64);
    }
    if max > split {
        let ratio = (max / split).ln();
        for i in 1..=n_log {
            g.push(split * (ratio * i as f64 / n_log as f64).exp());
        }
    }
    g
}
