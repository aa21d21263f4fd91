//! Gauss quadrature rules and the semi-infinite integrators used by the
//! variational, non-linearization and strong-coupling modules.
//!
//! Rules are generated by Newton iteration on the orthonormal three-term
//! recurrences. All recurrences are run on the exponentially damped
//! polynomials (`p_k(x) e^{-x/2}` for Laguerre, `p_k(x) e^{-x^2/2}` for
//! Hermite) so that nodes and the *scaled* weights `w_i e^{x_i}` stay inside
//! f64 range up to order 200; the raw weights of extreme nodes may underflow
//! to zero, which is fine for every integral formed here.

use crate::error::{CoreError, Result};
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleKind {
    /// Weight `x^alpha e^{-x}` on `[0, inf)`. `alpha > -1` may be fractional.
    GaussLaguerre { alpha: f64 },
    /// Weight `e^{-x^2}` on the full line.
    GaussHermite,
    /// Weight 1 on `[-1, 1]`; building block of the adaptive panel integrator.
    GaussLegendre,
}

/// A Gauss rule: `sum_i weights[i] f(nodes[i])` integrates `f` against the
/// kind's weight function exactly for polynomials up to degree `2n - 1`.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub kind: RuleKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Weights with the exponential factor removed: `w_i e^{x_i}` (Laguerre)
    /// or `w_i e^{x_i^2}` (Hermite), for integrating plain functions.
    pub scaled_weights: Vec<f64>,
    pub order: usize,
}

impl QuadratureRule {
    fn validate(self) -> Result<Self> {
        for w in &self.scaled_weights {
            if !(*w > 0.0) || !w.is_finite() {
                return Err(CoreError::RootFinding {
                    what: "quadrature weights",
                    tol: 1e-14,
                    residual: *w,
                });
            }
        }
        for pair in self.nodes.windows(2) {
            if !(pair[1] > pair[0]) {
                return Err(CoreError::RootFinding {
                    what: "quadrature nodes (ordering)",
                    tol: 1e-14,
                    residual: pair[1] - pair[0],
                });
            }
        }
        Ok(self)
    }
}

const NEWTON_TOL: f64 = 1e-14;
const NEWTON_MAX: usize = 60;

/// Orthonormal damped Laguerre values `q_k(x) = p_k(x) e^{-x/2}` for
/// `k = n-1, n` plus the derivative of `q_n`; `p_k` orthonormal under
/// `x^alpha e^{-x}`. The constant `1/sqrt(Gamma(alpha+1))` is dropped
/// (irrelevant for roots and for the weight formula used below, which is
/// restored explicitly).
fn laguerre_q(n: usize, alpha: f64, x: f64) -> (f64, f64, f64, f64) {
    // q_0 = e^{-x/2}, recurrence b_{k+1} q_{k+1} = (x - a_k) q_k - b_k q_{k-1}
    let mut qm = 0.0f64;
    let mut q = (-0.5 * x).exp();
    let mut sum_sq = q * q;
    let mut b_k = 0.0f64;
    for k in 0..n {
        let a_k = 2.0 * k as f64 + alpha + 1.0;
        let b_k1 = (((k + 1) as f64) * (k as f64 + 1.0 + alpha)).sqrt();
        let qnew = ((x - a_k) * q - b_k * qm) / b_k1;
        qm = q;
        q = qnew;
        b_k = b_k1;
        if k + 1 < n {
            sum_sq += q * q;
        }
    }
    // q_n' = (n q_n - b_n q_{n-1}) / x - q_n / 2
    let dq = (n as f64 * q - b_k * qm) / x - 0.5 * q;
    (q, qm, dq, sum_sq)
}

/// Generalized Gauss-Laguerre rule for weight `x^alpha e^{-x}`, `alpha > -1`.
pub fn gauss_laguerre(n: usize, alpha: f64) -> Result<QuadratureRule> {
    if n == 0 || n > 200 {
        return Err(CoreError::InvalidInput(format!(
            "gauss_laguerre order must be in 1..=200, got {n}"
        )));
    }
    if !(alpha > -1.0) {
        return Err(CoreError::InvalidInput(format!(
            "gauss_laguerre needs alpha > -1, got {alpha}"
        )));
    }
    let gamma_a1 = statrs::function::gamma::gamma(alpha + 1.0);
    let nf = n as f64;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let mut scaled = Vec::with_capacity(n);
    let mut x = 0.0f64;
    for i in 0..n {
        // initial guesses (Stroud-Secrest style marching)
        if i == 0 {
            x = (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * nf + 1.8 * alpha);
        } else if i == 1 {
            x += (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * nf);
        } else {
            let ai = (i - 1) as f64;
            x += ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * alpha / (1.0 + 3.5 * ai))
                * (x - nodes[i - 2])
                / (1.0 + 0.3 * alpha);
        }
        let mut converged = false;
        for _ in 0..NEWTON_MAX {
            let (q, _, dq, _) = laguerre_q(n, alpha, x);
            let step = q / dq;
            x -= step;
            if step.abs() <= NEWTON_TOL * x.abs().max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged {
            let (q, _, dq, _) = laguerre_q(n, alpha, x);
            return Err(CoreError::RootFinding {
                what: "Laguerre node",
                tol: NEWTON_TOL,
                residual: (q / dq).abs(),
            });
        }
        let (_, _, _, sum_sq) = laguerre_q(n, alpha, x);
        // Gauss weight through the Christoffel function:
        // w_i = 1 / sum_{k<n} p_k(x_i)^2; with the damped q's this directly
        // yields the scaled weight w_i e^{x_i} (gamma(alpha+1) restores the
        // dropped normalization of q_0).
        let w_scaled = gamma_a1 / sum_sq;
        nodes.push(x);
        scaled.push(w_scaled);
        weights.push(w_scaled * (-x).exp());
    }
    QuadratureRule {
        kind: RuleKind::GaussLaguerre { alpha },
        nodes,
        weights,
        scaled_weights: scaled,
        order: n,
    }
    .validate()
}

fn hermite_q(n: usize, x: f64) -> (f64, f64, f64) {
    // orthonormal Hermite (weight e^{-x^2}), damped: q_k = h_k e^{-x^2/2}
    let mut qm = 0.0f64;
    let mut q = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    let mut sum_sq = q * q;
    for k in 0..n {
        let qnew = x * (2.0 / (k as f64 + 1.0)).sqrt() * q
            - (k as f64 / (k as f64 + 1.0)).sqrt() * qm;
        qm = q;
        q = qnew;
        if k + 1 < n {
            sum_sq += q * q;
        }
    }
    // h_n' = sqrt(2n) h_{n-1} => q_n' = sqrt(2n) q_{n-1} - x q_n
    let dq = (2.0 * n as f64).sqrt() * qm - x * q;
    (q, dq, sum_sq)
}

/// Gauss-Hermite rule for weight `e^{-x^2}` on the full line.
pub fn gauss_hermite(n: usize) -> Result<QuadratureRule> {
    if n == 0 || n > 200 {
        return Err(CoreError::InvalidInput(format!(
            "gauss_hermite order must be in 1..=200, got {n}"
        )));
    }
    let nf = n as f64;
    let m = n / 2;
    let mut pos = Vec::with_capacity(m + 1);
    let mut x = 0.0f64;
    for i in 0..(n + 1) / 2 {
        // largest root first, marching inward
        if i == 0 {
            x = (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0);
        } else if i == 1 {
            x -= 1.14 * nf.powf(0.426) / x;
        } else if i == 2 {
            x = 1.86 * x - 0.86 * pos[0];
        } else if i == 3 {
            x = 1.91 * x - 0.91 * pos[1];
        } else {
            x = 2.0 * x - pos[i - 2];
        }
        let mut converged = false;
        for _ in 0..NEWTON_MAX {
            let (q, dq, _) = hermite_q(n, x);
            let step = q / dq;
            x -= step;
            if step.abs() <= NEWTON_TOL * x.abs().max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged {
            let (q, dq, _) = hermite_q(n, x);
            return Err(CoreError::RootFinding {
                what: "Hermite node",
                tol: NEWTON_TOL,
                residual: (q / dq).abs(),
            });
        }
        pos.push(x);
    }
    // odd n has a node at exactly zero
    let mut nodes = Vec::with_capacity(n);
    let mut scaled = Vec::with_capacity(n);
    for &xi in pos.iter() {
        nodes.push(-xi);
    }
    if n % 2 == 1 {
        let last = nodes.len() - 1;
        nodes[last] = 0.0;
    }
    for i in (0..m).rev() {
        nodes.push(pos[i]);
    }
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut weights = Vec::with_capacity(n);
    for &xi in &nodes {
        let (_, _, sum_sq) = hermite_q(n, xi);
        let w_scaled = 1.0 / sum_sq;
        scaled.push(w_scaled);
        weights.push(w_scaled * (-xi * xi).exp());
    }
    QuadratureRule {
        kind: RuleKind::GaussHermite,
        nodes,
        weights,
        scaled_weights: scaled,
        order: n,
    }
    .validate()
}

/// Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    if n == 0 || n > 200 {
        return Err(CoreError::InvalidInput(format!(
            "gauss_legendre order must be in 1..=200, got {n}"
        )));
    }
    let nf = n as f64;
    let m = (n + 1) / 2;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut pp = 0.0;
        let mut converged = false;
        for _ in 0..NEWTON_MAX {
            let mut p1 = 1.0f64;
            let mut p2 = 0.0f64;
            for k in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2.0 * k as f64 + 1.0) * x * p2 - k as f64 * p3) / (k as f64 + 1.0);
            }
            pp = nf * (x * p1 - p2) / (x * x - 1.0);
            let step = p1 / pp;
            x -= step;
            if step.abs() <= 1e-15 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(CoreError::RootFinding {
                what: "Legendre node",
                tol: 1e-15,
                residual: pp,
            });
        }
        let w = 2.0 / ((1.0 - x * x) * pp * pp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    let scaled = weights.clone();
    QuadratureRule {
        kind: RuleKind::GaussLegendre,
        nodes,
        weights,
        scaled_weights: scaled,
        order: n,
    }
    .validate()
}

fn gl15() -> &'static QuadratureRule {
    static RULE: OnceLock<QuadratureRule> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(15).expect("static GL15"))
}

fn gl9() -> &'static QuadratureRule {
    static RULE: OnceLock<QuadratureRule> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(9).expect("static GL9"))
}

/// Fixed-order Gauss-Legendre on `[a, b]`.
pub fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rule: &QuadratureRule) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Semi-infinite integral `int_0^inf f(r) r^{D-1} dr` by a mapped generalized
/// Gauss-Laguerre rule (`r = decay_scale * x`, weight `x^{D-1} e^{-x}`),
/// doubling the order until two successive orders agree to `rel_tol`.
/// Returns the value and the achieved relative-error estimate.
pub fn integrate_radial<F: Fn(f64) -> f64>(
    f: F,
    dimension: f64,
    decay_scale: f64,
    rel_tol: f64,
) -> Result<(f64, f64)> {
    if !(decay_scale > 0.0) {
        return Err(CoreError::InvalidInput(
            "integrate_radial needs decay_scale > 0".into(),
        ));
    }
    let alpha = dimension - 1.0;
    let sd = decay_scale.powf(dimension);
    let mut prev: Option<f64> = None;
    let mut best = f64::NAN;
    let mut achieved = f64::INFINITY;
    for n in [10usize, 20, 40, 80, 160, 200] {
        let rule = gauss_laguerre(n, alpha)?;
        let mut acc = 0.0;
        for (x, w) in rule.nodes.iter().zip(&rule.scaled_weights) {
            acc += w * f(decay_scale * x);
        }
        let value = sd * acc;
        if let Some(p) = prev {
            let est = (value - p).abs() / value.abs().max(f64::MIN_POSITIVE);
            if est < achieved {
                achieved = est;
                best = value;
            }
            if est <= rel_tol {
                return Ok((value, est));
            }
        }
        prev = Some(value);
    }
    Err(CoreError::QuadratureNonConvergence {
        best,
        achieved,
        requested: rel_tol,
    })
}

/// Adaptive panel integration of `f` on `[a, b]` to relative tolerance
/// `rel_tol` (relative to the integral of `|f|`). Deterministic bisection.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let rule = gl15();
    let scale = panel(&|x| f(x).abs(), a, b, rule).abs();
    let tol_abs = rel_tol * scale.max(f64::MIN_POSITIVE);
    let mut total = 0.0;
    // explicit stack keeps evaluation order deterministic
    let mut stack: Vec<(f64, f64, f64, f64, u32)> = Vec::new();
    let whole = panel(f, a, b, rule);
    stack.push((a, b, whole, tol_abs, 0));
    while let Some((lo, hi, coarse, tol, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = panel(f, lo, mid, rule);
        let right = panel(f, mid, hi, rule);
        let fine = left + right;
        if (fine - coarse).abs() <= tol || depth >= 48 {
            total += fine;
        } else {
            stack.push((mid, hi, right, 0.5 * tol, depth + 1));
            stack.push((lo, mid, left, 0.5 * tol, depth + 1));
        }
    }
    total
}

/// Per-panel integrals of `f` between consecutive grid points, 9-point Gauss
/// per panel, returned as the cumulative integral at every grid point
/// (`out[0] = 0`).
pub fn cumulative_panels<F: Fn(f64) -> f64>(grid: &[f64], f: &F) -> Vec<f64> {
    let rule = gl9();
    let mut out = Vec::with_capacity(grid.len());
    out.push(0.0);
    let mut acc = 0.0;
    for w in grid.windows(2) {
        acc += panel(f, w[0], w[1], rule);
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::gamma::{gamma, ln_gamma};

    #[test]
    fn laguerre_small_orders_closed_form() {
        let r = gauss_laguerre(1, 0.0).unwrap();
        assert!((r.nodes[0] - 1.0).abs() < 1e-14);
        assert!((r.weights[0] - 1.0).abs() < 1e-14);
        let r = gauss_laguerre(2, 0.0).unwrap();
        let s2 = 2f64.sqrt();
        assert!((r.nodes[0] - (2.0 - s2)).abs() < 1e-13);
        assert!((r.nodes[1] - (2.0 + s2)).abs() < 1e-13);
    }

    #[test]
    fn laguerre_moment_zero() {
        let r = gauss_laguerre(40, 0.0).unwrap();
        let s: f64 = r.weights.iter().sum();
        assert!((s - 1.0).abs() < 1e-14, "sum w = {s}");
    }

    #[test]
    fn laguerre_polynomial_exactness() {
        // integrates x^alpha e^{-x} x^k exactly up to k = 2n-1
        for &(n, alpha) in &[(5usize, 0.0), (8, 1.0), (12, 2.0), (20, 0.5), (15, -0.3)] {
            let r = gauss_laguerre(n, alpha).unwrap();
            for k in [0usize, 1, n, 2 * n - 1] {
                let q: f64 = r
                    .nodes
                    .iter()
                    .zip(&r.weights)
                    .map(|(x, w)| w * x.powi(k as i32))
                    .sum();
                let exact = gamma(alpha + k as f64 + 1.0);
                assert!(
                    (q - exact).abs() <= 1e-12 * exact,
                    "n={n} alpha={alpha} k={k}: {q} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn laguerre_large_order_scaled_weights() {
        // moment check in scaled form for n = 200: sum w x = Gamma(alpha+2)
        let r = gauss_laguerre(200, 0.0).unwrap();
        let q: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x).sum();
        assert!((q - 1.0).abs() < 1e-12);
        assert!(r.scaled_weights.iter().all(|w| w.is_finite() && *w > 0.0));
    }

    #[test]
    fn hermite_moments() {
        let r = gauss_hermite(30).unwrap();
        let pi_sqrt = std::f64::consts::PI.sqrt();
        let m0: f64 = r.weights.iter().sum();
        let m2: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x * x).sum();
        assert!((m0 - pi_sqrt).abs() < 1e-13);
        assert!((m2 - 0.5 * pi_sqrt).abs() < 1e-13);
        // odd order puts a node at zero
        let r = gauss_hermite(31).unwrap();
        assert!(r.nodes[15].abs() < 1e-300);
    }

    #[test]
    fn legendre_exactness() {
        let r = gauss_legendre(15).unwrap();
        let s: f64 = r.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        let q: f64 = r
            .nodes
            .iter()
            .zip(&r.weights)
            .map(|(x, w)| w * x.powi(28))
            .sum();
        assert!((q - 2.0 / 29.0).abs() < 1e-14);
    }

    #[test]
    fn radial_gaussian_moments() {
        // f = e^{-r^2}: D=2 -> 1/2, D=3 -> sqrt(pi)/4
        let (v, _) = integrate_radial(|r| (-r * r).exp(), 2.0, 1.0, 1e-12).unwrap();
        assert!((v - 0.5).abs() < 1e-12);
        let (v, _) = integrate_radial(|r| (-r * r).exp(), 3.0, 1.0, 1e-12).unwrap();
        assert!((v - 0.443113462726379).abs() < 1e-12);
    }

    #[test]
    fn radial_stretched_exponential() {
        // int_0^inf e^{-(4/5) r^{5/2}} dr, frozen from an independent
        // high-precision evaluation of (2/5) (4/5)^{-2/5} Gamma(2/5)
        let (v, _) = integrate_radial(|r| (-(0.8) * r.powf(2.5)).exp(), 1.0, 1.0, 1e-11).unwrap();
        assert!((v - 0.9701006076399926).abs() < 1e-11, "{v}");
    }

    #[test]
    fn radial_polynomial_times_gaussian() {
        // order-doubling convergence invariant: matches closed-form moments
        for d in [1.0, 2.0, 3.0, 6.0] {
            for k in [0, 2, 5] {
                let f = move |r: f64| r.powi(k) * (-r * r).exp();
                let exact = 0.5 * gamma((d + k as f64) / 2.0);
                let (v, _) = integrate_radial(f, d, 0.7, 1e-12).unwrap();
                assert!(
                    (v - exact).abs() < 1e-12 * exact,
                    "d={d} k={k}: {v} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn radial_tiny_dimension() {
        // continuous D support: D = 0.01 weight r^{-0.99}
        let d = 0.01;
        let (v, _) = integrate_radial(|r| (-r * r).exp(), d, 1.0, 1e-11).unwrap();
        let exact = 0.5 * gamma(d / 2.0);
        assert!((v - exact).abs() < 1e-10 * exact);
    }

    #[test]
    fn adaptive_panels_basic() {
        let v = integrate_adaptive(&|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-13);
        assert!((v - 2.0).abs() < 1e-13);
        let v = integrate_adaptive(&|x: f64| (-x * x).exp(), 0.0, 20.0, 1e-13);
        assert!((v - 0.5 * std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn cumulative_matches_adaptive() {
        let grid: Vec<f64> = (0..=400).map(|i| 8.0 * i as f64 / 400.0).collect();
        let f = |x: f64| (x * 0.7).cos() * (-0.3 * x).exp();
        let cum = cumulative_panels(&grid, &f);
        let direct = integrate_adaptive(&f, 0.0, 8.0, 1e-13);
        assert!((cum.last().unwrap() - direct).abs() < 1e-12);
    }

    #[test]
    fn error_estimate_is_conservative() {
        // 20 integrands; oracle = composite Simpson with 10^6 panels on a
        // domain with tail below 1e-16 of the value
        let mut cases: Vec<(Box<dyn Fn(f64) -> f64>, f64, f64)> = Vec::new();
        for k in 0..10 {
            let c = 0.5 + 0.25 * k as f64;
            cases.push((
                Box::new(move |r: f64| (-c * r * r).exp()),
                2.0 + 0.3 * k as f64,
                1.0 / c.sqrt(),
            ));
        }
        for k in 0..10 {
            let p = 1.5 + 0.2 * k as f64;
            cases.push((
                Box::new(move |r: f64| (-r.powf(p)).exp() * (1.0 + r)),
                1.0 + 0.5 * k as f64,
                1.0,
            ));
        }
        for (f, d, scale) in &cases {
            let (v, est) = integrate_radial(|r| f(r), *d, *scale, 1e-10).unwrap();
            // Simpson oracle
            let rmax = 60.0f64 * scale.max(&1.0);
            let n = 1_000_000usize;
            let h = rmax / n as f64;
            let mut s = 0.0;
            for i in 1..n {
                let r = i as f64 * h;
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                s += w * f(r) * r.powf(d - 1.0);
            }
            s += f(rmax) * rmax.powf(d - 1.0);
            s *= h / 3.0;
            assert!(
                (v - s).abs() <= 3.0 * est.max(1e-15) * v.abs() + 1e-13 * v.abs(),
                "d={d}: v={v} oracle={s} est={est}"
            );
        }
    }

    #[test]
    fn nonconvergence_reports_best() {
        // integrand with a scale wildly mismatched to the rule
        let r = integrate_radial(|r| (-(r / 200.0).powi(2)).exp(), 1.0, 1e-3, 1e-13);
        match r {
            Err(CoreError::QuadratureNonConvergence { best, achieved, .. }) => {
                assert!(best.is_finite());
                assert!(achieved > 1e-13);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn laguerre_nodes_increase_weights_positive() {
        for &(n, alpha) in &[(50usize, 0.0), (50, 2.0), (120, 0.5)] {
            let r = gauss_laguerre(n, alpha).unwrap();
            assert_eq!(r.nodes.len(), n);
            // ln of the first-moment identity as a stability cross-check
            let ln_target = ln_gamma(alpha + 1.0);
            let s: f64 = r.weights.iter().sum();
            assert!((s.ln() - ln_target).abs() < 1e-10);
        }
    }
}
