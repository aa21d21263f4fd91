//! Generating functions of the Bloch-type equation in the classical
//! coordinate `u = g r`.
//!
//! Weak coupling: `Z_0 = +sqrt(Vhat(u))`, `Z_1 = 0`,
//! `Z_2 = (u Z_0' + (D-1) Z_0 - u eps_0) / (2 u Z_0)` and for `n > 2`
//! `Z_n = (u Z_{n-2}' + (D-1) Z_{n-2} - u^2 sum_{i=2}^{n-2} Z_i Z_{n-i}
//!         - u eps_{n-2}) / (2 u Z_0)`.
//!
//! Strong coupling: `Zt_0 = (et_0/D) u`, `Zt_1 = (et_1/D) u`, and for `n >= 2`
//! `Zt_n = (et_n/D) u + u^{1-D} sum_k int_0^u Zt_k Zt_{n-k-2} s^{D-1} ds
//!         - delta_{m,n} sum_k a_k u^{k+1}/(D+k)`,
//! a finite-degree polynomial at every order.

use crate::error::{CoreError, Result};
use crate::problem::PotentialSpec;
use crate::series::rational::{rat_int, FloatSeries, Rat, RatSeries};
use num_traits::Zero;

/// Weak-coupling generating functions `Z_0 .. Z_N` as Laurent series in `u`
/// around `u = 0`, plus closed-form evaluation for the cubic potential.
#[derive(Debug, Clone)]
pub struct GeneratingFunctionTable {
    pub z: Vec<FloatSeries>,
    pub cubic_closed: bool,
    dimension: f64,
}

impl GeneratingFunctionTable {
    /// `Z_0(u)`; the cubic closed form is `u sqrt(1+u)`.
    pub fn z0(&self, u: f64) -> f64 {
        if self.cubic_closed {
            cubic_z0(u)
        } else {
            self.z[0].eval(u)
        }
    }

    /// `Z_2(u)`; cubic closed form `(u + 2D(1 + u - sqrt(1+u)))/(4u(1+u))`.
    pub fn z2(&self, u: f64) -> f64 {
        if self.cubic_closed {
            cubic_z2(u, self.dimension)
        } else {
            self.z[2].eval(u)
        }
    }
}

/// Cubic `Z_0(u) = u sqrt(1+u)` (positive branch).
pub fn cubic_z0(u: f64) -> f64 {
    u * (1.0 + u).sqrt()
}

/// Cubic `Z_2(u) = (u + 2D(1 + u - sqrt(1+u)))/(4u(1+u))`; `(1+D)/4` at `u=0`.
pub fn cubic_z2(u: f64, d: f64) -> f64 {
    if u == 0.0 {
        return (1.0 + d) / 4.0;
    }
    let s = (1.0 + u).sqrt();
    (u + 2.0 * d * (1.0 + u - s)) / (4.0 * u * (1.0 + u))
}

/// Exact Taylor expansion of the cubic `Z_0` around `u = 0`.
pub fn cubic_z0_series(order: usize) -> RatSeries {
    let mut one_plus_u = RatSeries::zero(order + 1);
    one_plus_u.coeffs[0] = Rat::from_integer(1.into());
    if order >= 1 {
        one_plus_u.coeffs[1] = Rat::from_integer(1.into());
    }
    let mut s = one_plus_u.sqrt_unit().expect("unit sqrt");
    s.offset += 1; // multiply by u
    s
}

/// Exact Taylor expansion of the cubic `Z_2` around `u = 0` for rational `D`.
pub fn cubic_z2_series(d: &Rat, order: usize) -> RatSeries {
    let len = order + 3;
    let mut one_plus_u = RatSeries::zero(len);
    one_plus_u.coeffs[0] = Rat::from_integer(1.into());
    one_plus_u.coeffs[1] = Rat::from_integer(1.into());
    let sqrt = one_plus_u.sqrt_unit().expect("unit sqrt");
    // numerator: u + 2D(1 + u - sqrt(1+u))   (leading power 1)
    let mut upoly = RatSeries::zero(len);
    upoly.coeffs[1] = Rat::from_integer(1.into());
    let num = upoly.add(&one_plus_u.sub(&sqrt).scale(&(rat_int(2) * d)));
    // denominator: 4u(1+u)
    let mut den = RatSeries::new(1, vec![Rat::zero(); len]);
    den.coeffs[0] = rat_int(4);
    den.coeffs[1] = rat_int(4);
    num.div(&den).expect("nonzero leading").truncate_top(order as i64)
}

/// Weak-coupling generating functions through order `n_max`. `eps[k]` are the
/// energy expansion coefficients (`eps[0] = sqrt(a2) D`); only even indices up
/// to `n_max - 2` enter. Laurent windows shrink with `n`, matching the
/// `u^{-n+2}` blow-up of the corrections for odd anharmonicities.
pub fn gb_weak_corrections(
    spec: &PotentialSpec,
    eps: &[f64],
    n_max: usize,
    order: usize,
) -> Result<GeneratingFunctionTable> {
    if n_max > 12 {
        return Err(CoreError::InvalidInput(
            "generating functions supported to n = 12".into(),
        ));
    }
    if eps.len() < n_max.saturating_sub(1) {
        return Err(CoreError::InvalidInput(format!(
            "need energy coefficients eps_0..eps_{} for n_max = {n_max}",
            n_max.saturating_sub(2)
        )));
    }
    let d = spec.dimension;
    let len = order + 1;
    // Vhat(u) = sum a_k u^k as a float series
    let m = spec.degree();
    let mut vhat = FloatSeries::new(2, vec![0.0; len]);
    for k in 2..=m {
        if k - 2 < len {
            vhat.coeffs[k - 2] = spec.a(k);
        }
    }
    let z0 = {
        // sqrt(a2) * u * sqrt_unit(1 + (a3/a2) u + ...)
        let a2 = spec.a(2);
        let unit = vhat.scale(1.0 / a2).shift(-2).sqrt_unit();
        unit.shift(1).scale(a2.sqrt())
    };
    let u_z0_2 = z0.scale(2.0).shift(1); // 2 u Z_0
    let mut z: Vec<FloatSeries> = vec![z0, FloatSeries::new(1, vec![0.0; len])];
    for n in 2..=n_max {
        let prev = &z[n - 2];
        // u Z' + (D-1) Z - u eps_{n-2}
        let mut num = prev
            .differentiate()
            .shift(1)
            .add(&prev.scale(d - 1.0));
        let mut eps_term = FloatSeries::new(1, vec![0.0; len]);
        eps_term.coeffs[0] = eps[n - 2];
        num = num.sub(&eps_term);
        // - u^2 sum_{i=2}^{n-2} Z_i Z_{n-i}
        for i in 2..=n.saturating_sub(2) {
            let prod = z[i].mul(&z[n - i]).shift(2);
            num = num.sub(&prod);
        }
        z.push(num.div(&u_z0_2));
    }
    let cubic_closed = m == 3 && (spec.a(2) - 1.0).abs() < 1e-15 && (spec.a(3) - 1.0).abs() < 1e-15;
    Ok(GeneratingFunctionTable {
        z,
        cubic_closed,
        dimension: d,
    })
}

/// Strong-coupling corrections `Zt_0 .. Zt_N` as exact polynomial series in
/// `u` (offset 1). `eps_tilde[n]` are the strong-coupling energy coefficients.
pub fn gb_strong_corrections(
    m: usize,
    a: &[Rat],
    d: &Rat,
    eps_tilde: &[Rat],
    n_max: usize,
) -> Result<Vec<RatSeries>> {
    if n_max > 12 {
        return Err(CoreError::InvalidInput(
            "strong-coupling corrections supported to n = 12".into(),
        ));
    }
    if eps_tilde.len() <= n_max {
        return Err(CoreError::InvalidInput(format!(
            "need eps_tilde_0..eps_tilde_{n_max}"
        )));
    }
    let coeff_a = |k: usize| -> Rat {
        if k < 2 || k > m {
            Rat::zero()
        } else {
            a[k - 2].clone()
        }
    };
    let mut out: Vec<RatSeries> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        // polynomial of degree at most n+1 in u (plus the potential block)
        let top = (n + 1).max(m + 1);
        let mut coeffs = vec![Rat::zero(); top];
        coeffs[0] = &eps_tilde[n] / d;
        if n >= 2 {
            for k in 0..=n - 2 {
                // u^{1-D} int_0^u Zt_k Zt_{n-k-2} s^{D-1} ds:
                // each u^p in the product becomes u^{p+1}/(p + D)
                let prod = out[k].mul(&out[n - k - 2]);
                for (i, c) in prod.coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let p = prod.offset + i as i64;
                    let idx = p as usize; // lands on u^{p+1}, offset 1
                    if idx < coeffs.len() {
                        coeffs[idx] += c / (rat_int(p) + d);
                    }
                }
            }
            if n == m {
                for k in 2..=m {
                    let ak = coeff_a(k);
                    if !ak.is_zero() {
                        coeffs[k - 1] -= ak / (rat_int(k as i64) + d);
                    }
                }
            }
        }
        out.push(RatSeries::new(1, coeffs));
    }
    Ok(out)
}
