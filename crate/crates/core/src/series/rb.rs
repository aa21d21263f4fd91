//! Taylor and asymptotic expansions of the logarithmic derivative from the
//! scaled first-order equation in the radial coordinate.
//!
//! Small distance: `Y(v) = sum_k y_k v^k` with
//! `(k + D - 1) y_k = eps delta_{k,1} - a_{k-1} lam^{k-3} + sum_{i+j=k-1} y_i y_j`,
//! which reproduces the displayed low orders
//! `Y = (eps/D) v + (eps^2 - a2 D^2)/(D^2(D+2)) v^3 - a3 lam/(D+3) v^4 - ...`.
//! The energy may stay symbolic: coefficients are then polynomials in `eps`.

use crate::error::{CoreError, Result};
use crate::problem::PotentialSpec;
use crate::series::rational::{rat_from_f64, rat_int, Rat, RatPoly, RatSeries};
use num_traits::{One, Zero};

/// Small-v expansion with symbolic energy; `coeffs[k]` is the coefficient of
/// `v^k` as a polynomial in `eps`. `coeffs[0]` and `coeffs[2]` vanish.
pub fn rb_small_v_series(spec: &PotentialSpec, order: usize) -> Result<Vec<RatPoly>> {
    if order > 30 {
        return Err(CoreError::InvalidInput(
            "small-v expansion supported to order 30".into(),
        ));
    }
    let d = rat_from_f64(spec.dimension);
    let lam = rat_from_f64(spec.coupling); // defaults: lambda = g
    let m = spec.degree();
    let mut y: Vec<RatPoly> = vec![RatPoly::zero(); order + 1];
    for k in 1..=order {
        let mut rhs = RatPoly::zero();
        if k == 1 {
            rhs = RatPoly::monomial(Rat::one(), 1); // eps itself
        }
        if k >= 3 && k - 1 <= m {
            // potential source: -a_{k-1} lam^{k-3}
            let a = rat_from_f64(spec.a(k - 1));
            if !a.is_zero() {
                let mut p = Rat::one();
                for _ in 0..(k - 3) {
                    p *= &lam;
                }
                rhs = rhs.sub(&RatPoly::constant(a * p));
            }
        }
        // + sum_{i+j=k-1, i,j>=1} y_i y_j
        for i in 1..k.saturating_sub(1) {
            let j = k - 1 - i;
            if j >= 1 {
                rhs = rhs.add(&y[i].mul(&y[j]));
            }
        }
        let denom = rat_int(k as i64) + &d - Rat::one();
        y[k] = rhs.scale(&(Rat::one() / denom));
    }
    Ok(y)
}

/// Small-v expansion with a numeric energy, as an exact series in `v`.
pub fn rb_small_v_series_at(spec: &PotentialSpec, eps: f64, order: usize) -> Result<RatSeries> {
    let sym = rb_small_v_series(spec, order)?;
    let e = rat_from_f64(eps);
    let coeffs = sym.iter().skip(1).map(|p| p.eval(&e)).collect();
    Ok(RatSeries::new(1, coeffs))
}

/// One term of a descending half-integer-power expansion: `coeff * v^{num/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPowerTerm {
    pub coeff: f64,
    /// Twice the power, so the power itself is `power_x2 as f64 / 2`.
    pub power_x2: i64,
}

/// Leading terms of the large-v expansion of the logarithmic derivative:
/// `a_m^{1/2} lam^{(m-2)/2} v^{m/2}
///  + a_{m-1} lam^{(m-4)/2} v^{(m-2)/2} / (2 a_m^{1/2})
///  + (4 a_m a_{m-2} - a_{m-1}^2) lam^{(m-6)/2} v^{(m-4)/2} / (8 a_m^{3/2})`.
/// Terms beyond the third acquire explicit energy dependence and are refused.
pub fn rb_large_v_series(spec: &PotentialSpec, order: usize) -> Result<Vec<HalfPowerTerm>> {
    if order > 3 {
        return Err(CoreError::InvalidInput(
            "large-v terms beyond the third depend on the energy and are not provided".into(),
        ));
    }
    let m = spec.degree() as i64;
    let lam = spec.coupling;
    let am = spec.a(m as usize);
    let am1 = spec.a((m - 1) as usize);
    let am2 = spec.a((m - 2) as usize);
    let sq = am.sqrt();
    let mut terms = vec![HalfPowerTerm {
        coeff: sq * lam.powf((m as f64 - 2.0) / 2.0),
        power_x2: m,
    }];
    if order >= 2 {
        terms.push(HalfPowerTerm {
            coeff: am1 * lam.powf((m as f64 - 4.0) / 2.0) / (2.0 * sq),
            power_x2: m - 2,
        });
    }
    if order >= 3 {
        terms.push(HalfPowerTerm {
            coeff: (4.0 * am * am2 - am1 * am1) * lam.powf((m as f64 - 6.0) / 2.0)
                / (8.0 * am * sq),
            power_x2: m - 4,
        });
    }
    Ok(terms)
}

/// Resummed small-u expansion of the strong-coupling Bloch-type equation:
/// `(k + D - 1) z_k = eps delta_{k,1} + lam^{-2} sum_{i+j=k-1} z_i z_j
///                    - a_{k-1} lam^{-m}`,
/// exact in rational arithmetic for rational inputs.
pub fn strong_small_u_series(
    m: usize,
    a: &[Rat],
    d: &Rat,
    eps_tilde: &Rat,
    lam_tilde: &Rat,
    order: usize,
) -> Result<RatSeries> {
    if order > 8 {
        return Err(CoreError::InvalidInput(
            "strong small-u expansion supported to order 8".into(),
        ));
    }
    if lam_tilde.is_zero() {
        return Err(CoreError::InvalidInput("lambda_tilde must be nonzero".into()));
    }
    let lam_m2 = Rat::one() / (lam_tilde * lam_tilde);
    let mut lam_mm = Rat::one();
    for _ in 0..m {
        lam_mm /= lam_tilde;
    }
    let coeff_a = |k: usize| -> Rat {
        if k < 2 || k > m {
            Rat::zero()
        } else {
            a[k - 2].clone()
        }
    };
    let mut z = vec![Rat::zero(); order + 1];
    for k in 1..=order {
        let mut rhs = Rat::zero();
        if k == 1 {
            rhs += eps_tilde;
        }
        if k >= 3 {
            rhs -= coeff_a(k - 1) * &lam_mm;
        }
        let mut quad = Rat::zero();
        for i in 1..k.saturating_sub(1) {
            let j = k - 1 - i;
            if j >= 1 {
                quad += &z[i] * &z[j];
            }
        }
        rhs += &lam_m2 * quad;
        let denom = rat_int(k as i64) + d - Rat::one();
        z[k] = rhs / denom;
    }
    Ok(RatSeries::new(1, z[1..].to_vec()))
}

/// Float wrapper around [`strong_small_u_series`] for a [`PotentialSpec`].
pub fn strong_small_u_series_f64(
    spec: &PotentialSpec,
    eps_tilde: f64,
    lam_tilde: f64,
    order: usize,
) -> Result<Vec<f64>> {
    let a: Vec<Rat> = spec.coefficients.iter().map(|&c| rat_from_f64(c)).collect();
    let s = strong_small_u_series(
        spec.degree(),
        &a,
        &rat_from_f64(spec.dimension),
        &rat_from_f64(eps_tilde),
        &rat_from_f64(lam_tilde),
        order,
    )?;
    Ok((1..=order as i64)
        .map(|p| {
            use num_traits::ToPrimitive;
            s.coeff(p).to_f64().unwrap()
        })
        .collect())
}
