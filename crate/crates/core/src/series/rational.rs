//! Exact truncated power series over arbitrary-precision rationals and dense
//! univariate rational polynomials (used for coefficients that stay
//! polynomial in the dimension or the energy).

use crate::error::{CoreError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

/// Exact rational from an f64 (every finite f64 is a binary rational).
pub fn rat_from_f64(x: f64) -> Rat {
    Rat::from_f64(x).expect("finite f64")
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Dense polynomial over `Rat`; `coeffs[k]` multiplies `x^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatPoly {
    pub coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { coeffs: vec![c] }
        }
    }

    /// The monomial `c x^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    fn trim(mut self) -> Self {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Self { coeffs }.trim()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
        .trim()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }.trim()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }
}

/// Truncated Laurent series over `Rat`: `coeffs[k]` multiplies
/// `u^{offset + k}`; all arithmetic is exact through the stored order.
#[derive(Debug, Clone, PartialEq)]
pub struct RatSeries {
    pub offset: i64,
    pub coeffs: Vec<Rat>,
}

impl RatSeries {
    pub fn new(offset: i64, coeffs: Vec<Rat>) -> Self {
        Self { offset, coeffs }
    }

    pub fn zero(len: usize) -> Self {
        Self {
            offset: 0,
            coeffs: vec![Rat::zero(); len],
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest represented power.
    pub fn top_power(&self) -> i64 {
        self.offset + self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `u^p` (zero outside the stored window).
    pub fn coeff(&self, p: i64) -> Rat {
        let idx = p - self.offset;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Rat::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Drops leading zero coefficients, keeping the top power.
    fn normalized(mut self) -> Self {
        while !self.coeffs.is_empty() && self.coeffs[0].is_zero() {
            self.coeffs.remove(0);
            self.offset += 1;
        }
        self
    }

    pub fn truncate_top(mut self, top: i64) -> Self {
        let keep = (top - self.offset + 1).max(0) as usize;
        self.coeffs.truncate(keep);
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let offset = self.offset.min(other.offset);
        let top = self.top_power().min(other.top_power());
        let len = (top - offset + 1).max(0) as usize;
        let mut coeffs = vec![Rat::zero(); len];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let p = offset + i as i64;
            *c = self.coeff(p) + other.coeff(p);
        }
        Self { offset, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Truncated product; the result window is the tightest one both
    /// operands can fill exactly.
    pub fn mul(&self, other: &Self) -> Self {
        let a = self.clone().normalized();
        let b = other.clone().normalized();
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return Self {
                offset: a.offset + b.offset,
                coeffs: vec![],
            };
        }
        let offset = a.offset + b.offset;
        let top = (a.top_power() + b.offset).min(b.top_power() + a.offset);
        let len = (top - offset + 1) as usize;
        let mut coeffs = vec![Rat::zero(); len];
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if i + j < len {
                    coeffs[i + j] += ca * cb;
                }
            }
        }
        Self { offset, coeffs }
    }

    /// Division by a series with nonzero leading coefficient.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let b = other.clone().normalized();
        if b.coeffs.is_empty() || b.coeffs[0].is_zero() {
            return Err(CoreError::InvalidInput(
                "series division by zero leading coefficient".into(),
            ));
        }
        let a = self.clone();
        let offset = a.offset - b.offset;
        let len = a.coeffs.len().min(b.coeffs.len());
        let mut coeffs = vec![Rat::zero(); len];
        for n in 0..len {
            let mut acc = a.coeffs[n].clone();
            for k in 0..n {
                if n - k < b.coeffs.len() {
                    acc -= &coeffs[k] * &b.coeffs[n - k];
                }
            }
            coeffs[n] = acc / &b.coeffs[0];
        }
        Ok(Self { offset, coeffs })
    }

    /// Square root of a series with leading coefficient 1 and even leading
    /// power.
    pub fn sqrt_unit(&self) -> Result<Self> {
        let a = self.clone().normalized();
        if a.coeffs.is_empty() || !a.coeffs[0].is_one() || a.offset % 2 != 0 {
            return Err(CoreError::InvalidInput(
                "series sqrt needs unit leading coefficient and even leading power".into(),
            ));
        }
        let mut coeffs = vec![Rat::zero(); a.coeffs.len()];
        coeffs[0] = Rat::one();
        for n in 1..a.coeffs.len() {
            let mut acc = a.coeffs[n].clone();
            for k in 1..n {
                acc -= &coeffs[k] * &coeffs[n - k];
            }
            coeffs[n] = acc / rat_int(2);
        }
        Ok(Self {
            offset: a.offset / 2,
            coeffs,
        })
    }

    /// Term-by-term antiderivative (fails on a `u^{-1}` term).
    pub fn integrate(&self) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let p = self.offset + i as i64;
            if p == -1 && !c.is_zero() {
                return Err(CoreError::InvalidInput(
                    "cannot integrate a u^{-1} term inside a rational series".into(),
                ));
            }
            coeffs.push(if p == -1 {
                Rat::zero()
            } else {
                c / rat_int(p + 1)
            });
        }
        Ok(Self {
            offset: self.offset + 1,
            coeffs,
        })
    }

    pub fn differentiate(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * rat_int(self.offset + i as i64))
            .collect();
        Self {
            offset: self.offset - 1,
            coeffs,
        }
    }

    pub fn eval_f64(&self, u: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * u + c.to_f64().unwrap_or(f64::NAN);
        }
        acc * u.powi(self.offset as i32)
    }

    /// Plain-text export: one `power<TAB>numerator/denominator` line per term.
    pub fn export_text(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            let p = self.offset + i as i64;
            out.push_str(&format!("{}\t{}/{}\n", p, c.numer(), c.denom()));
        }
        out
    }
}

/// Float Laurent series, mirroring [`RatSeries`] where inputs are not exact.
#[derive(Debug, Clone)]
pub struct FloatSeries {
    pub offset: i64,
    pub coeffs: Vec<f64>,
}

impl FloatSeries {
    pub fn new(offset: i64, coeffs: Vec<f64>) -> Self {
        Self { offset, coeffs }
    }

    pub fn coeff(&self, p: i64) -> f64 {
        let idx = p - self.offset;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            0.0
        } else {
            self.coeffs[idx as usize]
        }
    }

    pub fn top_power(&self) -> i64 {
        self.offset + self.coeffs.len() as i64 - 1
    }

    fn normalized(mut self) -> Self {
        while !self.coeffs.is_empty() && self.coeffs[0] == 0.0 {
            self.coeffs.remove(0);
            self.offset += 1;
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let offset = self.offset.min(other.offset);
        let top = self.top_power().min(other.top_power());
        let len = (top - offset + 1).max(0) as usize;
        let coeffs = (0..len)
            .map(|i| self.coeff(offset + i as i64) + other.coeff(offset + i as i64))
            .collect();
        Self { offset, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Multiply by the monomial `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            offset: self.offset + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let a = self.clone().normalized();
        let b = other.clone().normalized();
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return Self {
                offset: a.offset + b.offset,
                coeffs: vec![],
            };
        }
        let offset = a.offset + b.offset;
        let top = (a.top_power() + b.offset).min(b.top_power() + a.offset);
        let len = (top - offset + 1) as usize;
        let mut coeffs = vec![0.0; len];
        for (i, ca) in a.coeffs.iter().enumerate() {
            if *ca == 0.0 {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if i + j < len {
                    coeffs[i + j] += ca * cb;
                }
            }
        }
        Self { offset, coeffs }
    }

    pub fn div(&self, other: &Self) -> Self {
        let b = other.clone().normalized();
        assert!(
            !b.coeffs.is_empty() && b.coeffs[0] != 0.0,
            "float series division by zero leading coefficient"
        );
        let offset = self.offset - b.offset;
        let len = self.coeffs.len().min(b.coeffs.len());
        let mut coeffs = vec![0.0; len];
        for n in 0..len {
            let mut acc = self.coeffs[n];
            for k in 0..n {
                if n - k < b.coeffs.len() {
                    acc -= coeffs[k] * b.coeffs[n - k];
                }
            }
            coeffs[n] = acc / b.coeffs[0];
        }
        Self { offset, coeffs }
    }

    /// Square root with unit leading coefficient and even leading power.
    pub fn sqrt_unit(&self) -> Self {
        let a = self.clone().normalized();
        assert!(
            !a.coeffs.is_empty() && (a.coeffs[0] - 1.0).abs() < 1e-14 && a.offset % 2 == 0,
            "float series sqrt needs unit leading coefficient"
        );
        let mut coeffs = vec![0.0; a.coeffs.len()];
        coeffs[0] = 1.0;
        for n in 1..a.coeffs.len() {
            let mut acc = a.coeffs[n];
            for k in 1..n {
                acc -= coeffs[k] * coeffs[n - k];
            }
            coeffs[n] = 0.5 * acc;
        }
        Self {
            offset: a.offset / 2,
            coeffs,
        }
    }

    pub fn differentiate(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * (self.offset + i as i64) as f64)
            .collect();
        Self {
            offset: self.offset - 1,
            coeffs,
        }
    }

    pub fn eval(&self, u: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * u + c;
        }
        acc * u.powi(self.offset as i32)
    }

    pub fn export_text(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{}\t{:.17e}\n", self.offset + i as i64, c));
        }
        out
    }
}

impl From<&RatSeries> for FloatSeries {
    fn from(s: &RatSeries) -> Self {
        Self {
            offset: s.offset,
            coeffs: s.coeffs.iter().map(|c| c.to_f64().unwrap()).collect(),
        }
    }
}

/// Signed magnitude helper for tests on rationals.
pub fn rat_abs(x: &Rat) -> Rat {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom(len: usize) -> RatSeries {
        // 1/(1-u) = sum u^k
        RatSeries::new(0, vec![Rat::one(); len])
    }

    #[test]
    fn mul_div_roundtrip() {
        let a = RatSeries::new(1, vec![rat_int(2), rat(1, 3), rat(-4, 7), rat(5, 2)]);
        let b = geom(4);
        let c = a.mul(&b);
        let back = c.div(&b).unwrap();
        for p in 1..=4 {
            assert_eq!(back.coeff(p), a.coeff(p), "power {p}");
        }
    }

    #[test]
    fn sqrt_of_one_plus_u() {
        let one_plus_u = RatSeries::new(0, vec![Rat::one(), Rat::one(), Rat::zero(), Rat::zero(), Rat::zero()]);
        let s = one_plus_u.sqrt_unit().unwrap();
        assert_eq!(s.coeff(1), rat(1, 2));
        assert_eq!(s.coeff(2), rat(-1, 8));
        assert_eq!(s.coeff(3), rat(1, 16));
        assert_eq!(s.coeff(4), rat(-5, 128));
        // and squaring goes back exactly
        let sq = s.mul(&s);
        assert_eq!(sq.coeff(0), Rat::one());
        assert_eq!(sq.coeff(1), Rat::one());
        assert_eq!(sq.coeff(2), Rat::zero());
    }

    #[test]
    fn mul_truncation_associative_within_order() {
        let a = RatSeries::new(0, (0..6).map(rat_int).map(|c| c + Rat::one()).collect());
        let b = RatSeries::new(0, (0..6).map(|k| rat(k + 2, 3)).collect());
        let c = RatSeries::new(0, (0..6).map(|k| rat(1, k + 1)).collect());
        let left = a.mul(&b).mul(&c);
        let right = a.mul(&b.mul(&c));
        for p in 0..=left.top_power().min(right.top_power()) {
            assert_eq!(left.coeff(p), right.coeff(p), "power {p}");
        }
    }

    #[test]
    fn integrate_differentiate() {
        let a = RatSeries::new(1, vec![rat_int(3), rat(1, 2), rat(-2, 5)]);
        let i = a.integrate().unwrap();
        assert_eq!(i.coeff(2), rat(3, 2));
        let d = i.differentiate();
        for p in 1..=3 {
            assert_eq!(d.coeff(p), a.coeff(p));
        }
    }

    #[test]
    fn laurent_division() {
        // (1) / (u^2 (1+u)) has offset -2
        let num = RatSeries::new(0, vec![Rat::one(), Rat::zero(), Rat::zero(), Rat::zero()]);
        let den = RatSeries::new(2, vec![Rat::one(), Rat::one(), Rat::zero(), Rat::zero()]);
        let q = num.div(&den).unwrap();
        assert_eq!(q.offset, -2);
        assert_eq!(q.coeff(-2), Rat::one());
        assert_eq!(q.coeff(-1), -Rat::one());
        assert_eq!(q.coeff(0), Rat::one());
    }

    #[test]
    fn poly_arithmetic() {
        // (1 + 2x)(3 - x) = 3 + 5x - 2x^2
        let p = RatPoly {
            coeffs: vec![rat_int(1), rat_int(2)],
        };
        let q = RatPoly {
            coeffs: vec![rat_int(3), rat_int(-1)],
        };
        let r = p.mul(&q);
        assert_eq!(r.coeffs, vec![rat_int(3), rat_int(5), rat_int(-2)]);
        assert_eq!(r.eval(&rat_int(2)), rat_int(5));
        assert_eq!(r.eval_f64(2.0), 5.0);
    }

    #[test]
    fn f64_rationalization_is_exact() {
        let x = 0.1f64;
        let r = rat_from_f64(x);
        assert_eq!(r.to_f64().unwrap(), x);
    }
}
