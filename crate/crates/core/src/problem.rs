//! Problem definitions: the polynomial potential, unit conventions and
//! quantum-number bookkeeping shared by every other module.

use crate::error::{CoreError, Result};
use serde::{Deserialize, Serialize};

/// Radial anharmonic oscillator `V(r) = (1/g^2) sum_k a_k (g r)^k`,
/// `k = 2..=m`, stored internally as coefficients of `r^k` (that is,
/// `a_k g^{k-2}`) so the harmonic limit `g = 0` needs no division by `g`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PotentialSpec {
    /// Dimension `D > 0`, treated as a continuous parameter.
    pub dimension: f64,
    /// Coupling constant `g >= 0`.
    pub coupling: f64,
    /// Anharmonicity coefficients `a_2 ..= a_m` (dimensionless); absent
    /// monomials are stored as exact zero.
    pub coefficients: Vec<f64>,
}

impl PotentialSpec {
    /// Potential of degree `m = coefficients.len() + 1` with `a_2` first.
    pub fn new(dimension: f64, coupling: f64, coefficients: Vec<f64>) -> Result<Self> {
        if !(dimension > 0.0) || !dimension.is_finite() {
            return Err(CoreError::InvalidInput(format!(
                "dimension must be positive, got {dimension}"
            )));
        }
        if !(coupling >= 0.0) || !coupling.is_finite() {
            return Err(CoreError::InvalidInput(format!(
                "coupling must be >= 0, got {coupling}"
            )));
        }
        if coefficients.is_empty() {
            return Err(CoreError::InvalidInput(
                "potential needs at least the a2 coefficient".into(),
            ));
        }
        let a2 = coefficients[0];
        let am = *coefficients.last().unwrap();
        if !(a2 > 0.0) || !(am > 0.0) {
            return Err(CoreError::InvalidInput(format!(
                "positivity assumptions require a2 > 0 and a_m > 0, got a2={a2}, am={am}"
            )));
        }
        Ok(Self {
            dimension,
            coupling,
            coefficients,
        })
    }

    /// The cubic oscillator `V = a2 r^2 + a3 g r^3`.
    pub fn cubic(dimension: f64, coupling: f64) -> Result<Self> {
        Self::new(dimension, coupling, vec![1.0, 1.0])
    }

    /// Highest monomial degree `m`.
    pub fn degree(&self) -> usize {
        self.coefficients.len() + 1
    }

    /// `a_k` for `k = 2..=m`, zero outside that range.
    pub fn a(&self, k: usize) -> f64 {
        if k < 2 || k > self.degree() {
            0.0
        } else {
            self.coefficients[k - 2]
        }
    }

    /// Coefficient of `r^k` in `V`, i.e. `a_k g^{k-2}`; well defined at `g = 0`.
    pub fn r_power_coefficient(&self, k: usize) -> f64 {
        if k < 2 || k > self.degree() {
            return 0.0;
        }
        self.a(k) * self.coupling.powi(k as i32 - 2)
    }

    /// `V(r)` evaluated through the `r^k` coefficients; total on `r >= 0`.
    pub fn evaluate(&self, r: f64) -> f64 {
        let mut acc = 0.0;
        // Horner in r from the top degree down to r^2
        for k in (2..=self.degree()).rev() {
            acc = acc * r + self.r_power_coefficient(k);
        }
        acc * r * r
    }

    /// Replaces the dimension, keeping the potential.
    pub fn with_dimension(&self, dimension: f64) -> Self {
        Self {
            dimension,
            ..self.clone()
        }
    }
}

/// Unit conventions. The default pair `hbar = 1`, `M = 1/2` makes the
/// effective coupling equal to `g` and the scaled variable equal to `r`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Conventions {
    pub hbar: f64,
    pub mass: f64,
}

impl Default for Conventions {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            mass: 0.5,
        }
    }
}

impl Conventions {
    /// `hbar^2 / 2M`; equals 1 under the defaults.
    pub fn kinetic_factor(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mass)
    }
}

/// Effective coupling `lambda = (hbar^2/2M)^{1/4} g` of the weak-coupling
/// scaled equation.
pub fn effective_coupling(spec: &PotentialSpec, conv: &Conventions) -> f64 {
    conv.kinetic_factor().powf(0.25) * spec.coupling
}

/// Effective coupling `lambda_tilde = (hbar^2/2M)^{1/(m+2)} g^{4/(m+2)}` of
/// the strong-coupling scaled equation; requires `g > 0`.
pub fn strong_effective_coupling(spec: &PotentialSpec, conv: &Conventions) -> Result<f64> {
    if spec.coupling <= 0.0 {
        return Err(CoreError::InvalidInput(
            "strong-coupling scaling needs g > 0".into(),
        ));
    }
    let m = spec.degree() as f64;
    let gamma = spec.coupling.powf(4.0 / (m + 2.0));
    Ok(conv.kinetic_factor().powf(1.0 / (m + 2.0)) * gamma)
}

/// Number of hyperspherical harmonics with angular momentum `l` in `D >= 2`
/// dimensions: `(2l + D - 2) (l + D - 3)! / (l! (D - 2)!)`, with `N(D,0) = 1`.
pub fn degeneracy(dimension: u32, l: u32) -> Result<u64> {
    if dimension < 2 {
        return Err(CoreError::InvalidInput(
            "degeneracy is defined for D >= 2".into(),
        ));
    }
    if l == 0 {
        return Ok(1);
    }
    if dimension == 2 {
        // (l - 1)!/l! = 1/l, hence 2l * (1/l) = 2
        return Ok(2);
    }
    let d = dimension as u64;
    let l = l as u64;
    let mut num: u128 = (2 * l + d - 2) as u128;
    // (l + d - 3)! / l! = product_{j=l+1}^{l+d-3} j  (empty for d = 3)
    for j in (l + 1)..=(l + d - 3) {
        num *= j as u128;
    }
    let mut den: u128 = 1;
    for j in 1..=(d - 2) {
        den *= j as u128;
    }
    Ok((num / den) as u64)
}

/// Bound-state label. For `D = 1` the states are indexed by the excitation
/// number `n` stored in `n_r` with `l = 0`; `n = 1` is the odd-parity state
/// (equivalent to the `D = 3` ground state) and `n = 2` the second even state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateLabel {
    pub n_r: u32,
    pub l: u32,
}

impl StateLabel {
    pub fn ground() -> Self {
        Self { n_r: 0, l: 0 }
    }

    pub fn new(n_r: u32, l: u32) -> Self {
        Self { n_r, l }
    }

    /// Validates the label against the conventions for dimension `d`.
    pub fn validate(&self, d: f64) -> Result<()> {
        if d == 1.0 && self.l != 0 {
            return Err(CoreError::InvalidInput(
                "for D = 1 only l = 0 is admitted; use the excitation number n_r".into(),
            ));
        }
        Ok(())
    }

    /// Effective dimension of the equivalent l = 0 problem. A state `(n_r, l)`
    /// in dimension `D` has the same radial equation, with measure
    /// `r^{D + 2l - 1}`, as `(n_r, 0)` in `D + 2l` dimensions. For `D = 1`,
    /// `n = 1` maps to the `D = 3` ground state and `n = 2` to the one-node
    /// even state at `D_eff = 1`.
    pub fn reduced(&self, d: f64) -> Result<(f64, u32)> {
        self.validate(d)?;
        if d == 1.0 {
            return match self.n_r {
                0 => Ok((1.0, 0)),
                1 => Ok((3.0, 0)),
                2 => Ok((1.0, 1)),
                n => Err(CoreError::InvalidInput(format!(
                    "D = 1 excitation n = {n} not supported (n <= 2)"
                ))),
            };
        }
        Ok((d + 2.0 * self.l as f64, self.n_r))
    }
}

/// Centrifugal strength of the reduced one-dimensional form
/// `-u'' + [V + c/r^2] u = E u` with `u = r^{(D-1)/2} Psi`:
/// `c = (2l + D - 1)(2l + D - 3)/4`.
pub fn centrifugal_strength(d: f64, l: u32) -> f64 {
    let t = 2.0 * l as f64 + d;
    (t - 1.0) * (t - 3.0) / 4.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn potential_harmonic_limit() {
        let spec = PotentialSpec::new(3.0, 0.0, vec![1.0]).unwrap();
        assert_eq!(spec.evaluate(2.0), 4.0);
    }

    #[test]
    fn potential_cubic_values() {
        let spec = PotentialSpec::cubic(3.0, 1.0).unwrap();
        assert_eq!(spec.evaluate(1.0), 2.0);
        let spec = PotentialSpec::cubic(3.0, 0.1).unwrap();
        assert!((spec.evaluate(2.0) - 4.8).abs() < 1e-14);
    }

    #[test]
    fn potential_zero_at_origin_positive_elsewhere() {
        let spec = PotentialSpec::new(2.0, 0.7, vec![0.5, 0.0, 1.0]).unwrap();
        assert_eq!(spec.evaluate(0.0), 0.0);
        for i in 1..50 {
            let r = 0.2 * i as f64;
            assert!(spec.evaluate(r) > 0.0, "V({r}) must be positive");
        }
    }

    #[test]
    fn potential_rejects_bad_input() {
        assert!(PotentialSpec::new(3.0, 1.0, vec![-1.0]).is_err());
        assert!(PotentialSpec::new(3.0, 1.0, vec![1.0, -2.0]).is_err());
        assert!(PotentialSpec::new(-1.0, 1.0, vec![1.0]).is_err());
        assert!(PotentialSpec::new(3.0, -0.5, vec![1.0]).is_err());
    }

    #[test]
    fn effective_couplings() {
        let conv = Conventions::default();
        let spec = PotentialSpec::cubic(3.0, 1.0).unwrap();
        assert_eq!(effective_coupling(&spec, &conv), 1.0);
        let spec = PotentialSpec::cubic(3.0, 10.0).unwrap();
        assert_eq!(effective_coupling(&spec, &conv), 10.0);
        // hbar = 2, M = 1: lambda = (4/2)^{1/4} g = 2^{1/4}
        let odd = Conventions {
            hbar: 2.0,
            mass: 1.0,
        };
        assert!((effective_coupling(&spec, &odd) / 10.0 - 1.189207115002721).abs() < 1e-15);
    }

    #[test]
    fn strong_coupling_scaling() {
        let conv = Conventions::default();
        let spec = PotentialSpec::cubic(3.0, 1.0).unwrap();
        assert_eq!(strong_effective_coupling(&spec, &conv).unwrap(), 1.0);
        let spec = PotentialSpec::cubic(3.0, 10.0).unwrap();
        assert!(
            (strong_effective_coupling(&spec, &conv).unwrap() - 10f64.powf(0.8)).abs() < 1e-14
        );
        let spec = PotentialSpec::cubic(3.0, 32.0).unwrap();
        assert!((strong_effective_coupling(&spec, &conv).unwrap() - 16.0).abs() < 1e-13);
        let spec = PotentialSpec::cubic(3.0, 0.0).unwrap();
        assert!(strong_effective_coupling(&spec, &conv).is_err());
    }

    #[test]
    fn defaults_make_lambda_equal_g() {
        let conv = Conventions::default();
        for g in [0.3, 1.7, 42.0] {
            for m_extra in 0..3 {
                let mut coef = vec![1.0; 2 + m_extra];
                coef[0] = 2.0;
                let spec = PotentialSpec::new(2.5, g, coef).unwrap();
                assert!((effective_coupling(&spec, &conv) - g).abs() < 1e-15);
                let m = spec.degree() as f64;
                let expect = g.powf(4.0 / (m + 2.0));
                assert!(
                    (strong_effective_coupling(&spec, &conv).unwrap() - expect).abs()
                        < 1e-14 * expect
                );
            }
        }
    }

    #[test]
    fn degeneracy_values() {
        // D = 3 reduces to 2l + 1
        for l in 0..=20 {
            assert_eq!(degeneracy(3, l).unwrap(), (2 * l + 1) as u64);
        }
        assert_eq!(degeneracy(2, 5).unwrap(), 2);
        assert_eq!(degeneracy(6, 0).unwrap(), 1);
        assert_eq!(degeneracy(6, 1).unwrap(), 6);
        for d in 2..=8 {
            for l in 0..=12 {
                assert!(degeneracy(d, l).unwrap() >= 1);
            }
        }
        assert!(degeneracy(1, 0).is_err());
    }

    #[test]
    fn state_reduction() {
        assert_eq!(StateLabel::new(0, 1).reduced(2.0).unwrap(), (4.0, 0));
        assert_eq!(StateLabel::new(0, 2).reduced(2.0).unwrap(), (6.0, 0));
        assert_eq!(StateLabel::new(1, 0).reduced(3.0).unwrap(), (3.0, 1));
        assert_eq!(StateLabel::new(1, 0).reduced(1.0).unwrap(), (3.0, 0));
        assert_eq!(StateLabel::new(2, 0).reduced(1.0).unwrap(), (1.0, 1));
        assert!(StateLabel::new(0, 1).validate(1.0).is_err());
    }

    #[test]
    fn centrifugal_depends_only_on_2l_plus_d() {
        assert_eq!(centrifugal_strength(2.0, 2), centrifugal_strength(6.0, 0));
        assert_eq!(centrifugal_strength(3.0, 0), 0.0);
        assert_eq!(centrifugal_strength(2.0, 0), -0.25);
        assert_eq!(centrifugal_strength(6.0, 0), 3.75);
    }
}
