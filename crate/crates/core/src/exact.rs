//! Pochhammer symbols, factorials and half-integer gamma values.
//!
//! Closed forms such as the Bures determinant moments are products of
//! `Γ(m/2)` factors that are rational only after the `√π` factors cancel.
//! [`PiMultiple`] keeps the power of `√π` explicit so that cancellation can be
//! checked instead of assumed.

use std::fmt;
use std::ops::{Div, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::{int, rat};
use crate::{Error, Rational, Result, Scalar};

/// Rising factorial `a (a+1) ··· (a+j-1)`; the empty product is 1.
pub fn pochhammer<T: Scalar>(a: &T, j: u32) -> T {
    let mut acc = T::one();
    let mut x = a.clone();
    for _ in 0..j {
        acc = acc * x.clone();
        x = x + T::one();
    }
    acc
}

pub fn factorial(j: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=j {
        acc *= i;
    }
    Rational::from_integer(acc)
}

/// A quantity `coefficient · (√π)^sqrt_pi_power`.
///
/// Normalization constants like `128/π` carry `sqrt_pi_power = -2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiMultiple {
    pub coefficient: Rational,
    pub sqrt_pi_power: i32,
}

/// `Γ(m/2)` for positive integer `m`; `sqrt_pi_power` is 1 exactly when `m`
/// is odd.
pub type GammaHalfValue = PiMultiple;

impl PiMultiple {
    pub fn rational(q: Rational) -> Self {
        Self {
            coefficient: q,
            sqrt_pi_power: 0,
        }
    }

    /// `q · π^pi_power`.
    pub fn with_pi_power(q: Rational, pi_power: i32) -> Self {
        Self {
            coefficient: q,
            sqrt_pi_power: 2 * pi_power,
        }
    }

    /// The rational value, provided every `√π` has cancelled.
    pub fn into_rational(self) -> Result<Rational> {
        if self.sqrt_pi_power == 0 || self.coefficient.is_zero() {
            Ok(self.coefficient)
        } else {
            Err(Error::PiResidue {
                sqrt_pi_power: self.sqrt_pi_power,
            })
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.coefficient.to_f64() * std::f64::consts::PI.sqrt().powi(self.sqrt_pi_power)
    }

    pub fn checked_div(&self, rhs: &PiMultiple) -> Result<PiMultiple> {
        if rhs.coefficient.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.clone() / rhs.clone())
    }

    pub fn recip(&self) -> Result<PiMultiple> {
        PiMultiple::rational(Rational::one()).checked_div(self)
    }
}

impl Mul for PiMultiple {
    type Output = PiMultiple;

    fn mul(self, rhs: PiMultiple) -> PiMultiple {
        PiMultiple {
            coefficient: self.coefficient * rhs.coefficient,
            sqrt_pi_power: self.sqrt_pi_power + rhs.sqrt_pi_power,
        }
    }
}

impl Mul<Rational> for PiMultiple {
    type Output = PiMultiple;

    fn mul(self, rhs: Rational) -> PiMultiple {
        PiMultiple {
            coefficient: self.coefficient * rhs,
            sqrt_pi_power: self.sqrt_pi_power,
        }
    }
}

impl Div for PiMultiple {
    type Output = PiMultiple;

    /// Panics on a zero divisor; see [`PiMultiple::checked_div`].
    fn div(self, rhs: PiMultiple) -> PiMultiple {
        PiMultiple {
            coefficient: self.coefficient / rhs.coefficient,
            sqrt_pi_power: self.sqrt_pi_power - rhs.sqrt_pi_power,
        }
    }
}

impl fmt::Display for PiMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sqrt_pi_power {
            0 => write!(f, "{}", self.coefficient),
            p if p % 2 == 0 => write!(f, "{}·π^{}", self.coefficient, p / 2),
            p => write!(f, "{}·π^({}/2)", self.coefficient, p),
        }
    }
}

/// `Γ(m/2)` from `Γ(1/2) = √π`, `Γ(1) = 1` and `Γ(x+1) = xΓ(x)`.
///
/// Panics if `m == 0` (pole).
pub fn gamma_half(m: u32) -> GammaHalfValue {
    assert!(m >= 1, "Γ(0) is a pole");
    if m.is_multiple_of(2) {
        // Γ(m/2) = (m/2 - 1)!
        PiMultiple::rational(factorial(m / 2 - 1))
    } else {
        // Γ(j + 1/2) = (1/2)_j √π
        let j = (m - 1) / 2;
        PiMultiple {
            coefficient: pochhammer(&rat(1, 2), j),
            sqrt_pi_power: 1,
        }
    }
}

/// `Γ(x)` for `x` a positive half-integer or integer given as a rational.
pub fn gamma_of(x: &Rational) -> Result<GammaHalfValue> {
    let twice = x * int(2);
    if !twice.is_integer() || twice <= Rational::zero() {
        return Err(Error::InvalidInput(format!(
            "Γ({x}) is not a positive half-integer"
        )));
    }
    let m: u32 = twice
        .to_integer()
        .try_into()
        .map_err(|_| Error::InvalidInput(format!("Γ({x}) argument too large")))?;
    Ok(gamma_half(m))
}

/// `2^e` as an exact rational for any sign of `e`.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs() as usize;
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(9, 2), 0), int(1));
        assert_eq!(pochhammer(&rat(17, 2), 2), rat(323, 4));
        assert_eq!(pochhammer(&int(-1), 3), int(0));
    }

    #[test]
    fn pochhammer_on_floats() {
        assert!((pochhammer(&8.5f64, 2) - 80.75).abs() < 1e-12);
    }

    #[test]
    fn gamma_half_examples() {
        assert_eq!(gamma_half(2), PiMultiple::rational(int(1)));
        assert_eq!(
            gamma_half(9),
            PiMultiple {
                coefficient: rat(105, 16),
                sqrt_pi_power: 1
            }
        );
        assert_eq!(gamma_half(13).coefficient, rat(10395, 64));
        assert_eq!(gamma_half(13).sqrt_pi_power, 1);
    }

    #[test]
    fn factorial_examples() {
        assert_eq!(factorial(0), int(1));
        assert_eq!(factorial(5), int(120));
        assert_eq!(factorial(12), int(479001600));
    }

    #[test]
    fn pi_residue_is_reported() {
        let g = gamma_half(1);
        assert_eq!(
            g.clone().into_rational(),
            Err(Error::PiResidue { sqrt_pi_power: 1 })
        );
        assert_eq!((g.clone() / g).into_rational(), Ok(int(1)));
    }

    #[test]
    fn gamma_recursion_exact() {
        for m in 1..=60u32 {
            let lhs = gamma_half(m + 2);
            let rhs = gamma_half(m) * rat(m as i64, 2);
            assert_eq!(lhs, rhs, "m = {m}");
        }
    }

    proptest! {
        #[test]
        fn pochhammer_step(p in -40i64..40, q in 1i64..12, j in 0u32..50) {
            let a = rat(p, q);
            let next = pochhammer(&a, j + 1);
            let step = pochhammer(&a, j) * (a.clone() + int(j as i64));
            prop_assert_eq!(&next, &step);
            // num-rational keeps lowest terms with a positive denominator
            prop_assert!(next.numer().gcd(next.denom()) == BigInt::one());
            prop_assert!(next.denom() > &BigInt::zero());
        }
    }
}
