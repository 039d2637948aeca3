//! Field abstraction shared by the exact and floating-point code paths.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{Num, Signed, ToPrimitive, Zero};

use crate::Rational;

/// A field element usable by the polynomial, hypergeometric and
/// reconstruction routines.
///
/// Implemented for `f32`, `f64` and [`Rational`]. Exact arithmetic is only
/// guaranteed for the rational instance.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + Signed
{
    fn from_int(n: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// Nearest double; may underflow to zero for tiny rationals.
    fn to_f64(&self) -> f64;

    fn is_exact() -> bool {
        false
    }
}

impl Scalar for f64 {
    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_int(n: i64) -> Self {
        n as f32
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

impl Scalar for Rational {
    fn from_int(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn is_exact() -> bool {
        true
    }
}

/// Shorthand for `num/den` as an exact rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Exact division, reporting a zero divisor instead of panicking.
pub fn checked_div(a: &Rational, b: &Rational) -> crate::Result<Rational> {
    if b.is_zero() {
        Err(crate::Error::DivisionByZero)
    } else {
        Ok(a / b)
    }
}

/// Binary exponent decomposition `r = m · 2^e` with `0.5 <= |m| < 1`.
/// Returns `None` for zero.
pub fn rational_frexp(r: &Rational) -> Option<(f64, i64)> {
    if r.is_zero() {
        return None;
    }
    let num = r.numer().abs();
    let den = r.denom();
    // Shift so the integer quotient carries 64 or 65 significant bits.
    let shift = 64 + den.bits() as i64 - num.bits() as i64;
    let q: BigInt = if shift >= 0 {
        (num << shift as usize) / den
    } else {
        num / (den << (-shift) as usize)
    };
    let qbits = q.bits() as i64;
    let mut m = q.to_f64().unwrap_or(f64::MAX) / 2f64.powi(qbits as i32);
    let mut e = qbits - shift;
    if m >= 1.0 {
        m /= 2.0;
        e += 1;
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    Some((sign * m, e))
}

/// Rational → f64 that does not overflow in intermediate big-integer
/// conversions.
pub fn rational_to_f64(r: &Rational) -> f64 {
    match rational_frexp(r) {
        None => 0.0,
        Some((m, e)) => {
            if e > 1024 {
                m.signum() * f64::INFINITY
            } else if e < -1080 {
                0.0
            } else {
                // two steps so that neither factor over/underflows on its own
                let half = e / 2;
                m * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frexp_matches_f64_for_ordinary_values() {
        for &(p, q) in &[(1i64, 3i64), (-7, 3876), (1, 256), (123456789, 1000), (-1, 1)] {
            let r = rat(p, q);
            let exact = p as f64 / q as f64;
            assert!((rational_to_f64(&r) - exact).abs() <= exact.abs() * 1e-15);
        }
    }

    #[test]
    fn frexp_handles_huge_exponents() {
        let tiny = Rational::new(BigInt::from(3), BigInt::from(2).pow(3000u32));
        let (m, e) = rational_frexp(&tiny).unwrap();
        assert!((m - 0.75).abs() < 1e-15);
        // 3 / 2^3000 = 0.75 · 2^-2998
        assert_eq!(e, -2998);
        assert_eq!(rational_to_f64(&tiny), 0.0);
    }

    #[test]
    fn parse_roundtrip() {
        assert_eq!(parse_rational("-2663/860160"), Some(rat(-2663, 860160)));
        assert_eq!(parse_rational(" 5 "), Some(int(5)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn checked_div_rejects_zero() {
        assert_eq!(checked_div(&int(1), &int(0)), Err(crate::Error::DivisionByZero));
    }
}
