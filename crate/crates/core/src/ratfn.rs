//! Ratios of univariate polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Poly;
use crate::{Error, Rational, Result, Scalar};

/// `num(k) / den(k)` with `den != 0`.
///
/// Constructors reduce by the polynomial gcd. Over [`Rational`] the pair is
/// further scaled so that the denominator has integer coefficients with
/// content 1 and a positive leading coefficient, which makes structural
/// equality coincide with equality of functions.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFn<T> {
    num: Poly<T>,
    den: Poly<T>,
}

impl<T: Scalar> RatFn<T> {
    /// Builds and reduces `num / den`. Errors on a zero denominator.
    pub fn new(num: Poly<T>, den: Poly<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.degree().unwrap_or(0) > 0 {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        } else {
            (num, den)
        };
        let lead = den.leading().cloned().unwrap_or_else(T::one);
        let inv = T::one() / lead;
        Ok(Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    /// Coefficients highest degree first.
    pub fn from_ints_desc(num: &[i64], den: &[i64]) -> Result<Self> {
        Self::new(Poly::from_ints_desc(num), Poly::from_ints_desc(den))
    }

    pub fn constant(c: T) -> Self {
        Self {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn numerator(&self) -> &Poly<T> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<T> {
        &self.den
    }

    /// Value at `k`; a pole is reported as [`Error::DivisionByZero`].
    pub fn eval(&self, k: &T) -> Result<T> {
        let d = self.den.eval(k);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(k) / d)
    }

    /// Sum of two functions, reduced.
    pub fn add(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        let den = &self.den * &other.den;
        Self::new(num, den).expect("product of non-zero denominators")
    }

    pub fn mul(&self, other: &Self) -> Self {
        let num = &self.num * &other.num;
        let den = &self.den * &other.den;
        Self::new(num, den).expect("product of non-zero denominators")
    }

    /// `self(k + s)`.
    pub fn shift(&self, s: &T) -> Self {
        Self::new(self.num.shift(s), self.den.shift(s)).expect("shift keeps the denominator")
    }

    /// Equality as functions, by cross-multiplication.
    pub fn same_function(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl RatFn<Rational> {
    /// Scales to an integer, content-1 denominator with positive leading
    /// coefficient.
    pub fn canonical(&self) -> Self {
        let mut l = BigInt::one();
        for c in self.num.coeffs().iter().chain(self.den.coeffs()) {
            l = l.lcm(c.denom());
        }
        let scaled: Vec<BigInt> = self
            .den
            .coeffs()
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let content = scaled.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let mut factor = Rational::new(l, content);
        if self.den.leading().is_some_and(|c| c.is_negative()) {
            factor = -factor;
        }
        Self {
            num: self.num.scale(&factor),
            den: self.den.scale(&factor),
        }
    }

    /// Constructor returning the canonical representative.
    pub fn canonical_new(num: Poly<Rational>, den: Poly<Rational>) -> Result<Self> {
        Ok(Self::new(num, den)?.canonical())
    }

    /// Numerator and denominator as integer coefficient vectors (ascending),
    /// scaled by the smallest positive factor that clears all fractions.
    pub fn integer_coeffs(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let c = self.canonical();
        let to_ints = |p: &Poly<Rational>| -> Vec<BigInt> {
            p.coeffs().iter().map(|x| x.to_integer()).collect()
        };
        // the numerator may still carry a rational content
        if c.num.coeffs().iter().all(|x| x.is_integer()) {
            (to_ints(&c.num), to_ints(&c.den))
        } else {
            let mut l = BigInt::one();
            for x in c.num.coeffs() {
                l = l.lcm(x.denom());
            }
            let s = Rational::from_integer(l);
            (to_ints(&c.num.scale(&s)), to_ints(&c.den.scale(&s)))
        }
    }
}

impl<T: Scalar> fmt::Display for RatFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
