//! Double-double mantissa with a separate 64-bit binary exponent.
//!
//! Products such as `|ρ^PT|^24 |ρ|^24` and their squares fall far below the
//! smallest `f64`, so the moment grids accumulate in this format: about 32
//! significant decimal digits and an exponent range that never underflows in
//! practice.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// `(hi + lo) · 2^exp` with `0.5 ≤ |hi| < 1` and `|lo| ≤ ulp(hi)/2`, or zero.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ExtFloat {
    hi: f64,
    lo: f64,
    exp: i64,
}

fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let e = ((bits >> 52) & 0x7ff) as i64;
    if e == 0 {
        // subnormal: scale into the normal range first
        let (m, e2) = frexp(x * f64::from_bits(((1023 + 54) as u64) << 52));
        return (m, e2 - 54);
    }
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (m, e - 1022)
}

/// `x · 2^e` without intermediate overflow; flushes to zero below the
/// subnormal range.
fn ldexp(x: f64, e: i64) -> f64 {
    let mut x = x;
    let mut e = e;
    while e > 1000 {
        x *= f64::from_bits((1023 + 1000) << 52);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= f64::from_bits((1023 - 1000) << 52);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * f64::from_bits(((1023 + e) as u64) << 52)
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl ExtFloat {
    pub const ZERO: ExtFloat = ExtFloat {
        hi: 0.0,
        lo: 0.0,
        exp: 0,
    };

    pub const ONE: ExtFloat = ExtFloat {
        hi: 0.5,
        lo: 0.0,
        exp: 1,
    };

    fn normalized(hi: f64, lo: f64, exp: i64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        if hi == 0.0 {
            return Self::ZERO;
        }
        let (m, e) = frexp(hi);
        // scaling by a power of two is exact for both parts
        let lo = ldexp(lo, -e);
        Self { hi: m, lo, exp: exp + e }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::normalized(x, 0.0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.hi == 0.0
    }

    /// Nearest `f64`; saturates to `±inf` or flushes to `±0`.
    pub fn to_f64(&self) -> f64 {
        ldexp(self.hi + self.lo, self.exp)
    }

    /// Binary exponent with `|x| = m · 2^exp`, `0.5 ≤ m < 1`.
    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn abs(&self) -> Self {
        if self.hi < 0.0 {
            -*self
        } else {
            *self
        }
    }

    /// `x · 2^e`, exact.
    pub fn scale_pow2(&self, e: i64) -> Self {
        if self.is_zero() {
            return *self;
        }
        Self {
            exp: self.exp + e,
            ..*self
        }
    }

    /// Square root of a non-negative value, as an `f64`.
    pub fn sqrt_f64(&self) -> f64 {
        if self.hi <= 0.0 {
            return 0.0;
        }
        let m = self.hi + self.lo;
        if self.exp % 2 == 0 {
            ldexp(m.sqrt(), self.exp / 2)
        } else {
            ldexp((2.0 * m).sqrt(), (self.exp - 1) / 2)
        }
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = Self::ONE;
        let mut base = *self;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    /// `|self − other| / max(|self|, |other|)`, as an `f64`.
    pub fn rel_diff(&self, other: &Self) -> f64 {
        let d = (*self - *other).abs();
        let m = if self.abs() > other.abs() {
            self.abs()
        } else {
            other.abs()
        };
        if m.is_zero() {
            return 0.0;
        }
        (d / m).to_f64()
    }

    /// Decimal scientific notation with `digits` significant digits; works
    /// outside the `f64` exponent range.
    pub fn to_sci_string(&self, digits: usize) -> String {
        if self.is_zero() {
            return format!("{:.*e}", digits.saturating_sub(1), 0.0);
        }
        let m = self.hi + self.lo;
        let l10 = m.abs().log10() + self.exp as f64 * std::f64::consts::LOG10_2;
        let mut d = l10.floor();
        let mut mant = 10f64.powf(l10 - d);
        if mant >= 10.0 {
            mant /= 10.0;
            d += 1.0;
        }
        let sign = if m < 0.0 { "-" } else { "" };
        format!("{sign}{:.*}e{}", digits.saturating_sub(1), mant, d as i64)
    }
}

impl From<f64> for ExtFloat {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl Neg for ExtFloat {
    type Output = ExtFloat;

    fn neg(self) -> ExtFloat {
        Self {
            hi: -self.hi,
            lo: -self.lo,
            exp: self.exp,
        }
    }
}

impl Add for ExtFloat {
    type Output = ExtFloat;

    fn add(self, rhs: ExtFloat) -> ExtFloat {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (big, small) = if self.exp >= rhs.exp { (self, rhs) } else { (rhs, self) };
        let shift = small.exp - big.exp;
        if shift < -110 {
            return big;
        }
        let (bh, bl) = (ldexp(small.hi, shift), ldexp(small.lo, shift));
        let (s, e) = two_sum(big.hi, bh);
        let (t, f) = two_sum(big.lo, bl);
        let (s, e) = quick_two_sum(s, e + t);
        let (s, e) = quick_two_sum(s, e + f);
        Self::normalized(s, e, big.exp)
    }
}

impl Sub for ExtFloat {
    type Output = ExtFloat;

    fn sub(self, rhs: ExtFloat) -> ExtFloat {
        self + (-rhs)
    }
}

impl Mul for ExtFloat {
    type Output = ExtFloat;

    fn mul(self, rhs: ExtFloat) -> ExtFloat {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        Self::normalized(p, e, self.exp + rhs.exp)
    }
}

impl Div for ExtFloat {
    type Output = ExtFloat;

    /// Panics on division by zero.
    fn div(self, rhs: ExtFloat) -> ExtFloat {
        assert!(!rhs.is_zero(), "ExtFloat division by zero");
        if self.is_zero() {
            return Self::ZERO;
        }
        let a = Self { exp: 0, ..self };
        let b = Self { exp: 0, ..rhs };
        let q1 = a.hi / b.hi;
        let r = a - b * ExtFloat::from_f64(q1);
        let q2 = (r.hi * ldexp(1.0, r.exp)) / b.hi;
        let r = r - b * ExtFloat::from_f64(q2);
        let q3 = (r.hi * ldexp(1.0, r.exp)) / b.hi;
        let q = ExtFloat::from_f64(q1) + ExtFloat::from_f64(q2) + ExtFloat::from_f64(q3);
        q.scale_pow2(self.exp - rhs.exp)
    }
}

impl PartialOrd for ExtFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let d = *self - *other;
        d.hi.partial_cmp(&0.0)
    }
}

impl fmt::Display for ExtFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci_string(f.precision().unwrap_or(17)))
    }
}
