//! Terminating generalized hypergeometric sums `pFq(upper; lower; 1)`.
//!
//! Terms are produced by the running ratio
//! `t_{j+1} = t_j · Π(a_i + j) / (Π(b_i + j) · (j + 1))`.
//! A vanishing upper factor ends the series (even if a lower factor vanishes
//! at the same index); a vanishing lower factor on its own is reported as
//! [`Error::DegenerateDenominator`].

use num_traits::{One, Zero};

use crate::{Error, Rational, Result, Scalar};

/// Guard against sums whose parameters never produce a zero numerator.
pub const MAX_TERMS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct HypergeometricSpec<T> {
    pub upper: Vec<T>,
    pub lower: Vec<T>,
    /// Skip evaluation and return 1. Only sanctioned where a formula
    /// documents it (the `n = 1` case of `<|ρ^PT|^n>`).
    pub treat_sum_as_one: bool,
}

impl<T: Scalar> HypergeometricSpec<T> {
    pub fn new(upper: Vec<T>, lower: Vec<T>) -> Self {
        Self {
            upper,
            lower,
            treat_sum_as_one: false,
        }
    }

    pub fn sum_as_one(mut self, yes: bool) -> Self {
        self.treat_sum_as_one = yes;
        self
    }
}

impl HypergeometricSpec<Rational> {
    /// Index at which the first upper parameter `-m` (m ≥ 0) vanishes.
    pub fn termination_index(&self) -> Option<usize> {
        self.upper
            .iter()
            .filter(|a| a.is_integer() && **a <= Rational::zero())
            .map(|a| (-a.to_integer()).try_into().unwrap_or(usize::MAX))
            .min()
    }
}

/// The retained (non-zero-by-termination) terms of the series.
pub fn pfq_terms<T: Scalar>(spec: &HypergeometricSpec<T>) -> Result<Vec<T>> {
    let mut terms = Vec::new();
    let mut term = T::one();
    for j in 0..MAX_TERMS {
        terms.push(term.clone());
        let jj = T::from_int(j as i64);
        let mut num = T::one();
        let mut terminated = false;
        for a in &spec.upper {
            let f = a.clone() + jj.clone();
            if f.is_zero() {
                terminated = true;
                break;
            }
            num = num * f;
        }
        if terminated {
            return Ok(terms);
        }
        let mut den = T::from_int(j as i64 + 1);
        for b in &spec.lower {
            let f = b.clone() + jj.clone();
            if f.is_zero() {
                return Err(Error::DegenerateDenominator { index: j + 1 });
            }
            den = den * f;
        }
        term = term * num / den;
    }
    Err(Error::InvalidInput(format!(
        "series did not terminate within {MAX_TERMS} terms"
    )))
}

/// `Σ_j Π(a_i)_j / (Π(b_i)_j · j!)`, or 1 when `treat_sum_as_one` is set.
pub fn pfq_unit<T: Scalar>(spec: &HypergeometricSpec<T>) -> Result<T> {
    if spec.treat_sum_as_one {
        return Ok(T::one());
    }
    Ok(pfq_terms(spec)?
        .into_iter()
        .fold(T::zero(), |acc, t| acc + t))
}

/// A parameter `value + slope·ε`, used to take `ε → 0` limits of sums whose
/// literal parameters truncate or divide by zero.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbedParam {
    pub value: Rational,
    pub slope: Rational,
}

impl PerturbedParam {
    pub fn fixed(value: Rational) -> Self {
        Self {
            value,
            slope: Rational::zero(),
        }
    }

    pub fn new(value: Rational, slope: Rational) -> Self {
        Self { value, slope }
    }
}

/// `lim_{ε→0} pFq(upper(ε); lower(ε); 1)`.
///
/// Every factor `p + j` is linear in `ε`, so the leading behaviour of each
/// term is the product of leading coefficients times `ε^v`, where `v` counts
/// vanishing upper factors minus vanishing lower factors. Terms with `v > 0`
/// drop out; `v < 0` means the limit diverges. The sum stops at the first
/// index where an upper factor is identically zero.
pub fn pfq_unit_limit(upper: &[PerturbedParam], lower: &[PerturbedParam]) -> Result<Rational> {
    let mut sum = Rational::zero();
    let mut coeff = Rational::one();
    let mut valuation: i64 = 0;
    for j in 0..MAX_TERMS {
        match valuation {
            0 => sum += &coeff,
            v if v < 0 => return Err(Error::DegenerateDenominator { index: j }),
            _ => {}
        }
        let jj = Rational::from_integer(j.into());
        for a in upper {
            let f = &a.value + &jj;
            if !f.is_zero() {
                coeff *= f;
            } else if !a.slope.is_zero() {
                coeff *= &a.slope;
                valuation += 1;
            } else {
                return Ok(sum);
            }
        }
        for b in lower {
            let f = &b.value + &jj;
            if !f.is_zero() {
                coeff /= f;
            } else if !b.slope.is_zero() {
                coeff /= &b.slope;
                valuation -= 1;
            } else {
                return Err(Error::DegenerateDenominator { index: j + 1 });
            }
        }
        coeff /= Rational::from_integer((j + 1).into());
    }
    Err(Error::InvalidInput(format!(
        "series did not terminate within {MAX_TERMS} terms"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::pochhammer;
    use crate::scalar::{int, rat};
    use proptest::prelude::*;

    fn nequalzero_spec(n: i64, alpha: &Rational) -> HypergeometricSpec<Rational> {
        HypergeometricSpec::new(
            vec![
                rat(-(n - 2), 2),
                rat(-(n - 1), 2),
                int(-n),
                alpha + int(1),
                alpha * int(2) + int(1),
            ],
            vec![
                int(1 - n),
                int(n + 2) + alpha * int(5),
                int(1 - n) - alpha,
                rat(1, 2) - int(n) - alpha,
            ],
        )
    }

    #[test]
    fn zero_upper_parameter_gives_one() {
        let spec = HypergeometricSpec::new(vec![int(0), rat(3, 2)], vec![rat(7, 3)]);
        assert_eq!(pfq_unit(&spec).unwrap(), int(1));
    }

    #[test]
    fn treat_as_one_short_circuits() {
        let spec = nequalzero_spec(1, &int(1)).sum_as_one(true);
        assert_eq!(pfq_unit(&spec).unwrap(), int(1));
    }

    #[test]
    fn degenerate_denominator_is_an_error() {
        // (1)_j / (-2)_j: the lower factor vanishes at j = 2 with nothing
        // in the numerator to cancel it.
        let spec = HypergeometricSpec::new(vec![int(1), int(-5)], vec![int(-2)]);
        assert_eq!(
            pfq_unit(&spec),
            Err(Error::DegenerateDenominator { index: 3 })
        );
    }

    #[test]
    fn vandermonde_chu_check() {
        // 2F1(-n, b; c; 1) = (c-b)_n / (c)_n
        for n in 0..8 {
            let b = rat(3, 4);
            let c = rat(11, 3);
            let spec = HypergeometricSpec::new(vec![int(-n), b.clone()], vec![c.clone()]);
            let expect = pochhammer(&(c.clone() - b), n as u32) / pochhammer(&c, n as u32);
            assert_eq!(pfq_unit(&spec).unwrap(), expect);
        }
    }

    #[test]
    fn float_instance_agrees_with_exact() {
        let exact = pfq_unit(&nequalzero_spec(6, &int(1))).unwrap();
        let spec_f = HypergeometricSpec::new(
            vec![-2.0, -2.5, -6.0, 2.0, 3.0],
            vec![-5.0, 13.0, -6.0, -6.5],
        );
        let approx = pfq_unit(&spec_f).unwrap();
        assert!((approx - exact.to_f64()).abs() < 1e-12 * exact.to_f64().abs().max(1.0));
    }

    #[test]
    fn nequalzero_sums_terminate_cleanly() {
        for alpha in [rat(1, 2), int(1), int(2)] {
            for n in 2..=20 {
                let spec = nequalzero_spec(n, &alpha);
                assert!(pfq_unit(&spec).is_ok(), "n = {n}, α = {alpha}");
            }
        }
    }

    #[test]
    fn limit_matches_plain_sum_when_regular() {
        let up = [int(-4), rat(1, 3), rat(5, 2)];
        let lo = [rat(7, 2), rat(2, 9)];
        let plain = pfq_unit(&HypergeometricSpec::new(up.to_vec(), lo.to_vec())).unwrap();
        let lim = pfq_unit_limit(
            &up.iter().cloned().map(PerturbedParam::fixed).collect::<Vec<_>>(),
            &lo.iter().cloned().map(PerturbedParam::fixed).collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(plain, lim);
    }

    #[test]
    fn limit_resolves_zero_over_zero() {
        // 2F1(-1, -ε; -ε; 1) = 1 - 1 = 0; the literal parameters give 0/0.
        let up = [
            PerturbedParam::fixed(int(-1)),
            PerturbedParam::new(int(0), int(-1)),
        ];
        let lo = [PerturbedParam::new(int(0), int(-1))];
        assert_eq!(pfq_unit_limit(&up, &lo).unwrap(), int(0));
    }

    proptest! {
        #[test]
        fn term_ratio_recurrence(n in 0i64..12, p in 1i64..30, q in 1i64..7, r in 1i64..30) {
            let a = rat(p, q);
            let c = rat(r, q) + int(1);
            let spec = HypergeometricSpec::new(vec![int(-n), a.clone()], vec![c.clone()]);
            let terms = pfq_terms(&spec).unwrap();
            for j in 0..terms.len() - 1 {
                let jj = int(j as i64);
                let ratio = (int(-n) + &jj) * (&a + &jj) / ((&c + &jj) * int(j as i64 + 1));
                prop_assert_eq!(&terms[j + 1], &(&terms[j] * ratio));
            }
        }

        #[test]
        fn parameter_order_is_irrelevant(n in 0i64..10, p in 1i64..20, q in 1i64..20) {
            let a = rat(p, 3);
            let b = rat(q, 5);
            let s1 = HypergeometricSpec::new(vec![int(-n), a.clone(), b.clone()], vec![rat(7, 2), rat(9, 4)]);
            let s2 = HypergeometricSpec::new(vec![b, int(-n), a], vec![rat(9, 4), rat(7, 2)]);
            prop_assert_eq!(pfq_unit(&s1).unwrap(), pfq_unit(&s2).unwrap());
        }
    }
}
