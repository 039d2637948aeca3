//! Exact recovery of rational functions from sequences, and recombination of
//! partial-fraction expansions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::Poly;
use crate::scalar::int;
use crate::{Error, Rational, RationalFunction, Result};

/// `coeff / (a·k + b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialFraction {
    pub coeff: Rational,
    pub a: i64,
    pub b: i64,
}

impl PartialFraction {
    pub fn new(coeff: Rational, a: i64, b: i64) -> Self {
        Self { coeff, a, b }
    }
}

/// `Σ coeff_i / (a_i k + b_i) + constant` over a common denominator.
pub fn recombine_partial_fractions(terms: &[PartialFraction], constant: &Rational) -> RationalFunction {
    let mut acc = RationalFunction::constant(constant.clone());
    for t in terms {
        let term = RationalFunction::new(
            Poly::constant(t.coeff.clone()),
            Poly::linear(int(t.a), int(t.b)),
        )
        .expect("linear denominator with a ≠ 0 or b ≠ 0");
        acc = acc.add(&term);
    }
    acc.canonical()
}

/// Fits `p(k)/q(k)` with `deg p ≤ deg_num`, `deg q ≤ deg_den` through the
/// first `deg_num + deg_den + 1` points and checks it against the rest.
///
/// The linear system `p(k_i) − v_i q(k_i) = 0` is solved by fraction-free
/// elimination over integers. Every null vector with `q ≠ 0` represents the
/// same function once common factors are cancelled, so fitting with excess
/// degrees returns the minimal function.
pub fn fit_rational_function(
    points: &[(i64, Rational)],
    deg_num: usize,
    deg_den: usize,
) -> Result<RationalFunction> {
    let unknowns = deg_num + deg_den + 2;
    let needed = unknowns;
    if points.len() < needed {
        return Err(Error::InsufficientData {
            needed: needed as u64,
            have: points.len() as u64,
        });
    }
    let (fit, holdout) = points.split_at(unknowns - 1);

    let rows: Vec<Vec<BigInt>> = fit
        .iter()
        .map(|(k, v)| {
            let kk = int(*k);
            let mut row = Vec::with_capacity(unknowns);
            let mut pow = Rational::one();
            for _ in 0..=deg_num {
                row.push(pow.clone());
                pow *= &kk;
            }
            let mut pow = Rational::one();
            for _ in 0..=deg_den {
                row.push(-(v * &pow));
                pow *= &kk;
            }
            integer_row(&row)
        })
        .collect();

    let x = null_vector(rows, unknowns);
    let num = Poly::new(x[..=deg_num].to_vec());
    let den = Poly::new(x[deg_num + 1..].to_vec());
    if den.is_zero() {
        return Err(Error::NoSolution);
    }
    let f = RationalFunction::canonical_new(num, den)?;
    for (k, v) in holdout {
        match f.eval(&int(*k)) {
            Ok(value) if value == *v => {}
            _ => return Err(Error::HoldoutMismatch { k: *k }),
        }
    }
    Ok(f)
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    row.iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect()
}

/// A non-trivial solution of `A x = 0` for a matrix with fewer rows than
/// columns, via Bareiss elimination and back substitution.
fn null_vector(mut a: Vec<Vec<BigInt>>, cols: usize) -> Vec<Rational> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    let free = (0..cols)
        .find(|c| !pivots.contains(c))
        .expect("more unknowns than equations");
    let mut x = vec![Rational::zero(); cols];
    x[free] = Rational::one();
    for (row, &pc) in pivots.iter().enumerate().rev() {
        let s: Rational = (pc + 1..cols)
            .map(|j| Rational::from_integer(a[row][j].clone()) * &x[j])
            .sum();
        x[pc] = -s / Rational::from_integer(a[row][pc].clone());
    }
    x
}
