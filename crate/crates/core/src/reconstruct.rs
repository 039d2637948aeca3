//! Density reconstruction on a bounded interval from power moments, by
//! Legendre expansion.
//!
//! With `u = (2x − a − b)/(b − a)` the density is
//! `f(x) = Σ c_i (2i + 1)/(b − a) P_i(u)` and `c_i = E[P_i(u(X))]`. The
//! coefficients are linear combinations of the moments with large
//! alternating weights, so they are formed in the moments' own field
//! (exactly, for rational moments) and only then rounded.

use num_traits::Float;

use crate::poly::Poly;
use crate::{Error, Result, Scalar};

/// `m_j = E[X^j]` for `j = 0..=M`, with `X` supported on `[a, b]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSequence<S> {
    values: Vec<S>,
    support: (S, S),
}

impl<S: Scalar> MomentSequence<S> {
    /// Requires `m_0 = 1` and `a < b`.
    pub fn new(values: Vec<S>, a: S, b: S) -> Result<Self> {
        if values.first() != Some(&S::one()) {
            return Err(Error::InvalidInput("m_0 must be 1".into()));
        }
        if (b.clone() - a.clone()).is_negative() || a == b {
            return Err(Error::InvalidInput("empty support".into()));
        }
        Ok(Self {
            values,
            support: (a, b),
        })
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn support(&self) -> (&S, &S) {
        (&self.support.0, &self.support.1)
    }

    /// Highest available moment index.
    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }
}

/// Coefficients of `P_0 .. P_order` in the monomial basis.
pub fn legendre_polynomials<S: Scalar>(order: usize) -> Vec<Poly<S>> {
    let mut p = vec![Poly::one(), Poly::linear(S::one(), S::zero())];
    let x = Poly::linear(S::one(), S::zero());
    for i in 1..order {
        let i1 = S::from_int(i as i64 + 1);
        let a = (&x * &p[i]).scale(&(S::from_int(2 * i as i64 + 1) / i1.clone()));
        let b = p[i - 1].scale(&(S::from_int(i as i64) / i1));
        p.push(&a - &b);
    }
    p.truncate(order + 1);
    p
}

/// `c_i = E[P_i(u)]` for `i ≤ order`, in the moments' field.
pub fn legendre_coefficients_exact<S: Scalar>(ms: &MomentSequence<S>, order: usize) -> Result<Vec<S>> {
    if order > ms.max_order() {
        return Err(Error::InsufficientData {
            needed: order as u64 + 1,
            have: ms.values.len() as u64,
        });
    }
    let (a, b) = ms.support();
    let width = b.clone() - a.clone();
    let scale = S::from_int(2) / width.clone();
    let offset = -(a.clone() + b.clone()) / width;
    // E[u^j] = Σ_m C(j,m) scale^m offset^(j-m) m_m
    let mut scale_pow = vec![S::one()];
    let mut offset_pow = vec![S::one()];
    for _ in 0..order {
        scale_pow.push(scale_pow.last().unwrap().clone() * scale.clone());
        offset_pow.push(offset_pow.last().unwrap().clone() * offset.clone());
    }
    let mut binom: Vec<S> = vec![S::one()];
    let mut eu = Vec::with_capacity(order + 1);
    for j in 0..=order {
        if j > 0 {
            let mut next = vec![S::one(); j + 1];
            for m in 1..j {
                next[m] = binom[m - 1].clone() + binom[m].clone();
            }
            binom = next;
        }
        let mut s = S::zero();
        for m in 0..=j {
            s = s + binom[m].clone() * scale_pow[m].clone() * offset_pow[j - m].clone() * ms.values[m].clone();
        }
        eu.push(s);
    }
    Ok(legendre_polynomials::<S>(order)
        .iter()
        .map(|p| {
            p.coeffs()
                .iter()
                .zip(&eu)
                .fold(S::zero(), |acc, (c, m)| acc + c.clone() * m.clone())
        })
        .collect())
}

/// A truncated Legendre series for a density on `[a, b]`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityExpansion<F> {
    pub support: (F, F),
    pub coeffs: Vec<F>,
}

/// Builds the order-`order` expansion; coefficients are rounded only after
/// they have been formed exactly.
pub fn legendre_coefficients<S: Scalar, F: Float>(ms: &MomentSequence<S>, order: usize) -> Result<DensityExpansion<F>> {
    let c = legendre_coefficients_exact(ms, order)?;
    let cv = |x: &S| F::from(x.to_f64()).unwrap();
    let (a, b) = ms.support();
    Ok(DensityExpansion {
        support: (cv(a), cv(b)),
        coeffs: c.iter().map(cv).collect(),
    })
}

/// `P_0(u) .. P_n(u)`.
fn legendre_values<F: Float>(u: F, n: usize) -> Vec<F> {
    let mut p = vec![F::one(), u];
    for i in 1..n {
        let fi = F::from(i).unwrap();
        let next = ((fi + fi + F::one()) * u * p[i] - fi * p[i - 1]) / (fi + F::one());
        p.push(next);
    }
    p.truncate(n + 1);
    p
}

impl<F: Float> DensityExpansion<F> {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn to_u(&self, x: F) -> F {
        let (a, b) = self.support;
        (x + x - a - b) / (b - a)
    }

    /// Multiplies `c_i` by Jackson kernel factors to damp Gibbs
    /// oscillations; the zeroth coefficient is unchanged.
    pub fn jackson_damped(&self) -> Self {
        let m = F::from(self.order() + 1).unwrap();
        let pi = F::from(std::f64::consts::PI).unwrap();
        let t = pi / m;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let fi = F::from(i).unwrap();
                let g = ((m - fi) * (t * fi).cos() + (t * fi).sin() / t.tan()) / m;
                c * g
            })
            .collect();
        Self {
            support: self.support,
            coeffs,
        }
    }

    /// `f(x)`; zero outside the support.
    pub fn density(&self, x: F) -> F {
        let (a, b) = self.support;
        if x < a || x > b {
            return F::zero();
        }
        let p = legendre_values(self.to_u(x), self.order());
        let s = self
            .coeffs
            .iter()
            .zip(&p)
            .enumerate()
            .fold(F::zero(), |acc, (i, (&c, &pi))| {
                let w = F::from(2 * i + 1).unwrap();
                acc + c * w * pi
            });
        s / (b - a)
    }

    /// `∫_t^b f`, from the antiderivatives
    /// `∫_u^1 P_i = (P_{i-1}(u) − P_{i+1}(u)) / (2i + 1)`.
    pub fn tail_probability(&self, threshold: F) -> Result<F> {
        let (a, b) = self.support;
        if threshold < a || threshold > b {
            return Err(Error::InvalidInput("threshold outside the support".into()));
        }
        let u = self.to_u(threshold);
        let n = self.order();
        let p = legendre_values(u, n + 1);
        let half = F::from(0.5).unwrap();
        let mut s = self.coeffs[0] * (F::one() - u) * half;
        for i in 1..=n {
            s = s - self.coeffs[i] * half * (p[i + 1] - p[i - 1]);
        }
        Ok(s)
    }

    /// `E[X^j]` under the expansion, by Gauss–Legendre quadrature that is
    /// exact for the polynomial integrand.
    pub fn moment(&self, j: usize) -> F
    where
        F: num_traits::FloatConst,
    {
        let (a, b) = self.support;
        let nodes = (self.order() + j) / 2 + 1;
        let (x, w) = crate::quadrature::gauss_legendre::<F>(nodes);
        let half = F::from(0.5).unwrap();
        x.iter().zip(&w).fold(F::zero(), |acc, (&u, &wi)| {
            let xx = a + (u + F::one()) * (b - a) * half;
            acc + wi * self.density(xx) * xx.powi(j as i32)
        }) * (b - a)
            * half
    }

    /// `(x, f(x))` at `points` equally spaced points including the ends.
    pub fn grid(&self, points: usize) -> Vec<(F, F)> {
        let (a, b) = self.support;
        let steps = F::from(points.max(2) - 1).unwrap();
        (0..points.max(2))
            .map(|i| {
                let x = a + (b - a) * F::from(i).unwrap() / steps;
                (x, self.density(x))
            })
            .collect()
    }
}

/// Free-function form of [`DensityExpansion::tail_probability`].
pub fn tail_probability<F: Float>(d: &DensityExpansion<F>, threshold: F) -> Result<F> {
    d.tail_probability(threshold)
}
