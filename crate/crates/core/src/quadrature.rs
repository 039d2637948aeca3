//! Eigenvalue-simplex quadrature for monomial expectations and
//! normalization constants.
//!
//! With `λ_i = y_i²` the simplex maps onto the positive orthant of the unit
//! sphere and `dλ = 2^{d-1} Π y_i dS`, which cancels the `Π λ^{-1/2}` factor
//! of the Bures density. The ordered sector `y_1 ≥ ... ≥ y_d` is covered by
//! hyperspherical angles with nested Gauss–Legendre rules; inside it every
//! `|λ_i − λ_j|` is smooth, so the rules converge geometrically. Symmetric
//! integrands are integrated over the sector and multiplied by `d!`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{Float, FloatConst, ToPrimitive};
use serde::Serialize;

use crate::bures::{bures_det_moment, EnsembleVariant, MonomialExponents};
use crate::exact::PiMultiple;
use crate::hs::{hs_normalization, DysonParameter};
use crate::sampler::Measure;
use crate::scalar::{int, rat};
use crate::{Error, Rational, Result};

/// Distinct permutations of `e`, in lexicographic order.
fn distinct_permutations(e: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = e.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre<T: Float + FloatConst>(n: usize) -> (Vec<T>, Vec<T>) {
    let mut x = vec![T::zero(); n];
    let mut w = vec![T::zero(); n];
    let nf = T::from(n).unwrap();
    let one = T::one();
    let two = one + one;
    let eps = T::epsilon() * T::from(4.0).unwrap();
    for i in 0..n.div_ceil(2) {
        let guess = T::PI() * (T::from(i).unwrap() + T::from(0.75).unwrap()) / (nf + T::from(0.5).unwrap());
        let mut z = guess.cos();
        let mut dp = one;
        for _ in 0..100 {
            // three-term recurrence for P_n(z) and P_{n-1}(z)
            let (mut p0, mut p1) = (one, z);
            for j in 2..=n {
                let jf = T::from(j).unwrap();
                let p2 = ((two * jf - one) * z * p1 - (jf - one) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { one } else { p1 };
            let pm = if n == 1 { one } else { p0 };
            dp = nf * (z * pn - pm) / (z * z - one);
            let dz = pn / dp;
            z = z - dz;
            if dz.abs() <= eps {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = two / ((one - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// `∫_Δ f(λ) Π λ_i^{-1/2} dλ` over the whole `dim`-simplex for a symmetric
/// `f`, using `nodes` points per angle. `dim` is 3 or 4.
pub fn simplex_integral<T, F>(dim: usize, nodes: usize, f: F) -> Result<T>
where
    T: Float + FloatConst,
    F: Fn(&[T]) -> T,
{
    let (x, w) = gauss_legendre::<T>(nodes);
    let one = T::one();
    let half = T::from(0.5).unwrap();
    // maps the rule onto [0, b]
    let scaled = |b: T| -> Vec<(T, T)> {
        x.iter()
            .zip(&w)
            .map(|(&xi, &wi)| ((xi + one) * b * half, wi * b * half))
            .collect()
    };
    let sec_atan = |t: T| (one / t.cos()).atan();
    let quarter = T::FRAC_PI_4();
    let mut lam = vec![T::zero(); dim];
    let mut total = T::zero();
    match dim {
        3 => {
            for (t2, w2) in scaled(quarter) {
                let mut inner = T::zero();
                for (t1, w1) in scaled(sec_atan(t2)) {
                    let (s1, c1) = t1.sin_cos();
                    let (s2, c2) = t2.sin_cos();
                    let y = [c1, s1 * c2, s1 * s2];
                    for (l, yi) in lam.iter_mut().zip(y) {
                        *l = yi * yi;
                    }
                    inner = inner + w1 * s1 * f(&lam);
                }
                total = total + w2 * inner;
            }
            Ok(total * T::from(4 * 6).unwrap())
        }
        4 => {
            for (t3, w3) in scaled(quarter) {
                let (s3, c3) = t3.sin_cos();
                let mut mid = T::zero();
                for (t2, w2) in scaled(sec_atan(t3)) {
                    let (s2, c2) = t2.sin_cos();
                    let mut inner = T::zero();
                    for (t1, w1) in scaled(sec_atan(t2)) {
                        let (s1, c1) = t1.sin_cos();
                        let y = [c1, s1 * c2, s1 * s2 * c3, s1 * s2 * s3];
                        for (l, yi) in lam.iter_mut().zip(y) {
                            *l = yi * yi;
                        }
                        inner = inner + w1 * s1 * s1 * s2 * f(&lam);
                    }
                    mid = mid + w2 * inner;
                }
                total = total + w3 * mid;
            }
            Ok(total * T::from(8 * 24).unwrap())
        }
        d => Err(Error::DimensionMismatch { expected: 4, actual: d }),
    }
}

/// A quadrature value with the difference between the last two refinement
/// levels as its error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub error_bound: f64,
    pub nodes: usize,
}

const START_NODES: usize = 16;
const MAX_NODES: usize = 256;

/// Doubles the node count until two successive levels agree to `rel_tol`.
pub fn integrate_to_tolerance<F>(dim: usize, rel_tol: f64, f: F) -> Result<QuadResult>
where
    F: Fn(&[f64]) -> f64,
{
    if rel_tol.is_nan() || rel_tol < 1e-10 {
        return Err(Error::InvalidInput(format!("rel_tol {rel_tol} below 1e-10")));
    }
    let mut n = START_NODES;
    let mut prev = simplex_integral(dim, n, &f)?;
    let mut err = f64::INFINITY;
    while n < MAX_NODES {
        n *= 2;
        let cur = simplex_integral(dim, n, &f)?;
        err = (cur - prev).abs();
        if err <= rel_tol * cur.abs() {
            return Ok(QuadResult {
                value: cur,
                error_bound: err,
                nodes: n,
            });
        }
        prev = cur;
    }
    Err(Error::ToleranceNotMet {
        requested: rel_tol,
        achieved: err / prev.abs(),
    })
}

/// Which eigenvalue density, with its normalization constant.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenDensitySpec {
    pub measure: Measure,
    pub variant: EnsembleVariant,
    pub normalization: PiMultiple,
}

/// Bures retrit normalization, computed once by [`normalization_constant`]
/// and checked against the retrit `<|ρ|^k>` closed form in the tests.
pub fn retrit_bures_normalization() -> PiMultiple {
    PiMultiple::with_pi_power(rat(16, 3), -1)
}

impl EigenDensitySpec {
    pub fn new(measure: Measure, variant: EnsembleVariant) -> Result<Self> {
        let normalization = match (measure, variant) {
            (Measure::HilbertSchmidt, EnsembleVariant::Retrit) => {
                return Err(Error::InvalidInput("no Hilbert-Schmidt retrit density".into()))
            }
            (Measure::HilbertSchmidt, v) => {
                PiMultiple::rational(hs_normalization(&dyson(v))?)
            }
            (Measure::Bures, EnsembleVariant::TwoQubit) => PiMultiple::with_pi_power(int(71680), -2),
            (Measure::Bures, EnsembleVariant::TwoRebit) => PiMultiple::with_pi_power(int(128), -1),
            (Measure::Bures, EnsembleVariant::Retrit) => retrit_bures_normalization(),
        };
        Ok(Self {
            measure,
            variant,
            normalization,
        })
    }

    fn real(&self) -> bool {
        !self.variant.is_complex()
    }
}

fn dyson(v: EnsembleVariant) -> DysonParameter {
    if v.is_complex() {
        DysonParameter::qubit()
    } else {
        DysonParameter::rebit()
    }
}

/// Unnormalized density times `Π λ^{1/2}`, i.e. the function handed to
/// [`simplex_integral`].
fn sector_weight(measure: Measure, real: bool, lam: &[f64]) -> f64 {
    let mut w = 1.0;
    for i in 0..lam.len() {
        for j in i + 1..lam.len() {
            let d = (lam[i] - lam[j]).abs();
            w *= match (measure, real) {
                (Measure::HilbertSchmidt, true) => d,
                (Measure::HilbertSchmidt, false) => d * d,
                (Measure::Bures, true) => d / (lam[i] + lam[j]).sqrt(),
                (Measure::Bures, false) => d * d / (lam[i] + lam[j]),
            };
        }
    }
    if measure == Measure::HilbertSchmidt {
        w *= lam.iter().map(|l| l.sqrt()).product::<f64>();
    }
    w
}

/// Normalized eigenvalue density at a point of the open simplex.
pub fn eigen_density(lam: &[f64], spec: &EigenDensitySpec) -> Result<f64> {
    if lam.len() != spec.variant.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.variant.dim(),
            actual: lam.len(),
        });
    }
    let s: f64 = lam.iter().sum();
    if (s - 1.0).abs() > 1e-12 || lam.iter().any(|&l| l < 0.0) {
        return Err(Error::InvalidInput(format!("{lam:?} is not on the simplex")));
    }
    if spec.measure == Measure::Bures && lam.contains(&0.0) {
        return Err(Error::BoundaryPoint);
    }
    let p: f64 = lam.iter().product();
    let w = sector_weight(spec.measure, spec.real(), lam) / p.sqrt();
    Ok(spec.normalization.to_f64() * w)
}

/// Average of `Π λ_i^{p_i}` over the distinct permutations `p` of `e`.
fn symmetrized_monomial(perms: &[Vec<u32>], lam: &[f64]) -> f64 {
    let s: f64 = perms
        .iter()
        .map(|p| lam.iter().zip(p).map(|(l, &e)| l.powi(e as i32)).product::<f64>())
        .sum();
    s / perms.len() as f64
}

/// `E[Π λ_i^{e_i}]` over exchangeable eigenvalues.
pub fn monomial_expectation(e: &MonomialExponents, spec: &EigenDensitySpec, rel_tol: f64) -> Result<QuadResult> {
    if e.0.len() != spec.variant.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.variant.dim(),
            actual: e.0.len(),
        });
    }
    let perms = distinct_permutations(&e.0);
    let real = spec.real();
    let r = integrate_to_tolerance(spec.variant.dim(), rel_tol, |lam| {
        sector_weight(spec.measure, real, lam) * symmetrized_monomial(&perms, lam)
    })?;
    let c = spec.normalization.to_f64();
    Ok(QuadResult {
        value: r.value * c,
        error_bound: r.error_bound * c,
        nodes: r.nodes,
    })
}

/// `1 / ∫ density`, with the exact form recognized when the result times the
/// expected power of π is a fraction with a small denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizationConstant {
    pub value: f64,
    pub error_bound: f64,
    pub exact: Option<PiMultiple>,
}

/// Power of π in the normalization: none for HS, `π^{-2}` for the complex
/// Bures case and `π^{-1}` for the real ones.
fn pi_power(measure: Measure, variant: EnsembleVariant) -> i32 {
    match (measure, variant.is_complex()) {
        (Measure::HilbertSchmidt, _) => 0,
        (Measure::Bures, true) => -2,
        (Measure::Bures, false) => -1,
    }
}

pub fn normalization_constant(measure: Measure, variant: EnsembleVariant, rel_tol: f64) -> Result<NormalizationConstant> {
    let real = !variant.is_complex();
    let r = integrate_to_tolerance(variant.dim(), rel_tol, |lam| sector_weight(measure, real, lam))?;
    let value = 1.0 / r.value;
    let error_bound = r.error_bound / (r.value * r.value);
    let p = pi_power(measure, variant);
    let scaled = value / PI.powi(p);
    let exact = recognize_rational(scaled, 1000, (rel_tol * 10.0).max(1e-12))
        .map(|q| PiMultiple::with_pi_power(q, p));
    Ok(NormalizationConstant {
        value,
        error_bound,
        exact,
    })
}

/// Closest continued-fraction convergent of `x` with denominator at most
/// `max_den`, if it is within `rel_tol` of `x`.
pub fn recognize_rational(x: f64, max_den: u64, rel_tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = a.to_i128()?;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h1 as f64 / k1 as f64) - x).abs() <= rel_tol * x.abs() {
            return Some(Rational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = r - a;
        if frac == 0.0 {
            break;
        }
        r = frac.recip();
    }
    None
}

/// Rebit families whose closed forms are not known, against `|ρ|^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MissingFamily {
    /// `λ1⁵ λ2³`
    L53,
    /// `λ1⁶ λ2²`
    L62,
    /// `λ1⁷ λ2`
    L71,
    /// `λ1⁸`
    L8,
}

impl MissingFamily {
    pub const ALL: [MissingFamily; 4] = [Self::L53, Self::L62, Self::L71, Self::L8];

    pub fn offsets(self) -> [u32; 4] {
        match self {
            Self::L53 => [5, 3, 0, 0],
            Self::L62 => [6, 2, 0, 0],
            Self::L71 => [7, 1, 0, 0],
            Self::L8 => [8, 0, 0, 0],
        }
    }

    pub fn pattern(self) -> String {
        let o = self.offsets();
        format!("{},{},{},{}", o[0], o[1], o[2], o[3])
    }
}

/// `<λ^{offsets + k}> / <|ρ|^{k+2}>` for two-rebit Bures states, `k ≤ 3`.
pub fn missing_rebit_family_estimate(family: MissingFamily, k: u32, rel_tol: f64) -> Result<QuadResult> {
    if k > 3 {
        return Err(Error::InvalidInput(format!("k = {k} outside 0..=3")));
    }
    let e = family.offsets().map(|o| o + k).to_vec();
    ratio_to_det_moment(e, k + 2, rel_tol)
}

/// `<λ^e> / <|ρ|^m>` for two-rebit Bures states.
pub fn ratio_to_det_moment(e: Vec<u32>, m: u32, rel_tol: f64) -> Result<QuadResult> {
    let v = EnsembleVariant::TwoRebit;
    let spec = EigenDensitySpec::new(Measure::Bures, v)?;
    let r = monomial_expectation(&MonomialExponents::new(e, v)?, &spec, rel_tol)?;
    let det = bures_det_moment(m, v)?.to_f64().unwrap_or(f64::NAN);
    Ok(QuadResult {
        value: r.value / det,
        error_bound: r.error_bound / det,
        nodes: r.nodes,
    })
}

/// JSON record for a quadrature result.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadRecord {
    pub pattern: String,
    pub k: Option<u32>,
    pub measure: String,
    pub variant: String,
    pub value: f64,
    pub error_bound: f64,
    pub rel_tol: f64,
}

/// `Σ_p c_p E[λ^p]` over all exponent patterns of degree `d` with their
/// multinomial counts; equals 1 since `(Σ λ_i)^d = 1`.
pub fn multinomial_closure(spec: &EigenDensitySpec, d: u32, rel_tol: f64) -> Result<f64> {
    let dim = spec.variant.dim();
    let mut total = 0.0;
    for e in compositions(d, dim) {
        let coef = multinomial(d, &e);
        let r = monomial_expectation(&MonomialExponents::new(e, spec.variant)?, spec, rel_tol)?;
        total += coef * r.value;
    }
    Ok(total)
}

/// All exponent vectors of length `parts` summing to `d`.
fn compositions(d: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![d]];
    }
    (0..=d)
        .flat_map(|first| {
            compositions(d - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn multinomial(d: u32, e: &[u32]) -> f64 {
    let f = |n: u32| (1..=n).map(f64::from).product::<f64>();
    f(d) / e.iter().map(|&x| f(x)).product::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hs::hs_monomial_exact;
    use crate::scalar::{rat, rational_to_f64};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre::<f64>(5);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(8)).sum();
        assert!((s - 2.0 / 9.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        let (x, _) = gauss_legendre::<f32>(4);
        assert!((x[3] - 0.861_136_3).abs() < 1e-6);
    }

    #[test]
    fn permutations_are_distinct() {
        assert_eq!(distinct_permutations(&[2, 1, 1, 0]).len(), 12);
        assert_eq!(distinct_permutations(&[1, 1, 1, 1]).len(), 1);
        assert_eq!(distinct_permutations(&[3, 2, 1, 0]).len(), 24);
    }

    #[test]
    fn simplex_volume() {
        // ∫_Δ Π λ^{-1/2} = Γ(1/2)^d / Γ(d/2)
        let v4 = simplex_integral::<f64, _>(4, 20, |_| 1.0).unwrap();
        assert!(rel(v4, PI * PI) < 1e-13);
        let v3 = simplex_integral::<f64, _>(3, 20, |_| 1.0).unwrap();
        assert!(rel(v3, PI.powf(1.5) / (PI.sqrt() / 2.0)) < 1e-13);
        assert!(simplex_integral::<f64, _>(5, 4, |_| 1.0).is_err());
    }

    #[test]
    fn tabulated_normalizations() {
        for (m, v, expect) in [
            (Measure::Bures, EnsembleVariant::TwoQubit, 71680.0 / (PI * PI)),
            (Measure::Bures, EnsembleVariant::TwoRebit, 128.0 / PI),
            (Measure::Bures, EnsembleVariant::Retrit, 16.0 / (3.0 * PI)),
            (Measure::HilbertSchmidt, EnsembleVariant::TwoQubit, 378378000.0),
            (Measure::HilbertSchmidt, EnsembleVariant::TwoRebit, 80640.0),
        ] {
            let n = normalization_constant(m, v, 1e-10).unwrap();
            assert!(rel(n.value, expect) < 1e-10, "{m} {v}: {}", n.value);
            assert_eq!(n.exact, Some(EigenDensitySpec::new(m, v).unwrap().normalization));
        }
    }

    #[test]
    fn retrit_constant_matches_det_moments() {
        let spec = EigenDensitySpec::new(Measure::Bures, EnsembleVariant::Retrit).unwrap();
        for k in 1..=2 {
            let e = MonomialExponents::new(vec![k; 3], EnsembleVariant::Retrit).unwrap();
            let q = monomial_expectation(&e, &spec, 1e-10).unwrap();
            let exact = rational_to_f64(&bures_det_moment(k, EnsembleVariant::Retrit).unwrap());
            assert!(rel(q.value, exact) < 1e-10);
        }
    }

    #[test]
    fn density_values_and_errors() {
        let hs = EigenDensitySpec::new(Measure::HilbertSchmidt, EnsembleVariant::TwoQubit).unwrap();
        assert_eq!(eigen_density(&[0.25; 4], &hs).unwrap(), 0.0);
        let b = EigenDensitySpec::new(Measure::Bures, EnsembleVariant::TwoQubit).unwrap();
        assert_eq!(eigen_density(&[0.5, 0.3, 0.2, 0.0], &b), Err(Error::BoundaryPoint));
        assert!(eigen_density(&[0.4, 0.3, 0.2, 0.1], &b).unwrap() > 0.0);
        assert!(matches!(eigen_density(&[0.5, 0.5], &b), Err(Error::DimensionMismatch { .. })));
        assert!(EigenDensitySpec::new(Measure::HilbertSchmidt, EnsembleVariant::Retrit).is_err());
    }

    #[test]
    fn bures_quartic_constants() {
        let spec = EigenDensitySpec::new(Measure::Bures, EnsembleVariant::TwoQubit).unwrap();
        let e = MonomialExponents::new(vec![4, 0, 0, 0], EnsembleVariant::TwoQubit).unwrap();
        let q = monomial_expectation(&e, &spec, 1e-9).unwrap();
        assert!(rel(q.value, 1127.0 / 16896.0) < 1e-9);
        assert!(q.error_bound <= 1e-9 * q.value);
        let spec = EigenDensitySpec::new(Measure::Bures, EnsembleVariant::TwoRebit).unwrap();
        let e = MonomialExponents::new(vec![2, 1, 1, 0], EnsembleVariant::TwoRebit).unwrap();
        let q = monomial_expectation(&e, &spec, 1e-9).unwrap();
        assert!(rel(q.value, 41.0 / 40960.0) < 1e-9);
    }

    #[test]
    fn hs_oracle_agreement() {
        for v in [EnsembleVariant::TwoQubit, EnsembleVariant::TwoRebit] {
            let spec = EigenDensitySpec::new(Measure::HilbertSchmidt, v).unwrap();
            for d in 0..=4 {
                for e in compositions(d, 4) {
                    if e.windows(2).any(|w| w[0] < w[1]) {
                        continue;
                    }
                    let exact = rational_to_f64(&hs_monomial_exact([e[0], e[1], e[2], e[3]], &dyson(v)).unwrap());
                    let q = monomial_expectation(&MonomialExponents::new(e.clone(), v).unwrap(), &spec, 1e-10).unwrap();
                    assert!(rel(q.value, exact) < 1e-9, "{v} {e:?}");
                }
            }
        }
    }

    #[test]
    fn closure_is_one() {
        for m in [Measure::HilbertSchmidt, Measure::Bures] {
            let spec = EigenDensitySpec::new(m, EnsembleVariant::TwoRebit).unwrap();
            assert!((multinomial_closure(&spec, 4, 1e-9).unwrap() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn known_family_through_missing_path() {
        let r = ratio_to_det_moment(vec![3, 2, 2, 1], 2, 1e-9).unwrap();
        assert!(rel(r.value, 87.0 / 27.0) < 1e-9);
        let l8 = missing_rebit_family_estimate(MissingFamily::L8, 0, 1e-8).unwrap();
        let det2 = rational_to_f64(&bures_det_moment(2, EnsembleVariant::TwoRebit).unwrap());
        assert!(l8.value > 0.0 && l8.value < 1.0 / det2);
        assert!(missing_rebit_family_estimate(MissingFamily::L8, 4, 1e-8).is_err());
    }

    #[test]
    fn tighter_tolerance_tighter_bound() {
        let spec = EigenDensitySpec::new(Measure::Bures, EnsembleVariant::TwoRebit).unwrap();
        let e = MonomialExponents::new(vec![6, 2, 0, 0], EnsembleVariant::TwoRebit).unwrap();
        let loose = monomial_expectation(&e, &spec, 1e-4).unwrap();
        let tight = monomial_expectation(&e, &spec, 1e-10).unwrap();
        assert!(tight.error_bound <= loose.error_bound);
        assert!(integrate_to_tolerance(4, 1e-12, |_| 1.0).is_err());
    }

    #[test]
    fn recognizes_small_fractions() {
        assert_eq!(recognize_rational(16.0 / 3.0, 1000, 1e-12), Some(rat(16, 3)));
        assert_eq!(recognize_rational(PI, 1000, 1e-12), None);
    }
}
