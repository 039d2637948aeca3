//! Hilbert-Schmidt determinantal moments of 4×4 density matrices.
//!
//! All values are exact rationals in the Dyson-type parameter `α`
//! (`1/2` two-rebit, `1` two-qubit, `2` two-quaterbit).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exact::{factorial, pochhammer, pow2};
use crate::hypergeom::{pfq_unit, pfq_unit_limit, HypergeometricSpec, PerturbedParam};
use crate::scalar::{int, rat};
use crate::{Error, Rational, Result};

/// Dyson-index-like parameter `α > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DysonParameter(Rational);

impl DysonParameter {
    pub fn new(alpha: Rational) -> Result<Self> {
        if alpha <= Rational::zero() {
            return Err(Error::UnsupportedAlpha(alpha.to_string()));
        }
        Ok(Self(alpha))
    }

    pub fn rebit() -> Self {
        Self(rat(1, 2))
    }

    pub fn qubit() -> Self {
        Self(int(1))
    }

    pub fn quaterbit() -> Self {
        Self(int(2))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

impl fmt::Display for DysonParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `(n, k)` in `<|ρ^PT|^n |ρ|^k>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MomentIndex {
    pub n: u32,
    pub k: u32,
}

impl MomentIndex {
    pub fn new(n: u32, k: u32) -> Self {
        Self { n, k }
    }
}

fn q(n: u32) -> Rational {
    int(n as i64)
}

/// `<|ρ|^k>`.
pub fn hs_det_moment(k: u32, alpha: &DysonParameter) -> Rational {
    let a = alpha.value();
    let num = factorial(k) * pochhammer(&(a + int(1)), k) * pochhammer(&(a * int(2) + int(1)), k);
    let den = pow2(6 * k as i64)
        * pochhammer(&(a * int(3) + rat(3, 2)), k)
        * pochhammer(&(a * int(6) + rat(5, 2)), 2 * k);
    num / den
}

/// `<|ρ^PT|^n>`.
///
/// For `n = 1` the ₅F₄ has a `1 − n` lower parameter and is replaced by 1.
/// For `n = 0` both terms of the formula equal 1; the moment itself is 1.
pub fn hs_pt_moment(n: u32, alpha: &DysonParameter) -> Result<Rational> {
    if n == 0 {
        return Ok(Rational::one());
    }
    let a = alpha.value();
    let nn = q(n);
    let common = pochhammer(&(a * int(3) + rat(3, 2)), n) * pochhammer(&(a * int(6) + rat(5, 2)), 2 * n);
    let first = factorial(n) * pochhammer(&(a + int(1)), n) * pochhammer(&(a * int(2) + int(1)), n)
        / (pow2(6 * n as i64) * &common);
    let second = pochhammer(&(-&nn * int(2) - int(1) - a * int(5)), n)
        * pochhammer(a, n)
        * pochhammer(&(a + rat(1, 2)), n)
        / (pow2(4 * n as i64) * &common);
    let spec = HypergeometricSpec::new(
        vec![
            -(&nn - int(2)) / int(2),
            -(&nn - int(1)) / int(2),
            -nn.clone(),
            a + int(1),
            a * int(2) + int(1),
        ],
        vec![
            int(1) - &nn,
            &nn + int(2) + a * int(5),
            int(1) - &nn - a,
            rat(1, 2) - &nn - a,
        ],
    )
    .sum_as_one(n == 1);
    Ok(first + second * pfq_unit(&spec)?)
}

/// `<(|ρ| |ρ^PT|)^n>`.
pub fn hs_balanced_moment(n: u32, alpha: &DysonParameter) -> Result<Rational> {
    let a = alpha.value();
    let nn = q(n);
    let pre = factorial(2 * n) * pochhammer(&(a + int(1)), 2 * n) * pochhammer(&(a * int(2) + int(1)), 2 * n)
        / (pow2(12 * n as i64)
            * pochhammer(&(a * int(3) + rat(3, 2)), 2 * n)
            * pochhammer(&(a * int(6) + rat(5, 2)), 4 * n));
    let spec = HypergeometricSpec::new(
        vec![
            -nn.clone(),
            a.clone(),
            a + rat(1, 2),
            -&nn * int(4) - int(1) - a * int(5),
        ],
        vec![
            -&nn * int(2) - a,
            -&nn * int(2) - a * int(2),
            rat(1, 2) - &nn,
        ],
    );
    Ok(pre * pfq_unit(&spec)?)
}

/// `<|ρ^PT|^n |ρ|^k> / <|ρ|^k>`.
///
/// At `k = 0` the literal ₅F₄ truncates after its first term because of the
/// `−k` upper parameter; the value there is the `k → 0` limit, taken with
/// every `k`-dependent parameter perturbed to first order.
pub fn hs_bivariate_ratio(idx: MomentIndex, alpha: &DysonParameter) -> Result<Rational> {
    let a = alpha.value();
    let (n, k) = (q(idx.n), q(idx.k));
    let pre = pochhammer(&(&k + int(1)), idx.n)
        * pochhammer(&(&k + int(1) + a), idx.n)
        * pochhammer(&(&k + int(1) + a * int(2)), idx.n)
        / (pow2(6 * idx.n as i64)
            * pochhammer(&(&k + a * int(3) + rat(3, 2)), idx.n)
            * pochhammer(&(&k * int(2) + a * int(6) + rat(5, 2)), 2 * idx.n));
    let upper = [
        (-n.clone(), int(0)),
        (-k.clone(), int(-1)),
        (a.clone(), int(0)),
        (a + rat(1, 2), int(0)),
        (-&k * int(2) - &n * int(2) - int(1) - a * int(5), int(-2)),
    ];
    let lower = [
        (-&k - &n - a, int(-1)),
        (-&k - &n - a * int(2), int(-1)),
        (-(&k + &n) / int(2), rat(-1, 2)),
        (-(&k + &n - int(1)) / int(2), rat(-1, 2)),
    ];
    let sum = if idx.k == 0 && idx.n > 0 {
        let p = |v: &[(Rational, Rational)]| {
            v.iter()
                .map(|(c, s)| PerturbedParam::new(c.clone(), s.clone()))
                .collect::<Vec<_>>()
        };
        pfq_unit_limit(&p(&upper), &p(&lower))?
    } else {
        let spec = HypergeometricSpec::new(
            upper.iter().map(|(c, _)| c.clone()).collect(),
            lower.iter().map(|(c, _)| c.clone()).collect(),
        );
        pfq_unit(&spec)?
    };
    Ok(pre * sum)
}

/// `<|ρ^PT|^n |ρ|^k>`.
pub fn hs_bivariate_moment(idx: MomentIndex, alpha: &DysonParameter) -> Result<Rational> {
    Ok(hs_bivariate_ratio(idx, alpha)? * hs_det_moment(idx.k, alpha))
}

/// `<|ρ^PT| |ρ|^k> / <|ρ|^k>` for two qubits, as a cubic ratio in `k`.
pub fn hs_ratio_qubit(k: u32) -> Rational {
    let k = q(k);
    let num = &k * (&k * (&k + int(6)) - int(1)) - int(42);
    let den = int(8) * (&k * int(2) + int(9)) * (&k * int(4) + int(17)) * (&k * int(4) + int(19));
    num / den
}

/// `<|ρ^PT| |ρ|^k> / <|ρ|^k>` for two rebits; vanishes at `k = 1`.
pub fn hs_ratio_rebit(k: u32) -> Rational {
    let k = q(k);
    let num = (&k - int(1)) * (&k * (&k * int(2) + int(11)) + int(16));
    let den = int(32) * (&k + int(3)) * (&k * int(4) + int(11)) * (&k * int(4) + int(13));
    num / den
}

/// `<λ1^{k+5} λ2^{k+2} λ3^{k+1} λ4^k> / <|ρ|^k>` for two qubits (unordered
/// eigenvalues), from the factored form.
pub fn hs_monomial_qubit_ratio(k: u32) -> Rational {
    let k = q(k);
    let num = (&k + int(2))
        * (&k + int(3))
        * (&k * (&k * (&k * (&k + int(45)) + int(620)) + int(3400)) + int(6514));
    let den = int(64)
        * (&k * int(2) + int(9))
        * (&k * int(2) + int(11))
        * (&k * int(4) + int(17))
        * (&k * int(4) + int(19))
        * (&k * int(4) + int(21))
        * (&k * int(4) + int(23));
    num / den
}

/// The same ratio from the expanded degree-6 form.
pub fn hs_monomial_qubit_ratio_expanded(k: u32) -> Rational {
    let k = q(k);
    let horner = |c: &[i64]| c.iter().fold(Rational::zero(), |acc, &x| acc * &k + int(x));
    let num = horner(&[1, 50, 851, 6770, 27234, 52970, 39084]);
    let den = int(64) * horner(&[1024, 30720, 383104, 2542080, 9465796, 18753960, 15444891]);
    num / den
}

/// Sparse polynomial in four variables.
type Multi = BTreeMap<[u32; 4], Rational>;

fn multi_mul(a: &Multi, b: &Multi) -> Multi {
    let mut out = Multi::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
            let entry = out.entry(e).or_insert_with(Rational::zero);
            *entry += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn multi_pow(a: &Multi, e: u32) -> Multi {
    let mut out = Multi::from([([0; 4], Rational::one())]);
    for _ in 0..e {
        out = multi_mul(&out, a);
    }
    out
}

fn linear(coeffs: [Rational; 4]) -> Multi {
    let mut out = Multi::new();
    for (i, c) in coeffs.into_iter().enumerate() {
        if !c.is_zero() {
            let mut e = [0; 4];
            e[i] = 1;
            out.insert(e, c);
        }
    }
    out
}

/// `∫_Δ Π x_i^{e_i} dx = Π e_i! / (Σe_i + 3)!` summed over the terms.
fn dirichlet_integral(p: &Multi) -> Rational {
    p.iter()
        .map(|(e, c)| {
            let num: Rational = e.iter().map(|&x| factorial(x)).product();
            c * num / factorial(e.iter().sum::<u32>() + 3)
        })
        .sum()
}

/// Vandermonde `Π_{i<j} (x_i − x_j)` of four linear forms.
fn vandermonde(x: &[Multi; 4]) -> Multi {
    let mut v = Multi::from([([0; 4], Rational::one())]);
    for i in 0..4 {
        for j in i + 1..4 {
            let mut diff = x[i].clone();
            for (e, c) in &x[j] {
                let entry = diff.entry(*e).or_insert_with(Rational::zero);
                *entry -= c;
            }
            diff.retain(|_, c| !c.is_zero());
            v = multi_mul(&v, &diff);
        }
    }
    v
}

fn unit_forms() -> [Multi; 4] {
    std::array::from_fn(|i| {
        let mut c = [int(0), int(0), int(0), int(0)];
        c[i] = int(1);
        linear(c)
    })
}

/// `λ` on the ordered sector `λ1 ≥ λ2 ≥ λ3 ≥ λ4` in gap coordinates:
/// `λ4 = ν1/4`, `λ3 = λ4 + ν2/3`, `λ2 = λ3 + ν3/2`, `λ1 = λ2 + ν4`.
/// The map sends the standard simplex onto the sector with Jacobian 1/24.
fn gap_forms() -> [Multi; 4] {
    let l4 = [rat(1, 4), int(0), int(0), int(0)];
    let l3 = [rat(1, 4), rat(1, 3), int(0), int(0)];
    let l2 = [rat(1, 4), rat(1, 3), rat(1, 2), int(0)];
    let l1 = [rat(1, 4), rat(1, 3), rat(1, 2), int(1)];
    [linear(l1), linear(l2), linear(l3), linear(l4)]
}

fn monomial(x: &[Multi; 4], e: [u32; 4]) -> Multi {
    (0..4).fold(Multi::from([([0; 4], Rational::one())]), |acc, i| {
        multi_mul(&acc, &multi_pow(&x[i], e[i]))
    })
}

fn permutations(e: [u32; 4]) -> Vec<[u32; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let idx = [a, b, c, d];
                    let mut seen = [false; 4];
                    if idx.iter().all(|&i| !std::mem::replace(&mut seen[i], true)) {
                        out.push([e[a], e[b], e[c], e[d]]);
                    }
                }
            }
        }
    }
    out
}

/// Unnormalized `∫_Δ λ^e |V(λ)|^{2α} dλ`.
fn hs_weight_integral(e: [u32; 4], alpha: &DysonParameter) -> Result<Rational> {
    if *alpha.value() == int(1) {
        let x = unit_forms();
        let v = vandermonde(&x);
        Ok(dirichlet_integral(&multi_mul(&multi_mul(&v, &v), &monomial(&x, e))))
    } else if *alpha.value() == rat(1, 2) {
        // |V| is the Vandermonde itself on the ordered sector; the other 23
        // sectors are the sector integrals of the permuted monomial.
        let x = gap_forms();
        let v = vandermonde(&x);
        let total: Rational = permutations(e)
            .into_iter()
            .map(|p| dirichlet_integral(&multi_mul(&v, &monomial(&x, p))))
            .sum();
        Ok(total / int(24))
    } else {
        Err(Error::UnsupportedAlpha(alpha.to_string()))
    }
}

/// Normalization constant `Z` of the HS eigenvalue density
/// `Z · |V(λ)|^{2α}` on the simplex (`dλ` over three free coordinates).
pub fn hs_normalization(alpha: &DysonParameter) -> Result<Rational> {
    Ok(Rational::one() / hs_weight_integral([0; 4], alpha)?)
}

/// Exact `E[λ1^a λ2^b λ3^c λ4^d]` for exchangeable eigenvalues under the HS
/// eigenvalue density, for `α ∈ {1/2, 1}`.
pub fn hs_monomial_exact(e: [u32; 4], alpha: &DysonParameter) -> Result<Rational> {
    Ok(hs_weight_integral(e, alpha)? * hs_normalization(alpha)?)
}
