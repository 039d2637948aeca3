//! Exact Bures-measure results: determinant moments, the first moment of
//! `|ρ^PT|` against `|ρ|^k`, eigenvalue-monomial families and constant
//! tables.
//!
//! Monomial expectations are over exchangeable (unordered) eigenvalues:
//! `<λ1^4>` is `E[λ_i^4]` for any single eigenvalue, not the expectation of
//! the largest one.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::exact::{gamma_of, pow2, PiMultiple};
use crate::fitseq::{recombine_partial_fractions, PartialFraction};
use crate::poly::{product, Poly};
use crate::scalar::{int, rat};
use crate::{Error, Rational, RationalFunction, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EnsembleVariant {
    TwoQubit,
    TwoRebit,
    Retrit,
}

impl EnsembleVariant {
    pub const ALL: [EnsembleVariant; 3] = [Self::TwoQubit, Self::TwoRebit, Self::Retrit];

    pub fn dim(self) -> usize {
        match self {
            Self::TwoQubit | Self::TwoRebit => 4,
            Self::Retrit => 3,
        }
    }

    pub fn is_complex(self) -> bool {
        self == Self::TwoQubit
    }

    /// Dyson-type parameter: 1 for complex entries, 1/2 for real.
    pub fn alpha(self) -> Rational {
        if self.is_complex() {
            int(1)
        } else {
            rat(1, 2)
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::TwoQubit => "two-qubit",
            Self::TwoRebit => "two-rebit",
            Self::Retrit => "retrit",
        }
    }
}

impl fmt::Display for EnsembleVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EnsembleVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "two-qubit" | "qubit" => Ok(Self::TwoQubit),
            "two-rebit" | "rebit" => Ok(Self::TwoRebit),
            "retrit" => Ok(Self::Retrit),
            other => Err(Error::InvalidInput(format!("unknown variant `{other}`"))),
        }
    }
}

/// Eigenvalue exponents `(k1, k2, ...)` of `λ1^k1 λ2^k2 ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialExponents(pub Vec<u32>);

impl MonomialExponents {
    pub fn new(e: Vec<u32>, v: EnsembleVariant) -> Result<Self> {
        if e.len() != v.dim() {
            return Err(Error::DimensionMismatch {
                expected: v.dim(),
                actual: e.len(),
            });
        }
        Ok(Self(e))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// `<|ρ|^k>` as `coefficient · √π^p` before cancellation is checked.
pub fn bures_det_moment_pi(k: u32, v: EnsembleVariant) -> Result<PiMultiple> {
    let ki = k as i64;
    let k = int(ki);
    let g = |x: Rational| gamma_of(&x);
    let two = int(2);
    let val = match v {
        EnsembleVariant::TwoQubit => {
            let num = g(&k + rat(1, 2))? * g(&k + rat(3, 2))? * g(&k * &two + int(2))?;
            let den = PiMultiple {
                coefficient: Rational::one(),
                sqrt_pi_power: 1,
            } * g(&k + int(3))?
                * g(&k + int(4))?
                * g(&k * &two + rat(9, 2))?;
            (num / den) * (int(315) * pow2(-8 * ki - 1))
        }
        EnsembleVariant::TwoRebit => {
            let num = g(&k * &two + rat(3, 2))?;
            let poly = &k * &k * &two + &k * int(3) + int(1);
            let den = PiMultiple {
                coefficient: poly,
                sqrt_pi_power: 1,
            } * g(&k * &two + int(4))?;
            (num / den) * (int(3) * pow2(2 - 8 * ki))
        }
        EnsembleVariant::Retrit => {
            let num = g(&k * int(4) + int(2))?;
            let den = g(&k * int(3) + int(3))? * g(&k + int(2))?;
            (num / den) * pow2(1 - 8 * ki)
        }
    };
    Ok(val)
}

/// `<|ρ|^k> = <λ1^k ··· λd^k>`, exact once the `√π` factors cancel.
pub fn bures_det_moment(k: u32, v: EnsembleVariant) -> Result<Rational> {
    bures_det_moment_pi(k, v)?.into_rational()
}

/// Two-qubit degree-5 ratio `R(k)`. With the tabulated constants,
/// `<|ρ^PT| |ρ|^k> = R(k + 1) · <|ρ|^k>`.
pub fn qubit_pt_ratio() -> RationalFunction {
    RationalFunction::canonical_new(
        Poly::from_ints_desc(&[8, 36, -82, -681, -1366, -885]),
        Poly::from_ints_desc(&[16, 192, 883, 1947, 2062, 840]).scale(&int(128)),
    )
    .expect("non-zero denominator")
}

/// The factored form `(...)/(128 (k+2)(k+3)(k+4)(4k+5)(4k+7))`.
pub fn qubit_pt_ratio_factored() -> RationalFunction {
    let den = product(&[
        Poly::constant(int(128)),
        Poly::from_ints_desc(&[1, 2]),
        Poly::from_ints_desc(&[1, 3]),
        Poly::from_ints_desc(&[1, 4]),
        Poly::from_ints_desc(&[4, 5]),
        Poly::from_ints_desc(&[4, 7]),
    ]);
    RationalFunction::canonical_new(Poly::from_ints_desc(&[8, 36, -82, -681, -1366, -885]), den)
        .expect("non-zero denominator")
}

/// Two-rebit degree-5 ratio `S(k)`. With the tabulated constants,
/// `<|ρ^PT| |ρ|^k> = S(k + 1) · <|ρ|^{k+1}>`.
pub fn rebit_pt_ratio() -> RationalFunction {
    let den = product(&[
        Poly::from_ints_desc(&[1, 0]),
        Poly::from_ints_desc(&[8, -2, -1]),
        Poly::from_ints_desc(&[8, 18, -5]),
    ]);
    RationalFunction::canonical_new(Poly::from_ints_desc(&[64, 128, -340, -1032, -1099, -384]), den)
        .expect("non-zero denominator")
}

/// The factored form `(...)/(k (2k−1)(2k+5)(4k−1)(4k+1))`.
pub fn rebit_pt_ratio_factored() -> RationalFunction {
    let den = product(&[
        Poly::from_ints_desc(&[1, 0]),
        Poly::from_ints_desc(&[2, -1]),
        Poly::from_ints_desc(&[2, 5]),
        Poly::from_ints_desc(&[4, -1]),
        Poly::from_ints_desc(&[4, 1]),
    ]);
    RationalFunction::canonical_new(Poly::from_ints_desc(&[64, 128, -340, -1032, -1099, -384]), den)
        .expect("non-zero denominator")
}

/// `<|ρ^PT| |ρ|^k>` under the Bures measure.
pub fn bures_pt_det_moment(k: u32, v: EnsembleVariant) -> Result<Rational> {
    let kk = int(k as i64 + 1);
    match v {
        EnsembleVariant::TwoQubit => Ok(qubit_pt_ratio().eval(&kk)? * bures_det_moment(k, v)?),
        EnsembleVariant::TwoRebit => Ok(rebit_pt_ratio().eval(&kk)? * bures_det_moment(k + 1, v)?),
        EnsembleVariant::Retrit => Err(Error::InvalidInput(
            "partial transpose needs a 2×2 bipartite system".into(),
        )),
    }
}

/// `<|ρ^PT|^2>` for two rebits.
pub fn bures_pt_squared_moment_rebit() -> Rational {
    rat(50654227, 1307993702400)
}

/// What the ratio is normalized by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalizer {
    /// `<λ^{k + offsets}> / <|ρ|^k>`, defined for `k ≥ 1`.
    DetK,
    /// `<λ^{offsets} |ρ|^k> / <|ρ|^{k+2}>`, defined for `k ≥ 0`.
    DetKPlus2,
}

/// A closed-form eigenvalue-monomial family.
/// Terms `(p, q, a, b)` for `(p/q)/(a·k + b)`, plus a constant.
type PartialTerms = (&'static [(i64, i64, i64, i64)], i64);

#[derive(Clone, Debug)]
pub struct MonomialFamily {
    pub variant: EnsembleVariant,
    /// Exponent of `λ_i` is `k + offsets[i]`.
    pub offsets: &'static [i32],
    pub normalizer: Normalizer,
    num: &'static [&'static [i64]],
    den: &'static [&'static [i64]],
    partial: Option<PartialTerms>,
}

impl MonomialFamily {
    /// The authoritative polynomial ratio.
    pub fn ratio(&self) -> RationalFunction {
        let p = |f: &[&[i64]]| product(&f.iter().map(|c| Poly::from_ints_desc(c)).collect::<Vec<_>>());
        RationalFunction::canonical_new(p(self.num), p(self.den)).expect("non-zero denominator")
    }

    /// The printed partial-fraction form, recombined, when one exists.
    pub fn partial_fraction_form(&self) -> Option<RationalFunction> {
        self.partial.map(|(terms, constant)| {
            let terms: Vec<PartialFraction> = terms
                .iter()
                .map(|&(p, q, a, b)| PartialFraction::new(rat(p, q), a, b))
                .collect();
            recombine_partial_fractions(&terms, &int(constant))
        })
    }

    pub fn min_k(&self) -> u32 {
        match self.normalizer {
            Normalizer::DetK => 1,
            Normalizer::DetKPlus2 => 0,
        }
    }

    /// Exponents at a given `k`.
    pub fn exponents(&self, k: u32) -> Vec<u32> {
        self.offsets.iter().map(|&o| (k as i64 + o as i64) as u32).collect()
    }

    fn label(&self) -> String {
        let parts: Vec<String> = self
            .offsets
            .iter()
            .map(|&o| match (self.normalizer, o) {
                (Normalizer::DetKPlus2, o) => o.to_string(),
                (_, 0) => "k".to_string(),
                (_, o) if o > 0 => format!("k+{o}"),
                (_, o) => format!("k{o}"),
            })
            .collect();
        match self.normalizer {
            Normalizer::DetK => format!("{} ({})", self.variant, parts.join(",")),
            Normalizer::DetKPlus2 => format!("{} ({})+k", self.variant, parts.join(",")),
        }
    }
}

const D5: &[i64] = &[128, 1344, 5080, 8700, 6642, 1701];

static FAMILIES: &[MonomialFamily] = &[
    MonomialFamily {
        variant: EnsembleVariant::TwoQubit,
        offsets: &[1, 0, 0, -1],
        normalizer: Normalizer::DetK,
        num: &[&[4, 20, 19]],
        den: &[&[4, 0, -1]],
        partial: None,
    },
    MonomialFamily {
        variant: EnsembleVariant::TwoQubit,
        offsets: &[1, 1, -1, -1],
        normalizer: Normalizer::DetK,
        num: &[&[4, 56, 279, 556, 350]],
        den: &[&[1, 0], &[1, 4], &[2, -1], &[2, 1]],
        partial: None,
    },
    MonomialFamily {
        variant: EnsembleVariant::TwoQubit,
        offsets: &[2, 0, -1, -1],
        normalizer: Normalizer::DetK,
        num: &[&[4, 76, 439, 996, 770]],
        den: &[&[1, 0], &[1, 4], &[2, -1], &[2, 1]],
        partial: None,
    },
    MonomialFamily {
        variant: EnsembleVariant::TwoQubit,
        offsets: &[3, -1, -1, -1],
        normalizer: Normalizer::DetK,
        num: &[&[2, 5], &[4, 128, 1067, 3148, 2898]],
        den: &[&[1, 0], &[1, 4], &[2, -1], &[2, 1], &[2, 1]],
        partial: None,
    },
    MonomialFamily {
        variant: EnsembleVariant::TwoRebit,
        offsets: &[1, 0, 0, -1],
        normalizer: Normalizer::DetK,
        num: &[&[8, 22, 11]],
        den: &[&[8, -2, -1]],
        partial: Some((&[(-4, 1, 4, 1), (8, 1, 2, -1)], 1)),
    },
    MonomialFamily {
        variant: EnsembleVariant::TwoRebit,
        offsets: &[1, 1, -1, -1],
        normalizer: Normalizer::DetK,
        num: &[&[64, 512, 1452, 1624, 545]],
        den: &[&[2, -1], &[2, 5], &[4, -1], &[4, 1]],
        partial: None,
    },
    MonomialFamily {
        variant: EnsembleVariant::TwoRebit,
        offsets: &[2, 0, -1, -1],
        normalizer: Normalizer::DetK,
        num: &[&[64, 704, 2364, 3064, 1325]],
        den: &[&[2, -1], &[2, 5], &[4, -1], &[4, 1]],
        partial: None,
    },
    MonomialFamily {
        variant: EnsembleVariant::TwoRebit,
        offsets: &[3, -1, -1, -1],
        normalizer: Normalizer::DetK,
        num: &[&[64, 1280, 7596, 18712, 20057, 7680]],
        den: &[&[1, 0], &[2, -1], &[2, 5], &[4, -1], &[4, 1]],
        partial: None,
    },
    MonomialFamily {
        variant: EnsembleVariant::TwoRebit,
        offsets: &[3, 2, 2, 1],
        normalizer: Normalizer::DetKPlus2,
        num: &[&[8, 54, 87]],
        den: &[&[8, 30, 27]],
        partial: None,
    },
    MonomialFamily {
        variant: EnsembleVariant::TwoRebit,
        offsets: &[3, 3, 2, 0],
        normalizer: Normalizer::DetKPlus2,
        num: &[&[128, 2496, 19000, 70284, 125922, 87213]],
        den: &[D5],
        partial: Some((
            &[
                (176, 63, 4, 9),
                (-334, 1, 6, 9),
                (495, 1, 14, 7),
                (1260, 1, 44, 77),
                (-5, 99, 2, 9),
            ],
            1,
        )),
    },
    MonomialFamily {
        variant: EnsembleVariant::TwoRebit,
        offsets: &[4, 3, 1, 0],
        normalizer: Normalizer::DetKPlus2,
        num: &[&[512, 13696, 143008, 751304, 2096676, 2936118, 1596285]],
        den: &[&[4, 5], D5],
        partial: Some((
            &[
                (5, 858, 2, 9),
                (675, 1, 4, 2),
                (-184, 3, 4, 9),
                (6480, 1, 44, 77),
                (-14700, 1, 52, 65),
                (-6, 1, 2, 3),
            ],
            1,
        )),
    },
    MonomialFamily {
        variant: EnsembleVariant::TwoRebit,
        offsets: &[5, 2, 1, 0],
        normalizer: Normalizer::DetKPlus2,
        num: &[&[512, 17792, 234144, 1576840, 5978260, 12867318, 14589933, 6699810]],
        den: &[&[1, 2], &[4, 5], D5],
        partial: Some((
            &[
                (-175, 2574, 2, 9),
                (-122500, 39, 4, 5),
                (17492, 63, 4, 9),
                (-1936, 1, 6, 9),
                (55740, 1, 44, 77),
                (32765, 1, 84, 42),
                (-1792, 3, 1, 2),
            ],
            1,
        )),
    },
    MonomialFamily {
        variant: EnsembleVariant::Retrit,
        offsets: &[1, 0, -1],
        normalizer: Normalizer::DetK,
        num: &[&[16, 36, 13]],
        den: &[&[2], &[8, -2, -1]],
        partial: Some((&[(-5, 1, 12, 3), (35, 6, 2, -1)], 1)),
    },
    MonomialFamily {
        variant: EnsembleVariant::Retrit,
        offsets: &[2, -1, -1],
        normalizer: Normalizer::DetK,
        num: &[&[32, 224, 308, 101]],
        den: &[&[32, -16, -2, 1]],
        partial: None,
    },
];

/// All closed-form families.
pub fn monomial_families() -> &'static [MonomialFamily] {
    FAMILIES
}

/// Looks up a family by variant, offsets and normalizer.
pub fn find_family(
    v: EnsembleVariant,
    offsets: &[i32],
    normalizer: Normalizer,
) -> Result<&'static MonomialFamily> {
    FAMILIES
        .iter()
        .find(|f| f.variant == v && f.offsets == offsets && f.normalizer == normalizer)
        .ok_or_else(|| {
            Error::UnknownFamily(format!("{v} offsets {offsets:?} ({normalizer:?})"))
        })
}

/// The family's ratio at `k`.
pub fn bures_monomial_ratio(
    v: EnsembleVariant,
    offsets: &[i32],
    normalizer: Normalizer,
    k: u32,
) -> Result<Rational> {
    let fam = find_family(v, offsets, normalizer)?;
    if k < fam.min_k() {
        return Err(Error::InvalidInput(format!(
            "k = {k} below the family's range (k ≥ {})",
            fam.min_k()
        )));
    }
    fam.ratio().eval(&int(k as i64))
}

/// The family's monomial expectation at `k` (ratio times its normalizer).
pub fn bures_monomial_expectation(
    v: EnsembleVariant,
    offsets: &[i32],
    normalizer: Normalizer,
    k: u32,
) -> Result<Rational> {
    let r = bures_monomial_ratio(v, offsets, normalizer, k)?;
    let det = match normalizer {
        Normalizer::DetK => bures_det_moment(k, v)?,
        Normalizer::DetKPlus2 => bures_det_moment(k + 2, v)?,
    };
    Ok(r * det)
}

/// Outcome of comparing a printed partial-fraction form with its ratio.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractionReport {
    pub family: String,
    pub consistent: bool,
}

/// Recombines every printed partial-fraction form and compares it with the
/// polynomial ratio. Mismatches are logged, not raised.
pub fn check_partial_fractions() -> Vec<PartialFractionReport> {
    FAMILIES
        .iter()
        .filter_map(|f| {
            let pf = f.partial_fraction_form()?;
            let consistent = pf.same_function(&f.ratio());
            if !consistent {
                log::warn!("partial-fraction form of {} disagrees with its ratio", f.label());
            }
            Some(PartialFractionReport {
                family: f.label(),
                consistent,
            })
        })
        .collect()
}

/// The degree-4 monomial expectations `<λ1λ2λ3λ4>, <λ1²λ2λ3>, <λ1²λ2²>,
/// <λ1³λ2>, <λ1⁴>`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticMonomials {
    pub l1111: Rational,
    pub l2110: Rational,
    pub l2200: Rational,
    pub l3100: Rational,
    pub l4000: Rational,
}

impl QuarticMonomials {
    pub fn as_array(&self) -> [(&'static [u32; 4], &Rational); 5] {
        [
            (&[1, 1, 1, 1], &self.l1111),
            (&[2, 1, 1, 0], &self.l2110),
            (&[2, 2, 0, 0], &self.l2200),
            (&[3, 1, 0, 0], &self.l3100),
            (&[4, 0, 0, 0], &self.l4000),
        ]
    }

    /// `E[(Σλ)^4]` expanded over exchangeable eigenvalues:
    /// `4<λ1⁴> + 4·12<λ1³λ2> + 6·6<λ1²λ2²> + 12·12<λ1²λ2λ3> + 24<λ1λ2λ3λ4>`,
    /// which must equal 1.
    pub fn multinomial_closure(&self) -> Rational {
        int(4) * &self.l4000
            + int(48) * &self.l3100
            + int(36) * &self.l2200
            + int(144) * &self.l2110
            + int(24) * &self.l1111
    }

    /// The same sum with pattern counts only (`4, 12, 6, 12, 24`) and no
    /// multinomial coefficients. Not an identity; kept for comparison.
    pub fn pattern_count_sum(&self) -> Rational {
        int(4) * &self.l4000
            + int(12) * &self.l3100
            + int(6) * &self.l2200
            + int(12) * &self.l2110
            + int(24) * &self.l1111
    }
}

/// Published two-qubit quartic constants.
pub fn qubit_quartic_constants() -> QuarticMonomials {
    QuarticMonomials {
        l1111: rat(1, 16896),
        l2110: rat(43, 50688),
        l2200: rat(83, 16896),
        l3100: rat(457, 50688),
        l4000: rat(1127, 16896),
    }
}

/// Published two-rebit quartic constants.
pub fn rebit_quartic_constants() -> QuarticMonomials {
    QuarticMonomials {
        l1111: rat(1, 8192),
        l2110: rat(41, 40960),
        l2200: rat(1399, 286720),
        l3100: rat(2507, 286720),
        l4000: rat(18463, 286720),
    }
}

/// Published `<|ρ^PT| |ρ|^k>`, two qubits, `k = 0..=5`.
pub fn qubit_pt_table() -> Vec<Rational> {
    vec![
        rat(-1, 256),
        rat(-137, 1124597760),
        rat(-83, 4786288066560),
        Rational::new((-565).into(), 219011789856178176u64.into()),
        Rational::new(139.into(), "52562829565482762240".parse().unwrap()),
        Rational::new(14069.into(), "1955073914750458962903040".parse().unwrap()),
    ]
}

/// Published `<|ρ^PT| |ρ|^k>`, two rebits, `k = 0..=4`. Positive signs at
/// `k = 2, 3` follow the leading fractions.
pub fn rebit_pt_table() -> Vec<Rational> {
    vec![
        rat(-2663, 860160),
        rat(-127, 1132462080),
        rat(1257, 105827994173440),
        rat(13813, 221661544159641600),
        Rational::new(3927.into(), "28823037615171174400".parse().unwrap()),
    ]
}

/// Two-rebit `<|ρ^PT|>` rebuilt from the quartic constants:
/// `(26/75)<λ1²λ2λ3> + (53/300)<λ1²λ2²> − (2/15)<λ1³λ2> − (1/20)<λ1⁴> + 33/409600`.
pub fn rebit_first_moment_identity() -> Result<Rational> {
    let c = rebit_quartic_constants();
    let constant = rat(33, 50) * &c.l1111;
    let value = rat(26, 75) * &c.l2110 + rat(53, 300) * &c.l2200
        - rat(2, 15) * &c.l3100
        - rat(1, 20) * &c.l4000
        + constant;
    let expected = rat(-2663, 860160);
    if value != expected {
        return Err(Error::IdentityViolation {
            expected: expected.to_string(),
            actual: value.to_string(),
        });
    }
    Ok(value)
}
