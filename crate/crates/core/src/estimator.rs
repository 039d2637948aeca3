//! Streaming Monte Carlo estimates of `⟨|ρ^PT|^n |ρ|^k⟩` on a grid of
//! `(n, k)`, with mergeable accumulators and ratio tables against exact
//! moments.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::bures::EnsembleVariant;
use crate::extfloat::ExtFloat;
use crate::rng::stream_rng;
use crate::sampler::{pt_and_det, sample_density, DensityMatrix, Measure};
use crate::scalar::rational_frexp;
use crate::{Error, Rational, Result};

/// Sums of `a^n b^k` and their squares for `0 ≤ n ≤ max_n`, `0 ≤ k ≤ max_k`,
/// where `a = |ρ^PT|` and `b = |ρ|`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentAccumulator {
    max_n: usize,
    max_k: usize,
    count: u64,
    sums: Vec<ExtFloat>,
    sums_sq: Vec<ExtFloat>,
}

/// Mean and standard error of one grid entry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub mean: ExtFloat,
    pub se: ExtFloat,
}

impl Estimate {
    /// `(mean − exact) / se`, or `None` when the standard error is zero.
    pub fn z_score(&self, exact: &Rational) -> Option<f64> {
        if self.se.is_zero() {
            return None;
        }
        Some(((self.mean - ext_from_rational(exact)) / self.se).to_f64())
    }
}

pub fn ext_from_rational(r: &Rational) -> ExtFloat {
    match rational_frexp(r) {
        None => ExtFloat::ZERO,
        Some((m, e)) => ExtFloat::from_f64(m).scale_pow2(e),
    }
}

impl MomentAccumulator {
    pub fn new(max_n: usize, max_k: usize) -> Self {
        let len = (max_n + 1) * (max_k + 1);
        Self {
            max_n,
            max_k,
            count: 0,
            sums: vec![ExtFloat::ZERO; len],
            sums_sq: vec![ExtFloat::ZERO; len],
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.max_n, self.max_k)
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    fn idx(&self, n: usize, k: usize) -> usize {
        n * (self.max_k + 1) + k
    }

    pub fn sum(&self, n: usize, k: usize) -> ExtFloat {
        self.sums[self.idx(n, k)]
    }

    /// Adds one observation `(|ρ^PT|, |ρ|) = (a, b)`. Powers are built by
    /// running products in extended precision.
    pub fn accumulate_values(&mut self, a: f64, b: f64) {
        let a = ExtFloat::from_f64(a);
        let b = ExtFloat::from_f64(b);
        let mut pb = Vec::with_capacity(self.max_k + 1);
        let mut p = ExtFloat::ONE;
        for _ in 0..=self.max_k {
            pb.push(p);
            p = p * b;
        }
        let mut pa = ExtFloat::ONE;
        for n in 0..=self.max_n {
            for (k, bk) in pb.iter().enumerate() {
                let v = pa * *bk;
                let i = self.idx(n, k);
                self.sums[i] = self.sums[i] + v;
                self.sums_sq[i] = self.sums_sq[i] + v * v;
            }
            pa = pa * a;
        }
        self.count += 1;
    }

    /// Adds one two-qubit or two-rebit state.
    pub fn accumulate(&mut self, rho: &DensityMatrix<f64>) -> Result<()> {
        let (a, b) = pt_and_det(rho)?;
        self.accumulate_values(a, b);
        Ok(())
    }

    pub fn merge(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let add = |x: &[ExtFloat], y: &[ExtFloat]| -> Vec<ExtFloat> {
            x.iter().zip(y).map(|(a, b)| *a + *b).collect()
        };
        Ok(Self {
            max_n: self.max_n,
            max_k: self.max_k,
            count: self.count + other.count,
            sums: add(&self.sums, &other.sums),
            sums_sq: add(&self.sums_sq, &other.sums_sq),
        })
    }

    /// Grid of estimates, `n`-major. The standard error is
    /// `sqrt((E[x²] − mean²) / (count − 1))`.
    pub fn estimates(&self) -> Result<Vec<Vec<Estimate>>> {
        if self.count < 2 {
            return Err(Error::InsufficientData {
                needed: 2,
                have: self.count,
            });
        }
        let c = ExtFloat::from_f64(self.count as f64);
        let c1 = ExtFloat::from_f64((self.count - 1) as f64);
        Ok((0..=self.max_n)
            .map(|n| {
                (0..=self.max_k)
                    .map(|k| {
                        let i = self.idx(n, k);
                        let mean = self.sums[i] / c;
                        let m2 = self.sums_sq[i] / c;
                        let var = m2 - mean * mean;
                        // below this the difference is rounding in the format
                        let floor = m2 * ExtFloat::from_f64(1e-28);
                        let se = if var > floor {
                            let v = var / c1;
                            ExtFloat::from_f64(v.sqrt_f64())
                        } else {
                            ExtFloat::ZERO
                        };
                        Estimate { mean, se }
                    })
                    .collect()
            })
            .collect())
    }
}

/// A Monte Carlo run split into fixed-size chunks. Chunk `i` draws from
/// stream `stream_offset + i`, and chunk results are merged in index order,
/// so the result does not depend on the number of worker threads.
#[derive(Clone, Debug, PartialEq)]
pub struct McRun {
    pub measure: Measure,
    pub variant: EnsembleVariant,
    pub samples: u64,
    pub seed: u64,
    pub stream_offset: u64,
    pub chunk_size: u64,
    pub max_n: usize,
    pub max_k: usize,
}

/// Summary of a run beyond the moment grid.
#[derive(Clone, Debug, PartialEq)]
pub struct McOutcome {
    pub acc: MomentAccumulator,
    /// Draws with `|ρ^PT|` outside `[−1/16, 1/256]` or `|ρ||ρ^PT|` outside
    /// `[−1/110592, 1/65536]`, beyond a `1e−12` allowance.
    pub range_violations: u64,
}

fn in_range(a: f64, b: f64) -> bool {
    let ab = a * b;
    (-1.0 / 16.0 - 1e-12..=1.0 / 256.0 + 1e-12).contains(&a)
        && (-1.0 / 110592.0 - 1e-15..=1.0 / 65536.0 + 1e-15).contains(&ab)
}

impl McRun {
    pub fn new(measure: Measure, variant: EnsembleVariant, samples: u64, seed: u64) -> Self {
        Self {
            measure,
            variant,
            samples,
            seed,
            stream_offset: 0,
            chunk_size: 10_000,
            max_n: 24,
            max_k: 24,
        }
    }

    pub fn grid(mut self, max_n: usize, max_k: usize) -> Self {
        self.max_n = max_n;
        self.max_k = max_k;
        self
    }

    fn chunk(&self, i: u64) -> Result<(MomentAccumulator, u64)> {
        let start = i * self.chunk_size;
        let len = self.chunk_size.min(self.samples - start);
        let mut rng = stream_rng(self.seed, self.stream_offset + i);
        let mut acc = MomentAccumulator::new(self.max_n, self.max_k);
        let mut bad = 0;
        for _ in 0..len {
            let rho: DensityMatrix<f64> = sample_density(self.measure, self.variant, &mut rng);
            let (a, b) = pt_and_det(&rho)?;
            if !in_range(a, b) {
                bad += 1;
            }
            acc.accumulate_values(a, b);
        }
        Ok((acc, bad))
    }

    pub fn run(&self) -> Result<McOutcome> {
        if self.variant.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                actual: self.variant.dim(),
            });
        }
        if self.chunk_size == 0 {
            return Err(Error::InvalidInput("chunk size must be positive".into()));
        }
        let chunks = self.samples.div_ceil(self.chunk_size);
        let parts: Vec<_> = (0..chunks)
            .into_par_iter()
            .map(|i| self.chunk(i))
            .collect::<Result<_>>()?;
        let mut acc = MomentAccumulator::new(self.max_n, self.max_k);
        let mut range_violations = 0;
        for (a, bad) in &parts {
            acc = acc.merge(a)?;
            range_violations += bad;
        }
        log::debug!(
            "{} {} run: {} samples in {} chunks",
            self.measure,
            self.variant,
            acc.count(),
            chunks
        );
        Ok(McOutcome {
            acc,
            range_violations,
        })
    }
}

/// One row of a ratio table.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioRow {
    pub n: usize,
    pub k: usize,
    pub mc: ExtFloat,
    pub exact: Rational,
    /// `None` when the exact value is zero.
    pub ratio: Option<ExtFloat>,
    pub se: ExtFloat,
    pub count: u64,
}

/// Row labels shared by the whole table.
#[derive(Clone, Debug, PartialEq)]
pub struct TableLabels {
    pub measure: String,
    pub variant: String,
    pub alpha: String,
}

/// Rows `mc / exact` for every grid entry, `n`-major.
pub fn ratio_table<F>(acc: &MomentAccumulator, exact: F) -> Result<Vec<RatioRow>>
where
    F: Fn(usize, usize) -> Result<Rational>,
{
    let est = acc.estimates()?;
    let mut rows = Vec::with_capacity(est.len() * est[0].len());
    for (n, row) in est.iter().enumerate() {
        for (k, e) in row.iter().enumerate() {
            let x = exact(n, k)?;
            let ratio = if num_traits::Zero::is_zero(&x) {
                None
            } else {
                Some(e.mean / ext_from_rational(&x))
            };
            rows.push(RatioRow {
                n,
                k,
                mc: e.mean,
                exact: x,
                ratio,
                se: e.se,
                count: acc.count(),
            });
        }
    }
    Ok(rows)
}

pub const RATIO_HEADER: &str = "n,k,mc,exact,ratio,se,count,measure,variant,alpha";

/// Writes the header and rows. `exact` is written as a fraction; floating
/// columns use 17 significant digits so values below `f64` range survive.
pub fn write_ratio_csv<W: Write>(mut w: W, rows: &[RatioRow], labels: &TableLabels) -> io::Result<()> {
    writeln!(w, "{RATIO_HEADER}")?;
    for r in rows {
        let ratio = r.ratio.map(|x| x.to_sci_string(17)).unwrap_or_default();
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            r.n,
            r.k,
            r.mc.to_sci_string(17),
            r.exact,
            ratio,
            r.se.to_sci_string(17),
            r.count,
            labels.measure,
            labels.variant,
            labels.alpha
        )?;
    }
    Ok(())
}
