//! Random density matrices under the Hilbert-Schmidt and Bures measures.
//!
//! Constructions:
//!
//! - HS, complex: `ρ = G G† / tr(G G†)` with square complex Ginibre `G`.
//! - HS, real: the same with a real `N × (N+1)` Ginibre `G`; a square real
//!   `G` would weight eigenvalues by `Π λ^{-1/2}`.
//! - Bures, complex: `ρ ∝ (1 + U) G G† (1 + U)†` with `U` Haar unitary.
//! - Bures, real: eigenvalues by rejection from a Dirichlet(1/2) proposal
//!   against the Bures eigenvalue weight, then a Haar orthogonal rotation.
//!   The real analogue of the `(1 + O) G Gᵀ (1 + O)ᵀ` form does not produce
//!   the real Bures measure.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Complex, ComplexField, DMatrix, DVector, RealField};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::bures::EnsembleVariant;
use crate::rng::{stream_rng, StreamRng};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    pub fn of(v: EnsembleVariant) -> Self {
        if v.is_complex() {
            Field::Complex
        } else {
            Field::Real
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    HilbertSchmidt,
    Bures,
}

impl Measure {
    pub fn name(self) -> &'static str {
        match self {
            Measure::HilbertSchmidt => "hs",
            Measure::Bures => "bures",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hs" | "hilbert-schmidt" => Ok(Measure::HilbertSchmidt),
            "bures" => Ok(Measure::Bures),
            other => Err(Error::InvalidInput(format!("unknown measure `{other}`"))),
        }
    }
}

/// Which states to draw and from which random stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EnsembleSpec {
    pub measure: Measure,
    pub variant: EnsembleVariant,
    pub seed: u64,
    pub stream_id: u64,
}

impl EnsembleSpec {
    pub fn new(measure: Measure, variant: EnsembleVariant, seed: u64, stream_id: u64) -> Self {
        Self {
            measure,
            variant,
            seed,
            stream_id,
        }
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix. Real ensembles
/// carry zero imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T: RealField> {
    pub field: Field,
    pub entries: DMatrix<Complex<T>>,
}

fn c<T: RealField>(x: f64) -> T {
    nalgebra::convert(x)
}

impl<T: RealField + Copy> DensityMatrix<T> {
    /// Wraps a matrix after normalizing its trace to 1.
    pub fn from_unnormalized(field: Field, m: DMatrix<Complex<T>>) -> Option<Self> {
        let tr = m.trace().re;
        if tr <= T::zero() {
            return None;
        }
        let mut entries = m.map(|z| z.unscale(tr));
        // enforce exact Hermiticity against rounding
        let adj = entries.adjoint();
        entries = (entries + adj).map(|z| z.unscale(c(2.0)));
        Some(Self { field, entries })
    }

    pub fn maximally_mixed(field: Field, dim: usize) -> Self {
        let d: T = c(dim as f64);
        Self {
            field,
            entries: DMatrix::from_diagonal_element(dim, dim, Complex::new(T::one() / d, T::zero())),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn determinant(&self) -> T {
        determinant(&self.entries)
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        eigenvalues(&self.entries)
    }

    /// Checks Hermiticity, unit trace and positivity against the given
    /// tolerances.
    pub fn check(&self, herm_tol: T, trace_tol: T, psd_tol: T) -> bool {
        let herm = (&self.entries - self.entries.adjoint())
            .iter()
            .all(|z| z.norm1() <= herm_tol);
        let tr = (self.entries.trace().re - T::one()).abs() <= trace_tol;
        let psd = self.eigenvalues().last().is_some_and(|&l| l >= -psd_tol);
        herm && tr && psd
    }
}

impl DensityMatrix<f64> {
    /// Row-major dump: the real parts (real field) or interleaved real and
    /// imaginary parts (complex field).
    pub fn to_row(&self) -> Vec<f64> {
        let n = self.dim();
        let mut out = Vec::with_capacity(2 * n * n);
        for i in 0..n {
            for j in 0..n {
                let z = self.entries[(i, j)];
                out.push(z.re);
                if self.field == Field::Complex {
                    out.push(z.im);
                }
            }
        }
        out
    }
}

/// `rows × cols` Ginibre matrix: i.i.d. standard normal entries (real) or
/// standard complex normal entries with `E|z|² = 1` (complex).
pub fn sample_ginibre<T, R>(rows: usize, cols: usize, field: Field, rng: &mut R) -> DMatrix<Complex<T>>
where
    T: RealField + Copy,
    StandardNormal: Distribution<T>,
    R: Rng + ?Sized,
{
    let s = c::<T>(std::f64::consts::FRAC_1_SQRT_2);
    DMatrix::from_fn(rows, cols, |_, _| match field {
        Field::Real => Complex::new(rng.sample(StandardNormal), T::zero()),
        Field::Complex => {
            let re: T = rng.sample(StandardNormal);
            let im: T = rng.sample(StandardNormal);
            Complex::new(re * s, im * s)
        }
    })
}

/// Haar-distributed unitary (complex) or orthogonal (real) matrix: QR of a
/// Ginibre matrix with the phases of `R`'s diagonal moved into `Q`.
pub fn sample_haar<T, R>(dim: usize, field: Field, rng: &mut R) -> DMatrix<Complex<T>>
where
    T: RealField + Copy,
    StandardNormal: Distribution<T>,
    R: Rng + ?Sized,
{
    let g = sample_ginibre::<T, R>(dim, dim, field, rng);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let n = d.modulus();
        let phase = if n > T::zero() {
            d.unscale(n)
        } else {
            Complex::new(T::one(), T::zero())
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Largest value of the real Bures eigenvalue weight
/// `Π_{i<j} |λi − λj| / √(λi + λj)` on the simplex, slightly inflated.
/// It is attained on a face with one zero eigenvalue.
fn real_bures_weight_bound(dim: usize) -> f64 {
    let m = match dim {
        4 => (1.0f64 / 6912.0).sqrt(),
        3 => 0.25,
        _ => panic!("real Bures sampling is implemented for dim 3 and 4"),
    };
    m * (1.0 + 1e-9)
}

fn real_bures_weight(l: &[f64]) -> f64 {
    let mut w = 1.0;
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            w *= (l[i] - l[j]).abs() / (l[i] + l[j]).sqrt();
        }
    }
    w
}

/// Eigenvalues from the real Bures eigenvalue density by rejection against a
/// Dirichlet(1/2, ..., 1/2) proposal, whose `Π λ^{-1/2}` factor matches the
/// density's.
pub fn sample_real_bures_spectrum<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<f64> {
    let bound = real_bures_weight_bound(dim);
    loop {
        let g: Vec<f64> = (0..dim)
            .map(|_| {
                let z: f64 = rng.sample(StandardNormal);
                z * z
            })
            .collect();
        let s: f64 = g.iter().sum();
        if s <= 0.0 {
            continue;
        }
        let l: Vec<f64> = g.iter().map(|x| x / s).collect();
        let u: f64 = rng.random();
        if u * bound < real_bures_weight(&l) {
            return l;
        }
    }
}

/// One density matrix from the given ensemble.
pub fn sample_density<T, R>(measure: Measure, variant: EnsembleVariant, rng: &mut R) -> DensityMatrix<T>
where
    T: RealField + Copy,
    StandardNormal: Distribution<T>,
    R: Rng + ?Sized,
{
    let n = variant.dim();
    let field = Field::of(variant);
    loop {
        let m = match (measure, field) {
            (Measure::HilbertSchmidt, Field::Complex) => {
                let g = sample_ginibre::<T, R>(n, n, field, rng);
                &g * g.adjoint()
            }
            (Measure::HilbertSchmidt, Field::Real) => {
                let g = sample_ginibre::<T, R>(n, n + 1, field, rng);
                &g * g.adjoint()
            }
            (Measure::Bures, Field::Complex) => {
                let g = sample_ginibre::<T, R>(n, n, field, rng);
                let u = sample_haar::<T, R>(n, field, rng);
                let a = DMatrix::identity(n, n) + u;
                let ag = &a * g;
                &ag * ag.adjoint()
            }
            (Measure::Bures, Field::Real) => {
                let l = sample_real_bures_spectrum(n, rng);
                let o = sample_haar::<T, R>(n, field, rng);
                let d = DMatrix::from_diagonal(&DVector::from_iterator(
                    n,
                    l.iter().map(|&x| Complex::new(c::<T>(x), T::zero())),
                ));
                &o * d * o.adjoint()
            }
        };
        if let Some(rho) = DensityMatrix::from_unnormalized(field, m) {
            return rho;
        }
    }
}

/// A reproducible stream of density matrices.
pub struct Sampler {
    spec: EnsembleSpec,
    rng: StreamRng,
}

impl Sampler {
    pub fn new(spec: EnsembleSpec) -> Self {
        Self {
            spec,
            rng: stream_rng(spec.seed, spec.stream_id),
        }
    }

    pub fn spec(&self) -> &EnsembleSpec {
        &self.spec
    }

    pub fn draw(&mut self) -> DensityMatrix<f64> {
        sample_density(self.spec.measure, self.spec.variant, &mut self.rng)
    }
}

impl Iterator for Sampler {
    type Item = DensityMatrix<f64>;

    fn next(&mut self) -> Option<Self::Item> {
        Some(self.draw())
    }
}

/// Partial transpose on the second qubit of a 4×4 matrix indexed by
/// `(i, j) ↦ 2i + j`: `ρ^PT[(i,j),(k,l)] = ρ[(i,l),(k,j)]`.
pub fn partial_transpose<T: RealField + Copy>(m: &DMatrix<Complex<T>>) -> Result<DMatrix<Complex<T>>> {
    if m.nrows() != 4 || m.ncols() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: m.nrows(),
        });
    }
    Ok(DMatrix::from_fn(4, 4, |r, s| {
        let (i, j) = (r / 2, r % 2);
        let (k, l) = (s / 2, s % 2);
        m[(2 * i + l, 2 * k + j)]
    }))
}

/// Determinant of a Hermitian matrix (real by construction).
pub fn determinant<T: RealField + Copy>(m: &DMatrix<Complex<T>>) -> T {
    m.clone().lu().determinant().re
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
pub fn eigenvalues<T: RealField + Copy>(m: &DMatrix<Complex<T>>) -> Vec<T> {
    let e = m.clone().symmetric_eigen();
    let mut v: Vec<T> = e.eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    v
}

/// `(|ρ^PT|, |ρ|)` for a two-qubit or two-rebit state.
pub fn pt_and_det(rho: &DensityMatrix<f64>) -> Result<(f64, f64)> {
    let pt = partial_transpose(&rho.entries)?;
    Ok((determinant(&pt), rho.determinant()))
}
