//! Determinantal moments `<|ρ^PT|^n |ρ|^k>` of random 4×4 density matrices
//! (two-rebit and two-qubit) under the Hilbert-Schmidt and Bures measures.
//!
//! The crate has an exact side and a numerical side:
//!
//! - [`exact`], [`hypergeom`], [`hs`] and [`bures`] evaluate closed-form
//!   moments as arbitrary-precision rationals.
//! - [`quadrature`] integrates eigenvalue monomials against the eigenvalue
//!   densities, independently of the closed forms.
//! - [`sampler`] and [`estimator`] generate random states and accumulate
//!   Monte Carlo moment grids with extended-precision sums.
//! - [`fitseq`] recovers rational functions from exact sequences, and
//!   [`reconstruct`] turns moment sequences into densities and separability
//!   probabilities.
//!
//! Algebraic code is written against the [`Scalar`] trait, so the same
//! routines run on exact rationals and on floats.

pub mod bures;
pub mod error;
pub mod estimator;
pub mod exact;
pub mod extfloat;
pub mod fitseq;
pub mod hs;
pub mod hypergeom;
pub mod poly;
pub mod quadrature;
pub mod ratfn;
pub mod reconstruct;
pub mod rng;
pub mod sampler;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact arbitrary-precision fraction, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// Univariate polynomial with exact coefficients.
pub type Polynomial = poly::Poly<Rational>;

/// Ratio of exact polynomials in one variable.
pub type RationalFunction = ratfn::RatFn<Rational>;


/// Double-precision density matrix.
pub type DensityMatrix = sampler::DensityMatrix<f64>;

/// Legendre expansion of a density, in double precision.
pub type DensityExpansion = reconstruct::DensityExpansion<f64>;
