//! Apéry-like series for ζ(2n+1): exact checks of the underlying finite
//! identities, error-bounded evaluation of the accelerated series,
//! hypergeometric reflection and integer-relation rediscovery.
//!
//! Algebraic layers are generic over [`Scalar`]; the high-precision series
//! work on the concrete fixed-point types in [`precision`].

pub mod discover;
pub mod error;
pub mod hypergeom;
pub mod identities;
pub mod poly;
pub mod precision;
pub mod scalar;
pub mod series;
pub mod symfun;

use num_complex::Complex;
use num_rational::BigRational;

pub use error::{Error, Result};
pub use precision::{HpComplex, HpReal};
pub use scalar::Scalar;

pub type Rational = BigRational;
pub type GaussianRational = Complex<BigRational>;
pub type RationalPolynomial = poly::Polynomial<Rational>;
pub type FloatPolynomial = poly::Polynomial<f64>;
