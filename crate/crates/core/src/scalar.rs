//! Field scalars shared by the exact and floating-point code paths.
//!
//! Everything algebraic in this crate (symmetric functions, polynomials,
//! the finite identities, terminating hypergeometric sums) is written once
//! against [`Scalar`]. Instantiated with [`crate::Rational`] or
//! [`crate::GaussianRational`] the computations are exact; with `f64` or
//! `f32` they give fast approximate cross-checks.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, ToPrimitive, Zero};

/// A commutative field element usable by the generic algorithms.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync {
    fn from_i64(n: i64) -> Self;

    fn from_bigint(n: &BigInt) -> Self;

    fn from_rational(r: &BigRational) -> Self {
        Self::from_bigint(r.numer()) / Self::from_bigint(r.denom())
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    /// `self^e` by repeated squaring.
    fn powu(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    fn from_i64(n: i64) -> Self {
        n as f32
    }
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f32().unwrap_or(f32::NAN)
    }
    fn from_rational(r: &BigRational) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(num.into(), den.into())
    }
}

impl Scalar for Complex<BigRational> {
    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_i64(n), BigRational::zero())
    }
    fn from_bigint(n: &BigInt) -> Self {
        Complex::new(BigRational::from_bigint(n), BigRational::zero())
    }
    fn from_rational(r: &BigRational) -> Self {
        Complex::new(r.clone(), BigRational::zero())
    }
}

/// Exact `1 / n^e` as a rational.
pub fn inverse_power(n: u64, e: u32) -> BigRational {
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(n), e as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powu_matches_repeated_product() {
        let x = BigRational::ratio(3, 7);
        let mut expected = BigRational::one();
        for _ in 0..9 {
            expected *= &x;
        }
        assert_eq!(x.powu(9), expected);
        assert_eq!(x.powu(0), BigRational::one());
        assert_eq!(2.0f64.powu(10), 1024.0);
    }

    #[test]
    fn gaussian_reciprocal_is_exact() {
        let z = Complex::new(BigRational::ratio(1, 2), BigRational::ratio(-3, 5));
        assert_eq!(z.clone() * z.recip(), Complex::<BigRational>::from_i64(1));
    }
}
