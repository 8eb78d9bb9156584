//! Exact and error-bounded arithmetic: rationals, Gaussian rationals,
//! fixed-point reals and the independent ζ(s) oracle.

mod hpcomplex;
mod hpreal;
mod zeta_ref;

pub use hpcomplex::HpComplex;
pub use hpreal::{log10_biguint, log10_rational, pow10, HpReal};
pub use zeta_ref::{
    zeta_reference, zeta_reference_with_schedule, BernoulliTable, ReferenceSchedule,
    MAX_REFERENCE_DIGITS,
};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Guard digits for a computation involving `terms` roundings:
/// `10 + ceil(log10(terms))`.
pub fn guard_digits(terms: usize) -> u32 {
    10 + (terms.max(1) as f64).log10().ceil() as u32
}

/// `C(2k, k)` via the running update `c <- c (4j + 2) / (j + 1)`.
pub fn central_binomial(k: u64) -> BigInt {
    CentralBinomials::new().nth(k as usize).expect("infinite iterator")
}

/// Yields `C(0,0), C(2,1), C(4,2), …`.
#[derive(Debug, Clone)]
pub struct CentralBinomials {
    next: BigInt,
    j: u64,
}

impl CentralBinomials {
    pub fn new() -> Self {
        CentralBinomials { next: BigInt::one(), j: 0 }
    }
}

impl Default for CentralBinomials {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for CentralBinomials {
    type Item = BigInt;
    fn next(&mut self) -> Option<BigInt> {
        let out = self.next.clone();
        self.next = &self.next * BigInt::from(4 * self.j + 2) / BigInt::from(self.j + 1);
        self.j += 1;
        Some(out)
    }
}

/// Deterministic left-to-right sum at `digits + guard` fractional digits.
///
/// Terms at a finer scale are truncated (one ulp each); the result's bound
/// is the sum of the term bounds plus those roundings.
pub fn accumulate(terms: &[HpReal], digits: u32) -> HpReal {
    let scale = digits + guard_digits(terms.len());
    terms.iter().fold(HpReal::zero(scale), |acc, t| &acc + &t.rescale(scale))
}

/// Rising factorial `(a)_k = a (a+1) … (a+k-1)`.
pub fn pochhammer<T: Scalar>(a: &T, k: u32) -> T {
    (0..k).fold(T::one(), |acc, j| acc * (a.clone() + T::from_i64(j as i64)))
}

/// `(a)_k` for any integer `k`; negative `k` means `1 / ((a-1)(a-2)…(a+k))`,
/// i.e. `Γ(a+k)/Γ(a)` continued to the left.
pub fn pochhammer_signed<T: Scalar>(a: &T, k: i64) -> Result<T> {
    if k >= 0 {
        return Ok(pochhammer(a, k as u32));
    }
    let mut den = T::one();
    for j in 1..=(-k) {
        den = den * (a.clone() - T::from_i64(j));
    }
    if den.is_zero() {
        return Err(Error::Pole(format!("({a:?})_{k} hits a gamma pole")));
    }
    Ok(den.recip())
}

/// `(a)_k` on error-bounded complex numbers.
pub fn pochhammer_hp(a: &HpComplex, k: u32) -> HpComplex {
    let scale = a.scale();
    (0..k).fold(HpComplex::from_int(1, scale), |acc, j| {
        &acc * &(a + &HpComplex::from_int(j as i64, scale))
    })
}

/// `π` to `scale` fractional digits by Machin's formula.
pub fn pi(scale: u32) -> HpReal {
    let w = scale + 10;
    let at = |x: u64| -> HpReal {
        // arctan(1/x) = Σ (-1)^k / ((2k+1) x^(2k+1)); terms alternate and decrease
        let x2 = BigInt::from(x * x);
        let mut power = HpReal::from_int(1, w).div_int(&BigInt::from(x));
        let mut sum = HpReal::zero(w);
        let mut k = 0u64;
        while !power.is_zero_value() {
            let term = power.div_int(&BigInt::from(2 * k + 1));
            sum = if k % 2 == 0 { &sum + &term } else { &sum - &term };
            power = power.div_int(&x2);
            k += 1;
        }
        // the remaining tail is below one ulp
        sum.widen_ulps(&num_bigint::BigUint::from(1u32))
    };
    let v = &at(5).mul_int(&BigInt::from(16)) - &at(239).mul_int(&BigInt::from(4));
    v.rescale(scale)
}
