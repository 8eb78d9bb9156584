//! Error-bounded evaluation of the central-binomial series.
//!
//! Every series here has the shape `Σ_k (-1)^(k+1) u_k / C(2k,k)`. The
//! plan sums `N = 1 + ⌊5d/3⌋` terms; the neglected tail is then bounded
//! by `1.5 · B / ((N+1)^m C(2N+2, N+1))`, where `|u_k| ≤ B / k^m` for all
//! `k > N` (consecutive central binomials grow by at least 3). If that
//! bound does not yet fit inside `10^-d`, more terms are added.

mod coeff;
mod dirichlet;
mod fast;
mod genfun;
mod lambda;

pub use coeff::{koecher_zeta, zeta4n3_via_corollary1};
pub use dirichlet::{dirichlet_transform, DirichletReport};
pub use fast::{measure_digits_per_term, zeta_fast, zeta_fast_planned, DigitsPerTerm};
pub use genfun::{gf_lhs, gf_rhs, koecher_gf_lhs, koecher_gf_rhs};
pub use lambda::{lambda_sum, lambda_sum_planned, LambdaSpec};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::precision::{guard_digits, HpComplex, HpReal};

/// Term count and guard digits for a `d`-digit evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TruncationPlan {
    pub digits: u32,
    pub terms: u64,
    pub guard: u32,
}

impl TruncationPlan {
    pub fn new(digits: u32) -> Self {
        let terms = 1 + (5 * digits as u64) / 3;
        TruncationPlan { digits, terms, guard: guard_digits(terms as usize) }
    }

    /// Same term count; `guard` is raised to at least `min_guard`.
    pub fn with_guard(digits: u32, min_guard: u32) -> Self {
        let mut plan = TruncationPlan::new(digits);
        plan.guard = plan.guard.max(min_guard);
        plan
    }

    /// Fractional digits carried during summation.
    pub fn scale(&self) -> u32 {
        self.digits + self.guard
    }
}

/// A computed value and the number of series terms it took.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation<V> {
    pub value: V,
    pub terms: u64,
}

pub(crate) trait HpValue: Clone {
    fn zero(scale: u32) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn widen(self, bound: &BigRational) -> Self;
    fn mul_rational(&self, r: &BigRational) -> Self;
    fn err_within_digits(&self, digits: i64) -> bool;
}

impl HpValue for HpReal {
    fn zero(scale: u32) -> Self {
        HpReal::zero(scale)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn widen(self, bound: &BigRational) -> Self {
        HpReal::widen(self, bound)
    }
    fn mul_rational(&self, r: &BigRational) -> Self {
        HpReal::mul_rational(self, r)
    }
    fn err_within_digits(&self, digits: i64) -> bool {
        HpReal::err_within_digits(self, digits)
    }
}

impl HpValue for HpComplex {
    fn zero(scale: u32) -> Self {
        HpComplex::zero(scale)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn widen(self, bound: &BigRational) -> Self {
        HpComplex::widen(self, bound)
    }
    fn mul_rational(&self, r: &BigRational) -> Self {
        HpComplex::mul_rational(self, r)
    }
    fn err_within_digits(&self, digits: i64) -> bool {
        HpComplex::err_within_digits(self, digits)
    }
}

/// One alternating central-binomial series.
pub(crate) trait Summand {
    type V: HpValue;

    /// `u_k / C(2k,k)` without the sign; `c` is `C(2k,k)`. Called for
    /// `k = 1, 2, …` in order, so running state may be advanced here.
    fn term(&mut self, k: u64, c: &BigInt) -> Result<Self::V>;

    /// `(B, m)` with `|u_k| ≤ B / k^m` for every `k ≥ next`, or `None` if
    /// no bound is available yet.
    fn tail(&self, next: u64) -> Option<(BigRational, u32)>;

    /// Constant factor applied to the whole sum.
    fn factor(&self) -> BigRational {
        BigRational::one()
    }
}

/// `1.5 B / (next^m C(2 next, next))`.
pub(crate) fn tail_bound(next: u64, c_next: &BigInt, b: &BigRational, m: u32) -> BigRational {
    let den = num_traits::pow(BigInt::from(next), m as usize) * c_next * BigInt::from(2);
    b * BigRational::new(BigInt::from(3), den)
}

/// Rational upper bound for a non-negative `f64` computed with a few
/// roundings.
pub(crate) fn upper_rational(x: f64) -> BigRational {
    let padded = x.abs() * (1.0 + 1e-9) + f64::MIN_POSITIVE;
    BigRational::from_float(padded).expect("finite bound")
}

/// Runs the plan, extending it only if the certified tail is too large.
pub(crate) fn sum_series<S: Summand>(s: &mut S, plan: &TruncationPlan) -> Result<Evaluation<S::V>> {
    let scale = plan.scale();
    let digits = plan.digits as i64;
    let limit = 4 * plan.terms + 200;
    let factor = s.factor();
    let mut acc = S::V::zero(scale);
    let mut c = BigInt::from(2);
    let mut k = 1u64;
    loop {
        let t = s.term(k, &c)?;
        acc = if k % 2 == 1 { acc.add(&t) } else { acc.sub(&t) };
        c = c * BigInt::from(4 * k + 2) / BigInt::from(k + 1);
        k += 1;
        if k <= plan.terms {
            continue;
        }
        if let Some((b, m)) = s.tail(k) {
            let bounded = acc.clone().widen(&tail_bound(k, &c, &b, m)).mul_rational(&factor);
            if bounded.err_within_digits(digits) {
                return Ok(Evaluation { value: bounded, terms: k - 1 });
            }
        }
        if k > limit {
            return Err(Error::PrecisionUnachievable(format!(
                "series tail still above 1e-{} after {} terms",
                plan.digits,
                k - 1
            )));
        }
    }
}

/// `1/k^e` at `scale`, truncated.
pub(crate) fn inverse_power_hp(k: u64, e: u32, scale: u32) -> HpReal {
    HpReal::from_int(1, scale).div_int(&num_traits::pow(BigInt::from(k), e as usize))
}
