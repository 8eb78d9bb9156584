//! Reference values of ζ(s) straight from the defining Dirichlet series.
//!
//! Direct summation of the first `M - 1` terms, then the Euler–Maclaurin
//! tail
//!
//! ```text
//! M^(1-s)/(s-1) + M^(-s)/2 + Σ_{j=1}^{p} B_{2j}/(2j)! · s(s+1)…(s+2j-2) · M^(-s-2j+1)
//! ```
//!
//! The remainder after `p` correction terms is bounded by the first omitted
//! term for real `s > 1`; twice that is added to the error bound. None of
//! this touches a central-binomial series, so it can serve as an oracle for
//! them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::hpreal::{log10_rational, HpReal};
use crate::error::{Error, Result};

/// Largest digit count the oracle accepts.
pub const MAX_REFERENCE_DIGITS: u32 = 20_000;
const MAX_DIRECT_TERMS: u64 = 5_000_000;

/// Even-index Bernoulli numbers `B_0, B_2, B_4, …`, grown on demand.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    even: Vec<BigRational>,
}

impl Default for BernoulliTable {
    fn default() -> Self {
        Self::new()
    }
}

impl BernoulliTable {
    pub fn new() -> Self {
        BernoulliTable { even: vec![BigRational::one()] }
    }

    /// `B_{2j}`.
    pub fn even(&mut self, j: usize) -> &BigRational {
        while self.even.len() <= j {
            let m = 2 * self.even.len();
            // Σ_{k=0}^{m} C(m+1,k) B_k = 0, with B_1 = -1/2 and odd B_k = 0 beyond.
            let mut acc = BigRational::from_integer(BigInt::from(m + 1))
                * BigRational::new(BigInt::from(-1), BigInt::from(2));
            let mut binom = BigInt::one(); // C(m+1, 0)
            for k in 0..m {
                if k % 2 == 0 {
                    acc += BigRational::from_integer(binom.clone()) * &self.even[k / 2];
                }
                binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
            }
            let b = -acc / BigRational::from_integer(BigInt::from(m + 1));
            self.even.push(b);
        }
        &self.even[j]
    }
}

/// Working parameters of one oracle evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceSchedule {
    /// First index handled by the tail formula.
    pub cutoff: u64,
    /// Number of Bernoulli correction terms.
    pub corrections: usize,
    pub guard: u32,
}

/// ζ(s) with error bound at most `10^(-digits)`.
pub fn zeta_reference(s: u32, digits: u32) -> Result<HpReal> {
    zeta_reference_with_schedule(s, digits).map(|(v, _)| v)
}

pub fn zeta_reference_with_schedule(s: u32, digits: u32) -> Result<(HpReal, ReferenceSchedule)> {
    if s < 2 {
        return Err(Error::OutOfRange(format!("zeta_reference needs s >= 2, got {s}")));
    }
    if digits == 0 || digits > MAX_REFERENCE_DIGITS {
        return Err(Error::PrecisionUnachievable(format!(
            "digits must lie in 1..={MAX_REFERENCE_DIGITS}, got {digits}"
        )));
    }
    let target = digits as f64 + 10.0;
    // cutoff needed if the tail formula stopped at its leading term
    let direct = 10f64.powf((target + 1.0) / (s as f64 - 1.0)).ceil();
    let mut cutoff = (2 * digits as u64 + 10).min(direct.max(2.0) as u64).max(2);
    let mut bernoulli = BernoulliTable::new();
    loop {
        if cutoff > MAX_DIRECT_TERMS {
            return Err(Error::PrecisionUnachievable(format!(
                "zeta({s}) to {digits} digits needs more than {MAX_DIRECT_TERMS} direct terms"
            )));
        }
        let guard = 10 + (cutoff as f64).log10().ceil() as u32;
        let eps_log10 = -(digits as f64) - guard as f64;
        if let Some((tail, omitted, corrections)) =
            euler_maclaurin_tail(s, cutoff, eps_log10, &mut bernoulli)
        {
            let scale = digits + guard;
            let mut acc = HpReal::zero(scale);
            let one = HpReal::from_int(1, scale);
            for k in 1..cutoff {
                let denom = num_traits::pow(BigInt::from(k), s as usize);
                acc = &acc + &one.div_int(&denom);
            }
            let value = (&acc + &HpReal::from_rational(&tail, scale))
                .widen(&(omitted * BigRational::from_integer(BigInt::from(2))));
            if !value.err_within_digits(digits as i64) {
                return Err(Error::PrecisionUnachievable(format!(
                    "zeta({s}) bound 1e{:.1} misses 1e-{digits}",
                    value.err_log10()
                )));
            }
            return Ok((value, ReferenceSchedule { cutoff, corrections, guard }));
        }
        cutoff *= 2;
    }
}

/// Exact tail sum and the magnitude of the first omitted correction, or
/// `None` if the asymptotic series turns before reaching `10^eps_log10`.
fn euler_maclaurin_tail(
    s: u32,
    cutoff: u64,
    eps_log10: f64,
    bernoulli: &mut BernoulliTable,
) -> Option<(BigRational, BigRational, usize)> {
    let m = BigInt::from(cutoff);
    let m_rat = BigRational::from_integer(m.clone());
    let m_pow_s = num_traits::pow(m.clone(), s as usize);
    let m_sq = BigRational::from_integer(&m * &m);
    let mut tail = BigRational::new(m.clone(), m_pow_s.clone() * BigInt::from(s - 1))
        + BigRational::new(BigInt::one(), m_pow_s.clone() * BigInt::from(2));
    // running pieces of B_{2j}/(2j)! · (s)_{2j-1} · M^(-s-2j+1)
    let mut rising = BigRational::from_integer(BigInt::from(s)); // (s)_1
    let mut fact = BigRational::from_integer(BigInt::from(2)); // 2!
    let mut m_power = BigRational::from_integer(m_pow_s) * m_rat; // M^(s+1)
    let mut previous: Option<f64> = None;
    let mut j = 1usize;
    loop {
        let term = bernoulli.even(j) * &rising / (&fact * &m_power);
        let size = if term.is_zero() { f64::NEG_INFINITY } else { log10_rational(&term) };
        if size < eps_log10 {
            return Some((tail, term.abs(), j - 1));
        }
        if let Some(prev) = previous {
            if size >= prev {
                return None;
            }
        }
        previous = Some(size);
        tail += term;
        // advance to j + 1
        let sj = BigInt::from(s as u64 + 2 * j as u64 - 1);
        rising = rising * BigRational::from_integer(sj.clone() * (sj + 1));
        fact = fact * BigRational::from_integer(BigInt::from((2 * j + 1) * (2 * j + 2)));
        m_power = m_power * &m_sq;
        j += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn bernoulli_numbers() {
        let mut t = BernoulliTable::new();
        assert_eq!(t.even(1), &BigRational::ratio(1, 6));
        assert_eq!(t.even(2), &BigRational::ratio(-1, 30));
        assert_eq!(t.even(3), &BigRational::ratio(1, 42));
        assert_eq!(t.even(6), &BigRational::ratio(-691, 2730));
    }

    #[test]
    fn zeta_two_and_four_match_known_digits() {
        // cross-check against pi^2/6 and pi^4/90
        let z2 = zeta_reference(2, 15).unwrap();
        assert_eq!(z2.to_decimal_string(16), "1.644934066848226");
        let z4 = zeta_reference(4, 15).unwrap();
        assert_eq!(z4.to_decimal_string(16), "1.082323233711138");
        let z3 = zeta_reference(3, 10).unwrap();
        assert_eq!(z3.to_decimal_string(10), "1.202056903");
    }

    #[test]
    fn zeta_two_against_machin_pi() {
        let d = 80;
        let z2 = zeta_reference(2, d).unwrap();
        let pi = crate::precision::pi(d + 10);
        let expected = (&pi * &pi).div_int(&BigInt::from(6));
        assert!(z2.agrees_to(&expected, d as i64 - 1));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(zeta_reference(1, 10), Err(Error::OutOfRange(_))));
        assert!(matches!(zeta_reference(3, 0), Err(Error::PrecisionUnachievable(_))));
    }
}
