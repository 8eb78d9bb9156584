//! The polynomials `f_k` defined by
//! `(4x^4 + k^4) f_{k-1}(x) - (x^2 - k^2) f_k(x) = σ_k(x)`, `f_0 = 1`, with
//! `σ_k(x) = (5/2) x^2 k^2 C(2k,k) Π_{j<k} (x^2 + j^2)`.
//!
//! That every `f_k` is an even polynomial of degree `2k` is unproved; a
//! nonzero remainder is reported as a counterexample, not an error.

use serde::Serialize;

use crate::poly::Polynomial;
use crate::precision::{central_binomial, CentralBinomials};
use crate::scalar::Scalar;
use crate::{Rational, RationalPolynomial};

/// `σ_k(x)`.
pub fn sigma_k(k: u64) -> RationalPolynomial {
    let c = Rational::from_bigint(&central_binomial(k));
    let k2 = Rational::from_i64((k * k) as i64);
    let lead = RationalPolynomial::from_ints(&[0, 0, 1]).scale(&(c * k2 * Rational::ratio(5, 2)));
    let factors: Vec<RationalPolynomial> =
        (1..k).map(|j| RationalPolynomial::from_ints(&[(j * j) as i64, 0, 1])).collect();
    &lead * &Polynomial::product(&factors)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum FnOutcome {
    /// `f_0..f_n`, all exact, even, of the expected degree.
    Verified(#[serde(skip)] Vec<RationalPolynomial>),
    /// The recursion broke at step `k`.
    Falsified {
        k: u64,
        reason: String,
        #[serde(skip)]
        computed: Vec<RationalPolynomial>,
    },
}

impl FnOutcome {
    pub fn is_verified(&self) -> bool {
        matches!(self, FnOutcome::Verified(_))
    }

    pub fn polynomials(&self) -> &[RationalPolynomial] {
        match self {
            FnOutcome::Verified(p) => p,
            FnOutcome::Falsified { computed, .. } => computed,
        }
    }
}

/// Runs the recursion for `k = 1..=n` by exact polynomial division.
pub fn fn_polynomials(n: u64) -> FnOutcome {
    let mut out = vec![RationalPolynomial::constant(Rational::ratio(1, 1))];
    for k in 1..=n {
        let k4 = (k * k * k * k) as i64;
        let k2 = (k * k) as i64;
        let quartic = RationalPolynomial::from_ints(&[k4, 0, 0, 0, 4]);
        let numerator = &(&quartic * out.last().expect("f_0 present")) - &sigma_k(k);
        let divisor = RationalPolynomial::from_ints(&[-k2, 0, 1]);
        let (quot, rem) = numerator.div_rem(&divisor).expect("nonzero divisor");
        let reason = if !rem.is_zero() {
            Some(format!("division by x^2 - {k2} leaves remainder {rem:?}"))
        } else if !quot.is_even() {
            Some("f_k has an odd-degree term".to_string())
        } else if quot.degree() != Some(2 * k as usize) {
            Some(format!("deg f_k = {:?}, expected {}", quot.degree(), 2 * k))
        } else {
            None
        };
        if let Some(reason) = reason {
            return FnOutcome::Falsified { k, reason, computed: out };
        }
        out.push(quot);
    }
    FnOutcome::Verified(out)
}

/// Comparison of the two sides of the `f_n` representation at sample points.
#[derive(Debug, Clone, Serialize)]
pub struct Prop42Check {
    pub n: u64,
    pub points: usize,
    pub pass: bool,
}

/// Checks
/// `1 - (5/2) Σ_{k≤n} C(2k,k) x^2 k^2/(4x^4 + k^4) Π_{j<k} (x^4 - j^4)/(4x^4 + j^4)
///  = f_n(x) Π_{j≤n} (x^2 - j^2)/(4x^4 + j^4)`
/// exactly at `4n + 2` distinct rational `x`.
pub fn prop42_residual_check(n: u64) -> Prop42Check {
    let outcome = fn_polynomials(n);
    let Some(f_n) = outcome.polynomials().get(n as usize).cloned() else {
        return Prop42Check { n, points: 0, pass: false };
    };
    let points = 4 * n as usize + 2;
    let pass = (0..points).all(|i| {
        // x = i/3 + 1/7: distinct, and 4x^4 + j^4 > 0 always
        let x = Rational::ratio(i as i64, 3) + Rational::ratio(1, 7);
        lhs_residual(n, &x) == rhs_product(n, &f_n, &x)
    });
    Prop42Check { n, points, pass }
}

fn lhs_residual(n: u64, x: &Rational) -> Rational {
    let x2 = x * x;
    let x4 = &x2 * &x2;
    let four_x4 = &x4 * Rational::from_i64(4);
    let mut running = Rational::from_i64(1);
    let mut sum = Rational::from_i64(0);
    for (k, c) in (1..=n).zip(CentralBinomials::new().skip(1)) {
        let k2 = Rational::from_i64((k * k) as i64);
        let k4 = &k2 * &k2;
        sum += &running * Rational::from_bigint(&c) * &x2 * &k2 / (&four_x4 + &k4);
        running = running * (&x4 - &k4) / (&four_x4 + &k4);
    }
    Rational::from_i64(1) - sum * Rational::ratio(5, 2)
}

fn rhs_product(n: u64, f_n: &RationalPolynomial, x: &Rational) -> Rational {
    let x2 = x * x;
    let four_x4 = &x2 * &x2 * Rational::from_i64(4);
    (1..=n).fold(f_n.eval(x), |acc, j| {
        let j2 = Rational::from_i64((j * j) as i64);
        acc * (&x2 - &j2) / (&four_x4 + &j2 * &j2)
    })
}
