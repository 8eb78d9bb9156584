//! Closed forms for particular 6F5 and 4F3 series at `-4` and `-1/4`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{pfq_numeric, pfq_terminating, HypergeometricSpec};
use crate::error::{Error, Result};
use crate::identities::{finite_identity, identity_65};
use crate::precision::{central_binomial, guard_digits, pochhammer_signed, HpComplex, HpReal};
use crate::scalar::Scalar;
use crate::{GaussianRational, Rational};

fn g(re: Rational, im: Rational) -> GaussianRational {
    GaussianRational::new(re, im)
}

fn gi(re: i64, im: i64) -> GaussianRational {
    g(Rational::from_i64(re), Rational::from_i64(im))
}

/// Terminating 6F5 at `-4` with value `(4n^4 + 1)/(5n^2)`.
pub fn eq61_spec(n: u64) -> HypergeometricSpec {
    let n = n as i64;
    HypergeometricSpec::new(
        vec![gi(2, 0), g(Rational::ratio(3, 2), Rational::zero()), gi(1 + n, 0), gi(1 - n, 0), gi(1, n), gi(1, -n)],
        vec![gi(1, 0), gi(2 + n, n), gi(2 + n, -n), gi(2 - n, n), gi(2 - n, -n)],
        Rational::from_i64(-4),
    )
}

pub fn eq61_closed_form(n: u64) -> Rational {
    let n = n as i64;
    Rational::ratio(4 * n.pow(4) + 1, 5 * n * n)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eq61 {
    pub n: u64,
    /// Exact Gaussian-rational sum of the series.
    pub value: GaussianRational,
    pub closed_form: Rational,
    /// The same quantity through the finite sum `(5/2) Σ …`, scaled by the
    /// first-term normalisation `(4n^4+1)/(5n^2)`.
    pub via_finite_identity: Rational,
}

impl Eq61 {
    pub fn passes(&self) -> bool {
        self.value.im.is_zero() && self.value.re == self.closed_form && self.via_finite_identity == self.closed_form
    }
}

pub fn eq61(n: u64) -> Result<Eq61> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    let value = pfq_terminating(&eq61_spec(n))?;
    let closed_form = eq61_closed_form(n);
    let via_finite_identity = closed_form.clone() * finite_identity::<Rational>(n);
    Ok(Eq61 { n, value, closed_form, via_finite_identity })
}

/// Non-terminating 6F5 at `-1/4` from the residue at `z = n`.
pub fn corollary2_spec(n: u64) -> HypergeometricSpec {
    let n = n as i64;
    HypergeometricSpec::new(
        vec![gi(n + 1, 0), gi(n + 1, 0), gi(2 * n, n), gi(2 * n, -n), gi(0, n), gi(0, -n)],
        vec![g(Rational::ratio(2 * n + 1, 2), Rational::zero()), gi(n, 0), gi(2 * n + 1, 0), gi(n + 1, n), gi(n + 1, -n)],
        Rational::ratio(-1, 4),
    )
}

/// `(2/5) C(2n,n) Π_{j<n} (n^4 - j^4)/(4n^4 + j^4)`.
pub fn corollary2_rhs(n: u64) -> Rational {
    let n4 = Rational::from_i64(n as i64).powu(4);
    let prod = (1..n).fold(Rational::one(), |acc, j| {
        let j4 = Rational::from_i64(j as i64).powu(4);
        acc * (n4.clone() - j4.clone()) / (n4.clone() * Rational::from_i64(4) + j4)
    });
    Rational::ratio(2, 5) * Rational::from_bigint(&central_binomial(n)) * prod
}

/// A numerically summed series against its exact value.
#[derive(Debug, Clone)]
pub struct StrangeCheck {
    pub n: u64,
    pub digits: u32,
    pub value: HpComplex,
    pub expected: Rational,
    pub terms: u64,
}

impl StrangeCheck {
    /// The enclosure contains the exact value (imaginary part zero).
    pub fn passes(&self) -> bool {
        self.value.re.encloses(&self.expected) && self.value.im.encloses(&Rational::zero())
    }
}

pub fn corollary2(n: u64, digits: u32) -> Result<StrangeCheck> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    let e = pfq_numeric(&corollary2_spec(n), digits)?;
    Ok(StrangeCheck { n, digits, value: e.value, expected: corollary2_rhs(n), terms: e.terms })
}

/// `4F3(2, 2, -i, i; 3/2, 1, 3 | -1/4)`, expected `4/5`.
pub fn corollary3_spec() -> HypergeometricSpec {
    HypergeometricSpec::new(
        vec![gi(2, 0), gi(2, 0), gi(0, -1), gi(0, 1)],
        vec![g(Rational::ratio(3, 2), Rational::zero()), gi(1, 0), gi(3, 0)],
        Rational::ratio(-1, 4),
    )
}

pub fn corollary3(digits: u32) -> Result<StrangeCheck> {
    let e = pfq_numeric(&corollary3_spec(), digits)?;
    Ok(StrangeCheck { n: 1, digits, value: e.value, expected: Rational::ratio(4, 5), terms: e.terms })
}

/// Summand of the 4F3 above for any integer `k`, in the form
/// `(k+1)^2 Γ(k±i) Γ(1/2) (-1/4)^k / (Γ(±i) Γ(3/2+k) Γ(k+3))`, with each gamma
/// ratio reduced to a finite rational product.
pub fn corollary3_term(k: i64) -> Rational {
    let i = gi(0, 1);
    // Γ(k+i)Γ(k-i)/(Γ(i)Γ(-i)) is real and never singular for integer k
    let imag_part = (pochhammer_signed(&i, k).expect("no pole off the real axis")
        * pochhammer_signed(&-i, k).expect("no pole off the real axis"))
    .re;
    // Γ(1/2)/Γ(3/2+k) = 1/(1/2)_{k+1}; half-integers never hit a pole
    let half = pochhammer_signed(&Rational::ratio(1, 2), k + 1).expect("half-integer").recip();
    // 1/Γ(k+3) vanishes at the non-positive integers
    let inv_gamma = if k + 3 <= 0 {
        Rational::zero()
    } else {
        (1..=(k + 2)).fold(Rational::one(), |acc, j| acc / Rational::from_i64(j))
    };
    if inv_gamma.is_zero() {
        return Rational::zero();
    }
    let quarter = if k >= 0 {
        Rational::ratio(-1, 4).powu(k as u32)
    } else {
        Rational::from_i64(-4).powu((-k) as u32)
    };
    let k1 = Rational::from_i64(k + 1);
    k1.clone() * k1 * imag_part * half * inv_gamma * quarter
}

#[derive(Debug, Clone, PartialEq)]
pub struct Corollary3Reflection {
    /// `t(-1), t(-2), …, t(-checked)`.
    pub negative_terms: Vec<(i64, Rational)>,
    /// `-t(-2)`, which the bilateral sum forces to equal `Σ_{k≥0} t(k)`.
    pub value: Rational,
}

impl Corollary3Reflection {
    pub fn only_minus_two_survives(&self) -> bool {
        self.negative_terms.iter().all(|(k, v)| *k == -2 || v.is_zero())
    }
}

/// Reflection proof of the 4F3 evaluation: every negative-index term except
/// `k = -2` vanishes, so the value is `-t(-2)`.
pub fn reflection_corollary3() -> Corollary3Reflection {
    let negative_terms: Vec<(i64, Rational)> = (1..=12).map(|k| (-k, corollary3_term(-k))).collect();
    let value = -corollary3_term(-2);
    Corollary3Reflection { negative_terms, value }
}

/// Both sides of the `z^4 = -n^4/4` specialisation.
#[derive(Debug, Clone)]
pub struct Termination63 {
    pub n: u64,
    /// `Σ_{k≥1} 4k/(4k^4 + n^4)` summed directly, with an integral enclosure of the tail.
    pub direct: HpReal,
    pub direct_terms: u64,
    /// `(1/(2n)) Σ_{k=1}^n 1/((k - n/2)^2 + n^2/4)`.
    pub closed_form: Rational,
    /// The terminated central-binomial side.
    pub terminating_side: Rational,
}

impl Termination63 {
    pub fn passes(&self) -> bool {
        self.closed_form == self.terminating_side && self.direct.encloses(&self.closed_form)
    }
}

const MAX_DIRECT_TERMS: u64 = 20_000_000;

pub fn gf_termination_63(n: u64, digits: u32) -> Result<Termination63> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    // the tail enclosure has width about 1/K^3
    let k_max = (10f64.powf((digits as f64 + 1.0) / 3.0) * 2.0).ceil().max(1000.0).max(n as f64) as u64;
    if k_max > MAX_DIRECT_TERMS {
        return Err(Error::PrecisionUnachievable(format!("{digits} digits need more than {MAX_DIRECT_TERMS} direct terms")));
    }
    let scale = digits + guard_digits(k_max as usize);
    let n4 = BigInt::from(n).pow(4);
    let mut acc = HpReal::zero(scale);
    for k in 1..=k_max {
        let kb = BigInt::from(k);
        let den = BigInt::from(4) * kb.pow(4) + &n4;
        acc = &acc + &HpReal::from_int(4 * kb, scale).div_int(&den);
    }
    // f decreases for k ≥ n, so ∫_{K+1}^∞ f ≤ tail ≤ ∫_K^∞ f, and ∫_K^∞ f = arctan(n^2/(2K^2))/n^2;
    // y - y^3/3 ≤ arctan y ≤ y
    let n2 = BigRational::from_integer(BigInt::from(n * n));
    let y = |m: u64| n2.clone() / BigRational::from_integer(BigInt::from(2 * m * m));
    let y0 = y(k_max);
    let y1 = y(k_max + 1);
    let upper = y0 / &n2;
    let lower = (y1.clone() - &y1 * &y1 * &y1 / BigRational::from_integer(BigInt::from(3))) / &n2;
    let two = BigRational::from_integer(BigInt::from(2));
    let mid = (&upper + &lower) / &two;
    let half_width = (upper - lower).abs() / two;
    let direct = (&acc + &HpReal::from_rational(&mid, scale)).widen(&half_width);

    let (terminating_side, closed_form) = identity_65::<Rational>(n);
    Ok(Termination63 { n, direct, direct_terms: k_max, closed_form, terminating_side })
}
