//! Decimal fixed-point reals with a tracked absolute error bound.
//!
//! A value is `mantissa · 10^(-scale)`; the true quantity it approximates
//! lies within `err · 10^(-scale)` of it. Every operation truncates toward
//! zero and widens `err` by one ulp whenever it discards digits, so the
//! bound is conservative and results are bit-for-bit deterministic.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

thread_local! {
    static POW10: RefCell<HashMap<u32, BigUint>> = RefCell::new(HashMap::new());
}

/// `10^e`, cached per thread.
pub fn pow10(e: u32) -> BigUint {
    POW10.with(|cache| {
        cache
            .borrow_mut()
            .entry(e)
            .or_insert_with(|| num_traits::pow(BigUint::from(10u32), e as usize))
            .clone()
    })
}

fn pow10_int(e: u32) -> BigInt {
    BigInt::from(pow10(e))
}

/// Approximate `log10` of a non-negative big integer; `-inf` for zero.
pub fn log10_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 900 {
        return x.to_f64().unwrap_or(f64::INFINITY).log10();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.log10() + shift as f64 * std::f64::consts::LOG10_2
}

/// Approximate `log10 |r|`.
pub fn log10_rational(r: &BigRational) -> f64 {
    log10_biguint(r.numer().magnitude()) - log10_biguint(r.denom().magnitude())
}

/// Smallest integer `>= a / b` for non-negative `a` and positive `b`.
fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct HpReal {
    mant: BigInt,
    scale: u32,
    err: BigUint,
}

impl HpReal {
    pub fn zero(scale: u32) -> Self {
        Self::exact(BigInt::zero(), scale)
    }

    /// A value known exactly: `mant · 10^(-scale)` with zero error.
    pub fn exact(mant: BigInt, scale: u32) -> Self {
        HpReal { mant, scale, err: BigUint::zero() }
    }

    pub fn from_parts(mant: BigInt, scale: u32, err: BigUint) -> Self {
        HpReal { mant, scale, err }
    }

    pub fn from_int<I: Into<BigInt>>(n: I, scale: u32) -> Self {
        Self::exact(n.into() * pow10_int(scale), scale)
    }

    /// Truncation of an exact rational; one ulp of error if inexact.
    pub fn from_rational(r: &BigRational, scale: u32) -> Self {
        let num = r.numer() * pow10_int(scale);
        let (q, rem) = num.div_rem(r.denom());
        let err = if rem.is_zero() { BigUint::zero() } else { BigUint::one() };
        HpReal { mant: q, scale, err }
    }

    pub fn from_f64_exact(x: f64, scale: u32) -> Option<Self> {
        BigRational::from_float(x).map(|r| Self::from_rational(&r, scale))
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn err_ulps(&self) -> &BigUint {
        &self.err
    }

    pub fn is_exact(&self) -> bool {
        self.err.is_zero()
    }

    /// Exact rational value of the representative (not of the true quantity).
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mant.clone(), pow10_int(self.scale))
    }

    /// The absolute error bound as an exact rational.
    pub fn err_bound(&self) -> BigRational {
        BigRational::new(BigInt::from(self.err.clone()), pow10_int(self.scale))
    }

    /// Approximate `log10` of the error bound (`-inf` when exact).
    pub fn err_log10(&self) -> f64 {
        log10_biguint(&self.err) - self.scale as f64
    }

    /// True iff the error bound is at most `10^(-digits)`.
    pub fn err_within_digits(&self, digits: i64) -> bool {
        let shift = self.scale as i64 - digits;
        if shift >= 0 {
            self.err <= pow10(shift as u32)
        } else {
            self.err.is_zero()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    /// An upper bound for the magnitude of the true quantity, as `f64`.
    pub fn abs_upper_f64(&self) -> f64 {
        let top = self.mant.magnitude() + &self.err;
        let l = log10_biguint(&top) - self.scale as f64;
        10f64.powf(l) * (1.0 + 1e-12)
    }

    pub fn is_zero_value(&self) -> bool {
        self.mant.is_zero()
    }

    /// True when the enclosure `[v - err, v + err]` excludes zero.
    pub fn is_nonzero_certain(&self) -> bool {
        self.mant.magnitude() > &self.err
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Whether the exact rational `r` lies inside the enclosure.
    pub fn encloses(&self, r: &BigRational) -> bool {
        (r - self.to_rational()).abs() <= self.err_bound()
    }

    /// `|self - other|` on representatives, ignoring both error bounds.
    pub fn distance(&self, other: &HpReal) -> BigRational {
        (self.to_rational() - other.to_rational()).abs()
    }

    /// True iff the representatives differ by at most `10^(-digits)`.
    pub fn agrees_to(&self, other: &HpReal, digits: i64) -> bool {
        let bound = if digits >= 0 {
            BigRational::new(BigInt::one(), pow10_int(digits as u32))
        } else {
            BigRational::from_integer(pow10_int((-digits) as u32))
        };
        self.distance(other) <= bound
    }

    /// Adds `extra` ulps to the error bound.
    pub fn widen_ulps(mut self, extra: &BigUint) -> Self {
        self.err += extra;
        self
    }

    /// Adds an exact non-negative rational to the error bound.
    pub fn widen(self, bound: &BigRational) -> Self {
        let scaled = bound.abs() * BigRational::from_integer(pow10_int(self.scale));
        let ulps = scaled.ceil().to_integer();
        let extra = ulps.to_biguint().unwrap_or_default();
        self.widen_ulps(&extra)
    }

    /// Moves to another scale; narrowing truncates and widens by one ulp.
    pub fn rescale(&self, scale: u32) -> Self {
        match scale.cmp(&self.scale) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let f = pow10(scale - self.scale);
                HpReal {
                    mant: &self.mant * BigInt::from(f.clone()),
                    scale,
                    err: &self.err * f,
                }
            }
            Ordering::Less => {
                let f = pow10(self.scale - scale);
                let (q, r) = self.mant.div_rem(&BigInt::from(f.clone()));
                let mut err = ceil_div(&self.err, &f);
                if !r.is_zero() {
                    err += 1u32;
                }
                HpReal { mant: q, scale, err }
            }
        }
    }

    fn aligned(&self, other: &HpReal) -> (HpReal, HpReal) {
        let s = self.scale.max(other.scale);
        (self.rescale(s), other.rescale(s))
    }

    pub fn abs(&self) -> Self {
        HpReal { mant: self.mant.abs(), scale: self.scale, err: self.err.clone() }
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        HpReal {
            mant: &self.mant * n,
            scale: self.scale,
            err: &self.err * n.magnitude(),
        }
    }

    /// Division by a nonzero exact integer.
    pub fn div_int(&self, n: &BigInt) -> Self {
        assert!(!n.is_zero(), "HpReal::div_int by zero");
        let (q, r) = self.mant.div_rem(n);
        let mut err = ceil_div(&self.err, n.magnitude());
        if !r.is_zero() {
            err += 1u32;
        }
        HpReal { mant: q, scale: self.scale, err }
    }

    pub fn mul_rational(&self, r: &BigRational) -> Self {
        self.mul_int(r.numer()).div_int(r.denom())
    }

    /// Quotient with error propagation; fails if the divisor may be zero.
    pub fn checked_div(&self, other: &HpReal) -> Result<HpReal> {
        let (a, b) = self.aligned(other);
        if !b.is_nonzero_certain() {
            return Err(Error::DivisionByZero);
        }
        let s = a.scale;
        let num = &a.mant * pow10_int(s);
        let (q, _) = num.div_rem(&b.mant);
        let slack = b.mant.magnitude() - &b.err;
        let spread = &a.err * pow10(s) + (q.magnitude() + 1u32) * &b.err;
        let err = ceil_div(&spread, &slack) + 1u32;
        Ok(HpReal { mant: q, scale: s, err })
    }

    pub fn powu(&self, e: u32) -> Self {
        let mut acc = HpReal::from_int(1, self.scale);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Decimal rendering with exactly `sig` significant digits, rounding the
    /// representative half-to-even.
    pub fn to_decimal_string(&self, sig: usize) -> String {
        let sig = sig.max(1);
        let neg = self.mant.is_negative();
        let mag = self.mant.magnitude().clone();
        if mag.is_zero() {
            return format!("0.{}", "0".repeat(sig));
        }
        let len = mag.to_str_radix(10).len();
        // position of the leading digit relative to the decimal point
        let mut lead = len as i64 - self.scale as i64;
        let digits: BigUint = if len > sig {
            let f = pow10((len - sig) as u32);
            let (mut q, r) = mag.div_rem(&f);
            let twice = &r * 2u32;
            if twice > f || (twice == f && q.is_odd()) {
                q += 1u32;
            }
            if q.to_str_radix(10).len() > sig {
                q /= 10u32;
                lead += 1;
            }
            q
        } else {
            mag * pow10((sig - len) as u32)
        };
        let ds = digits.to_str_radix(10);
        let body = if lead >= sig as i64 {
            format!("{}{}.", ds, "0".repeat(lead as usize - sig))
        } else if lead > 0 {
            let (i, f) = ds.split_at(lead as usize);
            format!("{i}.{f}")
        } else {
            format!("0.{}{}", "0".repeat((-lead) as usize), ds)
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }

    /// Parses `[-+]digits[.digits]` into an exact value whose scale is the
    /// number of fractional digits given.
    pub fn parse(s: &str) -> Result<HpReal> {
        let t = s.trim();
        let (neg, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let (int, frac) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        let ok = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
        if int.is_empty() || !ok(int) || !ok(frac) {
            return Err(Error::Parse(format!("not a decimal number: {s:?}")));
        }
        let digits = format!("{int}{frac}");
        let mut mant = BigInt::parse_bytes(digits.as_bytes(), 10)
            .ok_or_else(|| Error::Parse(format!("not a decimal number: {s:?}")))?;
        if neg {
            mant = -mant;
        }
        Ok(HpReal::exact(mant, frac.len() as u32))
    }
}

impl fmt::Debug for HpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = (self.scale as usize).clamp(1, 40);
        write!(f, "{} ± 1e{:.1}", self.to_decimal_string(sig), self.err_log10())
    }
}

impl fmt::Display for HpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(self.scale as usize).max(1);
        f.write_str(&self.to_decimal_string(sig))
    }
}

impl Add<&HpReal> for &HpReal {
    type Output = HpReal;
    fn add(self, rhs: &HpReal) -> HpReal {
        let (a, b) = self.aligned(rhs);
        HpReal { mant: a.mant + b.mant, scale: a.scale, err: a.err + b.err }
    }
}

impl Sub<&HpReal> for &HpReal {
    type Output = HpReal;
    fn sub(self, rhs: &HpReal) -> HpReal {
        let (a, b) = self.aligned(rhs);
        HpReal { mant: a.mant - b.mant, scale: a.scale, err: a.err + b.err }
    }
}

impl Mul<&HpReal> for &HpReal {
    type Output = HpReal;
    fn mul(self, rhs: &HpReal) -> HpReal {
        let (a, b) = self.aligned(rhs);
        let s = a.scale;
        let f = pow10(s);
        let (q, r) = (&a.mant * &b.mant).div_rem(&BigInt::from(f.clone()));
        let spread = a.mant.magnitude() * &b.err + b.mant.magnitude() * &a.err + &a.err * &b.err;
        let mut err = ceil_div(&spread, &f);
        if !r.is_zero() {
            err += 1u32;
        }
        HpReal { mant: q, scale: s, err }
    }
}

impl Neg for &HpReal {
    type Output = HpReal;
    fn neg(self) -> HpReal {
        HpReal { mant: -&self.mant, scale: self.scale, err: self.err.clone() }
    }
}

impl Neg for HpReal {
    type Output = HpReal;
    fn neg(self) -> HpReal {
        HpReal { mant: -self.mant, scale: self.scale, err: self.err }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<&HpReal> for HpReal {
            type Output = HpReal;
            fn $m(self, rhs: &HpReal) -> HpReal {
                (&self).$m(rhs)
            }
        }
        impl $tr<HpReal> for HpReal {
            type Output = HpReal;
            fn $m(self, rhs: HpReal) -> HpReal {
                (&self).$m(&rhs)
            }
        }
        impl $tr<HpReal> for &HpReal {
            type Output = HpReal;
            fn $m(self, rhs: HpReal) -> HpReal {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rendering_rounds_half_even() {
        let x = HpReal::parse("1.2345").unwrap();
        assert_eq!(x.to_decimal_string(4), "1.234");
        let y = HpReal::parse("1.2355").unwrap();
        assert_eq!(y.to_decimal_string(4), "1.236");
        let z = HpReal::parse("-0.0099996").unwrap();
        assert_eq!(z.to_decimal_string(3), "-0.0100");
        assert_eq!(HpReal::parse("9.96").unwrap().to_decimal_string(2), "10.");
        assert_eq!(HpReal::from_int(252, 20).to_decimal_string(6), "252.000");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(HpReal::parse("1.2.3").is_err());
        assert!(HpReal::parse(".5").is_err());
        assert!(HpReal::parse("abc").is_err());
        assert_eq!(HpReal::parse("-12.50").unwrap().to_rational(), rat(-25, 2));
    }

    #[test]
    fn division_encloses_true_quotient() {
        let a = HpReal::from_rational(&rat(1, 3), 30);
        let b = HpReal::from_rational(&rat(-2, 7), 30);
        let q = a.checked_div(&b).unwrap();
        assert!(q.encloses(&rat(-7, 6)));
        assert!(q.err_within_digits(28));
    }

    #[test]
    fn division_by_uncertain_zero_fails() {
        let z = HpReal::from_parts(BigInt::from(1), 10, BigUint::from(3u32));
        assert_eq!(HpReal::from_int(1, 10).checked_div(&z), Err(Error::DivisionByZero));
    }

    #[test]
    fn multiplication_bound_is_conservative() {
        let a = HpReal::from_rational(&rat(22, 7), 25);
        let b = HpReal::from_rational(&rat(-355, 113), 25);
        let p = &a * &b;
        assert!(p.encloses(&(rat(22, 7) * rat(-355, 113))));
    }

    #[test]
    fn rescale_down_keeps_enclosure() {
        let a = HpReal::from_rational(&rat(2, 3), 40);
        let b = a.rescale(12);
        assert!(b.encloses(&rat(2, 3)));
        assert_eq!(b.scale(), 12);
    }
}
