use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::hpreal::HpReal;
use crate::error::Result;
use crate::GaussianRational;

/// Complex counterpart of [`HpReal`]; bounds are tracked per component.
#[derive(Clone, PartialEq, Eq)]
pub struct HpComplex {
    pub re: HpReal,
    pub im: HpReal,
}

impl HpComplex {
    pub fn new(re: HpReal, im: HpReal) -> Self {
        HpComplex { re, im }
    }

    pub fn zero(scale: u32) -> Self {
        HpComplex::new(HpReal::zero(scale), HpReal::zero(scale))
    }

    pub fn from_real(re: HpReal) -> Self {
        let s = re.scale();
        HpComplex::new(re, HpReal::zero(s))
    }

    pub fn from_int(n: i64, scale: u32) -> Self {
        HpComplex::from_real(HpReal::from_int(n, scale))
    }

    pub fn from_gaussian(z: &GaussianRational, scale: u32) -> Self {
        HpComplex::new(HpReal::from_rational(&z.re, scale), HpReal::from_rational(&z.im, scale))
    }

    pub fn from_rational(r: &BigRational, scale: u32) -> Self {
        HpComplex::from_real(HpReal::from_rational(r, scale))
    }

    pub fn scale(&self) -> u32 {
        self.re.scale().max(self.im.scale())
    }

    pub fn conj(&self) -> Self {
        HpComplex::new(self.re.clone(), -&self.im)
    }

    /// Upper bound for the modulus of the true value.
    pub fn abs_upper_f64(&self) -> f64 {
        self.re.abs_upper_f64().hypot(self.im.abs_upper_f64())
    }

    pub fn err_within_digits(&self, digits: i64) -> bool {
        self.re.err_within_digits(digits) && self.im.err_within_digits(digits)
    }

    pub fn err_log10(&self) -> f64 {
        self.re.err_log10().max(self.im.err_log10())
    }

    pub fn norm_sqr(&self) -> HpReal {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn mul_real(&self, r: &HpReal) -> Self {
        HpComplex::new(&self.re * r, &self.im * r)
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        HpComplex::new(self.re.mul_int(n), self.im.mul_int(n))
    }

    pub fn div_int(&self, n: &BigInt) -> Self {
        HpComplex::new(self.re.div_int(n), self.im.div_int(n))
    }

    pub fn mul_rational(&self, r: &BigRational) -> Self {
        HpComplex::new(self.re.mul_rational(r), self.im.mul_rational(r))
    }

    pub fn checked_div(&self, other: &HpComplex) -> Result<HpComplex> {
        let den = other.norm_sqr();
        let num = self * &other.conj();
        Ok(HpComplex::new(num.re.checked_div(&den)?, num.im.checked_div(&den)?))
    }

    pub fn widen(self, bound: &BigRational) -> Self {
        HpComplex::new(self.re.widen(bound), self.im.widen(bound))
    }

    pub fn rescale(&self, scale: u32) -> Self {
        HpComplex::new(self.re.rescale(scale), self.im.rescale(scale))
    }

    /// Whether both components enclose the given exact value.
    pub fn encloses(&self, z: &GaussianRational) -> bool {
        self.re.encloses(&z.re) && self.im.encloses(&z.im)
    }

    pub fn is_real_exact_zero_im(&self) -> bool {
        self.im.is_zero_value() && self.im.is_exact()
    }

    pub fn powu(&self, e: u32) -> Self {
        let mut acc = HpComplex::from_int(1, self.scale());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_decimal_string(&self, sig: usize) -> String {
        let im = &self.im;
        if im.is_zero_value() {
            return self.re.to_decimal_string(sig);
        }
        let (sign, mag) = if im.signum() < 0 { ("-", -im) } else { ("+", im.clone()) };
        format!("{} {} {}i", self.re.to_decimal_string(sig), sign, mag.to_decimal_string(sig))
    }

    pub fn to_gaussian_rational(&self) -> GaussianRational {
        GaussianRational::new(self.re.to_rational(), self.im.to_rational())
    }

    pub fn is_zero_value(&self) -> bool {
        self.re.is_zero_value() && self.im.is_zero_value()
    }
}

impl fmt::Debug for HpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) + ({:?})i", self.re, self.im)
    }
}

impl Add<&HpComplex> for &HpComplex {
    type Output = HpComplex;
    fn add(self, rhs: &HpComplex) -> HpComplex {
        HpComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&HpComplex> for &HpComplex {
    type Output = HpComplex;
    fn sub(self, rhs: &HpComplex) -> HpComplex {
        HpComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&HpComplex> for &HpComplex {
    type Output = HpComplex;
    fn mul(self, rhs: &HpComplex) -> HpComplex {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        HpComplex::new(re, im)
    }
}

impl Neg for &HpComplex {
    type Output = HpComplex;
    fn neg(self) -> HpComplex {
        HpComplex::new(-&self.re, -&self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<&HpComplex> for HpComplex {
            type Output = HpComplex;
            fn $m(self, rhs: &HpComplex) -> HpComplex {
                (&self).$m(rhs)
            }
        }
        impl $tr<HpComplex> for HpComplex {
            type Output = HpComplex;
            fn $m(self, rhs: HpComplex) -> HpComplex {
                (&self).$m(&rhs)
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
    use crate::scalar::Scalar;

    #[test]
    fn complex_division_encloses() {
        let a = GaussianRational::new(BigRational::ratio(1, 3), BigRational::ratio(2, 5));
        let b = GaussianRational::new(BigRational::ratio(-3, 4), BigRational::ratio(1, 7));
        let ha = HpComplex::from_gaussian(&a, 40);
        let hb = HpComplex::from_gaussian(&b, 40);
        let q = ha.checked_div(&hb).unwrap();
        assert!(q.encloses(&(a / b)));
        assert!(q.err_within_digits(37));
    }
}
