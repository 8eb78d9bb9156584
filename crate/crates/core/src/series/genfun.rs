//! Both sides of the two generating-function identities.
//!
//! Quartic: `Σ_k 1/(k^3 (1 - z^4/k^4)) = (5/2) Σ_k (-1)^(k+1)/(k^3 C(2k,k))
//! · 1/(1 - z^4/k^4) · Π_{j<k} (1 + 4z^4/j^4)/(1 - z^4/j^4)` (conjectured).
//!
//! Quadratic: `Σ_k 1/(k^3 (1 - z^2/k^2)) = Σ_k (-1)^(k+1)/(k^3 C(2k,k))
//! · (1/2 + 2/(1 - z^2/k^2)) · Π_{j<k} (1 - z^2/j^2)` (a theorem).

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{sum_series, upper_rational, Evaluation, Summand, TruncationPlan};
use crate::error::{Error, Result};
use crate::precision::{zeta_reference, HpComplex};

fn pole(k: u64, e: Error) -> Error {
    match e {
        Error::DivisionByZero => Error::Pole(format!("z is a pole of the series at k = {k}")),
        other => other,
    }
}

struct QuarticRhs {
    w: HpComplex,
    /// `Π_{j<k} (j^4 + 4w)/(j^4 - w)`.
    running: HpComplex,
}

impl Summand for QuarticRhs {
    type V = HpComplex;

    fn term(&mut self, k: u64, c: &BigInt) -> Result<HpComplex> {
        let scale = self.w.scale();
        let k4 = HpComplex::from_int(1, scale).mul_int(&BigInt::from(k).pow(4));
        let q = self.running.checked_div(&(&k4 - &self.w)).map_err(|e| pole(k, e))?;
        // (-1)^(k+1) k R_k / (C (k^4 - w)) before the sign
        let t = q.mul_int(&BigInt::from(k)).div_int(c);
        let four_w = self.w.mul_int(&BigInt::from(4));
        self.running = &q * &(&k4 + &four_w);
        Ok(t)
    }

    fn tail(&self, next: u64) -> Option<(BigRational, u32)> {
        // for k ≥ next with next^4 ≥ 2|w|: k^4/|k^4 - w| ≤ 2 and
        // |R_k| ≤ |R_next| exp(Σ_{j≥next} 5|w|/(j^4 - |w|)) ≤ |R_next| exp(10|w|/(3(next-1)^3))
        let w = self.w.abs_upper_f64();
        let nf = next as f64;
        if nf.powi(4) < 2.0 * w {
            return None;
        }
        let growth = (10.0 * w / (3.0 * (nf - 1.0).powi(3))).exp();
        Some((upper_rational(2.0 * growth * self.running.abs_upper_f64()), 3))
    }

    fn factor(&self) -> BigRational {
        BigRational::new(5.into(), 2.into())
    }
}

struct QuadraticRhs {
    w: HpComplex,
    /// `Π_{j<k} (1 - w/j^2)`.
    running: HpComplex,
}

impl Summand for QuadraticRhs {
    type V = HpComplex;

    fn term(&mut self, k: u64, c: &BigInt) -> Result<HpComplex> {
        let scale = self.w.scale();
        let k2 = BigInt::from(k).pow(2);
        let k2c = HpComplex::from_int(1, scale).mul_int(&k2);
        let diff = &k2c - &self.w;
        let frac = k2c.mul_int(&BigInt::from(2)).checked_div(&diff).map_err(|e| pole(k, e))?;
        let half = HpComplex::from_rational(&BigRational::new(1.into(), 2.into()), scale);
        let t = (&(&frac + &half) * &self.running).div_int(&(BigInt::from(k).pow(3) * c));
        self.running = (&self.running * &diff).div_int(&k2);
        Ok(t)
    }

    fn tail(&self, next: u64) -> Option<(BigRational, u32)> {
        // for k ≥ next with next^2 ≥ 2|w|: |1/2 + 2k^2/(k^2 - w)| ≤ 9/2 and
        // |R_k| ≤ |R_next| exp(Σ_{j≥next} |w|/j^2) ≤ |R_next| exp(|w|/(next-1))
        let w = self.w.abs_upper_f64();
        let nf = next as f64;
        if nf * nf < 2.0 * w {
            return None;
        }
        let growth = (w / (nf - 1.0)).exp();
        Some((upper_rational(4.5 * growth * self.running.abs_upper_f64()), 3))
    }
}

fn power_at(z: &HpComplex, e: u32, scale: u32) -> HpComplex {
    z.rescale(scale).powu(e)
}

/// Right side of the quartic identity at `z`, to `10^-d`.
pub fn gf_rhs(z: &HpComplex, digits: u32) -> Result<Evaluation<HpComplex>> {
    let plan = TruncationPlan::new(digits);
    let scale = plan.scale();
    let mut s = QuarticRhs { w: power_at(z, 4, scale), running: HpComplex::from_int(1, scale) };
    sum_series(&mut s, &plan)
}

/// Right side of the quadratic identity at `z`, to `10^-d`.
pub fn koecher_gf_rhs(z: &HpComplex, digits: u32) -> Result<Evaluation<HpComplex>> {
    let plan = TruncationPlan::new(digits);
    let scale = plan.scale();
    let mut s = QuadraticRhs { w: power_at(z, 2, scale), running: HpComplex::from_int(1, scale) };
    sum_series(&mut s, &plan)
}

/// `Σ_{n≥0} w^n ζ(stride·n + 3)` with `w = z^stride`, using oracle ζ values.
fn zeta_power_series(z: &HpComplex, stride: u32, digits: u32) -> Result<Evaluation<HpComplex>> {
    let z_abs = z.abs_upper_f64();
    if z_abs >= 1.0 {
        return Err(Error::Divergent(format!("needs |z| < 1, got |z| ≈ {z_abs}")));
    }
    let w_abs = z_abs.powi(stride as i32);
    let guard = 12;
    let scale = digits + guard;
    let w = power_at(z, stride, scale + 5);
    let mut power = HpComplex::from_int(1, scale + 5);
    let mut acc = HpComplex::zero(scale + 5);
    let target = -((digits + 2) as f64);
    let mut n = 0u32;
    loop {
        let zeta = zeta_reference(stride * n + 3, scale + 5)?;
        acc = &acc + &power.mul_real(&zeta);
        n += 1;
        power = &power * &w;
        // ζ(m) ≤ ζ(3) < 121/100 for m ≥ 3
        let tail = 1.21 * w_abs.powi(n as i32) / (1.0 - w_abs);
        if w_abs == 0.0 || tail.log10() < target {
            let value = acc.widen(&upper_rational(tail)).rescale(scale);
            return Ok(Evaluation { value, terms: n as u64 });
        }
    }
}

/// Left side of the quartic identity, re-expanded as `Σ z^(4n) ζ(4n+3)`.
pub fn gf_lhs(z: &HpComplex, digits: u32) -> Result<Evaluation<HpComplex>> {
    zeta_power_series(z, 4, digits)
}

/// Left side of the quadratic identity, `Σ z^(2n) ζ(2n+3)`.
pub fn koecher_gf_lhs(z: &HpComplex, digits: u32) -> Result<Evaluation<HpComplex>> {
    zeta_power_series(z, 2, digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GaussianRational;

    fn point(re: (i64, i64), im: (i64, i64)) -> HpComplex {
        let z = GaussianRational::new(
            BigRational::new(re.0.into(), re.1.into()),
            BigRational::new(im.0.into(), im.1.into()),
        );
        HpComplex::from_gaussian(&z, 40)
    }

    fn agree(a: &HpComplex, b: &HpComplex, digits: i64) -> bool {
        a.re.agrees_to(&b.re, digits) && a.im.agrees_to(&b.im, digits)
    }

    #[test]
    fn zero_gives_apery() {
        let z = HpComplex::zero(10);
        let r = gf_rhs(&z, 20).unwrap().value;
        let l = gf_lhs(&z, 20).unwrap().value;
        let zeta3 = zeta_reference(3, 30).unwrap();
        assert!(r.re.agrees_to(&zeta3, 20) && l.re.agrees_to(&zeta3, 20));
        let k = koecher_gf_rhs(&z, 20).unwrap().value;
        assert!(k.re.agrees_to(&zeta3, 20));
    }

    #[test]
    fn quartic_sides_agree() {
        for z in [point((1, 2), (0, 1)), point((1, 2), (1, 2)), point((-3, 10), (1, 5))] {
            let r = gf_rhs(&z, 30).unwrap().value;
            let l = gf_lhs(&z, 30).unwrap().value;
            assert!(agree(&r, &l, 28), "z = {}", z.to_decimal_string(5));
        }
    }

    #[test]
    fn quartic_value_is_real_when_w_is_real() {
        // z = (1+i)/2 gives z^4 = -1/4
        let z = point((1, 2), (1, 2));
        let l = gf_lhs(&z, 30).unwrap().value;
        assert!(l.im.abs_upper_f64() < 1e-30);
    }

    #[test]
    fn quadratic_sides_agree() {
        for z in [point((1, 2), (0, 1)), point((2, 5), (-1, 3))] {
            let r = koecher_gf_rhs(&z, 30).unwrap().value;
            let l = koecher_gf_lhs(&z, 30).unwrap().value;
            assert!(agree(&r, &l, 28));
        }
    }

    #[test]
    fn poles_and_divergence() {
        let one = point((1, 1), (0, 1));
        assert!(matches!(gf_rhs(&one, 10), Err(Error::Pole(_))));
        assert!(matches!(koecher_gf_rhs(&one, 10), Err(Error::Pole(_))));
        assert!(matches!(gf_lhs(&one, 10), Err(Error::Divergent(_))));
        // beyond the unit disc the right side still converges
        let far = point((3, 2), (1, 3));
        assert!(gf_rhs(&far, 20).is_ok());
    }
}
