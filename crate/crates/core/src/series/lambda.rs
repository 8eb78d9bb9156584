use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{inverse_power_hp, sum_series, Evaluation, Summand, TruncationPlan};
use crate::error::{Error, Result};
use crate::precision::HpReal;
use crate::symfun::Partition;

/// `λ(m, P_α^(s)) = Σ_k (-1)^(k+1) P_α^(s)(k) / (k^m C(2k,k))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LambdaSpec {
    pub m: u32,
    pub alpha: Partition,
    pub s: u32,
}

impl LambdaSpec {
    pub fn new(m: u32, alpha: Partition, s: u32) -> Self {
        LambdaSpec { m, alpha, s }
    }

    /// `λ(m, P_0)`.
    pub fn plain(m: u32, s: u32) -> Self {
        LambdaSpec { m, alpha: Partition::empty(), s }
    }

    fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::OutOfRange("lambda needs m >= 1".into()));
        }
        if !self.alpha.is_empty() && self.s < 2 {
            return Err(Error::OutOfRange(format!(
                "power sums with s = {} do not stay bounded",
                self.s
            )));
        }
        Ok(())
    }
}

/// Renders as `lambda(7,P1^2;s=4)`.
impl fmt::Display for LambdaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lambda({},{};s={})", self.m, self.alpha.power_sum_label(), self.s)
    }
}

struct LambdaSummand<'a> {
    spec: &'a LambdaSpec,
    scale: u32,
    /// Running `P_r(k)` for each part of α, in order.
    sums: Vec<HpReal>,
}

impl Summand for LambdaSummand<'_> {
    type V = HpReal;

    fn term(&mut self, k: u64, c: &BigInt) -> Result<HpReal> {
        let mut prod = HpReal::from_int(1, self.scale);
        for p in &self.sums {
            prod = &prod * p;
        }
        let den = num_traits::pow(BigInt::from(k), self.spec.m as usize) * c;
        let t = prod.div_int(&den);
        for (p, &r) in self.sums.iter_mut().zip(self.spec.alpha.parts()) {
            *p = &*p + &inverse_power_hp(k, r * self.spec.s, self.scale);
        }
        Ok(t)
    }

    fn tail(&self, _next: u64) -> Option<(BigRational, u32)> {
        // P_r^(s)(k) < ζ(rs) ≤ 1 + 1/(rs - 1)
        let b = self.spec.alpha.parts().iter().fold(BigRational::one(), |acc, &r| {
            let rs = BigInt::from(r * self.spec.s);
            acc * BigRational::new(rs.clone(), rs - 1)
        });
        Some((b, self.spec.m))
    }
}

/// `λ(spec)` with error bound at most `10^-d`.
pub fn lambda_sum(spec: &LambdaSpec, digits: u32) -> Result<Evaluation<HpReal>> {
    lambda_sum_planned(spec, &TruncationPlan::new(digits))
}

pub fn lambda_sum_planned(spec: &LambdaSpec, plan: &TruncationPlan) -> Result<Evaluation<HpReal>> {
    spec.validate()?;
    let scale = plan.scale();
    let mut s = LambdaSummand {
        spec,
        scale,
        sums: vec![HpReal::zero(scale); spec.alpha.len()],
    };
    sum_series(&mut s, plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::zeta_reference;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn plain_lambda_is_two_fifths_zeta3() {
        let l = lambda_sum(&LambdaSpec::plain(3, 4), 20).unwrap();
        let z = zeta_reference(3, 30).unwrap();
        let expected = z.mul_rational(&BigRational::new(2.into(), 5.into()));
        assert!(l.value.agrees_to(&expected, 20));
        assert!(l.value.err_within_digits(20));
        assert_eq!(l.terms, 34);
    }

    #[test]
    fn zeta7_row_from_lambda_values() {
        let d = 30;
        let a = lambda_sum(&LambdaSpec::plain(7, 4), d).unwrap().value;
        let b = lambda_sum(&LambdaSpec::new(3, part(&[1]), 4), d).unwrap().value;
        let lhs = (&a + &b.mul_int(&BigInt::from(5))).mul_rational(&BigRational::new(5.into(), 2.into()));
        let z7 = zeta_reference(7, d + 5).unwrap();
        assert!(lhs.agrees_to(&z7, d as i64 - 2));
    }

    #[test]
    fn zeta5_from_s2_lambda_values() {
        // ζ(5) = 2 λ(5,P0) - (5/2) λ(3,P1^(2))
        let d = 30;
        let a = lambda_sum(&LambdaSpec::plain(5, 2), d).unwrap().value;
        let b = lambda_sum(&LambdaSpec::new(3, part(&[1]), 2), d).unwrap().value;
        let v = &a.mul_int(&BigInt::from(2)) - &b.mul_rational(&BigRational::new(5.into(), 2.into()));
        assert!(v.agrees_to(&zeta_reference(5, d + 5).unwrap(), d as i64 - 2));
    }

    #[test]
    fn term_ratio_tends_to_quarter() {
        // independent f64 recomputation of successive terms; the k^-m factor
        // contributes about 1 - m/k, so large m needs k well past 100
        for (m, alpha, s) in [(3u32, vec![], 4u32), (3, vec![1, 1], 4), (7, vec![2], 2), (5, vec![1], 2)] {
            let mut p = vec![0.0f64; alpha.len()];
            let mut log_c = 2f64.ln();
            let mut prev: Option<f64> = None;
            let from = 100.max(20 * m as u64);
            for k in 1..=from + 60 {
                let kf = k as f64;
                let prod: f64 = p.iter().product();
                let log_term = prod.ln() - m as f64 * kf.ln() - log_c;
                if let Some(pl) = prev {
                    if k > from {
                        let ratio = (log_term - pl).exp();
                        assert!((ratio * 4.0 - 1.0).abs() < 0.05, "m={m} k={k} ratio={ratio}");
                    }
                }
                prev = Some(log_term);
                for (v, &r) in p.iter_mut().zip(&alpha) {
                    *v += kf.powi(-((r * s) as i32));
                }
                log_c += ((4 * k + 2) as f64 / (k + 1) as f64).ln();
            }
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(lambda_sum(&LambdaSpec::plain(0, 4), 10).is_err());
        assert!(lambda_sum(&LambdaSpec::new(3, part(&[1]), 1), 10).is_err());
        assert_eq!(LambdaSpec::new(3, part(&[1, 1]), 4).to_string(), "lambda(3,P1^2;s=4)");
    }
}
