//! The three short loops for ζ(3), ζ(5) and ζ(7): a running central
//! binomial `c`, running power sums `a`, and one accumulator `s`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{inverse_power_hp, sum_series, Evaluation, Summand, TruncationPlan};
use crate::error::{Error, Result};
use crate::precision::{zeta_reference, HpReal};

#[derive(Debug, Clone, Copy)]
enum Loop {
    /// `s += (-1)^(n+1) / (n^3 c)`, result `5s/2`.
    Three,
    /// `g = 1/n^2; s += (-1)^(n+1) (4g - 5a) / (n^3 c); a += g`, result `s/2`.
    Five,
    /// `g = 1/n^4; s += (-1)^(n+1) (5a + g) / (n^3 c); a += g`, result `5s/2`.
    Seven,
}

struct FastSummand {
    which: Loop,
    scale: u32,
    a: HpReal,
}

impl Summand for FastSummand {
    type V = HpReal;

    fn term(&mut self, n: u64, c: &BigInt) -> Result<HpReal> {
        let den = BigInt::from(n).pow(3) * c;
        let t = match self.which {
            Loop::Three => HpReal::from_int(1, self.scale).div_int(&den),
            Loop::Five => {
                let g = inverse_power_hp(n, 2, self.scale);
                let num = &g.mul_int(&BigInt::from(4)) - &self.a.mul_int(&BigInt::from(5));
                self.a = &self.a + &g;
                num.div_int(&den)
            }
            Loop::Seven => {
                let g = inverse_power_hp(n, 4, self.scale);
                let num = &self.a.mul_int(&BigInt::from(5)) + &g;
                self.a = &self.a + &g;
                num.div_int(&den)
            }
        };
        Ok(t)
    }

    fn tail(&self, _next: u64) -> Option<(BigRational, u32)> {
        // |4g - 5a| < 4 + 5ζ(2) < 14 and |5a + g| < 5ζ(4) + 1 < 7
        let b = match self.which {
            Loop::Three => 1,
            Loop::Five => 14,
            Loop::Seven => 7,
        };
        Some((BigRational::from_integer(BigInt::from(b)), 3))
    }

    fn factor(&self) -> BigRational {
        match self.which {
            Loop::Five => BigRational::new(1.into(), 2.into()),
            _ => BigRational::new(5.into(), 2.into()),
        }
    }
}

fn summand(target: u32, scale: u32) -> Result<FastSummand> {
    let which = match target {
        3 => Loop::Three,
        5 => Loop::Five,
        7 => Loop::Seven,
        _ => {
            return Err(Error::OutOfRange(format!("fast loops exist for 3, 5, 7; got {target}")))
        }
    };
    Ok(FastSummand { which, scale, a: HpReal::zero(scale) })
}

/// ζ(target) for target ∈ {3, 5, 7}, error bound at most `10^-d`.
pub fn zeta_fast(target: u32, digits: u32) -> Result<Evaluation<HpReal>> {
    zeta_fast_planned(target, &TruncationPlan::new(digits))
}

pub fn zeta_fast_planned(target: u32, plan: &TruncationPlan) -> Result<Evaluation<HpReal>> {
    if plan.digits == 0 {
        return Err(Error::PrecisionUnachievable("digits must be at least 1".into()));
    }
    let mut s = summand(target, plan.scale())?;
    sum_series(&mut s, plan)
}

/// Least-squares slope of correct digits against term count.
#[derive(Debug, Clone, Serialize)]
pub struct DigitsPerTerm {
    pub target: u32,
    pub digits: u32,
    /// `(terms, correct decimal digits)` samples.
    pub samples: Vec<(u64, f64)>,
    pub slope: f64,
}

/// Sums the fast series for `target` at `digits` working precision and
/// records `-log10 |partial sum - ζ|` at evenly spaced term counts.
pub fn measure_digits_per_term(target: u32, digits: u32) -> Result<DigitsPerTerm> {
    let plan = TruncationPlan::new(digits);
    let scale = plan.scale() + 10;
    let mut s = summand(target, scale)?;
    let factor = s.factor();
    let reference = zeta_reference(target, digits + 20)?;
    let step = (plan.terms / 20).max(1);
    let mut acc = HpReal::zero(scale);
    let mut c = BigInt::from(2);
    let mut samples = Vec::new();
    for n in 1..=plan.terms {
        let t = s.term(n, &c)?;
        acc = if n % 2 == 1 { &acc + &t } else { &acc - &t };
        c = c * BigInt::from(4 * n + 2) / BigInt::from(n + 1);
        // skip the start-up transient; stop before errors reach the working precision
        if n >= plan.terms / 5 && n % step == 0 {
            let err = (&acc.mul_rational(&factor) - &reference).abs();
            let correct = -crate::precision::log10_rational(&err.to_rational());
            if correct < digits as f64 - 5.0 {
                samples.push((n, correct));
            }
        }
    }
    if samples.len() < 2 {
        return Err(Error::PrecisionUnachievable("too few samples for a slope".into()));
    }
    let slope = least_squares_slope(&samples);
    Ok(DigitsPerTerm { target, digits, samples, slope })
}

fn least_squares_slope(samples: &[(u64, f64)]) -> f64 {
    let n = samples.len() as f64;
    let mx = samples.iter().map(|s| s.0 as f64).sum::<f64>() / n;
    let my = samples.iter().map(|s| s.1).sum::<f64>() / n;
    let sxy: f64 = samples.iter().map(|s| (s.0 as f64 - mx) * (s.1 - my)).sum();
    let sxx: f64 = samples.iter().map(|s| (s.0 as f64 - mx).powi(2)).sum();
    sxy / sxx
}
