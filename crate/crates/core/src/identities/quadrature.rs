//! Numeric check of
//!
//! ```text
//! (4n^2/π) ∫_0^∞ Π_{j=1}^{n-1} (4x^2 - j^4) / Π_{j=1}^{n} (x^2 + j^4) dx = C(2n, n)
//! ```
//!
//! The half-line is split at `x = 1`; the outer piece becomes
//! `∫_0^1 Π_{j<n} (4 - j^4 u^2) / Π_{j≤n} (1 + j^4 u^2) du` under `u = 1/x`.
//! Both pieces are smooth on the closed interval and integrated by adaptive
//! bisection with a fixed Gauss–Legendre rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::precision::{pi, HpReal};

const RULE_ORDER: usize = 20;
const MAX_DEPTH: u32 = 48;

#[derive(Debug, Clone)]
pub struct Quadrature {
    pub n: u64,
    pub value: HpReal,
    /// Panels accepted by the bisection across both pieces.
    pub panels: usize,
    /// Sum over accepted panels of `|refined - coarse|`, scaled like `value`;
    /// an estimate of the discretisation error, not a proof.
    pub refinement_gap: f64,
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
struct GaussRule {
    nodes: Vec<HpReal>,
    weights: Vec<HpReal>,
}

impl GaussRule {
    fn new(order: usize, scale: u32) -> Result<Self> {
        let mut nodes = Vec::with_capacity(order);
        let mut weights = Vec::with_capacity(order);
        let one = HpReal::from_int(1, scale);
        let close = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(scale.saturating_sub(3)));
        for i in 1..=order {
            let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (order as f64 + 0.5)).cos();
            let mut x = HpReal::from_f64_exact(guess, scale)
                .ok_or_else(|| Error::QuadratureNonConvergence("bad node guess".into()))?;
            let mut converged = false;
            for _ in 0..64 {
                let (p, dp) = legendre(order, &x, &one)?;
                let next = &x - &p.checked_div(&dp)?;
                // node rounding is not propagated; the weights absorb it
                let next = HpReal::exact(next.mantissa().clone(), scale);
                let done = next.distance(&x) <= close;
                x = next;
                if done {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::QuadratureNonConvergence(format!("Legendre node {i} of {order}")));
            }
            let (_, dp) = legendre(order, &x, &one)?;
            let w = HpReal::from_int(2, scale).checked_div(&(&(&one - &(&x * &x)) * &(&dp * &dp)))?;
            nodes.push(x);
            weights.push(HpReal::exact(w.mantissa().clone(), scale));
        }
        Ok(GaussRule { nodes, weights })
    }

    /// `∫_a^b f`.
    fn apply(&self, f: &dyn Fn(&HpReal) -> Result<HpReal>, a: &HpReal, b: &HpReal) -> Result<HpReal> {
        let half = (b - a).div_int(&BigInt::from(2));
        let mid = (a + b).div_int(&BigInt::from(2));
        let mut acc = HpReal::zero(a.scale());
        for (t, w) in self.nodes.iter().zip(&self.weights) {
            acc = &acc + &(w * &f(&(&mid + &(&half * t)))?);
        }
        Ok(&acc * &half)
    }
}

/// `P_m(x)` and `P_m'(x)`.
fn legendre(m: usize, x: &HpReal, one: &HpReal) -> Result<(HpReal, HpReal)> {
    let mut prev = one.clone();
    let mut cur = x.clone();
    for k in 1..m {
        let k = k as i64;
        let next = (&(x * &cur).mul_int(&BigInt::from(2 * k + 1)) - &prev.mul_int(&BigInt::from(k)))
            .div_int(&BigInt::from(k + 1));
        prev = cur;
        cur = next;
    }
    let num = (&(x * &cur) - &prev).mul_int(&BigInt::from(m as i64));
    let dp = num.checked_div(&(&(x * x) - one))?;
    Ok((cur, dp))
}

struct Adaptive<'a> {
    rule: &'a GaussRule,
    f: &'a dyn Fn(&HpReal) -> Result<HpReal>,
    panels: usize,
    gap: BigRational,
}

impl Adaptive<'_> {
    fn integrate(&mut self, a: &HpReal, b: &HpReal, whole: HpReal, tol: &BigRational, depth: u32) -> Result<HpReal> {
        let mid = (a + b).div_int(&BigInt::from(2));
        let left = self.rule.apply(self.f, a, &mid)?;
        let right = self.rule.apply(self.f, &mid, b)?;
        let refined = &left + &right;
        let diff = refined.distance(&whole);
        if diff < *tol {
            self.panels += 2;
            self.gap += diff;
            return Ok(refined);
        }
        if depth >= MAX_DEPTH {
            return Err(Error::QuadratureNonConvergence(format!(
                "panel [{}, {}] still changes by {:.3e}",
                a.to_f64(),
                b.to_f64(),
                num_traits::ToPrimitive::to_f64(&diff).unwrap_or(f64::NAN)
            )));
        }
        let half = tol / BigRational::from_integer(BigInt::from(2));
        let l = self.integrate(a, &mid, left, &half, depth + 1)?;
        let r = self.integrate(&mid, b, right, &half, depth + 1)?;
        Ok(&l + &r)
    }
}

/// `(4n^2/π) ∫_0^∞ …` as above; compare with `C(2n, n)`.
///
/// Panels are bisected until the two-panel refinement moves the result by
/// less than `tol / 10` after the final scaling.
pub fn integral_corollary4(n: u64, tol: f64) -> Result<Quadrature> {
    if n == 0 {
        return Err(Error::OutOfRange("integral needs n >= 1".into()));
    }
    if !(tol >= 1e-30 && tol.is_finite()) {
        return Err(Error::OutOfRange(format!("tolerance {tol:e} is below 1e-30")));
    }
    let digits = (-tol.log10()).ceil().max(1.0) as u32;
    let scale = digits + 15 + 2 * (n as f64).log10().ceil() as u32;
    let rule = GaussRule::new(RULE_ORDER, scale)?;
    let fourth: Vec<BigInt> = (1..=n).map(|j| BigInt::from(j).pow(4)).collect();

    let inner = |x: &HpReal| -> Result<HpReal> {
        let x2 = x * x;
        let four_x2 = x2.mul_int(&BigInt::from(4));
        let mut num = HpReal::from_int(1, scale);
        let mut den = HpReal::from_int(1, scale);
        for (i, j4) in fourth.iter().enumerate() {
            if (i as u64) + 1 < n {
                num = &num * &(&four_x2 - &HpReal::from_int(j4.clone(), scale));
            }
            den = &den * &(&x2 + &HpReal::from_int(j4.clone(), scale));
        }
        num.checked_div(&den)
    };
    let outer = |u: &HpReal| -> Result<HpReal> {
        let u2 = u * u;
        let mut num = HpReal::from_int(1, scale);
        let mut den = HpReal::from_int(1, scale);
        for (i, j4) in fourth.iter().enumerate() {
            let t = u2.mul_int(j4);
            if (i as u64) + 1 < n {
                num = &num * &(&HpReal::from_int(4, scale) - &t);
            }
            den = &den * &(&HpReal::from_int(1, scale) + &t);
        }
        num.checked_div(&den)
    };

    // target on the raw integral: tol/10 after multiplying by 4n^2/π, split over two pieces
    let factor = BigRational::from_integer(BigInt::from(4 * n * n));
    let tol_rat = BigRational::from_float(tol).ok_or_else(|| Error::OutOfRange("tolerance".into()))?;
    let raw_tol = tol_rat / (factor.clone() * BigRational::from_integer(BigInt::from(20)));

    let zero = HpReal::zero(scale);
    let one = HpReal::from_int(1, scale);
    let mut total = HpReal::zero(scale);
    let mut panels = 0;
    let mut gap = BigRational::from_integer(BigInt::from(0));
    for f in [&inner as &dyn Fn(&HpReal) -> Result<HpReal>, &outer] {
        let mut run = Adaptive { rule: &rule, f, panels: 0, gap: BigRational::from_integer(BigInt::from(0)) };
        let whole = rule.apply(f, &zero, &one)?;
        let piece = run.integrate(&zero, &one, whole, &raw_tol, 0)?;
        total = &total + &piece;
        panels += run.panels;
        gap += run.gap;
    }

    let value = total.mul_rational(&factor).checked_div(&pi(scale))?;
    let refinement_gap = num_traits::ToPrimitive::to_f64(&(gap.abs() * factor)).unwrap_or(f64::INFINITY) / std::f64::consts::PI;
    Ok(Quadrature { n, value, panels, refinement_gap })
}
