//! Single-value formulas obtained by extracting one coefficient from a
//! generating function: ζ(4n+3) with `h`/`e` at `s = 4`, and ζ(2n+3)
//! with `e` at `s = 2`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{inverse_power_hp, sum_series, Evaluation, Summand, TruncationPlan};
use crate::error::Result;
use crate::precision::HpReal;
use crate::symfun::SymmetricAccumulator;

/// `Σ_{j=0}^n S_{n-j}(k) / k^(4j+3)` with `S_m = Σ_r 4^r h_{m-r} e_r`.
struct Corollary1 {
    n: usize,
    scale: u32,
    sym: SymmetricAccumulator<HpReal>,
}

impl Summand for Corollary1 {
    type V = HpReal;

    fn term(&mut self, k: u64, c: &BigInt) -> Result<HpReal> {
        let k4 = BigInt::from(k).pow(4);
        // Horner in 1/k^4, starting from the j = n coefficient S_0
        let mut acc = HpReal::zero(self.scale);
        for j in (0..=self.n).rev() {
            let m = self.n - j;
            let mut s_m = HpReal::zero(self.scale);
            for r in 0..=m {
                let term = self.sym.complete(m - r) * self.sym.elementary(r);
                s_m = &s_m + &term.mul_int(&BigInt::from(4).pow(r as u32));
            }
            acc = if j == self.n { s_m } else { &acc.div_int(&k4) + &s_m };
        }
        let t = acc.div_int(&(BigInt::from(k).pow(3) * c));
        self.sym.push(&inverse_power_hp(k, 4, self.scale));
        Ok(t)
    }

    fn tail(&self, _next: u64) -> Option<(BigRational, u32)> {
        // h_r ≤ ζ(4)^r, e_r ≤ ζ(4)^r / r!, so S_m ≤ e^4 ζ(4)^m < 55 (13/12)^m
        let n = self.n as u32;
        let b = BigRational::from_integer(BigInt::from(55 * (n as u64 + 1)))
            * BigRational::new(BigInt::from(13).pow(n), BigInt::from(12).pow(n));
        Some((b, 3))
    }

    fn factor(&self) -> BigRational {
        BigRational::new(5.into(), 2.into())
    }
}

/// ζ(4n+3) from the symmetric-function expansion.
pub fn zeta4n3_via_corollary1(n: u32, digits: u32) -> Result<Evaluation<HpReal>> {
    let plan = TruncationPlan::new(digits);
    let scale = plan.scale();
    let mut s = Corollary1 {
        n: n as usize,
        scale,
        sym: SymmetricAccumulator::new(n as usize, HpReal::zero(scale), HpReal::from_int(1, scale)),
    };
    sum_series(&mut s, &plan)
}

/// `(5/2)(-1)^n e_n / k^3 + 2 Σ_{j=1}^n (-1)^(n-j) e_{n-j} / k^(2j+3)`.
struct Koecher {
    n: usize,
    scale: u32,
    sym: SymmetricAccumulator<HpReal>,
}

impl Summand for Koecher {
    type V = HpReal;

    fn term(&mut self, k: u64, c: &BigInt) -> Result<HpReal> {
        let k2 = BigInt::from(k).pow(2);
        let signed = |r: usize, v: &HpReal| if r % 2 == 0 { v.clone() } else { -v };
        // Horner in 1/k^2 over j = n..1, then the j = 0 piece
        let mut acc = HpReal::zero(self.scale);
        for j in (1..=self.n).rev() {
            let e = signed(self.n - j, self.sym.elementary(self.n - j)).mul_int(&BigInt::from(2));
            acc = &acc.div_int(&k2) + &e;
        }
        acc = acc.div_int(&k2);
        let lead = signed(self.n, self.sym.elementary(self.n))
            .mul_rational(&BigRational::new(5.into(), 2.into()));
        let t = (&acc + &lead).div_int(&(BigInt::from(k).pow(3) * c));
        self.sym.push(&inverse_power_hp(k, 2, self.scale));
        Ok(t)
    }

    fn tail(&self, _next: u64) -> Option<(BigRational, u32)> {
        // e_r^(2) ≤ ζ(2)^r / r! ≤ e^ζ(2) < 27/5
        let b = BigRational::new(BigInt::from(5 + 4 * self.n as u64), 2.into())
            * BigRational::new(27.into(), 5.into());
        Some((b, 3))
    }
}

/// ζ(2n+3) from the coefficient of `z^(2n)` in the `s = 2` generating
/// function.
pub fn koecher_zeta(n: u32, digits: u32) -> Result<Evaluation<HpReal>> {
    let plan = TruncationPlan::new(digits);
    let scale = plan.scale();
    let mut s = Koecher {
        n: n as usize,
        scale,
        sym: SymmetricAccumulator::new(n as usize, HpReal::zero(scale), HpReal::from_int(1, scale)),
    };
    sum_series(&mut s, &plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::zeta_reference;
    use crate::series::zeta_fast;

    #[test]
    fn quartic_coefficients_match_reference() {
        for n in 0..=2u32 {
            let v = zeta4n3_via_corollary1(n, 30).unwrap();
            let r = zeta_reference(4 * n + 3, 40).unwrap();
            assert!(v.value.agrees_to(&r, 30), "n = {n}");
        }
    }

    #[test]
    fn koecher_coefficients_match_reference() {
        for n in 0..=3u32 {
            let v = koecher_zeta(n, 30).unwrap();
            let r = zeta_reference(2 * n + 3, 40).unwrap();
            assert!(v.value.agrees_to(&r, 30), "n = {n}");
        }
    }

    #[test]
    fn koecher_low_orders_match_fast_loops() {
        // n = 0 and n = 1 are the ζ(3) and ζ(5) loops term for term
        for (n, target) in [(0u32, 3u32), (1, 5)] {
            let a = koecher_zeta(n, 40).unwrap();
            let b = zeta_fast(target, 40).unwrap();
            assert!(a.value.agrees_to(&b.value, 40));
        }
    }
}
