//! Integer relations among high-precision reals by lattice reduction.
//!
//! For values `v_1..v_n` the lattice is spanned by the rows `(e_i, ⌊10^w v_i⌋)`
//! with `w = d - 10`. A relation `c` shows up as the short vector
//! `(c, Σ c_i ⌊10^w v_i⌋)`; anything LLL returns is re-checked against the
//! unrounded values. When nothing is found, the smallest Gram–Schmidt norm
//! of the reduced basis bounds the height of every relation that could have
//! been missed.

mod basis;
mod lll;

pub use basis::{negative_search_zeta5, rediscover_row, single_term_search, DiscoveryBasis, RowSearch};
pub use lll::{lll, Reduced};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::precision::HpReal;

/// Working digits held back from the lattice scaling.
pub const RELATION_GUARD: u32 = 10;
const LOVASZ: (u32, u32) = (99, 100);

#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    /// Coprime, first nonzero entry positive.
    pub coefficients: Vec<BigInt>,
    /// `Σ c_i v_i` recomputed from the input values, with its error bound.
    pub residual: HpReal,
    pub labels: Vec<String>,
    pub digits: u32,
}

impl Relation {
    pub fn height(&self) -> BigInt {
        self.coefficients.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// `log10 |residual|` of the representative (`-inf` for exact zero).
    pub fn residual_log10(&self) -> f64 {
        let m = self.residual.mantissa();
        if m.is_zero() {
            f64::NEG_INFINITY
        } else {
            crate::precision::log10_biguint(m.magnitude()) - self.residual.scale() as f64
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = labels;
        self
    }
}

/// Result of a search that found nothing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Exclusion {
    /// Every integer relation among the inputs has max-norm height at least
    /// `10^height_log10`.
    pub height_log10: f64,
    pub digits: u32,
    pub values: usize,
    pub max_height: u64,
}

impl Exclusion {
    /// True when the certified bound covers the whole requested height range.
    pub fn covers_request(&self) -> bool {
        self.height_log10 > (self.max_height as f64).log10()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RelationSearch {
    Found(Relation),
    NotFound(Exclusion),
}

impl RelationSearch {
    pub fn relation(&self) -> Option<&Relation> {
        match self {
            RelationSearch::Found(r) => Some(r),
            RelationSearch::NotFound(_) => None,
        }
    }
}

/// Largest height for which `n` values at `digits` still meet the precision rule
/// `digits - guard ≥ n (log10 H + 1)`, capped at `10^18`.
pub fn auto_max_height(n: usize, digits: u32) -> u64 {
    let work = digits.saturating_sub(RELATION_GUARD) as f64;
    let exp = (work / n as f64 - 1.0).clamp(0.0, 18.0);
    10f64.powf(exp).floor() as u64
}

fn normalize(mut c: Vec<BigInt>) -> Vec<BigInt> {
    let g = c.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() {
        for x in &mut c {
            *x = &*x / &g;
        }
    }
    if c.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in &mut c {
            *x = -&*x;
        }
    }
    c
}

fn combine(values: &[HpReal], c: &[BigInt]) -> HpReal {
    let scale = values.iter().map(HpReal::scale).max().unwrap_or(0);
    values
        .iter()
        .zip(c)
        .fold(HpReal::zero(scale), |acc, (v, ci)| &acc + &v.rescale(scale).mul_int(ci))
}

/// Searches for `c ≠ 0` with `Σ c_i v_i = 0` and `max |c_i| ≤ max_height`.
pub fn integer_relation(values: &[HpReal], digits: u32, max_height: u64) -> Result<RelationSearch> {
    let n = values.len();
    if n < 2 {
        return Err(Error::OutOfRange("integer_relation needs at least two values".into()));
    }
    if digits < 30 {
        return Err(Error::InsufficientPrecision(format!("need at least 30 digits, got {digits}")));
    }
    if let Some(i) = values.iter().position(|v| !v.err_within_digits(digits as i64)) {
        return Err(Error::InsufficientPrecision(format!(
            "value {i} is only known to 1e{:.1}, not 1e-{digits}",
            values[i].err_log10()
        )));
    }
    let work = digits - RELATION_GUARD;
    let needed = n as f64 * ((max_height.max(1) as f64).log10() + 1.0);
    if (work as f64) < needed {
        return Err(Error::InsufficientPrecision(format!(
            "{n} values with height up to {max_height} need at least {} digits",
            (needed.ceil() as u32) + RELATION_GUARD
        )));
    }

    let rows: Vec<Vec<BigInt>> = values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut row = vec![BigInt::zero(); n + 1];
            row[i] = BigInt::from(1);
            row[n] = v.rescale(work).mantissa().clone();
            row
        })
        .collect();
    let reduced = lll(rows, LOVASZ.0, LOVASZ.1);

    let threshold_log10 = -(digits as f64 - 10.0);
    let cap = BigInt::from(max_height);
    let mut best: Option<Relation> = None;
    for row in &reduced.basis {
        let c = &row[..n];
        if c.iter().all(Zero::is_zero) || c.iter().any(|x| x.abs() > cap) {
            continue;
        }
        let c = normalize(c.to_vec());
        let residual = combine(values, &c);
        let rel = Relation { coefficients: c, residual, labels: default_labels(n), digits };
        if rel.residual_log10() < threshold_log10 && best.as_ref().map_or(true, |b| rel.height() < b.height()) {
            best = Some(rel);
        }
    }
    if let Some(rel) = best {
        return Ok(RelationSearch::Found(rel));
    }

    // a missed relation c gives a lattice vector of norm ≤ |c|_2 sqrt(1 + n (1+δ)^2),
    // δ accounting for the truncation and the input error, both below one unit
    let slack = 0.5 * (1.0 + n as f64 * 4.0).log10();
    let l2 = reduced.shortest_log10_lower_bound() - slack;
    let height_log10 = l2 - 0.5 * (n as f64).log10();
    Ok(RelationSearch::NotFound(Exclusion { height_log10, digits, values: n, max_height }))
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// `d.ddd…e±X` rendering of an `HpReal` representative, exact in the digits shown.
pub fn scientific(v: &HpReal, sig: usize) -> String {
    let m = v.mantissa();
    if m.is_zero() {
        return "0".into();
    }
    let digits = m.magnitude().to_str_radix(10);
    let exp = digits.len() as i64 - 1 - v.scale() as i64;
    let shown = &digits[..sig.min(digits.len())];
    let sign = if m.is_negative() { "-" } else { "" };
    let (head, tail) = shown.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{exp}")
    } else {
        format!("{sign}{head}.{tail}e{exp}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn int(v: i64, scale: u32) -> HpReal {
        HpReal::from_int(v, scale)
    }

    #[test]
    fn integer_ratio() {
        let r = integer_relation(&[int(1, 50), int(2, 50)], 40, 1000).unwrap();
        let rel = r.relation().unwrap();
        assert_eq!(rel.coefficients, vec![BigInt::from(2), BigInt::from(-1)]);
        assert!(rel.residual.is_zero_value());
    }

    #[test]
    fn precision_rule_is_enforced() {
        let v = [int(1, 50), int(3, 50), int(7, 50)];
        assert!(matches!(integer_relation(&v, 40, 10u64.pow(12)), Err(Error::InsufficientPrecision(_))));
        assert!(matches!(integer_relation(&v, 20, 10), Err(Error::InsufficientPrecision(_))));
        assert!(integer_relation(&v[..1], 40, 10).is_err());
    }

    #[test]
    fn sqrt2_has_no_small_relation_with_one() {
        // √2 to 60 digits
        let s = HpReal::parse("1.414213562373095048801688724209698078569671875376948073176").unwrap();
        let r = integer_relation(&[int(1, 58), s.rescale(58)], 45, 1_000_000).unwrap();
        match r {
            RelationSearch::NotFound(e) => assert!(e.covers_request(), "{e:?}"),
            RelationSearch::Found(rel) => panic!("spurious {:?}", rel.coefficients),
        }
    }

    #[test]
    fn planted_relations_are_recovered() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let d = 80;
        let scale = d + 5;
        for trial in 0..50 {
            let m = 3;
            let xs: Vec<HpReal> = (0..m)
                .map(|_| {
                    let digits: String = (0..scale).map(|_| char::from(b'0' + rng.gen_range(0..10u8))).collect();
                    HpReal::exact(digits.parse::<BigInt>().unwrap(), scale)
                })
                .collect();
            let c: Vec<i64> = (0..m).map(|_| rng.gen_range(-1_000_000i64..=1_000_000)).collect();
            let planted = xs.iter().zip(&c).fold(HpReal::zero(scale), |a, (x, &ci)| &a + &x.mul_int(&BigInt::from(ci)));
            let mut values = xs.clone();
            values.push(planted);
            let r = integer_relation(&values, d, 1_000_000).unwrap();
            let rel = r.relation().unwrap_or_else(|| panic!("trial {trial}: nothing found"));
            let mut expected: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
            expected.push(BigInt::from(-1));
            assert_eq!(rel.coefficients, normalize(expected), "trial {trial}");
        }
    }

    #[test]
    fn normalisation() {
        let c = normalize(vec![BigInt::from(0), BigInt::from(-4), BigInt::from(6)]);
        assert_eq!(c, vec![BigInt::from(0), BigInt::from(2), BigInt::from(-3)]);
    }

    #[test]
    fn scientific_rendering() {
        let v = HpReal::exact(BigInt::from(-12345), 8);
        assert_eq!(scientific(&v, 3), "-1.23e-4");
        assert_eq!(scientific(&HpReal::exact(BigInt::from(7), 2), 3), "7e-2");
    }
}
