//! Generalised hypergeometric series `pFq(a; b | z) = Σ_k Π(a_i)_k / Π(b_j)_k · z^k / k!`,
//! exact when the series terminates and error-bounded otherwise, plus the
//! reflection machinery that turns the infinite sums into finite ones.

mod gosper;
mod strange;

pub use gosper::{alpha_ratio, gosper_solve, reflected_term, tnk, GosperSystem, ReflectedTerm, Regime};
pub use strange::{
    corollary2, corollary2_rhs, corollary2_spec, corollary3, corollary3_spec, corollary3_term, eq61, eq61_closed_form, eq61_spec, gf_termination_63,
    reflection_corollary3, Corollary3Reflection, Eq61, StrangeCheck, Termination63,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::precision::{guard_digits, HpComplex};
use crate::series::upper_rational;
use crate::GaussianRational;

#[derive(Debug, Clone, PartialEq)]
pub struct HypergeometricSpec {
    pub numerator: Vec<GaussianRational>,
    pub denominator: Vec<GaussianRational>,
    pub argument: BigRational,
}

fn as_nonpositive_integer(a: &GaussianRational) -> Option<u64> {
    (a.im.is_zero() && a.re.is_integer() && !a.re.is_positive()).then(|| (-a.re.to_integer()).to_u64().unwrap_or(u64::MAX))
}

/// Parameters with every conjugate pair folded together, so that
/// `Π (a + k)` over a pair is the real `(Re a + k)^2 + (Im a)^2`.
#[derive(Debug, Clone)]
struct Folded {
    real: Vec<BigRational>,
    pairs: Vec<GaussianRational>,
    lone: Vec<GaussianRational>,
}

impl Folded {
    fn new(params: &[GaussianRational]) -> Self {
        let mut real = Vec::new();
        let mut pairs = Vec::new();
        let mut pending: Vec<GaussianRational> = Vec::new();
        for a in params {
            if a.im.is_zero() {
                real.push(a.re.clone());
            } else if let Some(pos) = pending.iter().position(|b| *b == a.conj()) {
                pending.swap_remove(pos);
                pairs.push(a.clone());
            } else {
                pending.push(a.clone());
            }
        }
        Folded { real, pairs, lone: pending }
    }

    /// `Π (a + k)` over all parameters.
    fn shifted_product(&self, k: u64) -> GaussianRational {
        let kr = BigRational::from_integer(BigInt::from(k));
        let mut re = BigRational::one();
        for a in &self.real {
            re *= a + &kr;
        }
        for a in &self.pairs {
            let x = &a.re + &kr;
            re *= &x * &x + &a.im * &a.im;
        }
        let mut z = GaussianRational::new(re, BigRational::zero());
        for a in &self.lone {
            z = z * GaussianRational::new(&a.re + &kr, a.im.clone());
        }
        z
    }
}

impl HypergeometricSpec {
    pub fn new(numerator: Vec<GaussianRational>, denominator: Vec<GaussianRational>, argument: BigRational) -> Self {
        HypergeometricSpec { numerator, denominator, argument }
    }

    /// Real-parameter convenience constructor.
    pub fn real(numerator: &[BigRational], denominator: &[BigRational], argument: BigRational) -> Self {
        let lift = |v: &[BigRational]| v.iter().map(|r| GaussianRational::new(r.clone(), BigRational::zero())).collect();
        HypergeometricSpec::new(lift(numerator), lift(denominator), argument)
    }

    /// Last index with a nonzero term, if some numerator parameter is `-K`.
    pub fn termination_index(&self) -> Option<u64> {
        self.numerator.iter().filter_map(as_nonpositive_integer).min()
    }

    /// `Π(a_i + k) / Π(b_j + k) · z / (k + 1)`, the ratio of term `k+1` to term `k`.
    fn ratio_parts(&self) -> (Folded, Folded) {
        (Folded::new(&self.numerator), Folded::new(&self.denominator))
    }

    fn check_poles(&self, up_to: u64) -> Result<()> {
        for b in &self.denominator {
            if let Some(m) = as_nonpositive_integer(b) {
                if m < up_to {
                    return Err(Error::Pole(format!("denominator parameter {} vanishes in (b)_k for k = {}", b.re, m + 1)));
                }
            }
        }
        Ok(())
    }
}

fn term_ratio(num: &Folded, den: &Folded, z: &BigRational, k: u64) -> GaussianRational {
    let top = num.shifted_product(k);
    let bottom = den.shifted_product(k) * GaussianRational::new(BigRational::from_integer(BigInt::from(k + 1)), BigRational::zero());
    top / bottom * GaussianRational::new(z.clone(), BigRational::zero())
}

/// Exact value of a terminating series.
pub fn pfq_terminating(spec: &HypergeometricSpec) -> Result<GaussianRational> {
    let last = spec
        .termination_index()
        .ok_or_else(|| Error::NonTerminating("no numerator parameter is a non-positive integer".into()))?;
    spec.check_poles(last)?;
    let (num, den) = spec.ratio_parts();
    let one = GaussianRational::new(BigRational::one(), BigRational::zero());
    let mut term = one.clone();
    let mut sum = one;
    for k in 0..last {
        term = term * term_ratio(&num, &den, &spec.argument, k);
        sum = sum + term.clone();
    }
    Ok(sum)
}

fn gaussian_abs_f64(z: &GaussianRational) -> f64 {
    let re = z.re.to_f64().unwrap_or(f64::INFINITY);
    let im = z.im.to_f64().unwrap_or(f64::INFINITY);
    re.hypot(im)
}

/// Upper bound, valid for every `m ≥ k`, on the modulus of the term ratio.
/// `None` until `k` exceeds every denominator modulus.
fn ratio_majorant(spec: &HypergeometricSpec, k: u64) -> Option<f64> {
    let kf = k as f64;
    let a: Vec<f64> = spec.numerator.iter().map(gaussian_abs_f64).collect();
    let b: Vec<f64> = spec.denominator.iter().map(gaussian_abs_f64).collect();
    if b.iter().any(|&x| x >= kf) {
        return None;
    }
    // pair a_i with b_i, the next numerator with k + 1; each paired factor
    // is non-increasing in k, a leftover numerator factor is capped by 1 only
    // when it is below 1
    let mut bound = spec.argument.to_f64()?.abs();
    let mut extra_den: Vec<f64> = b.iter().map(|&x| kf - x).collect();
    extra_den.push(kf + 1.0);
    for (i, &ai) in a.iter().enumerate() {
        if i < extra_den.len() {
            let f = (kf + ai) / extra_den[i];
            bound *= if i == b.len() { f.max(1.0) } else { f };
        } else {
            // more numerators than denominators plus one: the ratio grows without bound
            return Some(f64::INFINITY);
        }
    }
    for d in extra_den.iter().skip(a.len()) {
        bound /= d;
    }
    Some(bound * (1.0 + 1e-12))
}

/// Error-bounded value with `digits` correct decimals.
///
/// Terms are summed at `digits + guard` fractional digits. Once `k` is past
/// every parameter modulus, the remaining terms are dominated by a geometric
/// series whose ratio bound is [`ratio_majorant`]; summation stops when that
/// tail fits inside a tenth of `10^-digits`.
pub fn pfq_numeric(spec: &HypergeometricSpec, digits: u32) -> Result<crate::series::Evaluation<HpComplex>> {
    if let Some(last) = spec.termination_index() {
        spec.check_poles(last)?;
    } else {
        spec.check_poles(u64::MAX)?;
    }
    let limit = 200 + 40 * digits as u64;
    let guard = guard_digits(limit as usize) + 5;
    let scale = digits + guard;
    let (num, den) = spec.ratio_parts();
    let mut term = HpComplex::from_int(1, scale);
    let mut sum = term.clone();
    let target_log10 = -(digits as f64) - 1.0;
    let stop = spec.termination_index();
    let mut k = 0u64;
    loop {
        if stop == Some(k) {
            break;
        }
        if let Some(u) = ratio_majorant(spec, k) {
            if u < 1.0 {
                let tail = term.abs_upper_f64() * u / (1.0 - u);
                if tail == 0.0 || tail.log10() < target_log10 {
                    sum = sum.widen(&upper_rational(tail));
                    break;
                }
            }
        }
        if k >= limit {
            return Err(Error::Divergent(format!(
                "term ratio bound not below 1 or tail still too large after {limit} terms"
            )));
        }
        let r = term_ratio(&num, &den, &spec.argument, k);
        let re = &term.re.mul_rational(&r.re) - &term.im.mul_rational(&r.im);
        let im = &term.re.mul_rational(&r.im) + &term.im.mul_rational(&r.re);
        term = HpComplex::new(re, im);
        sum = &sum + &term;
        k += 1;
    }
    if !sum.err_within_digits(digits as i64) {
        return Err(Error::PrecisionUnachievable(format!(
            "pFq bound 1e{:.1} misses 1e-{digits}",
            sum.err_log10()
        )));
    }
    Ok(crate::series::Evaluation { value: sum, terms: k + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn chu_vandermonde() {
        // 2F1(-n, b; c | 1) = (c-b)_n / (c)_n
        let spec = HypergeometricSpec::real(&[r(-4, 1), r(3, 2)], &[r(7, 3)], r(1, 1));
        let v = pfq_terminating(&spec).unwrap();
        let expected = crate::precision::pochhammer(&(r(7, 3) - r(3, 2)), 4) / crate::precision::pochhammer(&r(7, 3), 4);
        assert_eq!(v.re, expected);
        assert!(v.im.is_zero());
    }

    #[test]
    fn termination_and_poles() {
        let spec = HypergeometricSpec::real(&[r(1, 1)], &[r(2, 1)], r(1, 2));
        assert!(matches!(pfq_terminating(&spec), Err(Error::NonTerminating(_))));
        let spec = HypergeometricSpec::real(&[r(-5, 1)], &[r(-2, 1)], r(1, 1));
        assert!(matches!(pfq_terminating(&spec), Err(Error::Pole(_))));
        // the pole lies beyond the termination index, so it is harmless
        let spec = HypergeometricSpec::real(&[r(-1, 1)], &[r(-2, 1)], r(1, 1));
        assert_eq!(pfq_terminating(&spec).unwrap().re, r(3, 2));
    }

    #[test]
    fn numeric_geometric_series() {
        // 1F0(1; | z) = 1/(1-z)
        let spec = HypergeometricSpec::real(&[r(1, 1)], &[], r(-1, 3));
        let v = pfq_numeric(&spec, 40).unwrap().value;
        assert!(v.re.encloses(&r(3, 4)));
        assert!(v.err_within_digits(40));
    }

    #[test]
    fn numeric_exponential() {
        // 0F0(; | 1) = e
        let spec = HypergeometricSpec::real(&[], &[], r(1, 1));
        let v = pfq_numeric(&spec, 30).unwrap().value;
        assert_eq!(v.re.to_decimal_string(25), "2.718281828459045235360287");
    }

    #[test]
    fn numeric_and_exact_agree_when_terminating() {
        let i = GaussianRational::new(r(0, 1), r(1, 1));
        let spec = HypergeometricSpec::new(
            vec![GaussianRational::from_i64(-6), i.clone() + GaussianRational::from_i64(2), GaussianRational::from_rational(&r(1, 3))],
            vec![GaussianRational::from_rational(&r(5, 2)), GaussianRational::from_i64(4) - i],
            r(-3, 7),
        );
        let exact = pfq_terminating(&spec).unwrap();
        let num = pfq_numeric(&spec, 30).unwrap().value;
        assert!(num.encloses(&exact));
    }

    #[test]
    fn divergent_series_rejected() {
        let spec = HypergeometricSpec::real(&[r(1, 1), r(1, 1)], &[], r(1, 2));
        assert!(matches!(pfq_numeric(&spec, 10), Err(Error::Divergent(_))));
    }

    #[test]
    fn conjugate_folding_is_exact() {
        let a = GaussianRational::new(r(1, 2), r(3, 1));
        let f = Folded::new(&[a.clone(), a.conj(), GaussianRational::from_i64(2)]);
        assert_eq!(f.pairs.len(), 1);
        let k = 5;
        let direct = (a.clone() + GaussianRational::from_i64(k)) * (a.conj() + GaussianRational::from_i64(k)) * GaussianRational::from_i64(2 + k);
        assert_eq!(f.shifted_product(k as u64), direct);
    }
}
