//! The summand `t_n(k) = (5/2) (-1)^(k+1) c_n(k) / (k^3 C(2k,k))` continued to
//! every integer `k`, and the Gosper certificate that collapses
//! `Σ_{k≥0} t_n(k)` onto the finite block `k = -n..-1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::identities::{cnk, finite_identity};
use crate::precision::central_binomial;
use crate::scalar::Scalar;
use crate::{Rational, RationalPolynomial};

/// Points `k ≥ n` at which the telescoping certificate is checked.
const CERTIFICATE_POINTS: i64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `k ≥ n`: the defining formula.
    Direct,
    /// `0 ≤ k < n`: `1/Γ(k+1-n)` vanishes.
    Vanishing,
    /// `k < 0`: the reflected closed form.
    Reflected,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReflectedTerm {
    pub n: u64,
    pub k: i64,
    pub regime: Regime,
    pub value: Rational,
}

fn n4(n: u64) -> Rational {
    Rational::from_i64(n as i64).powu(4)
}

/// `t_n(k)` for any integer `k`.
pub fn reflected_term(n: u64, k: i64) -> Result<ReflectedTerm> {
    if n == 0 {
        return Err(Error::OutOfRange("t_n(k) needs n >= 1".into()));
    }
    let (regime, value) = if k >= n as i64 {
        let ku = k as u64;
        let sign = if ku % 2 == 1 { 5 } else { -5 };
        let den = Rational::from_i64(2 * (k * k * k)) * Rational::from_bigint(&central_binomial(ku));
        (Regime::Direct, cnk::<Rational>(n, ku)? * Rational::from_i64(sign) / den)
    } else if k >= 0 {
        (Regime::Vanishing, Rational::zero())
    } else {
        // -(5/(2n)) C(2m,m) m^2/(4n^4+m^4) Π_{j<m} (n^4-j^4)/(4n^4+j^4), m = -k
        let m = (-k) as u64;
        let four_n4 = n4(n) * Rational::from_i64(4);
        let mut prod = Rational::one();
        for j in 1..m {
            let j4 = Rational::from_i64(j as i64).powu(4);
            prod = prod * (n4(n) - j4.clone()) / (four_n4.clone() + j4);
            if prod.is_zero() {
                break;
            }
        }
        let m2 = Rational::from_i64((m * m) as i64);
        let m4 = m2.clone() * m2.clone();
        let v = -Rational::ratio(5, 2 * n as i64) * Rational::from_bigint(&central_binomial(m)) * m2 / (four_n4 + m4) * prod;
        (Regime::Reflected, v)
    };
    Ok(ReflectedTerm { n, k, regime, value })
}

/// `t_n(k)` as a bare value.
pub fn tnk(n: u64, k: i64) -> Result<Rational> {
    reflected_term(n, k).map(|t| t.value)
}

/// `α_n(k) = -2k(2k+1)((k+1)^4 - n^4) / ((k+1)^2 (k^4 + 4n^4))`, which equals
/// `t_n(k)/t_n(k+1)` wherever both are nonzero.
pub fn alpha_ratio(n: u64, k: i64) -> Result<Rational> {
    if k == -1 {
        return Err(Error::Pole("alpha_n(k) has a pole at k = -1".into()));
    }
    let kr = Rational::from_i64(k);
    let k1 = Rational::from_i64(k + 1);
    let num = Rational::from_i64(-2 * k * (2 * k + 1)) * (k1.clone().powu(4) - n4(n));
    let den = k1.clone() * k1 * (kr.powu(4) + n4(n) * Rational::from_i64(4));
    Ok(num / den)
}

/// The Gosper data for one `n` and the checks run on it.
#[derive(Debug, Clone)]
pub struct GosperSystem {
    pub n: u64,
    pub p: RationalPolynomial,
    pub q: RationalPolynomial,
    pub r: RationalPolynomial,
    /// Solution of `p(k) = s(k+1) q(k) - r(k) s(k)` with `deg s ≤ 3n-3`.
    pub s: Option<RationalPolynomial>,
    /// `q` and `r` have no roots differing by an integer.
    pub shift_coprime: bool,
    pub equation_holds: bool,
    /// `T(k+1) - T(k) = t_n(k)` at `k = n..n+19`.
    pub certificate_holds: bool,
    /// `T_n(0)`, reached from `T_n(-n) = 0` through the reflected terms.
    pub t_at_zero: Option<Rational>,
    /// `T_n(0) = -1/n^3`.
    pub endpoint_holds: bool,
    /// `T_n(0) = -finite_identity(n) / n^3`, tying the certificate to the finite sum.
    pub matches_finite_identity: bool,
}

impl GosperSystem {
    pub fn passes(&self) -> bool {
        self.s.is_some()
            && self.shift_coprime
            && self.equation_holds
            && self.certificate_holds
            && self.endpoint_holds
            && self.matches_finite_identity
    }

    pub fn s_degree(&self) -> Option<usize> {
        self.s.as_ref().and_then(|s| s.degree())
    }

    /// `T_n(k) = r(k) s(k) t_n(k) / p(k)`; `None` where `p(k) = 0`.
    pub fn big_t(&self, k: i64) -> Result<Option<Rational>> {
        let s = match &self.s {
            Some(s) => s,
            None => return Ok(None),
        };
        let x = Rational::from_i64(k);
        let pk = self.p.eval(&x);
        if pk.is_zero() {
            return Ok(None);
        }
        Ok(Some(self.r.eval(&x) * s.eval(&x) * tnk(self.n, k)? / pk))
    }
}

fn linear(a: i64, b: i64) -> RationalPolynomial {
    RationalPolynomial::from_ints(&[b, a])
}

fn gosper_polynomials(n: u64) -> (RationalPolynomial, RationalPolynomial, RationalPolynomial) {
    let ni = n as i64;
    let mut factors = vec![RationalPolynomial::from_ints(&[0, 0, 1])];
    for j in 1..ni {
        factors.push(linear(1, -j));
        // (k+j)^2 + n^2
        factors.push(RationalPolynomial::from_ints(&[j * j + ni * ni, 2 * j, 1]));
    }
    let p = RationalPolynomial::product(&factors);
    let q = RationalPolynomial::from_ints(&[2 * ni * ni, -2 * ni, 1]);
    let r = &RationalPolynomial::constant(Rational::from_i64(-2)) * &(&linear(1, ni) * &linear(2, -1));
    (p, q, r)
}

/// No root of `q` differs from a root of `r` by an integer. `q` is a
/// quadratic; `r_roots` are the (rational) roots of `r`.
fn shift_coprime(q: &RationalPolynomial, r_roots: &[Rational]) -> bool {
    let (c, b, a) = (q.coeff(0), q.coeff(1), q.coeff(2));
    let disc = b.clone() * b.clone() - Rational::from_i64(4) * a.clone() * c;
    if disc.is_negative() {
        // non-real roots of q never sit at a real root plus an integer
        return true;
    }
    let root = |x: &BigInt| -> Option<BigInt> {
        let s = x.sqrt();
        (&s * &s == *x).then_some(s)
    };
    let (sn, sd) = match (root(disc.numer()), root(disc.denom())) {
        (Some(sn), Some(sd)) => (sn, sd),
        // irrational roots cannot differ from rationals by integers
        _ => return true,
    };
    let sq = Rational::new(sn, sd);
    let two_a = Rational::from_i64(2) * a;
    let q_roots = [(-b.clone() + sq.clone()) / two_a.clone(), (-b - sq) / two_a];
    !q_roots.iter().any(|x| r_roots.iter().any(|y| (x.clone() - y.clone()).is_integer()))
}

/// Fraction-free elimination of an integer system; returns a solution if the
/// system is consistent (free unknowns set to zero).
fn solve_integer_system(mut m: Vec<Vec<BigInt>>, unknowns: usize) -> Option<Vec<Rational>> {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..unknowns {
        let Some(pr) = (row..rows).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, pr);
        for i in (row + 1)..rows {
            for j in (col + 1)..=unknowns {
                let v = &m[row][col] * &m[i][j] - &m[i][col] * &m[row][j];
                let (quo, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                m[i][j] = quo;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    if m[row..].iter().any(|r| !r[unknowns].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); unknowns];
    for (t, &pc) in pivots.iter().enumerate().rev() {
        let mut acc = Rational::from_bigint(&m[t][unknowns]);
        for j in (pc + 1)..unknowns {
            acc = acc - Rational::from_bigint(&m[t][j]) * x[j].clone();
        }
        x[pc] = acc / Rational::from_bigint(&m[t][pc]);
    }
    Some(x)
}

fn to_integer(r: &Rational) -> BigInt {
    debug_assert!(r.is_integer());
    r.to_integer()
}

/// Sets up `p_n, q_n, r_n`, solves for `s_n` and runs every check.
pub fn gosper_solve(n: u64) -> Result<GosperSystem> {
    if n == 0 {
        return Err(Error::OutOfRange("gosper_solve needs n >= 1".into()));
    }
    let (p, q, r) = gosper_polynomials(n);
    let ni = n as i64;
    let shift_ok = shift_coprime(&q, &[Rational::from_i64(-ni), Rational::ratio(1, 2)]);

    // coefficients of k^i in (k+1)^m q(k) - r(k) k^m, for i = 0..=3n-1
    let unknowns = (3 * n - 2) as usize;
    let rows = (3 * n) as usize;
    let one = Rational::one();
    let mut columns = Vec::with_capacity(unknowns);
    let mut power = RationalPolynomial::constant(one.clone());
    for _ in 0..unknowns {
        let col = &(&power.shift(&one) * &q) - &(&r * &power);
        columns.push(col);
        power = &power * &RationalPolynomial::x();
    }
    let matrix: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let mut row: Vec<BigInt> = columns.iter().map(|c| to_integer(&c.coeff(i))).collect();
            row.push(to_integer(&p.coeff(i)));
            row
        })
        .collect();
    let s = solve_integer_system(matrix, unknowns).map(RationalPolynomial::new);

    let mut sys = GosperSystem {
        n,
        p,
        q,
        r,
        s,
        shift_coprime: shift_ok,
        equation_holds: false,
        certificate_holds: false,
        t_at_zero: None,
        endpoint_holds: false,
        matches_finite_identity: false,
    };
    let Some(s) = sys.s.clone() else { return Ok(sys) };

    let lhs = &(&s.shift(&one) * &sys.q) - &(&sys.r * &s);
    sys.equation_holds = (&lhs - &sys.p).is_zero() && s.degree().map_or(true, |d| d as u64 <= 3 * n - 3);

    let mut cert = true;
    for k in ni..ni + CERTIFICATE_POINTS {
        match (sys.big_t(k + 1)?, sys.big_t(k)?) {
            (Some(a), Some(b)) => cert &= a - b == tnk(n, k)?,
            _ => cert = false,
        }
    }
    sys.certificate_holds = cert;

    // T(-n) = 0 because r(-n) = 0; walk up to T(0) through t(-n..-1)
    let mut chain_ok = sys.big_t(-ni)? == Some(Rational::zero());
    let mut t_value = Rational::zero();
    for k in -ni..0 {
        t_value = t_value + tnk(n, k)?;
        if k + 1 < 0 {
            chain_ok &= sys.big_t(k + 1)? == Some(t_value.clone());
        }
    }
    let n3 = Rational::from_i64(ni * ni * ni);
    sys.endpoint_holds = chain_ok && t_value == -n3.clone().recip();
    sys.matches_finite_identity = t_value == -finite_identity::<Rational>(n) / n3;
    sys.t_at_zero = Some(t_value);
    Ok(sys)
}
