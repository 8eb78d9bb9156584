//! Exact checks of the finite identities behind the generating function.
//!
//! Every sum is written once over [`Scalar`]; use `Rational` for proofs at
//! a given size and `f64` for quick approximate looks.

mod fpoly;
mod inverse;
mod quadrature;
mod verify;

pub use fpoly::{fn_polynomials, prop42_residual_check, sigma_k, FnOutcome, Prop42Check};
pub use inverse::InversePairParams;
pub use quadrature::{integral_corollary4, Quadrature};
pub use verify::{verify_one, verify_range, CheckOutcome, IdentityKind};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::precision::CentralBinomials;
use crate::scalar::Scalar;

fn fourth<T: Scalar>(j: u64) -> T {
    T::from_i64(j as i64).powu(4)
}

/// Partial-fraction coefficient
/// `c_n(k) = Π_{j<k} (1 + 4n^4/j^4) / Π_{j≤k, j≠n} (1 - n^4/j^4)`.
pub fn cnk<T: Scalar>(n: u64, k: u64) -> Result<T> {
    if n == 0 || n > k {
        return Err(Error::OutOfRange(format!("c_n(k) needs 1 <= n <= k, got n={n}, k={k}")));
    }
    // exact integer products, one reduction at the end
    let n4 = BigInt::from(n).pow(4u32);
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for j in 1..=k {
        let j4 = BigInt::from(j).pow(4u32);
        if j < k {
            num *= &j4 + 4 * &n4;
            den *= &j4;
        }
        if j != n {
            num *= &j4;
            den *= &j4 - &n4;
        }
    }
    Ok(T::from_bigint(&num) / T::from_bigint(&den))
}

/// `Σ_{j=1}^k c_j(k)`; the identity says this is 1.
pub fn verify_cnk_sum<T: Scalar>(k: u64) -> T {
    (1..=k).fold(T::zero(), |acc, j| acc + cnk::<T>(j, k).expect("1 <= j <= k"))
}

/// `(5/2) Σ_{k=1}^n C(2k,k) n^2 k^2 / (4n^4 + k^4) Π_{j<k} (n^4 - j^4)/(4n^4 + j^4)`;
/// conjecturally 1 for every `n ≥ 1`.
pub fn finite_identity<T: Scalar>(n: u64) -> T {
    // Σ N_k / D_k over the common denominator D_k = Π_{j≤k} (4n^4 + j^4),
    // kept in integers: S_k = S_{k-1} (4n^4 + k^4) + P_{k-1} C(2k,k) k^2
    let n4 = BigInt::from(n).pow(4u32);
    let four_n4 = 4 * &n4;
    let (mut s, mut p, mut d) = (BigInt::from(0), BigInt::one(), BigInt::one());
    for (k, c) in (1..=n).zip(CentralBinomials::new().skip(1)) {
        let k4 = BigInt::from(k).pow(4u32);
        let q = &four_n4 + &k4;
        s = s * &q + &p * c * BigInt::from(k).pow(2u32);
        p *= &n4 - &k4;
        d *= q;
    }
    T::from_bigint(&(s * BigInt::from(n).pow(2u32) * 5)) / T::from_bigint(&(d * 2))
}

/// `Σ_{k=1}^n (2n^2/k^2) Π_{j<n} (j^4 + 4k^4) / Π_{j≤n, j≠k} (k^4 - j^4)`;
/// conjecturally `C(2n, n)`.
pub fn chu_sum<T: Scalar>(n: u64) -> T {
    let n2 = BigInt::from(n).pow(2u32);
    let mut sum = T::zero();
    for k in 1..=n {
        let k4 = BigInt::from(k).pow(4u32);
        let mut num = 2 * &n2;
        let mut den = BigInt::from(k).pow(2u32);
        for j in 1..=n {
            let j4 = BigInt::from(j).pow(4u32);
            if j < n {
                num *= &j4 + 4 * &k4;
            }
            if j != k {
                den *= &k4 - &j4;
            }
        }
        sum = sum + T::from_bigint(&num) / T::from_bigint(&den);
    }
    sum
}

/// Result of the telescoping check for the `4^k` identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Prop43Report<T> {
    pub sum: T,
    /// `a_{k-1} - b_k = 5k^4/4` as polynomials in `n`, for every `k ≤ n`.
    pub steps_hold: bool,
    /// `b_n = 0`.
    pub endpoint_vanishes: bool,
    /// Every partial sum of the telescoped series equals
    /// `a_0 - b_m Π_{j<m} b_j/a_j`.
    pub partial_sums_hold: bool,
}

impl<T: Scalar> Prop43Report<T> {
    pub fn passes(&self) -> bool {
        self.sum == T::one() && self.steps_hold && self.endpoint_vanishes && self.partial_sums_hold
    }
}

/// `(5/4) Σ_{k=1}^n k^4 4^k / (4n^4 + k^4) Π_{j<k} (n^4 - j^4)/(4n^4 + j^4)`
/// together with its telescoping certificate, with `a_k = (4n^4 + (k+1)^4)/4`
/// and `b_k = n^4 - k^4`.
pub fn prop43_sum<T: Scalar>(n: u64) -> Prop43Report<T> {
    let n4: T = fourth(n);
    let four_n4 = T::from_i64(4) * n4.clone();
    // same common-denominator recurrence as the finite identity
    let (n4_int, four) = (BigInt::from(n).pow(4u32), BigInt::from(4));
    let (mut s_int, mut p, mut d, mut power4) = (BigInt::from(0), BigInt::one(), BigInt::one(), BigInt::one());
    for k in 1..=n {
        let k4 = BigInt::from(k).pow(4u32);
        let q = 4 * &n4_int + &k4;
        power4 *= &four;
        s_int = s_int * &q + &p * &k4 * &power4;
        p *= &n4_int - &k4;
        d *= q;
    }
    let sum = T::from_bigint(&(s_int * 5)) / T::from_bigint(&(d * 4));

    // symbolic step check: polynomials in the variable n
    let n_var = Polynomial::<T>::x();
    let n4_poly = &(&n_var * &n_var) * &(&n_var * &n_var);
    let quarter = T::ratio(1, 4);
    let a_poly = |k: u64| -> Polynomial<T> {
        let shift = Polynomial::constant(fourth::<T>(k + 1));
        (&n4_poly.scale(&T::from_i64(4)) + &shift).scale(&quarter)
    };
    let b_poly = |k: u64| -> Polynomial<T> { &n4_poly - &Polynomial::constant(fourth::<T>(k)) };
    let steps_hold = (1..=n).all(|k| {
        &a_poly(k - 1) - &b_poly(k) == Polynomial::constant(fourth::<T>(k) * T::ratio(5, 4))
    });

    // numeric telescoping at this n
    let a = |k: u64| (four_n4.clone() + fourth::<T>(k + 1)) * quarter.clone();
    let b = |k: u64| n4.clone() - fourth::<T>(k);
    let endpoint_vanishes = b(n).is_zero();
    let mut partial = T::zero();
    let mut prod = T::one();
    let mut partial_sums_hold = true;
    for m in 1..=n {
        partial = partial + (a(m - 1) - b(m)) * prod.clone();
        let closed = a(0) - b(m) * prod.clone();
        partial_sums_hold &= partial == closed;
        prod = prod * b(m) / a(m);
    }
    Prop43Report { sum, steps_hold, endpoint_vanishes, partial_sums_hold }
}

/// Both sides of the identity obtained by terminating the generating
/// function at `z^4 = -n^4/4`:
/// `(5/2) Σ_{k≤n} 4^k/C(2k,k) · k/(n^4 + 4k^4) Π_{j<k} (n^4 - j^4)/(n^4 + 4j^4)`
/// and `(1/2n) Σ_{k≤n} 1/((k - n/2)^2 + n^2/4)`.
pub fn identity_65<T: Scalar>(n: u64) -> (T, T) {
    let n4: T = fourth(n);
    let four = T::from_i64(4);
    let mut running = T::one();
    let mut power4 = T::one();
    let mut lhs = T::zero();
    for (k, c) in (1..=n).zip(CentralBinomials::new().skip(1)) {
        let k4: T = fourth(k);
        let den = n4.clone() + four.clone() * k4.clone();
        power4 = power4 * four.clone();
        lhs = lhs + running.clone() * power4.clone() * T::from_i64(k as i64) / (T::from_bigint(&c) * den.clone());
        running = running * (n4.clone() - k4) / den;
    }
    let lhs = lhs * T::ratio(5, 2);
    let nn = T::from_i64(n as i64);
    let half_n = nn.clone() / T::from_i64(2);
    let quarter_n2 = half_n.clone() * half_n.clone();
    let rhs = (1..=n).fold(T::zero(), |acc, k| {
        let d = T::from_i64(k as i64) - half_n.clone();
        acc + (d.clone() * d + quarter_n2.clone()).recip()
    }) / (T::from_i64(2) * nn);
    (lhs, rhs)
}
