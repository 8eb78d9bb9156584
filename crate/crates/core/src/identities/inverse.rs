//! A pair of mutually inverse triangular transforms. With
//! `φ(x;k) = Π_{j<k} (a_j + x b_j)`, `ψ(x;k) = Π_{j<k} (c_j + x d_j)` and
//! `ψ_m` the same product without `j = m`:
//!
//! ```text
//! f(n) = Σ_{k=r}^n (a_n d_n + b_n c_n)/d_k · φ(c_k/d_k; n) / ψ_k(-c_k/d_k; n+1) · g(k)
//! g(n) = Σ_{k=r}^n ψ(-c_n/d_n; k) / φ(c_n/d_n; k+1) · f(k)
//! ```

use crate::error::{Error, Result};
use crate::scalar::Scalar;

type Seq<T> = Box<dyn Fn(u64) -> T + Send + Sync>;

pub struct InversePairParams<T> {
    pub a: Seq<T>,
    pub b: Seq<T>,
    pub c: Seq<T>,
    pub d: Seq<T>,
    /// First index of both sums.
    pub r: u64,
}

impl<T: Scalar + 'static> InversePairParams<T> {
    pub fn new(a: Seq<T>, b: Seq<T>, c: Seq<T>, d: Seq<T>, r: u64) -> Self {
        InversePairParams { a, b, c, d, r }
    }

    /// `a_j = j^4, b_j = 4, c_j = j^4, d_j = 1, r = 1`, which maps
    /// `g(n) = 1/n^2` to `f(n) = 10 n^2 C(2n,n) (-1)^n`.
    pub fn central_binomial_pair() -> Self {
        let quartic = |j: u64| T::from_i64(j as i64).powu(4);
        InversePairParams {
            a: Box::new(quartic),
            b: Box::new(|_| T::from_i64(4)),
            c: Box::new(quartic),
            d: Box::new(|_| T::one()),
            r: 1,
        }
    }

    fn ratio_at(&self, k: u64) -> Result<T> {
        let d = (self.d)(k);
        if d.is_zero() {
            return Err(Error::ZeroDenominator { index: k as i64, what: "d_k".into() });
        }
        Ok((self.c)(k) / d)
    }

    fn phi(&self, x: &T, len: u64) -> T {
        (0..len).fold(T::one(), |acc, j| acc * ((self.a)(j) + x.clone() * (self.b)(j)))
    }

    fn psi(&self, x: &T, len: u64, skip: Option<u64>) -> T {
        (0..len)
            .filter(|&j| Some(j) != skip)
            .fold(T::one(), |acc, j| acc * ((self.c)(j) + x.clone() * (self.d)(j)))
    }

    /// `f(n)` from `g`.
    pub fn apply(&self, g: &dyn Fn(u64) -> T, n: u64) -> Result<T> {
        let lead = (self.a)(n) * (self.d)(n) + (self.b)(n) * (self.c)(n);
        let mut sum = T::zero();
        for k in self.r..=n {
            let x = self.ratio_at(k)?;
            let den = (self.d)(k) * self.psi(&-x.clone(), n + 1, Some(k));
            if den.is_zero() {
                return Err(Error::ZeroDenominator { index: k as i64, what: "d_k psi_k(-c_k/d_k; n+1)".into() });
            }
            sum = sum + self.phi(&x, n) / den * g(k);
        }
        Ok(lead * sum)
    }

    /// `g(n)` from `f`.
    pub fn invert(&self, f: &dyn Fn(u64) -> T, n: u64) -> Result<T> {
        let x = self.ratio_at(n)?;
        let mut sum = T::zero();
        for k in self.r..=n {
            let den = self.phi(&x, k + 1);
            if den.is_zero() {
                return Err(Error::ZeroDenominator { index: k as i64, what: "phi(c_n/d_n; k+1)".into() });
            }
            sum = sum + self.psi(&-x.clone(), k, None) / den * f(k);
        }
        Ok(sum)
    }
}
