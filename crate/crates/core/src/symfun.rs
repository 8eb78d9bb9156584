//! Partitions and symmetric functions of the alphabet `{1/1^s, …, 1/(k-1)^s}`.
//!
//! `P_r` (power sums), `e_r` (elementary) and `h_r` (complete homogeneous)
//! are computed by truncated polynomial convolution in an auxiliary
//! variable `t`, never by enumerating monomials.

use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A weakly decreasing tuple of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Sorts the parts into descending order; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::OutOfRange("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Label such as `P1^2P2` for use in basis names; `P0` when empty.
    pub fn power_sum_label(&self) -> String {
        if self.0.is_empty() {
            return "P0".into();
        }
        let mut out = String::new();
        let mut i = self.0.len();
        // ascending part order reads like the usual P_1 P_2 notation
        while i > 0 {
            let part = self.0[i - 1];
            let mut mult = 0;
            while i > 0 && self.0[i - 1] == part {
                mult += 1;
                i -= 1;
            }
            out.push_str(&format!("P{part}"));
            if mult > 1 {
                out.push_str(&format!("^{mult}"));
            }
        }
        out
    }
}

/// Renders as `4=3+1`; the empty partition is `0=`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}={}", self.weight(), parts.join("+"))
    }
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn fill(rem: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            prefix.push(part);
            fill(rem - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(n, n, &mut Vec::new(), &mut out);
    out
}

/// `p(n)`, via Euler's pentagonal recurrence.
pub fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut total: i128 = 0;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            total += sign * p[m - g1] as i128;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                total += sign * p[m - g2] as i128;
            }
        }
        p[m] = total as u64;
    }
    p[n]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymKind {
    Power,
    Elementary,
    Complete,
}

/// A symmetric-function value together with its defining indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SymValue<T> {
    pub kind: SymKind,
    pub r: u32,
    pub s: u32,
    pub k: u32,
    pub value: T,
}

impl<T: Scalar> SymValue<T> {
    pub fn compute(kind: SymKind, r: u32, s: u32, k: u32) -> Self {
        let value = match kind {
            SymKind::Power => power_sum(r, s, k),
            SymKind::Elementary => elementary(r, s, k),
            SymKind::Complete => complete(r, s, k),
        };
        SymValue { kind, r, s, k, value }
    }
}

fn letter<T: Scalar>(j: u32, s: u32) -> T {
    T::from_i64(j as i64).powu(s).recip()
}

/// `P_r^{(s)}(k) = Σ_{j=1}^{k-1} j^{-rs}`, with `P_0 = 1`.
pub fn power_sum<T: Scalar>(r: u32, s: u32, k: u32) -> T {
    if r == 0 {
        return T::one();
    }
    (1..k).fold(T::zero(), |acc, j| acc + letter::<T>(j, r * s))
}

/// `e_r^{(s)}(k)`: coefficient of `t^r` in `Π_{j<k} (1 + t/j^s)`.
pub fn elementary<T: Scalar>(r: u32, s: u32, k: u32) -> T {
    let mut acc = SymmetricAccumulator::new(r as usize, T::zero(), T::one());
    for j in 1..k {
        acc.push(&letter::<T>(j, s));
    }
    acc.elementary(r as usize).clone()
}

/// `h_r^{(s)}(k)`: coefficient of `t^r` in `Π_{j<k} (1 - t/j^s)^{-1}`.
pub fn complete<T: Scalar>(r: u32, s: u32, k: u32) -> T {
    let mut acc = SymmetricAccumulator::new(r as usize, T::zero(), T::one());
    for j in 1..k {
        acc.push(&letter::<T>(j, s));
    }
    acc.complete(r as usize).clone()
}

/// `P_α^{(s)}(k) = Π_i P_{α_i}^{(s)}(k)`.
pub fn partition_product<T: Scalar>(alpha: &Partition, s: u32, k: u32) -> T {
    alpha.parts().iter().fold(T::one(), |acc, &r| acc * power_sum::<T>(r, s, k))
}

/// `E_k(x) = Π_{j=1}^{k-1} (j^4 + 4x) / (j^4 - x)`.
pub fn ek_eval<T: Scalar>(k: u32, x: &T) -> Result<T> {
    let mut acc = T::one();
    for j in 1..k {
        let j4 = T::from_i64(j as i64).powu(4);
        let den = j4.clone() - x.clone();
        if den.is_zero() {
            return Err(Error::Pole(format!("E_{k}(x) has a pole at x = {j}^4")));
        }
        acc = acc * (j4 + T::from_i64(4) * x.clone()) / den;
    }
    Ok(acc)
}

/// Running `e_0..e_R`, `h_0..h_R` and `P_1..P_R` of a growing alphabet.
///
/// Only `Add`/`Mul` are required of `T`, so error-bounded reals can be fed
/// through the same code as exact rationals.
#[derive(Debug, Clone)]
pub struct SymmetricAccumulator<T> {
    e: Vec<T>,
    h: Vec<T>,
    p: Vec<T>,
}

impl<T> SymmetricAccumulator<T>
where
    T: Clone + Add<Output = T> + Mul<Output = T>,
{
    pub fn new(max_degree: usize, zero: T, one: T) -> Self {
        let mut e = vec![zero.clone(); max_degree + 1];
        let mut h = vec![zero.clone(); max_degree + 1];
        e[0] = one.clone();
        h[0] = one;
        SymmetricAccumulator { e, h, p: vec![zero; max_degree + 1] }
    }

    /// Appends one letter `x` to the alphabet.
    pub fn push(&mut self, x: &T) {
        let n = self.e.len();
        for i in (1..n).rev() {
            self.e[i] = self.e[i].clone() + x.clone() * self.e[i - 1].clone();
        }
        for i in 1..n {
            self.h[i] = self.h[i].clone() + x.clone() * self.h[i - 1].clone();
        }
        let mut xp = x.clone();
        for i in 1..n {
            self.p[i] = self.p[i].clone() + xp.clone();
            if i + 1 < n {
                xp = xp * x.clone();
            }
        }
    }

    pub fn max_degree(&self) -> usize {
        self.e.len() - 1
    }

    pub fn elementary(&self, r: usize) -> &T {
        &self.e[r]
    }

    pub fn complete(&self, r: usize) -> &T {
        &self.h[r]
    }

    /// `P_r` for `r >= 1`; `P_0` is the caller's `one`.
    pub fn power(&self, r: usize) -> &T {
        &self.p[r]
    }
}
