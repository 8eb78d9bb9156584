//! Integral LLL reduction: all Gram–Schmidt data kept as exact integers
//! (`d_i` = Gram determinants, `λ_{ij} = d_j μ_{ij}`), so no rounding can
//! corrupt the reduction however large the entries are.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Reduced basis and the Gram determinants `d_0 = 1, d_1, …, d_n`;
/// `|b*_i|^2 = d_i / d_{i-1}`.
#[derive(Debug, Clone)]
pub struct Reduced {
    pub basis: Vec<Vec<BigInt>>,
    pub gram: Vec<BigInt>,
}

impl Reduced {
    /// `log10 min_i |b*_i|`, a lower bound for the norm of every nonzero lattice vector.
    pub fn shortest_log10_lower_bound(&self) -> f64 {
        (1..self.gram.len())
            .map(|i| 0.5 * (log10(&self.gram[i]) - log10(&self.gram[i - 1])))
            .fold(f64::INFINITY, f64::min)
    }
}

fn log10(x: &BigInt) -> f64 {
    crate::precision::log10_biguint(x.magnitude())
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Nearest integer to `a / b`, `b > 0`.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (a * &two + b).div_floor(&(b * two))
}

/// LLL with Lovász constant `delta_num / delta_den`. Rows of `basis` must be
/// linearly independent.
pub fn lll(mut b: Vec<Vec<BigInt>>, delta_num: u32, delta_den: u32) -> Reduced {
    let n = b.len();
    let p = BigInt::from(delta_num);
    let q = BigInt::from(delta_den);
    // 1-based Gram determinants; d[0] = 1
    let mut d = vec![BigInt::zero(); n + 1];
    d[0] = BigInt::from(1);
    let mut lam = vec![vec![BigInt::zero(); n]; n];
    if n == 0 {
        return Reduced { basis: b, gram: d };
    }
    d[1] = dot(&b[0], &b[0]);
    let mut k = 1usize; // 0-based index of the current row
    let mut kmax = 0usize;

    let red = |b: &mut Vec<Vec<BigInt>>, lam: &mut Vec<Vec<BigInt>>, d: &[BigInt], k: usize, l: usize| {
        let two_lam: BigInt = &lam[k][l] * 2;
        if two_lam.abs() > d[l + 1] {
            let r = round_div(&lam[k][l], &d[l + 1]);
            let bl = b[l].clone();
            for (x, y) in b[k].iter_mut().zip(&bl) {
                *x -= &r * y;
            }
            lam[k][l] -= &r * &d[l + 1];
            for i in 0..l {
                let t = &r * &lam[l][i];
                lam[k][i] -= t;
            }
        }
    };

    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "LLL input rows are linearly dependent");
                    d[k + 1] = u;
                }
            }
        }
        red(&mut b, &mut lam, &d, k, k - 1);
        let lhs = &q * &d[k + 1] * &d[k - 1];
        let rhs = &p * &d[k] * &d[k] - &q * &lam[k][k - 1] * &lam[k][k - 1];
        if lhs < rhs {
            // swap rows k-1 and k
            b.swap(k, k - 1);
            for j in 0..k.saturating_sub(1) {
                let t = lam[k][j].clone();
                lam[k][j] = lam[k - 1][j].clone();
                lam[k - 1][j] = t;
            }
            let l = lam[k][k - 1].clone();
            let bb = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
            for i in (k + 1)..=kmax {
                let t = lam[i][k].clone();
                lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &l * &t) / &d[k];
                lam[i][k - 1] = (&bb * &t + &l * &lam[i][k]) / &d[k + 1];
            }
            d[k] = bb;
            if k > 1 {
                k -= 1;
            }
        } else {
            for l in (0..k.saturating_sub(1)).rev() {
                red(&mut b, &mut lam, &d, k, l);
            }
            k += 1;
        }
    }
    Reduced { basis: b, gram: d }
}
