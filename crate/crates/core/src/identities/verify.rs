use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::{chu_sum, finite_identity, fn_polynomials, identity_65, prop42_residual_check, prop43_sum, verify_cnk_sum};
use crate::error::Error;
use crate::precision::central_binomial;
use crate::scalar::Scalar;
use crate::Rational;

/// Residual evaluation at `4n + 2` points gets slow quickly; beyond this only
/// the polynomial recursion is checked.
const PROP42_RESIDUAL_MAX_N: u64 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityKind {
    /// `(5/2) Σ … = 1`
    Finite,
    /// `Σ … = C(2n, n)`
    Chu,
    /// `(5/4) Σ … = 1` with its telescoping certificate
    Prop43,
    /// `Σ_j c_j(n) = 1`
    CnkSum,
    /// both sides of the central-binomial reciprocal identity
    Id65,
    /// `f_n` stays an even polynomial of degree `2n`
    Prop42,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 6] = [
        IdentityKind::Finite,
        IdentityKind::Chu,
        IdentityKind::Prop43,
        IdentityKind::CnkSum,
        IdentityKind::Id65,
        IdentityKind::Prop42,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::Finite => "finite",
            IdentityKind::Chu => "chu",
            IdentityKind::Prop43 => "prop43",
            IdentityKind::CnkSum => "cnk-sum",
            IdentityKind::Id65 => "id65",
            IdentityKind::Prop42 => "prop42",
        }
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        IdentityKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub identity: IdentityKind,
    pub n: u64,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

fn expect_one(v: Rational) -> (bool, String) {
    let pass = v == Rational::from_i64(1);
    let detail = if pass { "= 1".to_string() } else { format!("= {v}, expected 1") };
    (pass, detail)
}

/// Exact check of one identity at one size.
pub fn verify_one(identity: IdentityKind, n: u64) -> CheckOutcome {
    let start = Instant::now();
    let (pass, detail) = if n == 0 {
        (false, "n must be at least 1".to_string())
    } else {
        match identity {
            IdentityKind::Finite => expect_one(finite_identity::<Rational>(n)),
            IdentityKind::CnkSum => expect_one(verify_cnk_sum::<Rational>(n)),
            IdentityKind::Chu => {
                let v = chu_sum::<Rational>(n);
                let c = central_binomial(n);
                if v == Rational::from_bigint(&c) {
                    (true, format!("= C({}, {n})", 2 * n))
                } else {
                    (false, format!("= {v}, expected {c}"))
                }
            }
            IdentityKind::Prop43 => {
                let r = prop43_sum::<Rational>(n);
                let mut broken = Vec::new();
                if !r.steps_hold {
                    broken.push("telescoping step");
                }
                if !r.endpoint_vanishes {
                    broken.push("endpoint");
                }
                if !r.partial_sums_hold {
                    broken.push("partial sums");
                }
                let (pass, mut detail) = expect_one(r.sum);
                if !broken.is_empty() {
                    detail = format!("{detail}; certificate fails at: {}", broken.join(", "));
                }
                (pass && broken.is_empty(), detail)
            }
            IdentityKind::Id65 => {
                let (lhs, rhs) = identity_65::<Rational>(n);
                if lhs == rhs {
                    (true, format!("both sides = {lhs}"))
                } else {
                    (false, format!("lhs = {lhs}, rhs = {rhs}"))
                }
            }
            IdentityKind::Prop42 => {
                let out = fn_polynomials(n);
                if let super::FnOutcome::Falsified { k, reason, .. } = &out {
                    (false, format!("recursion fails at k = {k}: {reason}"))
                } else if n <= PROP42_RESIDUAL_MAX_N {
                    let r = prop42_residual_check(n);
                    (r.pass, format!("f_{n} even of degree {}; residual at {} points {}", 2 * n, r.points, if r.pass { "matches" } else { "differs" }))
                } else {
                    (true, format!("f_{n} even of degree {}", 2 * n))
                }
            }
        }
    };
    CheckOutcome { identity, n, pass, detail, seconds: start.elapsed().as_secs_f64() }
}

/// `verify_one` for `n = 1..=n_max` in parallel; results are in order of `n`.
pub fn verify_range(identity: IdentityKind, n_max: u64) -> Vec<CheckOutcome> {
    (1..=n_max).into_par_iter().map(|n| verify_one(identity, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_identity_holds_for_small_n() {
        for kind in IdentityKind::ALL {
            let out = verify_range(kind, 10);
            assert_eq!(out.len(), 10);
            for (i, o) in out.iter().enumerate() {
                assert_eq!(o.n, i as u64 + 1);
                assert!(o.pass, "{kind} at n = {}: {}", o.n, o.detail);
            }
        }
    }

    #[test]
    fn names_roundtrip() {
        for kind in IdentityKind::ALL {
            assert_eq!(kind.name().parse::<IdentityKind>().unwrap(), kind);
        }
        assert!("apery".parse::<IdentityKind>().is_err());
        let json = serde_json::to_string(&IdentityKind::CnkSum).unwrap();
        assert_eq!(json, "\"cnk-sum\"");
    }

    #[test]
    fn zero_is_a_failure_not_a_panic() {
        assert!(!verify_one(IdentityKind::Finite, 0).pass);
    }
}
