use rayon::prelude::*;
use serde::Serialize;

use super::{auto_max_height, integer_relation, RelationSearch};
use crate::error::{Error, Result};
use crate::precision::{zeta_reference, HpReal};
use crate::scalar::Scalar;
use crate::series::{lambda_sum, LambdaSpec};
use crate::symfun::{partition_count, partitions_of};
use crate::Rational;

/// `ζ(s n + 3)` together with every `λ(s j + 3, P_α^(s))`, `α ⊢ n - j`.
///
/// Entries run by partition weight ascending, so `λ(s n + 3, P_0)` comes
/// first, and within one weight the partitions are in reverse-lex order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscoveryBasis {
    pub n: u32,
    pub s: u32,
    /// Argument of the zeta value the row expresses.
    pub target: u32,
    pub entries: Vec<LambdaSpec>,
}

impl DiscoveryBasis {
    pub fn new(n: u32, s: u32) -> Result<Self> {
        if s != 2 && s != 4 {
            return Err(Error::OutOfRange(format!("power-sum exponent must be 2 or 4, got {s}")));
        }
        let entries = (0..=n)
            .flat_map(|w| partitions_of(w).into_iter().map(move |a| LambdaSpec::new(s * (n - w) + 3, a, s)))
            .collect::<Vec<_>>();
        debug_assert_eq!(entries.len() as u64, (0..=n).map(partition_count).sum::<u64>());
        Ok(DiscoveryBasis { n, s, target: s * n + 3, entries })
    }

    /// Labels of the zeta value followed by the entries.
    pub fn labels(&self) -> Vec<String> {
        std::iter::once(format!("zeta({})", self.target)).chain(self.entries.iter().map(|e| e.to_string())).collect()
    }

    /// Digits the basis size calls for: `60 + 20` per entry.
    pub fn recommended_digits(&self) -> u32 {
        60 + 20 * self.entries.len() as u32
    }

    /// The zeta value (independent oracle) and every entry, evaluated in parallel.
    pub fn evaluate(&self, digits: u32) -> Result<Vec<HpReal>> {
        let zeta = zeta_reference(self.target, digits)?;
        let lambdas: Result<Vec<HpReal>> =
            self.entries.par_iter().map(|e| lambda_sum(e, digits).map(|ev| ev.value)).collect();
        Ok(std::iter::once(zeta).chain(lambdas?).collect())
    }
}

#[derive(Debug, Clone)]
pub struct RowSearch {
    pub basis: DiscoveryBasis,
    pub digits: u32,
    pub max_height: u64,
    pub search: RelationSearch,
    /// `c_α` in `(2/5) ζ(target) = Σ c_α λ_α`, when the relation involves the zeta value.
    pub table: Option<Vec<(LambdaSpec, Rational)>>,
}

/// Searches the basis for `ζ(s n + 3)` at `digits`, with the largest height the
/// precision rule allows unless `max_height` is given.
pub fn rediscover_row(n: u32, s: u32, digits: u32, max_height: Option<u64>) -> Result<RowSearch> {
    let basis = DiscoveryBasis::new(n, s)?;
    let values = basis.evaluate(digits)?;
    let max_height = max_height.unwrap_or_else(|| auto_max_height(values.len(), digits));
    let search = match integer_relation(&values, digits, max_height)? {
        RelationSearch::Found(rel) => RelationSearch::Found(rel.with_labels(basis.labels())),
        other => other,
    };
    let table = search.relation().and_then(|rel| {
        let c0 = Rational::from_bigint(&rel.coefficients[0]);
        if c0 == Rational::from_i64(0) {
            return None;
        }
        let scale = Rational::ratio(-2, 5) / c0;
        Some(
            basis
                .entries
                .iter()
                .zip(&rel.coefficients[1..])
                .map(|(e, c)| (e.clone(), Rational::from_bigint(c) * scale.clone()))
                .collect(),
        )
    });
    Ok(RowSearch { basis, digits, max_height, search, table })
}

/// `[ζ(s), Σ (-1)^(k+1) / (k^s C(2k,k))]`.
pub fn single_term_search(s: u32, digits: u32, max_height: u64) -> Result<RelationSearch> {
    let spec = LambdaSpec::plain(s, 4);
    let values = vec![zeta_reference(s, digits)?, lambda_sum(&spec, digits)?.value];
    Ok(match integer_relation(&values, digits, max_height)? {
        RelationSearch::Found(rel) => RelationSearch::Found(rel.with_labels(vec![format!("zeta({s})"), spec.to_string()])),
        other => other,
    })
}

/// Looks for `a ζ(5) = b Σ (-1)^(k+1) / (k^5 C(2k,k))`; expected to find nothing.
pub fn negative_search_zeta5(digits: u32, max_height: u64) -> Result<RelationSearch> {
    if digits < 50 {
        return Err(Error::InsufficientPrecision(format!("the zeta(5) search needs d >= 50, got {digits}")));
    }
    single_term_search(5, digits, max_height)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn basis_shape() {
        let b = DiscoveryBasis::new(2, 4).unwrap();
        let labels: Vec<String> = b.entries.iter().map(|e| e.to_string()).collect();
        assert_eq!(labels, ["lambda(11,P0;s=4)", "lambda(7,P1;s=4)", "lambda(3,P2;s=4)", "lambda(3,P1^2;s=4)"]);
        assert_eq!(DiscoveryBasis::new(4, 4).unwrap().entries.len(), 1 + 1 + 2 + 3 + 5);
        assert!(DiscoveryBasis::new(1, 3).is_err());
    }

    #[test]
    fn first_row() {
        let row = rediscover_row(0, 4, 60, None).unwrap();
        let table = row.table.unwrap();
        assert_eq!(table[0].1, Rational::from_i64(1));
    }

    #[test]
    fn apery_control_and_zeta5_negative() {
        let r = single_term_search(3, 80, 1_000_000_000).unwrap();
        assert_eq!(r.relation().unwrap().coefficients, vec![BigInt::from(2), BigInt::from(-5)]);
        match negative_search_zeta5(80, 1_000_000_000).unwrap() {
            RelationSearch::NotFound(e) => assert!(e.covers_request()),
            RelationSearch::Found(r) => panic!("unexpected {:?}", r.coefficients),
        }
    }
}
