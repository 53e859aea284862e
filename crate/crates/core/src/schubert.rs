//! Line counts by Schubert calculus on the Grassmannian of lines in
//! projective `n`-space.
//!
//! Classes are indexed by two-row partitions `(p, q)` with
//! `n − 1 ≥ p ≥ q ≥ 0`. Meeting a codim-`l` space is the special class
//! `σ_{l−1}`, and multiplication by a special class follows Pieri's rule.
//! The number of lines meeting all constraints is the coefficient of the
//! point class `σ_{(n−1, n−1)}` in the product.
//!
//! This is an oracle for [`Counter::count_lines`](crate::Counter::count_lines):
//! it shares nothing with the floor recursion beyond the integer type and
//! input validation.

use std::collections::BTreeMap;

use crate::query::{validate_query, QueryError};
use crate::scalar::Count;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchubertClass<T> {
    n: u32,
    terms: BTreeMap<(u32, u32), T>,
}

impl<T: Count> SchubertClass<T> {
    /// The fundamental class `σ_{(0,0)}`.
    pub fn identity(n: u32) -> Self {
        Self::single(n, (0, 0))
    }

    /// `σ_{(p,q)}` with coefficient 1.
    pub fn single(n: u32, partition: (u32, u32)) -> Self {
        let (p, q) = partition;
        assert!(
            n >= 1 && p < n && q <= p,
            "partition ({p},{q}) does not fit the {}x2 box",
            n - 1
        );
        SchubertClass {
            n,
            terms: BTreeMap::from([(partition, T::one())]),
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), T> {
        &self.terms
    }

    pub fn coefficient(&self, partition: (u32, u32)) -> T {
        self.terms.get(&partition).cloned().unwrap_or_else(T::zero)
    }

    /// Product with the special class `σ_a`: each `(p, q)` becomes the sum
    /// of `(p', q')` with `p' + q' = p + q + a`, `p' ≥ p ≥ q' ≥ q` and
    /// `p' ≤ n − 1`.
    pub fn pieri_multiply(&self, a: u32) -> Result<Self, QueryError> {
        let width = self.n - 1;
        if a > width {
            return Err(QueryError::OutOfRange {
                what: "special class",
                detail: format!("sigma_{a} with n = {}", self.n),
            });
        }
        let mut terms: BTreeMap<(u32, u32), T> = BTreeMap::new();
        for (&(p, q), coeff) in &self.terms {
            let total = p + q + a;
            for q2 in q..=p {
                let p2 = total - q2;
                if p2 < p || p2 > width {
                    continue;
                }
                let slot = terms.entry((p2, q2)).or_insert_with(T::zero);
                *slot = std::mem::take(slot) + coeff.clone();
            }
        }
        Ok(SchubertClass { n: self.n, terms })
    }
}

/// Number of lines meeting generic spaces of the given codims, as the
/// point-class coefficient of the Pieri product.
pub fn oracle_line_count<T: Count>(n: i64, codims: &[i64]) -> Result<T, QueryError> {
    let q = validate_query(1, n, codims)?;
    if !q.rejected().is_empty() {
        return Ok(T::zero());
    }
    let n = q.ambient_dim();
    let mut class = SchubertClass::<T>::identity(n);
    for &c in q.codims() {
        class = class.pieri_multiply(c - 1)?;
    }
    Ok(class.coefficient((n - 1, n - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(n: u32, terms: &[((u32, u32), u64)]) -> SchubertClass<u64> {
        SchubertClass {
            n,
            terms: terms.iter().copied().collect(),
        }
    }

    #[test]
    fn pieri_examples() {
        let s10 = SchubertClass::<u64>::single(3, (1, 0));
        assert_eq!(
            s10.pieri_multiply(1).unwrap(),
            class(3, &[((2, 0), 1), ((1, 1), 1)])
        );

        let s21 = SchubertClass::<u64>::single(3, (2, 1));
        assert_eq!(s21.pieri_multiply(1).unwrap(), class(3, &[((2, 2), 1)]));

        let s10 = SchubertClass::<u64>::single(4, (1, 0));
        assert_eq!(
            s10.pieri_multiply(2).unwrap(),
            class(4, &[((3, 0), 1), ((2, 1), 1)])
        );
    }

    #[test]
    fn pieri_rejects_wide_special_class() {
        assert!(SchubertClass::<u64>::identity(3).pieri_multiply(3).is_err());
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_line_count::<u64>(3, &[2, 2, 2, 2]).unwrap(), 2);
        assert_eq!(oracle_line_count::<u64>(3, &[3, 2, 2]).unwrap(), 1);
        assert_eq!(oracle_line_count::<u64>(4, &[2, 2, 2, 2, 2, 2]).unwrap(), 5);
        assert_eq!(oracle_line_count::<u64>(3, &[4, 2]).unwrap(), 0);
        assert_eq!(oracle_line_count::<u64>(3, &[2, 2, 2]).unwrap(), 0);
    }

    #[test]
    fn degree_bookkeeping() {
        let mut c = SchubertClass::<u64>::identity(5);
        let mut degree = 0;
        for a in [1, 2, 1, 3, 1] {
            c = c.pieri_multiply(a).unwrap();
            degree += a;
            assert!(c.terms().keys().all(|&(p, q)| p + q == degree));
        }
    }
}
