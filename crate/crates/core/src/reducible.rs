//! Reducible conics: two lines glued at a node constrained to a space `L_0`.
//!
//! Two routes to the same number. The product route takes the degrees of the
//! two varieties swept by the lines through each configuration. The tropical
//! route stretches the configuration (node space and first configuration
//! below the second one) and recurses on the position of the node: on both
//! elevators, on the lower floor with `L_0` horizontal, or on the lower floor
//! with some `L¹_{k1}` horizontal.
//!
//! Lists are in increasing height order. `k0` is the 1-based index of the
//! lowest element of the first list above `L_0`, or `γ1 + 1` when there is
//! none (`0` is accepted as an alias). The whole space (`l0 = 0`) is above
//! everything, so its placement is always `γ1 + 1`.

use serde::{Deserialize, Serialize};

use crate::counter::Counter;
use crate::query::{QueryError, Status};
use crate::scalar::Count;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducibleQuery {
    n: u32,
    node_codim: i64,
    list1: Vec<i64>,
    list2: Vec<i64>,
    placement: usize,
}

pub(crate) type ReducibleKey = (u32, i64, Vec<i64>, Vec<i64>, usize);

impl ReducibleQuery {
    /// `placement` is `k0`; `None` or `Some(0)` puts `L_0` above the whole
    /// first list.
    pub fn new(
        n: i64,
        node_codim: i64,
        list1: Vec<i64>,
        list2: Vec<i64>,
        placement: Option<usize>,
    ) -> Result<Self, QueryError> {
        if n < 2 {
            return Err(QueryError::DimensionTooSmall(n));
        }
        let n = u32::try_from(n).map_err(|_| QueryError::OutOfRange {
            what: "ambient dimension",
            detail: n.to_string(),
        })?;
        if node_codim < 0 {
            return Err(QueryError::OutOfRange {
                what: "node codimension",
                detail: format!("{node_codim} (must be >= 0)"),
            });
        }
        let top = list1.len() + 1;
        let placement = match placement {
            None | Some(0) => top,
            Some(k) if k <= top => k,
            Some(k) => {
                return Err(QueryError::OutOfRange {
                    what: "placement k0",
                    detail: format!("{k} (first list has {} entries)", list1.len()),
                })
            }
        };
        let placement = if node_codim == 0 { top } else { placement };
        Ok(ReducibleQuery {
            n,
            node_codim,
            list1,
            list2,
            placement,
        })
    }

    pub fn ambient_dim(&self) -> u32 {
        self.n
    }

    pub fn node_codim(&self) -> i64 {
        self.node_codim
    }

    pub fn list1(&self) -> &[i64] {
        &self.list1
    }

    pub fn list2(&self) -> &[i64] {
        &self.list2
    }

    /// Normalized `k0` in `1..=γ1+1`.
    pub fn placement(&self) -> usize {
        self.placement
    }

    /// Countable iff every codim is in range and the conditions add up to
    /// `3n − 2`.
    pub fn status(&self) -> Status {
        let n = i64::from(self.n);
        let in_range = self.node_codim <= n
            && self
                .list1
                .iter()
                .chain(&self.list2)
                .all(|&c| (1..=n).contains(&c));
        if in_range && balanced(self.n, self.node_codim, &self.list1, &self.list2) {
            Status::Countable
        } else {
            Status::ZeroByConvention
        }
    }
}

fn excess(list: &[i64]) -> i64 {
    list.iter().map(|c| c - 1).sum()
}

fn balanced(n: u32, node_codim: i64, list1: &[i64], list2: &[i64]) -> bool {
    node_codim + excess(list1) + excess(list2) == 3 * i64::from(n) - 2
}

/// `Σ_{j<k}(l_j − 1)` for 1-based `k`.
fn merged_below(list: &[i64], k: usize) -> i64 {
    excess(&list[..k - 1])
}

/// `[l_k − 1, l_{k+1}, …]` for 1-based `k`.
fn floor_projection(list: &[i64], k: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(list.len() - k + 1);
    out.push(list[k - 1] - 1);
    out.extend_from_slice(&list[k..]);
    out
}

impl<T: Count> Counter<T> {
    /// Product of the degrees of the two swept varieties.
    pub fn count_reducible_product(&self, q: &ReducibleQuery) -> T {
        self.reducible_product_raw(q.n, q.node_codim, &q.list1, &q.list2)
    }

    /// The same count by the tropical node-position recursion.
    pub fn count_reducible_tropical(&self, q: &ReducibleQuery) -> T {
        self.reducible_tropical_raw(q.n, q.node_codim, &q.list1, &q.list2, q.placement)
    }

    fn reducible_product_raw(&self, n: u32, node_codim: i64, list1: &[i64], list2: &[i64]) -> T {
        if node_codim < 0 || !balanced(n, node_codim, list1, list2) {
            return T::zero();
        }
        let swept_degree = |list: &[i64]| {
            let mut codims = vec![2 * i64::from(n) - 1 - excess(list)];
            codims.extend_from_slice(list);
            self.lines_raw(n, &codims)
        };
        let first = swept_degree(list1);
        if first.is_zero() {
            return first;
        }
        first * swept_degree(list2)
    }

    fn reducible_tropical_raw(
        &self,
        n: u32,
        node_codim: i64,
        list1: &[i64],
        list2: &[i64],
        placement: usize,
    ) -> T {
        let top = i64::from(n);
        if node_codim < 0
            || node_codim > top
            || list1.iter().chain(list2).any(|&c| c <= 0 || c > top)
            || !balanced(n, node_codim, list1, list2)
        {
            return T::zero();
        }
        // no line meets more than 2n − 2 conditions' worth of constraints
        if excess(list1) > 2 * top - 2 || excess(list2) > 2 * top - 2 {
            return T::zero();
        }
        if n == 2 {
            return self.reducible_product_raw(n, node_codim, list1, list2);
        }
        let k0 = if node_codim == 0 {
            list1.len() + 1
        } else {
            placement.clamp(1, list1.len() + 1)
        };
        let key: ReducibleKey = (n, node_codim, list1.to_vec(), list2.to_vec(), k0);
        self.reducible.get_or_compute(key, || {
            let m = n - 1;
            let recurse =
                |l0: i64, a: &[i64], b: &[i64]| self.reducible_tropical_raw(m, l0, a, b, 1);
            let mut total = T::zero();
            for k2 in 1..=list2.len() {
                let upper = floor_projection(list2, k2);
                let below2 = merged_below(list2, k2);
                // node on both elevators
                for k1 in k0..=list1.len() {
                    let l0 = node_codim - 1 + merged_below(list1, k1) + below2;
                    total = total + recurse(l0, &floor_projection(list1, k1), &upper);
                }
                // node on the lower floor, L_0 horizontal
                if k0 >= 2 {
                    let mut lower = vec![merged_below(list1, k0)];
                    lower.extend_from_slice(&list1[k0 - 1..]);
                    total = total + recurse(node_codim - 1 + below2, &lower, &upper);
                }
                // node on the lower floor, L¹_{k1} horizontal
                for k1 in 1..k0 {
                    let mut lower = vec![merged_below(list1, k1)];
                    lower.extend(floor_projection(list1, k1));
                    total = total + recurse(node_codim + below2, &lower, &upper);
                }
            }
            total
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn query(n: i64, l0: i64, a: &[i64], b: &[i64], k0: Option<usize>) -> ReducibleQuery {
        ReducibleQuery::new(n, l0, a.to_vec(), b.to_vec(), k0).unwrap()
    }

    #[test]
    fn product_examples() {
        let c = Counter::<u64>::new();
        assert_eq!(
            c.count_reducible_product(&query(3, 1, &[2, 2, 2], &[2, 2, 2], None)),
            4
        );
        assert_eq!(c.count_reducible_product(&query(2, 2, &[2], &[2], None)), 1);
        let unbalanced = query(3, 2, &[2, 2, 2], &[2, 2, 2], None);
        assert_eq!(unbalanced.status(), Status::ZeroByConvention);
        assert_eq!(c.count_reducible_product(&unbalanced), 0);
    }

    #[test]
    fn tropical_matches_product_for_every_placement() {
        let c = Counter::<u64>::new();
        for k0 in 0..=4 {
            let q = query(3, 1, &[2, 2, 2], &[2, 2, 2], Some(k0));
            assert_eq!(c.count_reducible_tropical(&q), 4, "k0={k0}");
        }
    }

    #[test]
    fn whole_space_node_is_placed_on_top() {
        let q = query(3, 0, &[3], &[2, 3, 3], Some(1));
        assert_eq!(q.placement(), 2);
        let c = Counter::<u64>::new();
        assert_eq!(
            c.count_reducible_tropical(&q),
            c.count_reducible_product(&q)
        );
    }

    #[test]
    fn malformed_queries() {
        assert!(ReducibleQuery::new(1, 1, vec![2], vec![2], None).is_err());
        assert!(ReducibleQuery::new(3, -1, vec![2], vec![2], None).is_err());
        assert!(ReducibleQuery::new(3, 1, vec![2], vec![2], Some(3)).is_err());
        assert!(ReducibleQuery::new(3, 1, vec![2], vec![2], Some(2)).is_ok());
    }
}
