//! Lines through linear spaces by the floor recursion.
//!
//! With the constraints ordered by height, the unique floor of a tropical
//! line meets exactly one constraint `L_k` horizontally. Projecting along the
//! vertical direction merges `L_1, …, L_{k−1}` (all met by the elevator) into
//! one space of codim `Σ_{i<k}(l_i − 1)`, drops the codim of `L_k` by one and
//! keeps the walls of the higher constraints:
//!
//! ```text
//! N_{1,n}(l_1,…,l_γ) = Σ_{k=2..γ} N_{1,n−1}(Σ_{i<k}(l_i−1), l_k−1, l_{k+1},…,l_γ)
//! ```
//!
//! The recursion bottoms out in the plane, where the only countable query is
//! two points.

use crate::counter::Counter;
use crate::query::{countable_codims, validate_query, Degree, MemoKey, QueryError};
use crate::scalar::Count;

/// Codims of the projected configuration when the floor meets `L_k`
/// (`k` is 1-based). Entries are raw: they may fall outside the valid range
/// and are re-validated by the caller.
pub fn line_floor_projection(codims: &[u32], k: usize) -> Vec<i64> {
    debug_assert!(k >= 1 && k <= codims.len());
    let merged: i64 = codims[..k - 1].iter().map(|&c| i64::from(c) - 1).sum();
    let mut out = Vec::with_capacity(codims.len() - k + 2);
    out.push(merged);
    out.push(i64::from(codims[k - 1]) - 1);
    out.extend(codims[k..].iter().map(|&c| i64::from(c)));
    out
}

impl<T: Count> Counter<T> {
    /// `N_{1,n}(codims)`. Zero-by-convention queries count 0.
    pub fn count_lines(&self, n: i64, codims: &[i64]) -> Result<T, QueryError> {
        let q = validate_query(1, n, codims)?;
        if !q.is_countable() {
            return Ok(T::zero());
        }
        Ok(self.lines_countable(q.ambient_dim(), q.codims()))
    }

    /// Line count for an unvalidated list produced inside a recursion.
    pub(crate) fn lines_raw(&self, n: u32, raw: &[i64]) -> T {
        if n < 2 {
            return T::zero();
        }
        match countable_codims(Degree::Line, n, raw) {
            Some(codims) => self.lines_countable(n, &codims),
            None => T::zero(),
        }
    }

    /// `codims` must already be countable for degree 1 in dimension `n`.
    pub(crate) fn lines_countable(&self, n: u32, codims: &[u32]) -> T {
        if n == 2 {
            return T::one();
        }
        let key = MemoKey::new(Degree::Line, n, codims);
        self.lines.get_or_compute(key, || {
            (2..=codims.len()).fold(T::zero(), |acc, k| {
                acc + self.lines_raw(n - 1, &line_floor_projection(codims, k))
            })
        })
    }
}
