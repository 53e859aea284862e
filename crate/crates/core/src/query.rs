//! Query validation and dimension bookkeeping.
//!
//! A query asks for the number of rational curves of degree `d` in
//! projective `n`-space meeting generic linear subspaces of codimensions
//! `l_1, …, l_γ`. The count is finite and non-zero only when
//!
//! ```text
//! Σ_j (l_j − 1) = (n + 1)·d + (n − 3)
//! ```
//!
//! Codimensions outside `1..=n` make the query zero by convention (they are
//! legitimate queries, not errors), and codimension-1 constraints impose no
//! condition on a curve, so they are dropped.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("unsupported degree {0}: only lines (1) and conics (2) are handled")]
    UnsupportedDegree(i64),
    #[error("ambient dimension must be at least 2, got {0}")]
    DimensionTooSmall(i64),
    #[error("constraint list is empty")]
    EmptyConstraints,
    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },
    #[error("malformed memo key `{0}`")]
    BadKey(String),
}

/// Curve degree. Only lines and conics are supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Degree {
    Line,
    Conic,
}

impl Degree {
    pub fn from_int(d: i64) -> Result<Self, QueryError> {
        match d {
            1 => Ok(Degree::Line),
            2 => Ok(Degree::Conic),
            other => Err(QueryError::UnsupportedDegree(other)),
        }
    }

    pub fn as_u32(self) -> u32 {
        match self {
            Degree::Line => 1,
            Degree::Conic => 2,
        }
    }

    /// Number of conditions a curve of this degree in projective `n`-space
    /// has to satisfy: `(n+1)d + (n-3)`.
    pub fn expected_conditions(self, n: u32) -> i64 {
        let (n, d) = (i64::from(n), i64::from(self.as_u32()));
        (n + 1) * d + (n - 3)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u32())
    }
}

/// Ordered constraint codimensions in an ambient space. Every stored codim
/// lies in `1..=ambient_dim`; the order is the height order of the
/// constraints.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConstraintList {
    ambient_dim: u32,
    codims: Vec<u32>,
}

impl ConstraintList {
    pub fn ambient_dim(&self) -> u32 {
        self.ambient_dim
    }

    pub fn codims(&self) -> &[u32] {
        &self.codims
    }

    pub fn len(&self) -> usize {
        self.codims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codims.is_empty()
    }

    /// `Σ (l_j − 1)`.
    pub fn conditions(&self) -> i64 {
        conditions(&self.codims)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Countable,
    ZeroByConvention,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Countable => f.write_str("Countable"),
            Status::ZeroByConvention => f.write_str("ZeroByConvention"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalizedQuery {
    degree: Degree,
    constraints: ConstraintList,
    /// Entries outside `1..=n`; only non-empty for zero-by-convention queries.
    rejected: Vec<i64>,
    dropped_hyperplanes: usize,
    status: Status,
}

impl NormalizedQuery {
    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn ambient_dim(&self) -> u32 {
        self.constraints.ambient_dim
    }

    pub fn constraints(&self) -> &ConstraintList {
        &self.constraints
    }

    pub fn codims(&self) -> &[u32] {
        &self.constraints.codims
    }

    pub fn rejected(&self) -> &[i64] {
        &self.rejected
    }

    pub fn dropped_hyperplanes(&self) -> usize {
        self.dropped_hyperplanes
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_countable(&self) -> bool {
        self.status == Status::Countable
    }

    /// Canonical memo key: degree, dimension and the sorted multiset.
    pub fn key(&self) -> MemoKey {
        MemoKey::new(self.degree, self.ambient_dim(), self.codims())
    }

    /// Re-runs validation on an already normalized query. The result equals
    /// `self`: nothing further is dropped and the status is re-derived from
    /// the stored entries.
    pub fn revalidate(&self) -> NormalizedQuery {
        let mut raw: Vec<i64> = self.codims().iter().map(|&c| i64::from(c)).collect();
        raw.extend_from_slice(&self.rejected);
        let mut again = normalize(self.degree, self.ambient_dim(), &raw);
        again.dropped_hyperplanes += self.dropped_hyperplanes;
        again
    }
}

/// Validates a raw query.
///
/// Structural problems (degree not 1 or 2, `n < 2`, empty list) are errors;
/// everything else yields a [`NormalizedQuery`] whose status tells whether
/// the count can be non-zero.
pub fn validate_query(d: i64, n: i64, codims: &[i64]) -> Result<NormalizedQuery, QueryError> {
    let degree = Degree::from_int(d)?;
    if n < 2 {
        return Err(QueryError::DimensionTooSmall(n));
    }
    let n = u32::try_from(n).map_err(|_| QueryError::OutOfRange {
        what: "ambient dimension",
        detail: n.to_string(),
    })?;
    if codims.is_empty() {
        return Err(QueryError::EmptyConstraints);
    }
    Ok(normalize(degree, n, codims))
}

fn normalize(degree: Degree, n: u32, raw: &[i64]) -> NormalizedQuery {
    let mut kept = Vec::with_capacity(raw.len());
    let mut rejected = Vec::new();
    let mut dropped = 0;
    for &c in raw {
        if c == 1 {
            dropped += 1;
        } else if c <= 0 || c > i64::from(n) {
            rejected.push(c);
        } else {
            kept.push(c as u32);
        }
    }
    let status = if rejected.is_empty() && conditions(&kept) == degree.expected_conditions(n) {
        Status::Countable
    } else {
        Status::ZeroByConvention
    };
    NormalizedQuery {
        degree,
        constraints: ConstraintList {
            ambient_dim: n,
            codims: kept,
        },
        rejected,
        dropped_hyperplanes: dropped,
        status,
    }
}

/// Lean version of the normalization used inside the recursions: the
/// surviving codims if the query is countable, `None` otherwise.
pub(crate) fn countable_codims(degree: Degree, n: u32, raw: &[i64]) -> Option<Vec<u32>> {
    let mut kept = Vec::with_capacity(raw.len());
    let mut total = 0i64;
    for &c in raw {
        if c <= 0 || c > i64::from(n) {
            return None;
        }
        if c > 1 {
            kept.push(c as u32);
            total += c - 1;
        }
    }
    (total == degree.expected_conditions(n)).then_some(kept)
}

/// Every countable codim multiset for a degree and dimension, each listed in
/// non-increasing order, hyperplanes excluded.
pub fn countable_multisets(degree: Degree, n: u32) -> Vec<Vec<u32>> {
    fn fill(remaining: i64, max: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        let top = max.min((remaining + 1) as u32);
        for c in (2..=top).rev() {
            current.push(c);
            fill(remaining - i64::from(c - 1), c, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 2 {
        fill(degree.expected_conditions(n), n, &mut Vec::new(), &mut out);
    }
    out
}

/// `Σ (l − 1)` over a codim list.
pub fn conditions(codims: &[u32]) -> i64 {
    codims.iter().map(|&c| i64::from(c) - 1).sum()
}

/// Memo key `d:n:c1,c2,…` with the codims sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MemoKey {
    pub degree: Degree,
    pub n: u32,
    pub codims: Vec<u32>,
}

impl MemoKey {
    pub fn new(degree: Degree, n: u32, codims: &[u32]) -> Self {
        let mut codims = codims.to_vec();
        codims.sort_unstable();
        MemoKey { degree, n, codims }
    }
}

impl fmt::Display for MemoKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:", self.degree, self.n)?;
        for (i, c) in self.codims.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for MemoKey {
    type Err = QueryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || QueryError::BadKey(s.to_string());
        let mut parts = s.splitn(3, ':');
        let (d, n, list) = match (parts.next(), parts.next(), parts.next()) {
            (Some(d), Some(n), Some(list)) => (d, n, list),
            _ => return Err(bad()),
        };
        let degree = Degree::from_int(d.parse().map_err(|_| bad())?).map_err(|_| bad())?;
        let n: u32 = n.parse().map_err(|_| bad())?;
        let codims = if list.is_empty() {
            Vec::new()
        } else {
            list.split(',')
                .map(|c| c.parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?
        };
        Ok(MemoKey::new(degree, n, &codims))
    }
}
