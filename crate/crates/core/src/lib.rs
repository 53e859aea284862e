//! Exact counts of rational lines and conics in projective `n`-space meeting
//! generic linear subspaces, computed by floor decomposition of tropical
//! curves.
//!
//! The counting engine [`Counter`] is generic over the integer type of the
//! counts ([`Count`]); [`ExactCounter`] with arbitrary precision is the one
//! to use unless a query is known to be small.
//!
//! ```
//! use floorcount::ExactCounter;
//!
//! let counter = ExactCounter::new();
//! // conics in projective 3-space meeting eight generic lines
//! assert_eq!(counter.count_conics(3, &[2; 8]).unwrap(), 92u32.into());
//! ```
//!
//! Besides the recursion, the crate enumerates the floor diagrams behind
//! each count ([`DiagramEnumerator`]) and carries an independent Schubert
//! calculus oracle for lines ([`oracle_line_count`]).

mod closed_form;
mod conics;
mod counter;
mod diagram;
mod lines;
mod memo;
mod query;
mod reducible;
mod scalar;
mod schubert;

pub use closed_form::{binomial, catalan, closed_form_cnl, closed_form_kl, kl_codims};
pub use conics::{
    enumerate_one_floor_choices, enumerate_two_floor_choices, ConicBreakdown, OneFloorChoice,
    TwoFloorChoice,
};
pub use counter::Counter;
pub use diagram::{
    family_breakdown, verify_maximality, DiagramEnumerator, Family, FloorDiagram, MaximalityReport,
    Shape, ShapeStep, Step,
};
pub use lines::line_floor_projection;
pub use query::{
    conditions, countable_multisets, validate_query, ConstraintList, Degree, MemoKey,
    NormalizedQuery, QueryError, Status,
};
pub use reducible::ReducibleQuery;
pub use scalar::Count;
pub use schubert::{oracle_line_count, SchubertClass};

pub use num_bigint::BigUint;

/// Arbitrary-precision count.
pub type CountValue = BigUint;
/// Counter with arbitrary-precision counts.
pub type ExactCounter = Counter<BigUint>;
/// Counter with `u64` counts, for small queries.
pub type Counter64 = Counter<u64>;
/// Counter with `u128` counts.
pub type Counter128 = Counter<u128>;
