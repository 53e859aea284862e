use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{FromPrimitive, Num, Unsigned};

/// Exact unsigned integer type used for every count in the crate.
///
/// Implemented for [`num_bigint::BigUint`] (the default, see
/// [`crate::CountValue`]) and for the fixed-width `u64`/`u128`. Fixed-width
/// counters are faster but panic on overflow in debug builds; they are meant
/// for small queries and cross-checks.
pub trait Count:
    Num
    + Unsigned
    + FromPrimitive
    + Default
    + Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Send
    + Sync
    + 'static
{
    fn from_count(value: u64) -> Self {
        Self::from_u64(value).expect("every count type holds u64 values")
    }

    /// `2^exp`.
    fn pow2(exp: u32) -> Self {
        let two = Self::one() + Self::one();
        (0..exp).fold(Self::one(), |acc, _| acc * two.clone())
    }
}

impl<T> Count for T where
    T: Num
        + Unsigned
        + FromPrimitive
        + Default
        + Clone
        + Debug
        + Display
        + Eq
        + Ord
        + Hash
        + Send
        + Sync
        + 'static
{
}
