use crate::memo::MemoTable;
use crate::query::{Degree, MemoKey};
use crate::reducible::ReducibleKey;
use crate::scalar::Count;

/// Counting engine for lines, conics and reducible conics, generic over the
/// exact integer type of the counts.
///
/// Each instance owns its memo tables. Tables are keyed by the canonical
/// sorted multiset, so any constraint order hits the same entry. A counter
/// can be shared between threads.
#[derive(Debug)]
pub struct Counter<T> {
    pub(crate) lines: MemoTable<MemoKey, T>,
    pub(crate) conics: MemoTable<MemoKey, T>,
    pub(crate) reducible: MemoTable<ReducibleKey, T>,
}

impl<T: Count> Default for Counter<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Count> Counter<T> {
    pub fn new() -> Self {
        Self::with_memo(true)
    }

    /// A counter that recomputes every sub-problem. Exponentially slower;
    /// used to check that memoization does not change results.
    pub fn without_memo() -> Self {
        Self::with_memo(false)
    }

    fn with_memo(enabled: bool) -> Self {
        Counter {
            lines: MemoTable::new(enabled),
            conics: MemoTable::new(enabled),
            reducible: MemoTable::new(enabled),
        }
    }

    /// Seeds the line/conic memo with a known value, e.g. from a persistent
    /// cache. The caller vouches for the value.
    pub fn preload(&self, key: MemoKey, value: T) {
        match key.degree {
            Degree::Line => self.lines.insert(key, value),
            Degree::Conic => self.conics.insert(key, value),
        }
    }

    /// All memoized line and conic counts, sorted by key.
    pub fn memo_entries(&self) -> Vec<(MemoKey, T)> {
        let mut all = self.lines.snapshot();
        all.extend(self.conics.snapshot());
        all.sort_by(|a, b| a.0.cmp(&b.0));
        all
    }
}
