use std::collections::HashMap;
use std::hash::Hash;
use std::sync::RwLock;

/// Shared memo table: concurrent lookups, serialized inserts.
///
/// Values are pure functions of their keys, so a racing double insert stores
/// the same value twice and the outcome does not depend on interleaving.
#[derive(Debug)]
pub(crate) struct MemoTable<K, V> {
    enabled: bool,
    map: RwLock<HashMap<K, V>>,
}

impl<K: Eq + Hash + Clone, V: Clone> MemoTable<K, V> {
    pub fn new(enabled: bool) -> Self {
        MemoTable {
            enabled,
            map: RwLock::new(HashMap::new()),
        }
    }

    pub fn get(&self, key: &K) -> Option<V> {
        if !self.enabled {
            return None;
        }
        self.map
            .read()
            .expect("memo lock poisoned")
            .get(key)
            .cloned()
    }

    pub fn insert(&self, key: K, value: V) {
        if self.enabled {
            self.map
                .write()
                .expect("memo lock poisoned")
                .insert(key, value);
        }
    }

    /// Returns the cached value or computes, stores and returns it. The lock
    /// is not held while `compute` runs, so `compute` may recurse.
    pub fn get_or_compute(&self, key: K, compute: impl FnOnce() -> V) -> V {
        if let Some(v) = self.get(&key) {
            return v;
        }
        let v = compute();
        self.insert(key, v.clone());
        v
    }

    pub fn snapshot(&self) -> Vec<(K, V)> {
        let map = self.map.read().expect("memo lock poisoned");
        map.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.map.read().expect("memo lock poisoned").len()
    }
}
