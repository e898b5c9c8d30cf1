use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

/// Memo table filled idempotently: the lock is not held while a value is
/// computed, so recursive lookups are fine, and the first stored value wins.
pub(crate) struct Cache<K, V> {
    map: Mutex<HashMap<K, Arc<V>>>,
}

impl<K, V> Default for Cache<K, V> {
    fn default() -> Self {
        Cache { map: Mutex::new(HashMap::new()) }
    }
}

impl<K: Eq + Hash + Copy, V> Cache<K, V> {
    pub(crate) fn get_or_try<E>(&self, key: K, f: impl FnOnce() -> Result<V, E>) -> Result<Arc<V>, E> {
        if let Some(v) = self.map.lock().expect("cache poisoned").get(&key) {
            return Ok(Arc::clone(v));
        }
        let v = Arc::new(f()?);
        let mut map = self.map.lock().expect("cache poisoned");
        Ok(Arc::clone(map.entry(key).or_insert(v)))
    }

    pub(crate) fn insert(&self, key: K, v: V) {
        self.map.lock().expect("cache poisoned").entry(key).or_insert_with(|| Arc::new(v));
    }

    pub(crate) fn snapshot(&self) -> Vec<(K, Arc<V>)> {
        let map = self.map.lock().expect("cache poisoned");
        map.iter().map(|(k, v)| (*k, Arc::clone(v))).collect()
    }
}
