use std::collections::HashMap;

use crate::canon::{hash_keys, CanonicalForm, HashKeys};

/// Accepted daughters of one mother, bucketed by hash keys.
#[derive(Debug, Default)]
pub struct DaughterStore {
    buckets: HashMap<HashKeys, Vec<CanonicalForm>>,
    len: usize,
}

impl DaughterStore {
    /// Inserts `form`, returning `false` if an identical form is present.
    pub fn insert(&mut self, form: CanonicalForm) -> bool {
        let bucket = self.buckets.entry(hash_keys(&form)).or_default();
        if bucket.contains(&form) {
            return false;
        }
        bucket.push(form);
        self.len += 1;
        true
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn clear(&mut self) {
        self.buckets.clear();
        self.len = 0;
    }
}
