use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::cluster::{canonical_labeling, CanonicalKey, Cluster};

/// Similarity classes of clusters, each stored primitive and in canonical
/// labeling.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Catalog {
    entries: BTreeMap<CanonicalKey, Cluster>,
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds the similarity class of `c`. Returns whether it was new.
    pub fn insert(&mut self, c: &Cluster) -> bool {
        let prim = if c.is_primitive() { c.clone() } else { c.primitive_form() };
        let (key, perm) = canonical_labeling(&prim);
        if self.entries.contains_key(&key) {
            return false;
        }
        self.entries.insert(key, prim.permuted(&perm));
        true
    }

    /// Inserts an entry whose key is already known to be canonical.
    pub fn insert_canonical(&mut self, key: CanonicalKey, c: Cluster) -> bool {
        if self.entries.contains_key(&key) {
            return false;
        }
        self.entries.insert(key, c);
        true
    }

    pub fn contains(&self, key: &CanonicalKey) -> bool {
        self.entries.contains_key(key)
    }

    pub fn merge(&mut self, other: Catalog) {
        for (k, c) in other.entries {
            self.entries.entry(k).or_insert(c);
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries ordered by point count, diameter, then canonical key.
    pub fn sorted(&self) -> Vec<(&CanonicalKey, &Cluster)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort_by(|(ka, a), (kb, b)| {
            (a.len(), a.diameter(), *ka).cmp(&(b.len(), b.diameter(), *kb))
        });
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalKey, &Cluster)> {
        self.entries.iter()
    }

    pub fn clusters(&self) -> impl Iterator<Item = &Cluster> {
        self.entries.values()
    }

    pub fn with_size(&self, n: usize) -> impl Iterator<Item = &Cluster> {
        self.entries.values().filter(move |c| c.len() == n)
    }

    pub fn count_with_size(&self, n: usize) -> usize {
        self.with_size(n).count()
    }

    /// Sorted diameters of the entries with `n` points.
    pub fn diameters(&self, n: usize) -> Vec<BigUint> {
        let mut d: Vec<BigUint> = self.with_size(n).map(|c| c.diameter().clone()).collect();
        d.sort();
        d
    }

    /// Entries with at least `n` points.
    pub fn retain_min_size(&mut self, n: usize) {
        self.entries.retain(|_, c| c.len() >= n);
    }
}

impl<'a> Extend<&'a Cluster> for Catalog {
    fn extend<I: IntoIterator<Item = &'a Cluster>>(&mut self, iter: I) {
        for c in iter {
            self.insert(c);
        }
    }
}
