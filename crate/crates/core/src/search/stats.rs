use alloc::collections::BTreeMap;

/// Why a combination of two k-clusters failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rejection {
    Distance,
    Concircular,
    Collinear,
}

/// Counters for combining two k-clusters into a (k+1)-cluster.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LevelStats {
    pub attempts: u64,
    pub distance: u64,
    pub concircular: u64,
    pub collinear: u64,
    pub successful: u64,
    /// Longest list of (k+1)-clusters sharing one k-cluster.
    pub longest_list: u64,
    /// Pairs never attempted because partitioning proved them incompatible.
    pub partition_skipped: u64,
}

impl LevelStats {
    pub fn record(&mut self, outcome: Option<Rejection>) {
        self.attempts += 1;
        match outcome {
            None => self.successful += 1,
            Some(Rejection::Distance) => self.distance += 1,
            Some(Rejection::Concircular) => self.concircular += 1,
            Some(Rejection::Collinear) => self.collinear += 1,
        }
    }

    pub fn observe_list(&mut self, len: usize) {
        self.longest_list = self.longest_list.max(len as u64);
    }

    pub fn merge(&mut self, other: &LevelStats) {
        self.attempts += other.attempts;
        self.distance += other.distance;
        self.concircular += other.concircular;
        self.collinear += other.collinear;
        self.successful += other.successful;
        self.longest_list = self.longest_list.max(other.longest_list);
        self.partition_skipped += other.partition_skipped;
    }

    /// Every attempt is accounted for by exactly one outcome.
    pub fn is_consistent(&self) -> bool {
        self.distance + self.concircular + self.collinear + self.successful == self.attempts
    }

    pub fn percent(&self, count: u64) -> f64 {
        if self.attempts == 0 {
            0.0
        } else {
            100.0 * count as f64 / self.attempts as f64
        }
    }
}

/// Per-level statistics keyed by the size k of the clusters being combined.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    levels: BTreeMap<usize, LevelStats>,
}

impl SearchStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn level_mut(&mut self, k: usize) -> &mut LevelStats {
        self.levels.entry(k).or_default()
    }

    pub fn level(&self, k: usize) -> Option<&LevelStats> {
        self.levels.get(&k)
    }

    pub fn levels(&self) -> impl Iterator<Item = (usize, &LevelStats)> {
        self.levels.iter().map(|(&k, s)| (k, s))
    }

    pub fn merge(&mut self, other: &SearchStats) {
        for (&k, s) in &other.levels {
            self.level_mut(k).merge(s);
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.levels.values().all(LevelStats::is_consistent)
    }
}
