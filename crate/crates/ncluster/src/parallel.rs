//! Worker pool and the parallel drivers for the searches.
//!
//! Work is split into independent units (one base triangle, one cluster of
//! the first list, one middle side) whose results are merged in index
//! order, so the output never depends on the number of workers.

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};

use ncluster_core::arith::SpfTable;
use ncluster_core::heron::{self, HeronTriangle};
use ncluster_core::search::combine::{combine_one, CombineConfig};
use ncluster_core::search::extension::{extend_base, iterate_extension_with, ExtensionOptions, Iteration, SearchOutput};
use ncluster_core::{Cluster, Result};
use rayon::prelude::*;

/// Environment variable overriding the default worker count.
pub const THREADS_ENV: &str = "NCLUSTER_THREADS";

pub struct Workers {
    pool: rayon::ThreadPool,
    progress: bool,
}

impl Workers {
    /// `threads = None` takes [`THREADS_ENV`] if set, else one worker per CPU.
    pub fn new(threads: Option<usize>) -> std::result::Result<Self, String> {
        let threads = match threads {
            Some(t) => t,
            None => match std::env::var(THREADS_ENV) {
                Ok(s) => s.trim().parse().map_err(|_| format!("{THREADS_ENV} must be a number, found `{s}`"))?,
                Err(_) => 0,
            },
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| e.to_string())?;
        Ok(Workers { pool, progress: false })
    }

    /// Report progress on standard error.
    pub fn with_progress(mut self, on: bool) -> Self {
        self.progress = on;
        self
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    /// `f(0), …, f(n−1)` computed in parallel, returned in order.
    pub fn map<T, F>(&self, label: &str, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        let done = AtomicUsize::new(0);
        let step = (n / 20).max(1);
        let progress = self.progress;
        self.pool.install(|| {
            (0..n)
                .into_par_iter()
                .map(|i| {
                    let r = f(i);
                    let k = done.fetch_add(1, Ordering::Relaxed) + 1;
                    if progress && (k % step == 0 || k == n) {
                        let mut e = std::io::stderr().lock();
                        let _ = writeln!(e, "{label}: {k}/{n}");
                    }
                    r
                })
                .collect()
        })
    }
}

fn merge_all(parts: Vec<Result<SearchOutput>>) -> Result<SearchOutput> {
    let mut out = SearchOutput::default();
    for p in parts {
        out.merge(p?);
    }
    Ok(out)
}

/// Triangle extension with one unit of work per base triangle.
pub fn triangle_extension(w: &Workers, list: &[HeronTriangle], opts: &ExtensionOptions) -> Result<SearchOutput> {
    merge_all(w.map("extend", list.len(), |i| extend_base(list, i, opts)))
}

/// Repeats extension on the sub-triangles of everything found so far.
pub fn iterate_extension(w: &Workers, seed: &[Cluster], opts: &ExtensionOptions, max_rounds: usize) -> Result<Iteration> {
    iterate_extension_with(seed, max_rounds, |t| triangle_extension(w, t, opts))
}

/// List combination with one unit of work per cluster of `l1`.
pub fn combine_lists(w: &Workers, l1: &[Cluster], l2: &[Cluster], cfg: &CombineConfig) -> Result<SearchOutput> {
    merge_all(w.map("combine", l1.len(), |i| combine_one(&l1[i], l2, cfg)))
}

/// Primitive Heronian triangles with diameter at most `limit`, sharded on
/// the middle side.
pub fn generate_primitive(w: &Workers, limit: u64, table: &SpfTable) -> Result<Vec<HeronTriangle>> {
    let n = usize::try_from(limit).map_err(|_| ncluster_core::Error::Overflow)?;
    let parts = w.map("heron-gen", n, |b| heron::primitive_with_middle_side(b as u64 + 1, limit, table));
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    out.sort_unstable();
    Ok(out)
}
