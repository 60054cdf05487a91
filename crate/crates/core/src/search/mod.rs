//! Cluster construction: triangle extension, list combination and
//! exhaustive orderly generation, with per-level statistics.

mod catalog;
pub mod combine;
pub mod exhaustive;
pub mod extension;
mod stats;

pub use catalog::Catalog;
pub use stats::{LevelStats, Rejection, SearchStats};
