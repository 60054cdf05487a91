//! Exact-arithmetic building blocks for constructing plane integral point
//! sets in general position ("n-clusters").
//!
//! Everything in this crate is pure computation over arbitrary-precision
//! integers and rationals. It needs `alloc` but not `std`; file formats,
//! worker pools and the command-line front end live in the `ncluster` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod cluster;
mod error;
pub mod fourth_point;
pub mod geometry;
pub mod heron;
pub mod scoring;
pub mod search;

pub use error::{Error, Result};
pub use heron::HeronTriangle;
pub use cluster::{CanonicalKey, Cluster};
pub use search::{Catalog, SearchStats};
