//! Exhaustive generation against an independent edge-gluing enumeration.

#[path = "support/edge_gluing.rs"]
mod edge_gluing;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use edge_gluing::oracle;
use ncluster_core::heron::generate_naive;
use ncluster_core::search::exhaustive::{exhaustive_clusters, ExhaustiveOptions};

fn run(limit: u64) {
    let tris: Vec<_> = generate_naive(limit).collect();
    let opts = ExhaustiveOptions::new(limit, 4);
    let got = exhaustive_clusters(&tris, &opts).unwrap();
    let got: BTreeSet<Vec<u64>> = got
        .catalog
        .iter()
        .map(|(k, _)| k.0.iter().map(|x: &BigUint| x.to_u64().unwrap()).collect())
        .collect();
    let want = oracle(limit);
    let extra: Vec<_> = got.difference(&want).take(5).collect();
    let missing: Vec<_> = want.difference(&got).take(5).collect();
    assert!(extra.is_empty() && missing.is_empty(), "{} vs {}: extra {extra:?} missing {missing:?}", got.len(), want.len());
}

#[test]
fn matches_edge_gluing_up_to_80() {
    run(80);
}

#[test]
fn matches_edge_gluing_up_to_200() {
    run(200);
}

#[test]
fn orderly_pruning_loses_nothing() {
    let limit = 130;
    let tris: Vec<_> = generate_naive(limit).collect();
    let orderly = exhaustive_clusters(&tris, &ExhaustiveOptions::new(limit, 5)).unwrap();
    let all = exhaustive_clusters(&tris, &ExhaustiveOptions { orderly: false, ..ExhaustiveOptions::new(limit, 5) }).unwrap();
    assert_eq!(orderly.levels, all.levels);
    assert!(!orderly.levels[&5].is_empty());
}
