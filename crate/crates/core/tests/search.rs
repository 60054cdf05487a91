use std::collections::BTreeSet;

use ncluster_core::arith::SpfTable;
use ncluster_core::cluster::{canonical_form, sub_triangles, verify_cluster, CanonicalKey};
use ncluster_core::heron::{generate_naive, generate_primitive, with_rescaled};
use ncluster_core::search::combine::{combine_lists, CombineConfig};
use ncluster_core::search::exhaustive::{exhaustive_clusters, largest_diameter, ExhaustiveOptions};
use ncluster_core::search::extension::{iterate_extension, triangle_extension, ExtensionOptions};
use ncluster_core::{Catalog, Cluster, HeronTriangle};
use num_bigint::BigUint;

fn primitive(limit: u64) -> Vec<HeronTriangle> {
    generate_primitive(limit, &SpfTable::new(limit as u32).unwrap()).unwrap()
}

fn as_cluster(t: &HeronTriangle) -> Cluster {
    Cluster::from_upper_rows(3, &[t.a, t.b, t.c].map(BigUint::from)).unwrap()
}

fn keys<'a>(cs: impl IntoIterator<Item = &'a Cluster>) -> BTreeSet<CanonicalKey> {
    cs.into_iter().map(canonical_form).collect()
}

#[test]
fn edge_join_equals_the_four_point_layer_of_extension() {
    let list = primitive(60);
    let ext = triangle_extension(&list, &ExtensionOptions { partition: true, min_output: 4, all_partners: true }).unwrap();
    let clusters: Vec<Cluster> = list.iter().map(as_cluster).collect();
    let mut cfg = CombineConfig::edge_join(4).unwrap();
    cfg.all_subclusters = true;
    cfg.min_output = 4;
    let comb = combine_lists(&clusters, &clusters, &cfg).unwrap();
    let four_ext = keys(ext.catalog.with_size(4));
    let four_comb = keys(comb.catalog.with_size(4));
    assert!(!four_ext.is_empty());
    assert_eq!(four_ext, four_comb);
    assert!(ext.stats.is_consistent() && comb.stats.is_consistent());
}

#[test]
fn partitioning_changes_nothing_but_the_work() {
    let list = primitive(120);
    let opts = ExtensionOptions { min_output: 5, ..ExtensionOptions::default() };
    let with = triangle_extension(&list, &opts).unwrap();
    let without = triangle_extension(&list, &ExtensionOptions { partition: false, ..opts }).unwrap();
    assert_eq!(with.catalog, without.catalog);
    assert!(with.catalog.count_with_size(5) > 0);
    let attempts = |o: &ncluster_core::search::extension::SearchOutput| o.stats.level(4).map_or(0, |s| s.attempts);
    assert!(attempts(&with) < attempts(&without));
    for c in with.catalog.clusters() {
        assert!(verify_cluster(c).is_cluster());
    }
}

#[test]
fn extension_recovers_a_cluster_from_its_triangles() {
    let min7 = [
        2262000u64, 1839760, 1691976, 1685125, 1411488, 1380400, 1025440, 1022424, 602875, 959088, 1229600, 1541176,
        670085, 548912, 1531200, 879749, 1076712, 321784, 367237, 923525, 1008272,
    ];
    let c = Cluster::from_upper_rows(7, &min7.map(BigUint::from)).unwrap();
    let it = iterate_extension(std::slice::from_ref(&c), &ExtensionOptions::default(), 2).unwrap();
    assert!(it.rounds >= 1 && it.rounds <= 2);
    let distinct: BTreeSet<HeronTriangle> = sub_triangles(&c).unwrap().into_iter().collect();
    assert_eq!(it.trace[0], distinct.len());
    assert!(it.trace.windows(2).all(|w| w[0] <= w[1]));
    assert!(it.catalog.iter().any(|(k, _)| *k == canonical_form(&c)));
    assert!(it.catalog.count_with_size(6) >= 7);
}

#[test]
fn empty_inputs() {
    assert!(triangle_extension(&[], &ExtensionOptions::default()).unwrap().catalog.is_empty());
    let cfg = CombineConfig::hexagons();
    assert!(combine_lists(&[], &[], &cfg).unwrap().catalog.is_empty());
    assert!(CombineConfig::new(3, 3, 3).is_err());
}

#[test]
fn primitive_generation_matches_naive() {
    let fast: BTreeSet<HeronTriangle> = primitive(300).into_iter().collect();
    let naive: BTreeSet<HeronTriangle> = generate_naive(300).filter(|t| t.primitive).collect();
    assert_eq!(fast, naive);
    let all: BTreeSet<HeronTriangle> = generate_naive(300).collect();
    let rescaled: BTreeSet<HeronTriangle> = with_rescaled(&primitive(300), 300).into_iter().collect();
    assert_eq!(all, rescaled);
}

#[test]
fn exhaustive_level_three_is_the_triangle_list() {
    let tris: Vec<HeronTriangle> = generate_naive(100).collect();
    let out = exhaustive_clusters(&tris, &ExhaustiveOptions::new(100, 3)).unwrap();
    let want = keys(tris.iter().map(as_cluster).collect::<Vec<_>>().iter());
    assert_eq!(keys(out.levels[&3].iter()), want);
    assert_eq!(largest_diameter(&out), Some(100));
}

#[test]
fn exhaustive_budget_stops_early() {
    let tris: Vec<HeronTriangle> = generate_naive(100).collect();
    let opts = ExhaustiveOptions { max_candidates: Some(10), ..ExhaustiveOptions::new(100, 5) };
    let p = exhaustive_clusters(&tris, &opts).unwrap_err();
    assert!(p.completed.levels.contains_key(&3));
    assert!(!p.completed.levels.contains_key(&5));
}

#[test]
fn catalog_keeps_one_entry_per_class() {
    let t = as_cluster(&HeronTriangle::new(5, 4, 3).unwrap());
    let mut cat = Catalog::new();
    assert!(cat.insert(&t));
    assert!(!cat.insert(&t.scaled(&BigUint::from(7u32))));
    assert!(!cat.insert(&t.permuted(&[2, 0, 1])));
    assert_eq!(cat.len(), 1);
}
