use ncluster::format::{
    decade, parse_cluster_or_triangle_file, parse_search_stats, write_search_stats, CandidateFile, CandidateLine, CatalogCounts,
    ClusterFile, ClusterLayout, PointFile, RawBlock, ScoreReport, TriangleFile,
};
use ncluster_core::geometry::{circle_invert, RationalPoint};
use ncluster_core::heron::generate_naive;
use ncluster_core::scoring::{score_all, ScoreMethod};
use ncluster_core::search::extension::{triangle_extension, ExtensionOptions};
use ncluster_core::{Catalog, Cluster};
use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::prelude::*;

const MIN7: &str = include_str!("data/min7.txt");
const MIN7_COORDS: &str = include_str!("data/min7_scaled_coords.txt");

fn small_catalog() -> Catalog {
    let list: Vec<_> = generate_naive(80).filter(|t| t.primitive).collect();
    triangle_extension(&list, &ExtensionOptions { min_output: 4, ..ExtensionOptions::default() }).unwrap().catalog
}

#[test]
fn triangle_file_round_trip() {
    let tris: Vec<_> = generate_naive(200).collect();
    let f = TriangleFile::new(vec!["# all up to 200".into()], tris.clone());
    let text = f.write();
    let back = TriangleFile::parse(&text).unwrap();
    assert_eq!(back, f);
    assert_eq!(back.write(), text);
    assert_eq!(back.triangles, tris);
}

#[test]
fn triangle_file_errors() {
    assert_eq!(TriangleFile::parse("5 4 3\n6 5 4\n").unwrap_err().line, 2);
    assert!(TriangleFile::parse("5 4\n").is_err());
    assert!(TriangleFile::parse("5 4 x\n").is_err());
    let t = TriangleFile::parse("# c\n\n3 4 5\n  # later comment\n").unwrap();
    assert_eq!(t.header, vec!["# c".to_string()]);
    assert_eq!(t.write(), "# c\n5 4 3\n");
}

#[test]
fn cluster_file_round_trip_both_layouts() {
    let cat = small_catalog();
    assert!(cat.len() > 10);
    let f = ClusterFile::from_catalog(vec!["# small".into()], &cat);
    for layout in [ClusterLayout::Distances, ClusterLayout::Coords] {
        let text = f.write(layout).unwrap();
        let back = ClusterFile::parse(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.write(layout).unwrap(), text);
    }
}

#[test]
fn both_layouts_of_the_minimal_cluster_agree() {
    let d = ClusterFile::parse(MIN7).unwrap();
    let c = ClusterFile::parse(MIN7_COORDS).unwrap();
    assert_eq!(c.clusters[0].primitive_form(), d.clusters[0]);
    assert_eq!(*c.clusters[0].diameter(), BigUint::from(327990000u32));
    let (_, blocks) = ClusterFile::parse_raw(MIN7_COORDS).unwrap();
    assert!(matches!(blocks[0], RawBlock::Coords { n: 7, .. }));
}

#[test]
fn cluster_file_errors() {
    let wrong_diameter = "n 3 diameter 6\n5 4\n3\n";
    assert!(ClusterFile::parse(wrong_diameter).unwrap_err().message.contains("diameter"));
    assert!(ClusterFile::parse("n 3 diameter 5\n5 4 3\n").is_err());
    assert!(ClusterFile::parse("n 3 diameter 5\n5 4\n").is_err());
    assert!(ClusterFile::parse("n 3 diameter 5\ncoords 1\n0 0\n5 0\n1 1\n").is_err());
    assert!(ClusterFile::parse("triangle 5 4 3\n").is_err());
    assert!(ClusterFile::parse("").unwrap().clusters.is_empty());
}

#[test]
fn triangle_files_read_as_three_point_clusters() {
    let cs = parse_cluster_or_triangle_file("# t\n5 4 3\n6 5 5\n").unwrap();
    assert_eq!(cs.len(), 2);
    assert_eq!(cs[0], Cluster::from_upper_rows(3, &[5u32, 4, 3].map(BigUint::from)).unwrap());
    assert_eq!(parse_cluster_or_triangle_file(MIN7).unwrap().len(), 1);
}

#[test]
fn point_file_round_trip() {
    let c = &ClusterFile::parse(MIN7).unwrap().clusters[0];
    let pts = c.coords().unwrap().rational_points();
    let sets: Vec<Vec<RationalPoint>> = (0..7).map(|k| circle_invert(&pts, k).unwrap()).collect();
    let f = PointFile { header: vec!["# inverted".into()], sets };
    let text = f.write();
    let back = PointFile::parse(&text).unwrap();
    assert_eq!(back, f);
    assert_eq!(back.write(), text);
}

#[test]
fn candidate_file_round_trip() {
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let line = CandidateLine { point: RationalPoint::new(q(5, 2), q(10, 3)), dist: [q(25, 6), q(25, 6), q(7, 6)] };
    let f = CandidateFile { header: vec![], candidates: vec![line] };
    assert_eq!(f.write(), "5/2 10/3 25/6 25/6 7/6\n");
    assert_eq!(CandidateFile::parse(&f.write()).unwrap(), f);
    assert_eq!(CandidateFile::parse("5/2 10/3 25/6 25/6 7/6\n").unwrap().candidates[0].dist[2], q(7, 6));
    assert!(CandidateFile::parse("1/0 1 1 1 1\n").is_err());
}

#[test]
fn stats_round_trip() {
    let list: Vec<_> = generate_naive(100).filter(|t| t.primitive).collect();
    let out = triangle_extension(&list, &ExtensionOptions { min_output: 5, ..ExtensionOptions::default() }).unwrap();
    let text = write_search_stats(&["# run".to_string()], &out.stats);
    let back = parse_search_stats(&text).unwrap();
    assert_eq!(back, out.stats);
    assert_eq!(write_search_stats(&["# run".to_string()], &back), text);
}

#[test]
fn score_report_round_trip() {
    let list: Vec<_> = generate_naive(150).collect();
    let mut scored = score_all(&list, ScoreMethod::Score2).unwrap();
    ncluster_core::scoring::sort_scores(&mut scored);
    let text = ScoreReport { header: vec![], entries: scored }.write();
    assert!(text.starts_with("method score2\n"));
    let back = ScoreReport::parse(&text).unwrap();
    assert_eq!(back.write(), text);
    let first = text.lines().nth(1).unwrap();
    assert!(first.split(' ').count() == 4);
}

#[test]
fn counts_recount_the_entries() {
    let cat = small_catalog();
    let counts = CatalogCounts::of(cat.clusters());
    for (n, k) in counts.per_size.iter() {
        assert_eq!(*k, cat.count_with_size(*n));
    }
    for (&(n, k), &cnt) in &counts.up_to_decade {
        let bound = BigUint::from(10u32).pow(k);
        assert_eq!(cnt, cat.with_size(n).filter(|c| *c.diameter() <= bound).count());
    }
    let text = counts.write(&[]);
    assert_eq!(CatalogCounts::parse(&text).unwrap(), counts);
    assert!(CatalogCounts::of(std::iter::empty()).lines().is_empty());
}

#[test]
fn decades() {
    let d = |x: u64| decade(&BigUint::from(x));
    assert_eq!([d(1), d(9), d(10), d(11), d(100), d(2262000)], [0, 1, 1, 2, 2, 7]);
}

proptest! {
    #[test]
    fn random_clusters_round_trip(scale in 1u32..10_000, perm in Just((0..7).collect::<Vec<usize>>()).prop_shuffle()) {
        let base = &ClusterFile::parse(MIN7).unwrap().clusters[0];
        let c = base.permuted(&perm).scaled(&BigUint::from(scale));
        let f = ClusterFile { header: vec![], clusters: vec![c] };
        for layout in [ClusterLayout::Distances, ClusterLayout::Coords] {
            let text = f.write(layout).unwrap();
            prop_assert_eq!(&ClusterFile::parse(&text).unwrap(), &f);
        }
    }
}
