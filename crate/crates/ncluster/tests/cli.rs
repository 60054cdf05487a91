use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;

use ncluster::format::{parse_cluster_or_triangle_file, ClusterFile, ClusterLayout, PointFile, TriangleFile};
use ncluster_core::cluster::{canonical_form, CanonicalKey};
use ncluster_core::geometry::rational_distance;

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data");

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Out {
    let o = Command::new(env!("CARGO_BIN_EXE_ncluster")).args(args).output().unwrap();
    Out {
        code: o.status.code().unwrap(),
        stdout: String::from_utf8(o.stdout).unwrap(),
        stderr: String::from_utf8(o.stderr).unwrap(),
    }
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.code, 0, "{args:?}: {}", o.stderr);
    o.stdout
}

fn data(name: &str) -> String {
    format!("{DATA}/{name}")
}

fn tmp() -> tempfile::TempDir {
    tempfile::tempdir().unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn read(p: &str) -> String {
    std::fs::read_to_string(PathBuf::from(p)).unwrap()
}

fn keys_of_size(text: &str, n: usize) -> BTreeSet<CanonicalKey> {
    parse_cluster_or_triangle_file(text).unwrap().iter().filter(|c| c.len() == n).map(canonical_form).collect()
}

fn data_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#') && !l.is_empty()).collect()
}

#[test]
fn smallest_heronian_triangle() {
    let out = ok(&["heron-gen", "--max-diameter", "5", "--algorithm", "naive", "-q"]);
    assert_eq!(data_lines(&out), vec!["5 4 3"]);
}

#[test]
fn tiny_bound_gives_only_a_header() {
    let out = ok(&["heron-gen", "--max-diameter", "2", "-q"]);
    assert!(!out.is_empty());
    assert!(out.lines().all(|l| l.starts_with('#')));
}

#[test]
fn generation_algorithms_agree() {
    for extra in [&[][..], &["--primitive-only"][..]] {
        let mut a = vec!["heron-gen", "--max-diameter", "300", "-q", "--algorithm", "naive"];
        a.extend_from_slice(extra);
        let naive = TriangleFile::parse(&ok(&a)).unwrap().triangles;
        a[5] = "third-side";
        let fast = TriangleFile::parse(&ok(&a)).unwrap().triangles;
        assert_eq!(naive, fast);
        assert!(!naive.is_empty());
    }
}

#[test]
fn verify_exit_codes() {
    let o = run(&["verify", &data("min7.txt")]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains(": ok"));
    assert_eq!(run(&["verify", &data("min7_scaled_coords.txt")]).code, 0);
    let o = run(&["verify", &data("rectangle.txt")]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("concircular"));

    let d = tmp();
    let bad = path(d.path(), "bad.txt");
    std::fs::write(&bad, "n 3 diameter 5\n5 4 x\n3\n").unwrap();
    assert_eq!(run(&["verify", &bad]).code, 3);
    assert_eq!(run(&["verify", &path(d.path(), "missing.txt")]).code, 3);
    assert_eq!(run(&["verify"]).code, 2);
    assert_eq!(run(&["extend", "--no-such-flag", &bad]).code, 2);
    assert_eq!(run(&["fourth-point", "5", "4", "2"]).code, 2);
}

#[test]
fn extend_output_verifies_and_round_trips() {
    let d = tmp();
    let tri = path(d.path(), "t.txt");
    std::fs::write(&tri, ok(&["heron-gen", "--max-diameter", "150", "--primitive-only", "-q"])).unwrap();
    let mut outs = Vec::new();
    for th in ["1", "3"] {
        let out = path(d.path(), &format!("c{th}.txt"));
        let stats = path(d.path(), &format!("s{th}.txt"));
        ok(&["extend", &tri, "--min-output", "5", "--threads", th, "-q", "-o", &out, "--stats-out", &stats]);
        outs.push((read(&out), read(&stats)));
    }
    assert_eq!(outs[0], outs[1]);
    let text = &outs[0].0;
    let parsed = ClusterFile::parse(text).unwrap();
    assert!(parsed.clusters.len() > 5);
    assert_eq!(&parsed.write(ClusterLayout::Distances).unwrap(), text);
    let out = path(d.path(), "c1.txt");
    assert_eq!(run(&["verify", &out]).code, 0);

    let coords = path(d.path(), "coords.txt");
    ok(&["extend", &tri, "--min-output", "5", "--layout", "coords", "-q", "-o", &coords]);
    assert_eq!(ClusterFile::parse(&read(&coords)).unwrap().clusters, parsed.clusters);
    assert_eq!(run(&["verify", &coords]).code, 0);
}

#[test]
fn empty_input_gives_empty_catalog() {
    let d = tmp();
    let tri = path(d.path(), "t.txt");
    std::fs::write(&tri, "# nothing\n").unwrap();
    let out = ok(&["extend", &tri, "-q"]);
    assert!(out.contains("entries 0"));
    assert!(ClusterFile::parse(&out).unwrap().clusters.is_empty());
    let out = ok(&["combine", &tri, &tri, "-q"]);
    assert!(ClusterFile::parse(&out).unwrap().clusters.is_empty());
    let counts = ok(&["stats", &tri]);
    assert!(data_lines(&counts).is_empty());
}

#[test]
fn edge_join_matches_extension() {
    let d = tmp();
    let tri = path(d.path(), "t.txt");
    std::fs::write(&tri, ok(&["heron-gen", "--max-diameter", "50", "--primitive-only", "-q"])).unwrap();
    let comb = ok(&["combine", &tri, &tri, "-c", "2", "--all-subclusters", "--min-output", "4", "-q"]);
    let ext = ok(&["extend", &tri, "--all-partners", "--min-output", "4", "-q"]);
    let k = keys_of_size(&ext, 4);
    assert!(!k.is_empty());
    assert_eq!(keys_of_size(&comb, 4), k);
}

#[test]
fn exhaustive_level_three_is_the_triangle_list() {
    let ex = ok(&["exhaustive", "--max-diameter", "100", "--n-target", "3", "-q"]);
    let tri = ok(&["heron-gen", "--max-diameter", "100", "-q"]);
    assert_eq!(keys_of_size(&ex, 3), keys_of_size(&tri, 3));
    assert_eq!(keys_of_size(&ex, 3).len(), data_lines(&tri).len());
    let four = ok(&["exhaustive", "--max-diameter", "100", "--n-target", "4", "-q"]);
    assert!(!keys_of_size(&four, 4).is_empty());
    assert!(keys_of_size(&four, 3).is_empty());
    let o = run(&["exhaustive", "--max-diameter", "100", "--n-target", "5", "--max-candidates", "10", "-q"]);
    assert_eq!(o.code, 3);
}

#[test]
fn inversion_gives_rational_six_point_sets() {
    let out = ok(&["invert", &data("min7.txt"), "--center", "3"]);
    let f = PointFile::parse(&out).unwrap();
    assert_eq!(f.sets.len(), 1);
    let s = &f.sets[0];
    assert_eq!(s.len(), 6);
    for i in 0..6 {
        for j in 0..i {
            assert!(rational_distance(&s[i], &s[j]).is_some());
        }
    }
    assert_eq!(run(&["invert", &data("min7.txt"), "--center", "7"]).code, 2);
}

#[test]
fn fourth_point_candidates() {
    let out = ok(&["fourth-point", "5", "4", "3", "--height", "2"]);
    assert_eq!(data_lines(&out), vec!["5/2 10/3 25/6 25/6 7/6"]);
    let both = data_lines(&ok(&["fourth-point", "5", "4", "3", "--height", "20"])).len();
    let arctan = data_lines(&ok(&["fourth-point", "5", "4", "3", "--height", "20", "--method", "pyth-arctan"])).len();
    let ceva = data_lines(&ok(&["fourth-point", "5", "4", "3", "--height", "20", "--method", "ceva"])).len();
    assert!(both <= arctan + ceva && ceva > 0);
}

#[test]
fn score_and_select() {
    let d = tmp();
    let tri = path(d.path(), "t.txt");
    std::fs::write(&tri, ok(&["heron-gen", "--max-diameter", "40", "-q"])).unwrap();
    let sel = path(d.path(), "sel.txt");
    let report = ok(&["score", &tri, "--method", "neg-diameter", "--top", "3", "--select-out", &sel]);
    assert_eq!(data_lines(&report)[0], "method neg-diameter");
    assert_eq!(data_lines(&report)[1], "5 4 3 -5.000000");
    assert_eq!(data_lines(&read(&sel)), vec!["5 4 3", "6 5 5", "8 5 5"]);
    for m in ["score1", "score2", "ellipse"] {
        ok(&["score", &tri, "--method", m]);
    }
    assert_eq!(run(&["score", &tri, "--method", "frequency"]).code, 2);
    let freq = ok(&["score", &tri, "--method", "frequency", "--clusters", &data("min7.txt")]);
    assert!(data_lines(&freq).len() > 1);
}

#[test]
fn stats_and_canonical() {
    let counts = ok(&["stats", &data("min7_scaled_coords.txt")]);
    assert_eq!(data_lines(&counts), vec!["size 7 1", "size 7 diameter<=10^9 1"]);
    let canon = ok(&["canonical", &data("min7_scaled_coords.txt"), "-q"]);
    let again = ok(&["canonical", &data("min7.txt"), "-q"]);
    assert_eq!(canon, again);
    let c = &ClusterFile::parse(&canon).unwrap().clusters[0];
    assert_eq!(c.diameter().to_string(), "2262000");
    assert_eq!(data_lines(&ok(&["stats", &data("min7.txt")])), vec!["size 7 1", "size 7 diameter<=10^7 1"]);
}
