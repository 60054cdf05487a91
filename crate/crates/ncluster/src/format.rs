//! Plain-text file formats. Every writer is deterministic, and parsing
//! an emitted file then writing it again reproduces it byte for byte.
//!
//! Lines starting with `#` are comments. Comments before the first record
//! are kept as the file header; later ones are skipped.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use ncluster_core::geometry::{CommonDenomPoint, CommonDenomSet, RationalPoint};
use ncluster_core::scoring::{ScoreMethod, ScoredTriangle};
use ncluster_core::search::{LevelStats, SearchStats};
use ncluster_core::{Catalog, Cluster, HeronTriangle};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError { line, message: message.into() })
}

pub type ParseResult<T> = Result<T, FormatError>;

/// Non-blank lines, with leading comments split off as the header.
struct Lines<'a> {
    header: Vec<String>,
    body: Vec<(usize, &'a str)>,
}

fn split_lines(text: &str) -> Lines<'_> {
    let mut header = Vec::new();
    let mut body = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.starts_with('#') {
            if body.is_empty() {
                header.push(line.to_string());
            }
            continue;
        }
        if !line.is_empty() {
            body.push((i + 1, line));
        }
    }
    Lines { header, body }
}

fn write_header(out: &mut String, header: &[String]) {
    for h in header {
        out.push_str(h);
        out.push('\n');
    }
}

/// Turns free text into `#` comment lines.
pub fn comment_lines<S: AsRef<str>>(lines: impl IntoIterator<Item = S>) -> Vec<String> {
    lines
        .into_iter()
        .map(|l| {
            let l = l.as_ref();
            if l.is_empty() { "#".to_string() } else { format!("# {l}") }
        })
        .collect()
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &str) -> ParseResult<T> {
    tok.parse().or_else(|_| err(line, format!("expected an integer, found `{tok}`")))
}

pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(line: usize, tok: &str) -> ParseResult<BigRational> {
    let (n, d) = match tok.split_once('/') {
        Some((n, d)) => (parse_num::<BigInt>(line, n)?, parse_num::<BigInt>(line, d)?),
        None => (parse_num::<BigInt>(line, tok)?, BigInt::one()),
    };
    if !d.is_positive() {
        return err(line, format!("denominator of `{tok}` must be positive"));
    }
    Ok(BigRational::new(n, d))
}

// ---------------------------------------------------------------- triangles

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TriangleFile {
    pub header: Vec<String>,
    pub triangles: Vec<HeronTriangle>,
}

impl TriangleFile {
    pub fn new(header: Vec<String>, mut triangles: Vec<HeronTriangle>) -> Self {
        triangles.sort_unstable();
        TriangleFile { header, triangles }
    }

    /// One `a b c` line per triangle. Sides in any order are accepted.
    pub fn parse(text: &str) -> ParseResult<Self> {
        let lines = split_lines(text);
        let mut triangles = Vec::with_capacity(lines.body.len());
        for (ln, line) in lines.body {
            let sides: Vec<u64> = line.split_whitespace().map(|t| parse_num(ln, t)).collect::<ParseResult<_>>()?;
            let [x, y, z] = sides[..] else {
                return err(ln, "expected three side lengths");
            };
            match HeronTriangle::new(x, y, z) {
                Some(t) => triangles.push(t),
                None => return err(ln, format!("({x}, {y}, {z}) is not a Heronian triangle")),
            }
        }
        Ok(TriangleFile { header: lines.header, triangles })
    }

    pub fn write(&self) -> String {
        let mut out = String::new();
        write_header(&mut out, &self.header);
        for t in &self.triangles {
            let _ = writeln!(out, "{t}");
        }
        out
    }
}

// ----------------------------------------------------------------- clusters

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClusterLayout {
    /// Upper triangle of the distance matrix, one row per line.
    #[default]
    Distances,
    /// Integer numerators over the shared denominator `2·d₀₁`.
    Coords,
}

/// A cluster block as written in the file, before any checks beyond shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawBlock {
    Distances { line: usize, n: usize, diameter: BigUint, upper: Vec<BigUint> },
    Coords { line: usize, n: usize, diameter: BigUint, set: CommonDenomSet },
}

impl RawBlock {
    pub fn line(&self) -> usize {
        match self {
            RawBlock::Distances { line, .. } | RawBlock::Coords { line, .. } => *line,
        }
    }

    /// The point set as integer distances, checking the stated diameter.
    pub fn to_cluster(&self) -> ParseResult<Cluster> {
        let (line, n, diameter, c) = match self {
            RawBlock::Distances { line, n, diameter, upper } => {
                (*line, *n, diameter, Cluster::from_upper_rows(*n, upper))
            }
            RawBlock::Coords { line, n, diameter, set } => {
                let mut upper = Vec::new();
                for i in 0..*n {
                    for j in i + 1..*n {
                        let d = set.distance(i, j).filter(|d| d.is_integer());
                        let Some(d) = d.and_then(|d| d.to_integer().to_biguint()) else {
                            return err(*line, format!("points {i} and {j} are not at integral distance"));
                        };
                        upper.push(d);
                    }
                }
                (*line, *n, diameter, Cluster::from_upper_rows(*n, &upper))
            }
        };
        let c = c.or_else(|e| err(line, e.to_string()))?;
        debug_assert_eq!(c.len(), n);
        if c.diameter() != diameter {
            return err(line, format!("stated diameter {diameter} differs from the largest distance {}", c.diameter()));
        }
        Ok(c)
    }
}

fn parse_blocks(body: &[(usize, &str)]) -> ParseResult<Vec<RawBlock>> {
    let mut blocks = Vec::new();
    let mut it = body.iter().copied();
    while let Some((ln, head)) = it.next() {
        let tok: Vec<&str> = head.split_whitespace().collect();
        let (n, diameter) = match tok[..] {
            ["n", n, "diameter", d] => (parse_num::<usize>(ln, n)?, parse_num::<BigUint>(ln, d)?),
            _ => return err(ln, "expected a block header `n <points> diameter <d>`"),
        };
        if n < 2 {
            return err(ln, "a cluster needs at least two points");
        }
        let mut next = |what: &str| it.next().map_or_else(|| err(ln, format!("block ends before {what}")), Ok);
        let (l2, first) = next("its data")?;
        if let Some(rest) = first.strip_prefix("coords") {
            let denom: BigInt = parse_num(l2, rest.trim())?;
            if !denom.is_positive() {
                return err(l2, "denominator must be positive");
            }
            let mut points = Vec::with_capacity(n);
            for k in 0..n {
                let (lp, p) = next(&format!("point {k}"))?;
                let v: Vec<BigInt> = p.split_whitespace().map(|t| parse_num(lp, t)).collect::<ParseResult<_>>()?;
                let [x, y] = <[BigInt; 2]>::try_from(v).or_else(|_| err(lp, "expected two integer coordinates"))?;
                points.push(CommonDenomPoint { x, y });
            }
            blocks.push(RawBlock::Coords { line: ln, n, diameter, set: CommonDenomSet { denom, points } });
        } else {
            let mut upper = Vec::with_capacity(n * (n - 1) / 2);
            let mut row = Some((l2, first));
            for i in 0..n - 1 {
                let (lr, r) = match row.take() {
                    Some(x) => x,
                    None => next(&format!("row {i}"))?,
                };
                let before = upper.len();
                for t in r.split_whitespace() {
                    upper.push(parse_num::<BigUint>(lr, t)?);
                }
                if upper.len() - before != n - 1 - i {
                    return err(lr, format!("row {i} needs {} distances", n - 1 - i));
                }
            }
            blocks.push(RawBlock::Distances { line: ln, n, diameter, upper });
        }
    }
    Ok(blocks)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClusterFile {
    pub header: Vec<String>,
    pub clusters: Vec<Cluster>,
}

impl ClusterFile {
    /// Header and blocks without checking that they describe point sets.
    pub fn parse_raw(text: &str) -> ParseResult<(Vec<String>, Vec<RawBlock>)> {
        let lines = split_lines(text);
        Ok((lines.header, parse_blocks(&lines.body)?))
    }

    pub fn parse(text: &str) -> ParseResult<Self> {
        let (header, blocks) = Self::parse_raw(text)?;
        let clusters = blocks.iter().map(RawBlock::to_cluster).collect::<ParseResult<_>>()?;
        Ok(ClusterFile { header, clusters })
    }

    /// Entries of a catalog in `(n, diameter, key)` order.
    pub fn from_catalog(header: Vec<String>, catalog: &Catalog) -> Self {
        let clusters = catalog.sorted().into_iter().map(|(_, c)| c.clone()).collect();
        ClusterFile { header, clusters }
    }

    pub fn write(&self, layout: ClusterLayout) -> Result<String, ncluster_core::Error> {
        let mut out = String::new();
        write_header(&mut out, &self.header);
        for (k, c) in self.clusters.iter().enumerate() {
            if k > 0 || !self.header.is_empty() {
                out.push('\n');
            }
            let n = c.len();
            let _ = writeln!(out, "n {n} diameter {}", c.diameter());
            match layout {
                ClusterLayout::Distances => {
                    for i in 0..n - 1 {
                        let row: Vec<String> = (i + 1..n).map(|j| c.distance(i, j).to_string()).collect();
                        let _ = writeln!(out, "{}", row.join(" "));
                    }
                }
                ClusterLayout::Coords => {
                    let set = c.coords()?;
                    let _ = writeln!(out, "coords {}", set.denom);
                    for p in &set.points {
                        let _ = writeln!(out, "{} {}", p.x, p.y);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// A triangle as a three-point cluster with `d₀₁ = a`, `d₀₂ = b`, `d₁₂ = c`.
pub fn triangle_cluster(t: &HeronTriangle) -> Cluster {
    Cluster::from_upper_rows(3, &[t.a, t.b, t.c].map(BigUint::from)).expect("a triangle is a valid 3-point set")
}

/// Reads either a cluster file or a triangle file, the latter as 3-clusters.
pub fn parse_cluster_or_triangle_file(text: &str) -> ParseResult<Vec<Cluster>> {
    let lines = split_lines(text);
    let is_cluster = lines.body.first().is_none_or(|(_, l)| l.starts_with("n "));
    if is_cluster {
        Ok(ClusterFile::parse(text)?.clusters)
    } else {
        Ok(TriangleFile::parse(text)?.triangles.iter().map(triangle_cluster).collect())
    }
}

// ------------------------------------------------------------ point sets

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PointFile {
    pub header: Vec<String>,
    pub sets: Vec<Vec<RationalPoint>>,
}

impl PointFile {
    /// Blocks `points <m>` followed by `m` lines `x_num/x_den y_num/y_den`.
    pub fn parse(text: &str) -> ParseResult<Self> {
        let lines = split_lines(text);
        let mut sets = Vec::new();
        let mut it = lines.body.into_iter();
        while let Some((ln, head)) = it.next() {
            let m: usize = match head.split_whitespace().collect::<Vec<_>>()[..] {
                ["points", m] => parse_num(ln, m)?,
                _ => return err(ln, "expected a block header `points <m>`"),
            };
            let mut set = Vec::with_capacity(m);
            for _ in 0..m {
                let Some((lp, p)) = it.next() else { return err(ln, "block ends early") };
                let v: Vec<BigRational> = p.split_whitespace().map(|t| parse_rational(lp, t)).collect::<ParseResult<_>>()?;
                let [x, y] = <[BigRational; 2]>::try_from(v).or_else(|_| err(lp, "expected two coordinates"))?;
                set.push(RationalPoint::new(x, y));
            }
            sets.push(set);
        }
        Ok(PointFile { header: lines.header, sets })
    }

    pub fn write(&self) -> String {
        let mut out = String::new();
        write_header(&mut out, &self.header);
        for (k, set) in self.sets.iter().enumerate() {
            if k > 0 || !self.header.is_empty() {
                out.push('\n');
            }
            let _ = writeln!(out, "points {}", set.len());
            for p in set {
                let _ = writeln!(out, "{} {}", format_rational(&p.x), format_rational(&p.y));
            }
        }
        out
    }
}

// ------------------------------------------------------------ candidates

/// A point at rational distance from the three vertices of a triangle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CandidateLine {
    pub point: RationalPoint,
    pub dist: [BigRational; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CandidateFile {
    pub header: Vec<String>,
    pub candidates: Vec<CandidateLine>,
}

impl CandidateFile {
    /// One `x y d_A d_B d_C` line per candidate, all rationals `num/den`.
    pub fn parse(text: &str) -> ParseResult<Self> {
        let lines = split_lines(text);
        let mut candidates = Vec::new();
        for (ln, line) in lines.body {
            let v: Vec<BigRational> = line.split_whitespace().map(|t| parse_rational(ln, t)).collect::<ParseResult<_>>()?;
            let [x, y, a, b, c] = <[BigRational; 5]>::try_from(v).or_else(|_| err(ln, "expected five rationals"))?;
            candidates.push(CandidateLine { point: RationalPoint::new(x, y), dist: [a, b, c] });
        }
        Ok(CandidateFile { header: lines.header, candidates })
    }

    pub fn write(&self) -> String {
        let mut out = String::new();
        write_header(&mut out, &self.header);
        for c in &self.candidates {
            let _ = writeln!(
                out,
                "{} {} {} {} {}",
                format_rational(&c.point.x),
                format_rational(&c.point.y),
                format_rational(&c.dist[0]),
                format_rational(&c.dist[1]),
                format_rational(&c.dist[2]),
            );
        }
        out
    }
}

// ----------------------------------------------------------------- stats

const STATS_COLUMNS: &str = "#  k  combinations  distance  concircular  collinear  successful  intersectable";

fn pct(s: &LevelStats, x: u64) -> String {
    format!("{:.2}%", s.percent(x))
}

/// The per-level table with percentages, followed by the raw counters as
/// `counts k attempts distance concircular collinear successful longest skipped`
/// lines. Only the counters are read back.
pub fn write_search_stats(header: &[String], stats: &SearchStats) -> String {
    let mut out = String::new();
    write_header(&mut out, header);
    out.push_str(STATS_COLUMNS);
    out.push('\n');
    for (k, s) in stats.levels() {
        let _ = writeln!(
            out,
            "# {k:>2} {:>13} {:>9} {:>12} {:>10} {:>11} {:>14}",
            s.attempts,
            pct(s, s.distance),
            pct(s, s.concircular),
            pct(s, s.collinear),
            pct(s, s.successful),
            s.longest_list
        );
    }
    for (k, s) in stats.levels() {
        let _ = writeln!(
            out,
            "counts {k} {} {} {} {} {} {} {}",
            s.attempts, s.distance, s.concircular, s.collinear, s.successful, s.longest_list, s.partition_skipped
        );
    }
    out
}

/// Reads the `counts` lines of a stats report.
pub fn parse_search_stats(text: &str) -> ParseResult<SearchStats> {
    let mut stats = SearchStats::new();
    for (ln, line) in split_lines(text).body {
        let tok: Vec<&str> = line.split_whitespace().collect();
        if tok.first() != Some(&"counts") || tok.len() != 9 {
            return err(ln, "expected `counts` followed by eight integers");
        }
        let v: Vec<u64> = tok[1..].iter().map(|t| parse_num(ln, t)).collect::<ParseResult<_>>()?;
        let s = stats.level_mut(v[0] as usize);
        *s = LevelStats {
            attempts: v[1],
            distance: v[2],
            concircular: v[3],
            collinear: v[4],
            successful: v[5],
            longest_list: v[6],
            partition_skipped: v[7],
        };
    }
    Ok(stats)
}

// ----------------------------------------------------------------- scores

pub fn method_name(m: ScoreMethod) -> &'static str {
    match m {
        ScoreMethod::NegDiameter => "neg-diameter",
        ScoreMethod::Score1 => "score1",
        ScoreMethod::Score2 => "score2",
        ScoreMethod::Frequency => "frequency",
        ScoreMethod::Ellipse => "ellipse",
    }
}

pub fn method_from_name(s: &str) -> Option<ScoreMethod> {
    [ScoreMethod::NegDiameter, ScoreMethod::Score1, ScoreMethod::Score2, ScoreMethod::Frequency, ScoreMethod::Ellipse]
        .into_iter()
        .find(|&m| method_name(m) == s)
}

/// Scores are written with six decimals.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScoreReport {
    pub header: Vec<String>,
    pub entries: Vec<ScoredTriangle>,
}

impl ScoreReport {
    /// Lines `a b c score`, then the method in a `method <name>` line first.
    pub fn parse(text: &str) -> ParseResult<Self> {
        let lines = split_lines(text);
        let mut body = lines.body.into_iter();
        let method = match body.next() {
            Some((ln, l)) => match l.strip_prefix("method ").and_then(method_from_name) {
                Some(m) => m,
                None => return err(ln, "expected `method <name>`"),
            },
            None => return Ok(ScoreReport { header: lines.header, entries: Vec::new() }),
        };
        let mut entries = Vec::new();
        for (ln, line) in body {
            let tok: Vec<&str> = line.split_whitespace().collect();
            let [a, b, c, s] = tok[..] else { return err(ln, "expected `a b c score`") };
            let (a, b, c) = (parse_num(ln, a)?, parse_num(ln, b)?, parse_num(ln, c)?);
            let score: f64 = s.parse().or_else(|_| err(ln, format!("bad score `{s}`")))?;
            let Some(triangle) = HeronTriangle::new(a, b, c) else {
                return err(ln, "not a Heronian triangle");
            };
            entries.push(ScoredTriangle { triangle, score, method });
        }
        Ok(ScoreReport { header: lines.header, entries })
    }

    pub fn write(&self) -> String {
        let mut out = String::new();
        write_header(&mut out, &self.header);
        if let Some(first) = self.entries.first() {
            let _ = writeln!(out, "method {}", method_name(first.method));
        }
        for e in &self.entries {
            let _ = writeln!(out, "{} {:.6}", e.triangle, e.score);
        }
        out
    }
}

// -------------------------------------------------------- catalog counts

/// Counts per point count, and cumulative counts per point count up to
/// each power of ten that bounds a diameter.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CatalogCounts {
    pub per_size: BTreeMap<usize, usize>,
    /// `(n, k) ↦` number of `n`-point entries with diameter at most `10^k`.
    pub up_to_decade: BTreeMap<(usize, u32), usize>,
}

/// Smallest `k` with `d ≤ 10^k`.
pub fn decade(d: &BigUint) -> u32 {
    let s = d.to_string();
    let exact_power = s.starts_with('1') && s[1..].bytes().all(|b| b == b'0');
    if exact_power { (s.len() - 1) as u32 } else { s.len() as u32 }
}

impl CatalogCounts {
    pub fn of<'a>(clusters: impl IntoIterator<Item = &'a Cluster>) -> Self {
        let mut per_decade: BTreeMap<usize, BTreeMap<u32, usize>> = BTreeMap::new();
        let mut per_size = BTreeMap::new();
        for c in clusters {
            *per_size.entry(c.len()).or_insert(0) += 1;
            *per_decade.entry(c.len()).or_default().entry(decade(c.diameter())).or_insert(0) += 1;
        }
        let mut up_to_decade = BTreeMap::new();
        for (n, m) in per_decade {
            let (lo, hi) = (*m.keys().next().expect("nonempty"), *m.keys().next_back().expect("nonempty"));
            let mut acc = 0;
            for k in lo..=hi {
                acc += m.get(&k).copied().unwrap_or(0);
                up_to_decade.insert((n, k), acc);
            }
        }
        CatalogCounts { per_size, up_to_decade }
    }

    /// Lines `size <n> <count>` then `size <n> diameter<=10^<k> <count>`.
    pub fn lines(&self) -> Vec<String> {
        let mut v: Vec<String> = self.per_size.iter().map(|(n, c)| format!("size {n} {c}")).collect();
        v.extend(self.up_to_decade.iter().map(|((n, k), c)| format!("size {n} diameter<=10^{k} {c}")));
        v
    }

    pub fn write(&self, header: &[String]) -> String {
        let mut out = String::new();
        write_header(&mut out, header);
        for l in self.lines() {
            out.push_str(&l);
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> ParseResult<Self> {
        let mut counts = CatalogCounts::default();
        for (ln, line) in split_lines(text).body {
            match line.split_whitespace().collect::<Vec<_>>()[..] {
                ["size", n, c] => {
                    counts.per_size.insert(parse_num(ln, n)?, parse_num(ln, c)?);
                }
                ["size", n, d, c] => {
                    let Some(k) = d.strip_prefix("diameter<=10^") else { return err(ln, "expected `diameter<=10^k`") };
                    counts.up_to_decade.insert((parse_num(ln, n)?, parse_num(ln, k)?), parse_num(ln, c)?);
                }
                _ => return err(ln, "expected a `size` line"),
            }
        }
        Ok(counts)
    }
}

/// Header of a catalog file: the producing command line and its counts.
pub fn catalog_header(command: &str, catalog_clusters: &[Cluster]) -> Vec<String> {
    let mut lines = vec![format!("ncluster {} {command}", env!("CARGO_PKG_VERSION")), format!("entries {}", catalog_clusters.len())];
    lines.extend(CatalogCounts::of(catalog_clusters).lines());
    comment_lines(lines)
}
