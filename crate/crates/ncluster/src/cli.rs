//! The `ncluster` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ncluster_core::arith::SpfTable;
use ncluster_core::cluster::{verify_distances, verify_coords, VerifyReport};
use ncluster_core::fourth_point::{scan_parameters, Method, PlacedTriangle};
use ncluster_core::geometry::{circle_invert, rational_distance};
use ncluster_core::heron::{self, HeronTriangle};
use ncluster_core::scoring::{self, ScoreMethod, ScoredTriangle};
use ncluster_core::search::combine::CombineConfig;
use ncluster_core::search::exhaustive::{exhaustive_clusters, ExhaustiveOptions, ExhaustiveOutput};
use ncluster_core::search::extension::{strip_isosceles, ExtensionOptions};
use ncluster_core::{Catalog, Cluster, SearchStats};

use crate::error::CliError;
use crate::format::{
    catalog_header, comment_lines, parse_cluster_or_triangle_file, write_search_stats, CandidateFile, CandidateLine,
    CatalogCounts, ClusterFile, ClusterLayout, PointFile, RawBlock, ScoreReport, TriangleFile,
};
use crate::parallel::{self, Workers};

type CliResult<T = ()> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "ncluster", version, about = "Heronian triangles and n-clusters in exact arithmetic")]
pub struct Cli {
    /// Worker threads (default: $NCLUSTER_THREADS, else one per CPU).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// No progress messages on standard error.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate Heronian triangles up to a diameter.
    HeronGen(HeronGenArgs),
    /// Triangle extension over a triangle list.
    Extend(ExtendArgs),
    /// Combine two cluster lists along similar sub-clusters.
    Combine(CombineArgs),
    /// All clusters up to a diameter by orderly generation.
    Exhaustive(ExhaustiveArgs),
    /// Check every cluster of a file against the definition.
    Verify(VerifyArgs),
    /// Invert clusters in a circle around one of their points.
    Invert(InvertArgs),
    /// Points at rational distance from the vertices of a triangle.
    FourthPoint(FourthPointArgs),
    /// Score triangles and select the most promising ones.
    Score(ScoreArgs),
    /// Counts per size and diameter decade of a catalog.
    Stats(StatsArgs),
    /// Reduce clusters to primitive canonical form, dropping similar copies.
    Canonical(CanonicalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    /// Cubic loop over all side triples.
    Naive,
    /// Third sides from sums of two squares.
    ThirdSide,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Layout {
    Distances,
    Coords,
}

impl From<Layout> for ClusterLayout {
    fn from(l: Layout) -> Self {
        match l {
            Layout::Distances => ClusterLayout::Distances,
            Layout::Coords => ClusterLayout::Coords,
        }
    }
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file (default: standard output).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HeronGenArgs {
    #[arg(long)]
    pub max_diameter: u64,
    #[arg(long, value_enum, default_value = "third-side")]
    pub algorithm: Algorithm,
    /// Only triangles whose sides have no common factor.
    #[arg(long)]
    pub primitive_only: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ExtendArgs {
    /// Triangle file.
    pub triangles: PathBuf,
    /// Ignore the first N triangles of the file.
    #[arg(long, default_value_t = 0)]
    pub skip: usize,
    /// Use at most N triangles after the skipped ones.
    #[arg(long)]
    pub take: Option<usize>,
    #[arg(long)]
    pub strip_isosceles: bool,
    /// Try every pair of fourth points, even those sharing a line or circle.
    #[arg(long)]
    pub no_partition: bool,
    /// Pair each base with every partner, not only the later ones.
    #[arg(long)]
    pub all_partners: bool,
    #[arg(long, default_value_t = 6)]
    pub min_output: usize,
    /// Further rounds over the sub-triangles of the clusters found.
    #[arg(long, default_value_t = 0)]
    pub iterate: usize,
    #[arg(long, value_enum, default_value = "distances")]
    pub layout: Layout,
    /// Write the per-level statistics to this file.
    #[arg(long)]
    pub stats_out: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CombineArgs {
    /// Cluster or triangle file.
    pub list1: PathBuf,
    /// Cluster or triangle file.
    pub list2: PathBuf,
    /// Cluster size of the first list (default: taken from the file).
    #[arg(long)]
    pub n1: Option<usize>,
    /// Cluster size of the second list (default: taken from the file).
    #[arg(long)]
    pub n2: Option<usize>,
    /// Size of the shared sub-cluster.
    #[arg(short, default_value_t = 2)]
    pub c: usize,
    /// Use every non-similar sub-cluster of the first list, not only the largest.
    #[arg(long)]
    pub all_subclusters: bool,
    /// Smallest cluster reported (default: max(n1, n2) + 1).
    #[arg(long)]
    pub min_output: Option<usize>,
    #[arg(long, value_enum, default_value = "distances")]
    pub layout: Layout,
    #[arg(long)]
    pub stats_out: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ExhaustiveArgs {
    #[arg(long)]
    pub max_diameter: u64,
    #[arg(long)]
    pub n_target: usize,
    /// Smallest cluster written (default: n-target).
    #[arg(long)]
    pub min_output: Option<usize>,
    /// Write primitive similarity classes instead of all point sets.
    #[arg(long)]
    pub primitive: bool,
    /// Give up after this many candidate placements.
    #[arg(long)]
    pub max_candidates: Option<u64>,
    /// Keep non-canonical extensions too and rely on deduplication.
    #[arg(long)]
    pub no_orderly: bool,
    #[arg(long, value_enum, default_value = "distances")]
    pub layout: Layout,
    #[arg(long)]
    pub stats_out: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Cluster file.
    pub path: PathBuf,
}

#[derive(Debug, Args)]
pub struct InvertArgs {
    /// Cluster file.
    pub clusters: PathBuf,
    /// Index of the point used as centre.
    #[arg(long, default_value_t = 0)]
    pub center: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FourthMethod {
    Both,
    PythArctan,
    Ceva,
}

#[derive(Debug, Args)]
pub struct FourthPointArgs {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    /// Largest denominator of the parameters.
    #[arg(long, default_value_t = 8)]
    pub height: u64,
    #[arg(long, value_enum, default_value = "both")]
    pub method: FourthMethod,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScoreKind {
    NegDiameter,
    Score1,
    Score2,
    Frequency,
    Ellipse,
}

impl From<ScoreKind> for ScoreMethod {
    fn from(k: ScoreKind) -> Self {
        match k {
            ScoreKind::NegDiameter => ScoreMethod::NegDiameter,
            ScoreKind::Score1 => ScoreMethod::Score1,
            ScoreKind::Score2 => ScoreMethod::Score2,
            ScoreKind::Frequency => ScoreMethod::Frequency,
            ScoreKind::Ellipse => ScoreMethod::Ellipse,
        }
    }
}

#[derive(Debug, Args)]
pub struct ScoreArgs {
    /// Triangle file.
    pub triangles: PathBuf,
    #[arg(long, value_enum, default_value = "score2")]
    pub method: ScoreKind,
    /// Cluster file whose sub-triangles are counted (frequency method).
    #[arg(long)]
    pub clusters: Option<PathBuf>,
    /// Number of triangles written to --select-out.
    #[arg(long, default_value_t = 1000)]
    pub top: usize,
    /// Triangle file receiving the best --top triangles.
    #[arg(long)]
    pub select_out: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Cluster file.
    pub catalog: PathBuf,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CanonicalArgs {
    /// Cluster or triangle file.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "distances")]
    pub layout: Layout,
    #[command(flatten)]
    pub output: Output,
}

/// Parses `args` and runs the command. Returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli) -> CliResult {
    let ctx = Ctx { threads: cli.threads, quiet: cli.quiet };
    match cli.command {
        Command::HeronGen(a) => heron_gen(&ctx, a),
        Command::Extend(a) => extend(&ctx, a),
        Command::Combine(a) => combine(&ctx, a),
        Command::Exhaustive(a) => exhaustive(&ctx, a),
        Command::Verify(a) => verify(a),
        Command::Invert(a) => invert(a),
        Command::FourthPoint(a) => fourth_point(a),
        Command::Score(a) => score(a),
        Command::Stats(a) => stats(a),
        Command::Canonical(a) => canonical(a),
    }
}

struct Ctx {
    threads: Option<usize>,
    quiet: bool,
}

impl Ctx {
    fn workers(&self) -> CliResult<Workers> {
        Ok(Workers::new(self.threads).map_err(CliError::Usage)?.with_progress(!self.quiet))
    }

    fn note(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("{}", msg.as_ref());
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write_to(path: &Path, text: &str) -> CliResult {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn emit(out: &Output, text: &str) -> CliResult {
    match &out.out {
        Some(p) => write_to(p, text),
        None => {
            let mut s = std::io::stdout().lock();
            s.write_all(text.as_bytes())
                .and_then(|_| s.flush())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

fn parsed<T>(path: &Path, r: Result<T, crate::format::FormatError>) -> CliResult<T> {
    r.map_err(|source| CliError::Format { path: path.to_path_buf(), source })
}

fn read_triangles(path: &Path) -> CliResult<Vec<HeronTriangle>> {
    Ok(parsed(path, TriangleFile::parse(&read(path)?))?.triangles)
}

fn read_clusters(path: &Path) -> CliResult<Vec<Cluster>> {
    parsed(path, parse_cluster_or_triangle_file(&read(path)?))
}

fn write_catalog(out: &Output, command: &str, catalog: &Catalog, layout: Layout) -> CliResult {
    let clusters: Vec<Cluster> = catalog.sorted().into_iter().map(|(_, c)| c.clone()).collect();
    let header = catalog_header(command, &clusters);
    let file = ClusterFile { header, clusters };
    emit(out, &file.write(layout.into())?)
}

fn report_stats(ctx: &Ctx, stats: &SearchStats, path: Option<&Path>) -> CliResult {
    let text = write_search_stats(&[], stats);
    if !ctx.quiet {
        eprint!("{text}");
    }
    match path {
        Some(p) => write_to(p, &text),
        None => Ok(()),
    }
}

/// Primitive triangles up to `limit`, and all rescaled ones too unless
/// `primitive_only`.
pub fn triangles_up_to(w: &Workers, limit: u64, primitive_only: bool) -> CliResult<Vec<HeronTriangle>> {
    if limit < 2 {
        return Ok(Vec::new());
    }
    let table_limit = u32::try_from(limit).map_err(|_| CliError::Resource(format!("diameter {limit} exceeds the factor table range")))?;
    let table = SpfTable::new(table_limit)?;
    let prim = parallel::generate_primitive(w, limit, &table)?;
    Ok(if primitive_only { prim } else { heron::with_rescaled(&prim, limit) })
}

fn heron_gen(ctx: &Ctx, a: HeronGenArgs) -> CliResult {
    let start = Instant::now();
    let triangles = match a.algorithm {
        Algorithm::Naive => heron::generate_naive(a.max_diameter)
            .filter(|t| t.primitive || !a.primitive_only)
            .collect(),
        Algorithm::ThirdSide => triangles_up_to(&ctx.workers()?, a.max_diameter, a.primitive_only)?,
    };
    let alg = match a.algorithm {
        Algorithm::Naive => "naive",
        Algorithm::ThirdSide => "third-side",
    };
    let kind = if a.primitive_only { "primitive" } else { "all" };
    let header = comment_lines([format!(
        "heronian triangles a >= b >= c with a <= {}, {kind}, {alg}: {}",
        a.max_diameter,
        triangles.len()
    )]);
    ctx.note(format!("heron-gen: {} triangles in {:.2?}", triangles.len(), start.elapsed()));
    emit(&a.output, &TriangleFile::new(header, triangles).write())
}

fn extend(ctx: &Ctx, a: ExtendArgs) -> CliResult {
    let all = read_triangles(&a.triangles)?;
    let mut list: Vec<HeronTriangle> = all.into_iter().skip(a.skip).take(a.take.unwrap_or(usize::MAX)).collect();
    if a.strip_isosceles {
        list = strip_isosceles(&list);
    }
    let opts = ExtensionOptions { partition: !a.no_partition, min_output: a.min_output, all_partners: a.all_partners };
    if opts.min_output < 4 {
        return Err(CliError::Usage("--min-output must be at least 4".into()));
    }
    let w = ctx.workers()?;
    let start = Instant::now();
    let out = parallel::triangle_extension(&w, &list, &opts)?;
    ctx.note(format!("extend: {} bases, {} clusters in {:.2?}", list.len(), out.catalog.len(), start.elapsed()));
    let mut catalog = out.catalog;
    if a.iterate > 0 {
        let seed: Vec<Cluster> = catalog.clusters().cloned().collect();
        let it = parallel::iterate_extension(&w, &seed, &opts, a.iterate)?;
        ctx.note(format!("iterate: {} rounds, triangle counts {:?}, converged {}", it.rounds, it.trace, it.converged));
        catalog = it.catalog;
    }
    report_stats(ctx, &out.stats, a.stats_out.as_deref())?;
    let command = format!(
        "extend triangles={} strip_isosceles={} partition={} all_partners={} min_output={} iterate={}",
        list.len(),
        a.strip_isosceles,
        opts.partition,
        opts.all_partners,
        opts.min_output,
        a.iterate
    );
    write_catalog(&a.output, &command, &catalog, a.layout)
}

fn list_size(path: &Path, list: &[Cluster], given: Option<usize>) -> CliResult<usize> {
    let n = match (given, list.first()) {
        (Some(n), _) => n,
        (None, Some(c)) => c.len(),
        (None, None) => return Ok(0),
    };
    if let Some(c) = list.iter().find(|c| c.len() != n) {
        return Err(CliError::Usage(format!("{}: expected {n}-point clusters, found {} points", path.display(), c.len())));
    }
    Ok(n)
}

fn combine(ctx: &Ctx, a: CombineArgs) -> CliResult {
    let l1 = read_clusters(&a.list1)?;
    let l2 = read_clusters(&a.list2)?;
    let n1 = list_size(&a.list1, &l1, a.n1)?;
    let n2 = list_size(&a.list2, &l2, a.n2)?;
    let mut catalog = Catalog::new();
    let mut stats = SearchStats::new();
    let mut cfg_text = format!("n1={n1} n2={n2} c={}", a.c);
    if !l1.is_empty() && !l2.is_empty() {
        let mut cfg = CombineConfig::new(n1, n2, a.c)?;
        cfg.all_subclusters = a.all_subclusters;
        if let Some(m) = a.min_output {
            cfg.min_output = m;
        }
        cfg_text = format!("{cfg_text} all_subclusters={} min_output={}", cfg.all_subclusters, cfg.min_output);
        let start = Instant::now();
        let out = parallel::combine_lists(&ctx.workers()?, &l1, &l2, &cfg)?;
        ctx.note(format!("combine: {} x {} clusters, {} found in {:.2?}", l1.len(), l2.len(), out.catalog.len(), start.elapsed()));
        catalog = out.catalog;
        stats = out.stats;
    }
    report_stats(ctx, &stats, a.stats_out.as_deref())?;
    write_catalog(&a.output, &format!("combine {cfg_text}"), &catalog, a.layout)
}

fn exhaustive(ctx: &Ctx, a: ExhaustiveArgs) -> CliResult {
    let triangles = triangles_up_to(&ctx.workers()?.with_progress(false), a.max_diameter, false)?;
    let mut opts = ExhaustiveOptions::new(a.max_diameter, a.n_target);
    opts.max_candidates = a.max_candidates;
    opts.orderly = !a.no_orderly;
    let start = Instant::now();
    let (out, failure) = match exhaustive_clusters(&triangles, &opts) {
        Ok(out) => (out, None),
        Err(p) => {
            let msg = p.to_string();
            (p.completed, Some(msg))
        }
    };
    ctx.note(format!("exhaustive: {} triangles, finished in {:.2?}", triangles.len(), start.elapsed()));
    report_stats(ctx, &out.stats, a.stats_out.as_deref())?;
    let min = a.min_output.unwrap_or(a.n_target);
    let command = format!(
        "exhaustive max_diameter={} n_target={} min_output={min} primitive={}",
        a.max_diameter, a.n_target, a.primitive
    );
    let clusters = exhaustive_selection(&out, min, a.primitive);
    let header = catalog_header(&command, &clusters);
    emit(&a.output, &ClusterFile { header, clusters }.write(a.layout.into())?)?;
    match failure {
        Some(msg) => Err(CliError::Resource(msg)),
        None => Ok(()),
    }
}

/// Clusters of an exhaustive run with at least `min` points, either every
/// point set up to congruence or one primitive representative per
/// similarity class, ordered by size, diameter and canonical key.
pub fn exhaustive_selection(out: &ExhaustiveOutput, min: usize, primitive: bool) -> Vec<Cluster> {
    let mut catalog = Catalog::new();
    if primitive {
        catalog.extend(out.catalog.clusters().filter(|c| c.len() >= min));
        return catalog.sorted().into_iter().map(|(_, c)| c.clone()).collect();
    }
    let mut v: Vec<(usize, &num_bigint::BigUint, ncluster_core::CanonicalKey, &Cluster)> = out
        .levels
        .range(min..)
        .flat_map(|(_, cs)| cs.iter())
        .map(|c| (c.len(), c.diameter(), ncluster_core::cluster::canonical_form(c), c))
        .collect();
    v.sort_by(|x, y| (x.0, x.1, &x.2).cmp(&(y.0, y.1, &y.2)));
    v.into_iter().map(|(_, _, _, c)| c.clone()).collect()
}

fn failed_checks(r: &VerifyReport) -> Vec<&'static str> {
    let mut v = Vec::new();
    if !r.integral_distances {
        v.push("non-integral distance");
    }
    if !r.realizable {
        v.push("not realizable in the plane");
    }
    if !r.no_collinear_triple {
        v.push("collinear triple");
    }
    if !r.no_concircular_quadruple {
        v.push("concircular quadruple");
    }
    if !r.characteristic_one {
        v.push("characteristic is not 1");
    }
    v
}

/// Checks one block; coordinate blocks are checked on their points.
pub fn verify_block(block: &RawBlock) -> Result<VerifyReport, ncluster_core::Error> {
    match block {
        RawBlock::Distances { n, upper, .. } => {
            let c = Cluster::from_upper_rows(*n, upper)?;
            verify_distances(*n, &c.distance_matrix_rational())
        }
        RawBlock::Coords { set, .. } => verify_coords(&set.rational_points()),
    }
}

fn verify(a: VerifyArgs) -> CliResult {
    let (_, blocks) = parsed(&a.path, ClusterFile::parse_raw(&read(&a.path)?))?;
    let mut failures = 0;
    let mut report = String::new();
    for (k, b) in blocks.iter().enumerate() {
        let r = verify_block(b)?;
        let mut bad = failed_checks(&r);
        if r.integral_distances && b.to_cluster().is_err() {
            bad.push("stated diameter is wrong");
        }
        let verdict = if bad.is_empty() { "ok".to_string() } else { format!("FAIL: {}", bad.join(", ")) };
        report.push_str(&format!("cluster {k} (line {}, {} points): {verdict}\n", b.line(), r.points));
        if !bad.is_empty() {
            failures += 1;
        }
    }
    report.push_str(&format!("{} clusters, {failures} failed\n", blocks.len()));
    emit(&Output { out: None }, &report)?;
    if failures > 0 {
        return Err(CliError::Verification(format!("{failures} of {} clusters failed verification", blocks.len())));
    }
    Ok(())
}

fn invert(a: InvertArgs) -> CliResult {
    let clusters = read_clusters(&a.clusters)?;
    let mut sets = Vec::with_capacity(clusters.len());
    let mut irrational = 0;
    for c in &clusters {
        if a.center >= c.len() {
            return Err(CliError::Usage(format!("center {} out of range for a {}-point cluster", a.center, c.len())));
        }
        let pts = circle_invert(&c.coords()?.rational_points(), a.center)?;
        let all_rational = (0..pts.len()).all(|i| (0..i).all(|j| rational_distance(&pts[i], &pts[j]).is_some()));
        if !all_rational {
            irrational += 1;
        }
        sets.push(pts);
    }
    let header = comment_lines([format!("circle inversion around point {} of each cluster", a.center)]);
    emit(&a.output, &PointFile { header, sets }.write())?;
    if irrational > 0 {
        return Err(CliError::Verification(format!("{irrational} inverted sets have an irrational distance")));
    }
    Ok(())
}

fn fourth_point(a: FourthPointArgs) -> CliResult {
    let t = HeronTriangle::new(a.a, a.b, a.c)
        .ok_or_else(|| CliError::Usage(format!("({}, {}, {}) is not a Heronian triangle", a.a, a.b, a.c)))?;
    let placed = PlacedTriangle::from_heron(&t);
    let keep = |m: Method| match a.method {
        FourthMethod::Both => true,
        FourthMethod::PythArctan => m == Method::PythArctan,
        FourthMethod::Ceva => m == Method::Ceva,
    };
    let mut candidates: Vec<CandidateLine> = scan_parameters(&placed, a.height)
        .into_iter()
        .filter(|h| keep(h.method))
        .map(|h| CandidateLine { point: h.point, dist: h.dist })
        .collect();
    candidates.sort();
    candidates.dedup();
    let header = comment_lines([
        format!("triangle {t}: A = (0,0), B = ({},0), C = ({}, {})", placed.c, placed.x0, placed.y0),
        format!("parameter height <= {}; columns x y |PA| |PB| |PC|", a.height),
    ]);
    emit(&a.output, &CandidateFile { header, candidates }.write())
}

fn score(a: ScoreArgs) -> CliResult {
    let list = read_triangles(&a.triangles)?;
    let method: ScoreMethod = a.method.into();
    let mut scored = if method == ScoreMethod::Frequency {
        let Some(path) = &a.clusters else {
            return Err(CliError::Usage("the frequency method needs --clusters".into()));
        };
        let clusters = read_clusters(path)?;
        let freq: std::collections::BTreeMap<HeronTriangle, usize> = scoring::frequency_rank(&clusters)?.into_iter().collect();
        list.iter()
            .map(|t| ScoredTriangle {
                triangle: *t,
                score: freq.get(&t.primitive_form()).copied().unwrap_or(0) as f64,
                method,
            })
            .collect()
    } else {
        scoring::score_all(&list, method)?
    };
    scoring::sort_scores(&mut scored);
    if let Some(p) = &a.select_out {
        let top = scoring::select_top(&scored, a.top);
        let header = comment_lines([format!("best {} of {} triangles by {}", top.len(), list.len(), crate::format::method_name(method))]);
        write_to(p, &TriangleFile::new(header, top).write())?;
    }
    emit(&a.output, &ScoreReport { header: Vec::new(), entries: scored }.write())
}

fn stats(a: StatsArgs) -> CliResult {
    let clusters = parsed(&a.catalog, ClusterFile::parse(&read(&a.catalog)?))?.clusters;
    let counts = CatalogCounts::of(&clusters);
    let header = comment_lines([format!("{} entries", clusters.len())]);
    emit(&a.output, &counts.write(&header))
}

fn canonical(a: CanonicalArgs) -> CliResult {
    let clusters = read_clusters(&a.input)?;
    let mut catalog = Catalog::new();
    catalog.extend(&clusters);
    write_catalog(&a.output, "canonical", &catalog, a.layout)
}
