//! Triangle extension: grow clusters around a base triangle by gluing
//! rescaled copies of other Heronian triangles onto its edges.
//!
//! For a base `P₁P₂P₃` every partner triangle is attached to every base
//! edge in every side assignment and on both sides of the edge. The apex
//! `p` is then at rational distance from the two edge endpoints by
//! construction, and only the distance to the opposite vertex needs a
//! square test. Points that pass, together with the base, form 4-clusters;
//! sets of them are grown one point at a time, joining two sets that share
//! all but their last point.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Catalog, Rejection, SearchStats};
use crate::arith::{is_perfect_square, is_perfect_square_u128};
use crate::cluster::{normalize_primitive, sub_triangles, Cluster};
use crate::geometry::{collinear_scaled, concircular_scaled, triangle_coords, RationalPoint, ScaledPoint};
use crate::heron::{big, HeronTriangle};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtensionOptions {
    /// Skip pairs of fourth points that share a line through a base vertex
    /// or a circle through two base vertices.
    pub partition: bool,
    /// Smallest cluster reported, counting the three base points.
    pub min_output: usize,
    /// Pair base `i` with every partner instead of only `j ≥ i`.
    pub all_partners: bool,
}

impl Default for ExtensionOptions {
    fn default() -> Self {
        ExtensionOptions { partition: true, min_output: 6, all_partners: false }
    }
}

/// A point forming a 4-cluster with the base triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourthPoint {
    pub point: ScaledPoint,
    /// Distances to `P₁`, `P₂`, `P₃`.
    pub dist: [BigRational; 3],
}

/// Base triangle in position `P₁ = (0,0)`, `P₂ = (a,0)`, `P₃` above the axis,
/// with integer numerators over `2a`.
struct Base {
    sides: [u64; 3],
    num: [(BigInt, BigInt); 3],
    small: Option<[(i128, i128); 3]>,
    den: BigInt,
    verts: [ScaledPoint; 3],
}

/// Base edges `(U, V, W, |UV|)` with `W` the opposite vertex.
const EDGES: [(usize, usize, usize, usize); 3] = [(0, 1, 2, 0), (1, 2, 0, 2), (2, 0, 1, 1)];

impl Base {
    fn new(t: &HeronTriangle) -> Result<Base> {
        let tc = triangle_coords(t.a, t.b, t.c)?;
        let a = big(t.a);
        let den = &a + &a;
        let num = [
            (BigInt::zero(), BigInt::zero()),
            (&den * &a, BigInt::zero()),
            (tc.t1.clone(), tc.t2.clone()),
        ];
        let small = (|| {
            let mut s = [(0i128, 0i128); 3];
            for (k, (x, y)) in num.iter().enumerate() {
                s[k] = (i128::try_from(x).ok()?, i128::try_from(y).ok()?);
            }
            Some(s)
        })();
        let verts = [
            ScaledPoint::new(BigInt::zero(), BigInt::zero(), 1.into()),
            ScaledPoint::new(a.clone(), BigInt::zero(), 1.into()),
            ScaledPoint::new(tc.t1, tc.t2, den.clone()),
        ];
        Ok(Base { sides: [t.a, t.b, t.c], num, small, den, verts })
    }

    /// `|P_i P_j|`.
    fn side(&self, i: usize, j: usize) -> u64 {
        match (i.min(j), i.max(j)) {
            (0, 1) => self.sides[0],
            (0, 2) => self.sides[1],
            _ => self.sides[2],
        }
    }
}

/// One way of laying a partner on an edge: `e` on the edge, `x` at `U`,
/// `y` at `V`. `sp = x²−y²+e²`, `hp = 4·area`, `e2 = 2e²`.
struct Arrangement {
    e: u64,
    x: u64,
    y: u64,
    sp: BigInt,
    hp: BigInt,
    e2: BigInt,
    small: Option<(i128, i128, i128)>,
}

fn arrangements(t: &HeronTriangle) -> [Arrangement; 6] {
    let (a, b, c) = t.sides();
    let hp: BigInt = BigInt::from(t.area) * 4u32;
    let mk = |e: u64, x: u64, y: u64| {
        let (eb, xb, yb) = (big(e), big(x), big(y));
        let sp = &xb * &xb - &yb * &yb + &eb * &eb;
        let e2 = &eb * &eb * 2;
        let small = (|| Some((i128::try_from(&sp).ok()?, i128::try_from(&hp).ok()?, i128::try_from(&e2).ok()?)))();
        Arrangement { e, x, y, sp, hp: hp.clone(), e2, small }
    };
    [mk(a, b, c), mk(a, c, b), mk(b, a, c), mk(b, c, a), mk(c, a, b), mk(c, b, a)]
}

fn small_radicand(d: (i128, i128), o: (i128, i128), sp: i128, hp: i128, e2: i128) -> Option<i128> {
    let x = sp
        .checked_mul(d.0)?
        .checked_sub(hp.checked_mul(d.1)?)?
        .checked_sub(e2.checked_mul(o.0)?)?;
    let y = sp
        .checked_mul(d.1)?
        .checked_add(hp.checked_mul(d.0)?)?
        .checked_sub(e2.checked_mul(o.1)?)?;
    x.checked_mul(x)?.checked_add(y.checked_mul(y)?)
}

/// Integer square root of the radicand of `|Wp|`, `None` if irrational,
/// `Some(0)` if `p = W`.
fn opposite_root(base: &Base, u: usize, v: usize, w: usize, arr: &Arrangement, sign: i32) -> Option<BigInt> {
    if let (Some(s), Some((sp, hp, e2))) = (base.small, arr.small) {
        let d = (s[v].0 - s[u].0, s[v].1 - s[u].1);
        let o = (s[w].0 - s[u].0, s[w].1 - s[u].1);
        let hp = if sign < 0 { -hp } else { hp };
        if let Some(r) = small_radicand(d, o, sp, hp, e2) {
            return is_perfect_square_u128(r as u128).map(BigInt::from);
        }
    }
    let n = &base.num;
    let d = (&n[v].0 - &n[u].0, &n[v].1 - &n[u].1);
    let o = (&n[w].0 - &n[u].0, &n[w].1 - &n[u].1);
    let hp = if sign < 0 { -&arr.hp } else { arr.hp.clone() };
    let x = &arr.sp * &d.0 - &hp * &d.1 - &arr.e2 * &o.0;
    let y = &arr.sp * &d.1 + &hp * &d.0 - &arr.e2 * &o.1;
    is_perfect_square(&(&x * &x + &y * &y).to_biguint()?).map(BigInt::from)
}

fn apex(base: &Base, u: usize, v: usize, arr: &Arrangement, sign: i32) -> ScaledPoint {
    let n = &base.num;
    let d = (&n[v].0 - &n[u].0, &n[v].1 - &n[u].1);
    let hp = if sign < 0 { -&arr.hp } else { arr.hp.clone() };
    let x = &arr.e2 * &n[u].0 + &arr.sp * &d.0 - &hp * &d.1;
    let y = &arr.e2 * &n[u].1 + &arr.sp * &d.1 + &hp * &d.0;
    ScaledPoint::new(x, y, &base.den * &arr.e2)
}

fn general_position_with_base(p: &ScaledPoint, v: &[ScaledPoint; 3]) -> Option<Rejection> {
    if concircular_scaled(&v[0], &v[1], &v[2], p) {
        return Some(Rejection::Concircular);
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if collinear_scaled(&v[i], &v[j], p) {
            return Some(Rejection::Collinear);
        }
    }
    None
}

/// All points forming a 4-cluster with `list[i]`, deduplicated by exact
/// coordinates and sorted. Placement outcomes are recorded at level 3.
pub fn fourth_points(list: &[HeronTriangle], i: usize, opts: &ExtensionOptions, stats: &mut SearchStats) -> Result<Vec<FourthPoint>> {
    let base = Base::new(&list[i])?;
    let start = if opts.all_partners { 0 } else { i };
    let mut found: BTreeMap<ScaledPoint, [BigRational; 3]> = BTreeMap::new();
    let st = stats.level_mut(3);
    for partner in &list[start..] {
        for arr in &arrangements(partner) {
            for &(u, v, w, side) in &EDGES {
                let e = base.sides[side];
                for sign in [1, -1] {
                    let root = match opposite_root(&base, u, v, w, arr, sign) {
                        None => {
                            st.record(Some(Rejection::Distance));
                            continue;
                        }
                        Some(r) if r.is_zero() => continue,
                        Some(r) => r,
                    };
                    let p = apex(&base, u, v, arr, sign);
                    let outcome = general_position_with_base(&p, &base.verts);
                    st.record(outcome);
                    if outcome.is_some() || found.contains_key(&p) {
                        continue;
                    }
                    let mut dist: [BigRational; 3] = Default::default();
                    dist[u] = BigRational::new(big(e) * big(arr.x), big(arr.e));
                    dist[v] = BigRational::new(big(e) * big(arr.y), big(arr.e));
                    dist[w] = BigRational::new(root, &base.den * &arr.e2);
                    found.insert(p, dist);
                }
            }
        }
    }
    st.observe_list(found.len());
    Ok(found.into_iter().map(|(point, dist)| FourthPoint { point, dist }).collect())
}

/// What makes a group of fourth points pairwise incompatible.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum PartKey {
    /// Line through base vertex `P_i` with reduced direction `(dx, dy)`.
    Line(usize, BigInt, BigInt),
    /// Circle through base vertices `P_i`, `P_j` with the given center.
    Circle(usize, usize, ScaledPoint),
}

/// Groups of fourth points sharing a line or circle with the base; no two
/// points of one group can both belong to a cluster containing the base.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Partition {
    pub parts: BTreeMap<PartKey, Vec<usize>>,
}

impl Partition {
    /// `n × n` table marking pairs that share some part.
    pub fn conflicts(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n * n];
        for members in self.parts.values() {
            for (k, &a) in members.iter().enumerate() {
                for &b in &members[k + 1..] {
                    m[a * n + b] = true;
                    m[b * n + a] = true;
                }
            }
        }
        m
    }
}

fn circumcenter(a: &RationalPoint, b: &RationalPoint, c: &RationalPoint) -> Option<RationalPoint> {
    let d = ((&a.x * (&b.y - &c.y)) + (&b.x * (&c.y - &a.y)) + (&c.x * (&a.y - &b.y))) * BigInt::from(2);
    if d.is_zero() {
        return None;
    }
    let (na, nb, nc) = (
        &a.x * &a.x + &a.y * &a.y,
        &b.x * &b.x + &b.y * &b.y,
        &c.x * &c.x + &c.y * &c.y,
    );
    let x = (&na * (&b.y - &c.y) + &nb * (&c.y - &a.y) + &nc * (&a.y - &b.y)) / &d;
    let y = (&na * (&c.x - &b.x) + &nb * (&a.x - &c.x) + &nc * (&b.x - &a.x)) / &d;
    Some(RationalPoint::new(x, y))
}

/// Partitions `points` by the lines through one base vertex and the
/// circles through two base vertices that contain them.
pub fn partition_fourth_points(base: &HeronTriangle, points: &[FourthPoint]) -> Result<Partition> {
    let verts = Base::new(base)?.verts;
    let rverts = verts.clone().map(|v| v.to_rational());
    let mut parts: BTreeMap<PartKey, Vec<usize>> = BTreeMap::new();
    for (idx, fp) in points.iter().enumerate() {
        let p = &fp.point;
        for (k, x) in verts.iter().enumerate() {
            let mut dx = &p.x * &x.w - &x.x * &p.w;
            let mut dy = &p.y * &x.w - &x.y * &p.w;
            let g = dx.gcd(&dy);
            if g.is_zero() {
                continue;
            }
            dx /= &g;
            dy /= &g;
            if dx.is_negative() || (dx.is_zero() && dy.is_negative()) {
                dx = -dx;
                dy = -dy;
            }
            parts.entry(PartKey::Line(k, dx, dy)).or_default().push(idx);
        }
        let rp = p.to_rational();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if let Some(c) = circumcenter(&rverts[i], &rverts[j], &rp) {
                parts
                    .entry(PartKey::Circle(i, j, ScaledPoint::from_rational(&c)))
                    .or_default()
                    .push(idx);
            }
        }
    }
    Ok(Partition { parts })
}

enum PairState {
    Compatible(BigRational),
    Rejected(Rejection),
    Skipped,
}

fn check_pair(p: &ScaledPoint, q: &ScaledPoint, verts: &[ScaledPoint; 3]) -> core::result::Result<BigRational, Rejection> {
    let d = p.distance(q).ok_or(Rejection::Distance)?;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if concircular_scaled(p, q, &verts[i], &verts[j]) {
            return Err(Rejection::Concircular);
        }
    }
    if verts.iter().any(|x| collinear_scaled(p, q, x)) {
        return Err(Rejection::Collinear);
    }
    Ok(d)
}

/// Conditions involving both new points and at least one earlier point.
fn check_join(prefix: &[usize], a: usize, b: usize, pts: &[FourthPoint], verts: &[ScaledPoint; 3]) -> Option<Rejection> {
    let (p, q) = (&pts[a].point, &pts[b].point);
    for (k, &s) in prefix.iter().enumerate() {
        let s = &pts[s].point;
        if verts.iter().any(|x| concircular_scaled(p, q, s, x)) {
            return Some(Rejection::Concircular);
        }
        if prefix[k + 1..].iter().any(|&t| concircular_scaled(p, q, s, &pts[t].point)) {
            return Some(Rejection::Concircular);
        }
    }
    if prefix.iter().any(|&s| collinear_scaled(p, q, &pts[s].point)) {
        return Some(Rejection::Collinear);
    }
    None
}

/// Result of one search run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchOutput {
    pub catalog: Catalog,
    pub stats: SearchStats,
}

impl SearchOutput {
    pub fn merge(&mut self, other: SearchOutput) {
        self.catalog.merge(other.catalog);
        self.stats.merge(&other.stats);
    }
}

/// The unit of work of [`triangle_extension`]: everything found with
/// `list[i]` as the base triangle.
pub fn extend_base(list: &[HeronTriangle], i: usize, opts: &ExtensionOptions) -> Result<SearchOutput> {
    let mut stats = SearchStats::new();
    let pts = fourth_points(list, i, opts, &mut stats)?;
    let base = Base::new(&list[i])?;
    let n = pts.len();
    let conflicts = if opts.partition {
        partition_fourth_points(&list[i], &pts)?.conflicts(n)
    } else {
        vec![false; n * n]
    };
    let mut pairs: Vec<Option<PairState>> = (0..n * n).map(|_| None).collect();
    for a in 0..n {
        for b in a + 1..n {
            pairs[a * n + b] = Some(if conflicts[a * n + b] {
                PairState::Skipped
            } else {
                match check_pair(&pts[a].point, &pts[b].point, &base.verts) {
                    Ok(d) => PairState::Compatible(d),
                    Err(r) => PairState::Rejected(r),
                }
            });
        }
    }

    let mut catalog = Catalog::new();
    let mut level: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
    let mut m = 1;
    while !level.is_empty() {
        if 3 + m >= opts.min_output {
            for set in &level {
                catalog.insert(&assemble(&base, &pts, &pairs, n, set)?);
            }
        }
        let st = stats.level_mut(3 + m);
        let mut next = Vec::new();
        let mut start = 0;
        while start < level.len() {
            let prefix = &level[start][..m - 1];
            let end = start + level[start..].iter().take_while(|s| s[..m - 1] == *prefix).count();
            st.observe_list(end - start);
            for x in start..end {
                for y in x + 1..end {
                    let (a, b) = (level[x][m - 1], level[y][m - 1]);
                    match pairs[a * n + b].as_ref().expect("a < b") {
                        PairState::Skipped => st.partition_skipped += 1,
                        PairState::Rejected(r) => st.record(Some(*r)),
                        PairState::Compatible(_) => {
                            let outcome = check_join(prefix, a, b, &pts, &base.verts);
                            st.record(outcome);
                            if outcome.is_none() {
                                let mut set = level[x].clone();
                                set.push(b);
                                next.push(set);
                            }
                        }
                    }
                }
            }
            start = end;
        }
        level = next;
        m += 1;
    }
    Ok(SearchOutput { catalog, stats })
}

fn assemble(base: &Base, pts: &[FourthPoint], pairs: &[Option<PairState>], n: usize, set: &[usize]) -> Result<Cluster> {
    let d = |i: usize, j: usize| -> BigRational {
        if i == j {
            return BigRational::zero();
        }
        match (i < 3, j < 3) {
            (true, true) => BigRational::from_integer(big(base.side(i, j))),
            (true, false) => pts[set[j - 3]].dist[i].clone(),
            (false, true) => pts[set[i - 3]].dist[j].clone(),
            (false, false) => {
                let (a, b) = (set[i - 3].min(set[j - 3]), set[i - 3].max(set[j - 3]));
                match &pairs[a * n + b] {
                    Some(PairState::Compatible(d)) => d.clone(),
                    _ => unreachable!("grown sets only contain compatible pairs"),
                }
            }
        }
    };
    Ok(normalize_primitive(3 + set.len(), d)?.0)
}

/// Algorithm over a whole sorted triangle list, one base after another.
pub fn triangle_extension(list: &[HeronTriangle], opts: &ExtensionOptions) -> Result<SearchOutput> {
    let mut out = SearchOutput::default();
    for i in 0..list.len() {
        out.merge(extend_base(list, i, opts)?);
    }
    Ok(out)
}

/// Drops every triangle with two equal sides.
pub fn strip_isosceles(list: &[HeronTriangle]) -> Vec<HeronTriangle> {
    list.iter().filter(|t| !t.is_isosceles()).copied().collect()
}

/// Fixed-point iteration of extension over the sub-triangles of the
/// clusters found so far.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Iteration {
    pub catalog: Catalog,
    /// Size of the triangle set before each round and after the last one.
    pub trace: Vec<usize>,
    pub rounds: usize,
    /// Whether the triangle set stopped changing within the round limit.
    pub converged: bool,
}

fn triangle_set(catalog: &Catalog) -> Result<Vec<HeronTriangle>> {
    let mut set = BTreeSet::new();
    for c in catalog.clusters() {
        set.extend(sub_triangles(c)?);
    }
    Ok(set.into_iter().collect())
}

/// Iterates with a caller-supplied extension runner, so the driver can
/// parallelize each round.
pub fn iterate_extension_with<F>(seed: &[Cluster], max_rounds: usize, mut run: F) -> Result<Iteration>
where
    F: FnMut(&[HeronTriangle]) -> Result<SearchOutput>,
{
    let mut catalog = Catalog::new();
    catalog.extend(seed);
    let mut triangles = triangle_set(&catalog)?;
    let mut it = Iteration { trace: vec![triangles.len()], ..Iteration::default() };
    if triangles.is_empty() {
        it.converged = true;
        it.catalog = catalog;
        return Ok(it);
    }
    while it.rounds < max_rounds {
        catalog.merge(run(&triangles)?.catalog);
        it.rounds += 1;
        let next = triangle_set(&catalog)?;
        it.trace.push(next.len());
        if next == triangles {
            it.converged = true;
            break;
        }
        triangles = next;
    }
    it.catalog = catalog;
    Ok(it)
}

pub fn iterate_extension(seed: &[Cluster], opts: &ExtensionOptions, max_rounds: usize) -> Result<Iteration> {
    iterate_extension_with(seed, max_rounds, |t| triangle_extension(t, opts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: u64, b: u64, c: u64) -> HeronTriangle {
        HeronTriangle::new(a, b, c).unwrap()
    }

    #[test]
    fn fourth_points_have_the_stated_distances() {
        let list = [t(5, 4, 3), t(6, 5, 5), t(13, 12, 5), t(15, 13, 4)];
        let mut stats = SearchStats::new();
        for i in 0..list.len() {
            let base = Base::new(&list[i]).unwrap();
            for fp in fourth_points(&list, i, &ExtensionOptions::default(), &mut stats).unwrap() {
                for k in 0..3 {
                    assert_eq!(fp.point.distance(&base.verts[k]).as_ref(), Some(&fp.dist[k]));
                }
            }
        }
        assert!(stats.is_consistent());
        assert!(stats.level(3).unwrap().successful > 0);
    }

    #[test]
    fn single_triangle_gives_no_output() {
        let out = triangle_extension(&[t(5, 4, 3)], &ExtensionOptions::default()).unwrap();
        assert!(out.catalog.is_empty());
        // 36 placements, three of which put the copy back onto the base itself
        let s = out.stats.level(3).unwrap();
        assert_eq!(s.attempts, 33);
    }

    #[test]
    fn mirrored_apexes_on_circumcircle_share_a_part() {
        let base = t(5, 4, 3);
        // any circle through P₁ = (0,0) and P₂ = (5,0) is symmetric about x = 5/2
        let mk = |x: i64, y: i64| FourthPoint {
            point: ScaledPoint::from_rational(&RationalPoint::from_ints(x, y)),
            dist: Default::default(),
        };
        let pts = [mk(1, 7), mk(4, 7), mk(2, -9)];
        let part = partition_fourth_points(&base, &pts).unwrap();
        assert!(part.parts.iter().any(|(k, m)| matches!(k, PartKey::Circle(0, 1, _)) && m == &vec![0, 1]));
        assert!(!part.conflicts(3)[2]);
    }

    #[test]
    fn iteration_of_empty_seed_is_empty() {
        let it = iterate_extension(&[], &ExtensionOptions::default(), 5).unwrap();
        assert_eq!(it.rounds, 0);
        assert!(it.catalog.is_empty());
    }

    #[test]
    fn strip_isosceles_keeps_scalene() {
        assert_eq!(strip_isosceles(&[t(6, 5, 5), t(5, 4, 3)]), vec![t(5, 4, 3)]);
        assert!(strip_isosceles(&[]).is_empty());
    }
}
