//! Combining two lists of clusters along a common sub-cluster.
//!
//! For `l₁ ∈ L₁` and `l₂ ∈ L₂` that contain similar `c`-point sub-clusters,
//! `l₂` is rescaled so the two copies are congruent and its coordinates are
//! laid over those of `l₁` with the shared points coinciding. The point
//! sets hidden in the union are then collected.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::extension::SearchOutput;
use super::{Catalog, Rejection, SearchStats};
use crate::cluster::{normalize_primitive, Cluster};
use crate::geometry::{
    cluster_coords, collinear, concircular_scaled, rational_distance, RationalPoint, ScaledPoint,
    SquaredDistanceMatrix,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CombineConfig {
    pub n1: usize,
    pub n2: usize,
    /// Size of the shared sub-cluster.
    pub c: usize,
    /// Use every non-similar `c`-subcluster of `l₁` instead of only the largest.
    pub all_subclusters: bool,
    /// Smallest point set reported.
    pub min_output: usize,
}

impl CombineConfig {
    pub fn new(n1: usize, n2: usize, c: usize) -> Result<Self> {
        if c < 2 || c >= n1.min(n2) {
            return Err(Error::Domain("shared sub-cluster size must satisfy 2 <= c < min(n1, n2)"));
        }
        Ok(CombineConfig { n1, n2, c, all_subclusters: false, min_output: n1.max(n2) + 1 })
    }

    /// `(n−1, 3, 2)`: glue a triangle onto an edge of each cluster.
    pub fn edge_join(n: usize) -> Result<Self> {
        Self::new(n - 1, 3, 2)
    }

    /// `(6, 6, 3)`: two 6-clusters sharing a triangle, nine points.
    pub fn hexagons() -> Self {
        Self::new(6, 6, 3).expect("valid parameters")
    }
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

pub(crate) fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

/// Permutations `σ` of `0..m` with `c(σi, σj) = c(i, j)`.
pub(crate) fn automorphisms(c: &Cluster) -> Vec<Vec<usize>> {
    let m = c.len();
    let idx: Vec<usize> = (0..m).collect();
    permutations(&idx)
        .into_iter()
        .filter(|s| (0..m).all(|i| (i + 1..m).all(|j| c.distance(s[i], s[j]) == c.distance(i, j))))
        .collect()
}

fn int(d: &num_bigint::BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(d.clone()))
}

/// The `c`-subsets of `l₁` to glue along: the one with the lexicographically
/// largest sorted distance list, or one per orbit under the symmetries of
/// `l₁`.
fn anchor_subsets(l1: &Cluster, c: usize, all: bool) -> Vec<Vec<usize>> {
    let subsets = combinations(l1.len(), c);
    if all {
        let autos = automorphisms(l1);
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        return subsets
            .into_iter()
            .filter(|s| {
                let orbit_min = autos
                    .iter()
                    .map(|a| {
                        let mut img: Vec<usize> = s.iter().map(|&i| a[i]).collect();
                        img.sort_unstable();
                        img
                    })
                    .min()
                    .expect("the identity is an automorphism");
                seen.insert(orbit_min)
            })
            .collect();
    }
    let profile = |s: &Vec<usize>| {
        let mut d: Vec<_> = combinations(s.len(), 2)
            .iter()
            .map(|p| l1.distance(s[p[0]], s[p[1]]).clone())
            .collect();
        d.sort_by(|x, y| y.cmp(x));
        d
    };
    let mut best: Option<(Vec<_>, Vec<usize>)> = None;
    for s in subsets {
        let p = profile(&s);
        if best.as_ref().is_none_or(|(bp, _)| p > *bp) {
            best = Some((p, s));
        }
    }
    best.into_iter().map(|(_, s)| s).collect()
}

/// Ratio `r` with `d₁(s_i, s_j) = r·d₂(t_i, t_j)` for all pairs, if any.
fn similarity_ratio(l1: &Cluster, s: &[usize], l2: &Cluster, t: &[usize]) -> Option<BigRational> {
    let r = BigRational::new(
        BigInt::from(l1.distance(s[0], s[1]).clone()),
        BigInt::from(l2.distance(t[0], t[1]).clone()),
    );
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if int(l1.distance(s[i], s[j])) != &r * int(l2.distance(t[i], t[j])) {
                return None;
            }
        }
    }
    Some(r)
}

/// Coordinates of `cl` with the points of `order` first, distances scaled by `r`.
fn coords_in_order(cl: &Cluster, order: &[usize], r: &BigRational) -> Result<Vec<RationalPoint>> {
    let n = order.len();
    let m = SquaredDistanceMatrix::from_distances(n, |i, j| int(cl.distance(order[i], order[j])) * r)?;
    Ok(cluster_coords(&m)?.rational_points())
}

fn completed(first: &[usize], n: usize) -> Vec<usize> {
    let mut order = first.to_vec();
    order.extend((0..n).filter(|i| !first.contains(i)));
    order
}

/// Distances and general-position data of one union of coordinates.
struct Union {
    pts: Vec<RationalPoint>,
    scaled: Vec<ScaledPoint>,
    /// `Some(d)` when rational.
    dist: Vec<Option<BigRational>>,
    /// Which side each point came from: 0 shared or first, 1 first only, 2 second only.
    origin: Vec<u8>,
}

impl Union {
    fn new(pts: Vec<RationalPoint>, origin: Vec<u8>) -> Union {
        let n = pts.len();
        let mut dist = vec![None; n * n];
        for i in 0..n {
            dist[i * n + i] = Some(BigRational::zero());
            for j in i + 1..n {
                let d = rational_distance(&pts[i], &pts[j]);
                dist[i * n + j] = d.clone();
                dist[j * n + i] = d;
            }
        }
        let scaled = pts.iter().map(ScaledPoint::from_rational).collect();
        Union { pts, scaled, dist, origin }
    }

    fn d(&self, i: usize, j: usize) -> Option<&BigRational> {
        self.dist[i * self.pts.len() + j].as_ref()
    }

    /// Why the whole union is not a cluster, checking distances first.
    fn verdict(&self) -> Option<Rejection> {
        let n = self.pts.len();
        if self.dist.iter().any(Option::is_none) {
            return Some(Rejection::Distance);
        }
        for q in combinations(n, 4) {
            let s = &self.scaled;
            if concircular_scaled(&s[q[0]], &s[q[1]], &s[q[2]], &s[q[3]]) {
                return Some(Rejection::Concircular);
            }
        }
        for t in combinations(n, 3) {
            if collinear(&self.pts[t[0]], &self.pts[t[1]], &self.pts[t[2]]) {
                return Some(Rejection::Collinear);
            }
        }
        None
    }

    fn fits(&self, chosen: &[usize], x: usize) -> bool {
        if chosen.iter().any(|&a| self.d(a, x).is_none()) {
            return false;
        }
        for (k, &a) in chosen.iter().enumerate() {
            for (l, &b) in chosen.iter().enumerate().skip(k + 1) {
                if collinear(&self.pts[a], &self.pts[b], &self.pts[x]) {
                    return false;
                }
                for &c in &chosen[l + 1..] {
                    let s = &self.scaled;
                    if concircular_scaled(&s[a], &s[b], &s[c], &s[x]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every sub-cluster with at least `min` points that uses a point from
    /// each side.
    fn subclusters(&self, min: usize, out: &mut Vec<Vec<usize>>) {
        fn go(u: &Union, next: usize, chosen: &mut Vec<usize>, min: usize, out: &mut Vec<Vec<usize>>) {
            if chosen.len() >= min
                && chosen.iter().any(|&i| u.origin[i] == 1)
                && chosen.iter().any(|&i| u.origin[i] == 2)
            {
                out.push(chosen.clone());
            }
            for x in next..u.pts.len() {
                if u.fits(chosen, x) {
                    chosen.push(x);
                    go(u, x + 1, chosen, min, out);
                    chosen.pop();
                }
            }
        }
        go(self, 0, &mut Vec::new(), min, out);
    }
}

/// Combines every cluster of `l1` with every cluster of `l2`.
pub fn combine_lists(l1: &[Cluster], l2: &[Cluster], cfg: &CombineConfig) -> Result<SearchOutput> {
    let mut out = SearchOutput::default();
    for a in l1 {
        out.merge(combine_one(a, l2, cfg)?);
    }
    Ok(out)
}

/// The unit of work of [`combine_lists`]: one cluster of the first list
/// against the whole second list.
pub fn combine_one(l1: &Cluster, l2: &[Cluster], cfg: &CombineConfig) -> Result<SearchOutput> {
    if l1.len() != cfg.n1 {
        return Err(Error::Domain("first-list cluster has the wrong size"));
    }
    let mut catalog = Catalog::new();
    let mut stats = SearchStats::new();
    let level = cfg.n1.max(cfg.n2);
    for s in anchor_subsets(l1, cfg.c, cfg.all_subclusters) {
        let order1 = completed(&s, l1.len());
        let base = coords_in_order(l1, &order1, &BigRational::one())?;
        for b in l2 {
            if b.len() != cfg.n2 {
                return Err(Error::Domain("second-list cluster has the wrong size"));
            }
            for sub in combinations(b.len(), cfg.c) {
                for t in permutations(&sub) {
                    let Some(r) = similarity_ratio(l1, &s, b, &t) else { continue };
                    let order2 = completed(&t, b.len());
                    let other = coords_in_order(b, &order2, &r)?;
                    let mirrors: &[bool] = if cfg.c == 2 { &[false, true] } else { &[false] };
                    for &mirror in mirrors {
                        let mut pts = base.clone();
                        let mut origin: Vec<u8> = (0..pts.len()).map(|i| if i < cfg.c { 0 } else { 1 }).collect();
                        for p in &other[cfg.c..] {
                            let p = if mirror { RationalPoint::new(p.x.clone(), -p.y.clone()) } else { p.clone() };
                            if !pts.contains(&p) {
                                pts.push(p);
                                origin.push(2);
                            }
                        }
                        let u = Union::new(pts, origin);
                        stats.level_mut(level).record(u.verdict());
                        let mut sets = Vec::new();
                        u.subclusters(cfg.min_output, &mut sets);
                        for set in sets {
                            let (c, _) = normalize_primitive(set.len(), |i, j| {
                                u.d(set[i], set[j]).cloned().expect("chosen sets have rational distances")
                            })?;
                            catalog.insert(&c);
                        }
                    }
                }
            }
        }
    }
    Ok(SearchOutput { catalog, stats })
}
