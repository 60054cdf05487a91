//! Exhaustive orderly generation of all clusters up to a diameter bound.
//!
//! Level `k+1` is built from pairs of `k`-clusters sharing a `(k−1)`-point
//! sub-cluster: the extra point of one is placed into the frame of the
//! other. Only canonical representatives are combined, and a result is
//! accepted only when the added point is the canonically last one (up to
//! symmetry), so each congruence class arises from one construction path
//! and duplicates are rare.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::combine::{automorphisms, combinations};
use super::{Catalog, Rejection, SearchStats};
use crate::cluster::{canonical_form, canonical_labeling, CanonicalKey, Cluster};
use crate::geometry::{collinear, concircular_scaled, rational_sqrt, RationalPoint, ScaledPoint};
use crate::heron::HeronTriangle;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustiveOptions {
    pub max_diameter: u64,
    pub n_target: usize,
    /// Abort after this many candidate placements.
    pub max_candidates: Option<u64>,
    /// Accept only canonical extensions. Turning this off keeps every
    /// extension and relies on deduplication alone.
    pub orderly: bool,
}

impl ExhaustiveOptions {
    pub fn new(max_diameter: u64, n_target: usize) -> Self {
        ExhaustiveOptions { max_diameter, n_target, max_candidates: None, orderly: true }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExhaustiveOutput {
    /// Congruence classes per point count, in canonical labeling.
    pub levels: BTreeMap<usize, Vec<Cluster>>,
    /// Primitive similarity classes over all levels.
    pub catalog: Catalog,
    pub stats: SearchStats,
}

/// A run that stopped early, with every level it completed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialResult {
    pub completed: ExhaustiveOutput,
    pub cause: Error,
}

impl core::fmt::Display for PartialResult {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let done = self.completed.levels.keys().next_back().copied().unwrap_or(0);
        write!(f, "stopped after level {done}: {}", self.cause)
    }
}

fn int(d: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(d.clone()))
}

/// Point at distance `r0` from `s0` and `r1` from `s1`, both candidates.
fn intersect(s0: &RationalPoint, s1: &RationalPoint, r0: &BigRational, r1: &BigRational) -> Option<[RationalPoint; 2]> {
    let dx = &s1.x - &s0.x;
    let dy = &s1.y - &s0.y;
    let l2 = &dx * &dx + &dy * &dy;
    let two = BigRational::from_integer(2.into());
    let t = (r0 * r0 - r1 * r1 + &l2) / (&two * &l2);
    let h2 = (r0 * r0 - &t * &t * &l2) / &l2;
    let h = rational_sqrt(&h2)?;
    let bx = &s0.x + &t * &dx;
    let by = &s0.y + &t * &dy;
    Some([
        RationalPoint::new(&bx - &h * &dy, &by + &h * &dx),
        RationalPoint::new(&bx + &h * &dy, &by - &h * &dx),
    ])
}

struct Entry {
    cluster: usize,
    removed: usize,
    /// Canonical position `i` of the sub-cluster is point `labels[i]`.
    labels: Vec<usize>,
}

fn level_three(triangles: &[HeronTriangle], max_diameter: u64) -> Vec<Cluster> {
    let mut m: BTreeMap<CanonicalKey, Cluster> = BTreeMap::new();
    for t in triangles.iter().filter(|t| t.a <= max_diameter) {
        let c = Cluster::from_upper_rows(3, &[t.a, t.b, t.c].map(BigUint::from)).expect("valid triangle");
        let (key, perm) = canonical_labeling(&c);
        m.entry(key).or_insert_with(|| c.permuted(&perm));
    }
    m.into_values().collect()
}

/// Builds all `k`-clusters for `3 ≤ k ≤ n_target` with diameter at most
/// `max_diameter`, from the complete list of Heronian triangles (primitive
/// and rescaled) up to that diameter.
pub fn exhaustive_clusters(triangles: &[HeronTriangle], opts: &ExhaustiveOptions) -> core::result::Result<ExhaustiveOutput, PartialResult> {
    let mut out = ExhaustiveOutput::default();
    if opts.n_target < 3 {
        return Ok(out);
    }
    let mut current = level_three(triangles, opts.max_diameter);
    let mut candidates = 0u64;
    let mut k = 3;
    loop {
        out.catalog.extend(current.iter());
        out.levels.insert(k, current);
        if k == opts.n_target {
            break;
        }
        let prev = &out.levels[&k];
        match next_level(prev, opts, &mut candidates, out.stats.level_mut(k)) {
            Ok(next) => current = next,
            Err(cause) => return Err(PartialResult { completed: out, cause }),
        }
        k += 1;
    }
    Ok(out)
}

fn next_level(prev: &[Cluster], opts: &ExhaustiveOptions, candidates: &mut u64, st: &mut super::LevelStats) -> Result<Vec<Cluster>, Error> {
    let k = prev.first().map_or(0, Cluster::len);
    let max = BigUint::from(opts.max_diameter);
    let mut buckets: BTreeMap<CanonicalKey, Vec<Entry>> = BTreeMap::new();
    let mut autos: BTreeMap<CanonicalKey, Vec<Vec<usize>>> = BTreeMap::new();
    for (ci, c) in prev.iter().enumerate() {
        for q in 0..k {
            let rest: Vec<usize> = (0..k).filter(|&i| i != q).collect();
            let sub = c.subset(&rest);
            let (key, perm) = canonical_labeling(&sub);
            autos.entry(key.clone()).or_insert_with(|| automorphisms(&sub.permuted(&perm)));
            let labels = perm.iter().map(|&p| rest[p]).collect();
            buckets.entry(key).or_default().push(Entry { cluster: ci, removed: q, labels });
        }
    }
    let coords: Vec<Vec<RationalPoint>> = prev
        .iter()
        .map(|c| c.coords().map(|s| s.rational_points()))
        .collect::<crate::Result<_>>()?;

    let mut found: BTreeMap<CanonicalKey, Cluster> = BTreeMap::new();
    for (key, entries) in &buckets {
        let sym = &autos[key];
        for ea in entries {
            for eb in entries {
                let (a, b) = (&prev[ea.cluster], &prev[eb.cluster]);
                let pa = &coords[ea.cluster];
                for sigma in sym {
                    // shared point labels[σ i] of `a` plays eb.labels[i] of `b`
                    let pairs: Vec<(usize, usize)> = (0..k - 1).map(|i| (ea.labels[sigma[i]], eb.labels[i])).collect();
                    let r = |i: usize| int(b.distance(eb.removed, pairs[i].1));
                    let Some(cands) = intersect(&pa[pairs[0].0], &pa[pairs[1].0], &r(0), &r(1)) else {
                        *candidates += 1;
                        st.record(Some(Rejection::Distance));
                        continue;
                    };
                    for (ci, p) in cands.iter().enumerate() {
                        if ci == 1 && cands[0] == cands[1] {
                            continue;
                        }
                        if (2..k - 1).any(|i| p.squared_distance(&pa[pairs[i].0]) != &r(i) * &r(i)) {
                            continue;
                        }
                        *candidates += 1;
                        if let Some(limit) = opts.max_candidates {
                            if *candidates > limit {
                                return Err(Error::Resource { requested: *candidates, budget: limit });
                            }
                        }
                        if let Some(c) = place(a, pa, ea.removed, p, &pairs, b, eb.removed, &max, st) {
                            let (key, perm) = canonical_labeling(&c);
                            if found.contains_key(&key) {
                                continue;
                            }
                            let last = perm[k];
                            let without = |i: usize| {
                                let keep: Vec<usize> = (0..=k).filter(|&j| j != i).collect();
                                canonical_form(&c.subset(&keep))
                            };
                            if !opts.orderly || last == k || without(k) == without(last) {
                                found.insert(key, c.permuted(&perm));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(found.into_values().collect())
}

/// Adds `p` to `a` as point `k`; records the outcome and returns the
/// integral cluster when it qualifies.
#[allow(clippy::too_many_arguments)]
fn place(
    a: &Cluster,
    pa: &[RationalPoint],
    removed: usize,
    p: &RationalPoint,
    pairs: &[(usize, usize)],
    b: &Cluster,
    b_removed: usize,
    max: &BigUint,
    st: &mut super::LevelStats,
) -> Option<Cluster> {
    let k = a.len();
    let dq = p.squared_distance(&pa[removed]);
    if dq.is_zero() {
        return None;
    }
    let Some(d) = rational_sqrt(&dq).filter(|d| d.is_integer()) else {
        st.record(Some(Rejection::Distance));
        return None;
    };
    let d = d.to_integer().to_biguint().expect("positive");
    if &d > max {
        return None;
    }
    let mut to_p = alloc::vec![BigUint::zero(); k];
    to_p[removed] = d;
    for &(ia, ib) in pairs {
        to_p[ia] = b.distance(b_removed, ib).clone();
    }
    let sp = ScaledPoint::from_rational(p);
    let sa: Vec<ScaledPoint> = pa.iter().map(ScaledPoint::from_rational).collect();
    for t in combinations(k, 3) {
        if concircular_scaled(&sa[t[0]], &sa[t[1]], &sa[t[2]], &sp) {
            st.record(Some(Rejection::Concircular));
            return None;
        }
    }
    for t in combinations(k, 2) {
        if collinear(&pa[t[0]], &pa[t[1]], p) {
            st.record(Some(Rejection::Collinear));
            return None;
        }
    }
    st.record(None);
    let n = k + 1;
    let mut dist = alloc::vec![BigUint::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            dist[i * n + j] = match (i == k, j == k) {
                (false, false) => a.distance(i, j).clone(),
                (true, false) => to_p[j].clone(),
                (false, true) => to_p[i].clone(),
                (true, true) => BigUint::zero(),
            };
        }
    }
    let c = Cluster::from_matrix(n, dist).ok()?;
    (c.diameter() <= max).then_some(c)
}

/// Diameter of the largest cluster in the output, if any, as `u64`.
pub fn largest_diameter(out: &ExhaustiveOutput) -> Option<u64> {
    out.catalog.clusters().map(|c| c.diameter().to_u64()).max().flatten()
}
