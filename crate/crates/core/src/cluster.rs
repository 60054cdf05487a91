//! Integral point sets stored as integer distance matrices.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::geometry::{
    cluster_coords, collinear, collinear_by_distances, concircular_by_distances, concircular_scaled,
    rational_distance, rational_sqrt, realizable_in_plane, CommonDenomSet, RationalPoint, ScaledPoint,
    SquaredDistanceMatrix,
};
use crate::heron::HeronTriangle;
use crate::{Error, Result};

/// An `n`-point set given by its integer distance matrix.
///
/// The general-position and characteristic conditions are established by
/// whoever builds the value (the search kernels or [`verify_cluster`]);
/// the type itself only guarantees a well-formed symmetric matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cluster {
    n: usize,
    dist: Vec<BigUint>,
    primitive: bool,
}

/// Lexicographically maximal column-appended upper-triangle distance
/// vector over all relabelings of the points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub Vec<BigUint>);

impl Cluster {
    /// Builds from the full `n × n` matrix.
    pub fn from_matrix(n: usize, dist: Vec<BigUint>) -> Result<Cluster> {
        if n < 2 {
            return Err(Error::Format("a point set needs at least two points".into()));
        }
        if dist.len() != n * n {
            return Err(Error::Format("matrix entry count does not match size".into()));
        }
        for i in 0..n {
            if !dist[i * n + i].is_zero() {
                return Err(Error::Format("nonzero diagonal entry".into()));
            }
            for j in 0..i {
                if dist[i * n + j] != dist[j * n + i] {
                    return Err(Error::Format("matrix is not symmetric".into()));
                }
                if dist[i * n + j].is_zero() {
                    return Err(Error::Format("two points coincide".into()));
                }
            }
        }
        let g = dist.iter().fold(BigUint::zero(), |acc, d| acc.gcd(d));
        Ok(Cluster { n, dist, primitive: g.is_one() })
    }

    /// Builds from the upper triangle read row by row:
    /// `d01, d02, …, d0(n-1), d12, …`.
    pub fn from_upper_rows(n: usize, upper: &[BigUint]) -> Result<Cluster> {
        if upper.len() != n * (n.saturating_sub(1)) / 2 {
            return Err(Error::Format("wrong number of upper-triangle entries".into()));
        }
        let mut dist = vec![BigUint::zero(); n * n];
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let d = it.next().expect("length checked").clone();
                dist[i * n + j] = d.clone();
                dist[j * n + i] = d;
            }
        }
        Cluster::from_matrix(n, dist)
    }

    /// Builds from the column-appended distance vector (the canonical-key layout).
    pub fn from_key(key: &CanonicalKey) -> Result<Cluster> {
        let m = key.0.len();
        let n = (1..).find(|&n| n * (n - 1) / 2 >= m).unwrap_or(2);
        if n * (n - 1) / 2 != m {
            return Err(Error::Format("key length is not a triangular number".into()));
        }
        let mut dist = vec![BigUint::zero(); n * n];
        let mut it = key.0.iter();
        for j in 1..n {
            for i in 0..j {
                let d = it.next().expect("length checked").clone();
                dist[i * n + j] = d.clone();
                dist[j * n + i] = d;
            }
        }
        Cluster::from_matrix(n, dist)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    pub fn distance(&self, i: usize, j: usize) -> &BigUint {
        &self.dist[i * self.n + j]
    }

    pub fn upper_rows(&self) -> Vec<&BigUint> {
        let mut out = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.push(self.distance(i, j));
            }
        }
        out
    }

    /// Largest pairwise distance.
    pub fn diameter(&self) -> &BigUint {
        self.dist.iter().max().expect("nonempty matrix")
    }

    pub fn scaled(&self, k: &BigUint) -> Cluster {
        let dist: Vec<BigUint> = self.dist.iter().map(|d| d * k).collect();
        Cluster { n: self.n, primitive: self.primitive && k.is_one(), dist }
    }

    /// Divides by the gcd of all distances.
    pub fn primitive_form(&self) -> Cluster {
        let g = self.dist.iter().fold(BigUint::zero(), |acc, d| acc.gcd(d));
        Cluster {
            n: self.n,
            dist: self.dist.iter().map(|d| d / &g).collect(),
            primitive: true,
        }
    }

    /// Relabels so that new point `i` is old point `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Cluster {
        let n = self.n;
        let mut dist = vec![BigUint::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                dist[i * n + j] = self.distance(perm[i], perm[j]).clone();
            }
        }
        Cluster { n, dist, primitive: self.primitive }
    }

    /// The sub-point-set on `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Cluster {
        let k = indices.len();
        let mut dist = vec![BigUint::zero(); k * k];
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                dist[a * k + b] = self.distance(i, j).clone();
            }
        }
        let g = dist.iter().fold(BigUint::zero(), |acc, d| acc.gcd(d));
        Cluster { n: k, dist, primitive: g.is_one() }
    }

    pub fn squared_matrix(&self) -> SquaredDistanceMatrix {
        SquaredDistanceMatrix::from_distances(self.n, |i, j| {
            BigRational::from_integer(BigInt::from(self.distance(i, j).clone()))
        })
        .expect("cluster matrices are well formed")
    }

    /// Rational coordinates over the common denominator `2·d₀₁`.
    pub fn coords(&self) -> Result<CommonDenomSet> {
        cluster_coords(&self.squared_matrix())
    }

    pub fn distance_matrix_rational(&self) -> Vec<BigRational> {
        self.dist
            .iter()
            .map(|d| BigRational::from_integer(BigInt::from(d.clone())))
            .collect()
    }
}

/// Clears denominators with their lcm, then divides by the gcd of the
/// resulting integers. Returns the primitive matrix and the factor it was
/// multiplied by.
pub fn normalize_primitive(n: usize, d: impl Fn(usize, usize) -> BigRational) -> Result<(Cluster, BigRational)> {
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let x = d(i, j);
            if i != j && !x.is_positive() {
                return Err(Error::Format("off-diagonal distances must be positive".into()));
            }
            entries.push(x);
        }
    }
    let lcm = entries.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = entries.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g };
    let dist: Vec<BigUint> = ints
        .iter()
        .map(|x| (x / &g).to_biguint().expect("non-negative"))
        .collect();
    let c = Cluster::from_matrix(n, dist)?;
    Ok((c, BigRational::new(lcm, g)))
}

/// Canonical key together with a labeling that attains it: point `i` of the
/// canonical form is point `perm[i]` of the input.
///
/// Enumerates labelings depth-first and drops a prefix as soon as its
/// partial distance vector falls below the best one found, which returns
/// the same maximum as trying all `n!` permutations.
pub fn canonical_labeling(c: &Cluster) -> (CanonicalKey, Vec<usize>) {
    struct Search<'a> {
        c: &'a Cluster,
        perm: Vec<usize>,
        cur: Vec<&'a BigUint>,
        used: Vec<bool>,
        best: Option<(Vec<&'a BigUint>, Vec<usize>)>,
    }

    impl<'a> Search<'a> {
        fn run(&mut self) {
            let n = self.c.len();
            if self.perm.len() == n {
                let better = match &self.best {
                    None => true,
                    Some((b, _)) => self.cur > *b,
                };
                if better {
                    self.best = Some((self.cur.clone(), self.perm.clone()));
                }
                return;
            }
            for v in 0..n {
                if self.used[v] {
                    continue;
                }
                let start = self.cur.len();
                for &u in &self.perm {
                    self.cur.push(self.c.distance(u, v));
                }
                let behind = match &self.best {
                    Some((b, _)) => self.cur[..] < b[..self.cur.len()],
                    None => false,
                };
                if !behind {
                    self.used[v] = true;
                    self.perm.push(v);
                    self.run();
                    self.perm.pop();
                    self.used[v] = false;
                }
                self.cur.truncate(start);
            }
        }
    }

    let n = c.len();
    let mut s = Search {
        c,
        perm: Vec::with_capacity(n),
        cur: Vec::with_capacity(n * (n - 1) / 2),
        used: vec![false; n],
        best: None,
    };
    s.run();
    let (vec, perm) = s.best.expect("at least one labeling");
    (CanonicalKey(vec.into_iter().cloned().collect()), perm)
}

pub fn canonical_form(c: &Cluster) -> CanonicalKey {
    canonical_labeling(c).0
}

/// Whether one cluster is a rescaled relabeling of the other.
///
/// With `g = gcd(diam₁, diam₂)`, `f₁ = diam₂/g` and `f₂ = diam₁/g`, the
/// sorted distance lists of `f₁·C₁` and `f₂·C₂` are compared first, then
/// their canonical keys.
pub fn is_similar(c1: &Cluster, c2: &Cluster) -> bool {
    if c1.len() != c2.len() {
        return false;
    }
    let (d1, d2) = (c1.diameter(), c2.diameter());
    let g = d1.gcd(d2);
    let f1 = d2 / &g;
    let f2 = d1 / &g;
    let mut s1: Vec<BigUint> = c1.upper_rows().into_iter().map(|d| d * &f1).collect();
    let mut s2: Vec<BigUint> = c2.upper_rows().into_iter().map(|d| d * &f2).collect();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return false;
    }
    canonical_form(&c1.scaled(&f1)) == canonical_form(&c2.scaled(&f2))
}

/// Independent verdicts of the cluster conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyReport {
    pub points: usize,
    pub integral_distances: bool,
    pub realizable: bool,
    pub no_collinear_triple: bool,
    pub no_concircular_quadruple: bool,
    pub characteristic_one: bool,
}

impl VerifyReport {
    pub fn is_cluster(&self) -> bool {
        self.integral_distances
            && self.realizable
            && self.no_collinear_triple
            && self.no_concircular_quadruple
            && self.characteristic_one
    }
}

/// `16·area²` from squared side lengths `x = a², y = b², z = c²`.
fn area_radicand(x: &BigRational, y: &BigRational, z: &BigRational) -> BigRational {
    let two = BigRational::from_integer(2.into());
    two * (x * y + y * z + z * x) - (x * x + y * y + z * z)
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
}

fn quadruples(n: usize) -> impl Iterator<Item = [usize; 4]> {
    triples(n).flat_map(move |(i, j, k)| (k + 1..n).map(move |l| [i, j, k, l]))
}

fn characteristic_one(sq: &SquaredDistanceMatrix) -> bool {
    let mut any = false;
    for (i, j, k) in triples(sq.len()) {
        let r = area_radicand(sq.get(i, j), sq.get(i, k), sq.get(j, k));
        if r.is_zero() {
            continue;
        }
        any = true;
        if rational_sqrt(&r).is_none() {
            return false;
        }
    }
    any
}

/// Checks a (possibly rational) distance matrix against the cluster
/// definition. Collinearity uses the triangle inequality and
/// concircularity uses Ptolemy's equality.
pub fn verify_distances(n: usize, d: &[BigRational]) -> Result<VerifyReport> {
    if n < 3 || d.len() != n * n {
        return Err(Error::Format("need an n × n distance matrix with n ≥ 3".into()));
    }
    let at = |i: usize, j: usize| d[i * n + j].clone();
    let sq = SquaredDistanceMatrix::from_distances(n, at)?;
    for i in 0..n {
        for j in 0..i {
            if !at(i, j).is_positive() {
                return Err(Error::Format("off-diagonal distances must be positive".into()));
            }
        }
    }
    let integral_distances = d.iter().all(|x| x.is_integer());
    let realizable = realizable_in_plane(&sq);
    let no_collinear_triple = triples(n).all(|(i, j, k)| !collinear_by_distances(&at(i, j), &at(i, k), &at(j, k)));
    let no_concircular_quadruple = quadruples(n).all(|q| {
        let dd = |a: usize, b: usize| at(q[a], q[b]);
        let has_line = triples(4).any(|(a, b, c)| collinear_by_distances(&dd(a, b), &dd(a, c), &dd(b, c)));
        has_line || !concircular_by_distances(dd)
    });
    Ok(VerifyReport {
        points: n,
        integral_distances,
        realizable,
        no_collinear_triple,
        no_concircular_quadruple,
        characteristic_one: characteristic_one(&sq),
    })
}

/// Checks an explicit rational point set against the cluster definition
/// with exact orientation and in-circle determinants.
pub fn verify_coords(points: &[RationalPoint]) -> Result<VerifyReport> {
    let n = points.len();
    if n < 3 {
        return Err(Error::Format("need at least three points".into()));
    }
    let sq = SquaredDistanceMatrix::from_points(points);
    let integral_distances = (0..n).all(|i| {
        (0..i).all(|j| rational_distance(&points[i], &points[j]).is_some_and(|x| x.is_integer() && !x.is_zero()))
    });
    let no_collinear_triple = triples(n).all(|(i, j, k)| !collinear(&points[i], &points[j], &points[k]));
    let scaled: Vec<ScaledPoint> = points.iter().map(ScaledPoint::from_rational).collect();
    let no_concircular_quadruple = quadruples(n).all(|[i, j, k, l]| {
        let s = &scaled;
        let has_line = [(i, j, k), (i, j, l), (i, k, l), (j, k, l)]
            .iter()
            .any(|&(a, b, c)| collinear(&points[a], &points[b], &points[c]));
        has_line || !concircular_scaled(&s[i], &s[j], &s[k], &s[l])
    });
    Ok(VerifyReport {
        points: n,
        integral_distances,
        realizable: realizable_in_plane(&sq),
        no_collinear_triple,
        no_concircular_quadruple,
        characteristic_one: characteristic_one(&sq),
    })
}

pub fn verify_cluster(c: &Cluster) -> VerifyReport {
    verify_distances(c.len(), &c.distance_matrix_rational()).expect("cluster matrices are well formed")
}

/// All `C(n,3)` sub-triangles, each reduced to its primitive form.
pub fn sub_triangles(c: &Cluster) -> Result<Vec<HeronTriangle>> {
    let mut out = Vec::new();
    for (i, j, k) in triples(c.len()) {
        let s = [c.distance(i, j), c.distance(i, k), c.distance(j, k)];
        let g = s[0].gcd(s[1]).gcd(s[2]);
        let sides: Vec<u64> = s
            .iter()
            .map(|x| (*x / &g).to_u64().ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        let t = HeronTriangle::new(sides[0], sides[1], sides[2])
            .ok_or(Error::Domain("sub-triangle is degenerate or not Heronian"))?;
        out.push(t);
    }
    Ok(out)
}

/// Distinct primitive sub-triangles with their multiplicities.
pub fn sub_triangle_counts<'a>(clusters: impl IntoIterator<Item = &'a Cluster>) -> Result<BTreeMap<HeronTriangle, usize>> {
    let mut map = BTreeMap::new();
    for c in clusters {
        for t in sub_triangles(c)? {
            *map.entry(t).or_insert(0) += 1;
        }
    }
    Ok(map)
}
