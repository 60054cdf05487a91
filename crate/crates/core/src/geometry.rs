//! Exact plane geometry over the rationals.
//!
//! The search kernels use [`ScaledPoint`], a point `(x/w, y/w)` with integer
//! `x, y` and positive integer `w`, so that orientation, in-circle and
//! distance tests reduce to integer determinants without any division.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::is_perfect_square;
use crate::heron::big;
use crate::{Error, Result};

/// A point with reduced rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl RationalPoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        RationalPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RationalPoint {
            x: BigRational::from_integer(x.into()),
            y: BigRational::from_integer(y.into()),
        }
    }

    pub fn squared_distance(&self, other: &RationalPoint) -> BigRational {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &dx * &dx + &dy * &dy
    }
}

/// Square root of a non-negative rational, when it is rational.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = is_perfect_square(&q.numer().to_biguint()?)?;
    let d = is_perfect_square(&q.denom().to_biguint()?)?;
    Some(BigRational::new(n.into(), d.into()))
}

/// Homogeneous integer point `(x/w, y/w)` with `w > 0` and `gcd(x, y, w) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScaledPoint {
    pub x: BigInt,
    pub y: BigInt,
    pub w: BigInt,
}

impl ScaledPoint {
    pub fn new(x: BigInt, y: BigInt, w: BigInt) -> Self {
        debug_assert!(w.is_positive());
        let g = x.gcd(&y).gcd(&w);
        if g.is_one() || g.is_zero() {
            ScaledPoint { x, y, w }
        } else {
            ScaledPoint { x: x / &g, y: y / &g, w: w / &g }
        }
    }

    pub fn from_rational(p: &RationalPoint) -> Self {
        let w = p.x.denom().lcm(p.y.denom());
        let x = p.x.numer() * (&w / p.x.denom());
        let y = p.y.numer() * (&w / p.y.denom());
        ScaledPoint::new(x, y, w)
    }

    pub fn to_rational(&self) -> RationalPoint {
        RationalPoint {
            x: BigRational::new(self.x.clone(), self.w.clone()),
            y: BigRational::new(self.y.clone(), self.w.clone()),
        }
    }

    /// Integer `R` with `|pq|² = R / (w_p·w_q)²`.
    pub fn distance_radicand(&self, other: &ScaledPoint) -> BigInt {
        let dx = &self.x * &other.w - &other.x * &self.w;
        let dy = &self.y * &other.w - &other.y * &self.w;
        &dx * &dx + &dy * &dy
    }

    pub fn squared_distance(&self, other: &ScaledPoint) -> BigRational {
        let den = &self.w * &other.w;
        BigRational::new(self.distance_radicand(other), &den * &den)
    }

    /// Exact distance if rational.
    pub fn distance(&self, other: &ScaledPoint) -> Option<BigRational> {
        let r = self.distance_radicand(other);
        let root = is_perfect_square(r.magnitude())?;
        Some(BigRational::new(root.into(), &self.w * &other.w))
    }
}

/// Zero signed area of the homogeneous triple.
pub fn collinear_scaled(p: &ScaledPoint, q: &ScaledPoint, r: &ScaledPoint) -> bool {
    let det = &p.x * (&q.y * &r.w - &r.y * &q.w) - &p.y * (&q.x * &r.w - &r.x * &q.w)
        + &p.w * (&q.x * &r.y - &r.x * &q.y);
    det.is_zero()
}

/// Vanishing in-circle determinant of four homogeneous points. Four
/// collinear points also give zero; callers rule that out first.
pub fn concircular_scaled(p: &ScaledPoint, q: &ScaledPoint, r: &ScaledPoint, s: &ScaledPoint) -> bool {
    let row = |a: &ScaledPoint| {
        let u = &a.x * &s.w - &s.x * &a.w;
        let v = &a.y * &s.w - &s.y * &a.w;
        let m = &a.w * &s.w;
        let lift = &u * &u + &v * &v;
        [u * &m, v * m, lift]
    };
    let [a, b, c] = [row(p), row(q), row(r)];
    let det = &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0]);
    det.is_zero()
}

/// Distance between two rational points, if it is rational.
///
/// For `(x₁/a₁, y₁/b₁)` and `(x₂/a₂, y₂/b₂)` the distance is
/// `√((b₁b₂)²(a₂x₁−a₁x₂)² + (a₁a₂)²(b₂y₁−b₁y₂)²) / (a₁a₂b₁b₂)`,
/// so the test is whether that integer radicand is a square.
pub fn rational_distance(p: &RationalPoint, q: &RationalPoint) -> Option<BigRational> {
    let (x1, a1) = (p.x.numer(), p.x.denom());
    let (y1, b1) = (p.y.numer(), p.y.denom());
    let (x2, a2) = (q.x.numer(), q.x.denom());
    let (y2, b2) = (q.y.numer(), q.y.denom());
    let bb = b1 * b2;
    let aa = a1 * a2;
    let dx = a2 * x1 - a1 * x2;
    let dy = b2 * y1 - b1 * y2;
    let radicand = (&bb * &bb) * (&dx * &dx) + (&aa * &aa) * (&dy * &dy);
    let root = is_perfect_square(radicand.magnitude())?;
    Some(BigRational::new(root.into(), aa * bb))
}

pub fn collinear(p: &RationalPoint, q: &RationalPoint, r: &RationalPoint) -> bool {
    let cross = (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x);
    cross.is_zero()
}

/// Collinearity from the three pairwise distances: the largest equals the
/// sum of the other two.
pub fn collinear_by_distances(d01: &BigRational, d02: &BigRational, d12: &BigRational) -> bool {
    let mut d = [d01, d02, d12];
    d.sort();
    *d[2] == d[0] + d[1]
}

/// Whether four points lie on one circle. Errors when three of them are
/// collinear, since the circle test is meaningless there.
pub fn concircular(p1: &RationalPoint, p2: &RationalPoint, p3: &RationalPoint, p4: &RationalPoint) -> Result<bool> {
    let pts = [p1, p2, p3, p4];
    for (i, j, k) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
        if collinear(pts[i], pts[j], pts[k]) {
            return Err(Error::Domain("concircularity needs no three collinear points"));
        }
    }
    let s = pts.map(ScaledPoint::from_rational);
    Ok(concircular_scaled(&s[0], &s[1], &s[2], &s[3]))
}

/// Concircularity from distances by Ptolemy: four points in the plane are
/// concyclic iff the largest of `d01·d23`, `d02·d13`, `d03·d12` equals the
/// sum of the other two.
pub fn concircular_by_distances(d: impl Fn(usize, usize) -> BigRational) -> bool {
    let mut p = [d(0, 1) * d(2, 3), d(0, 2) * d(1, 3), d(0, 3) * d(1, 2)];
    p.sort();
    p[2] == &p[0] + &p[1]
}

/// Integer numerators over a shared denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CommonDenomPoint {
    pub x: BigInt,
    pub y: BigInt,
}

/// Points `(x_i/denom, y_i/denom)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonDenomSet {
    pub denom: BigInt,
    pub points: Vec<CommonDenomPoint>,
}

impl CommonDenomSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn rational_point(&self, i: usize) -> RationalPoint {
        let p = &self.points[i];
        RationalPoint {
            x: BigRational::new(p.x.clone(), self.denom.clone()),
            y: BigRational::new(p.y.clone(), self.denom.clone()),
        }
    }

    pub fn rational_points(&self) -> Vec<RationalPoint> {
        (0..self.len()).map(|i| self.rational_point(i)).collect()
    }

    pub fn scaled_point(&self, i: usize) -> ScaledPoint {
        let p = &self.points[i];
        ScaledPoint::new(p.x.clone(), p.y.clone(), self.denom.clone())
    }

    /// Distance with the shared-denominator shortcut
    /// `√((x₁−x₂)² + (y₁−y₂)²) / d`.
    pub fn distance(&self, i: usize, j: usize) -> Option<BigRational> {
        let (p, q) = (&self.points[i], &self.points[j]);
        let dx = &p.x - &q.x;
        let dy = &p.y - &q.y;
        let root = is_perfect_square((&dx * &dx + &dy * &dy).magnitude())?;
        Some(BigRational::new(root.into(), self.denom.clone()))
    }

    pub fn from_rational_points(points: &[RationalPoint]) -> Self {
        let denom = points
            .iter()
            .fold(BigInt::one(), |acc, p| acc.lcm(p.x.denom()).lcm(p.y.denom()));
        let points = points
            .iter()
            .map(|p| CommonDenomPoint {
                x: p.x.numer() * (&denom / p.x.denom()),
                y: p.y.numer() * (&denom / p.y.denom()),
            })
            .collect();
        CommonDenomSet { denom, points }
    }

    /// Multiplies every coordinate by `factor`, keeping the denominator.
    pub fn scale_numerators(&self, factor: &BigInt) -> Self {
        CommonDenomSet {
            denom: self.denom.clone(),
            points: self
                .points
                .iter()
                .map(|p| CommonDenomPoint { x: &p.x * factor, y: &p.y * factor })
                .collect(),
        }
    }
}

/// Square matrix of squared distances, symmetric with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquaredDistanceMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl SquaredDistanceMatrix {
    pub fn new(n: usize, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Format("matrix entry count does not match size".into()));
        }
        for i in 0..n {
            if !entries[i * n + i].is_zero() {
                return Err(Error::Format("nonzero diagonal entry".into()));
            }
            for j in 0..i {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(Error::Format("matrix is not symmetric".into()));
                }
                if entries[i * n + j].is_negative() {
                    return Err(Error::Format("negative squared distance".into()));
                }
            }
        }
        Ok(SquaredDistanceMatrix { n, entries })
    }

    /// Squares a matrix of (not squared) distances.
    pub fn from_distances(n: usize, d: impl Fn(usize, usize) -> BigRational) -> Result<Self> {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let x = d(i, j);
                entries.push(&x * &x);
            }
        }
        Self::new(n, entries)
    }

    pub fn from_points(points: &[RationalPoint]) -> Self {
        let n = points.len();
        let mut entries = Vec::with_capacity(n * n);
        for p in points {
            for q in points {
                entries.push(p.squared_distance(q));
            }
        }
        SquaredDistanceMatrix { n, entries }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }
}

/// Which side plays the role of the first edge `P₁P₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideOrder {
    /// `|P₁P₂| = a, |P₁P₃| = b, |P₂P₃| = c`
    Abc,
    /// `(a, c, b)`: `P₁` and `P₂` swapped.
    Acb,
    /// `(b, c, a)`
    Bca,
    /// `(c, a, b)`
    Cab,
}

/// Cached quantities of a Heronian triangle's coordinate representation:
/// `t₁ = b² − c² + a²` and `t₂ = √(4a²b² − t₁²) = 4·area`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleCoords {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub t1: BigInt,
    pub t2: BigInt,
}

/// Rational coordinates of a Heronian triangle: `P₁ = (0,0)`, `P₂ = (a,0)`
/// and `P₃ = (t₁/2a, t₂/2a)` with `t₂ ≥ 0`.
pub fn triangle_coords(a: u64, b: u64, c: u64) -> Result<TriangleCoords> {
    let (a, b, c) = (big(a), big(b), big(c));
    let t1 = &b * &b - &c * &c + &a * &a;
    let t2sq = BigInt::from(4) * &a * &a * &b * &b - &t1 * &t1;
    if !t2sq.is_positive() {
        return Err(Error::Domain("degenerate triangle"));
    }
    let t2 = is_perfect_square(t2sq.magnitude()).ok_or(Error::Domain("triangle is not Heronian"))?;
    Ok(TriangleCoords { a, b, c, t1, t2: t2.into() })
}

impl TriangleCoords {
    /// The three vertices for one assignment of sides, reusing `t₁` and `t₂`.
    pub fn points(&self, order: SideOrder) -> CommonDenomSet {
        let zero = BigInt::zero;
        let two_a2 = BigInt::from(2) * &self.a * &self.a;
        let (first, apex_x) = match order {
            SideOrder::Abc => (&self.a, self.t1.clone()),
            SideOrder::Acb => (&self.a, &two_a2 - &self.t1),
            SideOrder::Bca => (&self.b, BigInt::from(2) * &self.b * &self.b - &self.t1),
            SideOrder::Cab => (&self.c, &two_a2 - &self.t1),
        };
        let denom = BigInt::from(2) * first;
        CommonDenomSet {
            points: vec![
                CommonDenomPoint { x: zero(), y: zero() },
                CommonDenomPoint { x: &denom * first, y: zero() },
                CommonDenomPoint { x: apex_x, y: self.t2.clone() },
            ],
            denom,
        }
    }
}

/// Rational coordinates for a planar squared-distance matrix.
///
/// `P₁ = (0,0)`, `P₂ = (d,0)` with `d² = D₁₂`; every further point is placed
/// from its distances to `P₁` and `P₂` with `y ≥ 0` and mirrored when its
/// distance to the first off-axis point (normally `P₃`) disagrees. When `d`
/// is an integer all points share the denominator `2d`.
pub fn cluster_coords(m: &SquaredDistanceMatrix) -> Result<CommonDenomSet> {
    let n = m.len();
    if n < 2 {
        return Err(Error::Domain("need at least two points"));
    }
    let d2 = m.get(0, 1);
    if d2.is_zero() {
        return Err(Error::Inconsistent("first two points coincide"));
    }
    let d = rational_sqrt(d2).ok_or(Error::Inconsistent("first distance is irrational"))?;
    let two_d = &d + &d;
    let mut pts: Vec<RationalPoint> = vec![
        RationalPoint::new(BigRational::zero(), BigRational::zero()),
        RationalPoint::new(d.clone(), BigRational::zero()),
    ];
    let mut reference: Option<usize> = None;
    for i in 2..n {
        let x = (m.get(0, i) - m.get(1, i) + d2) / &two_d;
        let y2 = m.get(0, i) - &x * &x;
        let y = rational_sqrt(&y2).ok_or(Error::Inconsistent("coordinate is irrational or imaginary"))?;
        let mut p = RationalPoint::new(x, y);
        match reference {
            None => {
                if !p.y.is_zero() {
                    reference = Some(i);
                }
            }
            Some(r) => {
                if &p.squared_distance(&pts[r]) != m.get(r, i) {
                    p.y = -p.y;
                    if &p.squared_distance(&pts[r]) != m.get(r, i) {
                        return Err(Error::Inconsistent("no reflection matches the reference distance"));
                    }
                }
            }
        }
        pts.push(p);
    }
    for i in 0..n {
        for j in 0..i {
            if &pts[i].squared_distance(&pts[j]) != m.get(i, j) {
                return Err(Error::Inconsistent("matrix is not realizable with these coordinates"));
            }
        }
    }
    let mut set = CommonDenomSet::from_rational_points(&pts);
    if d.is_integer() {
        let want = two_d.to_integer();
        if (&want % &set.denom).is_zero() {
            let k = &want / &set.denom;
            set = set.scale_numerators(&k);
            set.denom = want;
        }
    }
    Ok(set)
}

/// Determinant of a small rational matrix by Gaussian elimination.
pub fn determinant(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det
}

/// Cayley–Menger determinant of the points in `subset`: the squared
/// distance submatrix bordered by a row and column `(0, 1, …, 1)`.
pub fn cayley_menger_det(m: &SquaredDistanceMatrix, subset: &[usize]) -> Result<BigRational> {
    let r = subset.len();
    if r < 2 {
        return Err(Error::Domain("Cayley-Menger determinant needs at least two points"));
    }
    if subset.iter().any(|&i| i >= m.len()) {
        return Err(Error::Domain("subset index out of range"));
    }
    let mut rows = Vec::with_capacity(r + 1);
    let mut top = vec![BigRational::one(); r + 1];
    top[0] = BigRational::zero();
    rows.push(top);
    for &i in subset {
        let mut row = Vec::with_capacity(r + 1);
        row.push(BigRational::one());
        row.extend(subset.iter().map(|&j| m.get(i, j).clone()));
        rows.push(row);
    }
    Ok(determinant(rows))
}

/// Menger's criterion for the plane: `(−1)^r·CMD ≥ 0` on every subset of
/// size `r ≤ 3` and `CMD = 0` on every subset of size `4 ≤ r ≤ n`.
pub fn realizable_in_plane(m: &SquaredDistanceMatrix) -> bool {
    let n = m.len();
    if n > 20 {
        return false;
    }
    for mask in 1u32..(1 << n) {
        let r = mask.count_ones() as usize;
        if r < 2 {
            continue;
        }
        let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let cmd = cayley_menger_det(m, &subset).expect("valid subset");
        let ok = if r <= 3 {
            let signed = if r % 2 == 0 { cmd } else { -cmd };
            !signed.is_negative()
        } else {
            cmd.is_zero()
        };
        if !ok {
            return false;
        }
    }
    true
}

/// Inversion in the unit circle around `points[center]`: the centre is
/// moved to the origin and every other point `(x, y)` goes to
/// `(x, y)/(x² + y²)`. Rational distances stay rational, since
/// `|1/z₁ − 1/z₂| = |z₁ − z₂| / (|z₁|·|z₂|)`.
pub fn circle_invert(points: &[RationalPoint], center: usize) -> Result<Vec<RationalPoint>> {
    let c = points.get(center).ok_or(Error::Domain("center index out of range"))?;
    for (i, p) in points.iter().enumerate() {
        for q in &points[..i] {
            if p == q {
                return Err(Error::Domain("circle inversion needs pairwise distinct points"));
            }
        }
    }
    Ok(points
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != center)
        .map(|(_, p)| {
            let x = &p.x - &c.x;
            let y = &p.y - &c.y;
            let r2 = &x * &x + &y * &y;
            RationalPoint::new(x / &r2, y / r2)
        })
        .collect())
}
