//! Candidate points at rational distance from the vertices of a triangle,
//! from rational angle parameters (Pythagorean arctangents) or from
//! rational cevian ratios (Ceva's theorem).

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::geometry::{rational_distance, RationalPoint};
use crate::heron::{big, HeronTriangle};
use crate::{Error, Result};

/// A triangle `A = (0,0)`, `B = (c,0)`, `C = (x₀,y₀)` with rational data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacedTriangle {
    pub c: BigRational,
    pub x0: BigRational,
    pub y0: BigRational,
}

impl PlacedTriangle {
    /// Puts the longest side on the axis with `|AC| = b` and `|BC| = c`, so
    /// `(5,4,3)` becomes `B = (5,0)`, `C = (16/5, 12/5)`.
    pub fn from_heron(t: &HeronTriangle) -> Self {
        let (ab, ac, bc) = (big(t.a), big(t.b), big(t.c));
        let two_ab: BigInt = &ab * 2u32;
        PlacedTriangle {
            x0: BigRational::new(&ab * &ab + &ac * &ac - &bc * &bc, two_ab.clone()),
            y0: BigRational::new(BigInt::from(t.area) * 2u32, ab.clone()),
            c: BigRational::from_integer(ab),
        }
    }

    pub fn vertices(&self) -> [RationalPoint; 3] {
        let zero = BigRational::zero;
        [
            RationalPoint::new(zero(), zero()),
            RationalPoint::new(self.c.clone(), zero()),
            RationalPoint::new(self.x0.clone(), self.y0.clone()),
        ]
    }
}

/// Rational parameters `0 < r, s < 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ParamPair {
    r: BigRational,
    s: BigRational,
}

impl ParamPair {
    pub fn new(r: BigRational, s: BigRational) -> Result<Self> {
        let inside = |x: &BigRational| x.is_positive() && *x < BigRational::one();
        if !inside(&r) || !inside(&s) {
            return Err(Error::Domain("parameters must lie strictly between 0 and 1"));
        }
        Ok(ParamPair { r, s })
    }

    pub fn r(&self) -> &BigRational {
        &self.r
    }

    pub fn s(&self) -> &BigRational {
        &self.s
    }

    /// `Y = r + s − rs(r+s)`.
    pub fn y(&self) -> BigRational {
        let (r, s) = (&self.r, &self.s);
        r + s - r * s * (r + s)
    }
}

/// A candidate point with its distances to `A`, `B`, `C` where rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub point: RationalPoint,
    pub dist: [Option<BigRational>; 3],
}

impl Candidate {
    /// All three distances rational.
    pub fn is_full(&self) -> bool {
        self.dist.iter().all(Option::is_some)
    }
}

/// Intersection `D` of the rays from `A` and `B` at the angles
/// `arctan(2r/(1−r²))` and `arctan(2s/(1−s²))`; `AD` and `BD` are
/// rational by construction.
pub fn pyth_arctan_candidate(tri: &PlacedTriangle, p: &ParamPair) -> Result<Candidate> {
    let y = p.y();
    if y.is_zero() {
        return Err(Error::DegenerateParameter);
    }
    let one = BigRational::one();
    let (r, s, c) = (&p.r, &p.s, &tri.c);
    let dx = c * s * (&one - r * r) / &y;
    let dy = c * r * s * BigRational::from_integer(2.into()) / &y;
    let ad = c * s * (&one + r * r) / y.abs();
    let bd = c * r * (&one + s * s) / y.abs();
    let point = RationalPoint::new(dx, dy);
    let cd = rational_distance(&point, &tri.vertices()[2]);
    Ok(Candidate { point, dist: [Some(ad), Some(bd), cd] })
}

/// Common point `O` of three cevians with `r = DB/BC` and `s = EC/AC`.
pub fn ceva_candidate(tri: &PlacedTriangle, p: &ParamPair) -> Result<Candidate> {
    let one = BigRational::one();
    let (r, s, c) = (&p.r, &p.s, &tri.c);
    let den = s - &one - r * s;
    if den.is_zero() {
        return Err(Error::DegenerateParameter);
    }
    let ox = (&one - s) * (-c + c * r - r * &tri.x0) / &den;
    let oy = -(r * &tri.y0) * (&one - s) / &den;
    let point = RationalPoint::new(ox, oy);
    let v = tri.vertices();
    let dist = [
        rational_distance(&point, &v[0]),
        rational_distance(&point, &v[1]),
        rational_distance(&point, &v[2]),
    ];
    Ok(Candidate { point, dist })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    PythArctan,
    Ceva,
}

/// A candidate with all three distances rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanHit {
    pub method: Method,
    pub params: ParamPair,
    pub point: RationalPoint,
    pub dist: [BigRational; 3],
}

/// Reduced fractions `p/q` with `0 < p < q ≤ bound`, in increasing order.
pub fn farey_interior(bound: u64) -> Vec<BigRational> {
    let mut v: Vec<(u64, u64)> = Vec::new();
    for q in 2..=bound {
        for p in 1..q {
            if p.gcd(&q) == 1 {
                v.push((p, q));
            }
        }
    }
    v.sort_by(|&(a, b), &(c, d)| (u128::from(a) * u128::from(d)).cmp(&(u128::from(c) * u128::from(b))));
    v.into_iter().map(|(p, q)| BigRational::new(big(p), big(q))).collect()
}

/// Runs both methods over all parameter pairs of height at most
/// `height_bound` and keeps the points at rational distance from all three
/// vertices (and distinct from them).
pub fn scan_parameters(tri: &PlacedTriangle, height_bound: u64) -> Vec<ScanHit> {
    let params = farey_interior(height_bound);
    let mut hits = Vec::new();
    for r in &params {
        for s in &params {
            let p = ParamPair::new(r.clone(), s.clone()).expect("interior fractions");
            for method in [Method::PythArctan, Method::Ceva] {
                let cand = match method {
                    Method::PythArctan => pyth_arctan_candidate(tri, &p),
                    Method::Ceva => ceva_candidate(tri, &p),
                };
                let Ok(cand) = cand else { continue };
                if let [Some(a), Some(b), Some(c)] = cand.dist {
                    if a.is_positive() && b.is_positive() && c.is_positive() {
                        hits.push(ScanHit { method, params: p.clone(), point: cand.point, dist: [a, b, c] });
                    }
                }
            }
        }
    }
    hits
}
