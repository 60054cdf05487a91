//! Heronian triangles: integer sides, integer area.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{self, is_perfect_square, is_perfect_square_u128, Factorization, SpfTable};
use crate::{Error, Result};

/// Sides up to this bound keep every radicand inside `i128`.
pub(crate) const SMALL_SIDE: u64 = 1 << 29;

/// A triangle with integer sides `a ≥ b ≥ c` and integer area.
///
/// Ordering is lexicographic on `(a, b, c)`, which is also the global
/// "smallest first" order used when selecting benchmark subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HeronTriangle {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub area: u128,
    pub primitive: bool,
}

impl PartialOrd for HeronTriangle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeronTriangle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sides().cmp(&other.sides())
    }
}

impl fmt::Display for HeronTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.a, self.b, self.c)
    }
}

impl HeronTriangle {
    /// Builds a triangle from sides in any order. Returns `None` when the
    /// sides are degenerate or the area is not an integer.
    pub fn new(x: u64, y: u64, z: u64) -> Option<HeronTriangle> {
        let mut s = [x, y, z];
        s.sort_unstable_by(|p, q| q.cmp(p));
        let [a, b, c] = s;
        if c == 0 || b + c <= a {
            return None;
        }
        let root = if a <= SMALL_SIDE {
            let r = radicand(a, b, c);
            is_perfect_square_u128(r as u128).map(BigUint::from)?
        } else {
            let r = radicand_big(a, b, c).to_biguint()?;
            is_perfect_square(&r)?
        };
        // 16·A² = R, so √R = 4A
        let (area, rem) = root.div_rem(&BigUint::from(4u32));
        if !rem.is_zero() {
            return None;
        }
        let primitive = a.gcd(&b).gcd(&c) == 1;
        Some(HeronTriangle { a, b, c, area: area.to_u128()?, primitive })
    }

    pub fn sides(&self) -> (u64, u64, u64) {
        (self.a, self.b, self.c)
    }

    /// Largest side.
    pub fn diameter(&self) -> u64 {
        self.a
    }

    pub fn is_isosceles(&self) -> bool {
        self.a == self.b || self.b == self.c
    }

    pub fn scaled(&self, k: u64) -> Option<HeronTriangle> {
        HeronTriangle::new(self.a.checked_mul(k)?, self.b.checked_mul(k)?, self.c.checked_mul(k)?)
    }

    /// The primitive triangle similar to this one.
    pub fn primitive_form(&self) -> HeronTriangle {
        let g = self.a.gcd(&self.b).gcd(&self.c);
        HeronTriangle::new(self.a / g, self.b / g, self.c / g).expect("similar triangle stays Heronian")
    }
}

/// `(a+b+c)(a+b−c)(a−b+c)(−a+b+c) = 16·area²` for sides below 2^29.
pub fn radicand(a: u64, b: u64, c: u64) -> i128 {
    let (a, b, c) = (a as i128, b as i128, c as i128);
    (a + b + c) * (a + b - c) * (a - b + c) * (-a + b + c)
}

/// Arbitrary-size variant of [`radicand`].
pub fn radicand_big(a: u64, b: u64, c: u64) -> BigInt {
    let (a, b, c) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
    (&a + &b + &c) * (&a + &b - &c) * (&a - &b + &c) * (-&a + &b + &c)
}

/// Squarefree part `k` of the radicand, so that `area = q·√k`.
///
/// Factors the four linear terms separately by trial division, so this is
/// meant for sides up to roughly 10^12.
pub fn characteristic(a: u64, b: u64, c: u64) -> Result<u128> {
    let mut s = [a, b, c];
    s.sort_unstable_by(|p, q| q.cmp(p));
    let [a, b, c] = s;
    if c == 0 || b + c <= a {
        return Err(Error::Domain("degenerate triangle has no characteristic"));
    }
    let terms = [a + b + c, a + b - c, a - b + c, b + c - a];
    let mut exps: alloc::collections::BTreeMap<u128, u32> = alloc::collections::BTreeMap::new();
    for t in terms {
        for (p, e) in arith::factor_trial(u128::from(t))? {
            *exps.entry(p).or_insert(0) += e;
        }
    }
    Ok(exps
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .fold(1u128, |acc, (p, _)| acc * p))
}

/// Exhaustive cubic loop over all integer triangles with `a ≤ limit`,
/// keeping those whose radicand is a perfect square.
pub fn generate_naive(limit: u64) -> impl Iterator<Item = HeronTriangle> {
    (1..=limit).flat_map(|a| {
        ((a + 2) / 2..=a).flat_map(move |b| {
            (a + 1 - b..=b).filter_map(move |c| {
                is_perfect_square_u128(radicand(a, b, c) as u128)?;
                HeronTriangle::new(a, b, c)
            })
        })
    })
}

/// All third sides `a` such that `(a, b, c)` is a non-degenerate Heronian
/// triangle, sorted ascending.
///
/// The half-angle tangent of the angle between `b` and `c` is `n/m`, so
/// `cos = (m²−n²)/(m²+n²)` where `m²+n²` divides `2bc`. Every divisor `k` is
/// decomposed as a sum of two squares and the law of cosines is solved for
/// `a`. Divisors that cannot carry a primitive representation (an odd power
/// of a prime `≡ 3 mod 4`, or a factor 4) are skipped: any non-primitive
/// representation yields the same cosine as a primitive one of a smaller
/// divisor.
pub fn third_sides(b: u64, c: u64, table: &SpfTable) -> Result<Vec<u64>> {
    let (b, c) = if b >= c { (b, c) } else { (c, b) };
    if c == 0 {
        return Err(Error::Domain("side lengths must be positive"));
    }
    let f = table.factor(2)?.mul(&table.factor(b)?)?.mul(&table.factor(c)?)?;
    Ok(third_sides_factored(b, c, &f))
}

fn third_sides_factored(b: u64, c: u64, two_bc: &Factorization) -> Vec<u64> {
    let (bi, ci) = (b as i128, c as i128);
    let sum_sq = bi * bi + ci * ci;
    let two_bc_i = 2 * bi * ci;
    let mut out = Vec::new();
    for k in two_bc.divisors() {
        let primitive_capable = k
            .factors
            .iter()
            .all(|&(p, e)| (p == 2 && e == 1) || p % 4 == 1);
        if !primitive_capable {
            continue;
        }
        let kk = k.value as i128;
        for (m, n) in arith::sum_of_two_squares_all(&k) {
            let (m, n) = (m as i128, n as i128);
            let diff = m * m - n * n;
            for d in [diff, -diff] {
                // a²·k = (b²+c²)·k − 2bc·(m²−n²)
                let num = sum_sq * kk - two_bc_i * d;
                if num <= 0 || num % kk != 0 {
                    continue;
                }
                if let Some(a) = is_perfect_square_u128((num / kk) as u128) {
                    let a = a as u64;
                    if a < b + c && a + c > b {
                        out.push(a);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Every primitive Heronian triangle with diameter at most `limit`, in
/// `(a, b, c)` order, found through [`third_sides`] over all pairs
/// `limit ≥ b ≥ c ≥ 1`.
pub fn generate_primitive(limit: u64, table: &SpfTable) -> Result<Vec<HeronTriangle>> {
    if limit > u64::from(table.limit()) {
        return Err(Error::Resource {
            requested: limit,
            budget: u64::from(table.limit()),
        });
    }
    let mut out = Vec::new();
    for b in 1..=limit {
        out.extend(primitive_with_middle_side(b, limit, table)?);
    }
    out.sort_unstable();
    Ok(out)
}

/// Primitive triangles `(a, b, c)` with the given middle side `b` and
/// `a ≤ limit`. Disjoint for distinct `b`, so callers may shard on it.
pub fn primitive_with_middle_side(b: u64, limit: u64, table: &SpfTable) -> Result<Vec<HeronTriangle>> {
    let mut out = Vec::new();
    let fb = table.factor(2)?.mul(&table.factor(b)?)?;
    for c in 1..=b {
        let g = b.gcd(&c);
        let f = fb.mul(&table.factor(c)?)?;
        for a in third_sides_factored(b, c, &f) {
            if a >= b && a <= limit && a.gcd(&g) == 1 {
                if let Some(t) = HeronTriangle::new(a, b, c) {
                    out.push(t);
                }
            }
        }
    }
    Ok(out)
}

/// All triangles `λ·t` with `t` primitive and `λ·a ≤ max_diameter`, sorted.
pub fn with_rescaled(primitive: &[HeronTriangle], max_diameter: u64) -> Vec<HeronTriangle> {
    let mut out: Vec<HeronTriangle> = primitive
        .iter()
        .flat_map(|t| (1..=max_diameter / t.a).filter_map(move |k| t.scaled(k)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Brahmagupta's parametric family
/// `a = (p/q)·h(i²+j²)`, `b = (p/q)·i(h²+j²)`, `c = (p/q)·(i+h)(ih−j²)`.
pub fn brahmagupta(p: u64, q: u64, h: u64, i: u64, j: u64) -> Result<[BigRational; 3]> {
    if [p, q, h, i, j].contains(&0) {
        return Err(Error::Domain("parameters must be positive"));
    }
    if u128::from(i) * u128::from(h) <= u128::from(j) * u128::from(j) {
        return Err(Error::Domain("parameters need i·h > j²"));
    }
    let [p, q, h, i, j] = [p, q, h, i, j].map(BigInt::from);
    let scale = BigRational::new(p, q);
    let a = &h * (&i * &i + &j * &j);
    let b = &i * (&h * &h + &j * &j);
    let c = (&i + &h) * (&i * &h - &j * &j);
    Ok([a, b, c].map(|x| &scale * BigRational::from_integer(x)))
}

/// Clears denominators and common factors of a rational side triple.
pub fn primitive_from_rational(sides: &[BigRational; 3]) -> Result<HeronTriangle> {
    if sides.iter().any(|s| !s.is_positive()) {
        return Err(Error::Domain("sides must be positive"));
    }
    let lcm = sides.iter().fold(BigInt::one(), |acc, s| acc.lcm(s.denom()));
    let ints: Vec<BigInt> = sides.iter().map(|s| (s * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let small: Vec<u64> = ints
        .iter()
        .map(|x| (x / &g).to_u64().ok_or(Error::Overflow))
        .collect::<Result<_>>()?;
    HeronTriangle::new(small[0], small[1], small[2]).ok_or(Error::Domain("sides do not form a Heronian triangle"))
}

pub(crate) fn big(x: u64) -> BigInt {
    BigInt::from_biguint(Sign::Plus, BigUint::from(x))
}
