//! Integer primitives: smallest-prime-factor tables, factorizations, the
//! modular perfect-square sieve and representations as sums of two squares.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::{Error, Result};

/// Default memory budget for a smallest-prime-factor table (1 GiB).
pub const DEFAULT_TABLE_BUDGET: u64 = 1 << 30;

/// First sieve modulus, `3·5·11·13·17·19·23·31`.
pub const M1: u64 = 493_991_355;
/// Second sieve modulus, `7·29·37·41·43·47`.
pub const M2: u64 = 622_368_971;

const M1_PRIMES: [u32; 8] = [3, 5, 11, 13, 17, 19, 23, 31];
const M2_PRIMES: [u32; 6] = [7, 29, 37, 41, 43, 47];

/// Table of smallest prime factors for `2..=limit`.
#[derive(Debug, Clone)]
pub struct SpfTable {
    spf: Vec<u32>,
}

impl SpfTable {
    pub fn new(limit: u32) -> Result<Self> {
        Self::with_budget(limit, DEFAULT_TABLE_BUDGET)
    }

    pub fn with_budget(limit: u32, budget_bytes: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::Domain("factor table limit must be at least 2"));
        }
        let requested = (u64::from(limit) + 1) * core::mem::size_of::<u32>() as u64;
        if requested > budget_bytes {
            return Err(Error::Resource { requested, budget: budget_bytes });
        }
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] != 0 {
                continue;
            }
            spf[i] = i as u32;
            let mut j = i.saturating_mul(i);
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
        Ok(SpfTable { spf })
    }

    pub fn limit(&self) -> u32 {
        (self.spf.len() - 1) as u32
    }

    /// Smallest prime factor of `n`, for `2 <= n <= limit`.
    pub fn smallest_prime_factor(&self, n: u32) -> Option<u32> {
        if n < 2 {
            return None;
        }
        self.spf.get(n as usize).copied()
    }

    pub fn is_prime(&self, n: u32) -> bool {
        self.smallest_prime_factor(n) == Some(n)
    }

    /// Factors `n`. Values above the table limit are accepted as long as all
    /// of their prime factors are covered by the table.
    pub fn factor(&self, n: u64) -> Result<Factorization> {
        if n == 0 {
            return Err(Error::Domain("cannot factor zero"));
        }
        let limit = u64::from(self.limit());
        let mut rest = n;
        let mut factors: Vec<(u64, u32)> = Vec::new();
        let push = |factors: &mut Vec<(u64, u32)>, p: u64| match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        };
        if rest > limit {
            // strip small primes by trial division until the table applies
            let mut p = 2u64;
            while rest > limit {
                if p > limit || p * p > rest {
                    return Err(Error::Domain("prime factor exceeds factor table limit"));
                }
                if u64::from(self.spf[p as usize]) == p {
                    while rest % p == 0 {
                        push(&mut factors, p);
                        rest /= p;
                    }
                }
                p += 1;
            }
        }
        while rest > 1 {
            let p = u64::from(self.spf[rest as usize]);
            push(&mut factors, p);
            rest /= p;
        }
        Ok(Factorization { value: n, factors })
    }
}

/// Prime factorization `value = prod(p^e)`, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub value: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization { value: 1, factors: Vec::new() }
    }

    /// Product of two factorizations, merging exponents.
    pub fn mul(&self, other: &Factorization) -> Result<Factorization> {
        let value = self.value.checked_mul(other.value).ok_or(Error::Overflow)?;
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() || j < other.factors.len() {
            match (self.factors.get(i), other.factors.get(j)) {
                (Some(&(p, e)), Some(&(q, f))) if p == q => {
                    factors.push((p, e + f));
                    i += 1;
                    j += 1;
                }
                (Some(&(p, e)), Some(&(q, _))) if p < q => {
                    factors.push((p, e));
                    i += 1;
                }
                (Some(_), Some(&(q, f))) => {
                    factors.push((q, f));
                    j += 1;
                }
                (Some(&pe), None) => {
                    factors.push(pe);
                    i += 1;
                }
                (None, Some(&qf)) => {
                    factors.push(qf);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Ok(Factorization { value, factors })
    }

    pub fn product(&self) -> u128 {
        self.factors
            .iter()
            .fold(1u128, |acc, &(p, e)| acc * u128::from(p).pow(e))
    }

    /// All divisors together with their factorizations.
    pub fn divisors(&self) -> Vec<Factorization> {
        let mut out = vec![Factorization::one()];
        for &(p, e) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for d in &out {
                let mut value = d.value;
                for k in 0..=e {
                    let mut factors = d.factors.clone();
                    if k > 0 {
                        factors.push((p, k));
                    }
                    next.push(Factorization { value, factors });
                    value *= p;
                }
            }
            out = next;
        }
        out
    }
}

const fn square_mask(p: u32) -> u64 {
    let mut mask = 0u64;
    let mut x = 0u32;
    while x < p {
        mask |= 1 << ((x * x) % p);
        x += 1;
    }
    mask
}

/// Quadratic-residue sieve modulo a squarefree modulus.
///
/// Membership is tabulated per prime factor as a bit vector of the squares
/// in `Z_p`; by the Chinese remainder theorem a residue modulo the product is
/// a square iff it is one modulo every prime.
#[derive(Debug, Clone, Copy)]
pub struct SquareSieve {
    modulus: u64,
    tables: &'static [(u32, u64)],
}

static M1_TABLES: [(u32, u64); 8] = {
    let mut t = [(0u32, 0u64); 8];
    let mut i = 0;
    while i < 8 {
        t[i] = (M1_PRIMES[i], square_mask(M1_PRIMES[i]));
        i += 1;
    }
    t
};

static M2_TABLES: [(u32, u64); 6] = {
    let mut t = [(0u32, 0u64); 6];
    let mut i = 0;
    while i < 6 {
        t[i] = (M2_PRIMES[i], square_mask(M2_PRIMES[i]));
        i += 1;
    }
    t
};

impl SquareSieve {
    pub const M1: SquareSieve = SquareSieve { modulus: M1, tables: &M1_TABLES };
    pub const M2: SquareSieve = SquareSieve { modulus: M2, tables: &M2_TABLES };

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn primes(&self) -> impl Iterator<Item = u32> + '_ {
        self.tables.iter().map(|&(p, _)| p)
    }

    /// Whether `r` (taken modulo the sieve modulus) is a square residue.
    #[inline]
    pub fn is_square_residue(&self, r: u64) -> bool {
        self.tables
            .iter()
            .all(|&(p, mask)| (mask >> (r % u64::from(p))) & 1 == 1)
    }
}

/// Exact square root of `n` if it is a perfect square.
///
/// Cheap rejections run first: the class modulo 4, then the residue sieves
/// modulo [`M1`] and [`M2`], and only survivors reach the integer root.
pub fn is_perfect_square_u128(n: u128) -> Option<u128> {
    if n & 3 >= 2 {
        return None;
    }
    if !SquareSieve::M1.is_square_residue((n % u128::from(M1)) as u64) {
        return None;
    }
    if !SquareSieve::M2.is_square_residue((n % u128::from(M2)) as u64) {
        return None;
    }
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// Arbitrary-precision variant of [`is_perfect_square_u128`].
pub fn is_perfect_square(n: &BigUint) -> Option<BigUint> {
    if let Some(small) = n.to_u128() {
        return is_perfect_square_u128(small).map(BigUint::from);
    }
    let low = n.iter_u32_digits().next().unwrap_or(0);
    if low & 3 >= 2 {
        return None;
    }
    let r1 = (n % M1).to_u64().unwrap_or(0);
    if !SquareSieve::M1.is_square_residue(r1) {
        return None;
    }
    let r2 = (n % M2).to_u64().unwrap_or(0);
    if !SquareSieve::M2.is_square_residue(r2) {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Signed convenience wrapper: negative values are never squares.
pub fn is_perfect_square_i128(n: i128) -> Option<u128> {
    if n < 0 {
        None
    } else {
        is_perfect_square_u128(n as u128)
    }
}

pub(crate) fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = u128::from(m);
    let mut acc: u128 = 1 % m128;
    let mut b = u128::from(base % m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// The representation `p = u² + v²` with `u > v > 0` of a prime `p ≡ 1 (mod 4)`.
///
/// A quadratic nonresidue `w` is found by testing `w = 2, 3, 4, ...` with
/// the Euler criterion; `z = w^((p-1)/4)` then satisfies `z² ≡ -1`, and the
/// first two Euclidean remainders of `(p, z)` below `√p` are `(u, v)`.
/// Primality of `p` is the caller's responsibility.
pub fn two_squares_prime(p: u64) -> Result<(u64, u64)> {
    if p % 4 != 1 {
        return Err(Error::Domain("two_squares_prime needs p ≡ 1 (mod 4)"));
    }
    let mut w = 2u64;
    let z = loop {
        if w >= p {
            return Err(Error::Domain("no quadratic nonresidue found; p is not prime"));
        }
        if mod_pow(w, (p - 1) / 2, p) == p - 1 {
            break mod_pow(w, (p - 1) / 4, p);
        }
        w += 1;
    };
    let root = p.isqrt();
    let (mut r0, mut r1) = (p, z);
    while r0 > root {
        let r2 = r0 % r1;
        r0 = r1;
        r1 = r2;
    }
    let (u, v) = (r0, r1);
    if u128::from(u) * u128::from(u) + u128::from(v) * u128::from(v) != u128::from(p) {
        return Err(Error::Domain("Euclidean descent failed; p is not prime"));
    }
    Ok((u, v))
}

#[derive(Clone, Copy)]
struct Gaussian(i128, i128);

impl Gaussian {
    fn mul(self, o: Gaussian) -> Gaussian {
        Gaussian(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }

    fn pow(self, e: u32) -> Gaussian {
        (0..e).fold(Gaussian(1, 0), |acc, _| acc.mul(self))
    }
}

/// All pairs `(m, n)` with `m ≥ n ≥ 0` and `m² + n² = k`, ascending by `m`.
///
/// Built from the factorization: primes `≡ 3 (mod 4)` must occur to even
/// powers and contribute to a common scalar, the prime 2 contributes
/// `1 + i` at most once, and each `p ≡ 1 (mod 4)` contributes
/// `(u+vi)^l (u-vi)^(j-l)` for `0 ≤ l ≤ j`.
pub fn sum_of_two_squares_all(f: &Factorization) -> Vec<(u64, u64)> {
    let mut scale: u128 = 1;
    let mut partials = vec![Gaussian(1, 0)];
    for &(p, e) in &f.factors {
        if p == 2 {
            scale *= 1u128 << (e / 2);
            if e % 2 == 1 {
                partials.iter_mut().for_each(|g| *g = g.mul(Gaussian(1, 1)));
            }
        } else if p % 4 == 3 {
            if e % 2 == 1 {
                return Vec::new();
            }
            scale *= u128::from(p).pow(e / 2);
        } else {
            let (u, v) = match two_squares_prime(p) {
                Ok(uv) => uv,
                Err(_) => return Vec::new(),
            };
            let g = Gaussian(u as i128, v as i128);
            let h = Gaussian(u as i128, -(v as i128));
            let choices: Vec<Gaussian> = (0..=e).map(|l| g.pow(l).mul(h.pow(e - l))).collect();
            partials = partials
                .iter()
                .flat_map(|a| choices.iter().map(move |b| a.mul(*b)))
                .collect();
        }
    }
    let set: BTreeSet<(u64, u64)> = partials
        .into_iter()
        .map(|g| {
            let (x, y) = (g.0.unsigned_abs() * scale, g.1.unsigned_abs() * scale);
            (x.max(y) as u64, x.min(y) as u64)
        })
        .collect();
    set.into_iter().collect()
}

/// Factors `n` by trial division; intended for values whose smallest prime
/// factors are small or which are themselves modest in size.
pub fn factor_trial(n: u128) -> Result<Vec<(u128, u32)>> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factor zero"));
    }
    let mut rest = n;
    let mut out = Vec::new();
    let mut p: u128 = 2;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        out.push((rest, 1));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spf_small() {
        let t = SpfTable::new(10).unwrap();
        assert_eq!(t.smallest_prime_factor(9), Some(3));
        assert_eq!(t.smallest_prime_factor(7), Some(7));
        assert_eq!(SpfTable::new(2).unwrap().smallest_prime_factor(2), Some(2));
        assert!(SpfTable::new(1).is_err());
    }

    #[test]
    fn spf_budget() {
        let err = SpfTable::with_budget(1_000_000, 1000).unwrap_err();
        assert!(matches!(err, Error::Resource { .. }));
    }

    #[test]
    fn spf_large_prime() {
        // trial division oracle
        let n: u32 = 999_983;
        assert!((2..=n.isqrt()).all(|d| n % d != 0));
        let t = SpfTable::new(1_000_000).unwrap();
        assert_eq!(t.smallest_prime_factor(n), Some(n));
    }

    #[test]
    fn factor_examples() {
        let t = SpfTable::new(1000).unwrap();
        assert_eq!(t.factor(576).unwrap().factors, vec![(2, 6), (3, 2)]);
        assert!(t.factor(1).unwrap().factors.is_empty());
        assert_eq!(t.factor(0), Err(Error::Domain("cannot factor zero")));
        let m1: Vec<(u64, u32)> = M1_PRIMES.iter().map(|&p| (u64::from(p), 1)).collect();
        assert_eq!(t.factor(M1).unwrap().factors, m1);
        let m2: Vec<(u64, u32)> = M2_PRIMES.iter().map(|&p| (u64::from(p), 1)).collect();
        assert_eq!(t.factor(M2).unwrap().factors, m2);
        // 1009 is prime and beyond the table
        assert!(t.factor(1009 * 2).is_err());
    }

    #[test]
    fn factorization_merge() {
        let t = SpfTable::new(100).unwrap();
        let f = t.factor(2).unwrap().mul(&t.factor(12).unwrap()).unwrap();
        let g = f.mul(&t.factor(45).unwrap()).unwrap();
        assert_eq!(g.value, 1080);
        assert_eq!(g.factors, vec![(2, 3), (3, 3), (5, 1)]);
        assert_eq!(g.divisors().len(), 4 * 4 * 2);
    }

    #[test]
    fn sieve_moduli_are_products() {
        assert_eq!(SquareSieve::M1.primes().map(u64::from).product::<u64>(), M1);
        assert_eq!(SquareSieve::M2.primes().map(u64::from).product::<u64>(), M2);
    }

    #[test]
    fn perfect_square_examples() {
        assert_eq!(is_perfect_square_u128(0), Some(0));
        assert_eq!(is_perfect_square_u128(6), None);
        assert_eq!(is_perfect_square_u128(5_116_644), Some(2262));
        assert_eq!(is_perfect_square_u128(1), Some(1));
    }

    #[test]
    fn sieve_survivor_that_is_not_a_square() {
        // smallest non-square passing the mod-4 class and both residue sieves
        let survivor = (2u128..)
            .find(|&n| {
                n % 4 < 2
                    && SquareSieve::M1.is_square_residue((n % u128::from(M1)) as u64)
                    && SquareSieve::M2.is_square_residue((n % u128::from(M2)) as u64)
                    && n.isqrt() * n.isqrt() != n
            })
            .unwrap();
        assert_eq!(is_perfect_square_u128(survivor), None);
        assert_eq!(is_perfect_square(&BigUint::from(survivor)), None);
    }

    #[test]
    fn perfect_square_big() {
        let r = BigUint::from(10u32).pow(40) + 12345u32;
        assert_eq!(is_perfect_square(&(&r * &r)), Some(r.clone()));
        assert_eq!(is_perfect_square(&(&r * &r + 1u32)), None);
    }

    #[test]
    fn two_squares_prime_examples() {
        assert_eq!(two_squares_prime(5).unwrap(), (2, 1));
        assert_eq!(two_squares_prime(13).unwrap(), (3, 2));
        assert!(two_squares_prime(7).is_err());
        // brute force over v ≤ √(p/2)
        let p = 1_000_249u64;
        let brute = (1..=(p / 2).isqrt())
            .find_map(|v| {
                let u2 = p - v * v;
                let u = u2.isqrt();
                (u * u == u2).then_some((u, v))
            })
            .unwrap();
        assert_eq!(two_squares_prime(p).unwrap(), brute);
    }

    #[test]
    fn two_squares_all_examples() {
        let t = SpfTable::new(100).unwrap();
        assert_eq!(sum_of_two_squares_all(&t.factor(2).unwrap()), vec![(1, 1)]);
        assert!(sum_of_two_squares_all(&t.factor(21).unwrap()).is_empty());
        assert_eq!(sum_of_two_squares_all(&t.factor(25).unwrap()), vec![(4, 3), (5, 0)]);
        assert_eq!(sum_of_two_squares_all(&t.factor(1).unwrap()), vec![(1, 0)]);
        assert_eq!(sum_of_two_squares_all(&t.factor(50).unwrap()), vec![(5, 5), (7, 1)]);
    }

    #[test]
    fn trial_factor() {
        assert_eq!(factor_trial(135).unwrap(), vec![(3, 3), (5, 1)]);
        assert!(factor_trial(0).is_err());
    }
}
