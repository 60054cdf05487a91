//! Heuristics for picking promising triangles to feed the searches.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_rational::Ratio;

use crate::arith::factor_trial;
use crate::cluster::{sub_triangle_counts, Cluster};
use crate::heron::HeronTriangle;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScoreMethod {
    NegDiameter,
    Score1,
    Score2,
    Frequency,
    Ellipse,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoredTriangle {
    pub triangle: HeronTriangle,
    pub score: f64,
    pub method: ScoreMethod,
}

pub fn score_neg_diameter(t: &HeronTriangle) -> f64 {
    -(t.a as f64)
}

/// Number of distinct prime divisors.
pub fn omega(n: u64) -> Result<u32> {
    Ok(factor_trial(u128::from(n))?.len() as u32)
}

fn check_sides(t: &HeronTriangle) -> Result<()> {
    if t.c < 3 {
        return Err(Error::Domain("scores need every side to be at least 3"));
    }
    Ok(())
}

/// `Σ ω(side) / ln ln side`.
pub fn score1(t: &HeronTriangle) -> Result<f64> {
    check_sides(t)?;
    let mut s = 0.0;
    for x in [t.a, t.b, t.c] {
        s += f64::from(omega(x)?) / libm::log(libm::log(x as f64));
    }
    Ok(s)
}

/// `Σ ω(side) / ln side`.
pub fn score2(t: &HeronTriangle) -> Result<f64> {
    check_sides(t)?;
    let mut s = 0.0;
    for x in [t.a, t.b, t.c] {
        s += f64::from(omega(x)?) / libm::log(x as f64);
    }
    Ok(s)
}

/// Primitive sub-triangles of `clusters` with their multiplicities, most
/// frequent first, ties in `(a, b, c)` order.
pub fn frequency_rank<'a>(clusters: impl IntoIterator<Item = &'a Cluster>) -> Result<Vec<(HeronTriangle, usize)>> {
    let mut v: Vec<_> = sub_triangle_counts(clusters)?.into_iter().collect();
    v.sort_by(|(ta, ca), (tb, cb)| cb.cmp(ca).then(ta.cmp(tb)));
    Ok(v)
}

/// `(b+c)/a`, `(a+c)/b`, `(a+b)/c` in lowest terms.
pub fn ellipse_keys(t: &HeronTriangle) -> [Ratio<u64>; 3] {
    let (a, b, c) = t.sides();
    [Ratio::new(b + c, a), Ratio::new(a + c, b), Ratio::new(a + b, c)]
}

/// How often each ellipse key occurs over a list of triangles.
pub fn ellipse_frequencies(list: &[HeronTriangle]) -> BTreeMap<Ratio<u64>, usize> {
    let mut m = BTreeMap::new();
    for t in list {
        for k in ellipse_keys(t) {
            *m.entry(k).or_insert(0) += 1;
        }
    }
    m
}

/// The largest frequency among the triangle's three ellipse keys.
pub fn ellipse_score(t: &HeronTriangle, freq: &BTreeMap<Ratio<u64>, usize>) -> f64 {
    ellipse_keys(t)
        .iter()
        .map(|k| freq.get(k).copied().unwrap_or(0))
        .max()
        .unwrap_or(0) as f64
}

/// Scores every triangle of `list` with `method`.
pub fn score_all(list: &[HeronTriangle], method: ScoreMethod) -> Result<Vec<ScoredTriangle>> {
    let freq = match method {
        ScoreMethod::Ellipse => ellipse_frequencies(list),
        _ => BTreeMap::new(),
    };
    list.iter()
        .map(|t| {
            let score = match method {
                ScoreMethod::NegDiameter => score_neg_diameter(t),
                ScoreMethod::Score1 => score1(t)?,
                ScoreMethod::Score2 => score2(t)?,
                ScoreMethod::Ellipse => ellipse_score(t, &freq),
                ScoreMethod::Frequency => {
                    return Err(Error::Domain("frequency scores come from a cluster list, see frequency_rank"))
                }
            };
            Ok(ScoredTriangle { triangle: *t, score, method })
        })
        .collect()
}

fn by_score(x: &ScoredTriangle, y: &ScoredTriangle) -> Ordering {
    y.score.total_cmp(&x.score).then(x.triangle.cmp(&y.triangle))
}

/// The `m` best triangles, ties broken by `(a, b, c)`.
pub fn select_top(scored: &[ScoredTriangle], m: usize) -> Vec<HeronTriangle> {
    let mut v = scored.to_vec();
    v.sort_by(by_score);
    v.into_iter().take(m).map(|s| s.triangle).collect()
}

/// Sorts a score list best first, the order used for score reports.
pub fn sort_scores(scored: &mut [ScoredTriangle]) {
    scored.sort_by(by_score);
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn t(a: u64, b: u64, c: u64) -> HeronTriangle {
        HeronTriangle::new(a, b, c).unwrap()
    }

    #[test]
    fn neg_diameter() {
        assert_eq!(score_neg_diameter(&t(5, 4, 3)), -5.0);
    }

    #[test]
    fn score2_of_543() {
        let expect = 1.0 / libm::log(5.0) + 1.0 / libm::log(4.0) + 1.0 / libm::log(3.0);
        let s = score2(&t(5, 4, 3)).unwrap();
        assert!((s - expect).abs() < 1e-12);
        assert!((s - 2.2528).abs() < 2e-4);
        assert_ne!(score2(&t(10, 8, 6)).unwrap(), s);
    }

    #[test]
    fn ellipse_keys_of_543() {
        assert_eq!(ellipse_keys(&t(5, 4, 3)), [Ratio::new(7, 5), Ratio::from_integer(2), Ratio::from_integer(3)]);
        assert_eq!(ellipse_keys(&t(10, 8, 6)), ellipse_keys(&t(5, 4, 3)));
    }

    #[test]
    fn select_top_ties_and_overflow() {
        let list = [t(6, 5, 5), t(5, 4, 3), t(8, 5, 5)];
        let scored = score_all(&list, ScoreMethod::NegDiameter).unwrap();
        assert_eq!(select_top(&scored, 10), vec![t(5, 4, 3), t(6, 5, 5), t(8, 5, 5)]);
        let mut rev = scored.clone();
        rev.reverse();
        assert_eq!(select_top(&rev, 2), select_top(&scored, 2));
    }

    #[test]
    fn frequency_of_empty_input() {
        assert!(frequency_rank(core::iter::empty()).unwrap().is_empty());
    }
}
