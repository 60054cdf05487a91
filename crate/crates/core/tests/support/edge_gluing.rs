//! Independent enumeration of 3- and 4-clusters by gluing two Heronian
//! triangles along a common edge, with plain rational arithmetic and a
//! brute-force canonical key.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use ncluster_core::heron::generate_naive;

type Q = BigRational;

fn q(x: i64) -> Q {
    Q::from_integer(x.into())
}

fn sqrt_q(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().to_biguint()?.sqrt();
    let d = x.denom().to_biguint()?.sqrt();
    let r = Q::new(n.into(), d.into());
    (&r * &r == *x).then_some(r)
}

/// Largest upper-triangle vector over all labelings, after dividing by the gcd.
fn key(d: &[[u64; 4]; 4], n: usize) -> Vec<u64> {
    let mut g = 0;
    for i in 0..n {
        for j in 0..n {
            g = g.gcd(&d[i][j]);
        }
    }
    let mut best = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let mut v = Vec::new();
        for j in 1..n {
            for i in 0..j {
                v.push(d[p[i]][p[j]] / g);
            }
        }
        if v > best {
            best = v;
        }
    });
    best
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

fn area_radicand(a: u64, b: u64, c: u64) -> i128 {
    let (a, b, c) = (a as i128, b as i128, c as i128);
    (a + b + c) * (a + b - c) * (a - b + c) * (-a + b + c)
}

/// Keys of all 3- and 4-point sets with diameter at most `limit` that
/// arise from gluing two Heronian triangles along a common edge.
pub fn oracle(limit: u64) -> BTreeSet<Vec<u64>> {
    let tris: Vec<_> = generate_naive(limit).collect();
    let mut out = BTreeSet::new();
    for t in &tris {
        let d = [[0, t.a, t.b, 0], [t.a, 0, t.c, 0], [t.b, t.c, 0, 0], [0; 4]];
        out.insert(key(&d, 3));
    }
    for t1 in &tris {
        let s1 = [t1.a, t1.b, t1.c];
        for e_idx in 0..3 {
            let e = s1[e_idx];
            let (uw, vw) = (s1[(e_idx + 1) % 3], s1[(e_idx + 2) % 3]);
            let wx = (q(uw as i64) * q(uw as i64) - q(vw as i64) * q(vw as i64) + q(e as i64) * q(e as i64)) / q(2 * e as i64);
            let wy = sqrt_q(&(q(uw as i64) * q(uw as i64) - &wx * &wx)).unwrap();
            for t2 in &tris {
                let s2 = [t2.a, t2.b, t2.c];
                for f_idx in 0..3 {
                    if s2[f_idx] != e {
                        continue;
                    }
                    let others = [s2[(f_idx + 1) % 3], s2[(f_idx + 2) % 3]];
                    for (ux, vx) in [(others[0], others[1]), (others[1], others[0])] {
                        let xx = (q(ux as i64) * q(ux as i64) - q(vx as i64) * q(vx as i64) + q(e as i64) * q(e as i64)) / q(2 * e as i64);
                        let h = sqrt_q(&(q(ux as i64) * q(ux as i64) - &xx * &xx)).unwrap();
                        for xy in [h.clone(), -h.clone()] {
                            let dd = (&wx - &xx) * (&wx - &xx) + (&wy - &xy) * (&wy - &xy);
                            let Some(w) = sqrt_q(&dd) else { continue };
                            if w.is_zero() || !w.is_integer() {
                                continue;
                            }
                            let w = w.to_integer().to_u64().unwrap();
                            if w > limit {
                                continue;
                            }
                            // points U, V, W, X
                            let d = [
                                [0, e, uw, ux],
                                [e, 0, vw, vx],
                                [uw, vw, 0, w],
                                [ux, vx, w, 0],
                            ];
                            let triples = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];
                            if triples.iter().any(|&(i, j, k)| area_radicand(d[i][j], d[i][k], d[j][k]) == 0) {
                                continue;
                            }
                            let mut p = [d[0][1] * d[2][3], d[0][2] * d[1][3], d[0][3] * d[1][2]];
                            p.sort();
                            if p[2] == p[0] + p[1] {
                                continue;
                            }
                            out.insert(key(&d, 4));
                        }
                    }
                }
            }
        }
    }
    out
}
