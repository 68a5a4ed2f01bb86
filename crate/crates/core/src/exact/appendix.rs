//! Counting formulas for edge covers and weak edge colourings of `K_m`.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use super::to_string;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    Formula,
    Brute,
}

/// Brute force over edge subsets of `K_m` is limited to `C(m,2) ≤ 20`.
const MAX_BRUTE_EDGES: usize = 20;
/// Brute force over edge colourings is limited to `q^{C(m,2)} ≤ 1e8`.
const MAX_BRUTE_COLOURINGS: f64 = 1e8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeCoverCount {
    pub m: usize,
    pub mode: CountMode,
    /// Edge covers of `K_m`.
    #[serde(serialize_with = "to_string")]
    pub covers: BigInt,
    /// Edge sets of `K_m` covering every vertex except a fixed one, which is
    /// left uncovered. Equals the cover count of `K_{m-1}`.
    #[serde(serialize_with = "to_string")]
    pub fixed_uncovered: BigInt,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeakColouringCount {
    pub m: usize,
    pub q: u32,
    pub mode: CountMode,
    /// Edge colourings of `K_m` with no monochromatic vertex.
    #[serde(serialize_with = "to_string")]
    pub weak: BigInt,
    /// Edge colourings in which a fixed vertex is monochromatic and every
    /// other vertex is not.
    #[serde(serialize_with = "to_string")]
    pub fixed_monochromatic: BigInt,
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| acc * (n - j) / (j + 1))
}

fn pairs(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

fn sign(i: usize) -> BigInt {
    if i.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `Σ_{i=0}^{m} (-1)^i C(m,i) 2^{C(m-i,2)}`.
fn edge_cover_formula(m: usize) -> BigInt {
    let two = BigInt::from(2);
    (0..=m).fold(BigInt::zero(), |acc, i| {
        acc + sign(i) * binomial(m, i) * Pow::pow(&two, pairs(m - i) as u32)
    })
}

/// Edges of `K_m` as vertex pairs, in lexicographic order.
fn complete_edges(m: usize) -> Vec<(usize, usize)> {
    (0..m)
        .flat_map(|u| (u + 1..m).map(move |v| (u, v)))
        .collect()
}

pub fn edge_cover_count(m: usize, mode: CountMode) -> Result<EdgeCoverCount> {
    if m == 0 {
        return Err(Error::param("m must be positive"));
    }
    let (covers, fixed_uncovered) = match mode {
        CountMode::Formula => (edge_cover_formula(m), edge_cover_formula(m - 1)),
        CountMode::Brute => {
            let edges = complete_edges(m);
            if edges.len() > MAX_BRUTE_EDGES {
                return Err(Error::GuardExceeded {
                    size: 2f64.powi(edges.len() as i32),
                    limit: 2f64.powi(MAX_BRUTE_EDGES as i32),
                });
            }
            let all = (1u32 << m) - 1;
            let (mut covers, mut fixed) = (0u64, 0u64);
            for subset in 0..1u32 << edges.len() {
                let covered = edges
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| subset >> i & 1 == 1)
                    .fold(0u32, |acc, (_, &(u, v))| acc | 1 << u | 1 << v);
                if covered == all {
                    covers += 1;
                } else if covered == all & !1 {
                    fixed += 1;
                }
            }
            (BigInt::from(covers), BigInt::from(fixed))
        }
    };
    Ok(EdgeCoverCount {
        m,
        mode,
        covers,
        fixed_uncovered,
    })
}

/// `M_m = q^{C(m,2)} + q Σ_{i=1}^{m} (-1)^i C(m,i) q^{C(m-i,2)}` and
/// `M'_m = q Σ_{i=0}^{m-1} (-1)^i C(m-1,i) q^{C(m-1-i,2)}`.
fn weak_formula(m: usize, q: u32) -> (BigInt, BigInt) {
    let qb = BigInt::from(q);
    let power = |e: usize| Pow::pow(&qb, e as u32);
    let tail = (1..=m).fold(BigInt::zero(), |acc, i| {
        acc + sign(i) * binomial(m, i) * power(pairs(m - i))
    });
    let weak = power(pairs(m)) + &qb * tail;
    let fixed = &qb
        * (0..m).fold(BigInt::zero(), |acc, i| {
            acc + sign(i) * binomial(m - 1, i) * power(pairs(m - 1 - i))
        });
    (weak, fixed)
}

pub fn weak_edge_colouring_count(m: usize, q: u32, mode: CountMode) -> Result<WeakColouringCount> {
    if m < 2 || q == 0 {
        return Err(Error::param("need m ≥ 2 and q ≥ 1"));
    }
    let (weak, fixed_monochromatic) = match mode {
        CountMode::Formula => weak_formula(m, q),
        CountMode::Brute => {
            let edges = complete_edges(m);
            let size = (q as f64).powi(edges.len() as i32);
            if size > MAX_BRUTE_COLOURINGS {
                return Err(Error::GuardExceeded {
                    size,
                    limit: MAX_BRUTE_COLOURINGS,
                });
            }
            let incident: Vec<Vec<usize>> = (0..m)
                .map(|v| {
                    (0..edges.len())
                        .filter(|&i| edges[i].0 == v || edges[i].1 == v)
                        .collect()
                })
                .collect();
            let mut colour = vec![0u32; edges.len()];
            let (mut weak, mut fixed) = (0u64, 0u64);
            for _ in 0..size as u64 {
                let mono = |v: usize| {
                    let first = colour[incident[v][0]];
                    incident[v].iter().all(|&i| colour[i] == first)
                };
                let others_fine = (1..m).all(|v| !mono(v));
                if others_fine {
                    if mono(0) {
                        fixed += 1;
                    } else {
                        weak += 1;
                    }
                }
                for c in colour.iter_mut() {
                    *c += 1;
                    if *c < q {
                        break;
                    }
                    *c = 0;
                }
            }
            (BigInt::from(weak), BigInt::from(fixed))
        }
    };
    Ok(WeakColouringCount {
        m,
        q,
        mode,
        weak,
        fixed_monochromatic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_cover_anchors() {
        for mode in [CountMode::Formula, CountMode::Brute] {
            assert_eq!(edge_cover_count(2, mode).unwrap().covers, BigInt::from(1));
            assert_eq!(edge_cover_count(3, mode).unwrap().covers, BigInt::from(4));
        }
        for m in 1..=6 {
            assert_eq!(
                edge_cover_count(m, CountMode::Formula).unwrap(),
                EdgeCoverCount {
                    mode: CountMode::Formula,
                    ..edge_cover_count(m, CountMode::Brute).unwrap()
                }
            );
        }
        assert!(edge_cover_count(7, CountMode::Brute).is_err());
    }

    #[test]
    fn weak_colouring_anchors() {
        for mode in [CountMode::Formula, CountMode::Brute] {
            let r = weak_edge_colouring_count(3, 2, mode).unwrap();
            assert_eq!(r.weak, BigInt::from(0));
            assert_eq!(r.fixed_monochromatic, BigInt::from(2));
            assert_eq!(weak_edge_colouring_count(3, 3, mode).unwrap().weak, BigInt::from(6));
        }
        for (m, q) in [(2, 2), (4, 2), (4, 3), (5, 2)] {
            let f = weak_edge_colouring_count(m, q, CountMode::Formula).unwrap();
            let b = weak_edge_colouring_count(m, q, CountMode::Brute).unwrap();
            assert_eq!((f.weak, f.fixed_monochromatic), (b.weak, b.fixed_monochromatic));
        }
    }
}
