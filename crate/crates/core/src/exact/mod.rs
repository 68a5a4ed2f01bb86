//! Brute-force counting oracles and closed-form counting formulas.
//!
//! Every enumeration is bounded by an explicit guard; exceeding it is an
//! error, never a silent truncation.

mod appendix;
mod tv;

pub use appendix::{
    edge_cover_count, weak_edge_colouring_count, CountMode, EdgeCoverCount, WeakColouringCount,
};
pub use tv::{stationary_tv, stationary_tv_from, StateProbability, TVReport, TvConfig};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::chains::ColouringState;
use crate::error::{Error, Result};
use crate::hypergraph::{gen_blowup, Graph, Hypergraph};

/// Enumeration guards.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Limits {
    /// Largest `n` for subset enumeration (`2^n` subsets).
    pub max_subset_vertices: usize,
    /// Largest `q^n` for colouring enumeration.
    pub max_colourings: f64,
    /// Largest state space for which an exact stationary law is built.
    pub max_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_subset_vertices: 25,
            max_colourings: 1e8,
            max_states: 100_000,
        }
    }
}

pub(crate) fn to_string<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Independent-set counts by size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountProfile {
    pub n: usize,
    /// `counts[i]` is the number of independent sets of size `i`.
    pub counts: Vec<u64>,
    pub total: u64,
}

impl CountProfile {
    /// `Z(λ) = Σ N_i λ^i`.
    pub fn partition(&self, lambda: f64) -> f64 {
        self.counts.iter().rev().fold(0.0, |acc, &c| acc * lambda + c as f64)
    }

    pub fn partition_exact(&self, lambda: &BigRational) -> BigRational {
        self.counts.iter().rev().fold(BigRational::zero(), |acc, &c| {
            acc * lambda + BigRational::from_integer(BigInt::from(c))
        })
    }
}

fn edge_masks(h: &Hypergraph) -> Vec<u64> {
    h.edges()
        .iter()
        .map(|e| e.iter().fold(0u64, |m, &v| m | 1 << v))
        .collect()
}

pub(crate) fn check_subset_guard(h: &Hypergraph, limits: &Limits) -> Result<()> {
    if h.n() > limits.max_subset_vertices.min(63) {
        return Err(Error::GuardExceeded {
            size: 2f64.powi(h.n() as i32),
            limit: 2f64.powi(limits.max_subset_vertices as i32),
        });
    }
    Ok(())
}

/// Calls `f(mask)` for every independent set of `h`, in parallel chunks.
pub(crate) fn independent_masks(h: &Hypergraph) -> impl ParallelIterator<Item = u64> + '_ {
    let masks = edge_masks(h);
    (0..1u64 << h.n())
        .into_par_iter()
        .filter(move |&s| masks.iter().all(|&e| s & e != e))
}

pub fn count_independent_sets(h: &Hypergraph) -> Result<CountProfile> {
    count_independent_sets_with(h, &Limits::default())
}

pub fn count_independent_sets_with(h: &Hypergraph, limits: &Limits) -> Result<CountProfile> {
    check_subset_guard(h, limits)?;
    let n = h.n();
    let counts = independent_masks(h)
        .fold(
            || vec![0u64; n + 1],
            |mut acc, s| {
                acc[s.count_ones() as usize] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let total = counts.iter().sum();
    Ok(CountProfile { n, counts, total })
}

pub(crate) fn check_colouring_guard(h: &Hypergraph, q: u32, limits: &Limits) -> Result<()> {
    let size = (q as f64).powi(h.n() as i32);
    if size > limits.max_colourings {
        return Err(Error::GuardExceeded {
            size,
            limit: limits.max_colourings,
        });
    }
    Ok(())
}

/// Base-`q` codes of all proper colourings, in parallel chunks.
pub(crate) fn proper_codes(h: &Hypergraph, q: u32) -> impl ParallelIterator<Item = u64> + '_ {
    const CHUNK: u64 = 1 << 14;
    let n = h.n();
    let total = (q as u64).pow(n as u32);
    (0..total.div_ceil(CHUNK)).into_par_iter().flat_map_iter(move |chunk| {
        let start = chunk * CHUNK;
        let end = (start + CHUNK).min(total);
        let mut c = ColouringState::decode(n, q, start);
        let mut out = Vec::new();
        for code in start..end {
            if h
                .edges()
                .iter()
                .all(|e| e.iter().any(|&v| c.colour(v) != c.colour(e[0])))
            {
                out.push(code);
            }
            // Odometer increment, least significant digit first.
            for v in 0..n {
                if c.colour(v) < q {
                    c.set(v, c.colour(v) + 1);
                    break;
                }
                c.set(v, 1);
            }
        }
        out
    })
}

/// Number of proper `q`-colourings of `h`.
pub fn count_colourings(h: &Hypergraph, q: u32) -> Result<u64> {
    count_colourings_with(h, q, &Limits::default())
}

pub fn count_colourings_with(h: &Hypergraph, q: u32, limits: &Limits) -> Result<u64> {
    if q == 0 {
        return Err(Error::param("q must be positive"));
    }
    check_colouring_guard(h, q, limits)?;
    Ok(proper_codes(h, q).count() as u64)
}

/// Parses `"3"`, `"-1.25"` or `"3/2"` as an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::param(format!("not a rational number: {text:?}"));
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    if frac.chars().any(|c| !c.is_ascii_digit()) || (int.is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let negative = int.starts_with('-');
    let digits = format!("{}{frac}", int.trim_start_matches(['-', '+']));
    let magnitude: BigInt = digits.parse().map_err(|_| bad())?;
    let scale = Pow::pow(&BigInt::from(10), frac.len() as u32);
    let value = BigRational::new(magnitude, scale);
    Ok(if negative { -value } else { value })
}

/// `Z_G(λ)` by enumeration.
pub fn hardcore_partition(g: &Graph, lambda: f64) -> Result<f64> {
    Ok(count_independent_sets(g.as_hypergraph())?.partition(lambda))
}

pub fn hardcore_partition_exact(g: &Graph, lambda: &BigRational) -> Result<BigRational> {
    Ok(count_independent_sets(g.as_hypergraph())?.partition_exact(lambda))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlowupCheck {
    pub m: usize,
    pub k: usize,
    pub graph_vertices: usize,
    /// Independent sets of the blown-up hypergraph.
    #[serde(serialize_with = "to_string")]
    pub lhs: BigInt,
    /// `(2^k - 1)^n · Z_G(1/(2^k - 1))`.
    #[serde(serialize_with = "to_string")]
    pub rhs: BigRational,
    pub equal: bool,
}

/// Compares the independent-set count of the blow-up of `g` with its
/// closed form in the hard-core partition function of `g`.
pub fn blowup_identity_check(g: &Graph, m: usize) -> Result<BlowupCheck> {
    let (h, k) = gen_blowup(g, m)?;
    let lhs = BigInt::from(count_independent_sets(&h)?.total);
    let n = g.n();
    let base = BigInt::from((1u64 << k) - 1);
    let lambda = BigRational::new(BigInt::one(), base.clone());
    let z = hardcore_partition_exact(g, &lambda)?;
    let rhs = BigRational::from_integer(Pow::pow(&base, n as u32)) * z;
    let equal = rhs.is_integer() && *rhs.numer() == lhs;
    Ok(BlowupCheck {
        m,
        k,
        graph_vertices: n,
        lhs,
        rhs,
        equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge3() -> Hypergraph {
        Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap()
    }

    #[test]
    fn independent_set_examples() {
        let p = count_independent_sets(&edge3()).unwrap();
        assert_eq!(p.total, 7);
        assert_eq!(p.counts, vec![1, 3, 3, 0]);
        assert_eq!(count_independent_sets(&Hypergraph::empty(3)).unwrap().total, 8);
        let two = edge3().disjoint_union(&edge3());
        assert_eq!(count_independent_sets(&two).unwrap().total, 49);
        assert!(matches!(
            count_independent_sets(&Hypergraph::empty(26)),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn colouring_examples() {
        assert_eq!(count_colourings(&edge3(), 2).unwrap(), 6);
        assert_eq!(count_colourings(&edge3(), 1).unwrap(), 0);
        let frozen = crate::hypergraph::gen_frozen(2, 3).unwrap();
        let c = count_colourings(&frozen, 2).unwrap();
        assert!(c >= 2);
        let brute = (0..16u64)
            .filter(|&code| crate::chains::is_proper(&frozen, &ColouringState::decode(4, 2, code), 2))
            .count() as u64;
        assert_eq!(c, brute);
        assert!(count_colourings(&Hypergraph::empty(30), 3).is_err());
    }

    #[test]
    fn partition_examples() {
        let k2 = Graph::complete(2);
        assert!((hardcore_partition(&k2, 0.7).unwrap() - 2.4).abs() < 1e-12);
        let tri = Graph::complete(3);
        assert!((hardcore_partition(&tri, 2.0).unwrap() - 7.0).abs() < 1e-12);
        assert_eq!(hardcore_partition(&Graph::path(4), 0.0).unwrap(), 1.0);
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(
            hardcore_partition_exact(&k2, &third).unwrap(),
            BigRational::new(5.into(), 3.into())
        );
    }

    #[test]
    fn rationals_parse_exactly() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(parse_rational("3/2").unwrap(), r(3, 2));
        assert_eq!(parse_rational("0.25").unwrap(), r(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), r(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), r(7, 1));
        assert_eq!(parse_rational(".5").unwrap(), r(1, 2));
        for bad in ["", "1/0", "a", "1.2.3", "1e3", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn blowup_examples() {
        let r = blowup_identity_check(&Graph::complete(2), 4).unwrap();
        assert_eq!(r.lhs, BigInt::from(15));
        assert!(r.equal);
        assert!(blowup_identity_check(&Graph::path(3), 4).unwrap().equal);
        let empty = Graph::from_edges(3, &[]).unwrap();
        let r = blowup_identity_check(&empty, 3).unwrap();
        assert_eq!(r.lhs, BigInt::from(64));
        assert!(r.equal);
    }
}
