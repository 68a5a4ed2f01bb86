use std::collections::HashSet;

use rand::seq::index::sample;
use serde::Serialize;

use super::{Graph, Hypergraph};
use crate::error::{Error, Result};
use crate::rng::seeded_rng;

/// Consecutive duplicate draws tolerated before the generator gives up.
const MAX_CONSECUTIVE_REJECTIONS: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RandomGenReport {
    pub requested: usize,
    pub produced: usize,
    pub shortfall: usize,
    pub seed: u64,
}

/// Random `m`-uniform hypergraph with every vertex degree at most `max_degree`.
///
/// Edges are drawn as uniform `m`-subsets of the vertices that still have
/// degree budget left; repeated edges are rejected. Generation stops at
/// `edge_target` edges or when fewer than `m` vertices have budget, and the
/// report records any shortfall.
pub fn gen_random_uniform(
    n: usize,
    m: usize,
    max_degree: usize,
    edge_target: usize,
    seed: u64,
) -> Result<(Hypergraph, RandomGenReport)> {
    if m < 2 {
        return Err(Error::param(format!("edge size m = {m} must be at least 2")));
    }
    if m > n {
        return Err(Error::param(format!("edge size m = {m} exceeds n = {n}")));
    }
    if max_degree == 0 {
        return Err(Error::param("maximum degree must be at least 1"));
    }
    let mut rng = seeded_rng(seed);
    let mut budget = vec![max_degree; n];
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut edges = Vec::with_capacity(edge_target);
    let mut rejections = 0;
    while edges.len() < edge_target {
        let available: Vec<usize> = (0..n).filter(|&v| budget[v] > 0).collect();
        if available.len() < m {
            break;
        }
        let mut edge: Vec<usize> = sample(&mut rng, available.len(), m)
            .into_iter()
            .map(|i| available[i])
            .collect();
        edge.sort_unstable();
        if seen.contains(&edge) {
            rejections += 1;
            if rejections > MAX_CONSECUTIVE_REJECTIONS {
                break;
            }
            continue;
        }
        rejections = 0;
        for &v in &edge {
            budget[v] -= 1;
        }
        seen.insert(edge.clone());
        edges.push(edge);
    }
    let produced = edges.len();
    let h = Hypergraph::new(n, edges)?;
    Ok((
        h,
        RandomGenReport {
            requested: edge_target,
            produced,
            shortfall: edge_target - produced,
            seed,
        },
    ))
}

/// The frozen colouring construction: `q` groups of `m - 1` vertices, with an
/// edge `{v} ∪ V_j` for every group `V_j` and every vertex `v` outside it.
///
/// Group `j` occupies vertices `j(m-1) .. (j+1)(m-1)`. Colouring each group
/// with its own colour gives a proper colouring in which no single-site
/// recolouring is legal.
pub fn gen_frozen(q: usize, m: usize) -> Result<Hypergraph> {
    if q < 2 {
        return Err(Error::param(format!("q = {q} must be at least 2")));
    }
    if m < 3 {
        return Err(Error::param(format!("m = {m} must be at least 3")));
    }
    let group = m - 1;
    let n = q * group;
    let mut edges = Vec::with_capacity(q * (n - group));
    for j in 0..q {
        let members = j * group..(j + 1) * group;
        for v in (0..n).filter(|v| !members.contains(v)) {
            let mut edge: Vec<usize> = members.clone().collect();
            edge.push(v);
            edges.push(edge);
        }
    }
    Hypergraph::new(n, edges)
}

/// Replaces every vertex of `g` by a block of `k = ⌈m/2⌉` fresh vertices and
/// every graph edge `{u, v}` by the hyperedge `W_u ∪ W_v`.
///
/// Block `W_v` is `v*k .. (v+1)*k`. Returns the hypergraph and `k`.
pub fn gen_blowup(g: &Graph, m: usize) -> Result<(Hypergraph, usize)> {
    if m < 3 {
        return Err(Error::param(format!("m = {m} must be at least 3")));
    }
    let k = m.div_ceil(2);
    let block = |v: usize| v * k..(v + 1) * k;
    let edges = g
        .edges()
        .iter()
        .map(|e| block(e[0]).chain(block(e[1])).collect())
        .collect();
    Ok((Hypergraph::new(g.n() * k, edges)?, k))
}
