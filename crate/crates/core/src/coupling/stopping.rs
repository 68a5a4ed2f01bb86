//! Stopping-time experiments: start the coupled pair at distance 1 and run it
//! until the distance first changes.

use std::collections::BTreeMap;

use rand::seq::IndexedRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{coupled_step, default_t_max, CoupledPair};
use crate::chains::{
    can_insert, can_recolour, greedy_colouring, is_independent, step, ChainParams, ChainState,
    ColouringState, IndSetState,
};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rng::replicate_rng;

/// z for a one-sided 99% normal bound.
const Z99: f64 = 2.326_347_874;

/// How the adjacent starting pair `(X, Y)` is chosen in each replicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "policy", content = "w", rename_all = "kebab-case")]
pub enum WPolicy {
    /// `w` uniform over maximum-degree vertices, background sampled from the
    /// chain.
    RandomMaxDegree,
    /// `w` uniform over all vertices, background sampled from the chain.
    Uniform,
    /// `w` uniform over maximum-degree vertices; the background makes the
    /// edges through `w` as dangerous as possible. For independent sets every
    /// other vertex of those edges is occupied where feasible; for colourings
    /// the neighbours of `w` take the two disputed colours.
    Adversarial,
    /// The given `w` with an empty background (independent sets) or a greedy
    /// colouring (colourings).
    Fixed(usize),
}

/// Builds a feasible pair differing exactly at one vertex `w`; returns
/// `(X, Y, w)`. For independent sets `Y = X ∪ {w}`.
pub fn adjacent_pair<R: Rng + ?Sized>(
    h: &Hypergraph,
    params: &ChainParams,
    policy: WPolicy,
    rng: &mut R,
) -> Result<(ChainState, ChainState, usize)> {
    params.validate()?;
    if h.n() == 0 {
        return Err(Error::NoAdjacentPair("hypergraph has no vertices".into()));
    }
    let pick_w = |rng: &mut R| -> Result<usize> {
        match policy {
            WPolicy::Fixed(w) if w >= h.n() => Err(Error::VertexOutOfRange { index: w, n: h.n() }),
            WPolicy::Fixed(w) => Ok(w),
            WPolicy::Uniform => Ok(rng.random_range(0..h.n())),
            WPolicy::RandomMaxDegree | WPolicy::Adversarial => {
                Ok(*h.max_degree_vertices().choose(rng).expect("n > 0"))
            }
        }
    };
    let burn_in = 10 * h.n() as u64;
    match *params {
        ChainParams::IndependentSet { .. } => {
            let w = pick_w(rng)?;
            let mut y = match policy {
                WPolicy::Fixed(_) | WPolicy::Adversarial => IndSetState::empty(h.n()),
                WPolicy::RandomMaxDegree | WPolicy::Uniform => {
                    let mut state = ChainState::IndependentSet(IndSetState::empty(h.n()));
                    for _ in 0..burn_in {
                        step(h, &mut state, params, rng);
                    }
                    let ChainState::IndependentSet(s) = state else { unreachable!() };
                    s
                }
            };
            y.insert(w);
            // Break any edge that w completed by dropping another of its vertices.
            for &e in h.incident(w) {
                let edge = &h.edges()[e];
                if edge.iter().all(|&u| y.contains(u)) {
                    let others: Vec<usize> = edge.iter().copied().filter(|&u| u != w).collect();
                    y.remove(*others.choose(rng).expect("edges have >= 2 vertices"));
                }
            }
            if policy == WPolicy::Adversarial {
                for &e in h.incident(w) {
                    for &u in &h.edges()[e] {
                        if !y.contains(u) && can_insert(h, &y, u) {
                            y.insert(u);
                        }
                    }
                }
            }
            debug_assert!(is_independent(h, &y));
            let mut x = y.clone();
            x.remove(w);
            Ok((ChainState::IndependentSet(x), ChainState::IndependentSet(y), w))
        }
        ChainParams::Colouring { q } => {
            let mut base = ChainState::Colouring(greedy_colouring(h, q)?);
            if !matches!(policy, WPolicy::Fixed(_)) {
                for _ in 0..burn_in {
                    step(h, &mut base, params, rng);
                }
            }
            let ChainState::Colouring(mut x) = base else { unreachable!() };
            for _attempt in 0..(4 * h.n()).max(16) {
                let w = pick_w(rng)?;
                let options: Vec<u32> = (1..=q)
                    .filter(|&k| k != x.colour(w) && can_recolour(h, &x, w, k))
                    .collect();
                let Some(&other) = (match policy {
                    WPolicy::Fixed(_) => options.first(),
                    _ => options.choose(rng),
                }) else {
                    if matches!(policy, WPolicy::Fixed(_)) {
                        break;
                    }
                    continue;
                };
                let mut y = x.clone();
                y.set(w, other);
                if policy == WPolicy::Adversarial {
                    make_colour_dispute(h, &mut x, &mut y, w);
                }
                return Ok((ChainState::Colouring(x), ChainState::Colouring(y), w));
            }
            Err(Error::NoAdjacentPair(
                "no vertex admits a second legal colour".into(),
            ))
        }
    }
}

/// Recolours the other vertices of each edge through `w` alternately with
/// `w`'s colour in `y` and in `x`, whenever that stays legal in both copies.
fn make_colour_dispute(h: &Hypergraph, x: &mut ColouringState, y: &mut ColouringState, w: usize) {
    let (a, b) = (x.colour(w), y.colour(w));
    for &e in h.incident(w) {
        let others: Vec<usize> = h.edges()[e].iter().copied().filter(|&u| u != w).collect();
        for (i, &u) in others.iter().enumerate() {
            let target = if i % 2 == 0 { b } else { a };
            if x.colour(u) != target && can_recolour(h, x, u, target) && can_recolour(h, y, u, target)
            {
                x.set(u, target);
                y.set(u, target);
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReplicateOutcome {
    pub replicate: u64,
    pub w: usize,
    /// Stopping time, or the cap when censored.
    pub t: u64,
    pub distance: usize,
    pub censored: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StoppingStats {
    pub replicates: u64,
    pub completed: u64,
    pub censored: u64,
    pub coupled: u64,
    pub diverged: u64,
    /// Mean of `d(X_T, Y_T)` over completed replicates.
    pub alpha_hat: f64,
    pub alpha_se: f64,
    pub alpha_upper_99: f64,
    /// Pooled per-step stopping frequency: completed stops / steps observed.
    pub p_hat: f64,
    pub p_se: f64,
    pub total_steps: u64,
    pub t_max: u64,
    pub t_histogram: Vec<(u64, u64)>,
}

impl StoppingStats {
    pub fn from_outcomes(outcomes: &[ReplicateOutcome], t_max: u64) -> Self {
        let replicates = outcomes.len() as u64;
        let done: Vec<&ReplicateOutcome> = outcomes.iter().filter(|o| !o.censored).collect();
        let completed = done.len() as u64;
        let coupled = done.iter().filter(|o| o.distance == 0).count() as u64;
        let total_steps: u64 = outcomes.iter().map(|o| o.t).sum();
        let (alpha_hat, alpha_se) = if completed == 0 {
            (f64::NAN, f64::NAN)
        } else {
            let k = completed as f64;
            let mean = done.iter().map(|o| o.distance as f64).sum::<f64>() / k;
            let var = if completed > 1 {
                done.iter()
                    .map(|o| (o.distance as f64 - mean).powi(2))
                    .sum::<f64>()
                    / (k - 1.0)
            } else {
                0.0
            };
            (mean, (var / k).sqrt())
        };
        let p_hat = if total_steps == 0 {
            f64::NAN
        } else {
            completed as f64 / total_steps as f64
        };
        let p_se = if completed == 0 {
            f64::NAN
        } else {
            p_hat * ((1.0 - p_hat).max(0.0) / completed as f64).sqrt()
        };
        let mut hist = BTreeMap::new();
        for o in &done {
            *hist.entry(o.t).or_insert(0u64) += 1;
        }
        Self {
            replicates,
            completed,
            censored: replicates - completed,
            coupled,
            diverged: completed - coupled,
            alpha_hat,
            alpha_se,
            alpha_upper_99: alpha_hat + Z99 * alpha_se,
            p_hat,
            p_se,
            total_steps,
            t_max,
            t_histogram: hist.into_iter().collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StoppingRun {
    pub seed: u64,
    pub policy: WPolicy,
    pub stats: StoppingStats,
    #[serde(skip)]
    pub outcomes: Vec<ReplicateOutcome>,
}

/// Runs `replicates` independent coupled pairs from adjacent starts until the
/// distance first leaves 1, or until `t_max` steps (default `40·Δ·n`).
pub fn stopping_experiment(
    h: &Hypergraph,
    params: &ChainParams,
    policy: WPolicy,
    replicates: u64,
    seed: u64,
    t_max: Option<u64>,
) -> Result<StoppingRun> {
    if replicates == 0 {
        return Err(Error::param("replicates must be positive"));
    }
    let t_max = t_max.unwrap_or_else(|| default_t_max(h));
    // Fail fast on instances without adjacent pairs.
    adjacent_pair(h, params, policy, &mut replicate_rng(seed, 0))?;
    let outcomes = (0..replicates)
        .into_par_iter()
        .map(|i| -> Result<ReplicateOutcome> {
            let mut rng = replicate_rng(seed, i);
            let (x, y, w) = adjacent_pair(h, params, policy, &mut rng)?;
            let mut pair = CoupledPair::new(h, params, x, y)?;
            while pair.hamming() == 1 && pair.steps() < t_max {
                coupled_step(h, &mut pair, params, &mut rng);
            }
            Ok(ReplicateOutcome {
                replicate: i,
                w,
                t: pair.steps(),
                distance: pair.hamming(),
                censored: pair.hamming() == 1,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StoppingRun {
        seed,
        policy,
        stats: StoppingStats::from_outcomes(&outcomes, t_max),
        outcomes,
    })
}
