//! Total-variation distance between a chain's empirical law and its exact
//! stationary law.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{check_colouring_guard, check_subset_guard, independent_masks, proper_codes, Limits};
use crate::chains::{initial_state, step, ChainParams, ChainState, ColouringState, IndSetState};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rng::seeded_rng;

/// Per-state table rows are only emitted for supports up to this size.
const MAX_LISTED_STATES: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TvConfig {
    pub burn_in: u64,
    pub samples: u64,
    pub stride: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateProbability {
    pub state: ChainState,
    pub exact: f64,
    pub empirical: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TVReport {
    pub support_size: usize,
    pub visited_states: usize,
    /// The chain never left a strict subset of the support. For short runs
    /// this is only suggestive; for frozen starts it is conclusive.
    pub incomplete_support: bool,
    pub tv: f64,
    pub steps: u64,
    pub burn_in: u64,
    pub samples: u64,
    pub stride: u64,
    pub seed: u64,
    /// Exact and empirical probabilities per state, for small supports.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub states: Option<Vec<StateProbability>>,
}

fn key(state: &ChainState, params: &ChainParams) -> u64 {
    match (state, params) {
        (ChainState::IndependentSet(s), _) => s.to_mask().expect("guarded n"),
        (ChainState::Colouring(c), ChainParams::Colouring { q }) => c.encode(*q),
        _ => unreachable!("state kind checked by run setup"),
    }
}

/// Exact stationary law as sorted `(key, probability)` pairs.
fn exact_law(h: &Hypergraph, params: &ChainParams, limits: &Limits) -> Result<Vec<(u64, f64)>> {
    let mut weighted: Vec<(u64, f64)> = match *params {
        ChainParams::IndependentSet { lambda } => {
            check_subset_guard(h, limits)?;
            independent_masks(h)
                .map(|s| (s, lambda.powi(s.count_ones() as i32)))
                .collect()
        }
        ChainParams::Colouring { q } => {
            check_colouring_guard(h, q, limits)?;
            proper_codes(h, q).map(|c| (c, 1.0)).collect()
        }
    };
    if weighted.len() > limits.max_states {
        return Err(Error::GuardExceeded {
            size: weighted.len() as f64,
            limit: limits.max_states as f64,
        });
    }
    if weighted.is_empty() {
        return Err(Error::InfeasibleState("the state space is empty".into()));
    }
    weighted.par_sort_unstable_by_key(|&(k, _)| k);
    let z: f64 = weighted.iter().map(|&(_, w)| w).sum();
    weighted.iter_mut().for_each(|(_, w)| *w /= z);
    Ok(weighted)
}

fn decode(k: u64, n: usize, params: &ChainParams) -> ChainState {
    match *params {
        ChainParams::IndependentSet { .. } => ChainState::IndependentSet(IndSetState::from_mask(n, k)),
        ChainParams::Colouring { q } => ChainState::Colouring(ColouringState::decode(n, q, k)),
    }
}

/// TV distance from the chain's default start state.
pub fn stationary_tv(h: &Hypergraph, params: &ChainParams, cfg: TvConfig) -> Result<TVReport> {
    let x0 = initial_state(h, params)?;
    stationary_tv_from(h, params, x0, cfg, &Limits::default())
}

/// Runs `burn_in` steps from `x0`, then records the state after every
/// `stride` steps, `samples` times, and compares the visit frequencies with
/// the exact stationary law.
pub fn stationary_tv_from(
    h: &Hypergraph,
    params: &ChainParams,
    x0: ChainState,
    cfg: TvConfig,
    limits: &Limits,
) -> Result<TVReport> {
    params.validate()?;
    if cfg.samples == 0 || cfg.stride == 0 {
        return Err(Error::param("samples and stride must be positive"));
    }
    if x0.kind() != params.kind() || !x0.is_feasible(h, params) {
        return Err(Error::InfeasibleState("start state is not feasible for this chain".into()));
    }
    let law = exact_law(h, params, limits)?;

    let mut rng = seeded_rng(cfg.seed);
    let mut state = x0;
    if h.n() > 0 {
        for _ in 0..cfg.burn_in {
            step(h, &mut state, params, &mut rng);
        }
    }
    let mut visits: HashMap<u64, u64> = HashMap::new();
    for _ in 0..cfg.samples {
        if h.n() > 0 {
            for _ in 0..cfg.stride {
                step(h, &mut state, params, &mut rng);
            }
        }
        *visits.entry(key(&state, params)).or_default() += 1;
    }

    let total = cfg.samples as f64;
    let empirical = |k: u64| visits.get(&k).copied().unwrap_or(0) as f64 / total;
    let tv = 0.5 * law.iter().map(|&(k, p)| (p - empirical(k)).abs()).sum::<f64>();
    let states = (law.len() <= MAX_LISTED_STATES).then(|| {
        law.iter()
            .map(|&(k, p)| StateProbability {
                state: decode(k, h.n(), params),
                exact: p,
                empirical: empirical(k),
            })
            .collect()
    });
    Ok(TVReport {
        support_size: law.len(),
        visited_states: visits.len(),
        incomplete_support: visits.len() < law.len(),
        tv,
        steps: cfg.burn_in + cfg.samples * cfg.stride,
        burn_in: cfg.burn_in,
        samples: cfg.samples,
        stride: cfg.stride,
        seed: cfg.seed,
        states,
    })
}
