//! Identity coupling of two chains and the experiments built on it.
//!
//! Both copies consume one shared [`Proposal`] per step. A single-site update
//! can only change the disagreement at the chosen vertex, so the Hamming
//! distance is maintained incrementally.

mod drift;
mod gambler;
mod stopping;

pub use drift::{one_step_drift_exact, one_step_drift_mc, DriftReport};
pub use gambler::{gambler_game, GamblerParams, GamblerTrace};
pub use stopping::{
    adjacent_pair, stopping_experiment, ReplicateOutcome, StoppingRun, StoppingStats, WPolicy,
};

use rand::Rng;
use serde::Serialize;

use crate::chains::{apply_proposal, ChainParams, ChainState, Proposal};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rng::seeded_rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoupledPair {
    x: ChainState,
    y: ChainState,
    hamming: usize,
    steps: u64,
}

impl CoupledPair {
    pub fn new(h: &Hypergraph, params: &ChainParams, x: ChainState, y: ChainState) -> Result<Self> {
        if !x.is_feasible(h, params) || !y.is_feasible(h, params) {
            return Err(Error::InfeasibleState(
                "both copies must be feasible for the chain".into(),
            ));
        }
        let hamming = x.hamming(&y)?;
        Ok(Self {
            x,
            y,
            hamming,
            steps: 0,
        })
    }

    pub fn x(&self) -> &ChainState {
        &self.x
    }

    pub fn y(&self) -> &ChainState {
        &self.y
    }

    pub fn hamming(&self) -> usize {
        self.hamming
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Applies one proposal to both copies.
    pub fn apply(&mut self, h: &Hypergraph, params: &ChainParams, proposal: Proposal) {
        let v = proposal.vertex();
        let agreed = self.x.agrees_at(&self.y, v);
        apply_proposal(h, &mut self.x, params, proposal);
        apply_proposal(h, &mut self.y, params, proposal);
        match (agreed, self.x.agrees_at(&self.y, v)) {
            (true, false) => self.hamming += 1,
            (false, true) => self.hamming -= 1,
            _ => {}
        }
        self.steps += 1;
    }
}

/// One identity-coupled step: a single draw applied to both copies.
pub fn coupled_step<R: Rng + ?Sized>(
    h: &Hypergraph,
    pair: &mut CoupledPair,
    params: &ChainParams,
    rng: &mut R,
) -> Proposal {
    let proposal = params.draw(h.n(), rng);
    pair.apply(h, params, proposal);
    proposal
}

/// Default step cap for coupling experiments: `40·Δ·n`.
pub fn default_t_max(h: &Hypergraph) -> u64 {
    40 * h.max_degree().max(1) as u64 * h.n().max(1) as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Coalescence {
    Coalesced { t: u64 },
    TimedOut { t_max: u64 },
}

impl Coalescence {
    pub fn time(&self) -> Option<u64> {
        match *self {
            Coalescence::Coalesced { t } => Some(t),
            Coalescence::TimedOut { .. } => None,
        }
    }
}

/// First time the identity-coupled copies from `x0` and `y0` agree.
pub fn coalescence_time(
    h: &Hypergraph,
    params: &ChainParams,
    x0: ChainState,
    y0: ChainState,
    t_max: u64,
    seed: u64,
) -> Result<Coalescence> {
    let mut pair = CoupledPair::new(h, params, x0, y0)?;
    let mut rng = seeded_rng(seed);
    while pair.hamming() > 0 {
        if pair.steps() >= t_max {
            return Ok(Coalescence::TimedOut { t_max });
        }
        coupled_step(h, &mut pair, params, &mut rng);
    }
    Ok(Coalescence::Coalesced { t: pair.steps() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{frozen_group_colouring, ColouringState, IndSetState};
    use crate::hypergraph::gen_frozen;

    fn edge3() -> Hypergraph {
        Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap()
    }

    fn indset(n: usize, vs: &[usize]) -> ChainState {
        ChainState::IndependentSet(IndSetState::from_vertices(n, vs).unwrap())
    }

    #[test]
    fn removal_at_change_vertex_couples() {
        let h = edge3();
        let params = ChainParams::independent_set(1.0).unwrap();
        let mut pair = CoupledPair::new(&h, &params, indset(3, &[]), indset(3, &[0])).unwrap();
        pair.apply(&h, &params, Proposal::Site { vertex: 0, coin: 0.9 });
        assert_eq!(pair.hamming(), 0);
        assert_eq!(pair.x(), &indset(3, &[]));
        assert_eq!(pair.y(), &indset(3, &[]));
    }

    #[test]
    fn critical_insertion_diverges() {
        // Y = {0,1}: the edge is critical with 2 unoccupied; X = {1} can take 2.
        let h = edge3();
        let params = ChainParams::independent_set(1.0).unwrap();
        let mut pair = CoupledPair::new(&h, &params, indset(3, &[1]), indset(3, &[0, 1])).unwrap();
        pair.apply(&h, &params, Proposal::Site { vertex: 2, coin: 0.1 });
        assert_eq!(pair.hamming(), 2);
        assert_eq!(pair.hamming(), pair.x().hamming(pair.y()).unwrap());
    }

    #[test]
    fn good_colouring_move_couples() {
        let h = edge3();
        let params = ChainParams::colouring(3).unwrap();
        let x = ChainState::Colouring(ColouringState::new(vec![1, 2, 3]));
        let y = ChainState::Colouring(ColouringState::new(vec![2, 2, 3]));
        let mut pair = CoupledPair::new(&h, &params, x, y).unwrap();
        pair.apply(&h, &params, Proposal::Recolour { vertex: 0, colour: 3 });
        assert_eq!(pair.hamming(), 0);
    }

    #[test]
    fn identical_copies_stay_together() {
        let h = edge3();
        let params = ChainParams::independent_set(0.7).unwrap();
        let mut pair = CoupledPair::new(&h, &params, indset(3, &[1]), indset(3, &[1])).unwrap();
        let mut rng = seeded_rng(4);
        for _ in 0..1000 {
            coupled_step(&h, &mut pair, &params, &mut rng);
            assert_eq!(pair.x(), pair.y());
        }
    }

    #[test]
    fn coalescence_cases() {
        let h = edge3();
        let params = ChainParams::independent_set(1.0).unwrap();
        let c = coalescence_time(&h, &params, indset(3, &[0]), indset(3, &[0]), 10, 0).unwrap();
        assert_eq!(c, Coalescence::Coalesced { t: 0 });

        let hf = gen_frozen(2, 3).unwrap();
        let params = ChainParams::colouring(2).unwrap();
        let a = ChainState::Colouring(frozen_group_colouring(2, 3, &[1, 2]));
        let b = ChainState::Colouring(frozen_group_colouring(2, 3, &[2, 1]));
        let c = coalescence_time(&hf, &params, a, b, 5000, 3).unwrap();
        assert_eq!(c, Coalescence::TimedOut { t_max: 5000 });
    }

    #[test]
    fn infeasible_pair_rejected() {
        let h = edge3();
        let params = ChainParams::independent_set(1.0).unwrap();
        assert!(CoupledPair::new(&h, &params, indset(3, &[0, 1, 2]), indset(3, &[])).is_err());
    }
}
