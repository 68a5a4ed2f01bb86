//! Glauber dynamics on independent sets (hard-core weights `λ^|I|`) and on
//! proper `q`-colourings.
//!
//! A step is split into drawing a [`Proposal`] and applying it, so a coupled
//! pair can apply one draw to both copies. Draw order is fixed: the vertex
//! first, then the coin (independent sets) or colour (colourings). The coin is
//! always drawn, even when the move turns out to be blocked.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rng::seeded_rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    #[serde(rename = "indset")]
    IndependentSet,
    Colouring,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ChainParams {
    #[serde(rename = "indset")]
    IndependentSet { lambda: f64 },
    Colouring { q: u32 },
}

impl ChainParams {
    pub fn independent_set(lambda: f64) -> Result<Self> {
        let p = ChainParams::IndependentSet { lambda };
        p.validate()?;
        Ok(p)
    }

    pub fn colouring(q: u32) -> Result<Self> {
        let p = ChainParams::Colouring { q };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ChainParams::IndependentSet { lambda } if !(lambda > 0.0 && lambda.is_finite()) => {
                Err(Error::param(format!("fugacity must be positive, got {lambda}")))
            }
            ChainParams::Colouring { q } if q < 2 => {
                Err(Error::param(format!("q must be at least 2, got {q}")))
            }
            _ => Ok(()),
        }
    }

    pub fn kind(&self) -> ChainKind {
        match self {
            ChainParams::IndependentSet { .. } => ChainKind::IndependentSet,
            ChainParams::Colouring { .. } => ChainKind::Colouring,
        }
    }

    /// Draws one proposal for a hypergraph on `n > 0` vertices.
    pub fn draw<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Proposal {
        let vertex = rng.random_range(0..n);
        match *self {
            ChainParams::IndependentSet { .. } => Proposal::Site {
                vertex,
                coin: rng.random::<f64>(),
            },
            ChainParams::Colouring { q } => Proposal::Recolour {
                vertex,
                colour: rng.random_range(1..=q),
            },
        }
    }
}

/// One attempted transition.
///
/// For independent sets, `coin < λ/(1+λ)` means "try to occupy the vertex"
/// and anything else means "vacate it". Applied to a single chain this gives
/// removal probability `1/(1+λ)` and insertion probability `λ/(1+λ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Proposal {
    Site { vertex: usize, coin: f64 },
    Recolour { vertex: usize, colour: u32 },
}

impl Proposal {
    pub fn vertex(&self) -> usize {
        match *self {
            Proposal::Site { vertex, .. } | Proposal::Recolour { vertex, .. } => vertex,
        }
    }
}

/// Vertex subset stored as a membership vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndSetState {
    members: Vec<bool>,
    size: usize,
}

impl IndSetState {
    pub fn empty(n: usize) -> Self {
        Self {
            members: vec![false; n],
            size: 0,
        }
    }

    pub fn from_vertices(n: usize, vertices: &[usize]) -> Result<Self> {
        let mut s = Self::empty(n);
        for &v in vertices {
            if v >= n {
                return Err(Error::VertexOutOfRange { index: v, n });
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Bit `v` of `mask` is vertex `v`; requires `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(n <= 64);
        let members: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        let size = mask.count_ones() as usize;
        Self { members, size }
    }

    pub fn to_mask(&self) -> Option<u64> {
        if self.members.len() > 64 {
            return None;
        }
        Some(
            self.members
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .fold(0u64, |acc, (v, _)| acc | 1 << v),
        )
    }

    pub fn n(&self) -> usize {
        self.members.len()
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members[v]
    }

    pub fn insert(&mut self, v: usize) -> bool {
        if self.members[v] {
            return false;
        }
        self.members[v] = true;
        self.size += 1;
        true
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if !self.members[v] {
            return false;
        }
        self.members[v] = false;
        self.size -= 1;
        true
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&v| self.members[v]).collect()
    }
}

impl Serialize for IndSetState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.vertices().serialize(s)
    }
}

/// Per-vertex colours in `1..=q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ColouringState {
    colours: Vec<u32>,
}

impl ColouringState {
    pub fn new(colours: Vec<u32>) -> Self {
        Self { colours }
    }

    pub fn n(&self) -> usize {
        self.colours.len()
    }

    pub fn colour(&self, v: usize) -> u32 {
        self.colours[v]
    }

    pub fn colours(&self) -> &[u32] {
        &self.colours
    }

    pub fn set(&mut self, v: usize, colour: u32) {
        self.colours[v] = colour;
    }

    /// Base-`q` encoding, used as a compact key for small state spaces.
    pub fn encode(&self, q: u32) -> u64 {
        self.colours
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * q as u64 + (c as u64 - 1))
    }

    pub fn decode(n: usize, q: u32, mut code: u64) -> Self {
        let colours = (0..n)
            .map(|_| {
                let c = (code % q as u64) as u32 + 1;
                code /= q as u64;
                c
            })
            .collect();
        Self { colours }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ChainState {
    IndependentSet(IndSetState),
    Colouring(ColouringState),
}

impl Serialize for ChainState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ChainState", 2)?;
        match self {
            ChainState::IndependentSet(x) => {
                st.serialize_field("kind", &ChainKind::IndependentSet)?;
                st.serialize_field("vertices", x)?;
            }
            ChainState::Colouring(c) => {
                st.serialize_field("kind", &ChainKind::Colouring)?;
                st.serialize_field("colours", c)?;
            }
        }
        st.end()
    }
}

impl ChainState {
    pub fn kind(&self) -> ChainKind {
        match self {
            ChainState::IndependentSet(_) => ChainKind::IndependentSet,
            ChainState::Colouring(_) => ChainKind::Colouring,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            ChainState::IndependentSet(s) => s.n(),
            ChainState::Colouring(c) => c.n(),
        }
    }

    /// Number of vertices at which the two states differ.
    pub fn hamming(&self, other: &ChainState) -> Result<usize> {
        match (self, other) {
            (ChainState::IndependentSet(a), ChainState::IndependentSet(b)) if a.n() == b.n() => {
                Ok((0..a.n()).filter(|&v| a.contains(v) != b.contains(v)).count())
            }
            (ChainState::Colouring(a), ChainState::Colouring(b)) if a.n() == b.n() => Ok(a
                .colours
                .iter()
                .zip(&b.colours)
                .filter(|(x, y)| x != y)
                .count()),
            _ => Err(Error::param("states of different kind or size")),
        }
    }

    /// Whether vertex `v` holds the same value in both states.
    pub(crate) fn agrees_at(&self, other: &ChainState, v: usize) -> bool {
        match (self, other) {
            (ChainState::IndependentSet(a), ChainState::IndependentSet(b)) => {
                a.contains(v) == b.contains(v)
            }
            (ChainState::Colouring(a), ChainState::Colouring(b)) => a.colour(v) == b.colour(v),
            _ => false,
        }
    }

    pub fn is_feasible(&self, h: &Hypergraph, params: &ChainParams) -> bool {
        if self.n() != h.n() {
            return false;
        }
        match (self, params) {
            (ChainState::IndependentSet(s), ChainParams::IndependentSet { .. }) => {
                is_independent(h, s)
            }
            (ChainState::Colouring(c), ChainParams::Colouring { q }) => is_proper(h, c, *q),
            _ => false,
        }
    }

    pub fn as_indset(&self) -> Option<&IndSetState> {
        match self {
            ChainState::IndependentSet(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_colouring(&self) -> Option<&ColouringState> {
        match self {
            ChainState::Colouring(c) => Some(c),
            _ => None,
        }
    }
}

/// True iff no edge lies entirely inside `s`.
pub fn is_independent(h: &Hypergraph, s: &IndSetState) -> bool {
    h.edges().iter().all(|e| e.iter().any(|&v| !s.contains(v)))
}

/// True iff every colour lies in `1..=q` and no edge is monochromatic.
pub fn is_proper(h: &Hypergraph, c: &ColouringState, q: u32) -> bool {
    c.colours.iter().all(|&k| (1..=q).contains(&k))
        && h
            .edges()
            .iter()
            .all(|e| e.iter().any(|&v| c.colour(v) != c.colour(e[0])))
}

/// Whether `v` can be added to the independent set `s` (assumed independent).
pub fn can_insert(h: &Hypergraph, s: &IndSetState, v: usize) -> bool {
    h.incident(v)
        .iter()
        .all(|&e| h.edges()[e].iter().any(|&u| u != v && !s.contains(u)))
}

/// Whether recolouring `v` to `colour` keeps the (proper) colouring proper.
pub fn can_recolour(h: &Hypergraph, c: &ColouringState, v: usize, colour: u32) -> bool {
    h.incident(v)
        .iter()
        .all(|&e| h.edges()[e].iter().any(|&u| u != v && c.colour(u) != colour))
}

/// Applies a site update; returns whether the state changed.
pub fn apply_site(h: &Hypergraph, s: &mut IndSetState, lambda: f64, v: usize, coin: f64) -> bool {
    let occupy = coin < lambda / (1.0 + lambda);
    if s.contains(v) {
        !occupy && s.remove(v)
    } else {
        occupy && can_insert(h, s, v) && s.insert(v)
    }
}

/// Applies a recolouring; returns whether the state changed.
pub fn apply_recolour(h: &Hypergraph, c: &mut ColouringState, v: usize, colour: u32) -> bool {
    if c.colour(v) == colour || !can_recolour(h, c, v, colour) {
        return false;
    }
    c.set(v, colour);
    true
}

/// Applies a proposal of the matching kind; returns whether the state changed.
pub fn apply_proposal(
    h: &Hypergraph,
    state: &mut ChainState,
    params: &ChainParams,
    proposal: Proposal,
) -> bool {
    match (state, params, proposal) {
        (
            ChainState::IndependentSet(s),
            ChainParams::IndependentSet { lambda },
            Proposal::Site { vertex, coin },
        ) => apply_site(h, s, *lambda, vertex, coin),
        (ChainState::Colouring(c), ChainParams::Colouring { .. }, Proposal::Recolour { vertex, colour }) => {
            apply_recolour(h, c, vertex, colour)
        }
        _ => panic!("proposal kind does not match chain kind"),
    }
}

/// One Glauber step on independent sets; returns whether the state changed.
pub fn indset_step<R: Rng + ?Sized>(
    h: &Hypergraph,
    s: &mut IndSetState,
    lambda: f64,
    rng: &mut R,
) -> bool {
    let v = rng.random_range(0..h.n());
    let coin = rng.random::<f64>();
    apply_site(h, s, lambda, v, coin)
}

/// One Glauber step on proper colourings; returns whether the state changed.
pub fn colouring_step<R: Rng + ?Sized>(
    h: &Hypergraph,
    c: &mut ColouringState,
    q: u32,
    rng: &mut R,
) -> bool {
    let v = rng.random_range(0..h.n());
    let colour = rng.random_range(1..=q);
    apply_recolour(h, c, v, colour)
}

pub fn step<R: Rng + ?Sized>(
    h: &Hypergraph,
    state: &mut ChainState,
    params: &ChainParams,
    rng: &mut R,
) -> bool {
    let proposal = params.draw(h.n(), rng);
    apply_proposal(h, state, params, proposal)
}

fn greedy_in_order(h: &Hypergraph, q: u32, order: &[usize]) -> Option<ColouringState> {
    let mut colours = vec![0u32; h.n()];
    for &v in order {
        let mut forbidden = vec![false; q as usize + 1];
        for &e in h.incident(v) {
            let others: Vec<u32> = h.edges()[e]
                .iter()
                .filter(|&&u| u != v)
                .map(|&u| colours[u])
                .collect();
            if others[0] != 0 && others.iter().all(|&k| k == others[0]) {
                forbidden[others[0] as usize] = true;
            }
        }
        colours[v] = (1..=q).find(|&k| !forbidden[k as usize])?;
    }
    Some(ColouringState::new(colours))
}

/// A proper colouring found greedily: vertex order `0..n` first, then a
/// bounded number of shuffled orders.
pub fn greedy_colouring(h: &Hypergraph, q: u32) -> Result<ColouringState> {
    if q == 0 {
        return Err(Error::param("q must be positive"));
    }
    let mut order: Vec<usize> = (0..h.n()).collect();
    if let Some(c) = greedy_in_order(h, q, &order) {
        return Ok(c);
    }
    let mut rng = seeded_rng(0x9e37_79b9);
    for _ in 0..256 {
        order.shuffle(&mut rng);
        if let Some(c) = greedy_in_order(h, q, &order) {
            return Ok(c);
        }
    }
    Err(Error::InfeasibleState(format!(
        "greedy search found no proper {q}-colouring"
    )))
}

/// The empty set for independent sets, a greedy proper colouring otherwise.
pub fn initial_state(h: &Hypergraph, params: &ChainParams) -> Result<ChainState> {
    params.validate()?;
    Ok(match *params {
        ChainParams::IndependentSet { .. } => ChainState::IndependentSet(IndSetState::empty(h.n())),
        ChainParams::Colouring { q } => ChainState::Colouring(greedy_colouring(h, q)?),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub seed: u64,
    pub t_max: u64,
    pub final_state: ChainState,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<ChainState>>,
    pub acceptance_count: u64,
}

/// Runs `t_max` steps from `x0`. With `stride = Some(s)`, the state after
/// every `s`-th step is recorded.
pub fn run_chain(
    h: &Hypergraph,
    params: &ChainParams,
    x0: ChainState,
    t_max: u64,
    stride: Option<u64>,
    seed: u64,
) -> Result<Trajectory> {
    params.validate()?;
    if !x0.is_feasible(h, params) {
        return Err(Error::InfeasibleState(
            "initial state is not feasible for this chain".into(),
        ));
    }
    if stride == Some(0) {
        return Err(Error::param("stride must be positive"));
    }
    let mut rng = seeded_rng(seed);
    let mut state = x0;
    let mut samples = stride.map(|_| Vec::new());
    let mut accepted = 0;
    if h.n() > 0 {
        for t in 1..=t_max {
            if step(h, &mut state, params, &mut rng) {
                accepted += 1;
            }
            if let (Some(s), Some(out)) = (stride, samples.as_mut()) {
                if t % s == 0 {
                    out.push(state.clone());
                }
            }
        }
    }
    Ok(Trajectory {
        seed,
        t_max,
        final_state: state,
        samples,
        acceptance_count: accepted,
    })
}

/// Counts the proposals `(v, k)`, out of all `n·q`, that would change the
/// colouring `c`.
pub fn frozen_check(h: &Hypergraph, c: &ColouringState, q: u32) -> usize {
    (0..h.n())
        .map(|v| {
            (1..=q)
                .filter(|&k| k != c.colour(v) && can_recolour(h, c, v, k))
                .count()
        })
        .sum()
}

/// Colours group `j` of [`gen_frozen`](crate::hypergraph::gen_frozen) with
/// `perm[j]`.
pub fn frozen_group_colouring(q: usize, m: usize, perm: &[u32]) -> ColouringState {
    assert_eq!(perm.len(), q);
    let colours = (0..q * (m - 1)).map(|v| perm[v / (m - 1)]).collect();
    ColouringState::new(colours)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::gen_frozen;

    fn edge3() -> Hypergraph {
        Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap()
    }

    #[test]
    fn independence_examples() {
        let h = edge3();
        assert!(is_independent(&h, &IndSetState::from_vertices(3, &[0, 1]).unwrap()));
        assert!(!is_independent(&h, &IndSetState::from_vertices(3, &[0, 1, 2]).unwrap()));
    }

    #[test]
    fn properness_examples() {
        let h = edge3();
        assert!(!is_proper(&h, &ColouringState::new(vec![1, 1, 1]), 2));
        assert!(is_proper(&h, &ColouringState::new(vec![1, 1, 2]), 2));
        assert!(!is_proper(&h, &ColouringState::new(vec![1, 1, 3]), 2));
    }

    #[test]
    fn blocked_insertion_leaves_state() {
        let h = edge3();
        let mut s = IndSetState::from_vertices(3, &[0, 1]).unwrap();
        assert!(!apply_site(&h, &mut s, 1.0, 2, 0.0));
        assert_eq!(s.vertices(), vec![0, 1]);
        assert!(apply_site(&h, &mut s, 1.0, 0, 0.99));
        assert_eq!(s.vertices(), vec![1]);
    }

    #[test]
    fn coin_thresholds() {
        let h = Hypergraph::empty(1);
        let lambda = 3.0;
        // occupy iff coin < 3/4
        let mut s = IndSetState::empty(1);
        assert!(!apply_site(&h, &mut s, lambda, 0, 0.75));
        assert!(apply_site(&h, &mut s, lambda, 0, 0.7499));
        assert!(!apply_site(&h, &mut s, lambda, 0, 0.5));
        assert!(apply_site(&h, &mut s, lambda, 0, 0.75));
        assert!(s.is_empty());
    }

    #[test]
    fn recolour_examples() {
        let h = edge3();
        let mut c = ColouringState::new(vec![1, 1, 2]);
        assert!(!apply_recolour(&h, &mut c, 2, 1));
        assert!(apply_recolour(&h, &mut c, 0, 2));
        assert_eq!(c.colours(), &[2, 1, 2]);
    }

    #[test]
    fn frozen_construction_has_no_moves() {
        let h = gen_frozen(2, 3).unwrap();
        let c = frozen_group_colouring(2, 3, &[1, 2]);
        assert!(is_proper(&h, &c, 2));
        assert_eq!(frozen_check(&h, &c, 2), 0);
        let h = gen_frozen(3, 3).unwrap();
        let c = frozen_group_colouring(3, 3, &[1, 2, 3]);
        assert_eq!(frozen_check(&h, &c, 3), 0);
        let c = ColouringState::new(vec![1, 1, 2]);
        assert!(frozen_check(&edge3(), &c, 2) >= 1);
    }

    #[test]
    fn run_chain_identity_and_determinism() {
        let h = edge3();
        let params = ChainParams::independent_set(1.0).unwrap();
        let x0 = initial_state(&h, &params).unwrap();
        let t = run_chain(&h, &params, x0.clone(), 0, None, 1).unwrap();
        assert_eq!(t.final_state, x0);
        let a = run_chain(&h, &params, x0.clone(), 500, Some(7), 9).unwrap();
        let b = run_chain(&h, &params, x0, 500, Some(7), 9).unwrap();
        assert_eq!(a.samples, b.samples);
        assert_eq!(a.samples.as_ref().unwrap().len(), 71);
    }

    #[test]
    fn run_chain_rejects_infeasible_start() {
        let h = edge3();
        let params = ChainParams::independent_set(1.0).unwrap();
        let bad = ChainState::IndependentSet(IndSetState::from_vertices(3, &[0, 1, 2]).unwrap());
        assert!(matches!(
            run_chain(&h, &params, bad, 10, None, 0),
            Err(Error::InfeasibleState(_))
        ));
    }

    #[test]
    fn params_validation() {
        assert!(ChainParams::independent_set(0.0).is_err());
        assert!(ChainParams::independent_set(f64::NAN).is_err());
        assert!(ChainParams::colouring(1).is_err());
        assert!(ChainParams::colouring(2).is_ok());
    }

    #[test]
    fn colouring_codes_roundtrip() {
        let c = ColouringState::new(vec![3, 1, 2, 2]);
        assert_eq!(ColouringState::decode(4, 3, c.encode(3)), c);
        let s = IndSetState::from_vertices(5, &[0, 3]).unwrap();
        assert_eq!(IndSetState::from_mask(5, s.to_mask().unwrap()), s);
    }

    #[test]
    fn greedy_finds_colourings() {
        let h = gen_frozen(3, 4).unwrap();
        let c = greedy_colouring(&h, 3).unwrap();
        assert!(is_proper(&h, &c, 3));
    }
}
