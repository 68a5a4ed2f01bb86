use proptest::prelude::*;

use hyperglauber::analytics::{
    edge_process_closed_table, edge_process_last, edge_process_solve, phi, stopping_time_bound,
};
use hyperglauber::chains::{initial_state, step, ChainParams, ChainState, IndSetState};
use hyperglauber::coupling::CoupledPair;
use hyperglauber::coupling::coupled_step;
use hyperglauber::exact::{count_colourings, count_independent_sets};
use hyperglauber::hypergraph::{gen_random_uniform, parse_hypergraph, serialize_hypergraph};
use hyperglauber::rng::seeded_rng;
use hyperglauber::{Graph, Hypergraph};

/// Small random uniform hypergraphs.
fn hypergraph(max_n: usize) -> impl Strategy<Value = Hypergraph> {
    (3..=max_n, 2..=3usize, 1..=3usize, 0..=8usize, any::<u64>())
        .prop_map(|(n, m, d, e, seed)| gen_random_uniform(n, m, d, e, seed).unwrap().0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip(h in hypergraph(12)) {
        let text = serialize_hypergraph(&h);
        let back = parse_hypergraph(&text).unwrap();
        prop_assert_eq!(back.canonical(), h.canonical());
        prop_assert_eq!(serialize_hypergraph(&back), text);
    }

    #[test]
    fn indset_chain_stays_independent(h in hypergraph(12), lambda in 0.1f64..4.0, seed: u64) {
        let params = ChainParams::independent_set(lambda).unwrap();
        let mut x = initial_state(&h, &params).unwrap();
        let mut rng = seeded_rng(seed);
        for _ in 0..300 {
            step(&h, &mut x, &params, &mut rng);
            prop_assert!(x.is_feasible(&h, &params));
        }
    }

    #[test]
    fn colouring_chain_stays_proper(h in hypergraph(10), seed: u64) {
        let params = ChainParams::colouring(3).unwrap();
        // Graph instances may contain K_4, which has no proper 3-colouring.
        let start = initial_state(&h, &params);
        prop_assume!(start.is_ok());
        let mut x = start.unwrap();
        let mut rng = seeded_rng(seed);
        for _ in 0..300 {
            step(&h, &mut x, &params, &mut rng);
            prop_assert!(x.is_feasible(&h, &params));
        }
    }

    #[test]
    fn coupled_copies_stay_together(h in hypergraph(10), seed: u64) {
        let params = ChainParams::independent_set(1.0).unwrap();
        let x = ChainState::IndependentSet(IndSetState::empty(h.n()));
        let mut pair = CoupledPair::new(&h, &params, x.clone(), x).unwrap();
        let mut rng = seeded_rng(seed);
        for _ in 0..200 {
            coupled_step(&h, &mut pair, &params, &mut rng);
            prop_assert_eq!(pair.hamming(), 0);
            prop_assert_eq!(pair.x(), pair.y());
        }
    }

    #[test]
    fn hamming_tracks_the_states(h in hypergraph(10), seed: u64) {
        let params = ChainParams::independent_set(2.0).unwrap();
        let x = ChainState::IndependentSet(IndSetState::empty(h.n()));
        let y = ChainState::IndependentSet(IndSetState::from_vertices(h.n(), &[0]).unwrap());
        let mut pair = CoupledPair::new(&h, &params, x, y).unwrap();
        let mut rng = seeded_rng(seed);
        for _ in 0..200 {
            coupled_step(&h, &mut pair, &params, &mut rng);
            prop_assert_eq!(pair.hamming(), pair.x().hamming(pair.y()).unwrap());
        }
    }

    #[test]
    fn edge_process_is_decreasing(m in 2usize..40, lambda in 0.05f64..5.0) {
        let t = edge_process_solve(m, lambda).unwrap();
        prop_assert!(t.p.iter().all(|&p| (0.0..=1.0).contains(&p)));
        prop_assert!(t.p.windows(2).all(|w| w[0] > w[1]));
        let last = edge_process_last(m, lambda).unwrap();
        prop_assert!((t.get(m - 1) - last).abs() <= 1e-12);
        let bigger = edge_process_solve(m, lambda * 1.1).unwrap();
        prop_assert!(t.p.iter().zip(&bigger.p).all(|(a, b)| a < b));
    }

    #[test]
    fn phi_dominates_power(d in 1u32..15, t in 0.0f64..200.0, excess in 0.5f64..50.0, delta in 1.0f64..80.0, extra in 0.0f64..100.0) {
        let q = delta + excess;
        let big_m = 1.0 + extra;
        let base = phi(1.0, t, q, delta, big_m).unwrap();
        prop_assert!(phi(d as f64, t, q, delta, big_m).unwrap() >= base.powi(d as i32) - 1e-12);
    }

    #[test]
    fn stopping_bound_is_monotone(p in 0.01f64..1.0, alpha in 0.0f64..0.95, d1 in 1.0f64..100.0, d2 in 1.0f64..10.0, eps in 0.001f64..0.5) {
        let base = stopping_time_bound(p, alpha, d1, d2, eps).unwrap();
        prop_assert!(base > 0.0);
        prop_assert!(stopping_time_bound((p * 1.1).min(1.0), alpha, d1, d2, eps).unwrap() <= base);
        prop_assert!(stopping_time_bound(p, alpha + 0.01, d1, d2, eps).unwrap() >= base);
        prop_assert!(stopping_time_bound(p, alpha, d1 + 1.0, d2, eps).unwrap() >= base);
        prop_assert!(stopping_time_bound(p, alpha, d1, d2 + 1.0, eps).unwrap() >= base);
        prop_assert!(stopping_time_bound(p, alpha, d1, d2, eps / 2.0).unwrap() >= base);
    }

    #[test]
    fn counts_multiply_over_disjoint_unions(a in hypergraph(7), b in hypergraph(7)) {
        let u = a.disjoint_union(&b);
        let (ca, cb, cu) = (
            count_independent_sets(&a).unwrap(),
            count_independent_sets(&b).unwrap(),
            count_independent_sets(&u).unwrap(),
        );
        prop_assert_eq!(cu.total, ca.total * cb.total);
        prop_assert_eq!(
            count_colourings(&u, 2).unwrap(),
            count_colourings(&a, 2).unwrap() * count_colourings(&b, 2).unwrap()
        );
    }
}

#[test]
fn closed_form_matches_solve_for_m30_lambda2() {
    let a = edge_process_solve(30, 2.0).unwrap();
    let b = edge_process_closed_table(30, 2.0).unwrap();
    for (x, y) in a.p.iter().zip(&b.p) {
        assert!(((x - y) / y).abs() < 1e-10, "{x} vs {y}");
    }
}

#[test]
fn partition_function_is_increasing() {
    let g = Graph::cycle(5).unwrap();
    let profile = count_independent_sets(g.as_hypergraph()).unwrap();
    assert_eq!(profile.counts[0], 1);
    assert_eq!(profile.partition(1.0), profile.total as f64);
    let values: Vec<f64> = (0..20).map(|i| profile.partition(i as f64 * 0.25)).collect();
    assert_eq!(values[0], 1.0);
    assert!(values.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn state_serialization_shape() {
    let s = ChainState::IndependentSet(IndSetState::from_vertices(4, &[3, 1]).unwrap());
    let json = serde_json::to_value(&s).unwrap();
    assert_eq!(json, serde_json::json!({"kind": "indset", "vertices": [1, 3]}));
}
