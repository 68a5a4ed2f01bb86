"""Smoke test for the Python extension. Run after `maturin develop`."""

import math

import hyperglauber_py as hgp


def main():
    h = hgp.Hypergraph.parse("3 1\n0 1 2\n")
    assert h.n == 3 and h.edges == [[0, 1, 2]]
    assert hgp.Hypergraph.parse(h.to_text()).edges == h.edges

    profile = hgp.count_independent_sets(h)
    assert profile["total"] == 7, profile
    assert hgp.count_colourings(h, 2) == 6

    p = hgp.edge_process(3, 1.0)
    assert math.isclose(p[0], 2 / 7) and math.isclose(p[1], 1 / 7), p

    tau = hgp.stopping_time_bound(0.5, 0.5, 10.0, 2.0, 0.01)
    assert abs(tau - 168.6) < 0.1, tau

    beta = hgp.beta_star("integral")
    assert abs(beta["beta_star"] - 0.392729) < 1e-5, beta

    tv = hgp.stationary_tv(h, "indset", samples=200_000, seed=1)
    assert tv["tv"] < 0.02, tv

    r = hgp.Hypergraph.random_uniform(30, 7, 3, 12, seed=1)
    run = hgp.stopping_experiment(r, "indset", replicates=500, seed=5)
    assert run["stats"]["replicates"] == 500

    frozen = hgp.Hypergraph.frozen(2, 3)
    traj = hgp.run_chain(frozen, "colouring", 1000, q=2, seed=3)
    assert traj["seed"] == 3

    try:
        hgp.Hypergraph(2, [[0, 5]])
    except ValueError:
        pass
    else:
        raise AssertionError("out-of-range vertex accepted")

    print("ok")


if __name__ == "__main__":
    main()
