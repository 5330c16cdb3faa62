import random
from fractions import Fraction

import pytest

from generators import (c_plus_black_instance, c_plus_yellow_instance,
                        envelope_instance, match_instance, yellow_instance)
from structhunt.cleaning import (clean_c_plus_black, clean_c_plus_yellow,
                                 clean_match, clean_yellow, envelope)
from structhunt.exactmath import RootVal
from structhunt.graphcore import LayeredGraph, norm_edge
from util import complete_bipartite, graph_from_edges, random_bipartite_edges


def replay(inputs, trace):
    """Apply a removal trace to named input sets; returns final sets."""
    sets = {name: set(s) for name, s in inputs.items()}
    for v, name, _cond in trace:
        sets[name].discard(v)
    return {name: frozenset(s) for name, s in sets.items()}


class TestEnvelope:
    def test_complete_bipartite_no_removals(self):
        g = complete_bipartite(range(4), range(4, 10))
        P, Q = frozenset(range(4)), frozenset(range(4, 10))
        Pp, Qp, Qpp, rep = envelope(g, "G", P, Q, frozenset(),
                                    psi=Fraction(1, 10), Gamma=2, Omega=1, k=3)
        assert (Pp, Qp, Qpp) == (P, Q, Q)
        assert not rep.trace
        assert rep.conclusions.ok

    def test_Q_equals_Y_cascades_empty(self):
        g = complete_bipartite(range(3), range(3, 6))
        P, Q = frozenset(range(3)), frozenset(range(3, 6))
        Pp, Qp, Qpp, rep = envelope(g, "G", P, Q, Q, psi=Fraction(1, 10),
                                    Gamma=2, Omega=1, k=3)
        assert Qp == frozenset() and Qpp == frozenset()
        assert Pp == frozenset()  # (a) empties P'
        assert any(name == "P'" for _, name, _ in rep.trace)

    def test_in_regime_conclusions(self):
        for seed in range(30):
            g, P, Q, Y, psi, Gamma, Omega, k = envelope_instance(seed)
            Pp, Qp, Qpp, rep = envelope(g, "G", P, Q, Y, psi, Gamma, Omega, k)
            assert rep.hypotheses.ok, (seed, rep.hypotheses.render())
            assert rep.conclusions.ok, (seed, rep.conclusions.render())

    def test_overlap_rejected(self):
        g = complete_bipartite(range(2), range(2, 4))
        with pytest.raises(ValueError):
            envelope(g, "G", frozenset({0, 1}), frozenset({1, 2}), frozenset(),
                     Fraction(1, 2), 1, 1, 1)

    def test_trace_replays(self):
        g, P, Q, Y, psi, Gamma, Omega, k = envelope_instance(5)
        Pp, Qp, Qpp, rep = envelope(g, "G", P, Q, Y, psi, Gamma, Omega, k)
        final = replay({"P'": P, "Q'": Q - Y, "Q''": Q - Y}, rep.trace)
        assert final["P'"] == Pp and final["Q'"] == Qp and final["Q''"] == Qpp

    def test_fixed_point(self):
        g, P, Q, Y, psi, Gamma, Omega, k = envelope_instance(7)
        Pp, Qp, Qpp, _ = envelope(g, "G", P, Q, Y, psi, Gamma, Omega, k)
        if not Pp or not Qpp:
            return
        P2, _, Q2pp, rep2 = envelope(g, "G", Pp, Qpp, frozenset(), psi, Gamma,
                                     Omega, k)
        assert (P2, Q2pp) == (Pp, Qpp)
        assert not rep2.trace


class TestCleanCPlusYellow:
    def test_in_regime_no_failures(self):
        for seed in range(20):
            g, sets, Y, r, os_, oss, delta, gamma, eta, k = \
                c_plus_yellow_instance(seed)
            Xp, rep = clean_c_plus_yellow(g, "G", sets, Y, r, os_, oss,
                                          delta, gamma, eta, k)
            assert rep.hypotheses.ok, (seed, rep.hypotheses.render())
            assert rep.conclusions.ok, (seed, rep.conclusions.render())
            assert Xp[0] and Xp[1]

    def test_X1_inside_Y_cascades(self):
        g, sets, _, r, os_, oss, delta, gamma, eta, k = c_plus_yellow_instance(1)
        Xp, rep = clean_c_plus_yellow(g, "G", sets, sets[1], r, os_, oss,
                                      delta, gamma, eta, k)
        assert Xp[1] == frozenset()
        assert Xp[0] == frozenset()  # (d) empties X0'
        assert not rep.hypotheses.ok  # |Y| bound fails
        assert "[hyp failed]" in rep.conclusions.items[-1].item

    def test_side_condition_violation_still_runs(self):
        g, sets, Y, r, os_, oss, _, gamma, eta, k = c_plus_yellow_instance(2)
        Xp, rep = clean_c_plus_yellow(g, "G", sets, Y, r, os_, oss,
                                      delta=Fraction(10), gamma=gamma,
                                      eta=eta, k=k)
        assert not rep.hypotheses.items[0].passed  # side condition
        assert isinstance(Xp, tuple)  # algorithm total

    def test_r_zero_rejected(self):
        g, sets, Y, r, os_, oss, delta, gamma, eta, k = c_plus_yellow_instance(0)
        with pytest.raises(ValueError):
            clean_c_plus_yellow(g, "G", sets[:1], Y, 0, os_, oss, delta,
                                gamma, eta, k)

    def test_construction_conclusions_on_arbitrary_inputs(self):
        rng = random.Random(0)
        for seed in range(25):
            n = 18
            edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                     if rng.random() < 0.3]
            g = graph_from_edges(n, edges)
            sets = [frozenset(rng.sample(range(n), rng.randint(1, 6)))
                    for _ in range(3)]
            Y = frozenset(rng.sample(range(n), 3))
            Xp, rep = clean_c_plus_yellow(g, "G", sets, Y, r=2, omega_star=3,
                                          omega_sstar=RootVal(1100),
                                          delta=Fraction(1, 3),
                                          gamma=Fraction(1, 2),
                                          eta=Fraction(1, 4), k=2)
            for item in rep.conclusions.items[:4]:  # (a)-(d) by construction
                assert item.passed, (seed, item.render())

    def test_fixed_point(self):
        g, sets, Y, r, os_, oss, delta, gamma, eta, k = c_plus_yellow_instance(3)
        Xp, _ = clean_c_plus_yellow(g, "G", sets, Y, r, os_, oss, delta, gamma,
                                    eta, k)
        Xp2, rep2 = clean_c_plus_yellow(g, "G", list(Xp), frozenset(), r, os_,
                                        oss, delta, gamma, eta, k)
        assert tuple(Xp2) == tuple(Xp)
        assert not rep2.trace


class TestCleanCPlusBlack:
    def test_in_regime_no_failures(self):
        for seed in range(20):
            g, X0, X1, Y, clusters, delta, eta, os_, oss, h, k = \
                c_plus_black_instance(seed)
            X0p, X1p, rep = clean_c_plus_black(g, "G", X0, X1, Y, clusters,
                                               delta, eta, os_, oss, h, k)
            assert rep.hypotheses.ok, (seed, rep.hypotheses.render())
            assert rep.conclusions.ok, (seed, rep.conclusions.render())

    def test_small_cluster_flushed(self):
        g, X0, X1, _, _, delta, eta, os_, oss, h, k = c_plus_black_instance(0)
        C = frozenset(sorted(X1)[:h - 1])  # fewer than h survivors possible
        X0p, X1p, rep = clean_c_plus_black(g, "G", X0, X1, frozenset(), [C],
                                           delta, eta, os_, oss, h, k)
        assert not (X1p & C)
        assert rep.conclusions[
            "(c) every cluster meets X1' in 0 or >= h vertices"].passed

    def test_Y_equals_X1_flagged(self):
        g, X0, X1, _, _, delta, eta, os_, oss, h, k = c_plus_black_instance(1)
        X0p, X1p, rep = clean_c_plus_black(g, "G", X0, X1, X1, [], delta, eta,
                                           os_, oss, h, k)
        assert X1p == frozenset() and X0p == frozenset()
        assert not rep.hypotheses.ok

    def test_trace_replays(self):
        g, X0, X1, Y, clusters, delta, eta, os_, oss, h, k = \
            c_plus_black_instance(2)
        C = frozenset(sorted(X1)[: max(h - 1, 1)])
        X0p, X1p, rep = clean_c_plus_black(g, "G", X0, X1, Y, [C], delta, eta,
                                           os_, oss, h, k)
        final = replay({"X0'": X0, "X1'": X1 - Y}, rep.trace)
        assert final["X0'"] == X0p and final["X1'"] == X1p


class TestCleanYellow:
    def test_in_regime_no_failures(self):
        for seed in range(20):
            g, names, sets, Y, r, omega, gamma, delta, eta, k = \
                yellow_instance(seed)
            Xp, rep = clean_yellow(g, names, sets, Y, r, omega, gamma, delta,
                                   eta, k)
            assert rep.hypotheses.ok, (seed, rep.hypotheses.render())
            assert rep.conclusions.ok, (seed, rep.conclusions.render())

    def test_empty_E1_flagged(self):
        g, names, sets, Y, r, omega, gamma, delta, eta, k = yellow_instance(1)
        g = g.with_layer(names[0], [])
        Xp, rep = clean_yellow(g, names, sets, Y, r, omega, gamma, delta, eta, k)
        assert Xp[0] == frozenset()
        assert not rep.hypotheses["2. e_1(X0,X1) >= eta k n"].passed

    def test_Y_everything(self):
        g, names, sets, _, r, omega, gamma, delta, eta, k = yellow_instance(2)
        Xp, rep = clean_yellow(g, names, sets, g.vertices(), r, omega, gamma,
                               delta, eta, k)
        assert all(X == frozenset() for X in Xp)

    def test_r_one_rejected(self):
        g, names, sets, Y, r, omega, gamma, delta, eta, k = yellow_instance(0)
        with pytest.raises(ValueError):
            clean_yellow(g, names[:1], sets[:2], Y, 1, omega, gamma, delta,
                         eta, k)

    def test_fixed_point(self):
        g, names, sets, Y, r, omega, gamma, delta, eta, k = yellow_instance(3)
        Xp, _ = clean_yellow(g, names, sets, Y, r, omega, gamma, delta, eta, k)
        Xp2, rep2 = clean_yellow(g, names, list(Xp), frozenset(), r, omega,
                                 gamma, delta, eta, k)
        assert tuple(Xp2) == tuple(Xp)
        assert not rep2.trace


class TestCleanMatch:
    def test_complete_pairs_survive(self):
        g, names, sets, Y, parts, r, omega, gamma, eta, delta, eps, mu, d, k = \
            match_instance(0, pair_count=1, side=6)
        qpairs, Xp, rep = clean_match(g, names, sets, Y, parts, r, omega,
                                      gamma, eta, delta, eps, mu, d, k)
        assert len(qpairs) == 1
        assert qpairs[0] == (parts[0][0], parts[0][1])
        assert rep.hypotheses.ok, rep.hypotheses.render()
        assert rep.conclusions.ok, rep.conclusions.render()

    def test_in_regime_random_pairs(self):
        for seed in range(12):
            g, names, sets, Y, parts, r, omega, gamma, eta, delta, eps, mu, d, k = \
                match_instance(seed, pair_count=2, side=12, density=0.5)
            qpairs, Xp, rep = clean_match(g, names, sets, Y, parts, r, omega,
                                          gamma, eta, delta, eps, mu, d, k)
            if not rep.hypotheses.ok:
                continue  # a random pair may fail its regularity certificate
            assert rep.conclusions.ok, (seed, rep.conclusions.render())
            assert Xp[1]

    def test_pair_with_quarter_in_Y_flushed(self):
        g, names, sets, _, parts, r, omega, gamma, eta, delta, eps, mu, d, k = \
            match_instance(1, pair_count=2, side=8)
        Y = frozenset(sorted(parts[0][0])[:3])  # 3 > 8/4 = 2
        qpairs, Xp, rep = clean_match(g, names, sets, Y, parts, r, omega,
                                      gamma, eta, delta, eps, mu, d, k)
        assert rep.flushed_pairs == [0]
        assert len(qpairs) == 1
        assert not (Xp[0] & parts[0][0])

    def test_partition_mismatch_rejected(self):
        g, names, sets, Y, parts, r, omega, gamma, eta, delta, eps, mu, d, k = \
            match_instance(2, pair_count=1, side=4)
        bad_sets = [sets[0] | frozenset({g.n - 1}), sets[1], sets[2]]
        with pytest.raises(ValueError):
            clean_match(g, names, bad_sets, Y, parts, r, omega, gamma, eta,
                        delta, eps, mu, d, k)

    def test_eviction_sets_tracked(self):
        g, names, sets, Y, parts, r, omega, gamma, eta, delta, eps, mu, d, k = \
            match_instance(9, pair_count=1, side=8, density=0.55)
        qpairs, Xp, rep = clean_match(g, names, sets, Y, parts, r, omega,
                                      gamma, eta, delta, eps, mu, d, k)
        assert hasattr(rep, "evictions")
        x0a, x1a = rep.evictions
        assert x0a <= sets[0] and x1a <= sets[1]

    def test_fixed_point(self):
        g, names, sets, Y, parts, r, omega, gamma, eta, delta, eps, mu, d, k = \
            match_instance(4, pair_count=2, side=6)
        qpairs, Xp, rep = clean_match(g, names, sets, Y, parts, r, omega,
                                      gamma, eta, delta, eps, mu, d, k)
        parts2 = [q for q in qpairs]
        if not parts2 or not all(q0 and q1 for q0, q1 in parts2):
            return
        sets2 = [frozenset().union(*[q[0] for q in parts2]),
                 frozenset().union(*[q[1] for q in parts2])] + list(Xp[2:])
        qpairs2, Xp2, rep2 = clean_match(g, names, sets2, frozenset(), parts2,
                                         r, omega, gamma, eta, delta, eps, mu,
                                         d, k)
        assert qpairs2 == qpairs
        assert not rep2.trace


class TestTraceReplayAllOps:
    def test_cyellow_replay(self):
        g, sets, Y, r, os_, oss, delta, gamma, eta, k = c_plus_yellow_instance(4)
        Xp, rep = clean_c_plus_yellow(g, "G", sets, sets[1] & Y | Y, r, os_,
                                      oss, delta, gamma, eta, k)
        inputs = {"X%d'" % i: (sets[i] - Y if i == 1 else sets[i])
                  for i in range(len(sets))}
        final = replay(inputs, rep.trace)
        for i, X in enumerate(Xp):
            assert final["X%d'" % i] == X

    def test_yellow_replay(self):
        g, names, sets, Y, r, omega, gamma, delta, eta, k = yellow_instance(5)
        Xp, rep = clean_yellow(g, names, sets, Y, r, omega, gamma, delta, eta, k)
        inputs = {"X%d'" % i: sets[i] - Y for i in range(len(sets))}
        final = replay(inputs, rep.trace)
        for i, X in enumerate(Xp):
            assert final["X%d'" % i] == X

    def test_match_replay(self):
        g, names, sets, _, parts, r, omega, gamma, eta, delta, eps, mu, d, k = \
            match_instance(3, pair_count=2, side=8)
        Y = frozenset(sorted(parts[0][0])[:3])
        qpairs, Xp, rep = clean_match(g, names, sets, Y, parts, r, omega,
                                      gamma, eta, delta, eps, mu, d, k)
        inputs = {"X%d'" % i: sets[i] - Y for i in range(len(sets))}
        final = replay(inputs, rep.trace)
        for i, X in enumerate(Xp):
            assert final["X%d'" % i] == X
