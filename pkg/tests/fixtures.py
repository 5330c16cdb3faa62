"""Hand-constructed witness instances for every (pre)configuration.

build(tag, spoil=False) returns (bundle, split, witness, params).  With
spoil=True exactly one clause of the definition is broken, and the checker
must fail.  All numbers are chosen so the passing variant satisfies every
clause with explicit margins; see the inline degree arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

from structhunt.configurations import ConfigParams, ConfigurationWitness
from structhunt.decomposition import (BoundedDecomposition, Params,
                                      SparseDecomposition)
from structhunt.graphcore import LayeredGraph, norm_edge
from structhunt.lks import derive_common_sets
from structhunt.regularity import RegularizedMatching
from structhunt.splitting import Split
from structhunt.spots import DenseCover, DenseSpot

F2 = Fraction(1, 2)


def bip(A, B):
    return [(u, v) for u in A for v in B]


def mk_bundle(n, G, nabla=None, exp=(), reg=(), gd=(), H=frozenset(),
              E=frozenset(), clusters=(), spots=(), MA=None, MB=None, k=4,
              eta=F2, **pkw):
    layers = {"G": G, "G_exp": list(exp), "G_reg": list(reg),
              "G_D": list(gd)}
    if nabla is not None:
        layers["G_nabla"] = list(nabla)
    g = LayeredGraph(n, layers)
    bd = BoundedDecomposition(list(clusters), DenseCover(list(spots)), "G_reg",
                              "G_exp", frozenset(E), [g.vertices()])
    sd = SparseDecomposition(frozenset(H), bd)
    p = Params(k=k, eta=eta, **pkw)
    empty = RegularizedMatching([], F2, Fraction(0), 0)
    return derive_common_sets(g, sd, p, MA or empty, MB or empty)


def mk_split(bundle, P0, P1, P2):
    target = bundle.g.vertices() - bundle.H
    rest = target - (frozenset(P0) | frozenset(P1) | frozenset(P2))
    classes = (frozenset(P0) | rest, frozenset(P1), frozenset(P2)) + \
        (frozenset(),) * 7
    q = (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)) + (Fraction(0),) * 7
    return Split(target, classes, q, seed=0)


# -- club-based instances (D2-D5 share the scaffold) ---------------------

def _club_scaffold(extra_G=(), E=frozenset(), gd=(), exp=(), reg=(),
                   clusters=(), n=16):
    # H = {0,1}; L' = L'' = {2,3,4}; their L-membership (deg >= 6) comes
    # from 2 H-edges + 4 edges to {5,6,7,8}.  Everything is captured
    # (nabla = G) so YB reaches down to {2,3,4}.
    H = frozenset({0, 1})
    core = bip([0, 1], [2, 3, 4]) + bip([2, 3, 4], [5, 6, 7, 8])
    G = list(dict.fromkeys([norm_edge(*e) for e in core + list(extra_G)]))
    return mk_bundle(n, G, nabla=G, exp=exp, gd=gd, reg=reg, H=H, E=E,
                     clusters=clusters)


def build_club(spoil=False):
    b = _club_scaffold(E=frozenset({5, 6, 7, 8}))
    split = mk_split(b, [2, 3, 4, 5, 6, 7, 8], [], [])
    omega_star = Fraction(1, 2) if not spoil else Fraction(2)  # 3 >= Omega* k?
    w = ConfigurationWitness("club", {"L2": frozenset({2, 3, 4}),
                                      "L1": frozenset({2, 3, 4}),
                                      "H1": frozenset({0, 1})})
    return b, split, w, ConfigParams(omega_star=omega_star)


def build_D2(spoil=False):
    # V1 = {2,3,4} needs V(G_exp) membership; V2 = {5,6,7,8} in G_exp
    exp = bip([2, 3, 4], [5, 6, 7, 8])
    b = _club_scaffold(E=frozenset(), exp=exp)
    split = mk_split(b, list(range(2, 9)), [], [])
    w = ConfigurationWitness("D2", {
        "L2": frozenset({2, 3, 4}), "L1": frozenset({2, 3, 4}),
        "H1": frozenset({0, 1}), "H2": frozenset({0, 1}),
        "V1": frozenset({2, 3, 4}),
        "V2": frozenset({5, 6, 7, 8}) if not spoil else frozenset({5, 6, 7, 8, 9}),
    })
    cp = ConfigParams(omega_star=F2, omega_tilde=F2, beta=Fraction(1, 4))
    return b, split, w, cp


def build_D3(spoil=False):
    gd = bip([2, 3, 4], [5, 6, 7, 8])
    b = _club_scaffold(E=frozenset({2, 3, 4, 5, 6, 7, 8}), gd=gd)
    split = mk_split(b, list(range(2, 9)), [], [])
    w = ConfigurationWitness("D3", {
        "L2": frozenset({2, 3, 4}), "L1": frozenset({2, 3, 4}),
        "H1": frozenset({0, 1}), "H2": frozenset({0, 1}),
        "V1": frozenset({2, 3, 4}), "V2": frozenset({5, 6, 7, 8}),
    })
    cp = ConfigParams(omega_star=F2, omega_tilde=F2, zeta=F2,
                      delta=Fraction(1, 4) if not spoil else Fraction(5))
    return b, split, w, cp


def build_D4(spoil=False):
    # the E'-V2 interface lives purely in the dense-spot layer (layers are
    # independent; G_D edges need not appear in G)
    gd = bip([2, 3, 4], [5, 6, 7, 8]) + bip([5, 6, 7, 8], [9, 10, 11])
    b = _club_scaffold(E=frozenset({5, 6, 7, 8}), gd=gd)
    split = mk_split(b, list(range(2, 12)), [], [])
    E1 = frozenset({5, 6, 7, 8}) if not spoil else frozenset({5, 6, 7, 8, 9})
    w = ConfigurationWitness("D4", {
        "L2": frozenset({2, 3, 4}), "L1": frozenset({2, 3, 4}),
        "H1": frozenset({0, 1}), "H2": frozenset({0, 1}),
        "V1": frozenset({2, 3, 4}), "E1": E1, "V2": frozenset({9, 10, 11}),
    })
    cp = ConfigParams(omega_star=F2, omega_tilde=F2, zeta=Fraction(3),
                      delta=F2)
    return b, split, w, cp


def build_D5(spoil=False):
    # V1 = {2,3,4} must sit inside clusters and see G_reg degree
    clusters = [frozenset({2, 3, 4})]
    reg = bip([2, 3, 4], [5, 6, 7, 8])
    b = _club_scaffold(clusters=clusters, E=frozenset({5, 6, 7, 8}), reg=reg)
    split = mk_split(b, list(range(2, 9)), [], [])
    w = ConfigurationWitness("D5", {
        "L2": frozenset({2, 3, 4}), "L1": frozenset({2, 3, 4}),
        "H1": frozenset({0, 1}), "H2": frozenset({0, 1}),
        "V1": frozenset({2, 3, 4}),
    })
    cp = ConfigParams(omega_star=F2, omega_tilde=F2, delta=Fraction(1, 4),
                      zeta=F2,
                      pi_tilde=Fraction(1) if not spoil else Fraction(3, 2))
    # spoil: pi~ > 1 makes |C cap V1| = |C| < pi~|C| fail
    return b, split, w, cp


# -- split-based instances (D6-D10) --------------------------------------

def _split_scaffold(extra_G=(), exp=(), gd=(), reg=(), E=frozenset(),
                    clusters=(), spots=(), MA=None, MB=None, n=24):
    nabla_core = bip([0, 1, 2, 3], [8, 9, 10])
    G = list(dict.fromkeys([norm_edge(*e) for e in
                            list(extra_G) + nabla_core + list(exp) + list(gd)
                            + list(reg)]))
    return mk_bundle(n, G, nabla=G, exp=exp, gd=gd, reg=reg,
                     E=frozenset(E) | frozenset({8, 9, 10}),
                     clusters=clusters, spots=spots, MA=MA, MB=MB)


def build_heart1(spoil=False):
    MA = RegularizedMatching([(frozenset({12}), frozenset({13}))], F2,
                             Fraction(0), 1)
    b = _split_scaffold(extra_G=[(12, 13)], MA=MA)
    split = mk_split(b, [0, 1, 2, 3], [4, 5, 6, 7, 12, 13], [8, 9, 10])
    w = ConfigurationWitness("heart1", {
        "V0": frozenset({0, 1}),
        "V1": frozenset({2, 3}),
        "F": (frozenset({12}),) if not spoil else (),
    })
    cp = ConfigParams(h=Fraction(3), gamma_prime=F2)
    return b, split, w, cp


def build_heart2(spoil=False):
    b = _split_scaffold()
    split = mk_split(b, [0, 1, 2, 3], [4, 5, 6, 7], [8, 9, 10])
    w = ConfigurationWitness("heart2", {
        "V0": frozenset({0, 1}), "V1": frozenset({2, 3}),
    })
    cp = ConfigParams(h=Fraction(3) if not spoil else Fraction(4))
    return b, split, w, cp


def build_exp(spoil=False):
    exp = bip([0, 1], [2, 3])
    b = _split_scaffold(exp=exp)
    split = mk_split(b, [0, 1, 2, 3], [], [8, 9, 10])
    w = ConfigurationWitness("exp", {
        "V0": frozenset({0, 1}),
        "V1": frozenset({2, 3}) if not spoil else frozenset(),
    })
    return b, split, w, ConfigParams(beta=F2)


def build_reg(spoil=False):
    pair_edges = bip([0, 1], [2, 3]) + bip([4, 5], [6, 7])
    b = _split_scaffold(extra_G=pair_edges)
    split = mk_split(b, [0, 1, 2, 3, 4, 5, 6, 7], [], [8, 9, 10])
    pairs = ((frozenset({0, 1}), frozenset({2, 3})),
             (frozenset({4, 5}), frozenset({6, 7})))
    if spoil:
        # break super-regularity: drop the second pair's edges from G
        g = b.g.with_layer("G", [e for e in b.g.edges("G")
                                 if e not in {norm_edge(*x) for x in bip([4, 5], [6, 7])}])
        b.g = g
    w = ConfigurationWitness("reg", {
        "V0": frozenset({0, 1, 4, 5}), "V1": frozenset({2, 3, 6, 7}),
        "pairs": pairs,
    })
    cp = ConfigParams(eps_tilde=F2, d_prime=F2, mu=F2)
    return b, split, w, cp


def build_D1(spoil=False):
    # K_{8,8}: mindeg_G(V(H)) = 8 >= k = 8? use k = 6: 8 >= 6, H mindeg 8 >= 3
    A = list(range(8))
    B = list(range(8, 16))
    G = bip(A, B)
    b = mk_bundle(16, G, nabla=G, k=6)
    split = mk_split(b, [], [], [])
    F = G if not spoil else [e for e in G if e != (0, 8)][:4]
    w = ConfigurationWitness("D1", {"A": frozenset(A), "B": frozenset(B),
                                    "F": F})
    return b, split, w, ConfigParams()


def build_D6(spoil=False):
    exp = bip([0, 1], [2, 3]) + bip([4, 5], [6, 7])
    mid = bip([2, 3], [4, 5])
    b = _split_scaffold(exp=exp, extra_G=mid)
    split = mk_split(b, [0, 1, 2, 3], [4, 5, 6, 7], [8, 9, 10])
    w = ConfigurationWitness("D6", {
        "precfg": "exp", "heart": 2,
        "V0": frozenset({0, 1}), "V1": frozenset({2, 3}),
        "V2": frozenset({4, 5}),
        "V3": frozenset({6, 7}) if not spoil else frozenset({6, 7, 11}),
    })
    cp = ConfigParams(delta=Fraction(1, 4), h2=Fraction(3))
    return b, split, w, cp


def build_D7(spoil=False):
    pair_edges = bip([0, 1], [2, 3])
    mid = bip([2, 3], [4, 5])
    gd = bip([4, 5], [6, 7])
    b = _split_scaffold(extra_G=pair_edges + mid, gd=gd,
                        E=frozenset({4, 5}))
    split = mk_split(b, [0, 1, 2, 3], [4, 5, 6, 7], [8, 9, 10])
    w = ConfigurationWitness("D7", {
        "precfg": "reg", "heart": 2,
        "V0": frozenset({0, 1}), "V1": frozenset({2, 3}),
        "pairs": ((frozenset({0, 1}), frozenset({2, 3})),),
        "V2": frozenset({4, 5}), "V3": frozenset({6, 7}),
    })
    cp = ConfigParams(delta=Fraction(1, 4), rho_prime=F2, eps_tilde=F2,
                      d_prime=F2, mu=F2, h2=Fraction(3))
    if spoil:
        # rho' tiny: the maxdeg_D(V2, P1 - V3) < rho' k clause needs > 0 slack
        gd2 = gd + [(4, 11), (5, 11)]
        g = b.g.with_layer("G_D", gd2).with_layer(
            "G", sorted(set(b.g.edges("G")) | {(4, 11), (5, 11)}))
        b.g = g
        cp = ConfigParams(delta=Fraction(1, 4), rho_prime=Fraction(1, 8),
                          eps_tilde=F2, d_prime=F2, mu=F2, h2=Fraction(3))
        split = mk_split(b, [0, 1, 2, 3], [4, 5, 6, 7, 11], [8, 9, 10])
    return b, split, w, cp


def build_D8(spoil=False):
    pair_edges = bip([0, 1], [2, 3])
    v12 = bip([2, 3], [11, 12])      # V1-V2 in G
    v23 = bip([11, 12], [4, 5])      # V2-V3 in G_nabla
    gd = bip([4, 5], [6, 7])         # V3-V4 in G_D
    nmatch = bip([13, 14], [15, 16])  # the matching N inside P1
    MA = RegularizedMatching([(frozenset({13, 14}), frozenset({15, 16}))],
                             F2, F2, 2, "G_D")
    b = _split_scaffold(extra_G=pair_edges + v12 + v23 + nmatch,
                        gd=gd + nmatch + bip([11, 12], [4, 5]),
                        reg=nmatch,
                        E=frozenset({4, 5}), MA=MA)
    split = mk_split(b, [0, 1, 2, 3, 11, 12],
                     [4, 5, 6, 7, 13, 14, 15, 16], [8, 9, 10])
    N = RegularizedMatching([(frozenset({13, 14}), frozenset({15, 16}))],
                            F2, F2, 2, "G_D")
    w = ConfigurationWitness("D8", {
        "V0": frozenset({0, 1}), "V1": frozenset({2, 3}),
        "pairs": ((frozenset({0, 1}), frozenset({2, 3})),),
        "V2": frozenset({11, 12}), "V3": frozenset({4, 5}),
        "V4": frozenset({6, 7}), "N": N,
    })
    h1 = Fraction(2) if not spoil else Fraction(5)
    cp = ConfigParams(delta=Fraction(1, 4), rho_prime=F2, eps1=F2, eps2=F2,
                      d1=Fraction(1, 4), d2=F2, mu1=F2, mu2=F2, h1=h1,
                      h2=Fraction(3))
    return b, split, w, cp


def build_D9(spoil=False):
    pair_edges = bip([0, 1], [2, 3])
    nmatch = bip([13, 14], [15, 16])
    v2 = [15, 16]
    v1v2 = bip([2, 3], v2)
    MA = RegularizedMatching([(frozenset({13, 14}), frozenset({15, 16}))],
                             F2, F2, 2, "G_D")
    clusters = [frozenset({13, 14}), frozenset({15, 16})]
    b = _split_scaffold(extra_G=pair_edges + nmatch + v1v2,
                        gd=nmatch + v1v2, MA=MA, clusters=clusters)
    split = mk_split(b, [0, 1, 2, 3], [13, 14, 15, 16], [8, 9, 10])
    N = RegularizedMatching([(frozenset({13, 14}), frozenset({15, 16}))],
                            F2, F2, 2, "G_D")
    w = ConfigurationWitness("D9", {
        "V0": frozenset({0, 1}), "V1": frozenset({2, 3}),
        "F": (frozenset({13, 14}),),
        "pairs": ((frozenset({0, 1}), frozenset({2, 3})),),
        "N": N, "V2": frozenset(v2),
    })
    h1 = Fraction(2) if not spoil else Fraction(4)
    cp = ConfigParams(delta=Fraction(1, 4), gamma_prime=Fraction(3, 2),
                      h1=h1, h2=Fraction(3), eps1=F2, d1=F2, mu1=F2,
                      eps2=F2, d2=F2, mu2=F2)
    return b, split, w, cp


def build_D10(spoil=False):
    X = [frozenset(range(3 * i, 3 * i + 3)) for i in range(4)]
    gt = bip(sorted(X[0]), sorted(X[1])) + bip(sorted(X[2]), sorted(X[3])) + \
        bip(sorted(X[0]), sorted(X[2])) + bip(sorted(X[1]), sorted(X[3]))
    b = mk_bundle(16, gt, nabla=gt, k=2)
    split = mk_split(b, [], [], [])
    M = RegularizedMatching([(X[2], X[3])], F2, F2, 3)
    w = ConfigurationWitness("D10", {
        "Gt_edges": gt, "ensemble": tuple(X), "M": M, "Lstar": (),
        "A": X[0], "B": X[1] if not spoil else X[0],
    })
    cp = ConfigParams(eps_tilde=F2, d_prime=F2, ell1=3, ell2=12,
                      eta_prime=Fraction(1, 4))
    return b, split, w, cp


BUILDERS = {
    "club": build_club, "heart1": build_heart1, "heart2": build_heart2,
    "exp": build_exp, "reg": build_reg,
    "D1": build_D1, "D2": build_D2, "D3": build_D3, "D4": build_D4,
    "D5": build_D5, "D6": build_D6, "D7": build_D7, "D8": build_D8,
    "D9": build_D9, "D10": build_D10,
}


def build(tag, spoil=False):
    return BUILDERS[tag](spoil)
