"""Regular-pair certificates, regularized matchings and regularized graphs.

A pair (U, W) is eps-regular when every pair of subsets U' of U, W' of W
with |U'| >= eps|U| and |W'| >= eps|W| has |d(U,W) - d(U',W')| < eps.
Exact certification enumerates all qualifying subset pairs (feasible only at
desk scale, default cap 20 per side); above the cap a sampled check is
available, and its verdict is explicitly labelled non-exhaustive.  A found
irregularity witness is always exact regardless of mode.

All density comparisons are integer arithmetic: the test
|e'/(a m) - e/(AB)| >= p/q is cleared of denominators before comparing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .exactmath import frac
from .graphcore import LayeredGraph
from .report import Report
from .rng import make_rng

EXACT_CAP = 20  # largest side size for exhaustive subset enumeration


@dataclass(frozen=True)
class Sampled:
    trials: int = 2000
    seed: int = 0


@dataclass
class RegPairCertificate:
    verdict: str  # exact-regular | exact-irregular | sampled-regular | indeterminate
    epsilon: Fraction
    density: Fraction
    witness: Optional[tuple] = None  # (U', W', d(U', W'))
    trials: int = 0
    worst_deviation: Optional[Fraction] = None
    note: str = ""

    @property
    def is_regular(self) -> bool:
        return self.verdict in ("exact-regular", "sampled-regular")


def _min_size(eps: Fraction, size: int) -> int:
    """Smallest integer a with a >= eps * size."""
    bound = eps * size
    a = int(bound)
    if a < bound:
        a += 1
    return max(a, 0)


def _adj_matrix(g: LayeredGraph, layer, U, W):
    u_list, w_list = sorted(U), sorted(W)
    adj = g.adj(layer)
    M = np.zeros((len(u_list), len(w_list)), dtype=np.int64)
    w_index = {w: j for j, w in enumerate(w_list)}
    for i, u in enumerate(u_list):
        for w in adj[u]:
            j = w_index.get(w)
            if j is not None:
                M[i, j] = 1
    return u_list, w_list, M


def _violates(e_sub: int, a: int, m: int, e: int, ab: int, eps: Fraction) -> bool:
    """|e_sub/(a m) - e/ab| >= eps, exactly, in integers."""
    p, q = eps.numerator, eps.denominator
    lhs = abs(e_sub * ab - e * a * m) * q
    return lhs >= p * a * m * ab


def check_regular_pair(g: LayeredGraph, layer, U, W, eps, mode="exact",
                       cap: int = EXACT_CAP) -> RegPairCertificate:
    """Certify (U, W) as eps-regular or produce an exact irregularity witness.

    Exact mode enumerates subset pairs in lexicographic bitmask order (over
    the sorted vertex lists) and reports the first violating pair, so the
    witness is canonical.  Sampled mode draws qualifying subset pairs at
    random; it can only return sampled-regular or an exact witness.
    """
    eps = frac(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    U, W = frozenset(U), frozenset(W)
    if U & W:
        raise ValueError("regular-pair sides overlap")
    if not U or not W:
        return RegPairCertificate("exact-regular", eps, Fraction(0),
                                  note="empty side: all sub-densities 0")
    nu, nw = len(U), len(W)
    u_list, w_list, M = _adj_matrix(g, layer, U, W)
    e = int(M.sum())
    ab = nu * nw
    d = Fraction(e, ab)
    a_min = max(_min_size(eps, nu), 1)
    m_min = max(_min_size(eps, nw), 1)

    if mode == "exact":
        if nu > cap or nw > cap:
            return RegPairCertificate(
                "indeterminate", eps, d,
                note="sides %dx%d above exact cap %d; use sampled mode" % (nu, nw, cap))
        return _check_exact(M, u_list, w_list, e, ab, eps, d, a_min, m_min)
    if isinstance(mode, Sampled):
        return _check_sampled(M, u_list, w_list, e, ab, eps, d, a_min, m_min, mode)
    raise ValueError("unknown mode %r" % (mode,))


def _check_exact(M, u_list, w_list, e, ab, eps, d, a_min, m_min) -> RegPairCertificate:
    nu, nw = len(u_list), len(w_list)
    p, q = eps.numerator, eps.denominator
    # degs[mask][j] = deg of w_list[j] into the U-subset encoded by mask
    degs = np.zeros((1 << nu, nw), dtype=np.int32)
    for mask in range(1, 1 << nu):
        low = mask & -mask
        degs[mask] = degs[mask ^ low] + M[low.bit_length() - 1]
    for mask in range(1, 1 << nu):
        a = mask.bit_count()
        if a < a_min:
            continue
        row = sorted(degs[mask].tolist(), reverse=True)
        pref_hi = pref_lo = 0
        found = False
        for m in range(1, nw + 1):
            pref_hi += row[m - 1]       # m largest degrees
            pref_lo += row[nw - m]      # m smallest degrees
            if m < m_min:
                continue
            # extremal e(U', W') for this (a, m): any violation implies one here
            if _violates(pref_hi, a, m, e, ab, eps) or _violates(pref_lo, a, m, e, ab, eps):
                found = True
                break
        if found:
            wit = _first_witness_for_mask(degs[mask], mask, u_list, w_list,
                                          e, ab, eps, a, m_min)
            return RegPairCertificate("exact-irregular", eps, d, witness=wit)
    return RegPairCertificate("exact-regular", eps, d)


def _first_witness_for_mask(deg_vec, umask, u_list, w_list, e, ab, eps, a, m_min):
    """Lex-first violating W' for a fixed violating U'-mask."""
    nw = len(w_list)
    deg_vec = deg_vec.tolist()
    esub = np.zeros(1 << nw, dtype=np.int64)
    for wmask in range(1, 1 << nw):
        low = wmask & -wmask
        j = low.bit_length() - 1
        esub[wmask] = esub[wmask ^ low] + deg_vec[j]
        m = wmask.bit_count()
        if m >= m_min and _violates(int(esub[wmask]), a, m, e, ab, eps):
            Up = frozenset(u_list[i] for i in range(len(u_list)) if umask >> i & 1)
            Wp = frozenset(w_list[i] for i in range(nw) if wmask >> i & 1)
            return (Up, Wp, Fraction(int(esub[wmask]), a * m))
    raise AssertionError("violating U' mask had no violating W'")


def _check_sampled(M, u_list, w_list, e, ab, eps, d, a_min, m_min,
                   mode: Sampled) -> RegPairCertificate:
    rng = make_rng(mode.seed)
    nu, nw = len(u_list), len(w_list)
    worst = Fraction(0)
    for _ in range(mode.trials):
        a = rng.randint(a_min, nu)
        m = rng.randint(m_min, nw)
        ui = rng.sample(range(nu), a)
        wj = rng.sample(range(nw), m)
        e_sub = int(M[np.ix_(ui, wj)].sum())
        dev = abs(Fraction(e_sub, a * m) - d)
        if dev > worst:
            worst = dev
        if dev >= eps:
            Up = frozenset(u_list[i] for i in ui)
            Wp = frozenset(w_list[j] for j in wj)
            return RegPairCertificate("exact-irregular", eps, d,
                                      witness=(Up, Wp, Fraction(e_sub, a * m)),
                                      trials=mode.trials, worst_deviation=dev)
    return RegPairCertificate("sampled-regular", eps, d, trials=mode.trials,
                              worst_deviation=worst,
                              note="non-exhaustive: %d sampled subset pairs" % mode.trials)


def check_super_regular(g: LayeredGraph, layer, A, B, eps, gamma,
                        mode="exact", cap: int = EXACT_CAP) -> Report:
    """(eps, gamma)-super-regularity: eps-regular plus the two mindeg clauses."""
    eps, gamma = frac(eps), frac(gamma)
    A, B = frozenset(A), frozenset(B)
    rep = Report("super-regular pair")
    cert = check_regular_pair(g, layer, A, B, eps, mode, cap)
    rep.add("regular", cert.is_regular if cert.verdict != "indeterminate" else None,
            measured=cert.verdict, note=cert.note)
    rep.cert = cert
    if A and B:
        rep.check_ge("mindeg(A,B)", g.mindeg(layer, A, B), gamma * len(B))
        rep.check_ge("mindeg(B,A)", g.mindeg(layer, B, A), gamma * len(A))
        if rep.ok:
            rep.info("implied density >= gamma", measured=g.density(layer, A, B))
    else:
        rep.add("mindeg clauses", False, note="empty side")
    return rep


def restrict_pair_params(eps, d, alpha):
    """Certificate propagation to subsets of fractional size >= alpha.

    A restriction of an eps-regular pair of density d to sides of at least
    an alpha-fraction is (2 eps / alpha)-regular of density >= d - eps.
    """
    eps, d, alpha = frac(eps), frac(d), frac(alpha)
    if alpha <= eps:
        raise ValueError("alpha must exceed eps")
    return 2 * eps / alpha, d - eps


def degree_typicality(g: LayeredGraph, layer, R, Qs, eps) -> Report:
    """Vertices of R whose degree into the union of the Qs is atypical.

    Reports the sets violating the lower bound (a) and the upper bound (b)
    around e(R, Q)/|R| with slack eps |Q|.  When every (R, Q_i) is an
    eps-regular pair, each violating set has size at most eps |R|; that is a
    consequence the caller may assert, not something enforced here.
    """
    eps = frac(eps)
    R = frozenset(R)
    rep = Report("degree typicality")
    Q = frozenset().union(*Qs) if Qs else frozenset()
    if R & Q:
        raise ValueError("R intersects a Q_i")
    union = frozenset(Q)
    if not R or not union:
        rep.low_violators = frozenset()
        rep.high_violators = frozenset()
        rep.add("violators", True, measured=0, note="vacuous")
        return rep
    expected = Fraction(g.e_ordered(layer, R, union), len(R))
    slack = eps * len(union)
    low = frozenset(v for v in R if g.deg(layer, v, union) < expected - slack)
    high = frozenset(v for v in R if g.deg(layer, v, union) > expected + slack)
    rep.low_violators = low
    rep.high_violators = high
    rep.info("expected degree e(R,Q)/|R|", measured=expected)
    rep.add("low violators", None, measured=len(low), note="bound (a)")
    rep.add("high violators", None, measured=len(high), note="bound (b)")
    return rep


@dataclass
class RegularizedMatching:
    """Ordered list of disjoint (A, B) pairs certified regular and dense."""

    pairs: tuple
    eps: Fraction
    d: Fraction
    ell: object  # rational or RootVal lower bound on side sizes
    layer: object = "G"

    def __init__(self, pairs, eps, d, ell, layer="G"):
        self.pairs = tuple((frozenset(a), frozenset(b)) for a, b in pairs)
        self.eps = frac(eps)
        self.d = frac(d)
        self.ell = ell
        self.layer = layer

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def members(self) -> list:
        """V(M) as the family of member sets, firsts then seconds per pair."""
        out = []
        for a, b in self.pairs:
            out.append(a)
            out.append(b)
        return out

    def firsts(self) -> list:
        return [a for a, _ in self.pairs]

    def seconds(self) -> list:
        return [b for _, b in self.pairs]

    def v1(self) -> frozenset:
        return frozenset().union(*self.firsts()) if self.pairs else frozenset()

    def v2(self) -> frozenset:
        return frozenset().union(*self.seconds()) if self.pairs else frozenset()

    def vertices(self) -> frozenset:
        return self.v1() | self.v2()

    def partner(self, X: frozenset):
        for a, b in self.pairs:
            if a == X:
                return b
            if b == X:
                return a
        raise KeyError("set is not a member of the matching")

    def union(self, other: "RegularizedMatching") -> "RegularizedMatching":
        return RegularizedMatching(self.pairs + other.pairs,
                                   max(self.eps, other.eps),
                                   min(self.d, other.d),
                                   min(self.ell, other.ell), self.layer)


def validate_regularized_matching(m: RegularizedMatching, g: LayeredGraph,
                                  layer=None, mode="exact",
                                  cap: int = EXACT_CAP) -> Report:
    """Per-clause check of the regularized-matching definition."""
    layer = m.layer if layer is None else layer
    rep = Report("regularized matching")
    bad_size = next((i for i, (a, b) in enumerate(m.pairs)
                     if len(a) != len(b) or not (len(a) >= m.ell)), None)
    rep.add("(i) |A|=|B|>=ell", bad_size is None,
            note="" if bad_size is None else "pair %d" % bad_size)
    bad_reg = None
    for i, (a, b) in enumerate(m.pairs):
        cert = check_regular_pair(g, layer, a, b, m.eps, mode, cap)
        if not cert.is_regular or cert.density < m.d:
            bad_reg = (i, cert)
            break
    rep.add("(ii) eps-regular with density >= d", bad_reg is None,
            note="" if bad_reg is None else
            "pair %d: %s, density %s" % (bad_reg[0], bad_reg[1].verdict, bad_reg[1].density))
    members = m.members()
    disjoint = True
    seen = set()
    for s in members:
        if s & seen:
            disjoint = False
            break
        seen |= s
    rep.add("(iii) members pairwise disjoint", disjoint)
    return rep


@dataclass
class RegularizedGraph:
    """Edge set over a vertex ensemble with empty insides and regular crossings."""

    edges: frozenset
    ensemble: tuple
    eps: Fraction
    d: Fraction
    ell1: object
    ell2: object

    def __init__(self, edges, ensemble, eps, d, ell1, ell2):
        from .graphcore import norm_edge

        self.edges = frozenset(norm_edge(*e) for e in edges)
        self.ensemble = tuple(frozenset(x) for x in ensemble)
        self.eps = frac(eps)
        self.d = frac(d)
        self.ell1 = ell1
        self.ell2 = ell2

    def universe(self) -> frozenset:
        return frozenset().union(*self.ensemble) if self.ensemble else frozenset()


def validate_regularized_graph(rg: RegularizedGraph, mode="exact",
                               cap: int = EXACT_CAP,
                               matching: Optional[RegularizedMatching] = None) -> Report:
    """Check the regularized-graph clauses, plus matching consistency if given."""
    rep = Report("regularized graph")
    universe = rg.universe()
    total = sum(len(x) for x in rg.ensemble)
    if total != len(universe):
        raise ValueError("ensemble members overlap")
    stray = [e for e in rg.edges if e[0] not in universe or e[1] not in universe]
    if stray:
        raise ValueError("edge %r leaves the ensemble universe" % (stray[0],))
    rep.check_ge("ensemble sizes >= ell1",
                 min((len(x) for x in rg.ensemble), default=0) if rg.ensemble else 0,
                 rg.ell1)
    locate = {}
    for idx, x in enumerate(rg.ensemble):
        for v in x:
            locate[v] = idx
    inner = next((e for e in rg.edges if locate[e[0]] == locate[e[1]]), None)
    rep.add("no edges inside a member", inner is None,
            note="" if inner is None else "edge %r" % (inner,))

    n = max(universe) + 1 if universe else 0
    helper = LayeredGraph(n, {"G": [e for e in rg.edges]}) if n else None
    bad_pair = None
    for i in range(len(rg.ensemble)):
        for j in range(i + 1, len(rg.ensemble)):
            X, Y = rg.ensemble[i], rg.ensemble[j]
            cross = helper.e_ordered("G", X, Y) if helper else 0
            if cross == 0:
                continue
            dens = Fraction(cross, len(X) * len(Y))
            cert = check_regular_pair(helper, "G", X, Y, rg.eps, mode, cap)
            if dens < rg.d or not cert.is_regular:
                bad_pair = (i, j, dens, cert.verdict)
                break
        if bad_pair:
            break
    rep.add("cross pairs eps-regular, density 0 or >= d", bad_pair is None,
            note="" if bad_pair is None else "pair (%d,%d) density=%s %s" % bad_pair)
    worst_nbhd = 0
    if helper:
        for x in rg.ensemble:
            worst_nbhd = max(worst_nbhd, len(helper.neighbourhood("G", x)))
    rep.check_le("|N(X)| <= ell2", worst_nbhd, rg.ell2)
    if matching is not None:
        ens = set(rg.ensemble)
        consistent = all(s in ens for s in matching.members())
        rep.add("matching consistent (members drawn from ensemble)", consistent)
    return rep


def check_m_cover(F, m: RegularizedMatching) -> Report:
    """Is F a cover of m: does every pair have a member in F?"""
    rep = Report("matching cover")
    fam = [frozenset(x) for x in F]
    missing = next((i for i, (a, b) in enumerate(m.pairs)
                    if a not in fam and b not in fam), None)
    rep.add("every pair has a member in F", missing is None,
            note="" if missing is None else "pair %d uncovered" % missing)
    return rep
