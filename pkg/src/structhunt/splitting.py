"""Randomized proportional splitting and matching restriction.

The split itself is the probabilistic construction made explicit: an iid
categorical assignment of each vertex, in ascending id order, from a seeded
Mersenne Twister (see rng.py), so fixed seeds reproduce byte-identically.
Verification is a separate step that measures every concentration clause on
the actual instance: per-cluster and per-member splits, spot degrees, the
per-vertex degree splitting over all membership cells, and the edge-count
clauses, each with its fractional-power slack compared exactly.  The only
floating-point comparison is the exp(-k^0.1) n cap on exceptional-set sizes
(a transcendental bound); everything algebraic is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactmath import frac, ge_with_pow_slack, le_frac_pow
from .graphcore import LayeredGraph
from .regularity import RegularizedMatching, check_regular_pair
from .report import Report
from .rng import make_rng
from .shadows import shadow

TWO53 = 1 << 53


@dataclass
class Split:
    target: frozenset
    classes: tuple       # VertexSets partitioning target
    fractions: tuple     # the requested q_i (Fractions)
    seed: int
    exceptional_vertices: frozenset = frozenset()   # Vbar
    exceptional_members: tuple = ()                 # member sets of the matching
    exceptional_clusters: tuple = ()
    F_shadow: frozenset = frozenset()

    def class_of(self, v: int) -> Optional[int]:
        for i, A in enumerate(self.classes):
            if v in A:
                return i
        return None

    def restrict(self, U, i: int) -> frozenset:
        """U|i: the part of U landing in class i."""
        return frozenset(U) & self.classes[i]

    def dump(self) -> str:
        lines = []
        cls = {}
        for i, A in enumerate(self.classes):
            for v in A:
                cls[v] = i
        for v in sorted(self.target):
            lines.append("%d %d" % (v, cls[v]))
        return "\n".join(lines) + "\n"


def random_split(g: LayeredGraph, target, q, seed: int) -> Split:
    """iid categorical assignment of target vertices into len(q) classes.

    q_i = 0 forces an empty class; the q_i must be nonnegative with sum at
    most 1 (error above 1).  A deficit (sum < 1) is spread proportionally
    over the nonzero classes, which only helps the lower-bound clauses.
    Each vertex consumes one 53-bit draw, ascending id order.
    """
    q = tuple(frac(x) for x in q)
    if any(x < 0 for x in q):
        raise ValueError("negative fraction")
    total = sum(q)
    if total > 1:
        raise ValueError("fractions sum to %s > 1" % total)
    target = frozenset(target)
    p = len(q)
    rng = make_rng(seed)
    if total == 0:
        if target:
            raise ValueError("all fractions zero with non-empty target")
        return Split(target, tuple(frozenset() for _ in q), q, seed)
    # integer thresholds: draw r in [0, 2^53), assign the first class whose
    # cumulative share (scaled by 2^53, floor) exceeds r
    cumulative = []
    acc = Fraction(0)
    for x in q:
        acc += x / total
        cumulative.append(int(acc * TWO53))
    buckets = [set() for _ in range(p)]
    nonzero = [i for i in range(p) if q[i] != 0]
    last = nonzero[-1]
    for v in sorted(target):
        r = rng.getrandbits(53)
        for i in nonzero:
            if r < cumulative[i]:
                buckets[i].add(v)
                break
        else:
            buckets[last].add(v)
    return Split(target, tuple(frozenset(b) for b in buckets), q, seed)


def verify_split(split: Split, g: LayeredGraph, layers=("G",), spots=(),
                 matching: Optional[RegularizedMatching] = None, clusters=(),
                 Bs=(), k=1, gamma=Fraction(1, 2)) -> Report:
    """Measure every concentration clause of the splitting lemma.

    Populates split.exceptional_* as a side effect: vertices violating the
    spot-degree or degree-splitting clauses, matching member sets and
    clusters violating their per-class size clauses.
    """
    k = frac(k)
    gamma = frac(gamma)
    q = split.fractions
    p = len(q)
    n = g.n
    rep = Report("split verification")

    def size_clause(C, i):
        # |C cap A_i| >= q_i |C| - k^0.9
        return ge_with_pow_slack(len(C & split.classes[i]), q[i] * len(C), k, 9, 10)

    bad_clusters = tuple(C for C in clusters
                         if not all(size_clause(C, i) for i in range(p)))
    rep.add("(2) cluster splits within k^0.9 slack", not bad_clusters,
            measured=len(bad_clusters), note="violators -> exceptional clusters")

    members = matching.members() if matching is not None else []
    bad_members = tuple(C for C in members
                        if not all(size_clause(C, i) for i in range(p)))
    rep.add("(3) matching-member splits within k^0.9 slack", not bad_members,
            measured=len(bad_members), note="violators -> exceptional members")

    vbar1 = set()
    for s in spots:
        for (U, W) in ((s.U, s.W), (s.W, s.U)):
            for v in U:
                dv_ok = True
                for i in range(p):
                    got = len({u for u in _spot_nbrs(s, v)} & split.classes[i])
                    if not ge_with_pow_slack(got, q[i] * gamma * k, k, 9, 10):
                        dv_ok = False
                        break
                if not dv_ok:
                    vbar1.add(v)
    rep.add("(4) spot degrees into classes within k^0.9 slack", not vbar1,
            measured=len(vbar1), note="violators -> Vbar")

    # membership cell of each vertex over the Bs
    Bs = [frozenset(B) for B in Bs]
    nb = len(Bs)
    cellmask = {}
    for v in range(n):
        m = 0
        for j, B in enumerate(Bs):
            if v in B:
                m |= 1 << j
        cellmask[v] = m
    cls = {}
    for i, A in enumerate(split.classes):
        for v in A:
            cls[v] = i

    # (5): the check "got >= q_i degBJ - 2^-p k^0.9" is cleared of
    # denominators once per class: with q_i = num/den it becomes
    # num*degBJ - got*den <= floor(den * 2^-p * k^(9/10)), all integers
    from .exactmath import floor_root

    slack_floor = {}
    nonzero_q = []
    for i in range(p):
        if q[i] == 0:
            continue
        num, den = q[i].numerator, q[i].denominator
        slack_floor[i] = (num, den,
                          floor_root(frac(den) ** 10 * frac(k) ** 9
                                     / 2 ** (10 * p), 10))
        nonzero_q.append(i)
    vbar2 = set()
    layer_list = list(layers)
    for layer in layer_list:
        adj = g.adj(layer)
        for v in range(n):
            per_cell = {}
            per_cell_class = {}
            for u in adj[v]:
                cm = cellmask[u]
                per_cell[cm] = per_cell.get(cm, 0) + 1
                ci = cls.get(u)
                if ci is not None:
                    key = (ci, cm)
                    per_cell_class[key] = per_cell_class.get(key, 0) + 1
            ok = True
            for cm, degBJ in per_cell.items():
                for i in nonzero_q:
                    num, den, fl = slack_floor[i]
                    got = per_cell_class.get((i, cm), 0)
                    if num * degBJ - got * den > fl:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                vbar2.add(v)
    rep.add("(5) per-vertex degree splitting within 2^-p k^0.9 slack", not vbar2,
            measured=len(vbar2), note="violators -> Vbar")

    vbar = frozenset(vbar1 | vbar2)
    split.exceptional_vertices = vbar
    split.exceptional_members = bad_members
    split.exceptional_clusters = bad_clusters

    cap = math.exp(-float(k) ** 0.1) * n  # transcendental bound: float only here
    rep.add("(1) |Vbar| <= exp(-k^0.1) n", len(vbar) <= cap,
            measured=len(vbar), needed=cap)
    rep.add("(1) |union exceptional members| <= exp(-k^0.1) n",
            sum(len(c) for c in bad_members) <= cap,
            measured=sum(len(c) for c in bad_members), needed=cap)
    rep.add("(1) |union exceptional clusters| <= exp(-k^0.1) n",
            sum(len(c) for c in bad_clusters) <= cap,
            measured=sum(len(c) for c in bad_clusters), needed=cap)

    ok_sizes = True
    for i in range(p):
        for j, B in enumerate(Bs):
            got = len(split.classes[i] & B)
            if not ge_with_pow_slack(got, q[i] * len(B), n, 9, 10):
                ok_sizes = False
    rep.add("(sizes) |A_i cap B_j| >= q_i |B_j| - n^0.9", ok_sizes)

    ok6 = True
    kn = k * n
    for layer in layer_list:
        e_bd, e_b = _edge_cells(g, layer, cls, cellmask, p, nb)
        for i in range(p):
            for i2 in range(p):
                for j in range(nb):
                    for j2 in range(nb):
                        want = q[i] * q[i2] * e_b.get((j, j2), 0)
                        got = e_bd.get((i, j, i2, j2), 0)
                        if j == j2:
                            # same-cell variants compare against the induced
                            # count e(H[B_j]) = ordered/2; for i = i2 the
                            # left side is induced as well
                            want = want / 2
                            if i == i2:
                                got = got // 2
                        if not _ge_kn_slack(got, want, kn):
                            ok6 = False
    rep.add("(6) edge counts between class/cell intersections within k^0.6 n^0.6",
            ok6)

    ok7 = all(not split.classes[i] for i in range(p) if q[i] == 0)
    rep.add("(7) zero-fraction classes empty", ok7)
    return rep


def _ge_kn_slack(got, want, kn) -> bool:
    """got >= want - (kn)^(3/5), exactly."""
    shortfall = frac(want) - got
    if shortfall <= 0:
        return True
    return le_frac_pow(shortfall, kn, 3, 5)


def _spot_nbrs(s, v):
    for a, b in s.F:
        if a == v:
            yield b
        elif b == v:
            yield a


def _edge_cells(g, layer, cls, cellmask, p, nb):
    """Aggregate ordered pair counts by (class, B-index) on both endpoints.

    Returns (e_bd, e_b): e_bd[(i, j, i', j')] counts ordered pairs with the
    first endpoint in A_i cap B_j and the second in A_i' cap B_j'; e_b is
    the class-blind version.  Vertices outside all classes are skipped for
    e_bd but counted in e_b.
    """
    e_bd = {}
    e_b = {}
    for u, v in g.edges(layer):
        mu, mv = cellmask[u], cellmask[v]
        cu, cv = cls.get(u), cls.get(v)
        for (m1, c1, m2, c2) in ((mu, cu, mv, cv), (mv, cv, mu, cu)):
            for j in _bits(m1, nb):
                for j2 in _bits(m2, nb):
                    e_b[(j, j2)] = e_b.get((j, j2), 0) + 1
                    if c1 is not None and c2 is not None:
                        key = (c1, j, c2, j2)
                        e_bd[key] = e_bd.get(key, 0) + 1
    return e_bd, e_b


def _bits(mask, nb):
    for j in range(nb):
        if mask >> j & 1:
            yield j


def proportional_split(bundle, p0, p1, p2, seed: int) -> tuple:
    """The ten-class proportional splitting of V(G) - H, plus verification.

    Classes 1..3 receive the requested fractions (each at least eta/100);
    classes 4..10 carry the distinguished sets with fraction zero.  The
    verification graph family is built around (G_nabla - H) + G_D, and the
    shadow set F of the exceptional members/clusters is computed and its
    eps n bound reported.
    """
    p0, p1, p2 = frac(p0), frac(p1), frac(p2)
    p = bundle.p
    eta, k = p.eta, p.k
    for x in (p0, p1, p2):
        if x < eta / 100:
            raise ValueError("proportion %s below eta/100" % x)
    g = bundle.g
    H = bundle.H
    target = g.vertices() - H

    q = (p0, p1, p2) + (Fraction(0),) * 7
    split = random_split(g, target, q, seed)

    exp_support = frozenset(v for e in g.edges(bundle.sd.bd.exp_layer) for v in e)
    Bs = [bundle.V_good, bundle.XA - (H | bundle.J), bundle.XB - bundle.J,
          exp_support, bundle.E, bundle.V_to_E, bundle.J_E, bundle.L,
          bundle.L_sharp, bundle.V_not_to_H]

    h_incident = frozenset(e for e in g.edges("G_nabla")
                           if e[0] in H or e[1] in H)
    gstar_edges = (g.edges("G_nabla") - h_incident) | g.edges("G_D")
    gw = g.with_layer("G_star", gstar_edges)
    cu = bundle.sd.bd.cluster_union()
    bd_captured = set(gw.edges(bundle.sd.bd.reg_layer)) | set(gw.edges(bundle.sd.bd.exp_layer))
    for u, v in gw.edges("G_D"):
        if (u in bundle.E and (v in bundle.E or v in cu)) or \
           (v in bundle.E and (u in bundle.E or u in cu)):
            bd_captured.add((u, v))
    gw = gw.with_layer("G_nabla_bd", bd_captured)
    layers = ["G_star", "G_nabla_bd", bundle.sd.bd.exp_layer, "G_D",
              "G_nabla_bd+G_D"]

    rep = verify_split(split, gw, layers=layers, spots=bundle.sd.bd.spots,
                       matching=bundle.MAB(), clusters=bundle.sd.bd.clusters,
                       Bs=Bs, k=k, gamma=p.gamma)

    partners = []
    mab = bundle.MAB()
    for C in split.exceptional_members:
        try:
            partners.append(mab.partner(C))
        except KeyError:
            pass
    src = frozenset().union(*split.exceptional_members) if split.exceptional_members else frozenset()
    src |= frozenset().union(*partners) if partners else frozenset()
    src |= frozenset().union(*split.exceptional_clusters) if split.exceptional_clusters else frozenset()
    split.F_shadow = shadow(g, "G_D", src, eta * eta * k / Fraction(10**10))
    rep.check_le("|F| <= eps n", len(split.F_shadow), p.eps * g.n)
    return split, rep


def restrict_matching(N: RegularizedMatching, split: Split, i: int,
                      g: LayeredGraph, p, c_size=None, recertify=True,
                      cap: int = 12) -> tuple:
    """N|i: trim each pair to equal-size subsets inside class i.

    Pairs with a side among the split's exceptional members are skipped per
    the definition; the sub-pair is the lexicographically lowest ids of each
    side's intersection with the class.  The report evaluates the propagated
    matching parameters, the size lower bound, and the leftover-degree
    clause for vertices outside F.
    """
    eta, k, d, eps, pi = p.eta, p.k, p.d, p.eps, p.pi
    Ai = split.classes[i]
    skip = set(split.exceptional_members)
    out_pairs = []
    for X, Y in N.pairs:
        if X in skip or Y in skip:
            continue
        Xi = sorted(X & Ai)
        Yi = sorted(Y & Ai)
        m = min(len(Xi), len(Yi))
        if m == 0:
            continue
        out_pairs.append((frozenset(Xi[:m]), frozenset(Yi[:m])))

    eps2 = 400 * eps / eta
    d2 = d / 2
    ell2 = eta * pi / 200 * (c_size if c_size is not None else 0)
    out = RegularizedMatching(out_pairs, min(eps2, Fraction(1)), d2, ell2, N.layer)

    rep = Report("matching restriction")
    rep.add("pairs kept", None, measured=len(out_pairs))
    sizes_ok = all(len(a) == len(b) for a, b in out_pairs)
    rep.add("structural: equal sides, disjoint", sizes_ok)
    if c_size is not None:
        rep.check_ge("|sides| >= (eta pi/200) c", min((len(a) for a, _ in out_pairs),
                                                      default=0), ell2)
    want = split.fractions[i] * len(N.vertices())
    got = len(out.vertices())
    # |V(N|i)| >= p_i |V(N)| - 2 k^-0.05 n: the shortfall must satisfy
    # shortfall <= 2 n / k^(1/20), i.e. k * shortfall^20 <= (2n)^20, exactly
    shortfall = frac(want) - got
    size_pass = shortfall <= 0 or frac(k) * shortfall**20 <= (2 * g.n)**20
    rep.add("|V(N|i)| >= p_i |V(N)| - 2 k^-0.05 n", size_pass,
            measured=got, needed=want)

    if recertify:
        from .regularity import Sampled

        bad = None
        for idx, (a, b) in enumerate(out_pairs):
            mode = "exact" if max(len(a), len(b)) <= cap else Sampled(400, 0)
            cert = check_regular_pair(g, N.layer, a, b,
                                      min(eps2, Fraction(99, 100)), mode=mode)
            dens = g.density(N.layer, a, b) if a and b else Fraction(0)
            if not cert.is_regular or dens < d2:
                bad = (idx, cert.verdict, dens)
                break
        rep.add("pairs (400eps/eta)-regular of density >= d/2", bad is None,
                note="" if bad is None else "pair %d: %s density=%s" % bad)

    inside = frozenset()
    if out_pairs:
        inside = frozenset().union(*[a | b for a, b in out_pairs])
    vN_i = N.vertices() & Ai
    leftover = vN_i - inside
    worst = 0
    thr = eta * eta * k / 10**5
    ok_left = True
    for v in range(g.n):
        if v in split.F_shadow:
            continue
        dv = g.deg("G_D", v, leftover) if g.has_layer("G_D") else 0
        worst = max(worst, dv)
        if dv > thr:
            ok_left = False
    rep.add("leftover degree <= eta^2 k / 10^5 outside F", ok_left,
            measured=worst, needed=thr)
    return out, rep
