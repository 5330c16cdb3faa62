"""Dense spots, dense covers, nowhere-density and the spot-cleaning pass.

An (m, gamma)-dense spot is a non-empty bipartite subgraph D = (U, W; F)
with density > gamma and minimum degree > m (strict on both counts).  A
dense cover is a family of edge-disjoint spots covering a target edge set.
Spot detection is NP-hard in general: extract_dense_spot is a peeling +
max-cut heuristic whose failure certifies nothing, while
certify_nowhere_dense has a separate exact mode (exponential, desk scale
only) that is a genuine decision procedure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmath import frac, sqrt_val
from .graphcore import LayeredGraph, norm_edge
from .report import Report
from .rng import split_rng
from .shadows import maximal_cut, min_degree_subgraph, peel_bipartite

EXACT_ND_CAP = 14  # largest n for the exact nowhere-density decision


class DenseSpot:
    """Bipartite subgraph (U, W; F); (U, W; F) and (W, U; F) compare equal."""

    def __init__(self, U, W, F, m, gamma):
        self.U = frozenset(U)
        self.W = frozenset(W)
        self.F = frozenset(norm_edge(*e) for e in F)
        self.m = m
        self.gamma = frac(gamma)

    def sides(self) -> frozenset:
        return frozenset({self.U, self.W})

    def vertices(self) -> frozenset:
        return self.U | self.W

    def __eq__(self, other):
        if not isinstance(other, DenseSpot):
            return NotImplemented
        return self.sides() == other.sides() and self.F == other.F

    def __hash__(self):
        return hash((self.sides(), self.F))

    def __repr__(self):
        return "DenseSpot(|U|=%d, |W|=%d, |F|=%d)" % (len(self.U), len(self.W), len(self.F))

    def degree(self, v) -> int:
        return sum(1 for e in self.F if v in e)

    def absorbed_by(self, other: "DenseSpot") -> bool:
        """Is self contained in other as a subgraph (either orientation)?"""
        if not self.F <= other.F:
            return False
        return ((self.U <= other.U and self.W <= other.W) or
                (self.U <= other.W and self.W <= other.U))


@dataclass
class DenseCover:
    spots: list

    def edge_union(self) -> frozenset:
        out = set()
        for s in self.spots:
            out |= s.F
        return frozenset(out)

    def __iter__(self):
        return iter(self.spots)

    def __len__(self):
        return len(self.spots)


def is_dense_spot(s: DenseSpot) -> Report:
    """Exact check of the three dense-spot clauses."""
    if s.U & s.W:
        raise ValueError("spot sides overlap")
    for u, v in s.F:
        in_u = (u in s.U) + (v in s.U)
        in_w = (u in s.W) + (v in s.W)
        if not (in_u == 1 and in_w == 1):
            raise ValueError("spot edge %r not between U and W" % ((u, v),))
    rep = Report("dense spot")
    rep.add("F non-empty", bool(s.F), measured=len(s.F))
    if s.F:
        dens = Fraction(len(s.F), len(s.U) * len(s.W))
        rep.add("density > gamma", dens > s.gamma, measured=dens, needed=s.gamma)
        md = min(s.degree(v) for v in s.vertices())
        from .exactmath import cmp_le
        rep.add("mindeg > m", not cmp_le(md, s.m), measured=md, needed=s.m)
    return rep


def _edge_graph(n: int, edges) -> LayeredGraph:
    return LayeredGraph(n, {"G": edges})


def _strictly_above(m) -> Fraction:
    """Smallest integer threshold t with (integer deg >= t  <=>  deg > m)."""
    m = frac(m)
    return Fraction(int(m) + 1) if m >= 0 else Fraction(0)


def extract_dense_spot(g_or_n, layer_or_edges, m, gamma):
    """Heuristic spot extraction: core peel, maximal cut, bipartite peel.

    The core threshold is the sound one: every vertex of an (m, gamma)-spot
    has more than m neighbours inside the spot, so peeling at degree <= m
    never discards a spot vertex.  Returns a qualifying DenseSpot or None.
    None does NOT certify nowhere-density at this level; use
    certify_nowhere_dense for that.
    """
    if isinstance(g_or_n, LayeredGraph):
        g = g_or_n
        edges = g.edges(layer_or_edges)
        n = g.n
    else:
        n, edges = g_or_n, frozenset(layer_or_edges)
        g = _edge_graph(n, edges)
    gamma = frac(gamma)
    if not edges:
        return None
    work = _edge_graph(n, edges)
    core = min_degree_subgraph(work, "G", frozenset(v for e in edges for v in e),
                               _strictly_above(m))
    if not core:
        return None
    A, B = maximal_cut(work, "G", core)
    if not A or not B:
        return None
    A, B = peel_bipartite(work, "G", A, B, _strictly_above(m))
    if not A or not B:
        return None
    F = frozenset(e for e in edges
                  if (e[0] in A and e[1] in B) or (e[0] in B and e[1] in A))
    if not F:
        return None
    # a connected component of a qualifying candidate has at least its
    # density, so search components and keep the densest qualifying one
    best = None
    best_key = None
    for Ac, Bc, Fc in _bipartite_components(A, B, F):
        cand = DenseSpot(Ac, Bc, Fc, m, gamma)
        if is_dense_spot(cand).ok:
            dens = Fraction(len(Fc), len(Ac) * len(Bc))
            key = (-dens, min(cand.vertices()))
            if best is None or key < best_key:
                best, best_key = cand, key
    return best


def _bipartite_components(A, B, F):
    """Connected components of the bipartite graph (A, B; F)."""
    nbrs = {}
    for u, v in F:
        nbrs.setdefault(u, set()).add(v)
        nbrs.setdefault(v, set()).add(u)
    todo = set(nbrs)
    comps = []
    while todo:
        start = min(todo)
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in nbrs[v]:
                if u not in comp:
                    comp.add(u)
                    stack.append(u)
        todo -= comp
        comps.append((frozenset(comp & A), frozenset(comp & B),
                      frozenset(e for e in F if e[0] in comp)))
    return comps


def certify_nowhere_dense(g: LayeredGraph, layer, m, gamma, mode="exact",
                          cap: int = EXACT_ND_CAP) -> Report:
    """Decide (exact mode) or probe (heuristic mode) for (m, gamma)-spots.

    Exact mode enumerates bipartitions of connected subsets of the
    (m+1)-core with pruning; a connected qualifying spot exists iff any
    qualifying spot exists, and for fixed sides the full induced bipartite
    graph dominates every sub-selection of edges, so this is a decision.
    """
    gamma = frac(gamma)
    rep = Report("nowhere-dense")
    if mode == "heuristic":
        spot = extract_dense_spot(g, layer, m, gamma)
        rep.add("no spot found (heuristic)", spot is None,
                note="heuristic failure is not a certificate")
        rep.spot = spot
        return rep
    if g.n > cap:
        raise ValueError("exact mode capped at n <= %d (got n=%d)" % (cap, g.n))
    spot = _exact_spot_search(g, layer, m, gamma)
    rep.add("nowhere-dense (exact decision)", spot is None,
            note="" if spot is None else "found spot %r" % (spot,))
    rep.spot = spot
    return rep


def _exact_spot_search(g: LayeredGraph, layer, m, gamma):
    """Exhaustive connected-spot search; returns a spot or None."""
    m = frac(m)
    gamma = frac(gamma)
    edges = g.edges(layer)
    if not edges:
        return None
    core = min_degree_subgraph(g, layer, frozenset(v for e in edges for v in e),
                               _strictly_above(m))
    if not core:
        return None
    adj = g.adj(layer)
    # split the core into connected components; a spot lives inside one
    comps = []
    todo = set(core)
    while todo:
        start = min(todo)
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in adj[v] & core:
                if u not in comp:
                    comp.add(u)
                    stack.append(u)
        comps.append(sorted(comp))
        todo -= comp
    for comp in comps:
        found = _component_spot_search(adj, comp, m, gamma)
        if found:
            return found
    return None


def _component_spot_search(adj, comp, m, gamma):
    """Branch over assignments of comp to {out, U, W} with degree pruning."""
    order = sorted(comp, key=lambda v: -len(adj[v] & frozenset(comp)))
    t = len(order)
    nbrs = [adj[v] & frozenset(comp) for v in order]
    index = {v: i for i, v in enumerate(order)}
    # state per vertex: 0 = undecided, 1 = out, 2 = U, 3 = W
    state = [0] * t
    gp, gq = gamma.numerator, gamma.denominator

    def feasible(i):
        # every assigned U/W vertex must still be able to reach degree > m
        for j in range(i):
            if state[j] in (2, 3):
                want = 3 if state[j] == 2 else 2
                have = potential = 0
                for u in nbrs[j]:
                    k = index[u]
                    if k < i:
                        if state[k] == want:
                            have += 1
                    else:
                        potential += 1
                if have + potential <= m:
                    return False
        return True

    def leaf_check():
        U = [order[j] for j in range(t) if state[j] == 2]
        W = [order[j] for j in range(t) if state[j] == 3]
        if not U or not W:
            return None
        Uset, Wset = frozenset(U), frozenset(W)
        F = []
        for j in range(t):
            if state[j] == 2:
                for u in nbrs[j] & Wset:
                    F.append(norm_edge(order[j], u))
        if not F:
            return None
        # mindeg > m on both sides
        degs = {}
        for a, b in F:
            degs[a] = degs.get(a, 0) + 1
            degs[b] = degs.get(b, 0) + 1
        if any(v not in degs or degs[v] <= m for v in Uset | Wset):
            return None
        if len(F) * gq <= gp * len(Uset) * len(Wset):
            return None
        return DenseSpot(Uset, Wset, F, m, gamma)

    def rec(i):
        if i == t:
            return leaf_check()
        for choice in (2, 3, 1):
            # symmetry breaking: the first non-out vertex goes to U only
            if choice == 3 and not any(s in (2, 3) for s in state[:i]):
                continue
            state[i] = choice
            if feasible(i + 1):
                found = rec(i + 1)
                if found:
                    return found
            state[i] = 0
        return None

    return rec(0)


def greedy_dense_cover(g: LayeredGraph, layer, m, gamma):
    """Repeatedly extract spots from the remaining edges.

    Returns (DenseCover, residual edge set); spots are edge-disjoint by
    construction, and the residual is empty iff a true dense cover of the
    layer was achieved.
    """
    remaining = set(g.edges(layer))
    spots = []
    while True:
        spot = extract_dense_spot(g.n, remaining, m, gamma)
        if spot is None:
            break
        spots.append(spot)
        remaining -= spot.F
    return DenseCover(spots), frozenset(remaining)


def check_avoiding(g: LayeredGraph, spots, E, Lambda, eps, gamma, k,
                   adversary="sampled", seed: int = 0, trials: int = 60) -> Report:
    """Avoiding-set check for E with respect to a spot family.

    For each tested U with |U| <= Lambda*k, a vertex v of E fails if no
    spot containing v has |U intersect V(spot)| <= gamma^2 k; the test
    passes iff every tested U leaves at most eps*k failures.  Exhaustive
    mode enumerates all U (n <= 16 only); the sampled adversary draws
    random subsets, unions of spot sides, and high-degree prefixes.
    """
    eps, gamma, Lambda, k = frac(eps), frac(gamma), frac(Lambda), frac(k)
    E = frozenset(E)
    rep = Report("avoiding set")
    spot_list = list(spots)
    vset = [s.vertices() for s in spot_list]
    covered = frozenset().union(*vset) if vset else frozenset()
    if not E <= covered:
        rep.add("E inside union of spot vertex sets", False,
                note="%d vertices of E uncovered" % len(E - covered))
        return rep
    rep.add("E inside union of spot vertex sets", True)
    if not E:
        rep.add("every tested U leaves <= eps*k failures", True, measured=0,
                note="E empty: vacuous")
        rep.worst = (frozenset(), frozenset())
        return rep

    budget = Lambda * k
    cap2 = gamma * gamma * k

    def failures(U):
        out = []
        for v in E:
            ok = any(v in vs and len(U & vs) <= cap2 for vs in vset)
            if not ok:
                out.append(v)
        return frozenset(out)

    candidates = []
    if adversary == "exhaustive":
        if g.n > 16:
            raise ValueError("exhaustive avoiding check capped at n <= 16")
        verts = sorted(range(g.n))
        for mask in range(1 << g.n):
            U = frozenset(verts[i] for i in range(g.n) if mask >> i & 1)
            if len(U) <= budget:
                candidates.append(U)
    else:
        rng = split_rng(seed, "avoiding")
        size = int(budget)
        verts = sorted(range(g.n))
        by_degree = sorted(verts, key=lambda v: (-g.deg("G", v), v))
        for i in range(trials):
            kind = i % 3
            if kind == 0 and size > 0:
                U = frozenset(rng.sample(verts, min(size, g.n)))
            elif kind == 1 and vset:
                sides = []
                for s in spot_list:
                    sides.extend([s.U, s.W])
                pick = rng.sample(sides, min(len(sides), 1 + rng.randrange(2)))
                U = frozenset().union(*pick)
                U = frozenset(sorted(U)[:size]) if len(U) > budget else U
            else:
                U = frozenset(by_degree[:min(size, g.n)])
            if len(U) <= budget:
                candidates.append(U)
        candidates.append(frozenset())

    worst_U, worst_fail = frozenset(), frozenset()
    for U in candidates:
        f = failures(U)
        if len(f) > len(worst_fail):
            worst_U, worst_fail = U, f
    rep.check_le("every tested U leaves <= eps*k failures", len(worst_fail), eps * k)
    rep.add("tested U count", None, measured=len(candidates))
    rep.worst = (worst_U, worst_fail)
    return rep


def clean_spots(g: LayeredGraph, spots, E, clusters, gamma, k, rho,
                reg_layer="G_reg") -> tuple:
    """Discard-and-peel pass that absorbs a spot family into captured edges.

    Spots losing at least a sqrt(gamma)-fraction of their edges to the
    uncaptured part are discarded; each survivor keeps only captured edges
    and is peeled at the static thresholds gamma^2 b / 4 and gamma^2 a / 4
    (a, b the original side sizes).  Output spots are evaluated against the
    (gamma^3 k/4, gamma/2) clauses; edge-loss property 1 is reported against
    rho*k*n, not asserted.
    """
    gamma, k, rho = frac(gamma), frac(k), frac(rho)
    E = frozenset(E)
    cluster_union = frozenset().union(*clusters) if clusters else frozenset()
    captured = set(g.edges(reg_layer))
    for u, v in g.edges("G"):
        if (u in E and (v in E or v in cluster_union)) or \
           (v in E and (u in E or u in cluster_union)):
            captured.add(norm_edge(u, v))
    captured = frozenset(captured)

    rep = Report("clean-spots")
    out_spots = []
    absorption = []
    root_gamma = sqrt_val(gamma)
    for idx, D in enumerate(spots):
        uncaptured = D.F - captured
        # discard rule: |uncaptured| >= sqrt(gamma) * e(D), exactly
        if root_gamma * len(D.F) <= len(uncaptured):
            absorption.append((idx, None))
            continue
        a, b = len(D.U), len(D.W)
        thr_u = gamma * gamma * b / 4  # static: original side sizes
        thr_w = gamma * gamma * a / 4
        F = set(D.F & captured)
        degs = {}
        for e in F:
            for v in e:
                degs[v] = degs.get(v, 0) + 1
        U, W = set(D.U) & set(degs), set(D.W) & set(degs)
        changed = True
        while changed:
            changed = False
            for side, thr in ((U, thr_u), (W, thr_w)):
                for v in sorted(side):
                    if degs.get(v, 0) < thr:
                        side.remove(v)
                        for e in [e for e in F if v in e]:
                            F.remove(e)
                            for w in e:
                                degs[w] = degs.get(w, 0) - 1
                        changed = True
        support = {v for e in F for v in e}
        if F:
            new = DenseSpot(frozenset(U) & support, frozenset(W) & support,
                            F, gamma ** 3 * k / 4, gamma / 2)
            out_spots.append(new)
            absorption.append((idx, new))
        else:
            absorption.append((idx, None))

    lost = sum(len(D.F) for D in spots) - sum(len(s.F) for s in out_spots)
    rep.check_le("property 1: |E(D) \\ E(D_nabla)| <= rho k n", lost,
                 rho * k * g.n, note="reported, not asserted")
    prop2 = all(s.F <= captured for s in out_spots)
    rep.add("property 2: output edges captured", prop2)
    dense_ok = all(is_dense_spot(s).ok for s in out_spots)
    rep.add("outputs are (gamma^3 k/4, gamma/2)-dense", dense_ok)
    seen = set()
    disjoint = True
    for s in out_spots:
        if s.F & seen:
            disjoint = False
        seen |= s.F
    rep.add("outputs edge-disjoint", disjoint)
    absorbed = all(new.absorbed_by(spots[idx]) for idx, new in absorption
                   if new is not None)
    rep.add("absorption recorded", absorbed)
    rep.absorption = absorption
    return DenseCover(out_spots), rep
