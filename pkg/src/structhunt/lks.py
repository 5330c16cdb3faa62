"""Degree-class machinery: L/S split, class membership, and every derived
vertex set of the common setting.

The common setting takes a graph with a sparse decomposition plus two
regularized matchings and derives, by fixed formulas, the sets the whole
case analysis runs on: XA/XB/XC, S0, V_plus, L_sharp, V_good, YA/YB, the
shadow-based bad sets J*, the cover family F, and the matchings M_good and
N_E.  Derivation is a pure function of its inputs: re-deriving yields the
identical bundle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .decomposition import Params, SparseDecomposition, captured_subgraph
from .exactmath import frac, sqrt_val
from .graphcore import LayeredGraph
from .regularity import RegularizedMatching, check_m_cover
from .report import Report
from .shadows import shadow


@dataclass
class LKSClassification:
    L: frozenset          # degree >= (1 + eta) k
    S: frozenset          # the complement (strict <)
    is_lks: bool          # |L| >= (1/2 + eta) n
    small_clauses: Report  # the three extra class-membership clauses

    @property
    def is_lks_small(self) -> bool:
        return self.is_lks and self.small_clauses.ok


def classify_vertices(g: LayeredGraph, k, eta) -> LKSClassification:
    """Split V by the (1 + eta) k degree threshold and test class membership."""
    k, eta = frac(k), frac(eta)
    thr = (1 + eta) * k
    L = frozenset(v for v in range(g.n) if g.deg("G", v) >= thr)
    S = g.vertices() - L
    is_lks = len(L) >= (Fraction(1, 2) + eta) * g.n

    rep = Report("small-class clauses")
    ceil_2eta = -((-(1 + 2 * eta) * k).__floor__())  # ceil((1+2eta)k)
    ceil_eta = -((-(1 + eta) * k).__floor__())
    adj = g.adj("G")
    ok1 = all(g.deg("G", u) <= ceil_2eta
              for v in range(g.n) if g.deg("G", v) > ceil_2eta
              for u in adj[v])
    rep.add("1. neighbours of deg > ceil((1+2eta)k) have deg <= that", ok1)
    ok2 = all(g.deg("G", u) == ceil_eta for v in S for u in adj[v])
    rep.add("2. neighbours of S-vertices have degree exactly ceil((1+eta)k)", ok2)
    e_total = len(g.edges("G"))
    rep.check_le("3. e(G) <= k n", e_total, k * g.n)
    return LKSClassification(L, S, is_lks, rep)


def _support(g: LayeredGraph, layer) -> frozenset:
    return frozenset(v for e in g.edges(layer) for v in e)


@dataclass
class CommonSettingBundle:
    """Everything the case analysis derives from (g, sd, p, M_A, M_B)."""

    g: LayeredGraph
    sd: SparseDecomposition
    p: Params
    MA: RegularizedMatching
    MB: RegularizedMatching
    L: frozenset = frozenset()
    S: frozenset = frozenset()
    S0: frozenset = frozenset()
    deg_hat: dict = field(default_factory=dict)
    XA: frozenset = frozenset()
    XB: frozenset = frozenset()
    XC: frozenset = frozenset()
    V_plus: frozenset = frozenset()
    L_sharp: frozenset = frozenset()
    V_good: frozenset = frozenset()
    YA: frozenset = frozenset()
    YB: frozenset = frozenset()
    V_not_to_H: frozenset = frozenset()
    V_to_E: frozenset = frozenset()
    clusters_to_E: tuple = ()
    N_E: Optional[RegularizedMatching] = None
    M_good: Optional[RegularizedMatching] = None
    J_E: frozenset = frozenset()
    J1: frozenset = frozenset()
    J: frozenset = frozenset()
    J2: frozenset = frozenset()
    J3: frozenset = frozenset()
    F_cover: tuple = ()
    R: frozenset = frozenset()

    @property
    def H(self) -> frozenset:
        return self.sd.H

    @property
    def E(self) -> frozenset:
        return self.sd.bd.E

    def MAB(self) -> RegularizedMatching:
        return self.MA.union(self.MB)

    def named_sets(self) -> dict:
        return {
            "L": self.L, "S": self.S, "S0": self.S0, "XA": self.XA,
            "XB": self.XB, "XC": self.XC, "V_plus": self.V_plus,
            "L_sharp": self.L_sharp, "V_good": self.V_good, "YA": self.YA,
            "YB": self.YB, "V_not_to_H": self.V_not_to_H,
            "V_to_E": self.V_to_E, "J_E": self.J_E, "J1": self.J1,
            "J": self.J, "J2": self.J2, "J3": self.J3, "R": self.R,
            "H": self.H, "E": self.E,
        }

    def dump(self) -> str:
        from .graphcore import fmt_vertex_set

        lines = []
        for name, val in sorted(self.named_sets().items()):
            lines.append("%s = %s" % (name, fmt_vertex_set(val)))
        return "\n".join(lines) + "\n"


def compute_XABC(g: LayeredGraph, L, S, exp_support, E, MA: RegularizedMatching,
                 MB: RegularizedMatching, k, eta):
    """The XA/XB/XC split of L, plus the materialized deg-hat map."""
    k, eta = frac(k), frac(eta)
    vmab = MA.vertices() | MB.vertices()
    excluded = exp_support | E | vmab
    hat_target = S - excluded
    deg_hat = {v: g.deg("G", v, hat_target) for v in range(g.n)}
    vmb = MB.vertices()
    XA = L - vmb
    half = (1 + eta) * k / 2
    XB = frozenset(v for v in (vmb & L) if deg_hat[v] < half)
    XC = L - (XA | XB)
    return XA, XB, XC, deg_hat


def derive_common_sets(g: LayeredGraph, sd: SparseDecomposition, p: Params,
                       MA: RegularizedMatching, MB: RegularizedMatching
                       ) -> CommonSettingBundle:
    """Compute every derived set of the common setting by its formula."""
    if not g.has_layer("G_nabla"):
        g = captured_subgraph(sd, g, "G_nabla")
    if not g.has_layer("G_D"):
        spot_edges = set()
        for s in sd.bd.spots:
            spot_edges |= s.F
        g = g.with_layer("G_D", spot_edges)

    k, eta, gamma, rho = p.k, p.eta, p.gamma, p.rho
    b = CommonSettingBundle(g, sd, p, MA, MB)
    cls = classify_vertices(g, k, eta)
    b.L, b.S = cls.L, cls.S
    H, E = sd.H, sd.bd.E
    exp_support = _support(g, sd.bd.exp_layer)
    vmab = MA.vertices() | MB.vertices()

    b.S0 = b.S - (exp_support | E)
    b.XA, b.XB, b.XC, b.deg_hat = compute_XABC(g, b.L, b.S, exp_support, E,
                                               MA, MB, k, eta)
    b.V_plus = g.vertices() - (b.S0 - vmab)
    thr_nabla = (1 + Fraction(9, 10) * eta) * k
    L_nabla = frozenset(v for v in range(g.n)
                        if g.deg("G_nabla", v) >= thr_nabla)
    b.L_sharp = b.L - L_nabla
    b.V_good = b.V_plus - (H | b.L_sharp)

    uncaptured_shadow = shadow(g, "G-G_nabla", g.vertices(), eta * k / 100)
    b.YA = shadow(g, "G_nabla", b.V_plus - b.L_sharp,
                  (1 + eta / 10) * k) - uncaptured_shadow
    b.YB = shadow(g, "G_nabla", b.V_plus - b.L_sharp,
                  (1 + eta / 10) * k / 2) - uncaptured_shadow
    b.V_not_to_H = (b.XA | b.XB) & shadow(g, "G", H, eta * k / 100)
    b.V_to_E = shadow(g, "G_nabla", E, rho * k / (100 * p.omega_star), exclude=H)
    b.clusters_to_E = tuple(C for C in sd.bd.clusters if C <= b.V_to_E)

    mab = MA.union(MB)
    ne_pairs = [(X, Y) for X, Y in mab.pairs if (X | Y) & E]
    b.N_E = RegularizedMatching(ne_pairs, mab.eps, mab.d, mab.ell, mab.layer)
    b.M_good = RegularizedMatching([(X, Y) for X, Y in MA.pairs
                                    if (X | Y) <= b.XA],
                                   MA.eps, MA.d, MA.ell, MA.layer)

    b.J_E = shadow(g, "G_reg", b.N_E.vertices(), gamma * k) - vmab
    b.J1 = shadow(g, "G_reg", g.vertices() - vmab, gamma * k) - vmab
    b.J = (b.XA - b.YA) | ((b.XA | b.XB) - b.YB) | b.V_not_to_H | b.L_sharp \
        | b.J1 | shadow(g, "G_D+G_nabla",
                        b.V_not_to_H | b.L_sharp | b.J_E | b.J1,
                        eta * eta * k / 10**5)
    b.J2 = b.XA & shadow(g, "G_nabla", b.S0 - MA.vertices(), sqrt_val(gamma) * k)
    b.J3 = b.XA & shadow(g, "G_nabla", b.XA, eta**3 * k / 10**3)

    fam = [C for C in MA.members() if C <= b.XA]
    fam += MB.firsts()
    b.F_cover = tuple(fam)
    b.R = shadow(g, "G_nabla", (b.V_to_E & b.L) - vmab, 2 * eta * eta * k / 10**5)
    return b


def check_common_setting(b: CommonSettingBundle) -> Report:
    """The ten structural properties of the common setting, with margins."""
    g, p = b.g, b.p
    k, gamma, rho = p.k, p.gamma, p.rho
    n = g.n
    rep = Report("common setting")
    rep.add("0. avoiding threshold is rho k/(100 Omega*)",
            p.b == rho * k / (100 * p.omega_star), measured=p.b,
            needed=rho * k / (100 * p.omega_star))
    rep.add("1. V(M_A) disjoint from V(M_B)",
            not (b.MA.vertices() & b.MB.vertices()))
    rep.add("2. first members of M_B inside S0",
            all(X <= b.S0 for X in b.MB.firsts()))

    ok3 = True
    note3 = ""
    for i, (X, Y) in enumerate(b.MAB().pairs):
        in_spot = any((X <= s.U and Y <= s.W) or (X <= s.W and Y <= s.U)
                      for s in b.sd.bd.spots)
        homog = (X <= b.S or X <= b.L) and (Y <= b.S or Y <= b.L)
        if not (in_spot and homog):
            ok3, note3 = False, "pair %d" % i
            break
    rep.add("3. pairs inside spots, sides degree-homogeneous", ok3, note=note3)

    ok4 = True
    note4 = ""
    LE = b.L & b.E
    for i, (X, Y) in enumerate(b.MAB().pairs):
        first_ok = any(X <= C for C in b.sd.bd.clusters)
        second_ok = any(Y <= C for C in b.sd.bd.clusters) or Y <= LE
        if not (first_ok and second_ok):
            ok4, note4 = False, "pair %d" % i
            break
    rep.add("4. members inside clusters (seconds may sit in L cap E)", ok4, note=note4)

    from .decomposition import cluster_graph

    cg = cluster_graph(b.sd.bd, g, gamma)
    idx = {C: i for i, C in enumerate(b.sd.bd.clusters)}
    ok5 = True
    for X, Y in b.M_good.pairs:
        ci = next((idx[C] for C in b.sd.bd.clusters if X <= C), None)
        cj = next((idx[C] for C in b.sd.bd.clusters if Y <= C), None)
        if ci is None or cj is None or ci == cj or not cg.has_edge(ci, cj):
            ok5 = False
            break
    rep.add("5. M_good pairs correspond to cluster-graph edges", ok5)

    vma = b.MA.vertices()
    rep.check_le("6. e_nabla(XA, S0 - V(M_A)) <= gamma k n",
                 g.e_ordered("G_nabla", b.XA, b.S0 - vma), gamma * k * n)
    vmab = b.MAB().vertices()
    rep.check_le("7. e_reg(V - V(M)) <= gamma^2 k n",
                 g.e_induced("G_reg", g.vertices() - vmab), gamma * gamma * k * n)
    rep.check_le("8. e_reg(V - V(M), V(N_E)) <= gamma^2 k n",
                 g.e_ordered("G_reg", g.vertices() - vmab, b.N_E.vertices()),
                 gamma * gamma * k * n)
    uncaptured = len(g.edges("G-G_nabla"))
    rep.check_le("9. |E(G) - E(G_nabla)| <= 2 rho k n", uncaptured, 2 * rho * k * n)
    cu = b.sd.bd.cluster_union()
    cap_e = set(g.edges("G_reg"))
    for u, v in g.edges("G"):
        if (u in b.E and (v in b.E or v in cu)) or (v in b.E and (u in b.E or u in cu)):
            cap_e.add((u, v) if u < v else (v, u))
    dangling = len(g.edges("G_D") - frozenset(cap_e))
    rep.check_le("10. |E(G_D) - (E(G_reg) + E[E, E+clusters])| <= 5/4 gamma k n",
                 dangling, Fraction(5, 4) * gamma * k * n)
    return rep


def check_derived_bounds(b: CommonSettingBundle, beta, beta_tilde,
                         split=None) -> Report:
    """Size bounds on the derived sets, with their hypotheses flagged.

    The L_sharp / XA-YA / YB bounds hold when all but beta k n edges are
    captured; the V_not_to_H bound when e(H, XA+XB) <= beta_tilde k n.
    When a proportional split is supplied, the per-class mindeg/maxdeg
    clauses and the cover property are evaluated too.
    """
    beta, beta_tilde = frac(beta), frac(beta_tilde)
    g, p = b.g, b.p
    k, eta, n = p.k, p.eta, g.n
    rep = Report("derived-set bounds")

    uncaptured = len(g.edges("G-G_nabla"))
    hyp1 = uncaptured <= beta * k * n
    rep.add("hypothesis: uncaptured edges <= beta k n", hyp1,
            measured=uncaptured, needed=beta * k * n)

    def bound_item(name, measured, needed, hyp):
        # asserted only under the hypothesis; always measured
        suffix = "" if hyp else " [hyp failed]"
        rep.add(name + suffix, (measured <= needed) if hyp else None,
                measured=measured, needed=needed)

    bound_item("|L_sharp| <= (20 beta/eta) n", len(b.L_sharp),
               20 * beta / eta * n, hyp1)
    bound_item("|XA - YA| <= (600 beta/eta^2) n", len(b.XA - b.YA),
               600 * beta / eta**2 * n, hyp1)
    bound_item("|(XA+XB) - YB| <= (600 beta/eta^2) n",
               len((b.XA | b.XB) - b.YB), 600 * beta / eta**2 * n, hyp1)

    ehx = g.e_ordered("G", b.H, b.XA | b.XB)
    hyp2 = ehx <= beta_tilde * k * n
    rep.add("hypothesis: e(H, XA+XB) <= beta_tilde k n", hyp2,
            measured=ehx, needed=beta_tilde * k * n)
    bound_item("|V_not_to_H| <= (100 beta_tilde/eta) n", len(b.V_not_to_H),
               100 * beta_tilde / eta * n, hyp2)

    rep.check_le("maxdeg_nabla(XA - (J2+J3), union F) <= (3 eta^3/2000) k",
                 g.maxdeg("G_nabla", b.XA - (b.J2 | b.J3),
                          frozenset().union(*b.F_cover) if b.F_cover else frozenset()),
                 3 * eta**3 / 2000 * k)
    cover_rep = check_m_cover(b.F_cover, b.MAB())
    rep.add("F is an (M_A+M_B)-cover", cover_rep.ok)

    if split is not None:
        for i in (1, 2):
            Ai = split.classes[i]
            tgt = b.V_good & Ai
            mdA = g.mindeg("G_nabla", b.XA - (b.J | split.exceptional_vertices), tgt)
            needA = split.fractions[i] * (1 + eta / 20) * k
            rep.add("mindeg_nabla(XA - (J+Vbar), V_good|%d) >= p_%d (1+eta/20) k" % (i, i),
                    True if mdA is None else mdA >= needA,
                    measured=mdA, needed=needA,
                    note="vacuous" if mdA is None else "")
            mdB = g.mindeg("G_nabla", b.XB - (b.J | split.exceptional_vertices), tgt)
            rep.add("mindeg_nabla(XB - (J+Vbar), V_good|%d) >= p_%d (1+eta/20) k/2" % (i, i),
                    True if mdB is None else mdB >= needA / 2,
                    measured=mdB, needed=needA / 2,
                    note="vacuous" if mdB is None else "")
    return rep
