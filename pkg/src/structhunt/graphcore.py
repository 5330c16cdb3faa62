"""Immutable simple graphs with named edge layers.

A LayeredGraph is one vertex set 0..n-1 with several named edge sets on it.
The base layer "G" is always present; other layers (captured edges, the
expander part, dense-spot edges, the regular part, ...) are independent edge
sets and no containment between layers is enforced.

Degree and edge-count conventions: deg(v, U) counts neighbours of v inside
U; e(X) counts edges induced by X; e(X, Y) counts ordered pairs (x, y) with
xy an edge, so e(X, X) = 2 e(X); densities are exact Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

Edge = tuple  # normalized (u, v) with u < v
VertexSet = frozenset


class GraphFormatError(ValueError):
    """Malformed layered-edge-list input (carries a line number)."""

    def __init__(self, lineno: int, message: str):
        super().__init__("line %d: %s" % (lineno, message))
        self.lineno = lineno


def norm_edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError("self-loop at %d" % u)
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class LayerExpr:
    """Union/difference expression tree over layer names.

    Parsed from strings like "G_nabla+G_D-G_exp" (left associative), or built
    with | and -.  A bare layer name is also accepted anywhere an expression
    is expected.
    """

    op: str  # "name" | "union" | "minus"
    name: str = ""
    left: Optional["LayerExpr"] = None
    right: Optional["LayerExpr"] = None

    @staticmethod
    def of(spec) -> "LayerExpr":
        if isinstance(spec, LayerExpr):
            return spec
        if isinstance(spec, str):
            return LayerExpr.parse(spec)
        raise TypeError("not a layer expression: %r" % (spec,))

    @staticmethod
    def parse(text: str) -> "LayerExpr":
        parts = text.replace(" ", "")
        if not parts:
            raise ValueError("empty layer expression")
        tokens = []
        cur = ""
        for ch in parts:
            if ch in "+-":
                tokens.append(cur)
                tokens.append(ch)
                cur = ""
            else:
                cur += ch
        tokens.append(cur)
        expr = LayerExpr("name", tokens[0])
        i = 1
        while i < len(tokens):
            op = "union" if tokens[i] == "+" else "minus"
            expr = LayerExpr(op, "", expr, LayerExpr("name", tokens[i + 1]))
            i += 2
        return expr

    def __or__(self, other):
        return LayerExpr("union", "", self, LayerExpr.of(other))

    def __sub__(self, other):
        return LayerExpr("minus", "", self, LayerExpr.of(other))

    def names(self) -> set:
        if self.op == "name":
            return {self.name}
        return self.left.names() | self.right.names()

    def key(self) -> str:
        if self.op == "name":
            return self.name
        sym = "+" if self.op == "union" else "-"
        return "(%s%s%s)" % (self.left.key(), sym, self.right.key())


class LayeredGraph:
    """n vertices, named edge layers; immutable after construction."""

    def __init__(self, n: int, layers: dict):
        if n < 0:
            raise ValueError("negative vertex count")
        if "G" not in layers:
            raise ValueError('base layer "G" missing')
        self.n = n
        norm_layers = {}
        for name, edges in layers.items():
            seen = set()
            for e in edges:
                u, v = e
                if not (0 <= u < n and 0 <= v < n):
                    raise ValueError("edge %r out of range in layer %s" % (e, name))
                ne = norm_edge(u, v)
                if ne in seen:
                    raise ValueError("duplicate edge %r in layer %s" % (e, name))
                seen.add(ne)
            norm_layers[name] = frozenset(seen)
        self.layers = norm_layers
        self._adj_cache = {}

    # -- layer algebra -------------------------------------------------

    def has_layer(self, name: str) -> bool:
        return name in self.layers

    def edges(self, layer="G") -> frozenset:
        """Edge set of a layer expression."""
        expr = LayerExpr.of(layer)
        key = expr.key()
        if key in self.layers:
            return self.layers[key]
        return self._resolve(expr)

    def _resolve(self, expr: LayerExpr) -> frozenset:
        if expr.op == "name":
            try:
                return self.layers[expr.name]
            except KeyError:
                raise KeyError("unknown layer %r" % (expr.name,)) from None
        left = self._resolve(expr.left)
        right = self._resolve(expr.right)
        return left | right if expr.op == "union" else left - right

    def with_layer(self, name: str, edges: Iterable) -> "LayeredGraph":
        """New graph with one extra (or replaced) layer."""
        layers = dict(self.layers)
        layers[name] = frozenset(norm_edge(*e) for e in edges)
        return LayeredGraph(self.n, layers)

    def adj(self, layer="G"):
        """Adjacency as a tuple of frozensets, cached per expression."""
        expr = LayerExpr.of(layer)
        key = expr.key()
        cached = self._adj_cache.get(key)
        if cached is not None:
            return cached
        nbrs = [set() for _ in range(self.n)]
        for u, v in self.edges(expr):
            nbrs[u].add(v)
            nbrs[v].add(u)
        result = tuple(frozenset(s) for s in nbrs)
        self._adj_cache[key] = result
        return result

    def vertices(self) -> frozenset:
        return frozenset(range(self.n))

    # -- degree / edge-count conventions --------------------------------

    def deg(self, layer, v: int, U=None) -> int:
        """Number of neighbours of v inside U (all vertices if U is None)."""
        if not 0 <= v < self.n:
            raise ValueError("vertex %d out of range" % v)
        nbrs = self.adj(layer)[v]
        if U is None:
            return len(nbrs)
        return len(nbrs & U)

    def mindeg(self, layer, X, Y=None):
        """min over v in X of deg(v, Y); None (vacuous) for empty X."""
        if not X:
            return None
        return min(self.deg(layer, v, Y) for v in X)

    def maxdeg(self, layer, X, Y=None) -> int:
        """max over v in X of deg(v, Y); 0 for empty X."""
        if not X:
            return 0
        return max(self.deg(layer, v, Y) for v in X)

    def e_induced(self, layer, X) -> int:
        """e(X): number of edges with both ends in X."""
        Xs = frozenset(X)
        return sum(1 for u, v in self.edges(layer) if u in Xs and v in Xs)

    def e_ordered(self, layer, X, Y) -> int:
        """e(X, Y): ordered pairs (x, y), xy an edge; X and Y may overlap."""
        Xs, Ys = frozenset(X), frozenset(Y)
        total = 0
        for u, v in self.edges(layer):
            if u in Xs and v in Ys:
                total += 1
            if v in Xs and u in Ys:
                total += 1
        return total

    def pair_counts(self, layer, X, Y):
        """(e(X), e(X, Y)) under the ordered-pair convention."""
        return self.e_induced(layer, X), self.e_ordered(layer, X, Y)

    def density(self, layer, U, W) -> Fraction:
        """d(U, W) = e(U, W) / (|U| |W|) for disjoint non-empty U, W."""
        Us, Ws = frozenset(U), frozenset(W)
        if not Us or not Ws:
            raise ValueError("density of an empty side")
        if Us & Ws:
            raise ValueError("density sides overlap")
        return Fraction(self.e_ordered(layer, Us, Ws), len(Us) * len(Ws))

    def neighbourhood(self, layer, X) -> frozenset:
        """N(X): union of neighbourhoods of vertices of X."""
        adj = self.adj(layer)
        out = set()
        for v in X:
            out |= adj[v]
        return frozenset(out)

    def __repr__(self):
        sizes = ", ".join("%s:%d" % (k, len(v)) for k, v in sorted(self.layers.items()))
        return "LayeredGraph(n=%d, %s)" % (self.n, sizes)


# -- text format -------------------------------------------------------
#
# Layered edge-list format (bit-exact):
#   first line    "n <count>"
#   then blocks   "layer <name>" followed by one "u v" pair per line
#   "#" starts a comment line; blank lines are ignored
#   0-based ids, u != v; duplicate (u,v)/(v,u) within a layer is an error.


def load_graph(text: str) -> LayeredGraph:
    """Parse the layered edge-list format; errors name the offending line."""
    n = None
    layers = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if n is None:
            if fields[0] != "n" or len(fields) != 2:
                raise GraphFormatError(lineno, 'expected "n <count>", got %r' % raw)
            try:
                n = int(fields[1])
            except ValueError:
                raise GraphFormatError(lineno, "bad vertex count %r" % fields[1])
            if n < 0:
                raise GraphFormatError(lineno, "negative vertex count")
            continue
        if fields[0] == "layer":
            if len(fields) != 2:
                raise GraphFormatError(lineno, 'expected "layer <name>"')
            current = fields[1]
            if current in layers:
                raise GraphFormatError(lineno, "layer %r declared twice" % current)
            layers[current] = set()
            continue
        if len(fields) != 2:
            raise GraphFormatError(lineno, "expected edge line 'u v', got %r" % raw)
        if current is None:
            raise GraphFormatError(lineno, "edge before any layer declaration")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphFormatError(lineno, "non-integer vertex id in %r" % raw)
        if u == v:
            raise GraphFormatError(lineno, "self-loop %d %d" % (u, v))
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(lineno, "vertex id out of range in %r" % raw)
        e = norm_edge(u, v)
        if e in layers[current]:
            raise GraphFormatError(lineno, "duplicate edge %d %d in layer %s" % (u, v, current))
        layers[current].add(e)
    if n is None:
        raise GraphFormatError(0, "empty input, no 'n' line")
    if "G" not in layers:
        layers["G"] = set()
    return LayeredGraph(n, layers)


def dump_graph(g: LayeredGraph) -> str:
    """Inverse of load_graph (layers and edges in sorted order)."""
    lines = ["n %d" % g.n]
    names = sorted(g.layers)
    if "G" in names:  # base layer first
        names.remove("G")
        names.insert(0, "G")
    for name in names:
        lines.append("layer %s" % name)
        for u, v in sorted(g.layers[name]):
            lines.append("%d %d" % (u, v))
    return "\n".join(lines) + "\n"


def parse_vertex_set(text: str, n: int) -> frozenset:
    """Parse "1,4,7" or "1 4 7" (empty string -> empty set)."""
    text = text.strip()
    if not text:
        return frozenset()
    ids = [int(t) for t in text.replace(",", " ").split()]
    for i in ids:
        if not 0 <= i < n:
            raise ValueError("vertex id %d out of range" % i)
    return frozenset(ids)


def fmt_vertex_set(X) -> str:
    return ",".join(str(i) for i in sorted(X))
