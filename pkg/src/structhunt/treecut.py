"""Fine partitions of trees: heuristic cutter and exact validator.

A fine partition removes a small set W of cut vertices from a k-vertex tree
so that the remaining components (shrubs) are small and each touches one
(end shrub) or two (internal shrub) cut vertices.  W splits into W_A and
W_B with all W_A-to-W_B distances odd, and internal shrubs anchor only into
W_A.  Components of the induced forest on W are knags.

The cutter picks cut vertices one component at a time: the true centroid
for components with at most one anchor, and the best-balancing vertex ON
the anchor-to-anchor path for two-anchor components, which is what keeps
every shrub's anchor count at two or below.
"""

from __future__ import annotations

from dataclasses import dataclass
from .report import Report


@dataclass
class Tree:
    """Rooted tree on 0..k-1, parent array with -1 at the root."""

    parent: list

    @property
    def k(self) -> int:
        return len(self.parent)

    def __post_init__(self):
        roots = [v for v, p in enumerate(self.parent) if p == -1]
        if len(roots) != 1:
            raise ValueError("tree needs exactly one root")
        seen = 0
        adj = self.adjacency()
        stack = [roots[0]]
        visited = {roots[0]}
        while stack:
            v = stack.pop()
            seen += 1
            for u in adj[v]:
                if u not in visited:
                    visited.add(u)
                    stack.append(u)
        if seen != self.k:
            raise ValueError("parent array is not a connected tree")

    def adjacency(self):
        adj = [set() for _ in range(self.k)]
        for v, p in enumerate(self.parent):
            if p >= 0:
                adj[v].add(p)
                adj[p].add(v)
        return adj

    def edges(self):
        return [(min(v, p), max(v, p)) for v, p in enumerate(self.parent)
                if p >= 0]


def load_tree(text: str) -> Tree:
    """Format: 'n <k>' then one 'v parent' line per vertex (root parent -1)."""
    lines = [ln.strip() for ln in text.splitlines()
             if ln.strip() and not ln.startswith("#")]
    head = lines[0].split()
    if head[0] != "n" or len(head) != 2:
        raise ValueError("expected 'n <k>' header")
    k = int(head[1])
    parent = [None] * k
    for ln in lines[1:]:
        v, p = (int(x) for x in ln.split())
        parent[v] = p
    if any(p is None for p in parent):
        raise ValueError("missing parent entries")
    return Tree(parent)


def dump_tree(t: Tree) -> str:
    lines = ["n %d" % t.k]
    lines += ["%d %d" % (v, p) for v, p in enumerate(t.parent)]
    return "\n".join(lines) + "\n"


@dataclass
class Shrub:
    vertices: frozenset
    anchors: frozenset     # cut vertices adjacent to the shrub

    @property
    def is_end(self) -> bool:
        return len(self.anchors) == 1


@dataclass
class FinePartition:
    tree: Tree
    W_A: frozenset
    W_B: frozenset
    shrubs: list
    knags: list            # components of the induced forest on W
    budget: int
    c: int                 # shrub-size constant: order <= ceil(c k / |W|)

    @property
    def W(self) -> frozenset:
        return self.W_A | self.W_B

    @property
    def t_int(self) -> int:
        return sum(len(s.vertices) for s in self.shrubs if not s.is_end)

    @property
    def t_end(self) -> int:
        return sum(len(s.vertices) for s in self.shrubs if s.is_end)


def _components_with_anchors(adj, removed):
    k = len(adj)
    out = []
    seen = set(removed)
    for start in range(k):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u in removed or u in comp:
                    continue
                comp.add(u)
                stack.append(u)
        seen |= comp
        anchors = frozenset(w for w in removed
                            if any(u in comp for u in adj[w]))
        out.append((frozenset(comp), anchors))
    return out


def _best_cut_vertex(adj, comp, candidates, removed):
    """Candidate minimizing the largest resulting piece within comp."""
    best = None
    best_size = None
    for c in sorted(candidates):
        worst = 0
        seen = {c}
        for start in adj[c]:
            if start not in comp or start in seen:
                continue
            size = 0
            stack = [start]
            seen.add(start)
            while stack:
                v = stack.pop()
                size += 1
                for u in adj[v]:
                    if u in comp and u not in seen and u != c:
                        seen.add(u)
                        stack.append(u)
            worst = max(worst, size)
        if best is None or worst < best_size:
            best, best_size = c, worst
    return best


def _path_between(adj, comp, a, b):
    """Vertices of comp on the tree path between anchors a and b."""
    # BFS from the neighbour side of a within comp toward b
    start_candidates = [u for u in adj[a] if u in comp]
    prev = {}
    from collections import deque

    q = deque()
    for s in start_candidates:
        q.append(s)
        prev[s] = None
    target = None
    while q:
        v = q.popleft()
        if b in adj[v]:
            target = v
            break
        for u in adj[v]:
            if u in comp and u not in prev:
                prev[u] = v
                q.append(u)
    if target is None:
        return sorted(comp)  # b not reachable through comp; fall back
    path = []
    v = target
    while v is not None:
        path.append(v)
        v = prev[v]
    return path


def fine_partition(t: Tree, target_w: int, c: int = 2) -> FinePartition:
    """Cut-vertex selection by component splitting, then A/B colouring.

    Components with two anchors are split on the anchor path (keeps every
    shrub at <= 2 anchors); others at their centroid.  W_B collects cut
    vertices only when the parity and internal-anchor constraints allow a
    two-colour split, else W_B is empty (which satisfies every clause
    vacuously).
    """
    if target_w > t.k:
        raise ValueError("cut budget exceeds tree order")
    if target_w < 1:
        raise ValueError("cut budget must be positive")
    if t.k < 2:
        raise ValueError("tree must have at least 2 vertices")
    adj = t.adjacency()
    W = set()
    limit = -(-c * t.k // target_w)  # ceil(c k / budget)
    while len(W) < target_w:
        comps = _components_with_anchors(adj, W)
        big = [(comp, anchors) for comp, anchors in comps if len(comp) > limit]
        pool = big if big else [(comp, anchors) for comp, anchors in comps
                                if len(comp) > 1]
        if not pool:
            break
        comp, anchors = max(pool, key=lambda ca: (len(ca[0]), -min(ca[0])))
        if len(anchors) >= 2:
            a, b = sorted(anchors)[:2]
            candidates = _path_between(adj, comp, a, b)
        else:
            candidates = comp
        W.add(_best_cut_vertex(adj, comp, candidates, W))
        if not big and len(W) >= 1:
            break

    # two-colour the tree, then assign W_A/W_B
    colour = [0] * t.k
    root = t.parent.index(-1)
    stack = [root]
    seen = {root}
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                colour[u] = 1 - colour[v]
                seen.add(u)
                stack.append(u)

    comps = _components_with_anchors(adj, W)
    internal_anchors = set()
    for comp, anchors in comps:
        if len(anchors) == 2:
            internal_anchors |= anchors
    anchor_colours = {colour[w] for w in internal_anchors}
    if len(anchor_colours) <= 1:
        cls = anchor_colours.pop() if anchor_colours else colour[min(W)]
        W_A = frozenset(w for w in W if colour[w] == cls)
        W_B = frozenset(W) - W_A
    else:
        W_A, W_B = frozenset(W), frozenset()

    shrubs = [Shrub(comp, anchors) for comp, anchors in comps]
    knags = _knag_components(adj, W)
    return FinePartition(t, W_A, W_B, shrubs, knags, target_w, c)


def _knag_components(adj, W):
    W = set(W)
    seen = set()
    knags = []
    for start in sorted(W):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u in W and u not in comp:
                    comp.add(u)
                    stack.append(u)
        seen |= comp
        knags.append(frozenset(comp))
    return knags


def validate_fine_partition(fp: FinePartition) -> Report:
    """Exact check of every fine-partition clause via BFS recomputation."""
    t = fp.tree
    adj = t.adjacency()
    rep = Report("fine partition")
    W = fp.W
    if not W <= frozenset(range(t.k)):
        raise ValueError("W contains non-tree vertices")
    rep.add("W_A and W_B disjoint", not (fp.W_A & fp.W_B))
    rep.add("|W| within budget", len(W) <= fp.budget, measured=len(W),
            needed=fp.budget)

    from collections import deque

    def bfs_dist(src):
        dist = {src: 0}
        q = deque([src])
        while q:
            v = q.popleft()
            for u in adj[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    q.append(u)
        return dist

    parity_ok = True
    for a in sorted(fp.W_A):
        dist = bfs_dist(a)
        for b in sorted(fp.W_B):
            if dist[b] % 2 == 0:
                parity_ok = False
    rep.add("all W_A-W_B distances odd", parity_ok)

    comps = _components_with_anchors(adj, W)
    expected = {comp: anchors for comp, anchors in comps}
    got = {s.vertices: s.anchors for s in fp.shrubs}
    rep.add("shrubs are exactly the components of T - W", expected == got)
    count_ok = all(len(anchors) in (1, 2) for _, anchors in comps)
    rep.add("each shrub has 1 or 2 anchors", count_ok)
    internal_ok = all(anchors <= fp.W_A
                      for _, anchors in comps if len(anchors) == 2)
    rep.add("internal shrubs anchor only in W_A", internal_ok)
    limit = -(-fp.c * t.k // len(W)) if W else t.k
    big = max((len(comp) for comp, _ in comps), default=0)
    rep.add("shrub order <= ceil(c k / |W|)", big <= limit, measured=big,
            needed=limit)
    rep.add("knags are the components of T[W]",
            sorted(fp.knags) == sorted(_knag_components(adj, W)))
    total = fp.t_int + fp.t_end + len(W)
    rep.add("t_int + t_end + |W| = k", total == t.k, measured=total, needed=t.k)
    return rep


def random_tree(k: int, seed: int) -> Tree:
    """Uniform-ish random recursive tree: parent of v drawn from [0, v)."""
    from .rng import make_rng

    rng = make_rng(seed)
    parent = [-1] + [rng.randrange(v) for v in range(1, k)]
    return Tree(parent)
