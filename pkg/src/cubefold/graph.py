"""Finite simple connected graphs with ordered, opaque string vertex ids.

All operations in the package go through this module.  Graphs are immutable
after construction; derived data (adjacency masks, distance matrix, interval
masks) is computed lazily and cached on the instance, which is safe because
the computation is deterministic.

Vertex sets are represented externally as frozensets of ids and internally as
integer bitmasks over the sorted vertex order.
"""

from __future__ import annotations

from collections import deque
from itertools import permutations

from .errors import (
    Disconnected,
    DuplicateVertex,
    SelfLoop,
    UnknownEndpoint,
    UnknownVertex,
)

Edge = tuple[str, str]


class Graph:
    """Immutable simple connected graph.  Build via :func:`build_graph`."""

    def __init__(self, vertices: tuple[str, ...], edges: tuple[Edge, ...], name: str = ""):
        self.name = name
        self.vertices = vertices
        self.edges = edges
        self.n = len(vertices)
        self._index = {v: i for i, v in enumerate(vertices)}
        adj: dict[str, list[str]] = {v: [] for v in vertices}
        for u, w in edges:
            adj[u].append(w)
            adj[w].append(u)
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}
        self._adj_masks: list[int] | None = None
        self._dist: list[list[int]] | None = None
        self._interval_masks: list[list[int]] | None = None
        self._edge_set = frozenset(edges)
        # caches filled by other modules (hyperplanes, median reports, ...)
        self._cache: dict[str, object] = {}

    # -- identity ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        label = self.name or "graph"
        return f"<Graph {label}: {self.n} vertices, {len(self.edges)} edges>"

    # -- basic queries ---------------------------------------------------------

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertex(f"vertex {v!r} not in graph {self.name or ''}".strip()) from None

    def has_vertex(self, v: str) -> bool:
        return v in self._index

    def neighbors(self, v: str) -> tuple[str, ...]:
        self.index(v)
        return self._adj[v]

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: str, v: str) -> bool:
        if u == v:
            return False
        e = (u, v) if u < v else (v, u)
        return e in self._edge_set

    # -- cached internals ------------------------------------------------------

    @property
    def adj_masks(self) -> list[int]:
        if self._adj_masks is None:
            masks = [0] * self.n
            for u, w in self.edges:
                iu, iw = self._index[u], self._index[w]
                masks[iu] |= 1 << iw
                masks[iw] |= 1 << iu
            self._adj_masks = masks
        return self._adj_masks

    @property
    def dist(self) -> list[list[int]]:
        if self._dist is None:
            self._dist = [self._bfs(i) for i in range(self.n)]
        return self._dist

    def _bfs(self, start: int) -> list[int]:
        d = [-1] * self.n
        d[start] = 0
        queue = deque([start])
        adj = self.adj_masks
        while queue:
            i = queue.popleft()
            m = adj[i]
            while m:
                low = m & -m
                j = low.bit_length() - 1
                m ^= low
                if d[j] < 0:
                    d[j] = d[i] + 1
                    queue.append(j)
        return d

    @property
    def interval_masks(self) -> list[list[int]]:
        """interval_masks[i][j] = bitmask of vertices on geodesics from i to j."""
        if self._interval_masks is None:
            dist = self.dist
            n = self.n
            masks = [[0] * n for _ in range(n)]
            for i in range(n):
                di = dist[i]
                for j in range(i, n):
                    dj = dist[j]
                    dij = di[j]
                    m = 0
                    for k in range(n):
                        if di[k] + dj[k] == dij:
                            m |= 1 << k
                    masks[i][j] = m
                    masks[j][i] = m
            self._interval_masks = masks
        return self._interval_masks

    def mask_of(self, ids) -> int:
        m = 0
        for v in ids:
            m |= 1 << self.index(v)
        return m

    def ids_of(self, mask: int) -> frozenset[str]:
        out = []
        while mask:
            low = mask & -mask
            out.append(self.vertices[low.bit_length() - 1])
            mask ^= low
        return frozenset(out)

    def components_masks(self, removed_edges: frozenset[Edge] = frozenset()) -> list[int]:
        """Connected components (as bitmasks) after deleting the given edges."""
        if removed_edges:
            adj = list(self.adj_masks)
            for u, w in removed_edges:
                iu, iw = self._index[u], self._index[w]
                adj[iu] &= ~(1 << iw)
                adj[iw] &= ~(1 << iu)
        else:
            adj = self.adj_masks
        seen = 0
        comps = []
        for start in range(self.n):
            if seen >> start & 1:
                continue
            comp = 1 << start
            frontier = comp
            while frontier:
                nxt = 0
                m = frontier
                while m:
                    low = m & -m
                    nxt |= adj[low.bit_length() - 1]
                    m ^= low
                frontier = nxt & ~comp
                comp |= frontier
            comps.append(comp)
            seen |= comp
        return comps


def build_graph(vertices, edges, name: str = "") -> Graph:
    """Validate and build a graph.

    Raises DuplicateVertex, UnknownEndpoint, SelfLoop or Disconnected.  Edges
    are deduplicated; vertex and edge order in the input is irrelevant.
    """
    vlist = list(vertices)
    vset = set(vlist)
    if len(vset) != len(vlist):
        seen: set[str] = set()
        for v in vlist:
            if v in seen:
                raise DuplicateVertex(f"duplicate vertex id {v!r}")
            seen.add(v)
    norm: set[Edge] = set()
    for u, w in edges:
        if u not in vset:
            raise UnknownEndpoint(f"edge endpoint {u!r} is not a declared vertex")
        if w not in vset:
            raise UnknownEndpoint(f"edge endpoint {w!r} is not a declared vertex")
        if u == w:
            raise SelfLoop(f"self-loop at {u!r}")
        norm.add((u, w) if u < w else (w, u))
    g = Graph(tuple(sorted(vlist)), tuple(sorted(norm)), name=name)
    if g.n and len(g.components_masks()) != 1:
        raise Disconnected(f"graph {name or ''} is not connected".strip())
    return g


def distance(g: Graph, u: str, v: str) -> int:
    """Length of a shortest path between u and v."""
    return g.dist[g.index(u)][g.index(v)]


def interval(g: Graph, u: str, v: str) -> frozenset[str]:
    """All vertices on geodesics between u and v:
    w is in the interval iff d(u,w) + d(w,v) = d(u,v)."""
    return g.ids_of(g.interval_masks[g.index(u)][g.index(v)])


def four_cycles(g: Graph) -> tuple[tuple[str, str, str, str], ...]:
    """All 4-cycles (induced or not), each reported once in canonical form.

    A cycle (a, b, c, d) is canonicalized up to rotation and reflection by
    taking the lexicographically least of its eight presentations.
    """
    adj = g.adj_masks
    found: set[tuple[str, str, str, str]] = set()
    n = g.n
    for i in range(n):
        for k in range(i + 1, n):
            common = adj[i] & adj[k]
            if bin(common).count("1") < 2:
                continue
            cands = []
            m = common
            while m:
                low = m & -m
                cands.append(low.bit_length() - 1)
                m ^= low
            for a in range(len(cands)):
                for b in range(a + 1, len(cands)):
                    j, l = cands[a], cands[b]
                    cyc = (g.vertices[i], g.vertices[j], g.vertices[k], g.vertices[l])
                    found.add(_canonical_cycle(cyc))
    return tuple(sorted(found))


def _canonical_cycle(cyc: tuple[str, str, str, str]) -> tuple[str, str, str, str]:
    best = None
    seq = list(cyc)
    for rot in range(4):
        r = seq[rot:] + seq[:rot]
        for cand in (tuple(r), tuple([r[0]] + r[:0:-1])):
            if best is None or cand < best:
                best = cand
    return best


# -- isomorphism ---------------------------------------------------------------


def is_isomorphic(g1: Graph, g2: Graph) -> dict[str, str] | None:
    """Return a vertex bijection witnessing isomorphism, or None.

    Uses degree/distance-profile refinement followed by backtracking; intended
    for graphs up to a couple hundred vertices.
    """
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return None
    lab1 = _refine_labels(g1)
    lab2 = _refine_labels(g2)
    if sorted(lab1) != sorted(lab2):
        return None
    # group g2 candidates per label
    byl: dict[object, list[int]] = {}
    for j, lab in enumerate(lab2):
        byl.setdefault(lab, []).append(j)
    # map rarest labels first, then by id, for a small search tree
    order = sorted(range(g1.n), key=lambda i: (len(byl[lab1[i]]), g1.vertices[i]))
    adj1, adj2 = g1.adj_masks, g2.adj_masks
    assign = [-1] * g1.n  # g1 index -> g2 index
    used = 0

    def backtrack(pos: int) -> bool:
        nonlocal used
        if pos == len(order):
            return True
        i = order[pos]
        for j in byl[lab1[i]]:
            if used >> j & 1:
                continue
            ok = True
            m = adj1[i]
            while m:
                low = m & -m
                k = low.bit_length() - 1
                m ^= low
                if assign[k] >= 0 and not (adj2[j] >> assign[k] & 1):
                    ok = False
                    break
            if ok:
                # non-neighbors must stay non-neighbors
                for k in range(g1.n):
                    if assign[k] >= 0 and not (adj1[i] >> k & 1) and (adj2[j] >> assign[k] & 1):
                        ok = False
                        break
            if ok:
                assign[i] = j
                used |= 1 << j
                if backtrack(pos + 1):
                    return True
                assign[i] = -1
                used &= ~(1 << j)
        return False

    if not backtrack(0):
        return None
    return {g1.vertices[i]: g2.vertices[assign[i]] for i in range(g1.n)}


def _refine_labels(g: Graph) -> list[object]:
    dist = g.dist
    labels: list[object] = [
        (len(g._adj[g.vertices[i]]), tuple(sorted(dist[i]))) for i in range(g.n)
    ]
    for _ in range(g.n):
        compact = {lab: k for k, lab in enumerate(sorted(set(labels), key=repr))}
        cur = [compact[lab] for lab in labels]
        nxt: list[object] = []
        for i in range(g.n):
            ns = tuple(sorted(cur[g.index(w)] for w in g._adj[g.vertices[i]]))
            nxt.append((cur[i], ns))
        if len(set(nxt)) == len(set(cur)):
            return nxt
        labels = nxt
    return labels


def brute_isomorphic(g1: Graph, g2: Graph) -> dict[str, str] | None:
    """Exhaustive permutation search; test oracle for very small graphs."""
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return None
    if g1.n > 8:
        raise ValueError("brute_isomorphic is limited to 8 vertices")
    for perm in permutations(range(g2.n)):
        ok = True
        for u, w in g1.edges:
            a, b = perm[g1.index(u)], perm[g1.index(w)]
            if not (g2.adj_masks[a] >> b & 1):
                ok = False
                break
        if ok:
            return {g1.vertices[i]: g2.vertices[perm[i]] for i in range(g1.n)}
    return None
