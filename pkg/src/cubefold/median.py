"""Median vertices, the median property, hulls and the submedian certificate.

A graph is median when every vertex triple has exactly one vertex lying on
geodesics between all three pairs.  `is_median` checks every triple (the
authoritative test at this scale) and, on failure, also looks for the two
classical local obstructions: a K_{2,3} subgraph and a corner of three
pairwise square-spanning edges that extends to no 3-cube.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .errors import DisconnectedSubset, NotMedian
from .graph import Graph
from .hyperplanes import hyperplanes


@dataclass
class MedianReport:
    is_median: bool
    witness: tuple[str, str, str] | None = None
    k23_found: tuple[frozenset[str], frozenset[str]] | None = None
    cube_condition_violation: tuple[str, str, str, str] | None = None


@dataclass
class SubmedianCertificate:
    """Two necessary-and-sufficient style checks for quotients of folds.

    parity_injective: the per-class crossing parities from the basepoint are
    well defined on every edge and distinct on distinct vertices (this is the
    hypercube-embedding half).  squares_span_cycle_space: the binary cycle
    space is generated by 4-cycles (the simple-connectivity half at the level
    the calculus needs).  witness carries the first failure found.
    """

    parity_injective: bool
    squares_span_cycle_space: bool
    witness: tuple[str, str] | None = None

    @property
    def submedian_consistent(self) -> bool:
        return self.parity_injective and self.squares_span_cycle_space


def median(g: Graph, x: str, y: str, z: str) -> str | None:
    """The unique vertex on geodesics between all three pairs, or None."""
    im = g.interval_masks
    ix, iy, iz = g.index(x), g.index(y), g.index(z)
    m = im[ix][iy] & im[iy][iz] & im[ix][iz]
    if bin(m).count("1") != 1:
        return None
    return g.vertices[m.bit_length() - 1]


def is_median(g: Graph) -> MedianReport:
    """Exhaustive triple check with diagnostics; the result is cached."""
    if "median_report" in g._cache:
        return g._cache["median_report"]
    im = g.interval_masks
    report = MedianReport(is_median=True)
    n = g.n
    for ix in range(n):
        for iy in range(ix + 1, n):
            m_xy = im[ix][iy]
            for iz in range(iy + 1, n):
                m = m_xy & im[iy][iz] & im[ix][iz]
                if bin(m).count("1") != 1:
                    report = MedianReport(
                        is_median=False,
                        witness=(g.vertices[ix], g.vertices[iy], g.vertices[iz]),
                        k23_found=_find_k23(g),
                        cube_condition_violation=_find_cube_violation(g),
                    )
                    g._cache["median_report"] = report
                    return report
    g._cache["median_report"] = report
    return report


def _find_k23(g: Graph):
    adj = g.adj_masks
    for i in range(g.n):
        for j in range(i + 1, g.n):
            common = adj[i] & adj[j]
            if bin(common).count("1") >= 3:
                mids = []
                m = common
                while m and len(mids) < 3:
                    low = m & -m
                    mids.append(g.vertices[low.bit_length() - 1])
                    m ^= low
                return (frozenset((g.vertices[i], g.vertices[j])), frozenset(mids))
    return None


def _find_cube_violation(g: Graph):
    """A corner (o; a, b, c) whose edges pairwise span 4-cycles but which
    extends to no 3-cube."""
    adj = g.adj_masks
    for io in range(g.n):
        nbrs = []
        m = adj[io]
        while m:
            low = m & -m
            nbrs.append(low.bit_length() - 1)
            m ^= low
        for ia, ib, ic in combinations(nbrs, 3):
            obit = 1 << io
            sq_ab = (adj[ia] & adj[ib]) & ~obit
            sq_ac = (adj[ia] & adj[ic]) & ~obit
            sq_bc = (adj[ib] & adj[ic]) & ~obit
            if not (sq_ab and sq_ac and sq_bc):
                continue
            corner = {io, ia, ib, ic}
            if not _spans_cube(adj, corner, sq_ab, sq_ac, sq_bc):
                return (
                    g.vertices[io],
                    g.vertices[ia],
                    g.vertices[ib],
                    g.vertices[ic],
                )
    return None


def _spans_cube(adj, corner: set[int], sq_ab: int, sq_ac: int, sq_bc: int) -> bool:
    """Some choice of square completions plus an eighth vertex forms a 3-cube."""
    for q_ab in _bits(sq_ab):
        for q_ac in _bits(sq_ac):
            for q_bc in _bits(sq_bc):
                qs = {q_ab, q_ac, q_bc}
                if len(qs) != 3 or qs & corner:
                    continue
                tops = adj[q_ab] & adj[q_ac] & adj[q_bc]
                for t in _bits(tops):
                    if t not in qs and t not in corner:
                        return True
    return False


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def require_median(g: Graph) -> None:
    rep = is_median(g)
    if not rep.is_median:
        raise NotMedian(f"graph {g.name or ''} is not median (witness {rep.witness})".strip())


def median_hull(g: Graph, subset) -> frozenset[str]:
    """Smallest superset of `subset` closed under the median operation."""
    require_median(g)
    im = g.interval_masks
    cur = g.mask_of(subset)
    members = list(_bits(cur))
    for _ in range(g.n + 1):
        new = 0
        k = len(members)
        for a in range(k):
            for b in range(a + 1, k):
                m_ab = im[members[a]][members[b]]
                for c in range(b + 1, k):
                    med = m_ab & im[members[b]][members[c]] & im[members[a]][members[c]]
                    new |= med & ~cur
        if not new:
            break
        cur |= new
        members.extend(_bits(new))
        members.sort()
    return g.ids_of(cur)


def convex_hull(g: Graph, subset) -> frozenset[str]:
    """Smallest superset of `subset` closed under intervals."""
    require_median(g)
    im = g.interval_masks
    cur = g.mask_of(subset)
    for _ in range(g.n + 1):
        new = 0
        members = list(_bits(cur))
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                new |= im[members[a]][members[b]] & ~cur
        if not new:
            break
        cur |= new
    return g.ids_of(cur)


def is_convex(g: Graph, subset) -> bool:
    """Whether the subset is interval-closed.  The subset must induce a
    connected subgraph."""
    require_median(g)
    mask = g.mask_of(subset)
    if not mask:
        raise DisconnectedSubset("empty subset")
    if not _induced_connected(g, mask):
        raise DisconnectedSubset(f"subset {sorted(subset)} does not induce a connected subgraph")
    return g.mask_of(convex_hull(g, subset)) == mask


def _induced_connected(g: Graph, mask: int) -> bool:
    start = (mask & -mask).bit_length() - 1
    comp = 1 << start
    frontier = comp
    adj = g.adj_masks
    while frontier:
        nxt = 0
        m = frontier
        while m:
            low = m & -m
            nxt |= adj[low.bit_length() - 1]
            m ^= low
        frontier = nxt & mask & ~comp
        comp |= frontier
    return comp == mask


def submedian_certificate(g: Graph) -> SubmedianCertificate:
    """Check hypercube-injectivity of crossing parities and that 4-cycles span
    the binary cycle space."""
    from .hyperplanes import edge_class  # local import to keep module load light

    hyperplanes(g)  # ensure classes are built

    # parity vectors along a BFS tree, then consistency on every non-tree edge
    parity: list[int | None] = [None] * g.n
    parity[0] = 0
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for w in g.neighbors(g.vertices[i]):
            j = g.index(w)
            if parity[j] is None:
                c = edge_class(g, g.vertices[i], w)
                parity[j] = parity[i] ^ (1 << c)
                queue.append(j)

    consistent = True
    witness = None
    for u, w in g.edges:
        c = edge_class(g, u, w)
        if parity[g.index(u)] ^ parity[g.index(w)] != 1 << c:
            consistent = False
            witness = (u, w)
            break

    injective = consistent
    if consistent:
        seen: dict[int, int] = {}
        for i in range(g.n):
            if parity[i] in seen:
                injective = False
                witness = (g.vertices[seen[parity[i]]], g.vertices[i])
                break
            seen[parity[i]] = i

    spans = _squares_span(g)
    return SubmedianCertificate(
        parity_injective=injective,
        squares_span_cycle_space=spans,
        witness=witness,
    )


def _squares_span(g: Graph) -> bool:
    from .graph import four_cycles

    cycle_rank = len(g.edges) - g.n + 1
    if cycle_rank == 0:
        return True
    if "epos" not in g._cache:
        g._cache["epos"] = {e: i for i, e in enumerate(g.edges)}
    epos = g._cache["epos"]
    basis: list[int] = []
    for cyc in four_cycles(g):
        vec = 0
        for t in range(4):
            u, w = cyc[t], cyc[(t + 1) % 4]
            e = (u, w) if u < w else (w, u)
            vec |= 1 << epos[e]
        for b in basis:
            low = b & -b
            if vec & low:
                vec ^= b
        if vec:
            basis.append(vec)
            if len(basis) == cycle_rank:
                return True
    return len(basis) == cycle_rank


__all__ = [
    "MedianReport",
    "SubmedianCertificate",
    "median",
    "is_median",
    "require_median",
    "median_hull",
    "convex_hull",
    "is_convex",
    "submedian_certificate",
]
