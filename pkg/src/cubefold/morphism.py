"""Parallel-preserving maps: validation, classification, composition.

A map of graphs sends vertices to vertices and edges to edges; it is
parallel-preserving when parallel edges land in parallel edges, so that it
induces a well-defined function on hyperplanes.  `validate` is the only
constructor.  `classify` grades a map between median graphs on the ladder

    parallel-preserving < isometric-embedding < convex-embedding < isometry

using the hyperplane criteria: injective on hyperplanes gives an isometric
embedding, reflecting transversality gives a convex image, and a bijection
gives an isometry.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DomainMismatch,
    EdgeCollapsed,
    NotEdgePreserving,
    NotFactorizable,
    ParallelBroken,
    UnknownVertex,
)
from .graph import Graph, four_cycles
from .hyperplanes import edge_class, hyperplanes, relation, transverse_pairs
from .median import is_convex, require_median

KINDS = (
    "not-parallel-preserving",
    "parallel-preserving",
    "isometric-embedding",
    "convex-embedding",
    "isometry",
)

_RANK = {k: i for i, k in enumerate(KINDS)}


def rank(kind: str) -> int:
    return _RANK[kind]


@dataclass(frozen=True)
class MapClass:
    kind: str
    witness: tuple[int, int] | None = None

    def at_least(self, kind: str) -> bool:
        return _RANK[self.kind] >= _RANK[kind]


class PPMap:
    """A validated parallel-preserving map.  Create via `validate`."""

    __slots__ = ("domain", "codomain", "vertex_map", "hyperplane_map", "name")

    def __init__(self, domain: Graph, codomain: Graph, vertex_map: dict[str, str],
                 hyperplane_map: dict[int, int], name: str = ""):
        self.domain = domain
        self.codomain = codomain
        self.vertex_map = dict(vertex_map)
        self.hyperplane_map = dict(hyperplane_map)
        self.name = name

    def __call__(self, v: str) -> str:
        return self.vertex_map[v]

    def image_class(self, h) -> int:
        from .hyperplanes import as_index

        return self.hyperplane_map[as_index(self.domain, h)]

    def image_vertices(self) -> frozenset[str]:
        return frozenset(self.vertex_map.values())

    def is_vertex_bijective(self) -> bool:
        return len(set(self.vertex_map.values())) == self.codomain.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, PPMap):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.vertex_map == other.vertex_map
        )

    def __hash__(self):
        return hash((self.domain, self.codomain, tuple(sorted(self.vertex_map.items()))))

    def __repr__(self) -> str:
        nm = f" {self.name!r}" if self.name else ""
        return (
            f"<PPMap{nm} {self.domain.name or self.domain.n}→"
            f"{self.codomain.name or self.codomain.n}>"
        )


def _bad_square_diagnostic(dom: Graph, cod: Graph, vmap: dict[str, str]) -> str:
    """Find a 4-cycle whose image is neither a 4-cycle nor a single edge."""
    for a, b, c, d in four_cycles(dom):
        img = [vmap[a], vmap[b], vmap[c], vmap[d]]
        if len(set(img)) == 4:
            ok = all(cod.has_edge(img[t], img[(t + 1) % 4]) for t in range(4))
        elif len(set(img)) == 2:
            ok = img[0] == img[2] and img[1] == img[3] and cod.has_edge(img[0], img[1])
        else:
            ok = False
        if not ok:
            return f"; 4-cycle ({a},{b},{c},{d}) maps to {tuple(img)}"
    return ""


def validate(domain: Graph, codomain: Graph, vertex_map: dict[str, str],
             name: str = "") -> PPMap:
    """Check totality, edge preservation and parallelism preservation."""
    for v in domain.vertices:
        if v not in vertex_map:
            raise UnknownVertex(f"vertex_map missing domain vertex {v!r}")
        w = vertex_map[v]
        if w not in codomain._index:
            raise UnknownVertex(f"image {w!r} of {v!r} is not a codomain vertex")

    for u, w in domain.edges:
        pu, pw = vertex_map[u], vertex_map[w]
        if pu == pw:
            raise EdgeCollapsed(f"edge {u!r}-{w!r} collapses to vertex {pu!r}")
        if not codomain.has_edge(pu, pw):
            raise NotEdgePreserving(f"edge {u!r}-{w!r} maps to non-edge {pu!r}-{pw!r}")

    hyperplane_map: dict[int, int] = {}
    first_edge: dict[int, tuple[str, str]] = {}
    for u, w in domain.edges:
        j = edge_class(domain, u, w)
        k = edge_class(codomain, vertex_map[u], vertex_map[w])
        if j not in hyperplane_map:
            hyperplane_map[j] = k
            first_edge[j] = (u, w)
        elif hyperplane_map[j] != k:
            fu, fw = first_edge[j]
            raise ParallelBroken(
                f"parallel edges {fu!r}-{fw!r} and {u!r}-{w!r} map into "
                f"different classes {hyperplane_map[j]} and {k}"
                + _bad_square_diagnostic(domain, codomain, vertex_map)
            )
    return PPMap(domain, codomain, vertex_map, hyperplane_map, name=name)


def identity_map(g: Graph) -> PPMap:
    return validate(g, g, {v: v for v in g.vertices}, name="id")


def compose(psi: PPMap, phi: PPMap, name: str = "") -> PPMap:
    """psi after phi."""
    if phi.codomain != psi.domain:
        raise DomainMismatch(
            f"codomain of {phi!r} is not the domain of {psi!r}"
        )
    vmap = {v: psi.vertex_map[phi.vertex_map[v]] for v in phi.domain.vertices}
    out = validate(phi.domain, psi.codomain, vmap, name=name)
    assert all(
        out.hyperplane_map[j] == psi.hyperplane_map[phi.hyperplane_map[j]]
        for j in out.hyperplane_map
    )
    return out


def classify(psi: PPMap) -> MapClass:
    """Strongest applicable kind, with the pair blocking the next kind up."""
    require_median(psi.domain)
    require_median(psi.codomain)

    hmap = psi.hyperplane_map
    k = len(hyperplanes(psi.domain))
    by_image: dict[int, int] = {}
    merged = None
    for j in range(k):
        if hmap[j] in by_image:
            merged = (by_image[hmap[j]], j)
            break
        by_image[hmap[j]] = j

    if merged is not None:
        out = MapClass("parallel-preserving", witness=merged)
    else:
        bad = _transversalized(psi)
        if bad is not None:
            out = MapClass("isometric-embedding", witness=bad)
        elif psi.domain.n == psi.codomain.n:
            out = MapClass("isometry")
        else:
            out = MapClass("convex-embedding")

    if __debug__ and psi.domain.n <= 40 and psi.codomain.n <= 40:
        _metric_cross_check(psi, out)
    return out


def _transversalized(psi: PPMap) -> tuple[int, int] | None:
    """First non-transverse domain pair with transverse images, in-contact
    pairs scanned before separated ones."""
    dom, cod = psi.domain, psi.codomain
    k = len(hyperplanes(dom))
    trans_dom = set(transverse_pairs(dom))
    contact_first: list[tuple[int, int]] = []
    separated: list[tuple[int, int]] = []
    for i in range(k):
        for j in range(i + 1, k):
            if (i, j) in trans_dom:
                continue
            r = relation(dom, i, j)
            (contact_first if r.kind == "tangent" else separated).append((i, j))
    for i, j in contact_first + separated:
        if psi.hyperplane_map[i] == psi.hyperplane_map[j]:
            continue
        if relation(cod, psi.hyperplane_map[i], psi.hyperplane_map[j]).kind == "transverse":
            return (i, j)
    return None


def _metric_cross_check(psi: PPMap, out: MapClass) -> None:
    dom, cod = psi.domain, psi.codomain
    vm = psi.vertex_map
    isometric = all(
        cod.dist[cod.index(vm[u])][cod.index(vm[v])] == dom.dist[dom.index(u)][dom.index(v)]
        for u in dom.vertices
        for v in dom.vertices
    )
    assert isometric == out.at_least("isometric-embedding")
    if isometric:
        convex = is_convex(cod, set(vm.values()))
        assert convex == out.at_least("convex-embedding")
        assert (out.kind == "isometry") == (isometric and psi.is_vertex_bijective())


def is_chiasmatic(psi: PPMap) -> bool:
    """Whether transverse hyperplanes always map to transverse hyperplanes."""
    cod = psi.codomain
    for i, j in transverse_pairs(psi.domain):
        a, b = psi.hyperplane_map[i], psi.hyperplane_map[j]
        if a == b or relation(cod, a, b).kind != "transverse":
            return False
    return True


def find_violation(psi: PPMap) -> tuple[tuple[int, int], str] | None:
    """The convexity obstruction the factorization loop should fix next.

    Merged pairs come first, ordered by separation distance then by id (the
    closest collision is resolvable most directly); then pairs whose images
    became transverse.  Returns None exactly when classify(psi) is at least a
    convex embedding.
    """
    require_median(psi.domain)
    require_median(psi.codomain)
    dom = psi.domain
    k = len(hyperplanes(dom))

    merged = [
        (i, j)
        for i in range(k)
        for j in range(i + 1, k)
        if psi.hyperplane_map[i] == psi.hyperplane_map[j]
    ]
    if merged:
        best = min(
            merged,
            key=lambda p: (relation(dom, p[0], p[1]).separation_distance, p),
        )
        return best, "merged"

    bad = _transversalized(psi)
    if bad is not None:
        return bad, "transversalized"
    return None


def forced_factorization(through: PPMap, psi: PPMap, name: str = "",
                         scan_reverse: bool = False) -> PPMap:
    """The unique xi with xi ∘ through = psi, when it exists.

    `through` and `psi` share a domain X; the result maps M = codomain of
    `through` onward to Y.  Each hyperplane of M must arise from some
    hyperplane of X, which forces the class images; vertex images then
    propagate edge-by-edge from the seeded image of X, each step forced
    because a median codomain vertex has at most one edge per class.  Raises
    NotFactorizable when the propagation conflicts, with missing_neighbor set
    when the forced target vertex does not exist in Y.
    """
    if through.domain != psi.domain:
        raise DomainMismatch("maps must share their domain")
    M, Y = through.codomain, psi.codomain

    class_image: dict[int, int] = {}
    for j, c in through.hyperplane_map.items():
        want = psi.hyperplane_map[j]
        if class_image.setdefault(c, want) != want:
            raise NotFactorizable(
                f"classes mapping to the same class {c} have distinct images "
                f"{class_image[c]} and {want}"
            )
    if len(class_image) != len(hyperplanes(M)):
        raise NotFactorizable("some hyperplane of the middle graph is not hit")

    xi: dict[str, str] = {}
    for x in psi.domain.vertices:
        mv, yv = through.vertex_map[x], psi.vertex_map[x]
        if xi.setdefault(mv, yv) != yv:
            raise NotFactorizable(
                f"vertices with the same image {mv!r} map to both "
                f"{xi[mv]!r} and {yv!r}"
            )

    y_edges_by_class: dict[str, dict[int, str]] = {v: {} for v in Y.vertices}
    for u, w in Y.edges:
        c = edge_class(Y, u, w)
        if c in y_edges_by_class[u] or c in y_edges_by_class[w]:
            raise NotFactorizable(
                f"codomain vertex meets two edges of class {c}; target not median"
            )
        y_edges_by_class[u][c] = w
        y_edges_by_class[w][c] = u

    frontier = sorted(xi, reverse=scan_reverse)
    while frontier:
        nxt: list[str] = []
        for a in frontier:
            nbrs = M.neighbors(a)
            if scan_reverse:
                nbrs = tuple(reversed(nbrs))
            for b in nbrs:
                k = class_image[edge_class(M, a, b)]
                target = y_edges_by_class[xi[a]].get(k)
                if target is None:
                    exc = NotFactorizable(
                        f"no edge of class {k} at {xi[a]!r} to receive {b!r}"
                    )
                    exc.missing_neighbor = True
                    raise exc
                if b in xi:
                    if xi[b] != target:
                        raise NotFactorizable(
                            f"conflicting forced images {xi[b]!r} and {target!r} for {b!r}"
                        )
                else:
                    xi[b] = target
                    nxt.append(b)
        frontier = sorted(nxt, reverse=scan_reverse)

    if len(xi) != M.n:
        raise NotFactorizable("propagation did not reach every vertex")
    out = validate(M, Y, xi, name=name)
    for x in psi.domain.vertices:
        if out.vertex_map[through.vertex_map[x]] != psi.vertex_map[x]:
            raise NotFactorizable(f"factorization disagrees with psi at {x!r}")
    return out
