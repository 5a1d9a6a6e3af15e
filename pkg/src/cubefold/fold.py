"""Folds: quotients that merge hyperplanes in contact.

The first fold relative to a contact pair {A,B} identifies, for every vertex
p carried by both, the endpoint across A from p with the endpoint across B
from p.  The result is generally not median; the fold proper is its
cubulation.  Folding a whole collection of pairs at once uses the direct
parity-wall description: the merged wall of a connected group of classes
splits vertices by the parity of group-edge crossings from the basepoint.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cubulation import Cubulation, Wall, Wallspace, cubulate, walls_from_hyperplanes
from .errors import DomainMismatch, NotFactorizable, NotInContact
from .graph import Graph, build_graph
from .hyperplanes import (
    as_index,
    canonical_involution,
    class_label,
    edge_class,
    hyperplanes,
    relation,
)
from .median import require_median
from .morphism import PPMap, compose, forced_factorization, validate


@dataclass(frozen=True)
class FoldResult:
    source: Graph
    target: Graph
    zeta: PPMap
    merged_classes: tuple[frozenset[int], ...]


def normalize_pair_collection(g: Graph, pairs) -> tuple[tuple[int, int], ...]:
    """Canonicalize to sorted index pairs; degenerate pairs are dropped."""
    out = set()
    for pair in pairs:
        a, b = pair
        ia, ib = as_index(g, a), as_index(g, b)
        if ia != ib:
            out.add((min(ia, ib), max(ia, ib)))
    return tuple(sorted(out))


def _require_contact(g: Graph, ia: int, ib: int) -> None:
    r = relation(g, ia, ib)
    if r.kind == "separated":
        raise NotInContact(
            f"hyperplanes {class_label(ia)} and {class_label(ib)} are not in "
            f"contact: separation distance {r.separation_distance}"
        )
    if r.kind == "equal":
        raise NotInContact(f"hyperplane {class_label(ia)} given twice")


def quotient_by_vertex_pairs(g: Graph, vertex_pairs, name: str = "") -> tuple[Graph, dict[str, str]]:
    """Quotient of g identifying each given vertex pair; merged identifiers
    join the constituents with '|' in sorted order.  No medianness is assumed
    or produced; callers check what they need on the result."""
    parent = {v: v for v in g.vertices}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in vertex_pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    members: dict[str, list[str]] = {}
    for v in g.vertices:
        members.setdefault(find(v), []).append(v)
    qid = {root: "|".join(sorted(vs)) for root, vs in members.items()}
    vmap = {v: qid[find(v)] for v in g.vertices}

    edges = set()
    for u, w in g.edges:
        qu, qw = vmap[u], vmap[w]
        assert qu != qw, f"quotient collapses edge {u!r}-{w!r}"
        edges.add((qu, qw) if qu < qw else (qw, qu))
    z = build_graph(sorted(set(vmap.values())), sorted(edges), name=name)
    return z, vmap


def first_fold(g: Graph, a, b) -> tuple[Graph, PPMap]:
    """The quotient identifying the two sides across A and B over their
    common carrier, with the projection map."""
    require_median(g)
    ia, ib = as_index(g, a), as_index(g, b)
    if ib < ia:
        ia, ib = ib, ia
    _require_contact(g, ia, ib)
    inv_a = canonical_involution(g, ia)
    inv_b = canonical_involution(g, ib)
    hyps = hyperplanes(g)
    common = sorted(hyps[ia].carrier & hyps[ib].carrier)
    name = f"firstfold({g.name},{class_label(ia)},{class_label(ib)})" if g.name else ""
    z, vmap = quotient_by_vertex_pairs(g, [(inv_a[p], inv_b[p]) for p in common], name=name)
    pi = validate(g, z, vmap, name="π")
    return z, pi


def _merged_partition(zeta: PPMap) -> tuple[frozenset[int], ...]:
    by_image: dict[int, set[int]] = {}
    for j, c in zeta.hyperplane_map.items():
        by_image.setdefault(c, set()).add(j)
    return tuple(sorted((frozenset(s) for s in by_image.values()), key=min))


def _connected_groups(k: int, pairs) -> tuple[frozenset[int], ...]:
    parent = list(range(k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in pairs:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri
    groups: dict[int, set[int]] = {}
    for x in range(k):
        groups.setdefault(find(x), set()).add(x)
    return tuple(sorted((frozenset(s) for s in groups.values()), key=min))


def fold_pair(g: Graph, a, b) -> FoldResult:
    """Cubulation of the first fold; merges exactly {A,B}."""
    ia, ib = sorted((as_index(g, a), as_index(g, b)))
    z, pi = first_fold(g, ia, ib)
    cub = cubulate(walls_from_hyperplanes(z))
    eta = validate(z, cub.graph, cub.eta, name="η")
    zeta = compose(eta, pi, name=f"fold({class_label(ia)},{class_label(ib)})")
    merged = _merged_partition(zeta)
    want = _connected_groups(len(hyperplanes(g)), [(ia, ib)])
    assert merged == want, "fold merged an unexpected set of classes"
    assert len(hyperplanes(cub.graph)) == len(hyperplanes(g)) - 1
    return FoldResult(g, cub.graph, zeta, merged)


def parity_wall(g: Graph, group: frozenset[int], index: int) -> Wall:
    """Wall splitting vertices by the parity of crossings of the group's
    edges along any path from the basepoint (the least vertex)."""
    parity = [-1] * g.n
    parity[0] = 0
    stack = [0]
    vs = g.vertices
    while stack:
        i = stack.pop()
        for w in g.neighbors(vs[i]):
            j = g.index(w)
            flip = 1 if edge_class(g, vs[i], w) in group else 0
            if parity[j] == -1:
                parity[j] = parity[i] ^ flip
                stack.append(j)
            else:
                assert parity[j] == parity[i] ^ flip, "crossing parity ill-defined"
    plus = frozenset(vs[i] for i in range(g.n) if parity[i] == 0)
    minus = frozenset(vs[i] for i in range(g.n) if parity[i] == 1)
    return Wall(index, plus, minus)


def fold_collection(g: Graph, pairs) -> FoldResult:
    """Fold every pair of the collection at once via parity walls; merges
    exactly the connected groups of the collection."""
    require_median(g)
    p = normalize_pair_collection(g, pairs)
    for i, j in p:
        _require_contact(g, i, j)
    k = len(hyperplanes(g))
    groups = _connected_groups(k, p)
    walls = tuple(parity_wall(g, grp, idx) for idx, grp in enumerate(groups))
    cub = cubulate(Wallspace(g, walls))
    label = ",".join(f"{class_label(i)}:{class_label(j)}" for i, j in p)
    zeta = validate(g, cub.graph, cub.eta, name=f"fold({label})")
    merged = _merged_partition(zeta)
    assert merged == groups, "collection fold merged an unexpected set of classes"
    assert len(hyperplanes(cub.graph)) == len(groups)
    return FoldResult(g, cub.graph, zeta, merged)


def factor_through_fold(fr: FoldResult, psi: PPMap, name: str = "") -> PPMap:
    """The unique xi with psi = xi ∘ zeta, for psi constant on merged classes."""
    if psi.domain != fr.source:
        raise DomainMismatch("psi must start from the fold's source graph")
    for grp in fr.merged_classes:
        images = {psi.hyperplane_map[j] for j in grp}
        if len(images) != 1:
            names = ",".join(class_label(j) for j in sorted(grp))
            raise NotFactorizable(
                f"merged classes {{{names}}} have distinct images under psi"
            )
    return forced_factorization(fr.zeta, psi, name=name)
