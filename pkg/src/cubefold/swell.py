"""Swellings: square gluings that make tangent hyperplanes transverse.

Swelling a tangent pair {A,B} glues a prism over the common carrier: each
commonly-carried vertex p gains a fourth corner γ(p) completing the square
p, α(p), β(p), and the new corners of adjacent p's are joined.  Swelling a
whole collection at once uses spots: orientations of the hyperplane walls
whose consistency requirement is waived exactly on the collection's pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cubulation import flip_closure, walls_from_hyperplanes
from .errors import DomainMismatch, MissingFourthCorner, NotFactorizable, NotTangent
from .graph import Graph, build_graph
from .hyperplanes import (
    as_index,
    canonical_involution,
    class_label,
    hyperplanes,
    relation,
)
from .median import require_median
from .morphism import PPMap, forced_factorization, validate
from .fold import normalize_pair_collection


@dataclass(frozen=True)
class SwellResult:
    source: Graph
    target: Graph
    embedding: PPMap
    new_transversal_pairs: tuple[tuple[int, int], ...]


def _require_swellable(g: Graph, ia: int, ib: int, strict: bool) -> str:
    r = relation(g, ia, ib)
    if r.kind == "separated":
        raise NotTangent(
            f"hyperplanes {class_label(ia)} and {class_label(ib)} are not "
            f"tangent: separation distance {r.separation_distance}"
        )
    if strict and r.kind != "tangent":
        raise NotTangent(
            f"hyperplanes {class_label(ia)} and {class_label(ib)} are "
            f"{r.kind}, not tangent"
        )
    return r.kind


def swell_pair(g: Graph, a, b) -> SwellResult:
    """Glue the prism over the common carrier of a tangent pair."""
    require_median(g)
    ia, ib = sorted((as_index(g, a), as_index(g, b)))
    _require_swellable(g, ia, ib, strict=True)
    inv_a = canonical_involution(g, ia)
    inv_b = canonical_involution(g, ib)
    hyps = hyperplanes(g)
    common = sorted(hyps[ia].carrier & hyps[ib].carrier)
    la, lb = class_label(ia), class_label(ib)
    taken = set(g.vertices)
    gamma = {}
    for p in common:
        fresh = base = f"γ({p};{la},{lb})"
        k = 2
        while fresh in taken:  # an earlier swelling may have used this id
            fresh = f"{base}#{k}"
            k += 1
        taken.add(fresh)
        gamma[p] = fresh

    verts = list(g.vertices) + [gamma[p] for p in common]
    edges = list(g.edges)
    for p in common:
        edges.append((gamma[p], inv_a[p]))
        edges.append((gamma[p], inv_b[p]))
        for q in common:
            if q > p and g.has_edge(p, q):
                edges.append((gamma[p], gamma[q]))
    name = f"swell({g.name},{la},{lb})" if g.name else ""
    z = build_graph(verts, edges, name=name)
    require_median(z)
    embedding = validate(g, z, {v: v for v in g.vertices}, name=f"swell({la},{lb})")
    return _checked_result(g, z, embedding, ((ia, ib),))


def _checked_result(g: Graph, z: Graph, embedding: PPMap,
                    pairs: tuple[tuple[int, int], ...]) -> SwellResult:
    assert len(hyperplanes(z)) == len(hyperplanes(g))
    for ia, ib in pairs:
        got = relation(z, embedding.hyperplane_map[ia], embedding.hyperplane_map[ib])
        assert got.kind == "transverse", "swelled pair failed to become transverse"
    return SwellResult(g, z, embedding, pairs)


def swell_collection(g: Graph, pairs) -> SwellResult:
    """Swell every tangent pair of the collection at once via spots.

    Transverse pairs are allowed and change nothing; separated pairs are
    rejected.  The target's vertices are the orientations of the hyperplane
    walls that are pairwise consistent except on the collection.
    """
    require_median(g)
    p = normalize_pair_collection(g, pairs)
    kept = tuple(
        (i, j) for i, j in p if _require_swellable(g, i, j, strict=False) == "tangent"
    )
    exempt = frozenset(frozenset(q) for q in p)

    ws = walls_from_hyperplanes(g)
    k = len(ws.walls)
    plus = [g.mask_of(w.side_plus) for w in ws.walls]
    minus = [g.mask_of(w.side_minus) for w in ws.walls]
    principal: dict[str, int] = {}
    for x in g.vertices:
        xm = 1 << g.index(x)
        principal[x] = sum(1 << i for i in range(k) if plus[i] & xm)

    spots = flip_closure(plus, minus, sorted(set(principal.values())), exempt)
    ids = {o: "".join("1" if o >> i & 1 else "0" for i in range(k)) for o in spots}
    sset = set(spots)
    edges = [
        (ids[o], ids[o ^ (1 << i)])
        for o in spots
        for i in range(k)
        if o ^ (1 << i) in sset and o < o ^ (1 << i)
    ]
    label = ",".join(f"{class_label(i)}:{class_label(j)}" for i, j in p)
    name = f"swell({g.name},{label})" if g.name else ""
    z = build_graph(list(ids.values()), edges, name=name)
    require_median(z)
    embedding = validate(
        g, z, {x: ids[principal[x]] for x in g.vertices}, name=f"swell({label})"
    )
    return _checked_result(g, z, embedding, kept)


def extend_through_swell(sr: SwellResult, psi: PPMap, name: str = "") -> PPMap:
    """The unique parallel-preserving extension of psi to the swelled graph;
    requires the images of each swelled pair to be transverse."""
    if psi.domain != sr.source:
        raise DomainMismatch("psi must start from the swelling's source graph")
    cod = psi.codomain
    for i, j in sr.new_transversal_pairs:
        a, b = psi.hyperplane_map[i], psi.hyperplane_map[j]
        if a == b or relation(cod, a, b).kind != "transverse":
            raise NotFactorizable(
                f"images of swelled pair {class_label(i)},{class_label(j)} "
                f"are not transverse in the codomain"
            )
    try:
        return forced_factorization(sr.embedding, psi, name=name)
    except NotFactorizable as exc:
        if exc.missing_neighbor:
            raise MissingFourthCorner(str(exc)) from exc
        raise
