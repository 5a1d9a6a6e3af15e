"""Parallelism classes of edges (hyperplanes) and their geometry.

Two edges are elementarily parallel when they are opposite sides of some
4-cycle; a hyperplane is a class of the transitive closure.  Removing a class
from a well-behaved graph leaves exactly two components, its halfspaces.  On
arbitrary graphs the split can fail, in which case the halfspace fields are
None and operations that need them raise HalfspacesUnavailable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import HalfspacesUnavailable, NotWellDefined
from .graph import Edge, Graph


@dataclass(frozen=True)
class Hyperplane:
    index: int
    edges: tuple[Edge, ...]
    carrier: frozenset[str]
    halfspace_plus: frozenset[str] | None
    halfspace_minus: frozenset[str] | None

    def __repr__(self) -> str:
        return f"<Hyperplane {self.index}: {len(self.edges)} edges>"


@dataclass(frozen=True)
class HyperplaneRelation:
    kind: str  # "equal" | "transverse" | "tangent" | "separated"
    separation_distance: int = 0


class _HypAux:
    """Per-graph mask tables backing the public Hyperplane records."""

    __slots__ = ("edge_class", "carrier_masks", "plus_masks", "minus_masks", "class_edges")

    def __init__(self):
        self.edge_class: list[int] = []
        self.carrier_masks: list[int] = []
        self.plus_masks: list[int | None] = []
        self.minus_masks: list[int | None] = []
        self.class_edges: list[list[int]] = []


def _build(g: Graph) -> tuple[tuple[Hyperplane, ...], _HypAux]:
    edges = g.edges
    eidx = {e: i for i, e in enumerate(edges)}
    parent = list(range(len(edges)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    adj = g.adj_masks
    vs = g.vertices
    for i in range(g.n):
        for k in range(i + 1, g.n):
            common = adj[i] & adj[k]
            cands = []
            m = common
            while m:
                low = m & -m
                cands.append(low.bit_length() - 1)
                m ^= low
            for a in range(len(cands)):
                for b in range(a + 1, len(cands)):
                    j, l = cands[a], cands[b]
                    e_ij = eidx[(vs[i], vs[j]) if vs[i] < vs[j] else (vs[j], vs[i])]
                    e_kl = eidx[(vs[k], vs[l]) if vs[k] < vs[l] else (vs[l], vs[k])]
                    e_jk = eidx[(vs[j], vs[k]) if vs[j] < vs[k] else (vs[k], vs[j])]
                    e_li = eidx[(vs[l], vs[i]) if vs[l] < vs[i] else (vs[i], vs[l])]
                    union(e_ij, e_kl)
                    union(e_jk, e_li)

    groups: dict[int, list[int]] = {}
    for i in range(len(edges)):
        groups.setdefault(find(i), []).append(i)
    ordered = sorted(groups.values(), key=lambda idxs: edges[min(idxs)])

    aux = _HypAux()
    aux.edge_class = [0] * len(edges)
    hyps = []
    for ci, idxs in enumerate(ordered):
        idxs.sort()
        class_edges = tuple(edges[i] for i in idxs)
        for i in idxs:
            aux.edge_class[i] = ci
        cmask = 0
        for u, w in class_edges:
            cmask |= 1 << g.index(u)
            cmask |= 1 << g.index(w)
        comps = g.components_masks(frozenset(class_edges))
        if len(comps) == 2:
            plus = comps[0] if comps[0] & 1 else comps[1]
            minus = comps[1] if plus is comps[0] else comps[0]
            pm: int | None = plus
            mm: int | None = minus
        else:
            pm = mm = None
        aux.carrier_masks.append(cmask)
        aux.plus_masks.append(pm)
        aux.minus_masks.append(mm)
        aux.class_edges.append(idxs)
        hyps.append(
            Hyperplane(
                index=ci,
                edges=class_edges,
                carrier=g.ids_of(cmask),
                halfspace_plus=g.ids_of(pm) if pm is not None else None,
                halfspace_minus=g.ids_of(mm) if mm is not None else None,
            )
        )
    return tuple(hyps), aux


def hyperplanes(g: Graph) -> tuple[Hyperplane, ...]:
    """All parallelism classes of g, in deterministic order (by least edge)."""
    if "hyps" not in g._cache:
        g._cache["hyps"] = _build(g)
    return g._cache["hyps"][0]


def _aux(g: Graph) -> _HypAux:
    hyperplanes(g)
    return g._cache["hyps"][1]


def as_index(g: Graph, h) -> int:
    """Accept a Hyperplane, a bare class index, or a label like "A" or "H3"."""
    if isinstance(h, Hyperplane):
        idx = h.index
    elif isinstance(h, str):
        idx = parse_class_label(h)
    else:
        idx = int(h)
    if not 0 <= idx < len(hyperplanes(g)):
        raise IndexError(
            f"hyperplane index {idx} out of range for graph with "
            f"{len(hyperplanes(g))} classes"
        )
    return idx


def edge_class(g: Graph, u: str, v: str) -> int:
    """Class index of the edge between u and v."""
    g.index(u)
    g.index(v)
    if "epos" not in g._cache:
        g._cache["epos"] = {e: i for i, e in enumerate(g.edges)}
    e = (u, v) if u < v else (v, u)
    try:
        pos = g._cache["epos"][e]
    except KeyError:
        raise ValueError(f"no edge {u!r}-{v!r}") from None
    return _aux(g).edge_class[pos]


def hyperplane_of(g: Graph, u: str, v: str) -> Hyperplane:
    """The hyperplane through the edge between u and v."""
    return hyperplanes(g)[edge_class(g, u, v)]


def class_label(i: int) -> str:
    """A, B, …, Z for the first 26 classes, then H26, H27, …"""
    return chr(65 + i) if 0 <= i < 26 else f"H{i}"


def parse_class_label(text: str) -> int:
    t = text.strip()
    if len(t) == 1 and "A" <= t <= "Z":
        return ord(t) - 65
    if t[:1] in ("H", "h") and t[1:].isdigit():
        return int(t[1:])
    if t.isdigit():
        return int(t)
    raise ValueError(f"not a hyperplane label: {text!r}")


def canonical_involution(g: Graph, h) -> dict[str, str]:
    """Swap the endpoints of every class edge; every carrier vertex must meet
    exactly one edge of the class, otherwise NotWellDefined."""
    idx = as_index(g, h)
    hp = hyperplanes(g)[idx]
    invol: dict[str, str] = {}
    for u, w in hp.edges:
        if u in invol or w in invol:
            bad = u if u in invol else w
            raise NotWellDefined(
                f"vertex {bad!r} meets more than one edge of hyperplane {idx}"
            )
        invol[u] = w
        invol[w] = u
    return invol


def fibers(g: Graph, h) -> tuple[frozenset[str], frozenset[str]]:
    """The two sides of the carrier: components of the carrier subgraph after
    the class edges are removed.  They are swapped by the canonical involution."""
    idx = as_index(g, h)
    canonical_involution(g, idx)  # well-definedness gate
    aux = _aux(g)
    hp = hyperplanes(g)[idx]
    cmask = aux.carrier_masks[idx]
    adj = []
    vs = g.vertices
    for i in range(g.n):
        m = g.adj_masks[i] & cmask
        for u, w in hp.edges:
            iu, iw = g.index(u), g.index(w)
            if i == iu:
                m &= ~(1 << iw)
            elif i == iw:
                m &= ~(1 << iu)
        adj.append(m)
    seen = 0
    comps = []
    for start in range(g.n):
        if not (cmask >> start & 1) or seen >> start & 1:
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
    if len(comps) != 2:
        raise NotWellDefined(
            f"carrier of hyperplane {idx} does not split into two fibers"
        )
    return g.ids_of(comps[0]), g.ids_of(comps[1])


def _transverse_matrix(g: Graph) -> list[set[int]]:
    """transverse[i] = set of class indices transverse to class i (cached)."""
    if "transverse" in g._cache:
        return g._cache["transverse"]
    hyps = hyperplanes(g)
    aux = _aux(g)
    k = len(hyps)
    trans: list[set[int]] = [set() for _ in range(k)]
    # two classes are transverse iff some 4-cycle pairs them on opposite sides,
    # i.e. intersecting edges e=[p,x], f=[p,y] with a common neighbor q != p.
    adj = g.adj_masks
    for i in range(g.n):
        nb = []
        m = adj[i]
        while m:
            low = m & -m
            nb.append(low.bit_length() - 1)
            m ^= low
        for a in range(len(nb)):
            for b in range(a + 1, len(nb)):
                x, y = nb[a], nb[b]
                if (adj[x] & adj[y]) & ~(1 << i):
                    cx = edge_class(g, g.vertices[i], g.vertices[x])
                    cy = edge_class(g, g.vertices[i], g.vertices[y])
                    if cx != cy:
                        trans[cx].add(cy)
                        trans[cy].add(cx)
    g._cache["transverse"] = trans
    return trans


def relation(g: Graph, a, b) -> HyperplaneRelation:
    """Classify the relative position of two hyperplanes.

    Transversality (edges spanning a 4-cycle) is checked before tangency, so a
    pair admitting both kinds of intersection counts as transverse.  For
    separated pairs the separation distance counts the hyperplanes having the
    two carriers in opposite halfspaces.
    """
    ia, ib = as_index(g, a), as_index(g, b)
    if ia == ib:
        return HyperplaneRelation("equal")
    if ib in _transverse_matrix(g)[ia]:
        return HyperplaneRelation("transverse")
    aux = _aux(g)
    if aux.carrier_masks[ia] & aux.carrier_masks[ib]:
        return HyperplaneRelation("tangent")
    return HyperplaneRelation("separated", separation_distance=_separation(g, ia, ib))


def pair_separators(g: Graph, a, b) -> tuple[int, ...]:
    """Indices of the hyperplanes having the carriers of a and b in opposite
    halfspaces."""
    ia, ib = as_index(g, a), as_index(g, b)
    aux = _aux(g)
    ca, cb = aux.carrier_masks[ia], aux.carrier_masks[ib]
    out = []
    for i in range(len(hyperplanes(g))):
        pm, mm = aux.plus_masks[i], aux.minus_masks[i]
        if pm is None:
            continue
        if (ca & pm == ca and cb & mm == cb) or (ca & mm == ca and cb & pm == cb):
            out.append(i)
    return tuple(out)


def _separation(g: Graph, ia: int, ib: int) -> int:
    return len(pair_separators(g, ia, ib))


def separating_hyperplanes(g: Graph, u: str, v: str) -> tuple[Hyperplane, ...]:
    """Hyperplanes with u and v in opposite halfspaces."""
    iu, iv = g.index(u), g.index(v)
    hyps = hyperplanes(g)
    aux = _aux(g)
    out = []
    for hp in hyps:
        pm = aux.plus_masks[hp.index]
        if pm is None:
            raise HalfspacesUnavailable(
                f"hyperplane {hp.index} does not delimit two halfspaces"
            )
        if (pm >> iu & 1) != (pm >> iv & 1):
            out.append(hp)
    return tuple(out)


def in_contact(g: Graph, a, b) -> bool:
    ia, ib = as_index(g, a), as_index(g, b)
    if ia == ib:
        return False
    aux = _aux(g)
    return bool(aux.carrier_masks[ia] & aux.carrier_masks[ib])


def contact_pairs(g: Graph) -> tuple[tuple[int, int], ...]:
    """All unordered pairs of distinct hyperplanes whose carriers meet."""
    aux = _aux(g)
    k = len(hyperplanes(g))
    out = []
    for i in range(k):
        for j in range(i + 1, k):
            if aux.carrier_masks[i] & aux.carrier_masks[j]:
                out.append((i, j))
    return tuple(out)


def tangent_pairs(g: Graph) -> tuple[tuple[int, int], ...]:
    trans = _transverse_matrix(g)
    return tuple((i, j) for i, j in contact_pairs(g) if j not in trans[i])


def transverse_pairs(g: Graph) -> tuple[tuple[int, int], ...]:
    trans = _transverse_matrix(g)
    k = len(hyperplanes(g))
    return tuple((i, j) for i in range(k) for j in range(i + 1, k) if j in trans[i])
