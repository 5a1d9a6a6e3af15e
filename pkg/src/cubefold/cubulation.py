"""Wallspaces, consistent orientations, and cubulated median graphs.

A wall splits the carrier's vertex set in two; an orientation picks one side
per wall.  An orientation is consistent when every two chosen sides intersect
(for the spot construction some pairs are exempted from this requirement).
The cubulation has one vertex per reachable consistent orientation and an
edge whenever two orientations differ on a single wall.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import HalfspacesUnavailable, UnknownVertex
from .graph import Graph, build_graph
from .hyperplanes import hyperplanes
from .median import require_median


@dataclass(frozen=True)
class Wall:
    index: int
    side_plus: frozenset[str]
    side_minus: frozenset[str]


@dataclass(frozen=True)
class Wallspace:
    carrier: Graph
    walls: tuple[Wall, ...]

    def __post_init__(self):
        everything = set(self.carrier.vertices)
        for w in self.walls:
            if not w.side_plus or not w.side_minus:
                raise ValueError(f"wall {w.index} has an empty side")
            if w.side_plus | w.side_minus != everything or w.side_plus & w.side_minus:
                raise ValueError(f"wall {w.index} does not partition the vertices")


class Orientation(NamedTuple):
    bits: tuple[int, ...]

    @property
    def key(self) -> str:
        return "".join(map(str, self.bits))


class Cubulation(NamedTuple):
    graph: Graph
    eta: dict[str, str]


def walls_from_hyperplanes(g: Graph) -> Wallspace:
    """One wall per hyperplane, sides = the halfspaces."""
    walls = []
    for h in hyperplanes(g):
        if h.halfspace_plus is None:
            raise HalfspacesUnavailable(
                f"hyperplane {h.index} does not delimit two halfspaces; cannot build walls"
            )
        walls.append(Wall(h.index, h.halfspace_plus, h.halfspace_minus))
    return Wallspace(g, tuple(walls))


def _wall_masks(w: Wallspace) -> tuple[list[int], list[int]]:
    g = w.carrier
    plus, minus = [], []
    for wall in w.walls:
        plus.append(g.mask_of(wall.side_plus))
        minus.append(g.mask_of(wall.side_minus))
    return plus, minus


def principal_orientation(w: Wallspace, x: str) -> Orientation:
    """Each wall oriented toward the side containing x."""
    if x not in w.carrier._index:
        raise UnknownVertex(f"{x!r} is not a vertex of the wallspace carrier")
    return Orientation(tuple(1 if x in wall.side_plus else 0 for wall in w.walls))


def is_consistent(w: Wallspace, o: Orientation,
                  exempt: frozenset[frozenset[int]] = frozenset()) -> bool:
    plus, minus = _wall_masks(w)
    k = len(w.walls)
    sides = [plus[i] if o.bits[i] else minus[i] for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            if not sides[i] & sides[j] and frozenset((i, j)) not in exempt:
                return False
    return True


def flip_closure(plus: list[int], minus: list[int], seeds: list[int],
                 exempt: frozenset[frozenset[int]] = frozenset()) -> list[int]:
    """All orientations reachable from the seeds by consistency-preserving
    single-wall flips, as bitmask ints (bit i set = side_plus of wall i).
    Exempted wall pairs are never required to intersect."""
    k = len(plus)
    exempt_at: list[frozenset[int]] = [
        frozenset(j for pair in exempt if i in pair for j in pair if j != i)
        for i in range(k)
    ]

    def side(o: int, i: int) -> int:
        return plus[i] if o >> i & 1 else minus[i]

    def flip_ok(o: int, i: int) -> bool:
        new_side = minus[i] if o >> i & 1 else plus[i]
        skip = exempt_at[i]
        for j in range(k):
            if j == i or j in skip:
                continue
            if not new_side & side(o, j):
                return False
        return True

    seen = set(seeds)
    frontier = sorted(seen)
    while frontier:
        nxt = []
        for o in frontier:
            for i in range(k):
                o2 = o ^ (1 << i)
                if o2 not in seen and flip_ok(o, i):
                    seen.add(o2)
                    nxt.append(o2)
        frontier = sorted(nxt)
    return sorted(seen)


def _orientation_id(o: int, k: int) -> str:
    return "".join("1" if o >> i & 1 else "0" for i in range(k))


def cubulate(w: Wallspace) -> Cubulation:
    """The median graph of consistent orientations, with the map sending each
    carrier vertex to its principal orientation."""
    g = w.carrier
    k = len(w.walls)
    plus, minus = _wall_masks(w)

    principal: dict[str, int] = {}
    for x in g.vertices:
        o = 0
        xm = 1 << g.index(x)
        for i in range(k):
            if plus[i] & xm:
                o |= 1 << i
        principal[x] = o

    orients = flip_closure(plus, minus, sorted(set(principal.values())))
    ids = {o: _orientation_id(o, k) for o in orients}
    oset = set(orients)
    edges = [
        (ids[o], ids[o ^ (1 << i)])
        for o in orients
        for i in range(k)
        if o ^ (1 << i) in oset and o < o ^ (1 << i)
    ]
    name = f"cubulation({g.name})" if g.name else "cubulation"
    m = build_graph(list(ids.values()), edges, name=name)
    require_median(m)
    eta = {x: ids[principal[x]] for x in g.vertices}
    return Cubulation(m, eta)


def universal_map_through_cubulation(psi, cub: Cubulation, name: str = "",
                                     scan_reverse: bool = False):
    """The unique parallel-preserving xi with xi ∘ eta = psi."""
    from .morphism import forced_factorization, validate

    through = validate(psi.domain, cub.graph, cub.eta, name="eta")
    return forced_factorization(through, psi, name=name, scan_reverse=scan_reverse)
