"""Factor any parallel-preserving map into folds and swells plus an embedding.

The terminal map is an isometric embedding in median mode, a convex embedding
in convex mode; its image is the corresponding hull of the original image.
The engine repeatedly fixes the violation reported by find_violation: a merged
pair is folded (swelling first when the pair is not yet in contact), a tangent
pair with transverse images is swelled.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import ImagesDiffer
from .fold import factor_through_fold, fold_pair
from .graph import Graph
from .hyperplanes import as_index, hyperplanes, pair_separators, relation
from .median import convex_hull, median_hull, require_median
from .morphism import PPMap, classify, compose, find_violation, identity_map
from .swell import extend_through_swell, swell_pair

MODES = ("median", "convex")


@dataclass(frozen=True)
class Move:
    kind: str  # "fold" | "swell"
    pairs: tuple[tuple[int, int], ...]  # class indices in `before`
    before: Graph
    after: Graph
    step_map: PPMap
    induced: object = None  # InducedAction in equivariant runs


@dataclass(frozen=True)
class FactorizationTrace:
    moves: tuple[Move, ...]
    eta: PPMap
    iota: PPMap
    mode: str


def fold_unique_pair(psi: PPMap, a, b) -> tuple[list[Move], PPMap]:
    """Make the two hyperplanes (which share a psi-image) coincide.

    In contact they are folded outright.  Otherwise, if any two hyperplanes of
    the chain A, separators, B other than {A,B} itself share an image, the
    closest such pair is resolved first; failing that, A is swelled with the
    lowest-indexed separator tangent to it.  Either way the separation
    distance strictly decreases and the loop repeats on the tracked pair.
    """
    dom = psi.domain
    ia, ib = as_index(dom, a), as_index(dom, b)
    if ia == ib:
        raise ValueError("need two distinct hyperplanes")
    if psi.hyperplane_map[ia] != psi.hyperplane_map[ib]:
        raise ImagesDiffer(
            f"hyperplanes {ia} and {ib} have distinct images; nothing forces a fold"
        )

    moves: list[Move] = []
    cur = psi
    while True:
        g = cur.domain
        ia, ib = min(ia, ib), max(ia, ib)
        r = relation(g, ia, ib)
        if r.kind != "separated":
            fr = fold_pair(g, ia, ib)
            nxt = factor_through_fold(fr, cur)
            moves.append(Move("fold", ((ia, ib),), g, fr.target, fr.zeta))
            return moves, nxt

        seps = pair_separators(g, ia, ib)
        chain = sorted({ia, ib, *seps})
        colliding = [
            (i, j)
            for i, j in combinations(chain, 2)
            if (i, j) != (ia, ib) and cur.hyperplane_map[i] == cur.hyperplane_map[j]
        ]
        if colliding:
            i, j = min(
                colliding,
                key=lambda p: (relation(g, p[0], p[1]).separation_distance, p),
            )
            sub, cur = fold_unique_pair(cur, i, j)
            for m in sub:
                ia = m.step_map.hyperplane_map[ia]
                ib = m.step_map.hyperplane_map[ib]
            moves.extend(sub)
            if ia == ib:
                return moves, cur
        else:
            tangents = [h for h in seps if relation(g, ia, h).kind == "tangent"]
            assert tangents, "a separated pair always has a separator tangent to it"
            h1 = min(tangents)
            sr = swell_pair(g, ia, h1)
            cur = extend_through_swell(sr, cur)
            moves.append(
                Move("swell", ((min(ia, h1), max(ia, h1)),), g, sr.target, sr.embedding)
            )
            ia = sr.embedding.hyperplane_map[ia]
            ib = sr.embedding.hyperplane_map[ib]
        nr = relation(cur.domain, ia, ib)
        assert nr.separation_distance < r.separation_distance, \
            "separation distance failed to decrease"


def factorize(psi: PPMap, mode: str = "median") -> FactorizationTrace:
    """Fold and swell until the residual map meets the mode's bar:
    isometric embedding (median) or convex embedding (convex)."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, not {mode!r}")
    require_median(psi.domain)
    require_median(psi.codomain)

    k0 = len(hyperplanes(psi.domain))
    limit = (k0 + 2) ** 3 + 10
    moves: list[Move] = []
    cur = psi
    while True:
        violation = find_violation(cur)
        if violation is None:
            break
        (i, j), kind = violation
        if kind == "merged":
            sub, cur = fold_unique_pair(cur, i, j)
            moves.extend(sub)
        else:
            if mode == "median":
                break  # no merged pairs left, so cur is already isometric
            assert relation(cur.domain, i, j).kind == "tangent", \
                "transversality violation without a tangent witness"
            before = cur.domain
            sr = swell_pair(before, i, j)
            cur = extend_through_swell(sr, cur)
            moves.append(Move("swell", ((i, j),), before, sr.target, sr.embedding))
        assert len(moves) <= limit, "factorization failed to terminate"

    eta = identity_map(psi.domain)
    for m in moves:
        eta = compose(m.step_map, eta)
    eta = PPMap(eta.domain, eta.codomain, eta.vertex_map, eta.hyperplane_map, name="η")

    bar = "isometric-embedding" if mode == "median" else "convex-embedding"
    assert classify(cur).at_least(bar)
    assert compose(cur, eta).vertex_map == psi.vertex_map
    if __debug__ and psi.codomain.n <= 40:
        hull = median_hull if mode == "median" else convex_hull
        image = {psi.vertex_map[v] for v in psi.domain.vertices}
        assert cur.image_vertices() == hull(psi.codomain, image)
    iota = PPMap(cur.domain, cur.codomain, cur.vertex_map, cur.hyperplane_map, name="ι")
    return FactorizationTrace(tuple(moves), eta, iota, mode)
