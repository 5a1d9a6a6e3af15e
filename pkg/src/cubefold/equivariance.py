"""Finite symmetry groups on graphs and equivariant folds, swells, and
factorization.

A group acts by vertex permutations; hyperplanes then carry an induced
permutation action.  Folding or swelling a whole orbit of pairs at once keeps
the construction equivariant, and the universal property produces the induced
action on the result: each generator composed with the step map factors back
through it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import GroupTooLarge, NotAutomorphism, NotEquivariant
from .factorize import MODES, FactorizationTrace, Move
from .fold import FoldResult, factor_through_fold, fold_collection
from .graph import Graph
from .hyperplanes import as_index, hyperplanes, pair_separators, relation
from .median import convex_hull, median_hull, require_median
from .morphism import PPMap, classify, compose, find_violation, identity_map, validate
from .swell import SwellResult, extend_through_swell, swell_collection

GROUP_CAP = 10_000


@dataclass(frozen=True, eq=False)
class SymmetryGroup:
    carrier: Graph
    generators: tuple[dict[str, str], ...]

    def elements(self) -> tuple[dict[str, str], ...]:
        """Closure of the generators under composition (cached)."""
        key = ("group_elements", tuple(tuple(sorted(g.items())) for g in self.generators))
        if key not in self.carrier._cache:
            self.carrier._cache[key] = _close(self.carrier, self.generators)
        return self.carrier._cache[key]

    def order(self) -> int:
        return len(self.elements())


@dataclass(frozen=True, eq=False)
class InducedAction:
    target: Graph
    generator_images: tuple[dict[str, str], ...]


def _close(g: Graph, generators) -> tuple[dict[str, str], ...]:
    ident = {v: v for v in g.vertices}
    seen = {tuple(sorted(ident.items())): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for el in frontier:
            for gen in generators:
                comp = {v: gen[el[v]] for v in g.vertices}
                key = tuple(sorted(comp.items()))
                if key not in seen:
                    if len(seen) >= GROUP_CAP:
                        raise GroupTooLarge(f"group closure exceeds {GROUP_CAP} elements")
                    seen[key] = comp
                    nxt.append(comp)
        frontier = nxt
    return tuple(seen.values())


def verify_group(g: Graph, generators) -> SymmetryGroup:
    """Check each generator is an automorphism, then enumerate the closure."""
    gens = []
    for k, gen in enumerate(generators):
        if set(gen) != set(g.vertices) or set(gen.values()) != set(g.vertices):
            raise NotAutomorphism(f"generator {k} is not a vertex permutation")
        for u, w in g.edges:
            if not g.has_edge(gen[u], gen[w]):
                raise NotAutomorphism(
                    f"generator {k} sends edge {u!r}-{w!r} to non-edge "
                    f"{gen[u]!r}-{gen[w]!r}"
                )
        gens.append(dict(gen))
    group = SymmetryGroup(g, tuple(gens))
    group.elements()
    return group


def trivial_group(g: Graph) -> SymmetryGroup:
    return SymmetryGroup(g, ())


def generator_maps(group: SymmetryGroup) -> tuple[PPMap, ...]:
    """The generators as parallel-preserving self-maps of the carrier."""
    return tuple(
        validate(group.carrier, group.carrier, gen, name=f"g{k}")
        for k, gen in enumerate(group.generators)
    )


def orbit_of_pairs(group: SymmetryGroup, seeds) -> tuple[tuple[int, int], ...]:
    """Closure of the seed hyperplane pairs under the induced class action."""
    g = group.carrier
    perms = [m.hyperplane_map for m in generator_maps(group)]
    out = set()
    frontier = []
    for a, b in seeds:
        ia, ib = as_index(g, a), as_index(g, b)
        p = (min(ia, ib), max(ia, ib))
        if p not in out:
            out.add(p)
            frontier.append(p)
    while frontier:
        nxt = []
        for i, j in frontier:
            for perm in perms:
                q = (min(perm[i], perm[j]), max(perm[i], perm[j]))
                if q not in out:
                    out.add(q)
                    nxt.append(q)
        frontier = nxt
    return tuple(sorted(out))


def _induced_through_fold(fr: FoldResult, group: SymmetryGroup) -> InducedAction:
    images = []
    for alpha in generator_maps(group):
        beta = factor_through_fold(fr, compose(fr.zeta, alpha))
        assert beta.is_vertex_bijective()
        images.append(dict(beta.vertex_map))
    act = InducedAction(fr.target, tuple(images))
    _check_action(act, group, fr.zeta)
    return act


def _induced_through_swell(sr: SwellResult, group: SymmetryGroup) -> InducedAction:
    images = []
    for alpha in generator_maps(group):
        beta = extend_through_swell(sr, compose(sr.embedding, alpha))
        assert beta.is_vertex_bijective()
        images.append(dict(beta.vertex_map))
    act = InducedAction(sr.target, tuple(images))
    _check_action(act, group, sr.embedding)
    return act


def _check_action(act: InducedAction, group: SymmetryGroup, step: PPMap) -> None:
    verify_group(act.target, act.generator_images)
    for gen, img in zip(group.generators, act.generator_images):
        for v in step.domain.vertices:
            assert img[step.vertex_map[v]] == step.vertex_map[gen[v]], \
                "equivariance square does not commute"


def equivariant_fold(g: Graph, group: SymmetryGroup, a, b) -> tuple[FoldResult, InducedAction]:
    """Fold the whole orbit of {a,b}; the group reappears on the target."""
    if group.carrier != g:
        raise NotEquivariant("group does not act on this graph")
    orbit = orbit_of_pairs(group, [(a, b)])
    fr = fold_collection(g, orbit)
    return fr, _induced_through_fold(fr, group)


def equivariant_swell(g: Graph, group: SymmetryGroup, a, b) -> tuple[SwellResult, InducedAction]:
    """Swell the whole orbit of {a,b}; the group reappears on the target."""
    if group.carrier != g:
        raise NotEquivariant("group does not act on this graph")
    orbit = orbit_of_pairs(group, [(a, b)])
    sr = swell_collection(g, orbit)
    return sr, _induced_through_swell(sr, group)


def _equivariance_failure(psi: PPMap, ggens, hgens) -> str | None:
    if len(ggens) != len(hgens):
        return f"{len(ggens)} domain generators vs {len(hgens)} codomain generators"
    for k, (gen, hgen) in enumerate(zip(ggens, hgens)):
        for v in psi.domain.vertices:
            if psi.vertex_map[gen[v]] != hgen[psi.vertex_map[v]]:
                return (
                    f"generator {k}: psi(g·{v}) = {psi.vertex_map[gen[v]]!r} but "
                    f"h·psi({v}) = {hgen[psi.vertex_map[v]]!r}"
                )
    return None


def _fold_unique_orbit(psi: PPMap, group: SymmetryGroup, ia: int, ib: int,
                       moves: list[Move]) -> tuple[PPMap, SymmetryGroup]:
    """Equivariant version of the unique-pair recursion: every move is a full
    orbit fold or orbit swell, and the group is carried along."""
    cur, cur_group = psi, group
    while True:
        g = cur.domain
        ia, ib = min(ia, ib), max(ia, ib)
        r = relation(g, ia, ib)
        if r.kind != "separated":
            fr, act = equivariant_fold(g, cur_group, ia, ib)
            nxt = factor_through_fold(fr, cur)
            moves.append(Move("fold", _orbit_pairs(cur_group, ia, ib),
                              g, fr.target, fr.zeta, induced=act))
            return nxt, SymmetryGroup(fr.target, act.generator_images)

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
            start = len(moves)
            cur, cur_group = _fold_unique_orbit(cur, cur_group, i, j, moves)
            for m in moves[start:]:
                ia = m.step_map.hyperplane_map[ia]
                ib = m.step_map.hyperplane_map[ib]
            if ia == ib:
                return cur, cur_group
        else:
            tangents = [h for h in seps if relation(g, ia, h).kind == "tangent"]
            assert tangents, "a separated pair always has a separator tangent to it"
            h1 = min(tangents)
            sr, act = equivariant_swell(g, cur_group, ia, h1)
            cur = extend_through_swell(sr, cur)
            moves.append(Move("swell", _orbit_pairs(cur_group, ia, h1),
                              g, sr.target, sr.embedding, induced=act))
            cur_group = SymmetryGroup(sr.target, act.generator_images)
            ia = sr.embedding.hyperplane_map[ia]
            ib = sr.embedding.hyperplane_map[ib]
        nr = relation(cur.domain, ia, ib)
        assert nr.separation_distance < r.separation_distance, \
            "separation distance failed to decrease"


def _orbit_pairs(group: SymmetryGroup, a: int, b: int) -> tuple[tuple[int, int], ...]:
    return orbit_of_pairs(group, [(a, b)])


def factorize_equivariant(psi: PPMap, group: SymmetryGroup, cogroup: SymmetryGroup,
                          mode: str = "median") -> FactorizationTrace:
    """Equivariant factorization: generators correspond by position, every
    move handles a full orbit, and each move records the induced action."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, not {mode!r}")
    if group.carrier != psi.domain or cogroup.carrier != psi.codomain:
        raise NotEquivariant("groups must act on the map's domain and codomain")
    require_median(psi.domain)
    require_median(psi.codomain)
    failure = _equivariance_failure(psi, group.generators, cogroup.generators)
    if failure is not None:
        raise NotEquivariant(failure)

    k0 = len(hyperplanes(psi.domain))
    limit = (k0 + 2) ** 3 + 10
    moves: list[Move] = []
    cur, cur_group = psi, group
    while True:
        violation = find_violation(cur)
        if violation is None:
            break
        (i, j), kind = violation
        if kind == "merged":
            cur, cur_group = _fold_unique_orbit(cur, cur_group, i, j, moves)
        else:
            if mode == "median":
                break
            assert relation(cur.domain, i, j).kind == "tangent"
            before = cur.domain
            sr, act = equivariant_swell(before, cur_group, i, j)
            cur = extend_through_swell(sr, cur)
            moves.append(Move("swell", _orbit_pairs(cur_group, i, j),
                              before, sr.target, sr.embedding, induced=act))
            cur_group = SymmetryGroup(sr.target, act.generator_images)
        assert len(moves) <= limit, "factorization failed to terminate"
        assert _equivariance_failure(cur, cur_group.generators, cogroup.generators) is None

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
