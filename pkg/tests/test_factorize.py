import pytest

from cubefold import errors
from cubefold.factorize import MODES, factorize, fold_unique_pair
from cubefold.fixtures import fixture
from cubefold.graph import is_isomorphic
from cubefold.median import convex_hull, median_hull
from cubefold.morphism import classify, compose, identity_map, validate

import oracles


def zigzag():
    g = fixture("p4")
    vm = {"v0": "v0", "v1": "v1", "v2": "v2", "v3": "v1", "v4": "v0"}
    return validate(g, fixture("p2"), vm, name="zigzag")


def domino_wrap():
    """P4 walked around the boundary of the domino: its two end classes
    land on the same rung class."""
    g = fixture("p4")
    vm = {"v0": "00", "v1": "01", "v2": "11", "v3": "21", "v4": "20"}
    return validate(g, fixture("domino"), vm, name="wrap")


def bent_p2():
    g = fixture("p2")
    return validate(g, fixture("c4"), {"v0": "01", "v1": "00", "v2": "10"})


# -------------------------------------------------------- fold_unique_pair

def test_fold_unique_pair_needs_distinct_classes():
    with pytest.raises(ValueError):
        fold_unique_pair(zigzag(), "A", "A")


def test_fold_unique_pair_needs_a_shared_image():
    with pytest.raises(errors.ImagesDiffer):
        fold_unique_pair(zigzag(), "A", "B")


def test_fold_unique_pair_resolves_inner_collision_first():
    """To merge the end classes of the zigzag, the engine first folds the
    middle pair (already in contact), which brings the ends together."""
    psi = zigzag()
    moves, cur = fold_unique_pair(psi, "A", "D")
    assert [m.kind for m in moves] == ["fold", "fold"]
    assert moves[0].pairs == ((1, 2),)
    a1 = moves[0].step_map.hyperplane_map[0]
    d1 = moves[0].step_map.hyperplane_map[3]
    assert moves[1].pairs == ((min(a1, d1), max(a1, d1)),)
    assert is_isomorphic(cur.domain, fixture("p2"))


def test_fold_unique_pair_swells_out_of_separation():
    """Merging separated classes with no inner collisions goes through
    swellings until the pair comes into contact."""
    psi = domino_wrap()
    moves, cur = fold_unique_pair(psi, "A", "D")
    assert [m.kind for m in moves] == ["swell", "swell", "fold"]
    assert [m.after.n for m in moves] == [6, 7, 6]
    assert is_isomorphic(cur.domain, fixture("domino"))


def test_move_endpoints_chain():
    moves, cur = fold_unique_pair(domino_wrap(), "A", "D")
    for m in moves:
        assert m.step_map.domain == m.before
        assert m.step_map.codomain == m.after
        assert m.induced is None
    for prev, nxt in zip(moves, moves[1:]):
        assert prev.after == nxt.before
    assert cur.domain == moves[-1].after


# ---------------------------------------------------------- factorize

def test_factorize_rejects_unknown_mode():
    with pytest.raises(ValueError):
        factorize(zigzag(), mode="isometric")
    assert MODES == ("median", "convex")


def test_factorize_requires_median_ends():
    k = fixture("k23")
    with pytest.raises(errors.NotMedian):
        factorize(identity_map(k))


def test_factorize_identity_is_a_no_op():
    for mode in MODES:
        tr = factorize(identity_map(fixture("q3")), mode=mode)
        assert tr.moves == ()
        assert tr.mode == mode
        assert classify(tr.iota).kind == "isometry"


def test_factorize_zigzag_is_two_folds():
    psi = zigzag()
    tr = factorize(psi)
    assert [m.kind for m in tr.moves] == ["fold", "fold"]
    assert is_isomorphic(tr.iota.domain, fixture("p2"))
    assert classify(tr.iota).kind == "isometry"
    assert compose(tr.iota, tr.eta).vertex_map == psi.vertex_map


def test_factorize_wrap_swells_then_folds():
    psi = domino_wrap()
    tr = factorize(psi)
    assert [m.kind for m in tr.moves] == ["swell", "swell", "fold"]
    assert is_isomorphic(tr.iota.domain, fixture("domino"))
    assert compose(tr.iota, tr.eta).vertex_map == psi.vertex_map


def test_median_mode_stops_at_isometric():
    psi = bent_p2()
    tr = factorize(psi, mode="median")
    assert tr.moves == ()
    assert classify(tr.iota).kind == "isometric-embedding"


def test_convex_mode_swells_into_the_hull():
    psi = bent_p2()
    tr = factorize(psi, mode="convex")
    assert [m.kind for m in tr.moves] == ["swell"]
    assert classify(tr.iota).at_least("convex-embedding")
    assert tr.iota.image_vertices() == set(fixture("c4").vertices)


@pytest.mark.parametrize("mode", MODES)
def test_terminal_image_is_the_hull(mode):
    psi = domino_wrap()
    tr = factorize(psi, mode=mode)
    dist = oracles.naive_all_distances(psi.codomain)
    image = {psi.vertex_map[v] for v in psi.domain.vertices}
    if mode == "median":
        want = oracles.naive_median_closure(dist, image)
    else:
        want = oracles.naive_convex_closure(dist, image)
    assert tr.iota.image_vertices() == want


def test_eta_is_the_composite_of_the_moves():
    psi = domino_wrap()
    tr = factorize(psi)
    acc = identity_map(psi.domain)
    for m in tr.moves:
        acc = compose(m.step_map, acc)
    assert acc.vertex_map == tr.eta.vertex_map
    assert acc.hyperplane_map == tr.eta.hyperplane_map


def test_hull_helpers_agree_with_fixpoint_oracles():
    g = fixture("grid2x3")
    dist = oracles.naive_all_distances(g)
    for subset in ({"00", "13"}, {"01", "12", "20"}, {"03"}):
        assert median_hull(g, subset) == oracles.naive_median_closure(dist, subset)
        assert convex_hull(g, subset) == oracles.naive_convex_closure(dist, subset)
