import itertools

import pytest

from cubefold import errors
from cubefold.fixtures import MEDIAN_FIXTURES, fixture
from cubefold.fold import (
    factor_through_fold,
    first_fold,
    fold_collection,
    fold_pair,
    normalize_pair_collection,
    parity_wall,
    quotient_by_vertex_pairs,
)
from cubefold.graph import build_graph, is_isomorphic
from cubefold.hyperplanes import contact_pairs, hyperplanes
from cubefold.median import is_median, submedian_certificate
from cubefold.morphism import classify, compose, validate

import oracles


# ---------------------------------------------------------------- helpers

def star4():
    return build_graph(["c", "x", "y", "z"], [("c", "x"), ("c", "y"), ("c", "z")])


# ---------------------------------------------------- pair normalization

def test_normalize_sorts_and_dedupes():
    g = fixture("p4")
    got = normalize_pair_collection(g, [("C", "B"), (1, 2), ("A", "B")])
    assert got == ((0, 1), (1, 2))


def test_normalize_drops_degenerate_pairs():
    g = fixture("p4")
    assert normalize_pair_collection(g, [("A", "A"), (2, "C")]) == ()


def test_normalize_rejects_unknown_labels():
    g = fixture("p4")
    with pytest.raises(ValueError):
        normalize_pair_collection(g, [("A", "?!")])
    with pytest.raises(IndexError):
        normalize_pair_collection(g, [("A", "Z")])


# ----------------------------------------------------------- first fold

def test_first_fold_requires_median():
    with pytest.raises(errors.NotMedian):
        first_fold(fixture("k23"), 0, 1)


def test_first_fold_rejects_separated_pair():
    with pytest.raises(errors.NotInContact) as exc:
        first_fold(fixture("p4"), "A", "D")
    assert "separation distance 2" in str(exc.value)


def test_first_fold_rejects_repeated_class():
    with pytest.raises(errors.NotInContact) as exc:
        first_fold(fixture("p4"), "B", "B")
    assert "twice" in str(exc.value)


def test_first_fold_of_path_is_a_star():
    """Folding the two middle classes of a 4-path bends it at the center."""
    g = fixture("p4")
    z, pi = first_fold(g, "B", "C")
    assert z.n == 4 and len(z.edges) == 3
    assert is_isomorphic(z, star4())
    assert pi.vertex_map["v1"] == pi.vertex_map["v3"]
    assert pi.hyperplane_map[1] == pi.hyperplane_map[2]


def test_first_fold_of_square_collapses_it():
    # a transverse pair: both involutions glue the square down to one edge
    z, pi = first_fold(fixture("c4"), "A", "B")
    assert z.n == 2 and len(z.edges) == 1
    assert len(set(pi.vertex_map.values())) == 2


@pytest.mark.parametrize("name", sorted(MEDIAN_FIXTURES))
def test_first_fold_is_always_submedian(name):
    g = fixture(name)
    for a, b in contact_pairs(g):
        z, _ = first_fold(g, a, b)
        cert = submedian_certificate(z)
        assert cert.parity_injective, (name, a, b)
        assert cert.squares_span_cycle_space, (name, a, b)


def test_quotient_tracks_representatives():
    g = fixture("p2")
    z, vmap = quotient_by_vertex_pairs(g, [("v0", "v2")])
    assert z.n == 2
    assert vmap["v0"] == vmap["v2"]


# ------------------------------------------------------------ fold_pair

def test_fold_pair_path_to_star_to_edge():
    g = fixture("p4")
    fr = fold_pair(g, "B", "C")
    assert is_isomorphic(fr.target, star4())
    assert fr.merged_classes == (frozenset({0}), frozenset({1, 2}), frozenset({3}))
    # the outer classes are now tangent at the center; fold them too
    a2 = fr.zeta.hyperplane_map[0]
    d2 = fr.zeta.hyperplane_map[3]
    fr2 = fold_pair(fr.target, a2, d2)
    assert is_isomorphic(fr2.target, fixture("p2"))


def test_fold_pair_counts_classes_down_by_one():
    for name in ("p4", "domino", "grid2x2", "tripod"):
        g = fixture(name)
        for a, b in contact_pairs(g):
            fr = fold_pair(g, a, b)
            assert len(hyperplanes(fr.target)) == len(hyperplanes(g)) - 1
            assert is_median(fr.target)


def test_fold_pair_zeta_is_parallel_preserving_surjection():
    g = fixture("domino")
    fr = fold_pair(g, "A", "C")
    assert set(fr.zeta.vertex_map.values()) == set(fr.target.vertices)
    assert classify(fr.zeta).kind == "parallel-preserving"


# ------------------------------------------------------------ parity wall

@pytest.mark.parametrize("name", sorted(MEDIAN_FIXTURES))
def test_singleton_parity_wall_recovers_halfspaces(name):
    g = fixture(name)
    for h in hyperplanes(g):
        w = parity_wall(g, frozenset({h.index}), h.index)
        assert w.side_plus == h.halfspace_plus
        assert w.side_minus == h.halfspace_minus


def test_parity_wall_of_merged_group():
    # crossing either B or C flips sides: v2 is two B/C-crossings from v0
    g = fixture("p4")
    w = parity_wall(g, frozenset({1, 2}), 0)
    assert w.side_plus == frozenset({"v0", "v1", "v3", "v4"})
    assert w.side_minus == frozenset({"v2"})


# ------------------------------------------------------- fold_collection

def test_collection_of_one_pair_matches_fold_pair():
    g = fixture("p4")
    single = fold_pair(g, "A", "B")
    coll = fold_collection(g, [("A", "B")])
    assert is_isomorphic(single.target, coll.target)
    assert single.merged_classes == coll.merged_classes


def test_collection_merges_connected_groups():
    g = fixture("p4")
    fr = fold_collection(g, [("A", "B"), ("B", "C")])
    assert fr.merged_classes == (frozenset({0, 1, 2}), frozenset({3}))
    assert len(hyperplanes(fr.target)) == 2


def test_collection_is_order_insensitive():
    g = fixture("grid2x2")
    pairs = [("A", "B"), ("C", "D")]
    targets = []
    for perm in itertools.permutations(pairs):
        fr = fold_collection(fixture("grid2x2"), list(perm))
        targets.append(fr)
    assert targets[0].zeta.vertex_map == targets[1].zeta.vertex_map
    assert is_isomorphic(targets[0].target, targets[1].target)


def test_collection_rejects_separated_pair():
    with pytest.raises(errors.NotInContact):
        fold_collection(fixture("p4"), [("A", "B"), ("A", "D")])


def test_collection_agrees_with_iterated_pairs():
    """Folding {A,B} then the images of {C,E} equals the one-shot
    collection fold, up to isomorphism."""
    g = fixture("grid2x3")
    coll = fold_collection(g, [("A", "B"), ("C", "E")])
    fr1 = fold_pair(g, "A", "B")
    c1 = fr1.zeta.hyperplane_map[2]
    e1 = fr1.zeta.hyperplane_map[4]
    fr2 = fold_pair(fr1.target, c1, e1)
    assert is_isomorphic(coll.target, fr2.target)
    two_step = compose(fr2.zeta, fr1.zeta)
    assert oracles.brute_iso(coll.target, fr2.target) is not None
    assert two_step.hyperplane_map[0] == two_step.hyperplane_map[1]
    assert two_step.hyperplane_map[2] == two_step.hyperplane_map[4]


# --------------------------------------------------- factor_through_fold

def make_zigzag():
    g = fixture("p4")
    p2 = fixture("p2")
    vm = {"v0": "v0", "v1": "v1", "v2": "v2", "v3": "v1", "v4": "v0"}
    return g, validate(g, p2, vm, name="zigzag")


def test_factor_through_fold_splits_the_map():
    g, psi = make_zigzag()
    fr = fold_pair(g, "B", "C")
    xi = factor_through_fold(fr, psi)
    for x in g.vertices:
        assert xi.vertex_map[fr.zeta.vertex_map[x]] == psi.vertex_map[x]


def test_factor_through_fold_rejects_split_images():
    g = fixture("p4")
    ident = validate(g, fixture("p4"), {x: x for x in g.vertices})
    fr = fold_pair(g, "B", "C")
    with pytest.raises(errors.NotFactorizable) as exc:
        factor_through_fold(fr, ident)
    assert "distinct images" in str(exc.value)


def test_factor_through_fold_domain_mismatch():
    _, psi = make_zigzag()
    fr = fold_pair(fixture("domino"), "A", "B")
    with pytest.raises(errors.DomainMismatch):
        factor_through_fold(fr, psi)
