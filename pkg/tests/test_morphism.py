import itertools

import pytest

from cubefold import errors
from cubefold.fixtures import MEDIAN_FIXTURES, fixture, path
from cubefold.graph import distance
from cubefold.hyperplanes import hyperplanes, transverse_pairs
from cubefold.median import convex_hull, is_convex
from cubefold.morphism import (
    classify,
    compose,
    find_violation,
    forced_factorization,
    identity_map,
    is_chiasmatic,
    validate,
)

import oracles


def zigzag():
    """P4 collapsed onto P2 by reflecting at the middle."""
    p4, p2 = fixture("p4"), fixture("p2")
    return validate(p4, p2, {"v0": "v0", "v1": "v1", "v2": "v2", "v3": "v1", "v4": "v0"})


def p2_into_c4():
    p2, c4 = fixture("p2"), fixture("c4")
    return validate(p2, c4, {"v0": "01", "v1": "00", "v2": "10"})


def test_validate_rejects_unknown_vertices():
    p2 = fixture("p2")
    with pytest.raises(errors.UnknownVertex):
        validate(p2, p2, {"v0": "v0", "v1": "v1", "v2": "nope"})
    with pytest.raises(errors.UnknownVertex):
        validate(p2, p2, {"v0": "v0", "v1": "v1"})


def test_validate_rejects_collapsed_edge():
    p2 = fixture("p2")
    with pytest.raises(errors.EdgeCollapsed):
        validate(p2, p2, {"v0": "v0", "v1": "v0", "v2": "v1"})


def test_validate_rejects_non_edges():
    p2, p4 = fixture("p2"), fixture("p4")
    with pytest.raises(errors.NotEdgePreserving):
        validate(p2, p4, {"v0": "v0", "v1": "v1", "v2": "v3"})


def test_validate_rejects_parallel_breaking():
    # wrap C4 around P2: opposite edges of the square land in different classes
    c4, p2 = fixture("c4"), fixture("p2")
    with pytest.raises(errors.ParallelBroken):
        validate(c4, p2, {"00": "v0", "01": "v1", "10": "v1", "11": "v2"})


def test_hyperplane_map_is_total_and_well_defined():
    psi = zigzag()
    k = len(hyperplanes(psi.domain))
    assert sorted(psi.hyperplane_map) == list(range(k))
    # A and D collapse onto the same class, as do B and C
    hm = psi.hyperplane_map
    assert hm[0] == hm[3]
    assert hm[1] == hm[2]


@pytest.mark.parametrize("name", sorted(MEDIAN_FIXTURES))
def test_identity_map_is_isometry(name):
    g = fixture(name)
    ident = identity_map(g)
    assert classify(ident).kind == "isometry"
    assert ident.hyperplane_map == {i: i for i in range(len(hyperplanes(g)))}


def test_compose_chains_vertex_and_class_maps():
    p4 = fixture("p4")
    psi = zigzag()
    phi = compose(p2_into_c4(), psi)
    assert phi.domain == p4
    assert phi.vertex_map["v3"] == "00"
    assert phi.hyperplane_map == {
        j: p2_into_c4().hyperplane_map[psi.hyperplane_map[j]] for j in range(4)
    }


def test_compose_requires_matching_middle():
    with pytest.raises(errors.DomainMismatch):
        compose(zigzag(), zigzag())


def test_classify_isometry_detects_relabelling():
    c4 = fixture("c4")
    rot = validate(c4, c4, {"00": "01", "01": "11", "11": "10", "10": "00"})
    assert classify(rot).kind == "isometry"


def test_classify_convex_embedding():
    p2, domino = fixture("p2"), fixture("domino")
    emb = validate(p2, domino, {"v0": "00", "v1": "10", "v2": "20"})
    mc = classify(emb)
    assert mc.kind == "convex-embedding"
    assert is_convex(domino, {"00", "10", "20"})


def test_classify_isometric_embedding_with_witness():
    mc = classify(p2_into_c4())
    assert mc.kind == "isometric-embedding"
    assert mc.witness == (0, 1)
    # the witness pair is tangent at home but transverse in the image
    assert not is_convex(fixture("c4"), {"01", "00", "10"})


def test_classify_merged_with_witness():
    mc = classify(zigzag())
    assert mc.kind == "parallel-preserving"
    assert mc.witness is not None
    i, j = mc.witness
    psi = zigzag()
    assert psi.hyperplane_map[i] == psi.hyperplane_map[j]


def brute_kind(psi):
    """Classification straight from the definitions, no hyperplane analysis."""
    n_dom = psi.domain.n
    image = {psi.vertex_map[v] for v in psi.domain.vertices}
    if len(image) < n_dom:
        return "parallel-preserving"
    if not oracles.is_distance_preserving(psi.domain, psi.codomain, psi.vertex_map):
        return "parallel-preserving"
    dist = oracles.naive_all_distances(psi.codomain)
    if image == oracles.naive_convex_closure(dist, image):
        if len(image) == psi.codomain.n:
            return "isometry"
        return "convex-embedding"
    return "isometric-embedding"


@pytest.mark.parametrize(
    "make",
    [
        zigzag,
        p2_into_c4,
        lambda: identity_map(fixture("q3")),
        lambda: validate(fixture("p1"), fixture("c4"), {"v0": "00", "v1": "01"}),
        lambda: validate(fixture("p4"), fixture("p4"),
                         {"v0": "v4", "v1": "v3", "v2": "v2", "v3": "v1", "v4": "v0"}),
        lambda: validate(fixture("c4"), fixture("q3"),
                         {"00": "000", "01": "001", "10": "010", "11": "011"}),
        lambda: validate(fixture("p2"), fixture("p1"), {"v0": "v0", "v1": "v1", "v2": "v0"}),
    ],
)
def test_classify_agrees_with_brute_force(make):
    psi = make()
    assert classify(psi).kind == brute_kind(psi)


def test_chiasmatic_meaning():
    # collapsing C4 onto an edge sends a transverse pair to a single class
    c4, p1 = fixture("c4"), fixture("p1")
    wrap = validate(c4, p1, {"00": "v0", "01": "v1", "10": "v1", "11": "v0"})
    assert not is_chiasmatic(wrap)
    assert is_chiasmatic(zigzag())  # P4 has no transverse pairs to lose
    assert is_chiasmatic(identity_map(fixture("q3")))


def test_find_violation_none_for_convex_embedding():
    p2, domino = fixture("p2"), fixture("domino")
    emb = validate(p2, domino, {"v0": "00", "v1": "10", "v2": "20"})
    assert find_violation(emb) is None
    assert find_violation(identity_map(p2)) is None


def test_find_violation_prefers_merged_pairs():
    psi = zigzag()
    pair, kind = find_violation(psi)
    assert kind == "merged"
    # {B,C} is the closest merged pair (the endpoints meet), not {A,D}
    assert pair == (1, 2)


def test_find_violation_reports_transversalized():
    pair, kind = find_violation(p2_into_c4())
    assert kind == "transversalized"
    assert pair == (0, 1)


def test_forced_factorization_extends_through_embedding():
    p2, c4 = fixture("p2"), fixture("c4")
    through = p2_into_c4()
    psi = validate(p2, c4, {"v0": "01", "v1": "00", "v2": "10"})
    xi = forced_factorization(through, psi)
    assert compose(xi, through).vertex_map == psi.vertex_map


def test_forced_factorization_fills_the_fourth_corner():
    # factoring through the square embedding forces where 11 must go
    p2, q3 = fixture("p2"), fixture("q3")
    through = p2_into_c4()
    psi = validate(p2, q3, {"v0": "001", "v1": "000", "v2": "010"})
    xi = forced_factorization(through, psi)
    assert sorted(xi.vertex_map) == sorted(fixture("c4").vertices)
    assert xi.vertex_map["11"] == "011"
    assert compose(xi, through).vertex_map == psi.vertex_map


def test_forced_factorization_fails_without_the_corner():
    # tangent images leave nowhere for the transverse corner to land
    p2, tripod = fixture("p2"), fixture("tripod")
    through = p2_into_c4()
    psi = validate(p2, tripod, {"v0": "a", "v1": "c", "v2": "b"})
    with pytest.raises(errors.NotFactorizable):
        forced_factorization(through, psi)
