import pytest

from cubefold import errors
from cubefold.fixtures import MEDIAN_FIXTURES, fixture
from cubefold.graph import is_isomorphic
from cubefold.hyperplanes import hyperplanes, relation, tangent_pairs, transverse_pairs
from cubefold.median import is_median
from cubefold.morphism import classify, validate
from cubefold.swell import extend_through_swell, swell_collection, swell_pair

import oracles


def square_count(g):
    return len(oracles.naive_squares(oracles.adjacency(g)))


# ------------------------------------------------------------ rejections

def test_swell_pair_rejects_separated():
    with pytest.raises(errors.NotTangent) as exc:
        swell_pair(fixture("p4"), "A", "D")
    assert "separation distance 2" in str(exc.value)


def test_swell_pair_rejects_transverse():
    with pytest.raises(errors.NotTangent) as exc:
        swell_pair(fixture("c4"), "A", "B")
    assert "transverse, not tangent" in str(exc.value)


def test_swell_pair_rejects_equal():
    with pytest.raises(errors.NotTangent):
        swell_pair(fixture("p4"), "B", "B")


def test_swell_pair_requires_median():
    with pytest.raises(errors.NotMedian):
        swell_pair(fixture("k23"), 0, 1)


# ------------------------------------------------------------- swell_pair

def test_swelling_a_path_grows_a_square():
    g = fixture("p4")
    sr = swell_pair(g, "A", "B")
    assert sr.target.n == 6 and len(sr.target.edges) == 6
    assert square_count(sr.target) == 1
    assert sr.new_transversal_pairs == ((0, 1),)


def test_swelling_a_domino_closes_the_cube():
    """The two long classes of a 2x3 grid are tangent along the middle rung;
    swelling them wraps the domino into a 3-cube, adding four squares."""
    g = fixture("domino")
    sr = swell_pair(g, "B", "C")
    assert is_isomorphic(sr.target, fixture("q3"))
    assert square_count(g) == 2 and square_count(sr.target) == 6


def test_swelled_pair_becomes_transverse():
    g = fixture("p4")
    sr = swell_pair(g, "B", "C")
    a = sr.embedding.hyperplane_map[1]
    b = sr.embedding.hyperplane_map[2]
    assert relation(sr.target, a, b).kind == "transverse"


@pytest.mark.parametrize("name", sorted(MEDIAN_FIXTURES))
def test_swell_embeds_isometrically_and_keeps_all_classes(name):
    g = fixture(name)
    for a, b in tangent_pairs(g):
        sr = swell_pair(g, a, b)
        assert classify(sr.embedding).at_least("isometric-embedding"), (name, a, b)
        assert len(hyperplanes(sr.target)) == len(hyperplanes(g))
        assert is_median(sr.target)


@pytest.mark.parametrize("name", ["p4", "p6", "tripod", "domino", "broom"])
def test_swell_adds_exactly_one_transversality(name):
    g = fixture(name)
    for a, b in tangent_pairs(g):
        sr = swell_pair(g, a, b)
        hm = sr.embedding.hyperplane_map
        before = {frozenset((hm[i], hm[j])) for i, j in transverse_pairs(g)}
        after = {frozenset(p) for p in transverse_pairs(sr.target)}
        assert after == before | {frozenset((hm[a], hm[b]))}, (name, a, b)


# -------------------------------------------------------- swell_collection

def test_collection_of_one_pair_matches_swell_pair():
    g = fixture("p4")
    one = swell_pair(g, "A", "B")
    coll = swell_collection(g, [("A", "B")])
    assert is_isomorphic(one.target, coll.target)
    assert coll.new_transversal_pairs == ((0, 1),)


def test_collection_swells_a_chain_of_pairs():
    g = fixture("p4")
    sr = swell_collection(g, [("A", "B"), ("B", "C")])
    assert sr.target.n == 7 and len(sr.target.edges) == 8
    assert sr.new_transversal_pairs == ((0, 1), (1, 2))
    assert square_count(sr.target) == 2


def test_collection_tolerates_transverse_pairs():
    g = fixture("c4")
    sr = swell_collection(g, [("A", "B")])
    assert is_isomorphic(sr.target, g)
    assert sr.new_transversal_pairs == ()


def test_collection_rejects_separated_pairs():
    with pytest.raises(errors.NotTangent):
        swell_collection(fixture("p4"), [("A", "B"), ("A", "D")])


@pytest.mark.parametrize("name", sorted(MEDIAN_FIXTURES))
def test_iterated_swells_match_the_collection(name):
    """Swelling the pairs of a collection one at a time, in any order,
    lands on the same graph as the one-shot collection swell."""
    import itertools

    g = fixture(name)
    tps = tangent_pairs(g)
    for r in (2, 3):
        for S in itertools.combinations(tps, r):
            coll = swell_collection(g, S)
            for order in itertools.permutations(range(r)):
                cur, idx = g, [tuple(q) for q in S]
                for pos in order:
                    sr = swell_pair(cur, *idx[pos])
                    hm = sr.embedding.hyperplane_map
                    idx = [(hm[x], hm[y]) for x, y in idx]
                    cur = sr.target
                assert is_isomorphic(cur, coll.target), (S, order)


def test_new_corner_ids_never_collide():
    # consecutive swellings can ask for the same synthesized corner id once
    # classes renumber; the second one must pick a fresh name
    g = fixture("staircase2")
    sr1 = swell_pair(g, 0, 3)
    hm = sr1.embedding.hyperplane_map
    sr2 = swell_pair(sr1.target, hm[0], hm[2])
    assert sr2.target.n == sr1.target.n + len(
        set(sr2.target.vertices) - set(sr1.target.vertices)
    )


def test_collection_matches_exempted_orientation_scan():
    """The swelled graph's vertices are exactly the orientations that are
    consistent away from the exempted pairs."""
    g = fixture("p4")
    pairs = [(0, 1), (1, 2)]
    sr = swell_collection(g, pairs)
    from cubefold.cubulation import walls_from_hyperplanes

    ws = [(set(w.side_plus), set(w.side_minus)) for w in walls_from_hyperplanes(g).walls]
    naive = oracles.naive_consistent_orientations(ws, exempt=pairs)
    assert sr.target.n == len(naive)


# ----------------------------------------------------- extend_through_swell

def test_extension_fills_the_new_corner():
    g = fixture("p2")
    sr = swell_pair(g, "A", "B")
    psi = validate(g, fixture("c4"), {"v0": "01", "v1": "00", "v2": "10"})
    xi = extend_through_swell(sr, psi)
    corner = (set(sr.target.vertices) - set(g.vertices)).pop()
    assert xi.vertex_map[corner] == "11"
    for x in g.vertices:
        assert xi.vertex_map[x] == psi.vertex_map[x]


def test_extension_needs_transverse_images():
    g = fixture("p2")
    sr = swell_pair(g, "A", "B")
    ident = validate(g, fixture("p2"), {x: x for x in g.vertices})
    with pytest.raises(errors.NotFactorizable) as exc:
        extend_through_swell(sr, ident)
    assert "not transverse" in str(exc.value)


def test_extension_reports_a_missing_corner():
    # the codomain is a 3-cube with one corner cut off; the images are
    # transverse (other squares survive) but the corner the extension
    # needs is exactly the missing one
    g = fixture("p2")
    sr = swell_pair(g, "A", "B")
    psi = validate(g, fixture("corner3"), {"v0": "011", "v1": "001", "v2": "101"})
    with pytest.raises(errors.MissingFourthCorner):
        extend_through_swell(sr, psi)


def test_extension_domain_mismatch():
    sr = swell_pair(fixture("p2"), "A", "B")
    g4 = fixture("p4")
    psi = validate(g4, fixture("p4"), {x: x for x in g4.vertices})
    with pytest.raises(errors.DomainMismatch):
        extend_through_swell(sr, psi)
