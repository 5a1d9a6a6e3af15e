"""Small graph fixtures: paths, grids, cubes, trees, staircases and the
standard counterexamples.  Everything is deterministic; builders return fresh
Graph objects."""

from __future__ import annotations

from .graph import Graph, build_graph


def path(n: int, prefix: str = "v") -> Graph:
    """Path with n edges, vertices v0..vn."""
    vs = [f"{prefix}{i}" for i in range(n + 1)]
    es = [(vs[i], vs[i + 1]) for i in range(n)]
    return build_graph(vs, es, name=f"P{n}")


def hypercube(d: int) -> Graph:
    """Hypercube Q_d with bitstring vertex ids."""
    vs = [format(i, f"0{d}b") for i in range(1 << d)] if d else ["0"]
    es = []
    for i in range(1 << d):
        for b in range(d):
            j = i ^ (1 << b)
            if i < j:
                es.append((format(i, f"0{d}b"), format(j, f"0{d}b")))
    return build_graph(vs, es, name=f"Q{d}")


def cycle4() -> Graph:
    g = hypercube(2)
    g.name = "C4"
    return g


def grid(m: int, n: int) -> Graph:
    """The grid P_m x P_n with (m+1)(n+1) vertices, ids like '21'."""
    vs = [f"{x}{y}" for x in range(m + 1) for y in range(n + 1)]
    es = []
    for x in range(m + 1):
        for y in range(n + 1):
            if x < m:
                es.append((f"{x}{y}", f"{x + 1}{y}"))
            if y < n:
                es.append((f"{x}{y}", f"{x}{y + 1}"))
    return build_graph(vs, es, name=f"grid{m}x{n}")


def domino() -> Graph:
    """Two squares sharing an edge (the 6-vertex L fixture)."""
    g = grid(2, 1)
    g.name = "domino"
    return g


def tripod() -> Graph:
    """Star with center c and leaves a, b, d."""
    return build_graph(["a", "b", "c", "d"], [("c", "a"), ("c", "b"), ("c", "d")], name="tripod")


def broom() -> Graph:
    """Path v0..v3 with two extra leaves at v3."""
    vs = ["v0", "v1", "v2", "v3", "b1", "b2"]
    es = [("v0", "v1"), ("v1", "v2"), ("v2", "v3"), ("v3", "b1"), ("v3", "b2")]
    return build_graph(vs, es, name="broom")


def staircase(k: int) -> Graph:
    """k unit squares along the diagonal, consecutive squares sharing a corner."""
    vs: set[str] = set()
    es = set()
    for i in range(k):
        a, b, c, d = f"{i}{i}", f"{i + 1}{i}", f"{i + 1}{i + 1}", f"{i}{i + 1}"
        vs.update((a, b, c, d))
        es.update({(a, b), (b, c), (d, c), (a, d)})
    return build_graph(sorted(vs), sorted(es), name=f"staircase{k}")


def hexhub() -> Graph:
    """Hexagon with a hub joined to three alternating corners.

    Not median (the triple of even corners has no median), but every parallel
    class is coherent and its squares span the cycle space.  Its cubulation
    is the 3-cube.
    """
    verts = ["c0", "c1", "c2", "c3", "c4", "c5", "h"]
    edges = [("c0", "c1"), ("c1", "c2"), ("c2", "c3"), ("c3", "c4"),
             ("c4", "c5"), ("c5", "c0"), ("h", "c1"), ("h", "c3"), ("h", "c5")]
    return build_graph(verts, edges, name="hexhub")


def k23() -> Graph:
    """The complete bipartite graph K_{2,3} -- the canonical non-median graph."""
    vs = ["u1", "u2", "w1", "w2", "w3"]
    es = [(u, w) for u in ("u1", "u2") for w in ("w1", "w2", "w3")]
    return build_graph(vs, es, name="K23")


def corner3() -> Graph:
    """Three squares around a vertex with no 3-cube (Q3 minus a vertex)."""
    q = hypercube(3)
    vs = [v for v in q.vertices if v != "111"]
    es = [e for e in q.edges if "111" not in e]
    return build_graph(vs, es, name="corner3")


def two_squares_shared_edge() -> Graph:
    """Remark fixture: two 4-cycles with a common edge, vertices p,q,r,s,u,t."""
    vs = ["p", "q", "r", "s", "u", "t"]
    es = [("p", "q"), ("q", "r"), ("r", "s"), ("s", "p"), ("r", "u"), ("u", "t"), ("t", "s")]
    return build_graph(vs, es, name="Z")


def edge_plus_square() -> Graph:
    """A 4-cycle and a pendant edge sharing one vertex."""
    vs = ["c", "x", "y", "z", "w"]
    es = [("c", "x"), ("x", "y"), ("y", "z"), ("z", "c"), ("c", "w")]
    return build_graph(vs, es, name="edge+square")


def chain_of_squares(k: int) -> Graph:
    """k squares in a row sharing edges (a ladder)."""
    g = grid(k, 1)
    g.name = f"chain{k}"
    return g


#: Median fixtures used by the acceptance suite.
MEDIAN_FIXTURES = {
    "p1": lambda: path(1),
    "p2": lambda: path(2),
    "p4": lambda: path(4),
    "p6": lambda: path(6),
    "tripod": tripod,
    "broom": broom,
    "c4": cycle4,
    "q3": lambda: hypercube(3),
    "domino": domino,
    "row3": lambda: grid(3, 1),
    "staircase2": lambda: staircase(2),
    "grid2x2": lambda: grid(2, 2),
    "grid2x3": lambda: grid(2, 3),
}

#: Non-median fixtures.
OTHER_FIXTURES = {
    "k23": k23,
    "corner3": corner3,
    "hexhub": hexhub,
}


def fixture(name: str) -> Graph:
    if name in MEDIAN_FIXTURES:
        return MEDIAN_FIXTURES[name]()
    if name in OTHER_FIXTURES:
        return OTHER_FIXTURES[name]()
    raise KeyError(f"unknown fixture {name!r}")
