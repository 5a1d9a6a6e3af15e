"""Line-based text formats for graphs, maps, and groups, plus DOT export.

Graph files: a `graph <name>` header, then `v <id>` and `e <id> <id>` lines.
Map files: a `map <name>` header, then `m <domain-id> <codomain-id>` lines.
Group files: one `gen` line per generator listing moved vertices as `a->b`
pairs (vertices not listed are fixed).  Blank lines and `#` comments are
ignored on read; writes are canonical, so written files are diff-stable.
"""

from __future__ import annotations

from .errors import ParseError
from .graph import Graph, build_graph
from .hyperplanes import as_index, class_label, edge_class
from .morphism import PPMap, validate


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_graph_text(text: str) -> Graph:
    name = None
    verts: list[str] = []
    edges: list[tuple[str, str]] = []
    for lineno, toks in _tokens(text):
        kind = toks[0]
        if kind == "graph":
            if name is not None:
                raise ParseError(f"line {lineno}: repeated graph header")
            if len(toks) > 2:
                raise ParseError(f"line {lineno}: graph name cannot contain spaces")
            name = toks[1] if len(toks) == 2 else ""
        elif name is None:
            raise ParseError(f"line {lineno}: expected `graph <name>` header first")
        elif kind == "v":
            if len(toks) != 2:
                raise ParseError(f"line {lineno}: expected `v <id>`")
            verts.append(toks[1])
        elif kind == "e":
            if len(toks) != 3:
                raise ParseError(f"line {lineno}: expected `e <id> <id>`")
            edges.append((toks[1], toks[2]))
        else:
            raise ParseError(f"line {lineno}: unknown directive {kind!r}")
    if name is None:
        raise ParseError("line 1: missing `graph <name>` header")
    try:
        return build_graph(verts, edges, name=name)
    except Exception as exc:
        raise ParseError(f"invalid graph {name!r}: {exc}") from exc


def write_graph_text(g: Graph) -> str:
    lines = [f"graph {g.name or 'g'}"]
    for v in g.vertices:
        assert not any(c.isspace() for c in v), f"vertex id {v!r} is not writable"
        lines.append(f"v {v}")
    for u, w in g.edges:
        lines.append(f"e {u} {w}")
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph_text(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_graph_text(g))


def parse_map_text(text: str, domain: Graph, codomain: Graph) -> PPMap:
    name = None
    vmap: dict[str, str] = {}
    for lineno, toks in _tokens(text):
        kind = toks[0]
        if kind == "map":
            if name is not None:
                raise ParseError(f"line {lineno}: repeated map header")
            name = toks[1] if len(toks) == 2 else ""
        elif name is None:
            raise ParseError(f"line {lineno}: expected `map <name>` header first")
        elif kind == "m":
            if len(toks) != 3:
                raise ParseError(f"line {lineno}: expected `m <domain-id> <codomain-id>`")
            if toks[1] in vmap:
                raise ParseError(f"line {lineno}: vertex {toks[1]!r} mapped twice")
            vmap[toks[1]] = toks[2]
        else:
            raise ParseError(f"line {lineno}: unknown directive {kind!r}")
    if name is None:
        raise ParseError("line 1: missing `map <name>` header")
    return validate(domain, codomain, vmap, name=name)


def write_map_text(psi: PPMap) -> str:
    lines = [f"map {psi.name or 'psi'}"]
    for v in psi.domain.vertices:
        lines.append(f"m {v} {psi.vertex_map[v]}")
    return "\n".join(lines) + "\n"


def read_map(path, domain: Graph, codomain: Graph) -> PPMap:
    with open(path, encoding="utf-8") as fh:
        return parse_map_text(fh.read(), domain, codomain)


def write_map(psi: PPMap, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_map_text(psi))


def parse_group_text(text: str, g: Graph) -> list[dict[str, str]]:
    """Generator permutations; vertices not mentioned on a `gen` line are
    fixed.  Validation against the graph happens in verify_group."""
    gens: list[dict[str, str]] = []
    for lineno, toks in _tokens(text):
        if toks[0] != "gen":
            raise ParseError(f"line {lineno}: unknown directive {toks[0]!r}")
        gen = {v: v for v in g.vertices}
        for pair in toks[1:]:
            src, arrow, dst = pair.partition("->")
            if arrow != "->" or not src or not dst:
                raise ParseError(f"line {lineno}: expected `a->b`, got {pair!r}")
            if src not in gen:
                raise ParseError(f"line {lineno}: unknown vertex {src!r}")
            gen[src] = dst
        gens.append(gen)
    return gens


def write_group_text(generators) -> str:
    lines = []
    for gen in generators:
        moved = [f"{a}->{b}" for a, b in sorted(gen.items()) if a != b]
        lines.append("gen " + " ".join(moved) if moved else "gen")
    return "\n".join(lines) + "\n"


def read_group(path, g: Graph) -> list[dict[str, str]]:
    with open(path, encoding="utf-8") as fh:
        return parse_group_text(fh.read(), g)


_PALETTE = (
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02",
    "#a6761d", "#666666", "#1f78b4", "#b2df8a", "#fb9a99", "#cab2d6",
)


def class_color(i: int) -> str:
    return _PALETTE[i % len(_PALETTE)]


def export_dot(g: Graph, highlight=None) -> str:
    """Undirected DOT text with one color per hyperplane class."""
    hl = as_index(g, highlight) if highlight is not None else None
    lines = [f'graph "{g.name or "g"}" {{', "  node [shape=circle];"]
    for v in g.vertices:
        lines.append(f'  "{v}";')
    for u, w in g.edges:
        c = edge_class(g, u, w)
        attrs = [f'color="{class_color(c)}"', f'label="{class_label(c)}"']
        if c == hl:
            attrs.append("penwidth=3")
        lines.append(f'  "{u}" -- "{w}" [{", ".join(attrs)}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
