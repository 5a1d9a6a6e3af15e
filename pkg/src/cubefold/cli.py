"""Command-line front end.

Every subcommand reads the line-based text formats from `formats` and writes
deterministic output, so golden files diff cleanly.  Exit codes: 0 on
success, 1 on a domain error (printed to stderr as `ErrorName: message`),
2 on a usage error.  The environment variable CUBEFOLD_SEED is reserved but
currently unused; all behavior is deterministic.
"""

from __future__ import annotations

import argparse
import contextlib
import os
import sys

from .cubulation import cubulate, walls_from_hyperplanes
from .equivariance import factorize_equivariant, orbit_of_pairs, verify_group
from .errors import CubefoldError
from .factorize import MODES, factorize
from .fold import fold_collection
from .formats import (
    export_dot,
    read_graph,
    read_group,
    read_map,
    write_graph_text,
    write_map_text,
)
from .hyperplanes import class_label, hyperplanes, parse_class_label
from .median import convex_hull, is_median, median, median_hull
from .morphism import classify, is_chiasmatic, validate
from .swell import swell_collection


def parse_pairs(text: str) -> list[tuple[int, int]]:
    pairs = []
    for chunk in text.split(","):
        a, sep, b = chunk.partition(":")
        if not sep:
            raise ValueError(f"expected LABEL:LABEL, got {chunk!r}")
        pairs.append((parse_class_label(a), parse_class_label(b)))
    return pairs


def _fmt_pair(g, i: int, j: int) -> str:
    return f"{class_label(i)}:{class_label(j)}"


def _vertex_set(ids) -> str:
    return "{" + ",".join(sorted(ids)) + "}"


def cmd_check(args, out) -> int:
    g = read_graph(args.graph)
    print(f"graph {g.name or 'g'}: {g.n} vertices, {len(g.edges)} edges", file=out)
    rep = is_median(g)
    if rep.is_median:
        print("median: true", file=out)
    else:
        if rep.k23_found is not None:
            two, three = rep.k23_found
            reason = f"K_{{2,3}} witness {_vertex_set(two)}+{_vertex_set(three)}"
        elif rep.cube_condition_violation is not None:
            reason = "unfilled 3-cube corner at " + ",".join(rep.cube_condition_violation)
        else:
            x, y, z = rep.witness
            reason = f"no unique median for {x},{y},{z}"
        print(f"median: false ({reason})", file=out)
    return 0


def cmd_hyperplanes(args, out) -> int:
    g = read_graph(args.graph)
    for hp in hyperplanes(g):
        edges = ", ".join(f"e {u} {w}" for u, w in hp.edges)
        if hp.halfspace_plus is None:
            sides = "plus=? minus=?"
        else:
            sides = f"plus={_vertex_set(hp.halfspace_plus)} minus={_vertex_set(hp.halfspace_minus)}"
        print(f"H{hp.index}: {{{edges}}} | {sides}", file=out)
    return 0


def cmd_median(args, out) -> int:
    g = read_graph(args.graph)
    for v in (args.x, args.y, args.z):
        g.index(v)
    m = median(g, args.x, args.y, args.z)
    print(f"median({args.x},{args.y},{args.z}) = {m if m is not None else 'none'}", file=out)
    return 0


def cmd_hull(args, out) -> int:
    g = read_graph(args.graph)
    for v in args.vertices:
        g.index(v)
    hull = convex_hull(g, args.vertices) if args.convex else median_hull(g, args.vertices)
    kind = "convex" if args.convex else "median"
    print(f"{kind} hull: {' '.join(sorted(hull))}", file=out)
    return 0


def cmd_cubulate(args, out) -> int:
    g = read_graph(args.graph)
    cb = cubulate(walls_from_hyperplanes(g))
    eta = validate(g, cb.graph, cb.eta, name="eta")
    print(write_graph_text(cb.graph), file=out, end="")
    print(file=out)
    print(write_map_text(eta), file=out, end="")
    return 0


def cmd_fold(args, out) -> int:
    g = read_graph(args.graph)
    fr = fold_collection(g, parse_pairs(args.pairs))
    print(write_graph_text(fr.target), file=out, end="")
    print(file=out)
    print(write_map_text(fr.zeta), file=out, end="")
    print(file=out)
    for group in fr.merged_classes:
        if len(group) > 1:
            members = ",".join(class_label(i) for i in sorted(group))
            tgt = class_label(fr.zeta.hyperplane_map[min(group)])
            print(f"merged: {{{members}}} -> {tgt}", file=out)
    return 0


def cmd_swell(args, out) -> int:
    g = read_graph(args.graph)
    sr = swell_collection(g, parse_pairs(args.pairs))
    print(write_graph_text(sr.target), file=out, end="")
    print(file=out)
    print(write_map_text(sr.embedding), file=out, end="")
    print(file=out)
    for i, j in sr.new_transversal_pairs:
        print(f"transverse: {{{class_label(i)},{class_label(j)}}}", file=out)
    return 0


def cmd_classify(args, out) -> int:
    dom = read_graph(args.domain)
    cod = read_graph(args.codomain)
    psi = read_map(args.map, dom, cod)
    mc = classify(psi)
    print(f"class: {mc.kind}", file=out)
    if mc.witness is not None:
        print(f"witness: {_fmt_pair(dom, *mc.witness)}", file=out)
    print(f"chiasmatic: {'true' if is_chiasmatic(psi) else 'false'}", file=out)
    return 0


def _trace_report(trace) -> str:
    lines = []
    for k, mv in enumerate(trace.moves, start=1):
        pairs = ",".join(_fmt_pair(mv.before, i, j) for i, j in mv.pairs)
        lines.append(f"move {k} {mv.kind} {{{pairs}}}")
        lines.append("")
        lines.append(write_graph_text(mv.after).rstrip("\n"))
        lines.append("")
    lines.append(write_map_text(trace.iota).rstrip("\n"))
    return "\n".join(lines) + "\n"


def cmd_factorize(args, out) -> int:
    dom = read_graph(args.domain)
    cod = read_graph(args.codomain)
    psi = read_map(args.map, dom, cod)
    if args.group is not None:
        group = verify_group(dom, read_group(args.group, dom))
        cogroup = verify_group(cod, read_group(args.cogroup, cod))
        trace = factorize_equivariant(psi, group, cogroup, mode=args.mode)
    else:
        trace = factorize(psi, mode=args.mode)
    report = _trace_report(trace)
    print(report, file=out, end="")
    if args.trace is not None:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(report)
    if args.emit_dot is not None:
        os.makedirs(args.emit_dot, exist_ok=True)
        for k, mv in enumerate(trace.moves, start=1):
            with open(os.path.join(args.emit_dot, f"move{k:02d}.dot"), "w", encoding="utf-8") as fh:
                fh.write(export_dot(mv.after))
        with open(os.path.join(args.emit_dot, "terminal.dot"), "w", encoding="utf-8") as fh:
            fh.write(export_dot(trace.iota.domain))
    return 0


def cmd_orbit(args, out) -> int:
    g = read_graph(args.graph)
    group = verify_group(g, read_group(args.group, g))
    orbit = orbit_of_pairs(group, parse_pairs(args.pairs))
    print("orbit: " + " ".join(_fmt_pair(g, i, j) for i, j in orbit), file=out)
    return 0


def cmd_export_dot(args, out) -> int:
    g = read_graph(args.graph)
    print(export_dot(g, highlight=args.highlight), file=out, end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubefold", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", help="medianness report for a graph file")
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("hyperplanes", help="list hyperplane classes and halfspaces")
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_hyperplanes)

    sp = sub.add_parser("median", help="median vertex of a triple")
    sp.add_argument("graph")
    sp.add_argument("x")
    sp.add_argument("y")
    sp.add_argument("z")
    sp.set_defaults(func=cmd_median)

    sp = sub.add_parser("hull", help="median or convex hull of a vertex set")
    mode = sp.add_mutually_exclusive_group(required=True)
    mode.add_argument("--median", action="store_true")
    mode.add_argument("--convex", action="store_true")
    sp.add_argument("graph")
    sp.add_argument("vertices", nargs="+")
    sp.set_defaults(func=cmd_hull)

    sp = sub.add_parser("cubulate", help="cubulate the wallspace of a graph")
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_cubulate)

    sp = sub.add_parser("fold", help="fold a collection of hyperplane pairs")
    sp.add_argument("--pairs", required=True, metavar="A:B[,C:D...]")
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_fold)

    sp = sub.add_parser("swell", help="swell a collection of hyperplane pairs")
    sp.add_argument("--pairs", required=True, metavar="A:B[,C:D...]")
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_swell)

    sp = sub.add_parser("classify", help="classify a parallel-preserving map")
    sp.add_argument("domain")
    sp.add_argument("codomain")
    sp.add_argument("map")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("factorize", help="factor a map into folds and swellings")
    sp.add_argument("--mode", choices=MODES, default="median")
    sp.add_argument("--trace", metavar="FILE")
    sp.add_argument("--emit-dot", metavar="DIR")
    sp.add_argument("--group", metavar="FILE")
    sp.add_argument("--cogroup", metavar="FILE")
    sp.add_argument("domain")
    sp.add_argument("codomain")
    sp.add_argument("map")
    sp.set_defaults(func=cmd_factorize)

    sp = sub.add_parser("orbit", help="orbit of hyperplane pairs under a symmetry group")
    sp.add_argument("--pairs", required=True, metavar="A:B[,C:D...]")
    sp.add_argument("graph")
    sp.add_argument("group")
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("export-dot", help="write a graph as colored DOT text")
    sp.add_argument("graph")
    sp.add_argument("--highlight", metavar="LABEL")
    sp.set_defaults(func=cmd_export_dot)

    return p


def run_cli(argv, stdout=None, stderr=None) -> int:
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
            if args.command == "factorize" and (args.group is None) != (args.cogroup is None):
                parser.error("--group and --cogroup must be given together")
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (CubefoldError, ValueError, IndexError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=err)
        return 1


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
