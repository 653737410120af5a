"""Command-line front end.

Verbs: enumerate, convert, sample, verify, experiment, render.  All input
and output is JSON on stdio (except the tsv/ascii/svg render formats), and
randomness is always derived from --seed so runs replay exactly.

Exit codes: 0 for success or a finding, 1 for a violated check (a failed
verification, an experiment verdict of "violation"), 2 for usage errors.
"""

import argparse
import json
import math
import sys
from typing import Optional, TextIO

from .catalan import (
    BinaryTree,
    DyckPath,
    PathPair,
    PlanePartition,
    enumerate_dyck_paths,
    enumerate_path_pairs,
    enumerate_path_tuples,
    enumerate_trees,
    graph_to_tree,
    omega_LP,
    omega_PL,
    omega_TL,
    paths_to_plane_partition,
    plane_partition_to_paths,
    tree_to_graph,
)
from .diagrams import OPlusDiagram, enumerate_diagrams, is_le_diagram, le_normalize, \
    omega_LD, pipe_dream_permutation
from .errors import BadRange, PositroidError
from .experiments import (
    conjecture_sweeps,
    count_report,
    disjointness_experiment,
    m3_counterexample,
)
from .linalg import RationalMatrix, positroid_membership, sample_cell
from .permutations import DecoratedPermutation
from .plabic import Network, PlabicGraph, bcfw_permutations, build_network, \
    enumerate_bcfw_graphs, trip_permutation


# ----------------------------------------------------------------------
# object (de)serialization by kind


def _load(kind: str, data, m: int):
    if kind == "tree":
        return BinaryTree.from_json(data)
    if kind == "graph":
        return PlabicGraph.from_json(data)
    if kind == "paths":
        return PathPair.from_json(data, m)
    if kind == "dyck":
        return DyckPath.from_json(data)
    if kind == "diagram":
        return OPlusDiagram.from_json(data)
    if kind == "permutation":
        return DecoratedPermutation.from_json(data)
    if kind == "planepartition":
        return PlanePartition.from_json(data)
    raise BadRange(f"objects of kind {kind!r} cannot be read")


def _shifted_trip(graph: PlabicGraph, shift: int) -> DecoratedPermutation:
    return trip_permutation(graph).left_shift(shift)


def _partition_to_pair(partition: PlanePartition, m: int) -> PathPair:
    words = plane_partition_to_paths(partition).words
    if len(words) != 2:
        raise BadRange("only two-path plane partitions convert to a path pair")
    return PathPair(words[0], words[1], m)


# arrow table: (from, to) -> callable(obj, args)
_ARROWS = {
    ("tree", "graph"): lambda t, a: tree_to_graph(t),
    ("graph", "tree"): lambda g, a: graph_to_tree(g),
    ("tree", "paths"): lambda t, a: omega_TL(t),
    ("tree", "permutation"): lambda t, a: _shifted_trip(tree_to_graph(t), a.shift),
    ("graph", "permutation"): lambda g, a: _shifted_trip(g, a.shift),
    ("paths", "dyck"): lambda p, a: omega_LP(p),
    ("dyck", "paths"): lambda d, a: omega_PL(d),
    ("paths", "diagram"): lambda p, a: omega_LD(p),
    ("diagram", "permutation"): lambda d, a: pipe_dream_permutation(d),
    ("diagram", "network"): lambda d, a: build_network(d),
    ("paths", "planepartition"): lambda p, a: paths_to_plane_partition((p.wu, p.wl)),
    ("planepartition", "paths"): lambda p, a: _partition_to_pair(p, a.m),
}


# ----------------------------------------------------------------------
# SVG emitters for the kinds whose classes do not carry their own


def _svg(width: float, height: float, body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" '
        f'height="{height:g}" viewBox="0 0 {width:g} {height:g}">'
    )
    return "\n".join([head] + body + ["</svg>"])


def _svg_dyck(path: DyckPath) -> str:
    step = 16
    heights = path.heights
    top = max(heights)
    x0, y0 = 6, top * step + 6
    points = [f"{x0},{y0}"]
    for i, h in enumerate(heights[1:], start=1):
        points.append(f"{x0 + i * step},{y0 - h * step}")
    width = len(path.steps) * step + 12
    body = [
        f'<line x1="{x0}" y1="{y0}" x2="{width - 6}" y2="{y0}" stroke="#ccc"/>',
        f'<polyline points="{" ".join(points)}" fill="none" stroke="black"/>',
    ]
    return _svg(width, top * step + 12, body)


def _svg_tree(tree: BinaryTree) -> str:
    step = 32
    edges: list[tuple[float, int, float, int]] = []
    nodes: list[tuple[float, int, bool]] = []
    slot = [0]

    def place(t: BinaryTree, depth: int) -> float:
        if t.is_leaf:
            x = float(slot[0])
            slot[0] += 1
        else:
            xh = place(t.horizontal, depth + 1)
            xv = place(t.vertical, depth + 1)
            x = (xh + xv) / 2
            edges.append((x, depth, xh, depth + 1))
            edges.append((x, depth, xv, depth + 1))
        nodes.append((x, depth, t.is_leaf))
        return x

    place(tree, 0)
    depth = max(d for _, d, _ in nodes)
    body = []

    def px(x: float) -> float:
        return x * step + 10

    def py(d: int) -> float:
        return d * step + 10

    for x1, d1, x2, d2 in edges:
        body.append(
            f'<line x1="{px(x1):g}" y1="{py(d1):g}" x2="{px(x2):g}" '
            f'y2="{py(d2):g}" stroke="black"/>'
        )
    for x, d, leaf in nodes:
        fill = "white" if leaf else "black"
        body.append(
            f'<circle cx="{px(x):g}" cy="{py(d):g}" r="4" fill="{fill}" '
            'stroke="black"/>'
        )
    return _svg(slot[0] * step + 20, depth * step + 20, body)


def _svg_network(net: Network) -> str:
    step = 40
    columns = sorted(net.sinks)
    east = (max(columns) + 1) * step if columns else step

    def node_xy(node) -> tuple[float, float]:
        if node[0] == "source":
            row = net.sources.index(node[1]) + 1
            return east + 10, row * step
        if node[0] == "sink":
            col = next(c for c, label in net.sinks.items() if label == node[1])
            return east - col * step + 10, (net.k + 1) * step
        row, col = node
        return east - col * step + 10, row * step

    body = []
    for name, tail, head in net.horizontal:
        x1, y1 = node_xy(tail)
        x2, y2 = node_xy(head)
        body.append(f'<line x1="{x1:g}" y1="{y1:g}" x2="{x2:g}" y2="{y2:g}" stroke="black"/>')
        body.append(
            f'<text x="{(x1 + x2) / 2:g}" y="{y1 - 4:g}" font-size="10" '
            f'text-anchor="middle">{name}</text>'
        )
    for tail, head in net.vertical:
        x1, y1 = node_xy(tail)
        x2, y2 = node_xy(head)
        body.append(f'<line x1="{x1:g}" y1="{y1:g}" x2="{x2:g}" y2="{y2:g}" stroke="black"/>')
    for label in net.sources:
        x, y = node_xy(("source", label))
        body.append(f'<circle cx="{x:g}" cy="{y:g}" r="3" fill="black"/>')
        body.append(f'<text x="{x + 6:g}" y="{y + 4:g}" font-size="10">{label}</text>')
    for col, label in net.sinks.items():
        x, y = node_xy(("sink", label))
        body.append(f'<circle cx="{x:g}" cy="{y:g}" r="3" fill="white" stroke="black"/>')
        body.append(f'<text x="{x:g}" y="{y + 14:g}" font-size="10" text-anchor="middle">{label}</text>')
    return _svg(east + 40, (net.k + 2) * step, body)


def _svg_plane_partition(partition: PlanePartition) -> str:
    step = 24
    width = max(partition.b, 1) * step + 12
    height = max(partition.a, 1) * step + 12
    body = []
    for r in range(partition.a):
        for c in range(partition.b):
            x, y = c * step + 6, r * step + 6
            body.append(
                f'<rect x="{x}" y="{y}" width="{step}" height="{step}" '
                'fill="none" stroke="#999"/>'
            )
            body.append(
                f'<text x="{x + step / 2:g}" y="{y + step / 2 + 4:g}" font-size="11" '
                f'text-anchor="middle">{partition.rows[r][c]}</text>'
            )
    return _svg(width, height, body)


def _svg_permutation(perm: DecoratedPermutation) -> str:
    n = perm.n
    radius = max(30, 9 * n)
    size = 2 * radius + 40
    cx = cy = size / 2

    def point(i: int) -> tuple[float, float]:
        angle = math.pi / 2 - 2 * math.pi * (i - 1) / n
        return cx + radius * math.cos(angle), cy - radius * math.sin(angle)

    body = []
    for i in range(1, n + 1):
        j = perm(i)
        x1, y1 = point(i)
        if j != i:
            x2, y2 = point(j)
            body.append(f'<line x1="{x1:g}" y1="{y1:g}" x2="{x2:g}" y2="{y2:g}" stroke="black"/>')
    for i in range(1, n + 1):
        x, y = point(i)
        fill = "white" if perm(i) == i and i in perm.white_fixed else "black"
        body.append(f'<circle cx="{x:g}" cy="{y:g}" r="4" fill="{fill}" stroke="black"/>')
        lx = cx + (radius + 12) * (x - cx) / radius
        ly = cy + (radius + 12) * (y - cy) / radius
        body.append(
            f'<text x="{lx:g}" y="{ly + 4:g}" font-size="10" text-anchor="middle">{i}</text>'
        )
    return _svg(size, size, body)


def _render_svg(kind: str, obj) -> str:
    if kind in ("diagram", "graph", "paths"):
        return obj.to_svg()
    if kind == "dyck":
        return _svg_dyck(obj)
    if kind == "tree":
        return _svg_tree(obj)
    if kind == "network":
        return _svg_network(obj)
    if kind == "planepartition":
        return _svg_plane_partition(obj)
    if kind == "permutation":
        return _svg_permutation(obj)
    raise BadRange(f"no SVG renderer for kind {kind!r}")


def _render_ascii(kind: str, obj) -> str:
    if kind in ("diagram", "dyck"):
        return obj.ascii_art()
    if kind == "tree":
        return str(obj)
    if kind == "permutation":
        return str(obj)
    if kind == "planepartition":
        rows = [" ".join(str(e) for e in row) for row in obj.rows]
        return "\n".join(rows) if rows else "(empty)"
    raise BadRange(f"no ascii renderer for kind {kind!r}")


# ----------------------------------------------------------------------
# verb handlers


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{name}" for name in names if getattr(args, name) is None]
    if missing:
        raise BadRange(f"{', '.join(missing)} required for this invocation")


def _cmd_enumerate(args: argparse.Namespace, out: TextIO) -> int:
    kind = args.kind
    if kind == "pathtuple":
        _require(args, "a", "b", "c")
        objects = list(enumerate_path_tuples(args.a, args.b, args.c))
    else:
        _require(args, "n", "k")
        n, k, m = args.n, args.k, args.m
        if kind == "tree":
            objects = enumerate_trees(n, k)
        elif kind == "dyck":
            objects = enumerate_dyck_paths(n, k)
        elif kind == "paths":
            objects = list(enumerate_path_pairs(n, k))
        elif kind == "diagram":
            objects = enumerate_diagrams(n, k, m)
        elif kind == "graph":
            objects = enumerate_bcfw_graphs(n, k, m)
        else:
            objects = bcfw_permutations(n, k, m)
    if args.format == "json":
        json.dump([o.to_json() for o in objects], out)
        out.write("\n")
    elif args.format == "tsv":
        for o in objects:
            out.write(json.dumps(o.to_json(), sort_keys=True) + "\n")
    else:
        if kind == "tree":
            out.write("\n".join(str(o) for o in objects) + "\n")
        elif kind in ("dyck", "diagram"):
            out.write("\n\n".join(o.ascii_art() for o in objects) + "\n")
        else:
            raise BadRange(f"ascii output is not available for kind {kind!r}")
    return 0


def _cmd_convert(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    arrow = _ARROWS.get((args.source, args.target))
    if arrow is None:
        supported = ", ".join(f"{s}->{t}" for s, t in sorted(_ARROWS))
        raise BadRange(f"no conversion {args.source} -> {args.target}; "
                       f"supported: {supported}")
    obj = _load(args.source, json.load(stdin), args.m)
    result = arrow(obj, args)
    json.dump(result.to_json(), out)
    out.write("\n")
    return 0


def _cmd_sample(args: argparse.Namespace, out: TextIO) -> int:
    _require(args, "n", "k")
    cells = enumerate_diagrams(args.n, args.k, args.m)
    if args.cell is None:
        indices = range(len(cells))
    else:
        if not 0 <= args.cell < len(cells):
            raise BadRange(f"--cell must be in 0..{len(cells) - 1}")
        indices = [args.cell]
    result = []
    for ci in indices:
        cell = le_normalize(cells[ci]) if args.m == 4 else cells[ci]
        draws = [
            sample_cell(cell, rng=args.seed * 1_000_003 + ci * 1_009 + s).to_json()
            for s in range(args.count)
        ]
        result.append({"cell": ci, "diagram": cells[ci].to_json(), "samples": draws})
    json.dump(result, out)
    out.write("\n")
    return 0


def _cmd_verify(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    data = json.load(stdin)
    if args.kind == "diagram":
        ok = is_le_diagram(OPlusDiagram.from_json(data))
        json.dump({"le": ok}, out)
    else:
        matrix = RationalMatrix.from_json(data["matrix"])
        diagram = le_normalize(OPlusDiagram.from_json(data["diagram"]))
        ok = positroid_membership(matrix, diagram)
        json.dump({"member": ok}, out)
    out.write("\n")
    return 0 if ok else 1


def _cmd_experiment(args: argparse.Namespace, out: TextIO) -> int:
    if args.name == "counts":
        report = count_report(args.n_max)
    elif args.name == "disjointness":
        _require(args, "n", "k")
        report = disjointness_experiment(args.n, args.k, args.m,
                                         samples=args.samples, seed=args.seed)
    elif args.name == "m3-counterexample":
        report = m3_counterexample(seed=args.seed)
    else:
        report = conjecture_sweeps(args.n_max, samples=args.samples, seed=args.seed)
    if args.format == "tsv":
        out.write(report.to_tsv())
    else:
        json.dump(report.to_json(), out)
        out.write("\n")
    return 1 if report.verdict == "violation" else 0


def _cmd_render(args: argparse.Namespace, stdin: TextIO, out: TextIO) -> int:
    data = json.load(stdin)
    if args.kind == "network":
        # networks are built, not parsed: accept a diagram and hook it up
        obj = build_network(le_normalize(OPlusDiagram.from_json(data)))
    else:
        obj = _load(args.kind, data, args.m)
    if args.format == "svg":
        out.write(_render_svg(args.kind, obj) + "\n")
    else:
        out.write(_render_ascii(args.kind, obj) + "\n")
    return 0


# ----------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="positroids",
        description="Exact combinatorics of nonnegative Grassmannian cells: "
                    "enumeration, bijections, sampling, and verification "
                    "experiments.  JSON in, JSON out.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    en = sub.add_parser("enumerate", help="list a family as JSON")
    en.add_argument("--kind", required=True,
                    choices=["tree", "dyck", "paths", "diagram", "graph",
                             "permutation", "pathtuple"])
    en.add_argument("--n", type=int)
    en.add_argument("--k", type=int,
                    help="cell rank (graph kind: trip k-statistic)")
    en.add_argument("--m", type=int, default=4)
    en.add_argument("--a", type=int, help="pathtuple box rows")
    en.add_argument("--b", type=int, help="pathtuple box columns")
    en.add_argument("--c", type=int, help="pathtuple path count")
    en.add_argument("--format", choices=["json", "tsv", "ascii"], default="json")

    cv = sub.add_parser("convert", help="apply a bijection to a JSON object on stdin")
    kinds = ["tree", "graph", "paths", "dyck", "diagram", "permutation",
             "network", "planepartition"]
    cv.add_argument("--from", dest="source", required=True, choices=kinds)
    cv.add_argument("--to", dest="target", required=True, choices=kinds)
    cv.add_argument("--shift", type=int, default=0,
                    help="rotate the trip permutation (permutation targets)")
    cv.add_argument("--m", type=int, default=4)

    sp = sub.add_parser("sample", help="draw exact points from cells")
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--m", type=int, default=4)
    sp.add_argument("--cell", type=int, help="single cell index (default: all)")
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)

    vf = sub.add_parser("verify", help="check an object read from stdin")
    vf.add_argument("--kind", required=True, choices=["diagram", "membership"])

    ex = sub.add_parser("experiment", help="run a verification experiment")
    exsub = ex.add_subparsers(dest="name", required=True)
    counts = exsub.add_parser("counts")
    counts.add_argument("--n-max", type=int, default=10)
    counts.add_argument("--format", choices=["json", "tsv"], default="json")
    dis = exsub.add_parser("disjointness")
    dis.add_argument("--n", type=int)
    dis.add_argument("--k", type=int)
    dis.add_argument("--m", type=int, default=4)
    dis.add_argument("--samples", type=int, default=5)
    dis.add_argument("--seed", type=int, default=0)
    dis.add_argument("--format", choices=["json", "tsv"], default="json")
    m3 = exsub.add_parser("m3-counterexample")
    m3.add_argument("--seed", type=int, default=0)
    m3.add_argument("--format", choices=["json", "tsv"], default="json")
    sw = exsub.add_parser("sweeps")
    sw.add_argument("--n-max", type=int, default=7)
    sw.add_argument("--samples", type=int, default=3)
    sw.add_argument("--seed", type=int, default=0)
    sw.add_argument("--format", choices=["json", "tsv"], default="json")

    rd = sub.add_parser("render", help="draw a JSON object from stdin")
    rd.add_argument("--kind", required=True,
                    choices=["tree", "dyck", "paths", "diagram", "graph",
                             "network", "permutation", "planepartition"])
    rd.add_argument("--format", choices=["svg", "ascii"], default="svg")
    rd.add_argument("--m", type=int, default=4)

    return parser


def run(argv, stdin: Optional[TextIO] = None, stdout: Optional[TextIO] = None) -> int:
    """Execute one command line; returns the exit code without exiting."""
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        if args.verb == "enumerate":
            return _cmd_enumerate(args, stdout)
        if args.verb == "convert":
            return _cmd_convert(args, stdin, stdout)
        if args.verb == "sample":
            return _cmd_sample(args, stdout)
        if args.verb == "verify":
            return _cmd_verify(args, stdin, stdout)
        if args.verb == "experiment":
            return _cmd_experiment(args, stdout)
        return _cmd_render(args, stdin, stdout)
    except (PositroidError, ValueError, KeyError, TypeError) as exc:
        print(parser.format_usage(), end="", file=sys.stderr)
        print(f"positroids: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
