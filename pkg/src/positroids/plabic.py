"""Planar bicolored graphs in a disk: trips, surgeries, recursive families.

A graph is stored as a rotation system.  Boundary vertices are 1..n
clockwise around the disk and always have degree one; internal vertices
are negative integers carrying a color.  Edge j owns half-edges 2j and
2j+1, located at edges[j][0] and edges[j][1] respectively, and every
vertex lists its incident half-edges in clockwise order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .diagrams import OPlusDiagram, is_le_diagram
from .errors import (
    BadAttachment,
    BadBoundary,
    BadRange,
    MissingVariable,
    NonLollipopFixedPoint,
    NotLe,
)
from .permutations import BLACK, WHITE, DecoratedPermutation


@dataclass(frozen=True, eq=False)
class PlabicGraph:
    n: int
    colors: Mapping[int, str]
    edges: tuple[tuple[int, int], ...]
    rotation: Mapping[int, tuple[int, ...]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_canon", None)
        for b in range(1, self.n + 1):
            if len(self.rotation.get(b, ())) != 1:
                raise ValueError(f"boundary vertex {b} must have degree one")
        for v, color in self.colors.items():
            if v >= 0:
                raise ValueError("internal vertices must use negative ids")
            if color not in (BLACK, WHITE):
                raise ValueError(f"bad color {color!r}")
        incident: dict[int, list[int]] = {}
        for j in range(len(self.edges)):
            a, b = self.edges[j]
            incident.setdefault(a, []).append(2 * j)
            incident.setdefault(b, []).append(2 * j + 1)
        for v, halves in incident.items():
            if sorted(self.rotation.get(v, ())) != sorted(halves):
                raise ValueError(f"rotation at {v} does not match its half-edges")
        for v in self.colors:
            if v not in self.rotation:
                raise ValueError(f"internal vertex {v} is isolated")

    # ------------------------------------------------------------------
    # structure

    def vertex_of(self, half: int) -> int:
        return self.edges[half // 2][half % 2]

    @staticmethod
    def partner(half: int) -> int:
        return half ^ 1

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(self.vertex_of(self.partner(h)) for h in self.rotation[v])

    def boundary_neighbor(self, i: int) -> int:
        """The unique vertex attached to boundary i."""
        return self.vertex_of(self.partner(self.rotation[i][0]))

    def internal_vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.colors, reverse=True))

    # ------------------------------------------------------------------
    # canonical form and equality

    def canonical_form(self) -> tuple:
        """Serialization invariant under renaming of internal vertices.

        Breadth-first from each unvisited boundary vertex in label
        order, expanding neighbors clockwise from the arrival half-edge,
        so isomorphic embeddings relabel identically.
        """
        if self._canon is not None:
            return self._canon
        canon: dict[int, int] = {}
        arrival: dict[int, int] = {}
        next_id = self.n
        for b in range(1, self.n + 1):
            if b in canon:
                continue
            canon[b] = b
            arrival[b] = self.rotation[b][0]
            queue = [b]
            while queue:
                v = queue.pop(0)
                halves = self.rotation[v]
                at = halves.index(arrival[v])
                for h in halves[at:] + halves[:at]:
                    u = self.vertex_of(self.partner(h))
                    if u not in canon:
                        if u < 0:
                            next_id += 1
                            canon[u] = next_id
                        else:
                            canon[u] = u
                        arrival[u] = self.partner(h)
                        queue.append(u)
        if len(canon) < len(self.rotation):
            raise ValueError("graph has a component without boundary vertices")
        colors = tuple(sorted((canon[v], c) for v, c in self.colors.items()))
        edges = tuple(
            sorted(tuple(sorted((canon[a], canon[b]))) for a, b in self.edges)
        )
        rotations = []
        for v in self.colors:
            cycle = tuple(
                canon[self.vertex_of(self.partner(h))] for h in self.rotation[v]
            )
            rotations.append((canon[v], _min_cyclic(cycle)))
        form = (self.n, colors, edges, tuple(sorted(rotations)))
        object.__setattr__(self, "_canon", form)
        return form

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlabicGraph):
            return NotImplemented
        return self.canonical_form() == other.canonical_form()

    def __hash__(self) -> int:
        return hash(self.canonical_form())

    # ------------------------------------------------------------------
    # construction and serialization

    @classmethod
    def from_neighbors(
        cls,
        n: int,
        colors: Mapping[int, str],
        adjacency: Mapping[int, Sequence[int]],
    ) -> "PlabicGraph":
        """Build from clockwise neighbor lists.  No parallel edges."""
        edges: list[tuple[int, int]] = []
        index: dict[tuple[int, int], int] = {}
        for v in sorted(adjacency):
            for u in adjacency[v]:
                if (u, v) not in index:
                    index[(v, u)] = len(edges)
                    edges.append((v, u))
        rotation = {}
        for v, nbrs in adjacency.items():
            halves = []
            for u in nbrs:
                if (v, u) in index:
                    halves.append(2 * index[(v, u)])
                else:
                    halves.append(2 * index[(u, v)] + 1)
            rotation[v] = tuple(halves)
        return cls(n, dict(colors), tuple(edges), rotation)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "internal": [
                {"id": v, "color": self.colors[v]} for v in self.internal_vertices()
            ],
            "edges": [list(e) for e in self.edges],
            "rotation": {str(v): list(h) for v, h in self.rotation.items()},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PlabicGraph":
        return cls(
            int(data["n"]),
            {int(item["id"]): str(item["color"]) for item in data["internal"]},
            tuple((int(a), int(b)) for a, b in data["edges"]),
            {int(v): tuple(int(h) for h in hs) for v, hs in data["rotation"].items()},
        )

    def to_svg(self) -> str:
        import math

        radius = 150.0
        cx = cy = radius + 20
        pos: dict[int, tuple[float, float]] = {}
        for b in range(1, self.n + 1):
            ang = math.pi / 2 - 2 * math.pi * (b - 1) / max(self.n, 1)
            pos[b] = (cx + radius * math.cos(ang), cy - radius * math.sin(ang))
        depth = _bfs_depth(self)
        max_depth = max(depth.values(), default=1) or 1
        rings: dict[int, list[int]] = {}
        for v in self.internal_vertices():
            rings.setdefault(depth.get(v, max_depth), []).append(v)
        for d, vs in sorted(rings.items()):
            r = radius * (1 - d / (max_depth + 1))
            for idx, v in enumerate(sorted(vs, reverse=True)):
                ang = math.pi / 2 - 2 * math.pi * idx / len(vs) - 0.3 * d
                pos[v] = (cx + r * math.cos(ang), cy - r * math.sin(ang))
        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{2 * cx:.0f}" '
            f'height="{2 * cy:.0f}" viewBox="0 0 {2 * cx:.0f} {2 * cy:.0f}">',
            f'<circle cx="{cx}" cy="{cy}" r="{radius}" fill="none" stroke="#bbb"/>',
        ]
        for a, b in self.edges:
            (x1, y1), (x2, y2) = pos[a], pos[b]
            parts.append(
                f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
                'stroke="black"/>'
            )
        for v, (x, y) in pos.items():
            if v > 0:
                parts.append(
                    f'<text x="{x:.1f}" y="{y:.1f}" font-size="12" '
                    f'text-anchor="middle">{v}</text>'
                )
            else:
                fill = "black" if self.colors[v] == BLACK else "white"
                parts.append(
                    f'<circle cx="{x:.1f}" cy="{y:.1f}" r="6" fill="{fill}" '
                    'stroke="black"/>'
                )
        parts.append("</svg>")
        return "".join(parts)


def _min_cyclic(cycle: tuple) -> tuple:
    if not cycle:
        return cycle
    return min(cycle[i:] + cycle[:i] for i in range(len(cycle)))


def _bfs_depth(g: PlabicGraph) -> dict[int, int]:
    depth = {b: 0 for b in range(1, g.n + 1)}
    queue = list(depth)
    while queue:
        v = queue.pop(0)
        for u in g.neighbors(v):
            if u not in depth:
                depth[u] = depth[v] + 1
                queue.append(u)
    return {v: d for v, d in depth.items() if v < 0}


# ----------------------------------------------------------------------
# trips


def trip_permutation(graph: PlabicGraph) -> DecoratedPermutation:
    """Follow each boundary wire through the graph.

    Arriving at a black vertex the wire leaves through the clockwise
    predecessor of its arrival half-edge, at a white vertex through the
    successor.  A wire returning to its start must come from a lollipop,
    whose color decorates the fixed point.
    """
    images = []
    white = set()
    for i in range(1, graph.n + 1):
        start = graph.rotation[i][0]
        cur = start
        while True:
            arriving = graph.partner(cur)
            v = graph.vertex_of(arriving)
            if v > 0:
                end = v
                break
            halves = graph.rotation[v]
            at = halves.index(arriving)
            step = -1 if graph.colors[v] == BLACK else 1
            cur = halves[(at + step) % len(halves)]
        images.append(end)
        if end == i:
            neighbor = graph.boundary_neighbor(i)
            if neighbor > 0 or graph.degree(neighbor) != 1:
                raise NonLollipopFixedPoint(
                    f"boundary {i} returns to itself without a lollipop"
                )
            if graph.colors[neighbor] == WHITE:
                white.add(i)
    return DecoratedPermutation(graph.n, tuple(images), frozenset(white))


def k_statistic(graph: PlabicGraph) -> int:
    """Edge count minus black vertices minus white excess degree."""
    white_excess = sum(
        graph.degree(v) - 1 for v, c in graph.colors.items() if c == WHITE
    )
    blacks = sum(1 for c in graph.colors.values() if c == BLACK)
    return len(graph.edges) - blacks - white_excess


# ----------------------------------------------------------------------
# boundary surgeries


def _relabel_boundary(graph: PlabicGraph, i: int) -> tuple[list, dict, dict]:
    """Shift boundary labels above i up by one; returns mutable copies."""

    def mapv(v: int) -> int:
        return v + 1 if v > i else v

    edges = [(mapv(a), mapv(b)) for a, b in graph.edges]
    rotation = {mapv(v): list(h) for v, h in graph.rotation.items()}
    colors = dict(graph.colors)
    return edges, rotation, colors


def split(graph: PlabicGraph, i: int, color: str) -> PlabicGraph:
    """Insert a colored vertex on the edge of boundary i, feeding two
    boundaries.

    The new vertex has clockwise rotation (far end, i, i+1); boundary
    labels above i shift up by one.
    """
    if not 1 <= i <= graph.n:
        raise BadBoundary(f"no boundary vertex {i}")
    if color not in (BLACK, WHITE):
        raise ValueError(f"bad color {color!r}")
    h_i = graph.rotation[i][0]
    old_edge = h_i // 2
    edges, rotation, colors = _relabel_boundary(graph, i)
    v_new = min([0, *colors]) - 1
    colors[v_new] = color
    far = edges[old_edge][1 - h_i % 2]
    base = len(edges)
    edges.append((far, v_new))
    edges.append((v_new, i))
    edges.append((v_new, i + 1))
    h_far = graph.partner(h_i)
    rotation[far][rotation[far].index(h_far)] = 2 * base
    rotation[v_new] = [2 * base + 1, 2 * (base + 1), 2 * (base + 2)]
    rotation[i] = [2 * (base + 1) + 1]
    rotation[i + 1] = [2 * (base + 2) + 1]
    return _compact(graph.n + 1, colors, edges, rotation, drop={old_edge})


def blow_up(graph: PlabicGraph, i: int) -> PlabicGraph:
    """Replace the trivalent vertex at boundary i by an alternating
    square spanning boundaries i and i+1.

    Reading the old vertex clockwise from the boundary as (i, e, f), the
    square corner toward e is black, toward f white, at boundary i
    black, and at the new boundary i+1 white.
    """
    if not 1 <= i <= graph.n:
        raise BadBoundary(f"no boundary vertex {i}")
    h_i = graph.rotation[i][0]
    v = graph.vertex_of(graph.partner(h_i))
    if v > 0 or graph.degree(v) != 3:
        raise BadAttachment(f"boundary {i} is not attached to a trivalent vertex")
    halves = graph.rotation[v]
    at = halves.index(graph.partner(h_i))
    h_to_e, h_to_f = halves[(at + 1) % 3], halves[(at + 2) % 3]
    edge_e, edge_f, edge_i = h_to_e // 2, h_to_f // 2, h_i // 2

    edges, rotation, colors = _relabel_boundary(graph, i)
    del colors[v]
    del rotation[v]
    low = min([0, *colors]) - 1
    a, b, c, d = low, low - 1, low - 2, low - 3
    colors.update({a: BLACK, b: WHITE, c: BLACK, d: WHITE})

    # rewriting ends in place keeps half-edge ids valid at far endpoints
    edges[edge_e] = _swap_end(edges[edge_e], h_to_e % 2, a)
    edges[edge_f] = _swap_end(edges[edge_f], h_to_f % 2, b)
    edges[edge_i] = _swap_end(edges[edge_i], graph.partner(h_i) % 2, c)
    base = len(edges)
    edges.append((a, b))
    edges.append((b, c))
    edges.append((c, d))
    edges.append((d, a))
    edges.append((d, i + 1))
    rotation[a] = [h_to_e, 2 * base, 2 * (base + 3) + 1]
    rotation[b] = [h_to_f, 2 * (base + 1), 2 * base + 1]
    rotation[c] = [2 * (base + 1) + 1, graph.partner(h_i), 2 * (base + 2)]
    rotation[d] = [2 * (base + 3), 2 * (base + 2) + 1, 2 * (base + 4)]
    rotation[i + 1] = [2 * (base + 4) + 1]
    return _compact(graph.n + 1, colors, edges, rotation, drop=set())


def _swap_end(edge: tuple[int, int], side: int, v: int) -> tuple[int, int]:
    ends = list(edge)
    ends[side] = v
    return (ends[0], ends[1])


def _compact(
    n: int, colors: dict, edges: list, rotation: dict, drop: set
) -> PlabicGraph:
    keep = [j for j in range(len(edges)) if j not in drop]
    remap = {j: jj for jj, j in enumerate(keep)}
    new_edges = tuple(edges[j] for j in keep)
    new_rotation = {
        v: tuple(2 * remap[h // 2] + h % 2 for h in halves)
        for v, halves in rotation.items()
    }
    return PlabicGraph(n, colors, new_edges, new_rotation)


# ----------------------------------------------------------------------
# recursive families


def base_bridge() -> PlabicGraph:
    """The two-point graph: a single boundary-to-boundary edge."""
    return PlabicGraph(2, {}, ((1, 2),), {1: (0,), 2: (1,)})


def base_square() -> PlabicGraph:
    """The four-point square with alternating colors."""
    return PlabicGraph.from_neighbors(
        4,
        {-1: WHITE, -2: BLACK, -3: WHITE, -4: BLACK},
        {
            1: (-1,),
            2: (-2,),
            3: (-3,),
            4: (-4,),
            -1: (1, -2, -4),
            -2: (-1, 2, -3),
            -3: (-4, -2, 3),
            -4: (4, -1, -3),
        },
    )


_FAMILY_CACHE: dict[tuple[int, int, int], tuple[PlabicGraph, ...]] = {}


def enumerate_bcfw_graphs(n: int, k: int, m: int) -> list[PlabicGraph]:
    """All graphs of the recursive family, deduplicated up to isomorphism."""
    if m == 2:
        if n < 2 or not 1 <= k <= n - 1:
            raise BadRange(f"no m=2 graph family for n={n}, k={k}")
    elif m == 4:
        if n < 4 or not 2 <= k <= n - 2:
            raise BadRange(f"no m=4 graph family for n={n}, k={k}")
    else:
        raise BadRange(f"graph families exist for m in {{2, 4}}, not m={m}")
    return list(_family(n, k, m))


def _family(n: int, k: int, m: int) -> tuple[PlabicGraph, ...]:
    key = (n, k, m)
    if key not in _FAMILY_CACHE:
        out: list[PlabicGraph] = []
        seen: set[PlabicGraph] = set()
        if m == 2:
            if n == 2:
                out = [base_bridge()] if k == 1 else []
            else:
                parents = []
                if k <= n - 2:
                    parents += [(g, WHITE) for g in _family(n - 1, k, 2)]
                if k >= 2:
                    parents += [(g, BLACK) for g in _family(n - 1, k - 1, 2)]
                for g, color in parents:
                    child = split(g, n - 1, color)
                    if child not in seen:
                        seen.add(child)
                        out.append(child)
        else:
            if n == 4:
                out = [base_square()] if k == 2 else []
            else:
                parents = []
                if k <= n - 3:
                    parents += [(g, BLACK) for g in _family(n - 1, k, 4)]
                if k >= 3:
                    parents += [(g, WHITE) for g in _family(n - 1, k - 1, 4)]
                for g, want in parents:
                    for i in range(2, n - 1):
                        anchor = g.boundary_neighbor(i)
                        if anchor < 0 and g.colors[anchor] == want:
                            child = blow_up(g, i)
                            if child not in seen:
                                seen.add(child)
                                out.append(child)
        _FAMILY_CACHE[key] = tuple(out)
    return _FAMILY_CACHE[key]


def bcfw_permutations(n: int, k: int, m: int) -> list[DecoratedPermutation]:
    """Shifted trip permutations of the graph family, fixed points black."""
    if m not in (2, 4):
        raise BadRange(f"permutation families exist for m in {{2, 4}}, not m={m}")
    if k < 0 or k > n - m:
        raise BadRange(f"no permutation family for n={n}, k={k}, m={m}")
    shift = m // 2
    return [trip_permutation(g).left_shift(shift) for g in _family(n, k + shift, m)]


# ----------------------------------------------------------------------
# graphs from diagrams


def _hook_targets(diagram: OPlusDiagram):
    """Per + box: next + east, next + south, and west/north presence."""
    pluses = set(diagram.plus_boxes())
    info = {}
    for r, c in sorted(pluses):
        east = next(
            (
                (r, cc)
                for cc in range(c + 1, diagram.shape[r - 1] + 1)
                if (r, cc) in pluses
            ),
            None,
        )
        south = next(
            (
                (rr, c)
                for rr in range(r + 1, diagram.k + 1)
                if diagram.shape[rr - 1] >= c and (rr, c) in pluses
            ),
            None,
        )
        west = any((r, cc) in pluses for cc in range(1, c))
        north = any((rr, c) in pluses for rr in range(1, r))
        info[(r, c)] = (east, south, west, north)
    return info


def graph_from_le(diagram: OPlusDiagram) -> PlabicGraph:
    """The bicolored graph whose trips reproduce the diagram's wiring.

    A + box with only outgoing hook directions is a bare wire; with a +
    to its west it gains a white vertex, with a + above a black one, and
    with both it splits into a black/white pair joined by an edge.
    Empty rows and columns become white and black lollipops.
    """
    if not is_le_diagram(diagram):
        raise NotLe("diagram must satisfy the row-column sorting property")
    sources, columns = diagram.border_labels()
    info = _hook_targets(diagram)

    colors: dict[int, str] = {}
    ports: dict[tuple[tuple[int, int], str], int] = {}
    counter = [0]

    def new_vertex(color: str) -> int:
        counter[0] -= 1
        colors[counter[0]] = color
        return counter[0]

    bent: set[tuple[int, int]] = set()
    for box in sorted(info):
        _, _, west, north = info[box]
        if not west and not north:
            bent.add(box)
        elif west and not north:
            w = new_vertex(WHITE)
            ports[(box, "E")] = ports[(box, "S")] = ports[(box, "W")] = w
        elif north and not west:
            b = new_vertex(BLACK)
            ports[(box, "N")] = ports[(box, "E")] = ports[(box, "S")] = b
        else:
            b = new_vertex(BLACK)
            w = new_vertex(WHITE)
            ports[(box, "N")] = ports[(box, "E")] = b
            ports[(box, "S")] = ports[(box, "W")] = w

    def east_port(box):
        east = info[box][0]
        if east is None:
            return ("boundary", sources[box[0] - 1])
        return (east, "W")

    def south_port(box):
        south = info[box][1]
        if south is None:
            return ("boundary", columns[box[1]])
        return (south, "N")

    links: list[tuple] = []
    for box in sorted(info):
        if box in bent:
            links.append((east_port(box), south_port(box)))
        else:
            links.append(((box, "E"), east_port(box)))
            links.append(((box, "S"), south_port(box)))
            if info[box][2] and info[box][3]:
                links.append(((box, "DB"), (box, "DW")))
    for r in range(1, diagram.k + 1):
        if "+" not in diagram.rows[r - 1]:
            links.append(
                (("lollipop", new_vertex(WHITE)), ("boundary", sources[r - 1]))
            )
    for c in range(1, diagram.n - diagram.k + 1):
        column_has_plus = any(
            diagram.fill(r, c) == "+" for r in range(1, diagram.column_height(c) + 1)
        )
        if not column_has_plus:
            links.append((("lollipop", new_vertex(BLACK)), ("boundary", columns[c])))

    def owner(port) -> int:
        if port[0] in ("boundary", "lollipop"):
            return port[1]
        box, direction = port
        if direction == "DB":
            return ports[(box, "N")]
        if direction == "DW":
            return ports[(box, "S")]
        return ports[(box, direction)]

    half_at: dict[tuple, int] = {}
    edges: list[tuple[int, int]] = []
    for pa, pb in links:
        j = len(edges)
        edges.append((owner(pa), owner(pb)))
        half_at[pa] = 2 * j
        half_at[pb] = 2 * j + 1

    rotation: dict[int, tuple[int, ...]] = {}
    for b in range(1, diagram.n + 1):
        rotation[b] = (half_at[("boundary", b)],)
    for port, h in half_at.items():
        if port[0] == "lollipop":
            rotation[port[1]] = (h,)
    for box in info:
        if box in bent:
            continue
        _, _, west, north = info[box]
        if west and north:
            rotation[ports[(box, "N")]] = (
                half_at[(box, "N")],
                half_at[(box, "E")],
                half_at[(box, "DB")],
            )
            rotation[ports[(box, "S")]] = (
                half_at[(box, "DW")],
                half_at[(box, "S")],
                half_at[(box, "W")],
            )
        elif west:
            rotation[ports[(box, "E")]] = (
                half_at[(box, "E")],
                half_at[(box, "S")],
                half_at[(box, "W")],
            )
        else:
            rotation[ports[(box, "N")]] = (
                half_at[(box, "N")],
                half_at[(box, "E")],
                half_at[(box, "S")],
            )
    return PlabicGraph(diagram.n, colors, tuple(edges), rotation)


# ----------------------------------------------------------------------
# weighted networks from diagrams


@dataclass(frozen=True)
class Network:
    """Edge-weighted planar network read off a sorted diagram.

    Horizontal edges carry the variables, numbered row by row starting
    at the east border of each row; vertical edges have weight one.
    Sources index the matrix rows, every boundary label a column.
    """

    k: int
    n: int
    sources: tuple[int, ...]
    sinks: Mapping[int, int]
    variables: tuple[str, ...]
    horizontal: tuple[tuple[str, tuple, tuple], ...]
    vertical: tuple[tuple[tuple, tuple], ...]

    def matrix(self, values: Mapping[str, object]) -> list[list[Fraction]]:
        """Boundary measurements: signed path sums, one row per source."""
        missing = [name for name in self.variables if name not in values]
        if missing:
            raise MissingVariable(f"no value for {', '.join(missing)}")
        vals = {name: Fraction(values[name]) for name in self.variables}

        out_h: dict[tuple, tuple[str, tuple]] = {}
        entry: dict[int, tuple[str, tuple]] = {}
        for name, tail, head in self.horizontal:
            if tail[0] == "source":
                entry[tail[1]] = (name, head)
            else:
                out_h[tail] = (name, head)
        out_v = {tail: head for tail, head in self.vertical}

        paths: dict[tuple, dict[int, Fraction]] = {}
        for box in sorted(out_v, key=lambda box: (box[1], -box[0])):
            total: dict[int, Fraction] = {}
            head = out_v[box]
            if head[0] == "sink":
                total[head[1]] = Fraction(1)
            else:
                for label, weight in paths[head].items():
                    total[label] = total.get(label, Fraction(0)) + weight
            if box in out_h:
                name, west = out_h[box]
                for label, weight in paths[west].items():
                    total[label] = total.get(label, Fraction(0)) + vals[name] * weight
            paths[box] = total

        rows = []
        for s in self.sources:
            row = [Fraction(0)] * (self.n + 1)
            row[s] = Fraction(1)
            if s in entry:
                name, head = entry[s]
                for label, weight in paths[head].items():
                    between = sum(1 for t in self.sources if s < t < label)
                    row[label] = (-1) ** between * vals[name] * weight
            rows.append(row[1:])
        return rows

    def ones(self) -> dict[str, int]:
        """A value for every variable, all equal to one."""
        return {name: 1 for name in self.variables}

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "sources": list(self.sources),
            "sinks": {str(c): label for c, label in sorted(self.sinks.items())},
            "variables": list(self.variables),
            "horizontal": [
                {"name": name, "from": list(tail), "to": list(head)}
                for name, tail, head in self.horizontal
            ],
            "vertical": [
                {"from": list(tail), "to": list(head)} for tail, head in self.vertical
            ],
        }


def build_network(diagram: OPlusDiagram) -> Network:
    """Hook the + boxes of a sorted diagram into a weighted network."""
    if not is_le_diagram(diagram):
        raise NotLe("diagram must satisfy the row-column sorting property")
    sources, columns = diagram.border_labels()
    pluses = set(diagram.plus_boxes())

    variables: list[str] = []
    horizontal: list[tuple[str, tuple, tuple]] = []
    for r in range(1, diagram.k + 1):
        row_cols = sorted((c for rr, c in pluses if rr == r), reverse=True)
        if not row_cols:
            continue
        chain: list[tuple] = [("source", sources[r - 1])]
        chain += [(r, c) for c in row_cols]
        for tail, head in zip(chain, chain[1:]):
            name = f"a{len(variables) + 1}"
            variables.append(name)
            horizontal.append((name, tail, head))

    vertical: list[tuple[tuple, tuple]] = []
    for (r, c) in sorted(pluses):
        below = next(
            (
                (rr, c)
                for rr in range(r + 1, diagram.k + 1)
                if diagram.shape[rr - 1] >= c and (rr, c) in pluses
            ),
            None,
        )
        vertical.append(((r, c), below if below else ("sink", columns[c])))

    return Network(
        k=diagram.k,
        n=diagram.n,
        sources=sources,
        sinks=dict(columns),
        variables=tuple(variables),
        horizontal=tuple(horizontal),
        vertical=tuple(vertical),
    )
