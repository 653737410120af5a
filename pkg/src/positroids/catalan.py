"""Binary trees, lattice-path pairs, Dyck paths, and plane partitions.

Four Catalan-family indexings of the same cell collection, with the
bijections among them and down to plabic graphs and diagrams.  Path
words are read from the northeast corner: H steps west, V steps south.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional

from .diagrams import _young_rows, is_noncrossing, noncrossing_pairs
from .errors import BadRange, Crossing, NotBCFWGraph
from .plabic import (
    PlabicGraph,
    base_square,
    blow_up,
    k_statistic,
)


# ----------------------------------------------------------------------
# binary trees


@dataclass(frozen=True)
class BinaryTree:
    """Complete rooted binary tree with ordered (horizontal, vertical) children.

    A node is a leaf exactly when both children are None.  Leaves are
    labeled 2..n-1 by a depth-first search taking horizontal children
    first, so the label-2 leaf hangs off the all-horizontal spine.
    """

    horizontal: Optional["BinaryTree"] = None
    vertical: Optional["BinaryTree"] = None

    def __post_init__(self) -> None:
        if (self.horizontal is None) != (self.vertical is None):
            raise ValueError("a node has either two children or none")

    @property
    def is_leaf(self) -> bool:
        return self.horizontal is None

    def leaf_count(self) -> int:
        if self.is_leaf:
            return 1
        return self.horizontal.leaf_count() + self.vertical.leaf_count()

    def horizontal_leaf_count(self) -> int:
        """Number of leaves that are horizontal children."""
        if self.is_leaf:
            return 0
        total = 1 if self.horizontal.is_leaf else self.horizontal.horizontal_leaf_count()
        if not self.vertical.is_leaf:
            total += self.vertical.horizontal_leaf_count()
        return total

    @property
    def n(self) -> int:
        return self.leaf_count() + 2

    @property
    def k(self) -> int:
        return self.horizontal_leaf_count() - 1

    def reflect(self) -> "BinaryTree":
        """Swap the two children of every internal node."""
        if self.is_leaf:
            return self
        return BinaryTree(self.vertical.reflect(), self.horizontal.reflect())

    def to_json(self):
        if self.is_leaf:
            return "leaf"
        return {
            "horizontal": self.horizontal.to_json(),
            "vertical": self.vertical.to_json(),
        }

    @classmethod
    def from_json(cls, data) -> "BinaryTree":
        if data == "leaf":
            return cls()
        return cls(
            cls.from_json(data["horizontal"]),
            cls.from_json(data["vertical"]),
        )

    def __str__(self) -> str:
        if self.is_leaf:
            return "*"
        return f"({self.horizontal} {self.vertical})"


_LEAF = BinaryTree()


@lru_cache(maxsize=None)
def _tree_shapes(leaves: int) -> tuple[BinaryTree, ...]:
    if leaves == 1:
        return (_LEAF,)
    out = []
    for left in range(1, leaves):
        for h in _tree_shapes(left):
            for v in _tree_shapes(leaves - left):
                out.append(BinaryTree(h, v))
    return tuple(out)


def enumerate_trees(n: int, k: int) -> list[BinaryTree]:
    """All trees with n-2 leaves of which exactly k+1 are horizontal children."""
    if n < 4 or k < 0 or k > n - 4:
        raise BadRange(f"need n >= 4 and 0 <= k <= n-4, got n={n}, k={k}")
    return [t for t in _tree_shapes(n - 2) if t.horizontal_leaf_count() == k + 1]


def _collapse_first(tree: BinaryTree) -> tuple[BinaryTree, int]:
    """Leaf the first internal node (depth-first, horizontal child first)
    whose children are both leaves; return the new tree and the label of
    the collapsed node's horizontal leaf."""

    def rec(t: BinaryTree, counter: int) -> tuple[BinaryTree, int]:
        if t.horizontal.is_leaf and t.vertical.is_leaf:
            return _LEAF, counter
        if not t.horizontal.is_leaf:
            sub, i = rec(t.horizontal, counter)
            return BinaryTree(sub, t.vertical), i
        # horizontal child is a leaf and eats one label
        sub, i = rec(t.vertical, counter + 1)
        return BinaryTree(t.horizontal, sub), i

    return rec(tree, 2)


def tree_to_graph(tree: BinaryTree) -> PlabicGraph:
    """Build the plabic graph of a tree by undoing leaf collapses as blow-ups."""
    if tree.is_leaf:
        raise BadRange("a bare leaf corresponds to no graph")
    ops = []
    t = tree
    while not (t.horizontal.is_leaf and t.vertical.is_leaf):
        t, i = _collapse_first(t)
        ops.append(i)
    g = base_square()
    for i in reversed(ops):
        g = blow_up(g, i)
    return g


@lru_cache(maxsize=None)
def _tree_by_graph(n: int, k: int) -> dict[PlabicGraph, BinaryTree]:
    return {tree_to_graph(t): t for t in enumerate_trees(n, k)}


def graph_to_tree(graph: PlabicGraph) -> BinaryTree:
    """Inverse of tree_to_graph."""
    n = graph.n
    k = k_statistic(graph) - 2
    if n < 4 or k < 0 or k > n - 4:
        raise NotBCFWGraph(f"no tree family matches n={n}, k={k + 2}")
    tree = _tree_by_graph(n, k).get(graph)
    if tree is None:
        raise NotBCFWGraph("graph is not produced by the recursion")
    return tree


# ----------------------------------------------------------------------
# path pairs


@dataclass(frozen=True)
class PathPair:
    """Noncrossing pair of lattice paths, upper weakly northeast of lower.

    Words start at the northeast corner of the k x b rectangle; H steps
    west and V steps south.  The helicity m is recorded but does not
    affect the words themselves.
    """

    wu: str
    wl: str
    m: int = 4

    def __post_init__(self) -> None:
        for word in (self.wu, self.wl):
            if set(word) - {"H", "V"}:
                raise ValueError("path words use only H and V")
        if len(self.wu) != len(self.wl):
            raise ValueError("the two words must have equal length")
        if self.wu.count("V") != self.wl.count("V"):
            raise ValueError("the two words must have equally many V steps")
        if not is_noncrossing(self.wu, self.wl):
            raise Crossing(f"lower path crosses above upper: {self.wu!r}, {self.wl!r}")

    @property
    def k(self) -> int:
        return self.wu.count("V")

    @property
    def b(self) -> int:
        return self.wu.count("H")

    @property
    def n(self) -> int:
        return self.k + self.b + self.m

    def to_json(self) -> dict:
        return {"wu": self.wu, "wl": self.wl}

    @classmethod
    def from_json(cls, data: dict, m: int = 4) -> "PathPair":
        return cls(data["wu"], data["wl"], m)

    def to_svg(self) -> str:
        cell = 24
        width = max(self.b, 1) * cell + 12
        height = max(self.k, 1) * cell + 12
        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">'
        ]
        for r in range(self.k + 1):
            y = r * cell + 6
            parts.append(
                f'<line x1="6" y1="{y}" x2="{self.b * cell + 6}" y2="{y}" '
                'stroke="#ccc"/>'
            )
        for c in range(self.b + 1):
            x = c * cell + 6
            parts.append(
                f'<line x1="{x}" y1="6" x2="{x}" y2="{self.k * cell + 6}" '
                'stroke="#ccc"/>'
            )
        for word, color, off in ((self.wl, "red", 2), (self.wu, "blue", -2)):
            x, y = self.b * cell + 6, 6
            pts = [f"{x + off},{y + off}"]
            for ch in word:
                if ch == "H":
                    x -= cell
                else:
                    y += cell
                pts.append(f"{x + off},{y + off}")
            parts.append(
                f'<polyline points="{" ".join(pts)}" fill="none" '
                f'stroke="{color}" stroke-width="2"/>'
            )
        parts.append("</svg>")
        return "".join(parts)


def enumerate_path_pairs(n: int, k: int) -> Iterator[PathPair]:
    """All noncrossing pairs with k V steps and n-k-4 H steps."""
    b = n - k - 4
    if n < 4 or k < 0 or b < 0:
        raise BadRange(f"need n >= 4 and 0 <= k <= n-4, got n={n}, k={k}")
    for wu, wl in noncrossing_pairs(k, b):
        yield PathPair(wu, wl)


def _pair_words(paths) -> tuple[str, str]:
    if hasattr(paths, "wu"):
        return paths.wu, paths.wl
    wu, wl = paths
    return wu, wl


# ----------------------------------------------------------------------
# tree -> path pair


def _words_recursive(t: BinaryTree) -> tuple[str, str]:
    h_leaf = t.horizontal.is_leaf
    v_leaf = t.vertical.is_leaf
    if h_leaf and v_leaf:
        return "", ""
    if not h_leaf and v_leaf:
        wu, wl = _words_recursive(t.horizontal)
        return "H" + wu, wl + "H"
    if h_leaf and not v_leaf:
        wu, wl = _words_recursive(t.vertical)
        return "V" + wu, "V" + wl
    au, al = _words_recursive(t.horizontal)
    bu, bl = _words_recursive(t.vertical)
    return "H" + au + "V" + bu, al + "H" + "V" + bl


def _words_readoff(tree: BinaryTree) -> tuple[str, str]:
    # upper word: internal edges in preorder, horizontal child first
    upper: list[str] = []

    def walk(t: BinaryTree) -> None:
        if not t.horizontal.is_leaf:
            upper.append("H")
            walk(t.horizontal)
        if not t.vertical.is_leaf:
            upper.append("V")
            walk(t.vertical)

    walk(tree)
    # lower word: leaves in label order, first and last dropped; a leaf
    # contributes V when it is a horizontal child, H when vertical
    lower: list[str] = []

    def leaves(t: BinaryTree) -> None:
        for child, letter in ((t.horizontal, "V"), (t.vertical, "H")):
            if child.is_leaf:
                lower.append(letter)
            else:
                leaves(child)

    leaves(tree)
    return "".join(upper), "".join(lower[1:-1])


def omega_TL(tree: BinaryTree) -> PathPair:
    """Word pair of a tree; the recursion and the read-off must agree."""
    if tree.is_leaf:
        raise BadRange("a bare leaf corresponds to no path pair")
    rec = _words_recursive(tree)
    off = _words_readoff(tree)
    assert rec == off, f"recursive words {rec} disagree with read-off {off}"
    return PathPair(*rec)


# ----------------------------------------------------------------------
# Dyck paths


@dataclass(frozen=True)
class DyckPath:
    """Balanced word over + (up) and - (down) staying weakly above the axis."""

    steps: str

    def __post_init__(self) -> None:
        if set(self.steps) - {"+", "-"}:
            raise ValueError("steps use only + and -")
        height = 0
        for ch in self.steps:
            height += 1 if ch == "+" else -1
            if height < 0:
                raise ValueError("path dips below the axis")
        if height != 0:
            raise ValueError("path must end on the axis")

    @property
    def n(self) -> int:
        return len(self.steps) // 2 + 3

    @property
    def peaks(self) -> int:
        return self.steps.count("+-")

    @property
    def k(self) -> int:
        return self.n - 3 - self.peaks

    @property
    def heights(self) -> tuple[int, ...]:
        out = [0]
        for ch in self.steps:
            out.append(out[-1] + (1 if ch == "+" else -1))
        return tuple(out)

    def to_json(self) -> str:
        return self.steps.replace("+", "U").replace("-", "D")

    @classmethod
    def from_json(cls, word: str) -> "DyckPath":
        return cls(word.replace("U", "+").replace("D", "-"))

    def ascii_art(self) -> str:
        heights = self.heights
        top = max(heights) if heights else 0
        grid = [[" "] * len(self.steps) for _ in range(top)]
        for x, ch in enumerate(self.steps):
            if ch == "+":
                grid[top - 1 - heights[x]][x] = "/"
            else:
                grid[top - heights[x]][x] = "\\"
        return "\n".join("".join(row).rstrip() for row in grid)


@lru_cache(maxsize=None)
def _dyck_words(length: int) -> tuple[str, ...]:
    if length == 0:
        return ("",)
    out = []
    for inner in range(0, length - 1, 2):
        for a in _dyck_words(inner):
            for b in _dyck_words(length - 2 - inner):
                out.append("+" + a + "-" + b)
    return tuple(out)


def enumerate_dyck_paths(n: int, k: int) -> list[DyckPath]:
    """All Dyck paths of length 2(n-3) with n-3-k peaks."""
    if n < 4 or k < 0 or k > n - 4:
        raise BadRange(f"need n >= 4 and 0 <= k <= n-4, got n={n}, k={k}")
    want = n - 3 - k
    return [DyckPath(w) for w in _dyck_words(2 * (n - 3)) if w.count("+-") == want]


def _lp(wu: str, wl: str) -> str:
    if not wu:
        return "+-"
    if wu[0] == "V":
        return "+" + _lp(wu[1:], wl[1:]) + "-"
    # upper word starts west; look for the first vertical step the two
    # paths traverse at the same distance from the east wall
    vu = [p for p, ch in enumerate(wu) if ch == "V"]
    vl = [p for p, ch in enumerate(wl) if ch == "V"]
    for pu, pl in zip(vu, vl):
        if pu == pl:
            # the character before the shared V in the lower word is an H
            return _lp(wu[1:pu], wl[: pl - 1]) + _lp(wu[pu:], wl[pl:])
    # no overlap: the lower word must end in H
    return _lp(wu[1:], wl[:-1]) + "+-"


def omega_LP(paths) -> DyckPath:
    """Dyck path of a noncrossing pair via the three-case recursion."""
    wu, wl = _pair_words(paths)
    return DyckPath(_lp(wu, wl))


def shadow_touch(path: DyckPath, x: int) -> int:
    """Down-steps landing on the water-fill profile right of point x.

    The profile starts at the height of x and only falls; a down-step
    counts when its right endpoint lies on the profile and its left
    endpoint does not.
    """
    steps = path.steps
    heights = path.heights
    if not 0 <= x <= len(steps):
        raise ValueError(f"point index {x} outside 0..{len(steps)}")
    count = 0
    level = heights[x]
    for t in range(x + 1, len(steps) + 1):
        new_level = min(level, heights[t])
        if steps[t - 1] == "-" and heights[t] == new_level and heights[t - 1] > level:
            count += 1
        level = new_level
    return count


def omega_PL(path: DyckPath) -> PathPair:
    """Noncrossing pair of a Dyck path; inverse of omega_LP."""
    steps = path.steps
    heights = path.heights
    ups = [x for x, ch in enumerate(steps) if ch == "+"]
    letters = [
        "V" if x + 1 < len(steps) and steps[x + 1] == "+" else "H" for x in ups
    ]
    wl = "".join(letters[:-1])
    b = wl.count("H")
    # one marked point per double up-step
    points = [x for x in ups if x + 1 < len(steps) and steps[x + 1] == "+"]
    gaps = []
    seen_h = 0
    for i, letter in enumerate(wl):
        if letter == "V":
            touch = shadow_touch(path, points[len(gaps)])
            gaps.append(seen_h + touch - 1)
        else:
            seen_h += 1
    parts = []
    prev = 0
    for g in gaps:
        parts.append("H" * (g - prev))
        parts.append("V")
        prev = g
    parts.append("H" * (b - prev))
    return PathPair("".join(parts), wl)


def dyck_step_labels(path: DyckPath):
    """Label steps and match double-up steps with their partner downs.

    Up-steps are labeled 1..n-3 left to right; every down-step takes the
    label of the next up-step, or n-2 past the last one.  Returns the up
    labels, the down labels, the labels up_i of up-steps followed by
    up-steps, and the labels down_i of their stack-matched down-steps.
    """
    steps = path.steps
    labels = [0] * len(steps)
    upnum = 0
    for x, ch in enumerate(steps):
        if ch == "+":
            upnum += 1
            labels[x] = upnum
    nxt = upnum + 1
    for x in reversed(range(len(steps))):
        if steps[x] == "+":
            nxt = labels[x]
        else:
            labels[x] = nxt
    matched = {}
    stack: list[int] = []
    for x, ch in enumerate(steps):
        if ch == "+":
            stack.append(labels[x])
        else:
            matched[stack.pop()] = labels[x]
    up_labels = tuple(labels[x] for x, ch in enumerate(steps) if ch == "+")
    down_labels = tuple(labels[x] for x, ch in enumerate(steps) if ch == "-")
    up_i = tuple(
        labels[x]
        for x, ch in enumerate(steps)
        if ch == "+" and x + 1 < len(steps) and steps[x + 1] == "+"
    )
    down_i = tuple(matched[u] for u in up_i)
    return up_labels, down_labels, up_i, down_i


# ----------------------------------------------------------------------
# plane partitions


def _word_from_rows(rows: tuple[int, ...], width: int) -> str:
    prev = width
    parts = []
    for x in rows:
        parts.append("H" * (prev - x))
        parts.append("V")
        prev = x
    parts.append("H" * prev)
    return "".join(parts)


@dataclass(frozen=True)
class NoncrossingPathTuple:
    """Paths in a common rectangle, each weakly northeast of the next."""

    words: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "words", tuple(self.words))
        for word in self.words:
            if set(word) - {"H", "V"}:
                raise ValueError("path words use only H and V")
            if word.count("V") != self.a or word.count("H") != self.b:
                raise ValueError("all paths must share one rectangle")
        for upper, lower in zip(self.words, self.words[1:]):
            if not is_noncrossing(upper, lower):
                raise Crossing(f"paths cross: {upper!r}, {lower!r}")

    @property
    def c(self) -> int:
        return len(self.words)

    @property
    def a(self) -> int:
        return self.words[0].count("V") if self.words else 0

    @property
    def b(self) -> int:
        return self.words[0].count("H") if self.words else 0

    def to_json(self) -> dict:
        return {"paths": list(self.words)}

    @classmethod
    def from_json(cls, data: dict) -> "NoncrossingPathTuple":
        return cls(tuple(data["paths"]))


@dataclass(frozen=True)
class PlanePartition:
    """Array in an a x b box, entries <= c, weakly decreasing both ways."""

    a: int
    b: int
    c: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        if min(self.a, self.b, self.c) < 0:
            raise ValueError("box dimensions must be nonnegative")
        if len(self.rows) != self.a or any(len(r) != self.b for r in self.rows):
            raise ValueError(f"need a full {self.a}x{self.b} array")
        for row in self.rows:
            for e in row:
                if not 0 <= e <= self.c:
                    raise ValueError(f"entry {e} outside 0..{self.c}")
            if any(row[i] < row[i + 1] for i in range(len(row) - 1)):
                raise ValueError("rows must weakly decrease")
        for upper, lower in zip(self.rows, self.rows[1:]):
            if any(u < l for u, l in zip(upper, lower)):
                raise ValueError("columns must weakly decrease")

    def entry(self, r: int, col: int) -> int:
        return self.rows[r - 1][col - 1]

    def to_json(self) -> dict:
        trimmed = []
        for row in self.rows:
            cut = list(row)
            while cut and cut[-1] == 0:
                cut.pop()
            if cut:
                trimmed.append(cut)
        return {"a": self.a, "b": self.b, "c": self.c, "rows": trimmed}

    @classmethod
    def from_json(cls, data: dict) -> "PlanePartition":
        a, b = data["a"], data["b"]
        rows = [tuple(r) + (0,) * (b - len(r)) for r in data["rows"]]
        rows += [(0,) * b] * (a - len(rows))
        return cls(a, b, data["c"], tuple(rows))


def paths_to_plane_partition(paths) -> PlanePartition:
    """Fill each box with the number of paths passing below it."""
    if not isinstance(paths, NoncrossingPathTuple):
        paths = NoncrossingPathTuple(tuple(paths))
    if not paths.words:
        raise ValueError("cannot infer a rectangle from zero paths")
    shapes = [_young_rows(w) for w in paths.words]
    rows = tuple(
        tuple(sum(1 for s in shapes if s[r] >= col) for col in range(1, paths.b + 1))
        for r in range(paths.a)
    )
    return PlanePartition(paths.a, paths.b, paths.c, rows)


def plane_partition_to_paths(partition: PlanePartition) -> NoncrossingPathTuple:
    """Inverse of paths_to_plane_partition: level curves, upper first."""
    words = []
    for j in range(partition.c, 0, -1):
        shape = tuple(sum(1 for e in row if e >= j) for row in partition.rows)
        words.append(_word_from_rows(shape, partition.b))
    return NoncrossingPathTuple(tuple(words))


def _subpartitions(outer: tuple[int, ...], cap: Optional[int] = None):
    if not outer:
        yield ()
        return
    top = outer[0] if cap is None else min(outer[0], cap)
    for first in range(top, -1, -1):
        for rest in _subpartitions(outer[1:], first):
            yield (first,) + rest


def enumerate_path_tuples(a: int, b: int, c: int) -> Iterator[NoncrossingPathTuple]:
    """All c-tuples of noncrossing paths in the a x b rectangle."""
    if min(a, b, c) < 0:
        raise BadRange(f"box dimensions must be nonnegative, got {(a, b, c)}")

    def chains(outer: tuple[int, ...], depth: int):
        if depth == 0:
            yield ()
            return
        for shape in _subpartitions(outer):
            for rest in chains(shape, depth - 1):
                yield (shape,) + rest

    for chain in chains((b,) * a, c):
        yield NoncrossingPathTuple(
            tuple(_word_from_rows(shape, b) for shape in reversed(chain))
        )


def macmahon(a: int, b: int, c: int) -> int:
    """Number of plane partitions in an a x b x c box, as an exact product."""
    if min(a, b, c) < 0:
        raise ValueError("box dimensions must be nonnegative")
    total = Fraction(1)
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            for k in range(1, c + 1):
                total *= Fraction(i + j + k - 1, i + j + k - 2)
    assert total.denominator == 1, "the triple product must be an integer"
    return int(total)
