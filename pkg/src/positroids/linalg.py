"""Exact rational matrices, Plücker vectors, and cell sampling.

Everything downstream of a decision (memberships, equalities, sign
checks) runs on fractions.Fraction; no floating point anywhere.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from .diagrams import OPlusDiagram
from .errors import (
    NotTotallyPositive,
    RankDeficient,
    RankLoss,
    ShapeMismatch,
)
from .plabic import build_network


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not allowed; pass int, Fraction, or 'p/q'")
    return Fraction(value)


# ----------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable grid of exact rationals; cols may be given for empty grids."""

    entries: tuple[tuple[Fraction, ...], ...]
    cols: Optional[int] = None

    def __post_init__(self) -> None:
        grid = tuple(tuple(_frac(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", grid)
        width = self.cols
        if grid:
            widths = {len(row) for row in grid}
            if len(widths) != 1:
                raise ValueError("ragged rows")
            inferred = widths.pop()
            if width is None:
                width = inferred
            elif width != inferred:
                raise ValueError(f"cols={width} but rows have {inferred} entries")
        elif width is None:
            width = 0
        object.__setattr__(self, "cols", width)

    @property
    def rows(self) -> int:
        return len(self.entries)

    def transpose(self) -> "RationalMatrix":
        flipped = tuple(
            tuple(row[j] for row in self.entries) for j in range(self.cols)
        )
        return RationalMatrix(flipped, cols=self.rows)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        product = tuple(
            tuple(
                sum((row[t] * other.entries[t][j] for t in range(self.cols)),
                    Fraction(0))
                for j in range(other.cols)
            )
            for row in self.entries
        )
        return RationalMatrix(product, cols=other.cols)

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ShapeMismatch("determinant of a non-square matrix")
        grid = [list(row) for row in self.entries]
        sign = 1
        for col in range(self.cols):
            pivot = next((r for r in range(col, self.rows) if grid[r][col]), None)
            if pivot is None:
                return Fraction(0)
            if pivot != col:
                grid[col], grid[pivot] = grid[pivot], grid[col]
                sign = -sign
            for r in range(col + 1, self.rows):
                factor = grid[r][col] / grid[col][col]
                for c in range(col, self.cols):
                    grid[r][c] -= factor * grid[col][c]
        result = Fraction(sign)
        for r in range(self.rows):
            result *= grid[r][r]
        return result

    def to_json(self) -> list:
        return [[str(x) for x in row] for row in self.entries]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]], cols: Optional[int] = None):
        return cls(tuple(tuple(Fraction(x) for x in row) for row in data), cols=cols)


def rref(matrix: RationalMatrix) -> tuple[RationalMatrix, tuple[int, ...]]:
    """Reduced row echelon form and the pivot column indices."""
    grid = [list(row) for row in matrix.entries]
    pivots: list[int] = []
    row = 0
    for col in range(matrix.cols):
        pivot = next((r for r in range(row, len(grid)) if grid[r][col]), None)
        if pivot is None:
            continue
        grid[row], grid[pivot] = grid[pivot], grid[row]
        lead = grid[row][col]
        grid[row] = [x / lead for x in grid[row]]
        for r in range(len(grid)):
            if r != row and grid[r][col]:
                factor = grid[r][col]
                grid[r] = [a - factor * b for a, b in zip(grid[r], grid[row])]
        pivots.append(col)
        row += 1
        if row == len(grid):
            break
    return RationalMatrix(tuple(tuple(r) for r in grid), cols=matrix.cols), tuple(pivots)


# ----------------------------------------------------------------------
# Plücker coordinates


def _lex_subsets(n: int, k: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(1, n + 1), k))


def _maximal_minors(matrix: RationalMatrix) -> list[Fraction]:
    """All k x k minors in lex column order, sharing sub-minors."""
    k, n = matrix.rows, matrix.cols
    entries = matrix.entries
    memo: dict[tuple, Fraction] = {}

    def minor(rows: tuple[int, ...], cols: tuple[int, ...]) -> Fraction:
        if not cols:
            return Fraction(1)
        key = (rows, cols)
        cached = memo.get(key)
        if cached is not None:
            return cached
        last = cols[-1]
        total = Fraction(0)
        for idx in range(len(rows)):
            value = entries[rows[idx]][last]
            if value:
                sub = minor(rows[:idx] + rows[idx + 1 :], cols[:-1])
                if (idx + len(cols)) % 2:
                    total += value * sub
                else:
                    total -= value * sub
        memo[key] = total
        return total

    all_rows = tuple(range(k))
    return [minor(all_rows, cols) for cols in itertools.combinations(range(n), k)]


@dataclass(frozen=True)
class GrassmannPoint:
    """Plücker vector in lex subset order, first nonzero entry scaled to 1."""

    k: int
    n: int
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coords = tuple(_frac(x) for x in self.coords)
        expected = len(_lex_subsets(self.n, self.k))
        if len(coords) != expected:
            raise ValueError(f"need {expected} coordinates, got {len(coords)}")
        lead = next((x for x in coords if x), None)
        if lead is None:
            raise ValueError("all Plücker coordinates vanish")
        if lead != 1:
            coords = tuple(x / lead for x in coords)
        object.__setattr__(self, "coords", coords)

    def subsets(self) -> list[tuple[int, ...]]:
        return _lex_subsets(self.n, self.k)

    def entry(self, subset: Iterable[int]) -> Fraction:
        target = tuple(sorted(subset))
        return self.coords[self.subsets().index(target)]

    @property
    def support(self) -> frozenset:
        return frozenset(
            s for s, x in zip(self.subsets(), self.coords) if x
        )

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "plucker": {
                ",".join(map(str, s)): str(x)
                for s, x in zip(self.subsets(), self.coords)
                if x
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "GrassmannPoint":
        k, n = data["k"], data["n"]
        table = {
            tuple(int(i) for i in key.split(",") if i): Fraction(value)
            for key, value in data["plucker"].items()
        }
        coords = tuple(table.get(s, Fraction(0)) for s in _lex_subsets(n, k))
        return cls(k, n, coords)


def plucker(matrix: RationalMatrix) -> GrassmannPoint:
    """Projective vector of maximal minors of a full-row-rank matrix."""
    minors = _maximal_minors(matrix)
    if not any(minors):
        raise RankDeficient(f"matrix has rank below {matrix.rows}")
    return GrassmannPoint(matrix.rows, matrix.cols, tuple(minors))


def gr_equal(p: GrassmannPoint, q: GrassmannPoint) -> bool:
    if (p.k, p.n) != (q.k, q.n):
        raise ShapeMismatch(f"({p.k},{p.n}) vs ({q.k},{q.n})")
    return p.coords == q.coords


# ----------------------------------------------------------------------
# cells


def parameterize(diagram: OPlusDiagram, values: Mapping[str, object]) -> RationalMatrix:
    """Boundary-measurement matrix of a sorted diagram's network."""
    network = build_network(diagram)
    return RationalMatrix(tuple(map(tuple, network.matrix(values))), cols=diagram.n)


@dataclass(frozen=True, eq=False)
class CellSample:
    """One point of a cell: a diagram, positive edge values, the matrix."""

    diagram: OPlusDiagram
    values: Mapping[str, Fraction]
    matrix: RationalMatrix

    def __post_init__(self) -> None:
        if any(v <= 0 for v in self.values.values()):
            raise ValueError("edge variables must be strictly positive")

    def to_json(self) -> dict:
        return {
            "diagram": self.diagram.to_json(),
            "values": {name: str(v) for name, v in sorted(self.values.items())},
            "matrix": self.matrix.to_json(),
        }


def sample_cell(diagram: OPlusDiagram, rng=None) -> CellSample:
    """Draw every edge variable as p/q with p, q uniform in 1..50."""
    if rng is None or isinstance(rng, int):
        rng = random.Random(rng or 0)
    network = build_network(diagram)
    values = {
        name: Fraction(rng.randint(1, 50), rng.randint(1, 50))
        for name in network.variables
    }
    return CellSample(diagram, values, parameterize(diagram, values))


@lru_cache(maxsize=None)
def _unit_support(diagram: OPlusDiagram) -> frozenset:
    network = build_network(diagram)
    return plucker(parameterize(diagram, network.ones())).support


def positroid_membership(matrix: RationalMatrix, diagram: OPlusDiagram) -> bool:
    """Nonnegative Plücker vector supported exactly on the diagram's positroid."""
    point = plucker(matrix)
    if any(x < 0 for x in point.coords):
        return False
    return point.support == _unit_support(diagram)


# ----------------------------------------------------------------------
# totally positive matrices and the induced map


@lru_cache(maxsize=None)
def _tp_cached(rows: int, n: int, nodes: Optional[tuple]) -> RationalMatrix:
    if nodes is None:
        nodes = tuple(Fraction(j) for j in range(1, n + 1))
    if len(nodes) != n:
        raise ValueError(f"need {n} nodes, got {len(nodes)}")
    matrix = RationalMatrix(
        tuple(tuple(t ** i for t in nodes) for i in range(rows)), cols=n
    )
    for subset, value in zip(
        itertools.combinations(range(1, n + 1), rows), _maximal_minors(matrix)
    ):
        if value <= 0:
            raise NotTotallyPositive(f"minor on columns {subset} is {value}")
    return matrix


def make_tp_matrix(rows: int, n: int, nodes: Optional[Sequence] = None) -> RationalMatrix:
    """Generalized Vandermonde matrix with every maximal minor checked positive."""
    if rows > n:
        raise ValueError(f"cannot fit {rows} rows in width {n}")
    key = None if nodes is None else tuple(_frac(t) for t in nodes)
    return _tp_cached(rows, n, key)


def z_map(z: RationalMatrix, v: RationalMatrix) -> GrassmannPoint:
    """Point spanned by the images of v's rows, i.e. row span of v·zᵀ."""
    if v.cols != z.cols:
        raise ShapeMismatch(f"ambient sizes differ: {v.cols} vs {z.cols}")
    image = v @ z.transpose()
    try:
        return plucker(image)
    except RankDeficient as exc:
        raise RankLoss("the map dropped rank; check the preconditions") from exc


# ----------------------------------------------------------------------
# kernels and sign patterns


def kernel_basis(z: RationalMatrix) -> list[tuple[Fraction, ...]]:
    """Exact basis of the right null space, scaled to primitive integers."""
    reduced, pivots = rref(z)
    free = [c for c in range(z.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * z.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -reduced.entries[r][f]
        scale = 1
        for x in v:
            scale = scale * x.denominator // _gcd(scale, x.denominator)
        ints = [x * scale for x in v]
        shared = 0
        for x in ints:
            shared = _gcd(shared, abs(x.numerator))
        basis.append(tuple(x / shared for x in ints))
    return basis


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _sign_seq(pattern, n: int) -> list[int]:
    if isinstance(pattern, str):
        pattern = list(pattern)
    out = []
    for p in pattern:
        if p in ("+", 1):
            out.append(1)
        elif p in ("-", -1):
            out.append(-1)
        else:
            raise ValueError(f"pattern entries must be + or -, got {p!r}")
    if len(out) != n:
        raise ValueError(f"pattern length {len(out)} does not match width {n}")
    return out


def _solve(grid: list[list[Fraction]], rhs: list[Fraction]) -> Optional[list[Fraction]]:
    """Solve a square exact system; None when singular."""
    size = len(grid)
    work = [row[:] + [rhs[r]] for r, row in enumerate(grid)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if work[r][col]), None)
        if pivot is None:
            return None
        work[col], work[pivot] = work[pivot], work[col]
        lead = work[col][col]
        work[col] = [x / lead for x in work[col]]
        for r in range(size):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
    return [work[r][size] for r in range(size)]


def _phase1_feasible(
    rows: list[list[Fraction]], rhs: list[Fraction]
) -> Optional[list[Fraction]]:
    """Exact phase-1 simplex for {u >= 0 : A u = b}; Bland's rule throughout."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    table = []
    for r in range(m):
        row = rows[r][:]
        b = rhs[r]
        if b < 0:
            row = [-x for x in row]
            b = -b
        table.append(row + [Fraction(0)] * m + [b])
        table[r][n + r] = Fraction(1)
    basis = [n + r for r in range(m)]
    # reduced costs for minimizing the artificial sum
    obj = [Fraction(0)] * (n + m + 1)
    for r in range(m):
        for c in range(n + m + 1):
            obj[c] -= table[r][c]
    for c in range(n, n + m):
        obj[c] += 1

    while True:
        entering = next((c for c in range(n + m) if obj[c] < 0), None)
        if entering is None:
            break
        best = None
        for r in range(m):
            coef = table[r][entering]
            if coef > 0:
                ratio = table[r][-1] / coef
                if best is None or ratio < best[0] or (
                    ratio == best[0] and basis[r] < basis[best[1]]
                ):
                    best = (ratio, r)
        if best is None:
            return None  # unbounded phase-1 cannot happen, bail out anyway
        r = best[1]
        lead = table[r][entering]
        table[r] = [x / lead for x in table[r]]
        for rr in range(m):
            if rr != r and table[rr][entering]:
                factor = table[rr][entering]
                table[rr] = [a - factor * b for a, b in zip(table[rr], table[r])]
        if obj[entering]:
            factor = obj[entering]
            obj = [a - factor * b for a, b in zip(obj, table[r])]
        basis[r] = entering

    if obj[-1] != 0:
        return None
    solution = [Fraction(0)] * n
    for r, var in enumerate(basis):
        if var < n:
            solution[var] = table[r][-1]
    return solution


def find_kernel_vector_with_signs(
    z: RationalMatrix, pattern, seed: int = 0, budget: int = 40
) -> Optional[tuple[Fraction, ...]]:
    """Exact kernel vector matching a zero-free sign pattern, or None.

    Random rational targets are projected onto the kernel first; if the
    budget runs out, an exact feasibility LP settles the question.
    """
    signs = _sign_seq(pattern, z.cols)
    basis = kernel_basis(z)
    if basis:
        rng = random.Random(seed)
        gram = [
            [sum((a * b for a, b in zip(u, w)), Fraction(0)) for w in basis]
            for u in basis
        ]
        for _ in range(budget):
            target = [
                s * Fraction(rng.randint(1, 50), rng.randint(1, 50)) for s in signs
            ]
            rhs = [sum((u[t] * target[t] for t in range(z.cols)), Fraction(0))
                   for u in basis]
            coeffs = _solve(gram, rhs)
            if coeffs is None:
                break
            v = [
                sum((c * u[t] for c, u in zip(coeffs, basis)), Fraction(0))
                for t in range(z.cols)
            ]
            if all(_sign(x) == s for x, s in zip(v, signs)):
                return tuple(v)
    # complete fallback: v_i = sign_i (u_i + 1) with u >= 0 and Z v = 0
    rows = [[row[j] * signs[j] for j in range(z.cols)] for row in z.entries]
    rhs = [-sum((row[j] * signs[j] for j in range(z.cols)), Fraction(0))
           for row in z.entries]
    u = _phase1_feasible(rows, rhs)
    if u is None:
        return None
    return tuple(signs[j] * (u[j] + 1) for j in range(z.cols))
