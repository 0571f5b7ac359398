"""Rational H-polytopes and exact lattice-point counting in integer dilations."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poset import Poset, all_chains, maximal_chains

Row = tuple[tuple[Fraction, ...], Fraction]


class UnboundedError(ValueError):
    def __init__(self, coordinate: int, side: str = "upper"):
        self.coordinate = coordinate
        self.side = side
        super().__init__(f"coordinate {coordinate} has no {side} bound")


@dataclass(frozen=True)
class HPolytope:
    """The set ``{x in R^dim : coeffs . x <= bound for every row}``."""

    dim: int
    rows: tuple[Row, ...]

    def __post_init__(self):
        rows = []
        for coeffs, bound in self.rows:
            coeffs = tuple(Fraction(c) for c in coeffs)
            if len(coeffs) != self.dim:
                raise ValueError(f"row has {len(coeffs)} coefficients, expected {self.dim}")
            rows.append((coeffs, Fraction(bound)))
        object.__setattr__(self, "rows", tuple(rows))

    def contains(self, x: Sequence[int], m: int = 1) -> bool:
        return all(sum(a * v for a, v in zip(coeffs, x)) <= m * b for coeffs, b in self.rows)

    def normalized_rows(self) -> frozenset[tuple[tuple[int, ...], int]]:
        """Rows scaled to primitive integer form, for comparing systems as sets."""
        return frozenset(_primitive(row) for row in self.rows)


def _integer_row(row: Row) -> tuple[tuple[int, ...], int]:
    coeffs, bound = row
    scale = math.lcm(*(c.denominator for c in coeffs), bound.denominator)
    return tuple(int(c * scale) for c in coeffs), int(bound * scale)


def _primitive(row: Row) -> tuple[tuple[int, ...], int]:
    coeffs, bound = _integer_row(row)
    g = math.gcd(*coeffs, bound)
    if g == 0:
        return coeffs, bound
    return tuple(c // g for c in coeffs), bound // g


def _unit(d: int, i: int, value: int = 1) -> tuple[int, ...]:
    return tuple(value if k == i else 0 for k in range(d))


def chain_polytope(P: Poset, chains: str = "maximal") -> HPolytope:
    """Nonnegativity plus one ``sum <= 1`` row per chain.

    ``chains="maximal"`` (default) emits rows only for maximal chains, which
    define the same polytope as ``chains="all"`` since x >= 0.
    """
    d = P.size
    rows: list[Row] = [(_unit(d, i, -1), 0) for i in range(d)]
    if chains == "maximal":
        source = maximal_chains(P)
    elif chains == "all":
        source = all_chains(P)
    else:
        raise ValueError(f"chains must be 'maximal' or 'all', got {chains!r}")
    for chain in source:
        members = set(chain)
        rows.append((tuple(1 if k in members else 0 for k in range(d)), 1))
    return HPolytope(d, tuple(rows))


def kirillov_polytope(n: int) -> HPolytope:
    """``x_i >= 0`` and ``x_i + x_{i+1} <= 1``; for ``n == 1`` the row ``x_1 <= 1`` closes the segment."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rows: list[Row] = [(_unit(n, i, -1), 0) for i in range(n)]
    for i in range(n - 1):
        rows.append((tuple(1 if k in (i, i + 1) else 0 for k in range(n)), 1))
    if n == 1:
        rows.append(((1,), 1))
    return HPolytope(n, tuple(rows))


def bounding_box(Q: HPolytope, m: int) -> list[tuple[int, int]]:
    """Integer intervals containing every lattice point of ``m*Q``.

    Starts from single-variable rows and tightens by interval propagation
    through the remaining rows. Raises :class:`UnboundedError` if a
    coordinate stays open.
    """
    d = Q.dim
    lo: list[Fraction | None] = [None] * d
    hi: list[Fraction | None] = [None] * d
    rows = [(coeffs, m * b) for coeffs, b in Q.rows]

    for _ in range(2 * d + 2):
        changed = False
        for coeffs, bound in rows:
            support = [k for k in range(d) if coeffs[k]]
            for i in support:
                # coeffs[i]*x_i <= bound - sum of the smallest possible other terms
                slack = bound
                for k in support:
                    if k == i:
                        continue
                    edge = lo[k] if coeffs[k] > 0 else hi[k]
                    if edge is None:
                        break
                    slack -= coeffs[k] * edge
                else:
                    limit = slack / coeffs[i]
                    if coeffs[i] > 0 and (hi[i] is None or limit < hi[i]):
                        hi[i] = limit
                        changed = True
                    elif coeffs[i] < 0 and (lo[i] is None or limit > lo[i]):
                        lo[i] = limit
                        changed = True
        if not changed:
            break

    box = []
    for i in range(d):
        if lo[i] is None:
            raise UnboundedError(i, "lower")
        if hi[i] is None:
            raise UnboundedError(i, "upper")
        box.append((math.ceil(lo[i]), math.floor(hi[i])))
    return box


def _count_box(int_rows, box, first_range) -> int:
    d = len(box)
    nrows = len(int_rows)
    # smallest possible contribution of coordinates k.. to each row
    tail = [[0] * (d + 1) for _ in range(nrows)]
    for r, (a, _) in enumerate(int_rows):
        for k in range(d - 1, -1, -1):
            lo, hi = box[k]
            tail[r][k] = tail[r][k + 1] + min(a[k] * lo, a[k] * hi)
    touching = [[(r, a[k]) for r, (a, _) in enumerate(int_rows) if a[k]] for k in range(d)]
    bounds = [b for _, b in int_rows]
    partial = [0] * nrows

    def valid_range(k):
        lo, hi = box[k]
        if k == 0:
            lo, hi = max(lo, first_range[0]), min(hi, first_range[1])
        for r, a in touching[k]:
            room = bounds[r] - partial[r] - tail[r][k + 1]
            if a > 0:
                hi = min(hi, room // a)
            else:
                lo = max(lo, -(room // -a))
        return lo, hi

    def walk(k):
        lo, hi = valid_range(k)
        if lo > hi:
            return 0
        if k == d - 1:
            return hi - lo + 1
        total = 0
        for v in range(lo, hi + 1):
            for r, a in touching[k]:
                partial[r] += a * v
            total += walk(k + 1)
            for r, a in touching[k]:
                partial[r] -= a * v
        return total

    return walk(0)


def count_lattice_points(Q: HPolytope, m: int, workers: int = 1) -> int:
    """Exact number of integer points ``x`` with ``A x <= m b``.

    With ``workers > 1`` the first coordinate's range is split across
    processes; the total does not depend on the split.
    """
    if m < 0:
        raise ValueError(f"dilation must be nonnegative, got {m}")
    box = bounding_box(Q, m)
    if any(lo > hi for lo, hi in box):
        return 0
    int_rows = []
    for coeffs, b in Q.rows:
        a, bound = _integer_row((coeffs, b))
        int_rows.append((a, bound * m))
    lo0, hi0 = box[0]
    if workers <= 1 or hi0 == lo0:
        return _count_box(int_rows, box, (lo0, hi0))
    edges = [lo0 + (hi0 - lo0 + 1) * k // workers for k in range(workers + 1)]
    parts = [(edges[k], edges[k + 1] - 1) for k in range(workers) if edges[k] < edges[k + 1]]
    with ProcessPoolExecutor(max_workers=len(parts)) as pool:
        futures = [pool.submit(_count_box, int_rows, box, part) for part in parts]
        return sum(f.result() for f in futures)


def count_zigzag_fast(n: int, m: int) -> int:
    """Lattice points of the m-th dilate of the Kirillov polytope by a transfer-matrix sweep.

    ``ways[v]`` counts valid prefixes ending with ``x_i = v``; the only
    coupling is ``x_i + x_{i+1} <= m`` so each step is a prefix sum.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if m < 0:
        raise ValueError(f"dilation must be nonnegative, got {m}")
    ways = [1] * (m + 1)
    for _ in range(n - 1):
        prefix = [0] * (m + 2)
        for v in range(m + 1):
            prefix[v + 1] = prefix[v] + ways[v]
        ways = [prefix[m - w + 1] for w in range(m + 1)]
    return sum(ways)
