"""Finite posets stored as irredundant cover relations.

Elements are the integers ``0..size-1``. A cover pair ``(i, j)`` means ``j``
covers ``i``. Reachability is kept as one bitmask per element so that
order queries are a shift and a mask.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

Chain = tuple[int, ...]


class PosetError(ValueError):
    pass


class CycleError(PosetError):
    def __init__(self, cycle: Sequence[int]):
        self.cycle = tuple(cycle)
        path = " -> ".join(str(x) for x in (*self.cycle, self.cycle[0]))
        super().__init__(f"cover relation has a cycle: {path}")


class RedundantCoverError(PosetError):
    def __init__(self, redundant: Iterable[tuple[int, int]]):
        self.redundant = tuple(sorted(redundant))
        super().__init__(f"covers implied by transitivity: {list(self.redundant)}")


class NotGradedError(PosetError):
    """Raised by :func:`rank_function`; ``witness`` holds two maximal chains of different lengths."""

    def __init__(self, witness: tuple[Chain, Chain]):
        self.witness = witness
        a, b = witness
        super().__init__(
            f"poset is not graded: maximal chains {list(a)} (length {len(a) - 1}) "
            f"and {list(b)} (length {len(b) - 1})"
        )


def _find_cycle(size: int, upper: list[list[int]]) -> list[int] | None:
    state = [0] * size  # 0 new, 1 on stack, 2 done
    for root in range(size):
        if state[root]:
            continue
        stack = [(root, iter(upper[root]))]
        path = [root]
        state[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                path.pop()
                state[node] = 2
            elif state[nxt] == 1:
                return path[path.index(nxt):]
            elif state[nxt] == 0:
                state[nxt] = 1
                stack.append((nxt, iter(upper[nxt])))
                path.append(nxt)
    return None


def _topological_order(size: int, upper: list[list[int]]) -> list[int]:
    indeg = [0] * size
    for i in range(size):
        for j in upper[i]:
            indeg[j] += 1
    ready = [i for i in range(size) if indeg[i] == 0]
    order = []
    while ready:
        i = ready.pop()
        order.append(i)
        for j in upper[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    return order


def _reachability(size: int, upper: list[list[int]]) -> list[int]:
    up = [0] * size
    for i in reversed(_topological_order(size, upper)):
        mask = 1 << i
        for j in upper[i]:
            mask |= up[j]
        up[i] = mask
    return up


@dataclass(frozen=True)
class Poset:
    """Immutable finite poset given by its cover relations.

    Construction validates indices, acyclicity and irredundancy. Use
    :meth:`from_relations` to build from an arbitrary generating relation.
    """

    size: int
    covers: frozenset[tuple[int, int]]

    def __post_init__(self):
        covers = frozenset((int(i), int(j)) for i, j in self.covers)
        object.__setattr__(self, "covers", covers)
        if self.size < 1:
            raise PosetError("a poset needs at least one element")
        for i, j in covers:
            if not (0 <= i < self.size and 0 <= j < self.size):
                raise PosetError(f"cover ({i}, {j}) out of range for size {self.size}")
            if i == j:
                raise CycleError([i])
        upper = self.upper_covers
        cycle = _find_cycle(self.size, [list(u) for u in upper])
        if cycle is not None:
            raise CycleError(cycle)
        redundant = _redundant_covers(self.size, covers, self._up)
        if redundant:
            raise RedundantCoverError(redundant)

    @classmethod
    def from_relations(cls, size: int, relations: Iterable[tuple[int, int]]) -> "Poset":
        """Build the poset generated by ``relations`` (pairs ``i < j``), dropping implied pairs."""
        rel = {(int(i), int(j)) for i, j in relations}
        for i, j in rel:
            if not (0 <= i < size and 0 <= j < size):
                raise PosetError(f"relation ({i}, {j}) out of range for size {size}")
        upper = [sorted(j for a, j in rel if a == i) for i in range(size)]
        cycle = _find_cycle(size, upper)
        if cycle is not None:
            raise CycleError(cycle)
        up = _reachability(size, upper)
        redundant = _redundant_covers(size, rel, up)
        return cls(size, frozenset(rel - set(redundant)))

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        ups: list[list[int]] = [[] for _ in range(self.size)]
        for i, j in self.covers:
            ups[i].append(j)
        return tuple(tuple(sorted(u)) for u in ups)

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        downs: list[list[int]] = [[] for _ in range(self.size)]
        for i, j in self.covers:
            downs[j].append(i)
        return tuple(tuple(sorted(d)) for d in downs)

    @cached_property
    def _up(self) -> list[int]:
        return _reachability(self.size, [list(u) for u in self.upper_covers])

    @cached_property
    def _down(self) -> list[int]:
        down = [0] * self.size
        for i, mask in enumerate(self._up):
            for j in range(self.size):
                if mask >> j & 1:
                    down[j] |= 1 << i
        return down

    def up_mask(self, x: int) -> int:
        """Bitmask of all ``y`` with ``x <= y`` (``x`` included)."""
        return self._up[x]

    def down_mask(self, x: int) -> int:
        return self._down[x]

    def leq(self, x: int, y: int) -> bool:
        return bool(self._up[x] >> y & 1)

    def less(self, x: int, y: int) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x: int, y: int) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    @property
    def minimal(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.size) if not self.lower_covers[i])

    @property
    def maximal(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.size) if not self.upper_covers[i])

    def comparable_pairs(self) -> Iterator[tuple[int, int]]:
        for x in range(self.size):
            for y in range(self.size):
                if self.less(x, y):
                    yield x, y

    def describe(self) -> str:
        if is_zigzag(self):
            return f"Z_{self.size}"
        return f"poset(size={self.size}, covers={sorted(self.covers)})"


def _redundant_covers(size, covers, up) -> list[tuple[int, int]]:
    upper: list[list[int]] = [[] for _ in range(size)]
    for i, j in covers:
        upper[i].append(j)
    out = []
    for i, j in covers:
        if any(k != j and up[k] >> j & 1 for k in upper[i]):
            out.append((i, j))
    return out


@dataclass(frozen=True)
class Labeling:
    """Bijection from elements to ``1..d``; ``labels[x]`` is the label of ``x``."""

    labels: tuple[int, ...]

    def __post_init__(self):
        labels = tuple(int(v) for v in self.labels)
        object.__setattr__(self, "labels", labels)
        if sorted(labels) != list(range(1, len(labels) + 1)):
            raise PosetError(f"labeling {labels} is not a bijection onto 1..{len(labels)}")

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "Labeling":
        """Label ``order[k]`` with ``k + 1``."""
        labels = [0] * len(order)
        for k, x in enumerate(order):
            labels[x] = k + 1
        return cls(tuple(labels))

    def __call__(self, x: int) -> int:
        return self.labels[x]

    def __len__(self) -> int:
        return len(self.labels)


class Grading(NamedTuple):
    rho: tuple[int, ...]
    rank: int


def zigzag_poset(n: int) -> Poset:
    """The fence ``a1 < a2 > a3 < a4 ...`` on elements ``0..n-1``.

    Even (0-based) positions are the minimal elements.
    """
    if n < 1:
        raise PosetError(f"zig-zag poset needs n >= 1, got {n}")
    covers = set()
    for i in range(n - 1):
        covers.add((i, i + 1) if i % 2 == 0 else (i + 1, i))
    return Poset(n, frozenset(covers))


def chain_poset(d: int) -> Poset:
    return Poset(d, frozenset((i, i + 1) for i in range(d - 1)))


def antichain(d: int) -> Poset:
    return Poset(d, frozenset())


def is_zigzag(P: Poset) -> bool:
    """Literal cover-set match against :func:`zigzag_poset`; no isomorphism search."""
    if len(P.covers) != P.size - 1:
        return False
    return all(
        ((i, i + 1) if i % 2 == 0 else (i + 1, i)) in P.covers for i in range(P.size - 1)
    )


def all_chains(P: Poset) -> list[Chain]:
    """Every nonempty chain, singletons included, listed bottom-up."""
    out: list[Chain] = []

    def extend(chain: list[int]) -> None:
        out.append(tuple(chain))
        above = P.up_mask(chain[-1]) & ~(1 << chain[-1])
        for j in range(P.size):
            if above >> j & 1:
                chain.append(j)
                extend(chain)
                chain.pop()

    for i in range(P.size):
        extend([i])
    return out


def iter_maximal_chains(P: Poset) -> Iterator[Chain]:
    # maximal chains are exactly the saturated minimal-to-maximal cover paths
    stack: list[Chain] = [(i,) for i in reversed(P.minimal)]
    while stack:
        chain = stack.pop()
        ups = P.upper_covers[chain[-1]]
        if not ups:
            yield chain
        for j in reversed(ups):
            stack.append(chain + (j,))


def maximal_chains(P: Poset) -> list[Chain]:
    return list(iter_maximal_chains(P))


def rank_function(P: Poset) -> Grading:
    """Return the rank function if every maximal chain has the same length.

    Raises :class:`NotGradedError` carrying two maximal chains of unequal length.
    """
    first: Chain | None = None
    for chain in iter_maximal_chains(P):
        if first is None:
            first = chain
        elif len(chain) != len(first):
            raise NotGradedError((first, chain))
    assert first is not None
    rho = [0] * P.size
    for x in _topological_order(P.size, [list(u) for u in P.upper_covers]):
        for y in P.upper_covers[x]:
            rho[y] = rho[x] + 1
    return Grading(tuple(rho), len(first) - 1)


def is_natural(P: Poset, w: Labeling) -> bool:
    if len(w) != P.size:
        raise PosetError(f"labeling has {len(w)} labels for a poset of size {P.size}")
    # covers suffice: the condition is transitive
    return all(w(i) <= w(j) for i, j in P.covers)


def linear_extensions(P: Poset) -> Iterator[tuple[int, ...]]:
    """Stream every linear extension in lexicographic order of element indices."""
    d = P.size
    lower = [len(c) for c in P.lower_covers]
    upper = P.upper_covers
    prefix: list[int] = []
    placed = [False] * d

    def walk() -> Iterator[tuple[int, ...]]:
        if len(prefix) == d:
            yield tuple(prefix)
            return
        for x in range(d):
            if placed[x] or lower[x]:
                continue
            placed[x] = True
            prefix.append(x)
            for y in upper[x]:
                lower[y] -= 1
            yield from walk()
            for y in upper[x]:
                lower[y] += 1
            prefix.pop()
            placed[x] = False

    return walk()


def natural_labeling(P: Poset) -> Labeling:
    """Label elements along the lexicographically smallest linear extension."""
    return Labeling.from_order(next(linear_extensions(P)))


def euler_zigzag_number(n: int) -> int:
    """Number of alternating permutations of ``n`` letters, via Entringer numbers."""
    if n < 0:
        raise ValueError(n)
    row = [1]
    for k in range(1, n + 1):
        new = [0]
        for j in range(1, k + 1):
            new.append(new[j - 1] + row[k - j])
        row = new
    return row[n]


def count_linear_extensions(P: Poset) -> int:
    if is_zigzag(P):
        return euler_zigzag_number(P.size)
    strict_down = [P.down_mask(x) & ~(1 << x) for x in range(P.size)]
    layer = {0: 1}
    for _ in range(P.size):
        nxt: dict[int, int] = {}
        for mask, ways in layer.items():
            for x in range(P.size):
                if not mask >> x & 1 and strict_down[x] & ~mask == 0:
                    key = mask | 1 << x
                    nxt[key] = nxt.get(key, 0) + ways
        layer = nxt
    return sum(layer.values())
