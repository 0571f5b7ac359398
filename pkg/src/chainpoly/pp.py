"""Order-preserving maps, (P, omega)-partitions and W-polynomials."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

from .ehrhart import IntPolynomial, check_numerator, series_numerator
from .poset import Labeling, Poset, PosetError, is_natural, is_zigzag, linear_extensions


class Method(str, enum.Enum):
    DESCENTS = "descent-statistic"
    OMEGA_TRANSFORM = "transform-of-omega"


@dataclass(frozen=True)
class WPolynomial:
    poly: IntPolynomial
    labeling_used: Labeling | None
    method: Method


class NotNaturalError(PosetError):
    pass


def _bottom_up_order(P: Poset) -> tuple[int, ...]:
    return next(linear_extensions(P))


def iter_order_preserving(P: Poset, m: int) -> Iterator[tuple[int, ...]]:
    """Every order-preserving map ``P -> {1..m}`` as a tuple indexed by element."""
    order = _bottom_up_order(P)
    eta = [0] * P.size
    lower = P.lower_covers

    def walk(k):
        if k == P.size:
            yield tuple(eta)
            return
        x = order[k]
        start = max((eta[z] for z in lower[x]), default=1)
        for v in range(start, m + 1):
            eta[x] = v
            yield from walk(k + 1)

    return walk(0)


def iter_p_omega_partitions(P: Poset, w: Labeling, m: int) -> Iterator[tuple[int, ...]]:
    """Every (P, w)-partition with parts in ``{1..m}``.

    Order-reversing, and strict across a cover ``z < x`` whenever ``w(z) > w(x)``.
    """
    order = _bottom_up_order(P)
    sigma = [0] * P.size
    lower = P.lower_covers

    def walk(k):
        if k == P.size:
            yield tuple(sigma)
            return
        x = order[k]
        top = min((sigma[z] - (w(z) > w(x)) for z in lower[x]), default=m)
        for v in range(1, top + 1):
            sigma[x] = v
            yield from walk(k + 1)

    return walk(0)


def _count_order_preserving_brute(P: Poset, m: int) -> int:
    order = _bottom_up_order(P)
    eta = [0] * P.size
    lower = P.lower_covers
    last = P.size - 1

    def walk(k):
        x = order[k]
        start = max((eta[z] for z in lower[x]), default=1)
        if k == last:
            return max(0, m - start + 1)
        total = 0
        for v in range(start, m + 1):
            eta[x] = v
            total += walk(k + 1)
        return total

    return walk(0)


def _count_order_preserving_zigzag(n: int, m: int) -> int:
    # ways[v-1]: prefixes with eta(a_i) = v; a_i <= a_{i+1} for even 0-based i, >= for odd
    ways = [1] * m
    for i in range(n - 1):
        prefix = [0] * (m + 1)
        for v in range(m):
            prefix[v + 1] = prefix[v] + ways[v]
        if i % 2 == 0:
            ways = [prefix[u + 1] for u in range(m)]
        else:
            ways = [prefix[m] - prefix[u] for u in range(m)]
    return sum(ways)


def count_order_preserving(P: Poset, m: int, brute: bool = False) -> int:
    """Number of order-preserving maps ``P -> {1..m}``.

    Zig-zag posets (literal cover match) take a transfer-matrix path unless
    ``brute`` is set. ``m = 0`` gives 0.
    """
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if m == 0:
        return 0
    if not brute and is_zigzag(P):
        return _count_order_preserving_zigzag(P.size, m)
    return _count_order_preserving_brute(P, m)


def count_p_omega_partitions(P: Poset, w: Labeling, m: int, debug: bool = False) -> int:
    if len(w) != P.size:
        raise PosetError(f"labeling has {len(w)} labels for a poset of size {P.size}")
    if m <= 0:
        return 0
    total = 0
    for sigma in iter_p_omega_partitions(P, w, m):
        if debug:
            for x, y in P.comparable_pairs():
                assert sigma[x] >= sigma[y]
                assert not w(x) > w(y) or sigma[x] > sigma[y]
        total += 1
    return total


def w_tilde_polynomial(P: Poset, brute: bool = False) -> WPolynomial:
    """Numerator of ``sum_{m>=0} count_order_preserving(P, m+1) t^m`` over ``(1-t)^(|P|+1)``."""
    d = P.size
    values = [count_order_preserving(P, m + 1, brute=brute) for m in range(d + 1)]
    coeffs = series_numerator(values, d)
    check_numerator(coeffs, d)
    return WPolynomial(IntPolynomial(tuple(coeffs)), None, Method.OMEGA_TRANSFORM)


def descent_count(extension: tuple[int, ...], w: Labeling) -> int:
    return sum(1 for a, b in zip(extension, extension[1:]) if w(a) > w(b))


def w_polynomial_descents(P: Poset, w: Labeling) -> WPolynomial:
    """Sum of ``t^des`` over linear extensions, descents read through the labels ``w``."""
    if len(w) != P.size:
        raise PosetError(f"labeling has {len(w)} labels for a poset of size {P.size}")
    tally = [0] * (P.size + 1)
    labels = w.labels
    for ext in linear_extensions(P):
        des = 0
        prev = labels[ext[0]]
        for x in ext[1:]:
            cur = labels[x]
            if prev > cur:
                des += 1
            prev = cur
        tally[des] += 1
    return WPolynomial(IntPolynomial(tuple(tally)), w, Method.DESCENTS)


def verify_complement_bijection(P: Poset, w: Labeling, m: int) -> bool:
    """Check that (P, w)-partitions and order-preserving maps are equinumerous for natural ``w``.

    For ``|P| <= 5`` and ``m <= 4`` the map ``eta -> m + 1 - eta`` is also
    checked to carry one solution set exactly onto the other.
    """
    if not is_natural(P, w):
        raise NotNaturalError(f"labeling {w.labels} is not natural")
    if count_p_omega_partitions(P, w, m) != count_order_preserving(P, m, brute=True):
        return False
    if P.size <= 5 and m <= 4:
        reversing = set(iter_p_omega_partitions(P, w, m))
        preserving = set(iter_order_preserving(P, m))
        image = {tuple(m + 1 - v for v in sigma) for sigma in reversing}
        return image == preserving
    return True
