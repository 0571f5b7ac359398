"""Lattice-count tables, delta-vectors and Ehrhart polynomials. Integer arithmetic only."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterator, Sequence


class EhrhartError(ValueError):
    pass


class InsufficientCountsError(EhrhartError):
    pass


class InconsistencyError(EhrhartError):
    """A numerator coefficient that must be nonnegative (or zero) is not."""

    def __init__(self, index: int, value: int, reason: str):
        self.index = index
        self.value = value
        super().__init__(f"coefficient {index} = {value}: {reason}")


@dataclass(frozen=True)
class IntPolynomial:
    """Coefficient vector ``coeffs[j]`` of ``t^j``. Stored length is part of the value."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        """Largest index with a nonzero coefficient; -1 for the zero polynomial."""
        for j in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[j]:
                return j
        return -1

    def effective(self) -> tuple[int, ...]:
        return self.coeffs[: self.degree + 1]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def __getitem__(self, j):
        return self.coeffs[j]

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if j == 0 else ("t" if j == 1 else f"t^{j}")
            if not mono:
                coef = str(abs(c))
            else:
                coef = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, coef + mono))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


@dataclass(frozen=True)
class DeltaVector:
    dim: int
    poly: IntPolynomial

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.poly.coeffs


def series_numerator(values: Sequence[int], d: int) -> list[int]:
    """Coefficients of ``(1 - t)^(d+1) * sum values[m] t^m`` up to ``len(values) - 1``."""
    signed = [(-1) ** k * comb(d + 1, k) for k in range(d + 2)]
    out = []
    for j in range(len(values)):
        out.append(sum(signed[k] * values[j - k] for k in range(min(j, d + 1) + 1)))
    return out


def check_numerator(full: Sequence[int], d: int) -> None:
    """Raise if any coefficient is negative or anything beyond degree ``d`` is nonzero."""
    for j, c in enumerate(full):
        if j > d and c != 0:
            raise InconsistencyError(j, c, f"series is not rational with denominator (1-t)^{d + 1}")
        if c < 0:
            raise InconsistencyError(j, c, "negative coefficient")


def delta_from_counts(counts: Sequence[int], d: int, check: bool = True) -> DeltaVector:
    """delta-vector of a ``d``-dimensional polytope from ``counts[m] = i(Q; m)``, m = 0..d.

    Longer tables are used as a cross-check: every coefficient past ``d``
    must vanish. With ``check=False`` sign and annihilation checks are skipped.
    """
    if len(counts) < d + 1:
        raise InsufficientCountsError(f"need {d + 1} counts for dimension {d}, got {len(counts)}")
    if counts[0] != 1:
        raise EhrhartError(f"counts[0] must be 1, got {counts[0]}")
    full = series_numerator(counts, d)
    if check:
        check_numerator(full, d)
    return DeltaVector(d, IntPolynomial(tuple(full[: d + 1])))


def counts_from_delta(dv: DeltaVector, horizon: int) -> list[int]:
    """Inverse transform: ``i(m) = sum_j delta_j * C(m - j + d, d)`` for m = 0..horizon."""
    d = dv.dim
    out = []
    for m in range(horizon + 1):
        out.append(sum(c * comb(m - j + d, d) for j, c in enumerate(dv.coeffs) if m - j + d >= 0))
    return out


def ehrhart_polynomial(counts: Sequence[int], d: int) -> tuple[Fraction, ...]:
    """Power-basis coefficients of the degree <= d polynomial through ``(m, counts[m])``.

    Built from Newton forward differences: ``sum_k diff_k * C(m, k)``.
    """
    if len(counts) < d + 1:
        raise InsufficientCountsError(f"need {d + 1} counts for dimension {d}, got {len(counts)}")
    row = list(counts[: d + 1])
    diffs = []
    for _ in range(d + 1):
        diffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    poly = [Fraction(0)] * (d + 1)
    falling = [Fraction(1)]  # coefficients of m(m-1)...(m-k+1)
    for k, diff in enumerate(diffs):
        scale = Fraction(diff, factorial(k))
        for j, c in enumerate(falling):
            poly[j] += scale * c
        falling = [Fraction(0)] + falling
        for j in range(len(falling) - 1):
            falling[j] -= k * falling[j + 1]
    return tuple(poly)


def evaluate(poly: Sequence[Fraction], m) -> Fraction:
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * m + c
    return acc
