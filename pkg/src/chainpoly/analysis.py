"""Coefficient-sequence predicates and the three-way delta cross-verification."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .ehrhart import IntPolynomial, series_numerator
from .formats import dump_poset
from .lattice import chain_polytope, count_lattice_points, count_zigzag_fast
from .poset import (
    Labeling,
    NotGradedError,
    Poset,
    count_linear_extensions,
    is_natural,
    is_zigzag,
    natural_labeling,
    rank_function,
    zigzag_poset,
)
from .pp import (
    count_order_preserving,
    verify_complement_bijection,
    w_polynomial_descents,
)

LATTICE, OMEGA, DESCENTS = "lattice", "omega", "descents"
ALL_METHODS = (LATTICE, OMEGA, DESCENTS)
# cheapest first; the first computed method supplies the reported delta
_PREFERENCE = (OMEGA, LATTICE, DESCENTS)


def is_unimodal(p: Iterable[int]) -> tuple[bool, int | None]:
    """Weakly rising then weakly falling over the full stored vector.

    Returns ``(True, peak)`` with the smallest maximizing index, else ``(False, None)``.
    """
    seq = list(p)
    if not seq:
        return True, None
    i = 0
    while i + 1 < len(seq) and seq[i] <= seq[i + 1]:
        i += 1
    while i + 1 < len(seq) and seq[i] >= seq[i + 1]:
        i += 1
    if i != len(seq) - 1:
        return False, None
    top = max(seq)
    return True, seq.index(top)


def is_symmetric(p: IntPolynomial | Sequence[int]) -> bool:
    """Palindromic on indices ``0..degree``; stored trailing zeros are ignored."""
    poly = p if isinstance(p, IntPolynomial) else IntPolynomial(tuple(p))
    eff = poly.effective()
    return eff == eff[::-1]


@dataclass(frozen=True)
class Budget:
    lattice_max_dim: int = 6
    lattice_max_dilation: int = 6
    max_extensions: int = 5_000_000
    omega_max_assignments: int = 10**8


class BudgetExceededError(RuntimeError):
    def __init__(self, overruns: Sequence[tuple[str, str]]):
        self.overruns = tuple(overruns)
        detail = "; ".join(f"{m}: {why}" for m, why in self.overruns)
        super().__init__(f"budget exceeded ({detail})")


def _budget_overrun(P: Poset, method: str, budget: Budget) -> str | None:
    d = P.size
    if method == LATTICE:
        if is_zigzag(P):
            return None
        if d > budget.lattice_max_dim or d > budget.lattice_max_dilation:
            return (
                f"brute-force lattice count needs d={d}, m<={d}; "
                f"caps d<={budget.lattice_max_dim}, m<={budget.lattice_max_dilation}"
            )
    elif method == OMEGA:
        if is_zigzag(P):
            return None
        if (d + 1) ** d > budget.omega_max_assignments:
            return f"order-preserving brute force needs {d + 1}^{d} assignments"
    elif method == DESCENTS:
        e = count_linear_extensions(P)
        if e > budget.max_extensions:
            return f"{e} linear extensions exceed cap {budget.max_extensions}"
    else:
        raise ValueError(f"unknown method {method!r}")
    return None


def lattice_counts(P: Poset) -> list[int]:
    """``i(C(P); m)`` for m = 0..|P|; zig-zag posets use the transfer-matrix counter."""
    d = P.size
    if is_zigzag(P):
        return [count_zigzag_fast(d, m) for m in range(d + 1)]
    Q = chain_polytope(P)
    return [count_lattice_points(Q, m) for m in range(d + 1)]


def _delta_lattice(P: Poset) -> IntPolynomial:
    return IntPolynomial(series_numerator(lattice_counts(P), P.size))


def _delta_omega(P: Poset) -> IntPolynomial:
    d = P.size
    values = [count_order_preserving(P, m + 1) for m in range(d + 1)]
    return IntPolynomial(series_numerator(values, d))


def _delta_descents(P: Poset) -> IntPolynomial:
    return w_polynomial_descents(P, natural_labeling(P)).poly


_COMPUTE = {LATTICE: _delta_lattice, OMEGA: _delta_omega, DESCENTS: _delta_descents}


@dataclass
class VerificationReport:
    poset: str
    d: int
    deltas: dict[str, IntPolynomial]
    identities: dict[str, bool]
    skipped: dict[str, str]
    unimodal: bool
    peak: int | None
    symmetric: bool
    effective_degree: int
    nonnegative: bool
    delta0_is_one: bool
    asserts_unimodal: bool
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def delta(self) -> IntPolynomial:
        for method in _PREFERENCE:
            if method in self.deltas:
                return self.deltas[method]
        raise LookupError("no method was computed")

    @property
    def identities_ok(self) -> bool:
        return all(self.identities.values())

    @property
    def passed(self) -> bool:
        ok = bool(self.deltas) and self.identities_ok and self.nonnegative and self.delta0_is_one
        return ok and (self.unimodal or not self.asserts_unimodal)

    def to_dict(self, include_timings: bool = True) -> dict:
        out = {
            "poset": self.poset,
            "d": self.d,
            "delta": list(self.delta) if self.deltas else None,
            "delta_lattice": _maybe_list(self.deltas.get(LATTICE)),
            "delta_omega": _maybe_list(self.deltas.get(OMEGA)),
            "delta_descents": _maybe_list(self.deltas.get(DESCENTS)),
            "identities": dict(self.identities),
            "identities_ok": self.identities_ok,
            "skipped": dict(self.skipped),
            "unimodal": self.unimodal,
            "peak": self.peak,
            "unimodality_asserted": self.asserts_unimodal,
            "symmetric": self.symmetric,
            "effective_degree": self.effective_degree,
            "nonnegative": self.nonnegative,
            "delta0_is_one": self.delta0_is_one,
            "coefficient_sum": sum(self.delta) if self.deltas else None,
            "pass": self.passed,
        }
        if include_timings:
            out["timings_us"] = {m: round(s * 1e6) for m, s in self.timings.items()}
        return out


def _maybe_list(p: IntPolynomial | None):
    return None if p is None else list(p)


def cross_verify(
    P: Poset,
    methods: Sequence[str] = ALL_METHODS,
    budget: Budget | None = None,
    on_budget: str = "raise",
    asserts_unimodal: bool = False,
) -> VerificationReport:
    """Compute the chain-polytope delta-vector of ``P`` by each enabled method and compare.

    ``on_budget="raise"`` raises :class:`BudgetExceededError` naming every
    method over budget; ``"skip"`` records them in ``report.skipped``.
    """
    budget = budget or Budget()
    overruns = {}
    for method in methods:
        why = _budget_overrun(P, method, budget)
        if why is not None:
            overruns[method] = why
    if overruns and on_budget == "raise":
        raise BudgetExceededError(list(overruns.items()))

    deltas: dict[str, IntPolynomial] = {}
    timings: dict[str, float] = {}
    for method in ALL_METHODS:
        if method not in methods or method in overruns:
            continue
        start = time.perf_counter()
        deltas[method] = _COMPUTE[method](P)
        timings[method] = time.perf_counter() - start

    done = [m for m in ALL_METHODS if m in deltas]
    identities = {
        f"{a}={b}": deltas[a] == deltas[b] for i, a in enumerate(done) for b in done[i + 1:]
    }
    if not deltas:
        return VerificationReport(
            P.describe(), P.size, {}, {}, overruns, False, None, False, -1, False, False,
            asserts_unimodal, timings,
        )
    polys = list(deltas.values())
    primary = next(deltas[m] for m in _PREFERENCE if m in deltas)
    unimodal, peak = is_unimodal(primary)
    return VerificationReport(
        poset=P.describe(),
        d=P.size,
        deltas=deltas,
        identities=identities,
        skipped=overruns,
        unimodal=unimodal,
        peak=peak,
        symmetric=is_symmetric(primary),
        effective_degree=primary.degree,
        nonnegative=all(c >= 0 for p in polys for c in p),
        delta0_is_one=all(p[0] == 1 for p in polys),
        asserts_unimodal=asserts_unimodal,
        timings=timings,
    )


def verify_kirillov(
    n_max: int,
    methods: Sequence[str] = ALL_METHODS,
    budget: Budget | None = None,
    n_min: int = 1,
) -> list[VerificationReport]:
    """Unimodality of delta(P_n) for n = n_min..n_max, cross-checking every method in budget.

    Methods over budget are recorded per ``n`` in ``report.skipped``, never dropped silently.
    """
    if n_max < 1 or n_min < 1:
        raise ValueError(f"need 1 <= n_min <= n_max, got {n_min}..{n_max}")
    return [
        cross_verify(zigzag_poset(n), methods, budget, on_budget="skip", asserts_unimodal=True)
        for n in range(n_min, n_max + 1)
    ]


@dataclass
class GasharovReport:
    poset: str
    graded: bool
    rank: int | None
    natural: bool
    failed_hypotheses: list[str]
    w: IntPolynomial
    unimodal: bool
    peak: int | None

    @property
    def hypotheses_hold(self) -> bool:
        return not self.failed_hypotheses

    @property
    def passed(self) -> bool:
        return self.unimodal or not self.hypotheses_hold

    def to_dict(self) -> dict:
        return {
            "poset": self.poset,
            "graded": self.graded,
            "rank": self.rank,
            "natural": self.natural,
            "hypotheses_hold": self.hypotheses_hold,
            "failed_hypotheses": list(self.failed_hypotheses),
            "w": list(self.w),
            "unimodal": self.unimodal,
            "peak": self.peak,
            "unimodality_asserted": self.hypotheses_hold,
            "pass": self.passed,
        }


def verify_gasharov(P: Poset, w: Labeling) -> GasharovReport:
    """W(P, w) is unimodal when P is graded of rank 1 or 2 and w is natural.

    When a hypothesis fails it is named and the verdict is reported without being asserted.
    """
    failed = []
    try:
        rank = rank_function(P).rank
        graded = True
    except NotGradedError:
        rank, graded = None, False
        failed.append("graded")
    if graded and not 1 <= rank <= 2:
        failed.append("1 <= rank <= 2")
    natural = is_natural(P, w)
    if not natural:
        failed.append("natural labeling")
    poly = w_polynomial_descents(P, w).poly
    unimodal, peak = is_unimodal(poly)
    return GasharovReport(P.describe(), graded, rank, natural, failed, poly, unimodal, peak)


# random posets for the property suites

def _shuffled(rng: random.Random, size: int, relations) -> Poset:
    perm = list(range(size))
    rng.shuffle(perm)
    return Poset.from_relations(size, [(perm[i], perm[j]) for i, j in relations])


def random_poset(rng: random.Random, max_size: int, min_size: int = 1) -> Poset:
    """Random DAG on pairs ``i < j`` with a per-poset density from {0.2, 0.4, 0.6}.

    Element indices are shuffled afterwards so the identity labeling is not
    automatically natural.
    """
    size = rng.randint(min_size, max_size)
    p = rng.choice((0.2, 0.4, 0.6))
    relations = [(i, j) for i in range(size) for j in range(i + 1, size) if rng.random() < p]
    return _shuffled(rng, size, relations)


def random_graded_poset(rng: random.Random, max_size: int, rank: int | None = None) -> Poset:
    """Random graded poset of rank 1 or 2 built level by level.

    Every non-top element gets an upper cover and every non-bottom element a
    lower cover, so all maximal chains run bottom level to top level.
    """
    if max_size < 2:
        raise ValueError("a graded poset of rank >= 1 needs at least 2 elements")
    if rank is None:
        rank = rng.choice((1, 2)) if max_size >= 3 else 1
    size = rng.randint(rank + 1, max_size)
    cuts = sorted(rng.sample(range(1, size), rank))
    bounds = [0, *cuts, size]
    levels = [list(range(bounds[k], bounds[k + 1])) for k in range(rank + 1)]
    p = rng.choice((0.2, 0.4, 0.6))
    relations = set()
    for below, above in zip(levels, levels[1:]):
        for x in below:
            for y in above:
                if rng.random() < p:
                    relations.add((x, y))
        for x in below:
            if not any((x, y) in relations for y in above):
                relations.add((x, rng.choice(above)))
        for y in above:
            if not any((x, y) in relations for x in below):
                relations.add((rng.choice(below), y))
    return _shuffled(rng, size, sorted(relations))


def random_linear_extension(rng: random.Random, P: Poset) -> tuple[int, ...]:
    pending = [len(c) for c in P.lower_covers]
    ready = [x for x in range(P.size) if not pending[x]]
    order = []
    while ready:
        x = ready.pop(rng.randrange(len(ready)))
        order.append(x)
        for y in P.upper_covers[x]:
            pending[y] -= 1
            if not pending[y]:
                ready.append(y)
    return tuple(order)


def random_natural_labeling(rng: random.Random, P: Poset) -> Labeling:
    return Labeling.from_order(random_linear_extension(rng, P))


def chain_polytope_matches_order_polynomial(P: Poset, m_max: int = 4) -> bool:
    """Pointwise ``i(C(P); m) == count_order_preserving(P, m + 1)``, both sides brute force."""
    Q = chain_polytope(P)
    return all(
        count_lattice_points(Q, m) == count_order_preserving(P, m + 1, brute=True)
        for m in range(m_max + 1)
    )


@dataclass
class SelftestResult:
    items: list[dict]
    passed: bool
    failure: dict | None


def run_selftest(seed: int, count: int, max_size: int, budget: Budget | None = None) -> SelftestResult:
    """Random-poset property suites, deterministic for a fixed seed.

    Stops at the first failing poset and returns it serialized in the poset text format.
    """
    rng = random.Random(seed)
    items = []
    for k in range(count):
        P = random_poset(rng, max_size)
        report = cross_verify(P, budget=budget)
        w = natural_labeling(P)
        item = {
            "index": k,
            "kind": "random",
            "poset": dump_poset(P),
            "delta": list(report.delta),
            "identities_ok": report.identities_ok,
            "nonnegative": report.nonnegative and report.delta0_is_one,
            "lattice_matches_order_polynomial": chain_polytope_matches_order_polynomial(P),
            "complement_bijection": all(
                verify_complement_bijection(P, w, m) for m in range(1, 5)
            ),
        }
        item["pass"] = all(
            item[key]
            for key in ("identities_ok", "nonnegative", "lattice_matches_order_polynomial",
                        "complement_bijection")
        )
        items.append(item)
        if not item["pass"]:
            return SelftestResult(items, False, item)

        G = random_graded_poset(rng, max(max_size, 2))
        g = verify_gasharov(G, random_natural_labeling(rng, G))
        gitem = {**g.to_dict(), "index": k, "kind": "graded", "poset": dump_poset(G)}
        gitem["pass"] = g.hypotheses_hold and g.passed
        items.append(gitem)
        if not gitem["pass"]:
            return SelftestResult(items, False, gitem)
    return SelftestResult(items, True, None)
