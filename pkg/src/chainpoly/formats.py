"""Poset text files and canonical JSON documents."""

from __future__ import annotations

import json
import logging
from pathlib import Path

from .poset import CycleError, Poset, PosetError, _find_cycle, _reachability, _redundant_covers

log = logging.getLogger(__name__)

MAX_SAFE_INT = 2**53 - 1


class PosetFormatError(PosetError):
    def __init__(self, line: int, message: str, source: str = "<text>"):
        self.line = line
        self.source = source
        super().__init__(f"{source}:{line}: {message}")


def parse_poset(text: str, source: str = "<text>") -> Poset:
    """Parse ``d`` then one ``i j`` line per cover ("i covered by j"), 0-based.

    Blank lines and ``#`` comments are ignored. Cycles raise
    :class:`CycleError`; transitively implied covers are dropped with a warning.
    """
    size = None
    pairs: list[tuple[int, int]] = []
    lines: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            nums = [int(f) for f in fields]
        except ValueError:
            raise PosetFormatError(lineno, f"expected integers, got {line!r}", source) from None
        if size is None:
            if len(nums) != 1 or nums[0] < 1:
                raise PosetFormatError(lineno, "first line must be a positive element count", source)
            size = nums[0]
            continue
        if len(nums) != 2:
            raise PosetFormatError(lineno, f"expected 'i j', got {line!r}", source)
        i, j = nums
        if not (0 <= i < size and 0 <= j < size):
            raise PosetFormatError(lineno, f"element out of range 0..{size - 1}", source)
        if i == j:
            raise CycleError([i])
        pairs.append((i, j))
        lines.setdefault((i, j), lineno)
    if size is None:
        raise PosetFormatError(0, "empty poset file", source)

    upper = [sorted({j for a, j in pairs if a == i}) for i in range(size)]
    cycle = _find_cycle(size, upper)
    if cycle is not None:
        raise CycleError(cycle)
    rel = set(pairs)
    redundant = _redundant_covers(size, rel, _reachability(size, upper))
    for i, j in sorted(redundant):
        log.warning("%s:%d: dropping cover %d %d implied by transitivity", source, lines[(i, j)], i, j)
    return Poset(size, frozenset(rel - set(redundant)))


def load_poset(path: str | Path) -> Poset:
    path = Path(path)
    return parse_poset(path.read_text(), source=str(path))


def dump_poset(P: Poset) -> str:
    return "\n".join([str(P.size)] + [f"{i} {j}" for i, j in sorted(P.covers)]) + "\n"


def jsonable(obj):
    """Tuples to lists; integers beyond the 53-bit safe range to decimal strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj if abs(obj) <= MAX_SAFE_INT else str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, float):
        raise TypeError("floating point values are not allowed in reports")
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(doc) -> str:
    return json.dumps(jsonable(doc), sort_keys=True, indent=2, ensure_ascii=True) + "\n"
