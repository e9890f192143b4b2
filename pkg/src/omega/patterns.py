"""Real-root multiplicity patterns and their elementary operations.

A pattern is a finite composition ``(w_1, ..., w_q)`` of positive integers.
Two elementary operations move down the poset:

* merge ``M_i`` replaces the adjacent entries ``w_i, w_{i+1}`` by their sum;
* insert ``I_i`` places a new entry ``2`` after position ``i``
  (``I_0`` prepends, ``I_q`` appends).

Both raise the reduced norm by exactly one.

>>> w = Pattern.parse("(1,2,1)")
>>> w.norm, w.reduced_norm, w.support_size
(4, 1, 3)
>>> str(merge_at(w, 1)), str(insert_at(w, 3))
('(3,1)', '(1,2,1,2)')
"""

from __future__ import annotations

import re
from collections import deque
from functools import lru_cache
from typing import Iterable, Iterator

__all__ = [
    "Pattern",
    "PatternParseError",
    "merge_at",
    "insert_at",
    "elementary_successors",
    "order_leq",
    "compositions",
    "sort_key",
]


class PatternParseError(ValueError):
    """Malformed pattern text; ``pos`` is the 0-based offending offset."""

    def __init__(self, text: str, pos: int, reason: str):
        self.text = text
        self.pos = pos
        self.reason = reason
        super().__init__(f"{reason} at position {pos} in {text!r}")


class Pattern(tuple):
    """Immutable composition of positive integers; ``Pattern()`` is the empty pattern."""

    __slots__ = ()

    def __new__(cls, entries: Iterable[int] = ()):
        entries = tuple(entries)
        for e in entries:
            if isinstance(e, bool) or not isinstance(e, int):
                raise TypeError(f"pattern entries must be int, got {e!r}")
            if e < 1:
                raise ValueError(f"pattern entries must be >= 1, got {e}")
        return tuple.__new__(cls, entries)

    @classmethod
    def _trusted(cls, entries: Iterable[int]) -> "Pattern":
        # skips validation; callers guarantee positive ints
        return tuple.__new__(cls, entries)

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def norm(self) -> int:
        return sum(self)

    @property
    def reduced_norm(self) -> int:
        return sum(self) - len(self)

    @property
    def support_size(self) -> int:
        return len(self)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"

    def __repr__(self) -> str:
        return f"Pattern({str(self)!r})"

    @classmethod
    def parse(cls, text: str, juxtaposed: bool = False) -> "Pattern":
        """Parse ``"(1,2,1)"`` or ``"()"``.

        With ``juxtaposed=True`` a comma-free body is read digit by digit,
        so ``"(1221)"`` gives ``(1,2,2,1)``.  Without it ``"(12)"`` is the
        single entry twelve.
        """
        return _parse(text, juxtaposed)


_INT = re.compile(r"[0-9]+")


def _parse(text: str, juxtaposed: bool) -> Pattern:
    if not isinstance(text, str):
        raise TypeError(f"expected str, got {type(text).__name__}")
    s = text.strip()
    off = len(text) - len(text.lstrip())
    if not s.startswith("("):
        raise PatternParseError(text, off, "expected '('")
    if not s.endswith(")"):
        raise PatternParseError(text, off + len(s), "expected ')'")
    body = s[1:-1]
    base = off + 1
    if body == "":
        return Pattern()
    if juxtaposed and "," not in body:
        for i, ch in enumerate(body):
            if not ch.isdigit() or ch == "0":
                raise PatternParseError(text, base + i, "expected digit 1-9")
        return Pattern._trusted(int(ch) for ch in body)
    entries = []
    pos = 0
    while True:
        m = _INT.match(body, pos)
        if m is None:
            raise PatternParseError(text, base + pos, "expected integer")
        value = int(m.group())
        if value < 1:
            raise PatternParseError(text, base + pos, "entries must be >= 1")
        entries.append(value)
        pos = m.end()
        if pos == len(body):
            break
        if body[pos] != ",":
            raise PatternParseError(text, base + pos, "expected ',' or ')'")
        pos += 1
    return Pattern._trusted(entries)


def sort_key(w: Pattern) -> tuple:
    """Canonical basis order: reduced norm, then norm, then entries."""
    return (w.reduced_norm, w.norm, tuple(w))


def merge_at(w: Pattern, i: int) -> Pattern:
    """Merge entries ``i`` and ``i+1`` (1-based), ``1 <= i <= len(w) - 1``."""
    if not 1 <= i <= len(w) - 1:
        raise IndexError(f"merge index {i} out of range for {w} (need 1..{len(w) - 1})")
    return Pattern._trusted(w[: i - 1] + (w[i - 1] + w[i],) + w[i + 1 :])


def insert_at(w: Pattern, i: int) -> Pattern:
    """Insert a 2 after position ``i``, ``0 <= i <= len(w)``."""
    if not 0 <= i <= len(w):
        raise IndexError(f"insert index {i} out of range for {w} (need 0..{len(w)})")
    return Pattern._trusted(w[:i] + (2,) + w[i:])


def _successors(w: Pattern, d: int) -> Iterator[Pattern]:
    for i in range(1, len(w)):
        yield merge_at(w, i)
    if sum(w) + 2 <= d:
        for i in range(len(w) + 1):
            yield insert_at(w, i)


def elementary_successors(w: Pattern, d: int) -> frozenset[Pattern]:
    """All single merges, plus the inserts that stay within norm ``d``."""
    if w.norm > d:
        raise ValueError(f"{w} has norm {w.norm} > d={d}")
    return frozenset(_successors(w, d))


@lru_cache(maxsize=65536)
def _reachable(target: Pattern, source: Pattern) -> bool:
    if target == source:
        return True
    n, r = target.norm, target.reduced_norm
    if source.norm > n or source.reduced_norm >= r:
        return False
    # every step raises the reduced norm by one, so BFS layers are reduced-norm levels
    seen = {source}
    frontier = deque([source])
    while frontier:
        w = frontier.popleft()
        for v in _successors(w, n):
            if v in seen:
                continue
            if v == target:
                return True
            if v.reduced_norm < r:
                seen.add(v)
                frontier.append(v)
    return False


def order_leq(lower: Pattern, upper: Pattern, d: int) -> bool:
    """True iff ``lower`` is reachable from ``upper`` by merges and inserts.

    Norms never decrease along a path, so every intermediate pattern stays
    within ``max(d, lower.norm)`` automatically.
    """
    return _reachable(Pattern(lower), Pattern(upper))


def compositions(n: int) -> Iterator[Pattern]:
    """All compositions of ``n`` (``n == 0`` yields the empty pattern)."""
    if n == 0:
        yield Pattern()
        return
    # a composition of n <-> a subset of the n-1 cut points
    for mask in range(1 << (n - 1)):
        parts = []
        run = 1
        for bit in range(n - 1):
            if mask >> bit & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield Pattern._trusted(parts)
