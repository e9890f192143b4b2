"""Independent reference implementations used to cross-check the library.

Everything here works on plain tuples and lists and is written straight from
the definitions, trading speed for obviousness.
"""

from __future__ import annotations

from collections import Counter, deque
from functools import reduce
from itertools import combinations
from math import gcd

import sympy


def all_compositions(n: int) -> list[tuple[int, ...]]:
    if n == 0:
        return [()]
    out = []
    for r in range(n):
        for cuts in combinations(range(1, n), r):
            bounds = (0,) + cuts + (n,)
            out.append(tuple(bounds[i + 1] - bounds[i] for i in range(len(bounds) - 1)))
    return out


def parity_patterns(d: int) -> list[tuple[int, ...]]:
    return [w for n in range(d % 2, d + 1, 2) for w in all_compositions(n)]


def successors(w: tuple, d: int) -> set:
    out = set()
    for i in range(len(w) - 1):
        out.add(w[:i] + (w[i] + w[i + 1],) + w[i + 2 :])
    if sum(w) + 2 <= d:
        for i in range(len(w) + 1):
            out.add(w[:i] + (2,) + w[i:])
    return out


def closure(seeds, d: int) -> set:
    seen = set(map(tuple, seeds))
    queue = deque(seen)
    while queue:
        w = queue.popleft()
        for v in successors(w, d):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def reachable(upper: tuple, lower: tuple, d: int) -> bool:
    return tuple(lower) in closure([upper], max(d, sum(lower)))


def rn(w) -> int:
    return sum(w) - len(w)


def boundary(w: tuple, d: int, merge_sign: int = 1, insert_sign: int = 1) -> Counter:
    """Merge part -sum (-1)^k M_k, insert part sum (-1)^k I_k, as a Counter without zeros."""
    acc = Counter()
    s = len(w)
    for k in range(1, s):
        acc[w[: k - 1] + (w[k - 1] + w[k],) + w[k + 1 :]] += merge_sign * -((-1) ** k)
    if sum(w) + 2 <= d:
        for k in range(s + 1):
            acc[w[:k] + (2,) + w[k:]] += insert_sign * (-1) ** k
    return Counter({v: c for v, c in acc.items() if c})


def boundary_matrices(basis: list, d: int, insert_sign: int = 1) -> dict:
    """Dense sympy boundary matrices of the complex spanned by ``basis`` (terms outside dropped)."""
    by_deg: dict[int, list] = {}
    for w in sorted(basis, key=lambda w: (rn(w), sum(w), w)):
        by_deg.setdefault(d - rn(w), []).append(w)
    mats = {}
    for n, ws in by_deg.items():
        tgt = by_deg.get(n - 1, [])
        pos = {w: i for i, w in enumerate(tgt)}
        m = sympy.zeros(len(tgt), len(ws))
        for j, w in enumerate(ws):
            for v, c in boundary(w, d, insert_sign=insert_sign).items():
                if v in pos:
                    m[pos[v], j] += c
        mats[n] = m
    return by_deg, mats


def betti(basis: list, d: int, insert_sign: int = 1) -> dict:
    """Rational Betti numbers of the complex spanned by ``basis``."""
    by_deg, mats = boundary_matrices(basis, d, insert_sign)

    def rank(n):
        m = mats.get(n)
        return m.rank() if m is not None and m.shape[0] and m.shape[1] else 0

    return {n: len(ws) - rank(n) - rank(n + 1) for n, ws in by_deg.items()}


def determinantal_invariants(rows: list[list[int]]) -> tuple[int, ...]:
    """Smith invariant factors d_k / d_{k-1} from gcds of all k x k minors."""
    if not rows or not rows[0]:
        return ()
    m = sympy.Matrix(rows)
    nr, nc = m.shape
    divisors = [1]
    for k in range(1, min(nr, nc) + 1):
        minors = [
            int(m.extract(list(r), list(c)).det())
            for r in combinations(range(nr), k)
            for c in combinations(range(nc), k)
        ]
        g = reduce(gcd, (abs(x) for x in minors), 0)
        if g == 0:
            break
        divisors.append(g)
    return tuple(divisors[i] // divisors[i - 1] for i in range(1, len(divisors)))
