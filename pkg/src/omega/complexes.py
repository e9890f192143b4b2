"""The merge/insert differential complexes over truncated pattern posets.

For a pattern ``w`` with ``s`` entries::

    dM(w) = - sum_{k=1}^{s-1} (-1)^k M_k(w)
    dI(w) =   sum_{k=0}^{s}   (-1)^k I_k(w)

and ``d = dM + dI``.  Insert terms with norm above the truncation level are
dropped.  A pattern sits in homological degree ``d - reduced_norm``, so the
differential lowers degree by one.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Optional

from .patterns import Pattern, insert_at, merge_at, sort_key
from .posets import ClosedPoset, PosetError, enumerate_patterns, is_closed
from .sparse import SparseMatrix

__all__ = [
    "Chain",
    "GradedComplex",
    "VARIANTS",
    "boundary_chain",
    "build_sub_complex",
    "build_quotient_complex",
    "build_full_complex",
    "build_operator_complex",
    "dualize_complex",
    "verify_complex",
]

VARIANTS = ("full", "merge_only", "insert_only")


class Chain(dict):
    """Finite integer combination of patterns; zero coefficients are never stored."""

    def __init__(self, terms: Iterable | Mapping = ()):
        super().__init__()
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            self.add(w, c)

    def add(self, w, c: int) -> None:
        if not c:
            return
        w = w if isinstance(w, Pattern) else Pattern(w)
        s = self.get(w, 0) + c
        if s:
            self[w] = s
        else:
            del self[w]

    def __add__(self, other: "Chain") -> "Chain":
        out = Chain(self)
        for w, c in other.items():
            out.add(w, c)
        return out

    def __neg__(self) -> "Chain":
        return Chain({w: -c for w, c in self.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def scaled(self, k: int) -> "Chain":
        return Chain({w: k * c for w, c in self.items()})

    def support(self) -> frozenset:
        return frozenset(self)

    def sorted_terms(self) -> list[tuple[Pattern, int]]:
        return sorted(self.items(), key=lambda t: sort_key(t[0]))

    def to_json(self) -> list:
        return [[str(w), c] for w, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data) -> "Chain":
        return cls((Pattern.parse(w), int(c)) for w, c in data)

    def __str__(self) -> str:
        if not self:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            parts.append(f"{sign} {mag}{w}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else s


@lru_cache(maxsize=None)
def _boundary_terms(w: Pattern, d: int, variant: str) -> tuple:
    acc: dict[Pattern, int] = {}
    s = len(w)
    if variant != "insert_only":
        for k in range(1, s):
            v = merge_at(w, k)
            acc[v] = acc.get(v, 0) + (1 if k % 2 else -1)
    if variant != "merge_only" and w.norm + 2 <= d:
        for k in range(s + 1):
            v = insert_at(w, k)
            acc[v] = acc.get(v, 0) + (-1 if k % 2 else 1)
    return tuple((v, c) for v, c in acc.items() if c)


def boundary_chain(w, d: int, variant: str = "full", parity_policy: str = "matched") -> Chain:
    """Signed merge/insert boundary of a single pattern at truncation ``d``.

    >>> str(boundary_chain("(1,2,2,1)", 6))
    '(1,2,3) - (1,4,1) + (3,2,1)'
    """
    if isinstance(w, str):
        w = Pattern.parse(w)
    elif not isinstance(w, Pattern):
        w = Pattern(w)
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    if w.norm > d:
        raise ValueError(f"{w} has norm {w.norm} > d={d}")
    if parity_policy == "matched" and (w.norm - d) % 2:
        raise ValueError(f"{w} has norm parity different from d={d}")
    return Chain(_boundary_terms(w, d, variant))


def apply_boundary(chain: Chain, d: int, variant: str = "full") -> Chain:
    out = Chain()
    for w, c in chain.items():
        for v, e in _boundary_terms(w, d, variant):
            out.add(v, c * e)
    return out


@dataclass(frozen=True)
class GradedComplex:
    """Graded free module with sparse integer differentials.

    ``differential[n]`` maps degree ``n`` to degree ``n + step``: ``step`` is
    ``-1`` for a chain complex and ``+1`` for a dual (cochain) complex.  Rows
    of the matrix are indexed by ``basis[n + step]``, columns by ``basis[n]``.
    """

    d: int
    basis: dict
    differential: dict
    kind: str
    step: int = -1
    parity_policy: str = "matched"
    _pos: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        pos = {}
        for n, ws in self.basis.items():
            for i, w in enumerate(ws):
                pos[w] = (n, i)
        object.__setattr__(self, "_pos", pos)

    @property
    def degrees(self) -> list[int]:
        return sorted(n for n, ws in self.basis.items() if ws)

    def rank(self, n: int) -> int:
        return len(self.basis.get(n, ()))

    def position(self, w: Pattern) -> Optional[tuple[int, int]]:
        return self._pos.get(w)

    def matrix(self, n: int) -> SparseMatrix:
        """Differential out of degree ``n`` (zero map if nothing is stored)."""
        m = self.differential.get(n)
        if m is None:
            return SparseMatrix(self.rank(n + self.step), self.rank(n))
        return m

    def apply(self, chain: Chain) -> Chain:
        out = Chain()
        for w, c in chain.items():
            n, i = self._pos[w]
            target = self.basis.get(n + self.step, ())
            m = self.differential.get(n)
            if m is None:
                continue
            for r, row in m.rows.items():
                v = row.get(i)
                if v:
                    out.add(target[r], c * v)
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * len(ws) for n, ws in self.basis.items())

    def check_square_zero(self) -> Optional[int]:
        """Degree ``n`` where the composite out of ``n`` is nonzero, else None."""
        for n in self.degrees:
            nxt = n + self.step
            if nxt not in self.differential or n not in self.differential:
                continue
            if not (self.differential[nxt] @ self.differential[n]).is_zero():
                return n
        return None

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "kind": self.kind,
            "step": self.step,
            "parity_policy": self.parity_policy,
            "degrees": {str(n): [str(w) for w in self.basis[n]] for n in self.degrees},
            "boundaries": {
                str(n): [list(t) for t in self.differential[n].triplets()]
                for n in sorted(self.differential)
                if self.differential[n].nnz
            },
        }

    def fingerprint(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def _assemble(
    patterns: Iterable[Pattern], d: int, kind: str, parity_policy: str, variant: str = "full"
) -> GradedComplex:
    basis: dict[int, list[Pattern]] = {}
    for w in sorted(patterns, key=sort_key):
        basis.setdefault(d - w.reduced_norm, []).append(w)
    basis = {n: tuple(ws) for n, ws in basis.items()}
    index = {n: {w: i for i, w in enumerate(ws)} for n, ws in basis.items()}
    differential = {}
    for n, ws in basis.items():
        target = index.get(n - 1)
        if not target:
            continue
        trip = []
        for j, w in enumerate(ws):
            for v, c in _boundary_terms(w, d, variant):
                i = target.get(v)
                # terms outside the basis are exactly the ones killed by the quotient
                if i is not None:
                    trip.append((i, j, c))
        differential[n] = SparseMatrix.from_triplets(len(basis[n - 1]), len(ws), trip)
    return GradedComplex(d=d, basis=basis, differential=differential, kind=kind, parity_policy=parity_policy)


def build_sub_complex(theta: ClosedPoset) -> GradedComplex:
    """Chain complex ``(Z[theta], d)``; rejects non-closed member sets."""
    ok, witness = is_closed(theta.members, theta.d)
    if not ok:
        w, v = witness
        raise PosetError(f"member set is not closed: {w} -> {v} missing")
    return _assemble(theta.members, theta.d, "sub", theta.parity_policy)


def build_quotient_complex(theta: ClosedPoset) -> GradedComplex:
    """Quotient ``Z[Omega] / Z[theta]``: boundary terms landing in theta are deleted."""
    pool = enumerate_patterns(theta.d, theta.parity_policy)
    return _assemble(
        (w for w in pool if w not in theta), theta.d, "quotient", theta.parity_policy
    )


def build_full_complex(d: int, parity_policy: str = "matched") -> GradedComplex:
    return _assemble(enumerate_patterns(d, parity_policy), d, "full", parity_policy)


def build_operator_complex(d: int, variant: str, parity_policy: str = "matched") -> GradedComplex:
    """Full complex carrying only ``dM`` or only ``dI`` (each squares to zero)."""
    return _assemble(enumerate_patterns(d, parity_policy), d, f"full[{variant}]", parity_policy, variant)


def dualize_complex(c: GradedComplex) -> GradedComplex:
    """Hom(-, Z): same bases, transposed matrices, differential direction reversed."""
    differential = {}
    for n, m in c.differential.items():
        differential[n + c.step] = m.transpose()
    if c.kind.startswith("dual-of(") and c.kind.endswith(")"):
        kind = c.kind[len("dual-of(") : -1]
    else:
        kind = f"dual-of({c.kind})"
    return GradedComplex(
        d=c.d,
        basis=dict(c.basis),
        differential=differential,
        kind=kind,
        step=-c.step,
        parity_policy=c.parity_policy,
    )


def verify_complex(d: int, parity_policy: str = "matched") -> dict:
    """Check dM^2 = 0, dI^2 = 0, dM dI + dI dM = 0 and d^2 = 0 generator by generator."""
    checks = {
        "dM^2=0": lambda w: apply_boundary(apply_boundary(w, d, "merge_only"), d, "merge_only"),
        "dI^2=0": lambda w: apply_boundary(apply_boundary(w, d, "insert_only"), d, "insert_only"),
        "dMdI+dIdM=0": lambda w: apply_boundary(apply_boundary(w, d, "insert_only"), d, "merge_only")
        + apply_boundary(apply_boundary(w, d, "merge_only"), d, "insert_only"),
        "d^2=0": lambda w: apply_boundary(apply_boundary(w, d, "full"), d, "full"),
    }
    basis = enumerate_patterns(d, parity_policy)
    results = {}
    for name, fn in checks.items():
        bad = None
        for w in basis:
            residue = fn(Chain({w: 1}))
            if residue:
                bad = {"generator": str(w), "residue": residue.to_json()}
                break
        results[name] = {"pass": bad is None, "first_violation": bad}
    return {
        "d": d,
        "parity_policy": parity_policy,
        "basis_size": len(basis),
        "identities": results,
        "pass": all(r["pass"] for r in results.values()),
    }
