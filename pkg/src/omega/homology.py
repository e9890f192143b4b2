"""Exact integer homology through Smith normal form.

The elimination works on a dict-of-rows copy of the matrix.  Unit pivots are
taken first, sweeping columns shortest-first and pivoting on the shortest
row with a +-1 entry so fill-in stays low; the boundary matrices here are
dominated by +-1 entries and most of the work ends in that phase.  The remainder is diagonalized by Euclidean row/column
reduction with a minimal-absolute-value pivot, and the diagonal is then
normalized into a divisibility chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .complexes import GradedComplex
from .sparse import SparseMatrix

__all__ = [
    "DEFAULT_MAX_BITS",
    "EntryGrowthError",
    "SNF",
    "HomologyGroup",
    "HomologyTable",
    "smith_normal_form",
    "complex_homology",
    "class_order",
]

DEFAULT_MAX_BITS = 4096


class EntryGrowthError(ArithmeticError):
    """An intermediate entry exceeded the configured bit bound."""

    def __init__(self, bits: int, bound: int, shape: tuple[int, int], pivots_done: int):
        self.bits = bits
        self.bound = bound
        self.shape = shape
        self.pivots_done = pivots_done
        super().__init__(
            f"SNF entry grew to {bits} bits (bound {bound}) on a {shape[0]}x{shape[1]} "
            f"matrix after {pivots_done} pivots"
        )


@dataclass(frozen=True)
class SNF:
    invariants: tuple[int, ...]  # nonzero diagonal d_1 | d_2 | ... | d_r
    rank: int

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(x for x in self.invariants if x > 1)

    @property
    def product(self) -> int:
        p = 1
        for x in self.invariants:
            p *= x
        return p


def _divisibility_chain(diag: list[int]) -> tuple[int, ...]:
    """Turn any nonzero diagonal into its Smith invariant factors."""
    diag = sorted(abs(x) for x in diag)
    n = len(diag)
    # pairwise (a, b) -> (gcd, lcm) keeps the module and converges to the chain
    for i in range(n):
        for j in range(i + 1, n):
            a, b = diag[i], diag[j]
            if b % a:
                g = gcd(a, b)
                diag[i], diag[j] = g, a // g * b
    return tuple(diag)


def smith_normal_form(matrix, max_bits: int = DEFAULT_MAX_BITS) -> SNF:
    """Invariant factors and rank of an integer matrix.

    ``matrix`` is a :class:`SparseMatrix` or a list of integer rows.

    >>> smith_normal_form([[2, 4], [6, 8]])
    SNF(invariants=(2, 4), rank=2)
    """
    if not isinstance(matrix, SparseMatrix):
        matrix = SparseMatrix.from_dense(matrix)
    shape = matrix.shape
    rows: dict[int, dict[int, int]] = {r: dict(row) for r, row in matrix.rows.items() if row}
    cols: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)

    diag: list[int] = []

    def check(v: int) -> None:
        if v.bit_length() > max_bits:
            raise EntryGrowthError(v.bit_length(), max_bits, shape, len(diag))

    def row_axpy(dst: int, src: int, f: int) -> None:
        # rows[dst] -= f * rows[src]
        drow = rows[dst]
        for c, v in rows[src].items():
            nv = drow.get(c, 0) - f * v
            if nv:
                if c not in drow:
                    cols[c].add(dst)
                drow[c] = nv
                check(nv)
            elif c in drow:
                del drow[c]
                cols[c].discard(dst)
        if not drow:
            del rows[dst]

    def col_axpy(dst: int, src: int, f: int) -> None:
        # column dst -= f * column src
        for r in list(cols[src]):
            row = rows[r]
            nv = row.get(dst, 0) - f * row[src]
            if nv:
                if dst not in row:
                    cols[dst].add(r)
                row[dst] = nv
                check(nv)
            elif dst in row:
                del row[dst]
                cols[dst].discard(r)

    def drop(r: int, c: int) -> None:
        for cc in rows.pop(r):
            s = cols[cc]
            s.discard(r)
            if not s and cc != c:
                del cols[cc]
        for rr in cols.pop(c):
            row = rows[rr]
            row.pop(c, None)
            if not row:
                del rows[rr]

    def unit_pass() -> bool:
        # one sweep over columns, shortest first; pivot on the shortest unit row
        progressed = False
        for c in sorted(cols, key=lambda c: (len(cols[c]), c)):
            rs = cols.get(c)
            if not rs:
                continue
            best = None
            for r in rs:
                if abs(rows[r][c]) == 1 and (best is None or len(rows[r]) < len(rows[best])):
                    best = r
            if best is None:
                continue
            r = best
            p = rows[r][c]
            for r2 in list(cols[c]):
                if r2 != r:
                    row_axpy(r2, r, rows[r2][c] * p)
            diag.append(1)
            drop(r, c)
            progressed = True
        return progressed

    def smallest_entry() -> tuple[int, int]:
        best_key, best = None, None
        for r, row in rows.items():
            for c, v in row.items():
                key = (abs(v), len(row) * len(cols[c]))
                if best_key is None or key < best_key:
                    best_key, best = key, (r, c)
        return best

    while rows:
        if unit_pass():
            continue
        r, c = smallest_entry()
        # Euclidean phase: clear column c and row r, re-pivoting on any smaller remainder
        while True:
            p = rows[r][c]
            moved = False
            for r2 in list(cols[c]):
                if r2 == r:
                    continue
                row_axpy(r2, r, rows[r2][c] // p)
                if c in rows.get(r2, ()):
                    r, moved = r2, True
                    break
            if moved:
                continue
            p = rows[r][c]
            for c2 in list(rows[r]):
                if c2 == c:
                    continue
                col_axpy(c2, c, rows[r][c2] // p)
                if c2 in rows[r]:
                    c, moved = c2, True
                    break
            if moved:
                continue
            if len(cols[c]) == 1 and len(rows[r]) == 1:
                break
        diag.append(abs(rows[r][c]))
        drop(r, c)

    inv = _divisibility_chain(diag)
    return SNF(invariants=inv, rank=len(inv))


@dataclass(frozen=True)
class HomologyGroup:
    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        for i, x in enumerate(t):
            if x <= 1:
                raise ValueError(f"torsion coefficients must be > 1, got {x}")
            if i and x % t[i - 1]:
                raise ValueError(f"torsion {t} is not a divisibility chain")

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class HomologyTable:
    groups: dict = field(default_factory=dict)
    fingerprint: str = ""

    def __getitem__(self, n: int) -> HomologyGroup:
        return self.groups.get(n, HomologyGroup())

    def nonzero(self) -> dict:
        return {n: g for n, g in sorted(self.groups.items()) if not g.is_zero()}

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * g.rank for n, g in self.groups.items())

    def to_json(self) -> dict:
        return {
            "fingerprint": self.fingerprint,
            "groups": [
                {"degree": n, "rank": g.rank, "torsion": list(g.torsion)}
                for n, g in sorted(self.groups.items())
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "HomologyTable":
        groups = {g["degree"]: HomologyGroup(g["rank"], tuple(g["torsion"])) for g in obj["groups"]}
        return cls(groups=groups, fingerprint=obj.get("fingerprint", ""))


def complex_homology(c: GradedComplex, max_bits: int = DEFAULT_MAX_BITS) -> HomologyTable:
    """Homology of a chain complex (or cohomology of a dual complex) in every degree.

    ``H_n = ker(out of n) / im(into n)``; torsion is read off the invariant
    factors of the incoming map.
    """
    bad = c.check_square_zero()
    if bad is not None:
        raise ValueError(f"differential does not square to zero out of degree {bad}")
    snfs: dict[int, SNF] = {}

    def snf_out(n: int) -> SNF:
        if n not in snfs:
            m = c.differential.get(n)
            snfs[n] = smith_normal_form(m, max_bits) if m is not None and m.nnz else SNF((), 0)
        return snfs[n]

    groups = {}
    for n in c.degrees:
        out = snf_out(n)
        into = snf_out(n - c.step)
        kernel = c.rank(n) - out.rank
        groups[n] = HomologyGroup(kernel - into.rank, into.torsion)
    return HomologyTable(groups=groups, fingerprint=c.fingerprint())


def class_order(c: GradedComplex, n: int, vector: dict[int, int], max_bits: int = DEFAULT_MAX_BITS) -> int:
    """Order of the class of a cycle in degree ``n``; 0 means infinite order.

    ``vector`` maps basis positions in degree ``n`` to coefficients.  The
    cycle ``z`` generates ``L' = im + Zz`` over the image lattice ``L``; the
    class order is ``[L' : L]`` when the ranks agree, which is the ratio of
    the products of invariant factors.
    """
    incoming = c.matrix(n - c.step)
    base = smith_normal_form(incoming, max_bits) if incoming.nnz else SNF((), 0)
    ext = incoming.copy()
    col = ext.ncols
    ext.ncols += 1
    for r, v in vector.items():
        if v:
            ext.rows.setdefault(r, {})[col] = v
    grown = smith_normal_form(ext, max_bits)
    if grown.rank > base.rank:
        return 0
    return base.product // grown.product
