"""Minimal dict-of-rows sparse integer matrix with arbitrary-precision entries."""

from __future__ import annotations

from typing import Iterable, Iterator


class SparseMatrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: dict | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: dict[int, dict[int, int]] = rows if rows is not None else {}

    @classmethod
    def from_triplets(cls, nrows: int, ncols: int, triplets: Iterable) -> "SparseMatrix":
        m = cls(nrows, ncols)
        for r, c, v in triplets:
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise IndexError(f"entry ({r},{c}) outside {nrows}x{ncols}")
            if v:
                row = m.rows.setdefault(r, {})
                s = row.get(c, 0) + v
                if s:
                    row[c] = s
                else:
                    del row[c]
                    if not row:
                        del m.rows[r]
        return m

    @classmethod
    def from_dense(cls, data) -> "SparseMatrix":
        data = [list(map(int, row)) for row in data]
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        return cls.from_triplets(
            nrows, ncols, ((i, j, v) for i, row in enumerate(data) for j, v in enumerate(row) if v)
        )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def triplets(self) -> Iterator[tuple[int, int, int]]:
        for r in sorted(self.rows):
            row = self.rows[r]
            for c in sorted(row):
                yield r, c, row[c]

    def get(self, r: int, c: int) -> int:
        return self.rows.get(r, {}).get(c, 0)

    def copy(self) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, {r: dict(row) for r, row in self.rows.items()})

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix.from_triplets(self.ncols, self.nrows, ((c, r, v) for r, c, v in self.triplets()))

    def permute(self, row_perm, col_perm) -> "SparseMatrix":
        """Entry ``(r, c)`` moves to ``(row_perm[r], col_perm[c])``."""
        return SparseMatrix.from_triplets(
            self.nrows, self.ncols, ((row_perm[r], col_perm[c], v) for r, c, v in self.triplets())
        )

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out: dict[int, dict[int, int]] = {}
        for r, row in self.rows.items():
            acc: dict[int, int] = {}
            for k, a in row.items():
                orow = other.rows.get(k)
                if orow:
                    for c, b in orow.items():
                        acc[c] = acc.get(c, 0) + a * b
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out[r] = acc
        return SparseMatrix(self.nrows, other.ncols, out)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return SparseMatrix.from_triplets(self.nrows, self.ncols, [*self.triplets(), *other.triplets()])

    def is_zero(self) -> bool:
        return not any(self.rows.values())

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, c, v in self.triplets():
            out[r][c] = v
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and list(self.triplets()) == list(other.triplets())

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"
