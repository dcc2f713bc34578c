"""Dense matrices of polynomials, determinants and minors."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .ideal import Ideal
from .poly import Poly, RingMismatch


@dataclass(frozen=True, eq=False)
class PolyMatrix:
    rows: int
    cols: int
    entries: tuple[Poly, ...]  # row-major

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"expected {self.rows * self.cols} entries, got {len(self.entries)}")
        ring = self.entries[0].ring
        if any(e.ring != ring for e in self.entries):
            raise RingMismatch("matrix entries live in different rings")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Poly]]) -> "PolyMatrix":
        r = len(rows)
        c = len(rows[0]) if rows else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        return cls(r, c, tuple(e for row in rows for e in row))

    @classmethod
    def identity(cls, ring, n: int, scale: Poly | int = 1) -> "PolyMatrix":
        ring = tuple(ring)
        d = scale if isinstance(scale, Poly) else Poly.const(ring, scale)
        z = Poly.zero(ring)
        return cls(n, n, tuple(d if i == j else z for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, ring, rows: int, cols: int) -> "PolyMatrix":
        return cls(rows, cols, (Poly.zero(tuple(ring)),) * (rows * cols))

    @property
    def ring(self) -> tuple[str, ...]:
        return self.entries[0].ring

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Poly:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Poly]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list[Poly]:
        return [self[i, j] for i in range(self.rows)]

    def tolist(self) -> list[list[Poly]]:
        return [self.row(i) for i in range(self.rows)]

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, tuple(fn(e) for e in self.entries))

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "PolyMatrix":
        rows, cols = list(rows), list(cols)
        return PolyMatrix(len(rows), len(cols), tuple(self[i, j] for i in rows for j in cols))

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._same_shape(other)
        return PolyMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._same_shape(other)
        return PolyMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "PolyMatrix":
        return self.map(lambda e: -e)

    def scale(self, c) -> "PolyMatrix":
        return self.map(lambda e: e * c)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = Poly.zero(self.ring)
                for k in range(self.cols):
                    a = self[i, k]
                    b = other[k, j]
                    if a and b:
                        acc = acc + a * b
                out.append(acc)
        return PolyMatrix(self.rows, other.cols, tuple(out))

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def subs(self, values, ring=None) -> "PolyMatrix":
        return self.map(lambda e: e.subs(values, ring))

    def to_ring(self, ring) -> "PolyMatrix":
        return self.map(lambda e: e.to_ring(ring))

    def hstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return PolyMatrix.from_rows([self.row(i) + other.row(i) for i in range(self.rows)])

    def det(self) -> Poly:
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        return bareiss_det(self.tolist())

    def adjugate(self) -> "PolyMatrix":
        n = self.rows
        if not self.is_square:
            raise ValueError("adjugate of a non-square matrix")
        if n == 1:
            return PolyMatrix(1, 1, (Poly.const(self.ring, 1),))
        out = []
        for i in range(n):
            for j in range(n):
                # adj[i][j] = (-1)^(i+j) * minor deleting row j, column i
                m = self.submatrix([r for r in range(n) if r != j], [c for c in range(n) if c != i]).det()
                out.append(m if (i + j) % 2 == 0 else -m)
        return PolyMatrix(n, n, tuple(out))

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(e) for e in self.row(i)) for i in range(self.rows)) + "]"


def block_diag(*blocks: PolyMatrix) -> PolyMatrix:
    ring = blocks[0].ring
    R = sum(b.rows for b in blocks)
    C = sum(b.cols for b in blocks)
    z = Poly.zero(ring)
    grid = [[z] * C for _ in range(R)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                grid[r0 + i][c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return PolyMatrix.from_rows(grid)


def bareiss_det(rows: list[list[Poly]]) -> Poly:
    """Fraction-free Gaussian elimination; every division is exact."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    ring = rows[0][0].ring
    M = [list(r) for r in rows]
    sign = 1
    prev = Poly.const(ring, 1)
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return Poly.zero(ring)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = num.exact_div(prev) if not prev.is_constant() else num.scale(1 / prev.constant_term())
            M[i][k] = Poly.zero(ring)
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return d if sign == 1 else -d


def all_minors(M: PolyMatrix, k: int) -> dict[tuple[tuple[int, ...], tuple[int, ...]], Poly]:
    """Every k x k minor, keyed by (row indices, column indices).

    Built bottom-up by Laplace expansion along the first chosen row, so each
    smaller minor is computed once.
    """
    if not 1 <= k <= min(M.rows, M.cols):
        raise ValueError(f"minor size {k} out of range for a {M.rows}x{M.cols} matrix")
    ring = M.ring
    # level 1
    level = {((i,), (j,)): M[i, j] for i in range(M.rows) for j in range(M.cols)}
    for size in range(2, k + 1):
        nxt = {}
        for rows in combinations(range(M.rows), size):
            sub_rows = rows[1:]
            r0 = rows[0]
            for cols in combinations(range(M.cols), size):
                acc = Poly.zero(ring)
                for pos, c in enumerate(cols):
                    a = M[r0, c]
                    if a.is_zero():
                        continue
                    rest = level[(sub_rows, cols[:pos] + cols[pos + 1:])]
                    if rest.is_zero():
                        continue
                    term = a * rest
                    acc = acc + term if pos % 2 == 0 else acc - term
                nxt[(rows, cols)] = acc
        level = nxt
    return level


def minors(M: PolyMatrix, k: int) -> Ideal:
    """Ideal generated by all k x k minors of ``M``."""
    vals = all_minors(M, k)
    return Ideal.of([p for p in vals.values() if not p.is_zero()], M.ring)
