"""Ordinary chain complexes over a field, written independently of the N-complex code.

Used as a cross-check for the ``N = 2`` case: matrices are plain nested lists,
elimination is a few lines of textbook Gauss-Jordan, and the constructions are
the familiar ones (``C(f)`` with differential ``[[d_Y, f], [0, -d_X]]``,
``SX`` with ``-d``, homotopies ``f = d s + s d``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Field:
    p: int = 0  # 0 means the rationals

    def norm(self, x):
        if self.p:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        return pow(x, -1, self.p) if self.p else 1 / x


def _reduce(F: Field, rows: list[list]) -> tuple[list[list], list[int]]:
    rows = [[F.norm(x) for x in r] for r in rows]
    pivots: list[int] = []
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(rows)) if rows[k][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.norm(x * inv) for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c] != 0:
                m = rows[k][c]
                rows[k] = [F.norm(a - m * b) for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(F: Field, M: list[list]) -> int:
    if not M or not M[0]:
        return 0
    return len(_reduce(F, M)[1])


def consistent(F: Field, A: list[list], b: list) -> bool:
    """Whether ``A x = b`` has a solution."""
    if not A:
        return True
    if not A[0]:
        return all(F.norm(x) == 0 for x in b)
    return rank(F, A) == rank(F, [row + [x] for row, x in zip(A, b)])


def _zeros(r: int, c: int) -> list[list]:
    return [[0] * c for _ in range(r)]


def _mul(A: list[list], B: list[list], inner: int) -> list[list]:
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


@dataclass
class ChainComplex:
    """Objects ``k^dims[i]`` and differentials ``d[i] : deg i -> deg i+1`` (lists of rows)."""

    field: Field
    dims: dict[int, int]
    d: dict[int, list[list]]

    def dim(self, i: int) -> int:
        return self.dims.get(i, 0)

    def diff(self, i: int) -> list[list]:
        m = self.d.get(i)
        return m if m is not None else _zeros(self.dim(i + 1), self.dim(i))

    def span(self) -> range:
        degs = [i for i, n in self.dims.items() if n]
        return range(min(degs), max(degs) + 1) if degs else range(0)

    def homology_dim(self, i: int) -> int:
        F = self.field
        kernel = self.dim(i) - rank(F, self.diff(i))
        return kernel - rank(F, self.diff(i - 1))


def suspension(X: ChainComplex) -> ChainComplex:
    F = X.field
    dims = {i - 1: n for i, n in X.dims.items()}
    d = {i - 1: [[F.norm(-x) for x in row] for row in m] for i, m in X.d.items()}
    return ChainComplex(F, dims, d)


def cone(X: ChainComplex, Y: ChainComplex, f: dict[int, list[list]]) -> ChainComplex:
    """``C(f)^m = Y^m + X^(m+1)`` with ``[[d_Y, f^(m+1)], [0, -d_X^(m+1)]]``."""
    F = X.field
    degs = set(Y.dims) | {i - 1 for i in X.dims}
    dims = {m: Y.dim(m) + X.dim(m + 1) for m in degs}
    d = {}
    for m in degs:
        rows = []
        fm = f.get(m + 1) or _zeros(Y.dim(m + 1), X.dim(m + 1))
        dY, dX = Y.diff(m), X.diff(m + 1)
        for a in range(Y.dim(m + 1)):
            rows.append([F.norm(x) for x in dY[a]] + [F.norm(x) for x in fm[a]])
        for a in range(X.dim(m + 2)):
            rows.append([0] * Y.dim(m) + [F.norm(-x) for x in dX[a]])
        d[m] = rows
    return ChainComplex(F, dims, d)


def is_null_homotopic(X: ChainComplex, Y: ChainComplex, f: dict[int, list[list]]) -> bool:
    """Solve ``f^i = d_Y^(i-1) s^i + s^(i+1) d_X^i`` for ``s^i : X^i -> Y^(i-1)``.

    Unknowns are the individual entries ``s^i[a][b]``; each equation is one
    entry of ``f^i``, written out directly.
    """
    F = X.field
    degs = sorted(set(X.dims) | set(Y.dims))
    unknowns = {}
    for i in range(degs[0], degs[-1] + 2) if degs else []:
        for a in range(Y.dim(i - 1)):
            for b in range(X.dim(i)):
                unknowns[(i, a, b)] = len(unknowns)
    rows, rhs = [], []
    for i in range(degs[0], degs[-1] + 1) if degs else []:
        fi = f.get(i) or _zeros(Y.dim(i), X.dim(i))
        dY, dX = Y.diff(i - 1), X.diff(i)
        for a in range(Y.dim(i)):
            for b in range(X.dim(i)):
                row = [0] * len(unknowns)
                # (d_Y s^i)[a][b] = sum_c dY[a][c] s^i[c][b]
                for c in range(Y.dim(i - 1)):
                    row[unknowns[(i, c, b)]] += dY[a][c]
                # (s^(i+1) d_X)[a][b] = sum_c s^(i+1)[a][c] dX[c][b]
                for c in range(X.dim(i + 1)):
                    row[unknowns[(i + 1, a, c)]] += dX[c][b]
                rows.append(row)
                rhs.append(fi[a][b])
    if not unknowns:
        return all(F.norm(x) == 0 for x in rhs)
    return consistent(F, rows, rhs)
