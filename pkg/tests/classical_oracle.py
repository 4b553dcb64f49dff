"""Ordinary (N = 2) cochain complexes on top of sympy's exact matrices.

Used only as a reference implementation: it shares no code with the package
and builds every object straight from the textbook definitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix


def sympy_domain(kind: str, p: int = 0):
    return GF(p) if kind == "Fp" else QQ


def mat(K, rows, shape) -> DomainMatrix:
    def conv(x):
        x = Fraction(x)
        return K(x.numerator) / K(x.denominator)

    return DomainMatrix([[conv(x) for x in row] for row in rows], shape, K)


def zeros(K, m, n) -> DomainMatrix:
    return DomainMatrix.zeros((m, n), K)


def rank(A: DomainMatrix) -> int:
    m, n = A.shape
    return 0 if m == 0 or n == 0 else A.rank()




def blocks(K, row_dims, col_dims, parts) -> DomainMatrix:
    rows = []
    for bi, m in enumerate(row_dims):
        for r in range(m):
            line = []
            for bj, n in enumerate(col_dims):
                part = parts.get((bi, bj))
                line.extend(part.to_Matrix().row(r) if part is not None else [0] * n)
            rows.append(line)
    return DomainMatrix.from_list_sympy(sum(row_dims), sum(col_dims), rows).convert_to(K)


@dataclass
class Cochain:
    K: object
    dims: dict[int, int]
    d: dict[int, DomainMatrix]

    def dim(self, i):
        return self.dims.get(i, 0)

    def diff(self, i):
        return self.d.get(i, zeros(self.K, self.dim(i + 1), self.dim(i)))

    def degrees(self):
        return sorted(i for i, n in self.dims.items() if n)

    def homology_dims(self) -> dict[int, int]:
        out = {}
        for i in self.degrees():
            h = self.dim(i) - rank(self.diff(i)) - rank(self.diff(i - 1))
            if h:
                out[i] = h
        return out


@dataclass
class Cochainmap:
    source: Cochain
    target: Cochain
    f: dict[int, DomainMatrix]

    def comp(self, i):
        return self.f.get(i, zeros(self.source.K, self.target.dim(i), self.source.dim(i)))


def shift(X: Cochain) -> Cochain:
    """X[1]: degree i holds X^(i+1) with differential -d."""
    return Cochain(X.K, {i - 1: n for i, n in X.dims.items()}, {i - 1: -m for i, m in X.d.items()})


def mapping_cone(f: Cochainmap) -> Cochain:
    """Cone(f)^i = Y^i + X^(i+1) with d = [[d_Y, f], [0, -d_X]]."""
    X, Y, K = f.source, f.target, f.source.K
    degs = set(Y.degrees()) | {i - 1 for i in X.degrees()}
    dims = {i: Y.dim(i) + X.dim(i + 1) for i in degs}
    d = {}
    for i in degs:
        d[i] = blocks(K, [Y.dim(i + 1), X.dim(i + 2)], [Y.dim(i), X.dim(i + 1)],
                      {(0, 0): Y.diff(i), (0, 1): f.comp(i + 1), (1, 1): -X.diff(i + 1)})
    return Cochain(K, dims, d)


def is_null_homotopic(f: Cochainmap) -> bool:
    """Solve f^i = d_Y h^i + h^(i+1) d_X entry by entry for h^i: X^i -> Y^(i-1)."""
    X, Y, K = f.source, f.target, f.source.K
    unknowns = [(i, a, b) for i in range(min(X.degrees(), default=0), max(X.degrees(), default=-1) + 2)
                for a in range(Y.dim(i - 1)) for b in range(X.dim(i))]
    equations = [(i, a, b) for i in X.degrees() for a in range(Y.dim(i)) for b in range(X.dim(i))]
    if not equations:
        return True
    index = {u: k for k, u in enumerate(unknowns)}
    A = [[K.zero] * len(unknowns) for _ in equations]
    rhs = []
    for e, (i, a, b) in enumerate(equations):
        dY, dX = Y.diff(i - 1), X.diff(i)
        # (d_Y h^i)[a, b] = sum_c dY[a, c] h^i[c, b]
        for c in range(Y.dim(i - 1)):
            A[e][index[(i, c, b)]] += dY[a, c].element
        # (h^(i+1) d_X)[a, b] = sum_c h^(i+1)[a, c] dX[c, b]
        for c in range(X.dim(i + 1)):
            A[e][index[(i + 1, a, c)]] += dX[c, b].element
        rhs.append([f.comp(i)[a, b].element])
    if not unknowns:
        return all(r[0] == K.zero for r in rhs)
    M = DomainMatrix(A, (len(equations), len(unknowns)), K)
    b = DomainMatrix(rhs, (len(equations), 1), K)
    return rank(M) == rank(M.hstack(b))
