"""Exact dense linear algebra over prime fields, the rationals and the integers.

Every scalar is stored in canonical form: residues in ``[0, p)`` for ``F_p``,
:class:`fractions.Fraction` in lowest terms for ``Q`` and Python ints for ``Z``.
Nothing here ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, NotASubobject, UnsupportedDomain

# Above this modulus the int64 elimination could overflow.
_NUMPY_PRIME_LIMIT = 2**31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class CoefficientDomain:
    """Scalar ring: ``Fp`` (with prime ``p``), ``Q`` or ``Z``."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("Fp", "Q", "Z"):
            raise UnsupportedDomain(f"unknown coefficient kind {self.kind!r}")
        if self.kind == "Fp" and not _is_prime(self.p):
            raise UnsupportedDomain(f"F_p needs a prime p, got {self.p}")
        if self.kind != "Fp" and self.p != 0:
            raise UnsupportedDomain("only prime fields carry a modulus")

    @classmethod
    def prime_field(cls, p: int) -> "CoefficientDomain":
        return cls("Fp", p)

    @classmethod
    def rationals(cls) -> "CoefficientDomain":
        return cls("Q")

    @classmethod
    def integers(cls) -> "CoefficientDomain":
        return cls("Z")

    @classmethod
    def parse(cls, text: str) -> "CoefficientDomain":
        """Parse ``"Q"``, ``"Z"`` or ``"Fp:<p>"``."""
        text = text.strip()
        if text == "Q":
            return cls.rationals()
        if text == "Z":
            return cls.integers()
        if text.startswith("Fp:"):
            try:
                p = int(text[3:])
            except ValueError:
                raise UnsupportedDomain(f"bad prime in {text!r}") from None
            return cls.prime_field(p)
        raise UnsupportedDomain(f"unknown coefficient domain {text!r}")

    def __str__(self) -> str:
        return f"Fp:{self.p}" if self.kind == "Fp" else self.kind

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def coerce(self, x) -> int | Fraction:
        """Bring an int, Fraction or ``"a/b"`` string into canonical form."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, bool):
            x = int(x)
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator == 1:
                x = x.numerator
            elif self.kind == "Fp":
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            else:
                raise UnsupportedDomain(f"non-integer {x} in Z")
        if not isinstance(x, (int, np.integer)):
            raise TypeError(f"cannot coerce {x!r} into {self}")
        x = int(x)
        return x % self.p if self.kind == "Fp" else x

    def inv(self, x):
        if self.kind == "Fp":
            return pow(x, -1, self.p)
        if self.kind == "Q":
            return 1 / x
        if x in (1, -1):
            return x
        raise UnsupportedDomain(f"{x} is not a unit in Z")

    def reduce(self, x):
        """Canonicalize the result of ring arithmetic on canonical elements."""
        return x % self.p if self.kind == "Fp" else x

    def format(self, x) -> int | str:
        """JSON-friendly literal: an int, or an ``"a/b"`` string for proper fractions."""
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return int(x)


@dataclass(frozen=True, eq=True)
class ExactMatrix:
    """Immutable dense matrix with row-major canonical entries."""

    domain: CoefficientDomain
    nrows: int
    ncols: int
    entries: tuple

    def __post_init__(self):
        if self.nrows < 0 or self.ncols < 0:
            raise DimensionMismatch("negative matrix dimension")
        if len(self.entries) != self.nrows * self.ncols:
            raise DimensionMismatch(
                f"{len(self.entries)} entries for a {self.nrows}x{self.ncols} matrix"
            )

    # -- construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, domain: CoefficientDomain, rows: Sequence[Sequence], ncols: int | None = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise DimensionMismatch(f"row {i} has length {len(r)}, expected {ncols}")
        flat = tuple(domain.coerce(x) for r in rows for x in r)
        return cls(domain, len(rows), ncols, flat)

    @classmethod
    def _raw(cls, domain, rows: list[list], nrows: int, ncols: int) -> "ExactMatrix":
        # rows are already canonical
        return cls(domain, nrows, ncols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, domain: CoefficientDomain, nrows: int, ncols: int) -> "ExactMatrix":
        return cls(domain, nrows, ncols, (domain.zero,) * (nrows * ncols))

    @classmethod
    def identity(cls, domain: CoefficientDomain, n: int) -> "ExactMatrix":
        z, o = domain.zero, domain.one
        return cls(domain, n, n, tuple(o if i == j else z for i in range(n) for j in range(n)))

    @classmethod
    def block(
        cls,
        domain: CoefficientDomain,
        row_sizes: Sequence[int],
        col_sizes: Sequence[int],
        blocks: dict[tuple[int, int], "ExactMatrix"],
    ) -> "ExactMatrix":
        """Assemble a block matrix; missing blocks are zero."""
        nrows, ncols = sum(row_sizes), sum(col_sizes)
        out = [[domain.zero] * ncols for _ in range(nrows)]
        roff = [sum(row_sizes[:k]) for k in range(len(row_sizes))]
        coff = [sum(col_sizes[:k]) for k in range(len(col_sizes))]
        for (bi, bj), m in blocks.items():
            if m.shape != (row_sizes[bi], col_sizes[bj]):
                raise DimensionMismatch(
                    f"block ({bi},{bj}) has shape {m.shape}, expected {(row_sizes[bi], col_sizes[bj])}"
                )
            for i in range(m.nrows):
                row = out[roff[bi] + i]
                for j in range(m.ncols):
                    row[coff[bj] + j] = m.entries[i * m.ncols + j]
        return cls._raw(domain, out, nrows, ncols)

    # -- access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.entries[i * self.ncols + j]

    def rows(self) -> list[list]:
        c = self.ncols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.nrows)]

    def columns(self) -> list[list]:
        return [[self.entries[i * self.ncols + j] for i in range(self.nrows)] for j in range(self.ncols)]

    def column(self, j: int) -> list:
        return [self.entries[i * self.ncols + j] for i in range(self.nrows)]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def to_literal(self) -> list[list]:
        return [[self.domain.format(x) for x in r] for r in self.rows()]

    def __repr__(self) -> str:
        return f"ExactMatrix({self.domain}, {self.to_literal()})"

    # -- arithmetic ---------------------------------------------------------

    def _check_same(self, other: "ExactMatrix"):
        if self.domain != other.domain:
            raise DimensionMismatch(f"domain mismatch: {self.domain} vs {other.domain}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        red = self.domain.reduce
        return ExactMatrix(self.domain, self.nrows, self.ncols,
                           tuple(red(a + b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "ExactMatrix":
        red = self.domain.reduce
        return ExactMatrix(self.domain, self.nrows, self.ncols, tuple(red(-a) for a in self.entries))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def scale(self, c) -> "ExactMatrix":
        c = self.domain.coerce(c)
        red = self.domain.reduce
        return ExactMatrix(self.domain, self.nrows, self.ncols, tuple(red(c * a) for a in self.entries))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        dom = self.domain
        n, k, m = self.nrows, self.ncols, other.ncols
        if n == 0 or m == 0 or k == 0:
            return ExactMatrix.zeros(dom, n, m)
        a, b = self.entries, other.entries
        bcols = [b[j::m] for j in range(m)]
        red = dom.reduce
        zero = dom.zero
        out = []
        for i in range(n):
            row = a[i * k:(i + 1) * k]
            nz = [(t, x) for t, x in enumerate(row) if x != 0]
            if not nz:
                out.extend([zero] * m)
                continue
            for j in range(m):
                col = bcols[j]
                s = zero
                for t, x in nz:
                    y = col[t]
                    if y != 0:
                        s += x * y
                out.append(red(s))
        return ExactMatrix(dom, n, m, tuple(out))

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(self.domain, self.ncols, self.nrows,
                           tuple(self.entries[i * self.ncols + j] for j in range(self.ncols) for i in range(self.nrows)))

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "ExactMatrix":
        rows, cols = list(rows), list(cols)
        return ExactMatrix(self.domain, len(rows), len(cols),
                           tuple(self.entries[i * self.ncols + j] for i in rows for j in cols))

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        if self.nrows != other.nrows:
            raise DimensionMismatch("hstack needs equal row counts")
        return ExactMatrix.block(self.domain, [self.nrows], [self.ncols, other.ncols], {(0, 0): self, (0, 1): other})

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        if self.ncols != other.ncols:
            raise DimensionMismatch("vstack needs equal column counts")
        return ExactMatrix(self.domain, self.nrows + other.nrows, self.ncols, self.entries + other.entries)

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        red = self.domain.reduce
        a, b = self.rows(), other.rows()
        out = []
        for ra in a:
            for rb in b:
                out.extend(red(x * y) for x in ra for y in rb)
        return ExactMatrix(self.domain, self.nrows * other.nrows, self.ncols * other.ncols, tuple(out))

    def to_domain(self, domain: CoefficientDomain) -> "ExactMatrix":
        return ExactMatrix(domain, self.nrows, self.ncols, tuple(domain.coerce(x) for x in self.entries))


# -- elimination ---------------------------------------------------------------


def _rref_numpy_array(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """In-place RREF of an int64 array with entries in ``[0, p)``; returns (rows, pivots)."""
    m, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, col])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, col]), -1, p)
        if inv != 1:
            a[r, col:] = (a[r, col:] * inv) % p
        others = np.flatnonzero(a[:, col])
        others = others[others != r]
        if others.size:
            a[others, col:] = (a[others, col:] - np.outer(a[others, col], a[r, col:])) % p
        pivots.append(col)
        r += 1
    return a[:r], pivots


def _rref_numpy(rows: list[list], ncols: int, p: int) -> tuple[list[list], list[int]]:
    a = np.array(rows, dtype=np.int64).reshape(len(rows), ncols) % p
    red, pivots = _rref_numpy_array(a, p)
    return red.tolist(), pivots


def _rref_python(domain: CoefficientDomain, rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    rows = [list(r) for r in rows]
    m = len(rows)
    fp = domain.p if domain.kind == "Fp" else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = domain.inv(prow[col])
        nz = [j for j in range(col, ncols) if prow[j] != 0]
        for j in nz:
            prow[j] = prow[j] * inv % fp if fp else prow[j] * inv
        for i in range(m):
            if i == r:
                continue
            ri = rows[i]
            c = ri[col]
            if c == 0:
                continue
            if fp:
                for j in nz:
                    ri[j] = (ri[j] - c * prow[j]) % fp
            else:
                for j in nz:
                    ri[j] -= c * prow[j]
        pivots.append(col)
        r += 1
    return rows[:r], pivots


def rref(A: ExactMatrix) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over a field: (nonzero rows, pivot columns)."""
    dom = A.domain
    if dom.kind == "Z":
        dom = CoefficientDomain.rationals()
        A = A.to_domain(dom)
    if A.nrows == 0 or A.ncols == 0:
        return [], []
    if dom.kind == "Fp" and dom.p < _NUMPY_PRIME_LIMIT:
        return _rref_numpy(A.rows(), A.ncols, dom.p)
    return _rref_python(dom, A.rows(), A.ncols)


def rank(A: ExactMatrix) -> int:
    """Exact rank; for integer matrices this is the rank over Q."""
    return len(rref(A)[1])


def kernel_basis(A: ExactMatrix) -> ExactMatrix:
    """Columns form a basis of ``{v : A v = 0}``.

    Over ``Z`` the basis comes from the Smith form and spans the saturated
    kernel lattice.
    """
    dom = A.domain
    n = A.ncols
    if dom.kind == "Z":
        snf = smith_normal_form(A)
        k = len(snf.invariant_factors)
        return snf.V.submatrix(range(n), range(k, n))
    red_rows, pivots = rref(A)
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    cols = []
    for f in free:
        v = [dom.zero] * n
        v[f] = dom.one
        for k, pc in enumerate(pivots):
            x = red_rows[k][f]
            if x != 0:
                v[pc] = dom.reduce(-x)
        cols.append(v)
    return ExactMatrix._raw(dom, [[cols[c][i] for c in range(len(cols))] for i in range(n)], n, len(cols))


def image_basis(A: ExactMatrix) -> ExactMatrix:
    """Columns of ``A`` (pivot columns) forming a basis of its column space; fields only."""
    if not A.domain.is_field:
        raise UnsupportedDomain("image_basis needs a field; use column_lattice_basis over Z")
    _, pivots = rref(A)
    return A.submatrix(range(A.nrows), pivots)


def solve(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix | None:
    """Some ``X`` with ``A X = B``, or ``None`` when the system is inconsistent."""
    if A.domain != B.domain:
        raise DimensionMismatch(f"domain mismatch: {A.domain} vs {B.domain}")
    if A.nrows != B.nrows:
        raise DimensionMismatch(f"A has {A.nrows} rows but B has {B.nrows}")
    dom = A.domain
    n, k = A.ncols, B.ncols
    if dom.kind == "Z":
        return _solve_integer(A, B)
    if A.nrows == 0:
        return ExactMatrix.zeros(dom, n, k)
    red_rows, pivots = rref(A.hstack(B))
    if pivots and pivots[-1] >= n:
        return None
    out = [[dom.zero] * k for _ in range(n)]
    for r, pc in enumerate(pivots):
        out[pc] = red_rows[r][n:]
    return ExactMatrix._raw(dom, out, n, k)


def _solve_integer(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix | None:
    snf = smith_normal_form(A)
    dom = A.domain
    UB = (snf.U @ B).rows()
    n, k = A.ncols, B.ncols
    diag = snf.invariant_factors
    Y = [[0] * k for _ in range(n)]
    for i, row in enumerate(UB):
        if i < len(diag):
            d = diag[i]
            for j, x in enumerate(row):
                if x % d:
                    return None
                Y[i][j] = x // d
        elif any(row):
            return None
    return snf.V @ ExactMatrix._raw(dom, Y, n, k)


# -- Smith normal form -----------------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    U: ExactMatrix
    D: ExactMatrix
    V: ExactMatrix
    invariant_factors: tuple[int, ...]


def smith_normal_form(A: ExactMatrix) -> SmithForm:
    """Smith normal form over ``Z`` using smallest-absolute-value pivoting."""
    if A.domain.kind != "Z":
        raise UnsupportedDomain("Smith normal form is defined here over Z only")
    m, n = A.shape
    a = A.rows()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def add_row(dst, src, c):  # row_dst += c * row_src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in a:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    diag: list[int] = []
    for s in range(min(m, n)):
        while True:
            best = None
            for i in range(s, m):
                for j in range(s, n):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, pi, pj = best
            swap_rows(s, pi)
            swap_cols(s, pj)
            piv = a[s][s]
            dirty = False
            for i in range(s + 1, m):
                if a[i][s]:
                    add_row(i, s, -(a[i][s] // piv))
                    dirty = dirty or a[i][s] != 0
            for j in range(s + 1, n):
                if a[s][j]:
                    add_col(j, s, -(a[s][j] // piv))
                    dirty = dirty or a[s][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(s + 1, m) for j in range(s + 1, n) if a[i][j] % piv), None
            )
            if bad is not None:
                add_row(s, bad, 1)
                continue
            if piv < 0:
                a[s] = [-x for x in a[s]]
                U[s] = [-x for x in U[s]]
            break
        if best is None:
            break
        diag.append(a[s][s])
    Z = CoefficientDomain.integers()
    return SmithForm(
        U=ExactMatrix._raw(Z, U, m, m),
        D=ExactMatrix._raw(Z, a, m, n),
        V=ExactMatrix._raw(Z, V, n, n),
        invariant_factors=tuple(diag),
    )


def column_lattice_basis(A: ExactMatrix) -> ExactMatrix:
    """Basis of the column span of ``A``; over ``Z`` a lattice basis via the Smith form."""
    if A.domain.is_field:
        return image_basis(A)
    snf = smith_normal_form(A)
    k = len(snf.invariant_factors)
    return (A @ snf.V).submatrix(range(A.nrows), range(k))


def in_span(gens: ExactMatrix, vectors: ExactMatrix) -> bool:
    """Whether every column of ``vectors`` is a combination of the columns of ``gens``."""
    return solve(gens, vectors) is not None


def subquotient_invariants(gens_big: ExactMatrix, gens_small: ExactMatrix) -> tuple[int, tuple[int, ...]]:
    """Structure of ``span(gens_big) / span(gens_small)`` as ``(free_rank, torsion)``."""
    if gens_big.domain != gens_small.domain:
        raise DimensionMismatch("generator sets live over different domains")
    if gens_big.nrows != gens_small.nrows:
        raise DimensionMismatch("generator sets live in different ambient modules")
    dom = gens_big.domain
    if dom.is_field:
        if not in_span(gens_big, gens_small):
            raise NotASubobject("small generators are not contained in the big span")
        return rank(gens_big) - rank(gens_small), ()
    basis = column_lattice_basis(gens_big)
    coords = solve(basis, gens_small)
    if coords is None:
        raise NotASubobject("small generators are not contained in the big lattice")
    factors = smith_normal_form(coords).invariant_factors
    return basis.ncols - len(factors), tuple(d for d in factors if d > 1)


class DenseSystem:
    """Mutable coefficient matrix for the large block-structured linear systems.

    Blocks (plain or Kronecker products) are accumulated in place, which avoids
    materializing one immutable matrix per block.  Prime fields are stored as an
    int64 array, other domains as lists of canonical scalars.
    """

    def __init__(self, domain: CoefficientDomain, nrows: int, ncols: int):
        self.domain = domain
        self.nrows, self.ncols = nrows, ncols
        self._np = domain.kind == "Fp" and domain.p < _NUMPY_PRIME_LIMIT
        if self._np:
            self.a = np.zeros((nrows, ncols), dtype=np.int64)
        else:
            self.a = [[domain.zero] * ncols for _ in range(nrows)]

    def add(self, roff: int, coff: int, M: ExactMatrix, sign: int = 1):
        if M.nrows == 0 or M.ncols == 0:
            return
        if self._np:
            p = self.domain.p
            blk = np.array(M.entries, dtype=np.int64).reshape(M.shape)
            view = self.a[roff:roff + M.nrows, coff:coff + M.ncols]
            view[...] = (view + sign * blk) % p
            return
        red = self.domain.reduce
        e, c = M.entries, M.ncols
        for i in range(M.nrows):
            row = self.a[roff + i]
            for j in range(c):
                x = e[i * c + j]
                if x != 0:
                    row[coff + j] = red(row[coff + j] + sign * x)

    def add_kron(self, roff: int, coff: int, A: ExactMatrix, B: ExactMatrix, sign: int = 1):
        """Add ``sign * kron(A, B)`` with its top-left corner at ``(roff, coff)``."""
        if self._np:
            p = self.domain.p
            K = np.kron(
                np.array(A.entries, dtype=np.int64).reshape(A.shape),
                np.array(B.entries, dtype=np.int64).reshape(B.shape),
            )
            if K.size == 0:
                return
            view = self.a[roff:roff + K.shape[0], coff:coff + K.shape[1]]
            view[...] = (view + sign * K) % p
            return
        red = self.domain.reduce
        bnz = [(i, j, B[i, j]) for i in range(B.nrows) for j in range(B.ncols) if B[i, j] != 0]
        for ai in range(A.nrows):
            for aj in range(A.ncols):
                x = A[ai, aj]
                if x == 0:
                    continue
                x = sign * x
                r0, c0 = roff + ai * B.nrows, coff + aj * B.ncols
                for bi, bj, y in bnz:
                    row = self.a[r0 + bi]
                    row[c0 + bj] = red(row[c0 + bj] + x * y)

    def matrix(self) -> ExactMatrix:
        if self._np:
            return ExactMatrix(self.domain, self.nrows, self.ncols, tuple(int(x) for x in self.a.ravel()))
        return ExactMatrix._raw(self.domain, self.a, self.nrows, self.ncols)

    def _rref(self, extra: list | None = None) -> tuple[list[list] | np.ndarray, list[int]]:
        if self._np:
            a = self.a if extra is None else np.hstack([self.a, np.array(extra, dtype=np.int64).reshape(-1, 1) % self.domain.p])
            if a.shape[0] == 0 or a.shape[1] == 0:
                return a[:0], []
            return _rref_numpy_array(a.copy(), self.domain.p)
        rows = self.a if extra is None else [row + [x] for row, x in zip(self.a, extra)]
        ncols = self.ncols + (0 if extra is None else 1)
        if not rows or ncols == 0:
            return [], []
        return _rref_python(self.domain, rows, ncols)

    def rank(self) -> int:
        if self.domain.kind == "Z":
            return rank(self.matrix())
        return len(self._rref()[1])

    def solve_vector(self, rhs: Sequence) -> list | None:
        """A solution ``x`` of ``A x = rhs`` or ``None``."""
        dom = self.domain
        if dom.kind == "Z":
            X = solve(self.matrix(), ExactMatrix(dom, self.nrows, 1, tuple(dom.coerce(x) for x in rhs)))
            return None if X is None else list(X.entries)
        red, pivots = self._rref([dom.coerce(x) for x in rhs])
        if pivots and pivots[-1] == self.ncols:
            return None
        x = [dom.zero] * self.ncols
        for r, pc in enumerate(pivots):
            x[pc] = dom.coerce(int(red[r][self.ncols])) if self._np else red[r][self.ncols]
        return x

    def kernel_vectors(self) -> list[list]:
        """Basis of the null space (fields)."""
        if self.domain.kind == "Z":
            K = kernel_basis(self.matrix())
            return [K.column(j) for j in range(K.ncols)]
        dom = self.domain
        red, pivots = self._rref()
        pivset = set(pivots)
        out = []
        for f in range(self.ncols):
            if f in pivset:
                continue
            v = [dom.zero] * self.ncols
            v[f] = dom.one
            for k, pc in enumerate(pivots):
                x = red[k][f]
                if x != 0:
                    v[pc] = dom.reduce(-(int(x) if self._np else x))
            out.append(v)
        return out
