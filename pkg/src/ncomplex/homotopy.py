"""Null-homotopies, homotopy classes of maps and contractibility.

A null-homotopy of ``f : X -> Y`` is a family ``s^i : X^i -> Y^(i-N+1)`` with

    f^i = sum_{j=0}^{N-1} d_Y{N-1-j}^(i-(N-1-j)) . s^(i+j) . d_X{j}^i

Deciding whether one exists is a single linear system.  Unknowns are ordered
degree-major, then row-major inside each matrix; the same layout is used for
the entries of a degreewise map, which makes witnesses deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .complexes import ChainMap, NComplex, _same_category, identity_map
from .errors import DimensionMismatch, UnsupportedDomain
from .linalg import DenseSystem, ExactMatrix


@dataclass(frozen=True)
class Homotopy:
    """Witness family ``s^i : X^i -> Y^(i-N+1)``."""

    source: NComplex
    target: NComplex
    witness: Mapping[int, ExactMatrix]

    def __post_init__(self):
        _same_category(self.source, self.target)
        shift = self.source.N - 1
        for i, m in self.witness.items():
            expect = (self.target.dim(i - shift), self.source.dim(i))
            if m.shape != expect:
                raise DimensionMismatch(f"s^{i} has shape {m.shape}, expected {expect}")

    def at(self, i: int) -> ExactMatrix:
        m = self.witness.get(i)
        if m is None:
            N = self.source.N
            return ExactMatrix.zeros(self.source.domain, self.target.dim(i - N + 1), self.source.dim(i))
        return m

    def realize(self) -> ChainMap:
        return realize(self)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.witness.values())


@dataclass(frozen=True)
class HomKSpace:
    dim_chain_maps: int
    dim_null_homotopic: int

    @property
    def dim_homotopy_classes(self) -> int:
        return self.dim_chain_maps - self.dim_null_homotopic

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.dim_chain_maps, self.dim_null_homotopic, self.dim_homotopy_classes)


# -- vectorisation of degreewise maps -------------------------------------------


@dataclass(frozen=True)
class _Layout:
    """Offsets of the blocks ``A^i : X^i -> Y^(i+shift)`` inside one flat vector."""

    blocks: tuple[tuple[int, int, int, int], ...]  # (degree, rows, cols, offset)
    size: int

    @classmethod
    def of(cls, X: NComplex, Y: NComplex, shift: int = 0) -> "_Layout":
        blocks, off = [], 0
        for i in X.degrees():
            r, c = Y.dim(i + shift), X.dim(i)
            if r and c:
                blocks.append((i, r, c, off))
                off += r * c
        return cls(tuple(blocks), off)

    def index(self) -> dict[int, tuple[int, int, int]]:
        return {i: (r, c, off) for i, r, c, off in self.blocks}

    def flatten(self, mats: Mapping[int, ExactMatrix], domain) -> ExactMatrix:
        vec = [domain.zero] * self.size
        for i, r, c, off in self.blocks:
            m = mats.get(i)
            if m is not None:
                vec[off:off + r * c] = m.entries
        return ExactMatrix(domain, self.size, 1, tuple(vec))

    def unflatten(self, vec: ExactMatrix) -> dict[int, ExactMatrix]:
        e = vec.entries
        return {i: ExactMatrix(vec.domain, r, c, e[off:off + r * c]) for i, r, c, off in self.blocks}


def _eye(X: NComplex, i: int) -> ExactMatrix:
    return ExactMatrix.identity(X.domain, X.dim(i))


def _realization_system(X: NComplex, Y: NComplex) -> tuple[DenseSystem, _Layout, _Layout]:
    _same_category(X, Y)
    N = X.N
    maps = _Layout.of(X, Y)
    wit = _Layout.of(X, Y, -(N - 1))
    widx = wit.index()
    out = DenseSystem(X.domain, maps.size, wit.size)
    for i, r, c, roff in maps.blocks:
        for j in range(N):
            q = i + j
            if q not in widx:
                continue
            A = Y.composite(i - (N - 1 - j), N - 1 - j)
            B = X.composite(i, j)
            if A.is_zero() or B.is_zero():
                continue
            out.add_kron(roff, widx[q][2], A, B.T)
    return out, maps, wit


def realization_operator(X: NComplex, Y: NComplex) -> tuple[ExactMatrix, _Layout, _Layout]:
    """Matrix sending flattened witness families to flattened degreewise maps."""
    sys, maps, wit = _realization_system(X, Y)
    return sys.matrix(), maps, wit


def _commutation_system(X: NComplex, Y: NComplex) -> tuple[DenseSystem, _Layout]:
    _same_category(X, Y)
    maps = _Layout.of(X, Y)
    idx = maps.index()
    rows_needed = []
    off = 0
    for i in range(min(X.lo, Y.lo) - 1, max(X.hi, Y.hi) + 1):
        r, c = Y.dim(i + 1), X.dim(i)
        if r and c and (i in idx or i + 1 in idx):
            rows_needed.append((i, r, c, off))
            off += r * c
    out = DenseSystem(X.domain, off, maps.size)
    for i, r, c, roff in rows_needed:
        if i in idx:
            out.add_kron(roff, idx[i][2], Y.diff(i), _eye(X, i))
        if i + 1 in idx:
            out.add_kron(roff, idx[i + 1][2], _eye(Y, i + 1), X.diff(i).T, sign=-1)
    return out, maps


def commutation_operator(X: NComplex, Y: NComplex) -> tuple[ExactMatrix, _Layout]:
    """Matrix whose kernel is the space of chain maps ``X -> Y`` (flattened)."""
    sys, maps = _commutation_system(X, Y)
    return sys.matrix(), maps


def realize(h: Homotopy) -> ChainMap:
    """The map ``sum_j d_Y{N-1-j} s^(i+j) d_X{j}`` witnessed by ``h``."""
    X, Y, N = h.source, h.target, h.source.N
    comps = {}
    for i in X.degrees():
        if not Y.dim(i):
            continue
        acc = ExactMatrix.zeros(X.domain, Y.dim(i), X.dim(i))
        for j in range(N):
            s = h.witness.get(i + j)
            if s is None:
                continue
            acc = acc + Y.composite(i - (N - 1 - j), N - 1 - j) @ s @ X.composite(i, j)
        comps[i] = acc
    return ChainMap(X, Y, comps)


def null_homotopy(f: ChainMap) -> Homotopy | None:
    """A witness that ``f`` is null-homotopic, or ``None``.

    Works over any shipped domain; over ``Z`` the system is solved through the
    Smith form, so the witness is integral.
    """
    X, Y = f.source, f.target
    R, maps, wit = _realization_system(X, Y)
    target = maps.flatten(f.components, X.domain)
    if wit.size == 0:
        return Homotopy(X, Y, {}) if target.is_zero() else None
    sol = R.solve_vector(target.entries)
    if sol is None:
        return None
    vec = ExactMatrix(X.domain, wit.size, 1, tuple(sol))
    return Homotopy(X, Y, wit.unflatten(vec))


def homotopic(f: ChainMap, g: ChainMap) -> bool:
    if f.source != g.source or f.target != g.target:
        raise DimensionMismatch("homotopic() needs maps with equal endpoints")
    return null_homotopy(f - g) is not None


def chain_map_basis(X: NComplex, Y: NComplex) -> list[ChainMap]:
    """Basis of ``Hom_C(X, Y)`` over a field."""
    if not X.domain.is_field:
        raise UnsupportedDomain("chain_map_basis needs field coefficients")
    C, maps = _commutation_system(X, Y)
    if maps.size == 0:
        return []
    return [ChainMap(X, Y, maps.unflatten(ExactMatrix(X.domain, maps.size, 1, tuple(v)))) for v in C.kernel_vectors()]


def hom_k(X: NComplex, Y: NComplex) -> HomKSpace:
    """Dimensions of chain maps, null-homotopic maps and ``Hom_K(X, Y)``."""
    if not X.domain.is_field:
        raise UnsupportedDomain("hom_k is only implemented over fields")
    C, maps = _commutation_system(X, Y)
    if maps.size == 0:
        return HomKSpace(0, 0)
    dim_chain = maps.size - C.rank()
    R, _, wit = _realization_system(X, Y)
    dim_null = R.rank() if wit.size else 0
    return HomKSpace(dim_chain, dim_null)


def is_contractible(X: NComplex) -> bool:
    """Whether ``1_X`` is null-homotopic."""
    return null_homotopy(identity_map(X)) is not None
