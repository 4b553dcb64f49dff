"""N-complexes, chain maps, composite differentials and amplitude homology.

Complexes are finitely supported and cohomologically graded: ``d^i`` maps
``X^i`` to ``X^(i+1)``.  Objects are free of finite rank, so a complex is
nothing more than a list of dimensions plus the differential matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import AmplitudeOutOfRange, DimensionMismatch, NotAChainMap, NotNilpotent, ShapeMismatch
from .linalg import (
    CoefficientDomain,
    ExactMatrix,
    in_span,
    kernel_basis,
    subquotient_invariants,
)


def _from_literal(domain: CoefficientDomain, rows, expect: tuple[int, int], name: str, degree: int) -> ExactMatrix:
    """Nested-list matrix literal; an empty list stands for the zero matrix."""
    if not rows:
        return ExactMatrix.zeros(domain, *expect)
    try:
        return ExactMatrix.from_rows(domain, rows)
    except DimensionMismatch:
        raise ShapeMismatch(f"{name} has ragged rows", degree=degree) from None


@dataclass(frozen=True)
class NComplex:
    """Finitely supported N-complex ``... -> X^i -> X^(i+1) -> ...``.

    ``dims[k]`` is the rank of ``X^(lo+k)`` and ``diffs[k]`` the matrix of
    ``d^(lo+k)``.  Use :meth:`build` rather than the raw constructor; it trims
    zero objects at both ends so that equal complexes compare equal.
    """

    N: int
    domain: CoefficientDomain
    lo: int
    dims: tuple[int, ...]
    diffs: tuple[ExactMatrix, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.N < 2:
            raise ValueError(f"N must be at least 2, got {self.N}")
        if len(self.diffs) != max(len(self.dims) - 1, 0):
            raise ShapeMismatch("need one differential between each pair of adjacent degrees")
        for k, d in enumerate(self.diffs):
            expect = (self.dims[k + 1], self.dims[k])
            if d.shape != expect:
                raise ShapeMismatch(
                    f"d^{self.lo + k} has shape {d.shape}, expected {expect}", degree=self.lo + k
                )
            if d.domain != self.domain:
                raise DimensionMismatch(f"d^{self.lo + k} lives over {d.domain}, not {self.domain}")

    @classmethod
    def build(
        cls,
        N: int,
        domain: CoefficientDomain,
        dims: Mapping[int, int],
        diffs: Mapping[int, ExactMatrix | list] | None = None,
    ) -> "NComplex":
        """Construct from ``{degree: rank}`` and ``{degree: matrix of d^degree}``.

        Missing differentials are zero; matrices may be given as nested lists.
        """
        diffs = dict(diffs or {})
        dims = {i: n for i, n in dims.items() if n}
        for i in dims:
            if dims[i] < 0:
                raise ShapeMismatch(f"negative dimension at degree {i}", degree=i)
        mats: dict[int, ExactMatrix] = {}
        for i, d in diffs.items():
            if not isinstance(d, ExactMatrix):
                d = _from_literal(domain, d, (dims.get(i + 1, 0), dims.get(i, 0)), f"d^{i}", i)
            expect = (dims.get(i + 1, 0), dims.get(i, 0))
            if d.shape != expect:
                raise ShapeMismatch(f"d^{i} has shape {d.shape}, expected {expect}", degree=i)
            mats[i] = d
        if not dims:
            return cls(N, domain, 0, (), ())
        lo, hi = min(dims), max(dims)
        out_dims = tuple(dims.get(i, 0) for i in range(lo, hi + 1))
        out_diffs = tuple(
            mats.get(i) or ExactMatrix.zeros(domain, dims.get(i + 1, 0), dims.get(i, 0)) for i in range(lo, hi)
        )
        return cls(N, domain, lo, out_dims, out_diffs)

    # -- access -------------------------------------------------------------

    @property
    def hi(self) -> int:
        return self.lo + len(self.dims) - 1

    @property
    def is_zero(self) -> bool:
        return not self.dims

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def dim(self, i: int) -> int:
        k = i - self.lo
        return self.dims[k] if 0 <= k < len(self.dims) else 0

    def diff(self, i: int) -> ExactMatrix:
        k = i - self.lo
        if 0 <= k < len(self.diffs):
            return self.diffs[k]
        return ExactMatrix.zeros(self.domain, self.dim(i + 1), self.dim(i))

    def composite(self, i: int, r: int) -> ExactMatrix:
        """``d^(i+r-1) ... d^i : X^i -> X^(i+r)``; ``r = 0`` is the identity."""
        if r < 0:
            raise AmplitudeOutOfRange(f"amplitude {r} is negative")
        key = ("comp", i, r)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if r == 0:
            out = ExactMatrix.identity(self.domain, self.dim(i))
        else:
            out = self.diff(i + r - 1) @ self.composite(i, r - 1)
        self._cache[key] = out
        return out

    def __str__(self) -> str:
        if self.is_zero:
            return f"0 (N={self.N}, {self.domain})"
        parts = [f"{self.dim(i)}@{i}" for i in self.degrees()]
        return f"NComplex(N={self.N}, {self.domain}: {' -> '.join(parts)})"


def zero_complex(N: int, domain: CoefficientDomain) -> NComplex:
    return NComplex(N, domain, 0, (), ())


# -- nilpotency ------------------------------------------------------------------


def first_nilpotency_failure(X: NComplex) -> int | None:
    """Smallest ``i`` with ``composite(X, i, N) != 0``, or ``None``."""
    for i in range(X.lo - X.N, X.hi + 1):
        if not X.composite(i, X.N).is_zero():
            return i
    return None


def validate(X: NComplex) -> bool:
    """True iff every N-fold consecutive composite vanishes."""
    return first_nilpotency_failure(X) is None


def check_valid(X: NComplex) -> NComplex:
    bad = first_nilpotency_failure(X)
    if bad is not None:
        raise NotNilpotent(f"degree {bad}: d^{bad + X.N - 1}...d^{bad} is nonzero (N={X.N})", degree=bad)
    return X


def composite(X: NComplex, i: int, r: int) -> ExactMatrix:
    """Composite differential of amplitude ``0 <= r <= N`` starting at degree ``i``."""
    if not 0 <= r <= X.N:
        raise AmplitudeOutOfRange(f"amplitude {r} outside [0, {X.N}]")
    return X.composite(i, r)


# -- cycles, boundaries, homology --------------------------------------------------


def _check_amp(X: NComplex, r: int, lo: int, hi: int):
    if not lo <= r <= hi:
        raise AmplitudeOutOfRange(f"amplitude {r} outside [{lo}, {hi}] for N={X.N}")


def cycles(X: NComplex, i: int, r: int) -> ExactMatrix:
    """Generator matrix (columns) of ``Z^i_r = ker(d^(i+r-1)...d^i)``."""
    _check_amp(X, r, 1, X.N)
    key = ("Z", i, r)
    if key not in X._cache:
        X._cache[key] = kernel_basis(X.composite(i, r))
    return X._cache[key]


def boundaries(X: NComplex, i: int, r: int) -> ExactMatrix:
    """Generator matrix of ``B^i_r = im(d^(i-1)...d^(i-r))``."""
    _check_amp(X, r, 1, X.N)
    return X.composite(i - r, r)


@dataclass(frozen=True)
class Presentation:
    """``ambient_rank``-dimensional free module modulo the span of ``relations``."""

    ambient_rank: int
    relations: ExactMatrix

    def invariants(self) -> tuple[int, tuple[int, ...]]:
        ambient = ExactMatrix.identity(self.relations.domain, self.ambient_rank)
        return subquotient_invariants(ambient, self.relations)


def cokernel_presentation(X: NComplex, i: int, r: int) -> Presentation:
    """``C^i_r = X^i / B^i_r``."""
    return Presentation(X.dim(i), boundaries(X, i, r))


@dataclass(frozen=True)
class AmplitudeHomology:
    degree: int
    amplitude: int
    free_rank: int
    torsion: tuple[int, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion


def homology(X: NComplex, i: int, r: int) -> AmplitudeHomology:
    """``H^i_r = Z^i_r / B^i_(N-r)`` for ``1 <= r <= N-1``."""
    _check_amp(X, r, 1, X.N - 1)
    free, torsion = subquotient_invariants(cycles(X, i, r), boundaries(X, i, X.N - r))
    return AmplitudeHomology(i, r, free, torsion)


def homology_table(X: NComplex) -> list[AmplitudeHomology]:
    """All ``H^i_r`` over the support, degree-major."""
    return [homology(X, i, r) for i in X.degrees() for r in range(1, X.N)]


def first_nonzero_homology(X: NComplex, amplitudes: Iterable[int] | None = None) -> AmplitudeHomology | None:
    amps = list(amplitudes) if amplitudes is not None else list(range(1, X.N))
    for i in X.degrees():
        for r in amps:
            h = homology(X, i, r)
            if not h.is_zero:
                return h
    return None


def is_n_exact(X: NComplex, amplitude: int | None = None) -> bool:
    """N-exactness, either over all amplitudes or at the single ``amplitude``."""
    if amplitude is None:
        return first_nonzero_homology(X) is None
    _check_amp(X, amplitude, 1, X.N - 1)
    return first_nonzero_homology(X, [amplitude]) is None


def induced_differential_surjective(X: NComplex, n: int, r: int) -> bool:
    """Whether ``d^n`` maps ``Z^n_r`` onto ``Z^(n+1)_(r-1)`` (``2 <= r <= N``)."""
    _check_amp(X, r, 2, X.N)
    target = cycles(X, n + 1, r - 1)
    if target.ncols == 0:
        return True
    image = X.diff(n) @ cycles(X, n, r)
    return in_span(image, target)


def epi_criterion(X: NComplex) -> bool:
    """Every induced ``d^n_r`` is surjective."""
    return all(
        induced_differential_surjective(X, n, r) for n in range(X.lo - 1, X.hi + 1) for r in range(2, X.N + 1)
    )


# -- standard complexes ------------------------------------------------------------


def disc(N: int, j: int, i: int, m: int = 1, domain: CoefficientDomain | None = None) -> NComplex:
    """``D^j_i(k^m)``: ``k^m`` in degrees ``j-i+1 .. j`` joined by identities."""
    if not 1 <= i <= N:
        raise AmplitudeOutOfRange(f"disc length {i} outside [1, {N}]")
    domain = domain or CoefficientDomain.rationals()
    degs = range(j - i + 1, j + 1)
    eye = ExactMatrix.identity(domain, m)
    return NComplex.build(N, domain, {n: m for n in degs}, {n: eye for n in degs if n < j})


def stalk(N: int, degree: int = 0, m: int = 1, domain: CoefficientDomain | None = None) -> NComplex:
    return disc(N, degree, 1, m, domain)


def _same_category(X: NComplex, Y: NComplex):
    if X.N != Y.N:
        raise DimensionMismatch(f"N mismatch: {X.N} vs {Y.N}")
    if X.domain != Y.domain:
        raise DimensionMismatch(f"domain mismatch: {X.domain} vs {Y.domain}")


def direct_sum(X: NComplex, Y: NComplex) -> NComplex:
    _same_category(X, Y)
    degs = set(X.degrees()) | set(Y.degrees())
    dims = {i: X.dim(i) + Y.dim(i) for i in degs}
    diffs = {
        i: ExactMatrix.block(X.domain, [X.dim(i + 1), Y.dim(i + 1)], [X.dim(i), Y.dim(i)],
                             {(0, 0): X.diff(i), (1, 1): Y.diff(i)})
        for i in degs
    }
    return NComplex.build(X.N, X.domain, dims, diffs)


def shift_degrees(X: NComplex, k: int) -> NComplex:
    """Relabel degrees ``i -> i + k`` (no sign change)."""
    return NComplex(X.N, X.domain, X.lo + k, X.dims, X.diffs)


def change_of_basis(X: NComplex, P: Mapping[int, ExactMatrix]) -> NComplex:
    """Isomorphic complex with differentials ``P^(i+1) d^i (P^i)^-1``.

    ``P`` maps each degree to an invertible matrix; missing degrees use the
    identity.  Over Z the matrices must be unimodular.
    """
    from .linalg import solve

    def mat(i):
        return P.get(i) if i in P else ExactMatrix.identity(X.domain, X.dim(i))

    diffs = {}
    for i in X.degrees():
        Pi = mat(i)
        inv = solve(Pi, ExactMatrix.identity(X.domain, X.dim(i)))
        if inv is None:
            raise ValueError(f"change of basis at degree {i} is not invertible")
        diffs[i] = mat(i + 1) @ X.diff(i) @ inv
    return NComplex.build(X.N, X.domain, {i: X.dim(i) for i in X.degrees()}, diffs)


# -- chain maps ------------------------------------------------------------------


@dataclass(frozen=True)
class ChainMap:
    """Degreewise map ``f^i : X^i -> Y^i``; degrees without an entry are zero."""

    source: NComplex
    target: NComplex
    components: Mapping[int, ExactMatrix]

    def __post_init__(self):
        _same_category(self.source, self.target)
        comps = {}
        for i, m in self.components.items():
            expect = (self.target.dim(i), self.source.dim(i))
            if not isinstance(m, ExactMatrix):
                m = _from_literal(self.source.domain, m, expect, f"f^{i}", i)
            if m.shape != expect:
                raise ShapeMismatch(f"f^{i} has shape {m.shape}, expected {expect}", degree=i)
            if expect[0] and expect[1]:
                comps[i] = m
        object.__setattr__(self, "components", dict(sorted(comps.items())))

    @property
    def domain(self) -> CoefficientDomain:
        return self.source.domain

    @property
    def N(self) -> int:
        return self.source.N

    def component(self, i: int) -> ExactMatrix:
        m = self.components.get(i)
        if m is None:
            return ExactMatrix.zeros(self.domain, self.target.dim(i), self.source.dim(i))
        return m

    def degrees(self) -> range:
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        return range(lo, hi + 1)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.components.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainMap):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        return all(self.component(i) == other.component(i) for i in self.degrees())

    __hash__ = None

    def _same_ends(self, other: "ChainMap"):
        if self.source != other.source or self.target != other.target:
            raise DimensionMismatch("chain maps have different endpoints")

    def __add__(self, other: "ChainMap") -> "ChainMap":
        self._same_ends(other)
        return ChainMap(self.source, self.target, {i: self.component(i) + other.component(i) for i in self.degrees()})

    def __neg__(self) -> "ChainMap":
        return ChainMap(self.source, self.target, {i: -m for i, m in self.components.items()})

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return self + (-other)

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target, {i: m.scale(c) for i, m in self.components.items()})

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        return compose_maps(self, other)


def first_commutation_failure(f: ChainMap) -> int | None:
    X, Y = f.source, f.target
    for i in range(min(X.lo, Y.lo) - 1, max(X.hi, Y.hi) + 1):
        if Y.diff(i) @ f.component(i) != f.component(i + 1) @ X.diff(i):
            return i
    return None


def is_chain_map(f: ChainMap) -> bool:
    """``d_Y^i f^i == f^(i+1) d_X^i`` in every degree."""
    return first_commutation_failure(f) is None


def check_chain_map(f: ChainMap) -> ChainMap:
    bad = first_commutation_failure(f)
    if bad is not None:
        raise NotAChainMap(f"map does not commute with the differentials at degree {bad}", degree=bad)
    return f


def compose_maps(g: ChainMap, f: ChainMap) -> ChainMap:
    """``g . f``."""
    if f.target != g.source:
        raise DimensionMismatch("cannot compose: target of f is not the source of g")
    degs = set(f.components) & set(g.components)
    return ChainMap(f.source, g.target, {i: g.components[i] @ f.components[i] for i in degs})


def identity_map(X: NComplex) -> ChainMap:
    return ChainMap(X, X, {i: ExactMatrix.identity(X.domain, X.dim(i)) for i in X.degrees()})


def zero_map(X: NComplex, Y: NComplex) -> ChainMap:
    return ChainMap(X, Y, {})


def direct_sum_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    """``f (+) g : X1 (+) X2 -> Y1 (+) Y2``."""
    S, T = direct_sum(f.source, g.source), direct_sum(f.target, g.target)
    comps = {}
    for i in set(f.degrees()) | set(g.degrees()):
        comps[i] = ExactMatrix.block(
            f.domain,
            [f.target.dim(i), g.target.dim(i)],
            [f.source.dim(i), g.source.dim(i)],
            {(0, 0): f.component(i), (1, 1): g.component(i)},
        )
    return ChainMap(S, T, comps)
