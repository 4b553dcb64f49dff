"""Mapping cones, suspensions, the injective hull and degreewise split sequences.

Block layouts (``m`` is the degree, blocks listed left to right):

* ``C(f)^m = Y^m + X^(m+1) + ... + X^(m+N-1)``
* ``(SX)^m = X^(m+1) + ... + X^(m+N-1)``
* ``(S^-1 X)^m = X^(m-N+1) + ... + X^(m-1)``
* ``I(X)^m = X^m + X^(m+1) + ... + X^(m+N-1)``
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import (
    ChainMap,
    NComplex,
    _same_category,
    check_chain_map,
    compose_maps,
    identity_map,
    is_chain_map,
)
from .errors import DimensionMismatch, WitnessInvalid
from .homotopy import Homotopy, commutation_operator, is_contractible, realize
from .linalg import DenseSystem, ExactMatrix, solve


def _blocks(X: NComplex, degs) -> list[int]:
    return [X.dim(d) for d in degs]


def _eye(X: NComplex, i: int) -> ExactMatrix:
    return ExactMatrix.identity(X.domain, X.dim(i))


# -- suspension ------------------------------------------------------------------


def suspension(X: NComplex) -> NComplex:
    """Shift blocks by the identity; the bottom row carries ``-d{N-l}``."""
    N, dom = X.N, X.domain
    if X.is_zero:
        return X
    dims, diffs = {}, {}
    for m in range(X.lo - N + 1, X.hi):
        src = [m + l for l in range(1, N)]
        tgt = [m + 1 + k for k in range(1, N)]
        dims[m] = sum(_blocks(X, src))
        blocks = {}
        for k in range(1, N - 1):
            blocks[(k - 1, k)] = _eye(X, m + k + 1)
        for l in range(1, N):
            blocks[(N - 2, l - 1)] = -X.composite(m + l, N - l)
        diffs[m] = ExactMatrix.block(dom, _blocks(X, tgt), _blocks(X, src), blocks)
    return NComplex.build(N, dom, dims, diffs)


def inv_suspension(X: NComplex) -> NComplex:
    """Identity superdiagonal; the first column carries ``-d{k}`` from ``X^(m-N+1)``."""
    N, dom = X.N, X.domain
    if X.is_zero:
        return X
    dims, diffs = {}, {}
    for m in range(X.lo + 1, X.hi + N):
        src = [m - N + l for l in range(1, N)]
        tgt = [m + 1 - N + k for k in range(1, N)]
        dims[m] = sum(_blocks(X, src))
        blocks = {}
        for k in range(1, N - 1):
            blocks[(k - 1, k)] = _eye(X, m - N + k + 1)
        for k in range(1, N):
            blocks[(k - 1, 0)] = -X.composite(m - N + 1, k)
        diffs[m] = ExactMatrix.block(dom, _blocks(X, tgt), _blocks(X, src), blocks)
    return NComplex.build(N, dom, dims, diffs)


# -- injective hull -----------------------------------------------------------------


def hull(X: NComplex) -> tuple[NComplex, ChainMap]:
    """``I(X)`` (a sum of N-discs) with the degreewise split mono ``X -> I(X)``.

    The mono sends ``x`` to ``(x, dx, d{2}x, ..., d{N-1}x)``.
    """
    N, dom = X.N, X.domain
    if X.is_zero:
        return X, identity_map(X)
    dims, diffs, iota = {}, {}, {}
    for m in range(X.lo - N + 1, X.hi + 1):
        src = [m + l for l in range(N)]
        tgt = [m + 1 + k for k in range(N)]
        dims[m] = sum(_blocks(X, src))
        diffs[m] = ExactMatrix.block(
            dom, _blocks(X, tgt), _blocks(X, src), {(k, k + 1): _eye(X, m + k + 1) for k in range(N - 1)}
        )
    I = NComplex.build(N, dom, dims, diffs)
    for m in X.degrees():
        src = [m + l for l in range(N)]
        iota[m] = ExactMatrix.block(
            dom, _blocks(X, src), [X.dim(m)], {(l, 0): X.composite(m, l) for l in range(N)}
        )
    return I, ChainMap(X, I, iota)


def hull_quotient(X: NComplex) -> ChainMap:
    """Cokernel ``I(X) -> SX`` of the hull mono, ``z -> (z_k - d z_(k-1))_k``."""
    N, dom = X.N, X.domain
    I, _ = hull(X)
    S = suspension(X)
    comps = {}
    for m in I.degrees():
        src = [m + l for l in range(N)]
        tgt = [m + k for k in range(1, N)]
        blocks = {}
        for k in range(1, N):
            blocks[(k - 1, k)] = _eye(X, m + k)
            blocks[(k - 1, k - 1)] = -X.diff(m + k - 1)
        comps[m] = ExactMatrix.block(dom, _blocks(X, tgt), _blocks(X, src), blocks)
    return ChainMap(I, S, comps)


# -- mapping cone ------------------------------------------------------------------


@dataclass(frozen=True)
class StrictTriangle:
    """``X -f-> Y -u-> C(f) -v-> SX``."""

    f: ChainMap
    into_cone: ChainMap
    onto_suspension: ChainMap

    @property
    def cone(self) -> NComplex:
        return self.into_cone.target


def cone(f: ChainMap) -> tuple[NComplex, StrictTriangle]:
    """Mapping cone of ``f : X -> Y`` and its strict triangle."""
    X, Y = f.source, f.target
    N, dom = X.N, X.domain
    los = ([] if Y.is_zero else [Y.lo]) + ([] if X.is_zero else [X.lo - N + 1])
    his = ([] if Y.is_zero else [Y.hi]) + ([] if X.is_zero else [X.hi - 1])
    dims, diffs = {}, {}
    if los:
        for m in range(min(los), max(his) + 1):
            src = [m + l for l in range(1, N)]
            tgt = [m + 1 + k for k in range(1, N)]
            ssz = [Y.dim(m)] + _blocks(X, src)
            tsz = [Y.dim(m + 1)] + _blocks(X, tgt)
            dims[m] = sum(ssz)
            blocks = {(0, 0): Y.diff(m), (0, 1): f.component(m + 1)}
            for k in range(1, N - 1):
                blocks[(k, k + 1)] = _eye(X, m + k + 1)
            for l in range(1, N):
                blocks[(N - 1, l)] = -X.composite(m + l, N - l)
            diffs[m] = ExactMatrix.block(dom, tsz, ssz, blocks)
    C = NComplex.build(N, dom, dims, diffs)
    S = suspension(X)
    u, v = {}, {}
    for m in C.degrees():
        ssz = [Y.dim(m)] + _blocks(X, [m + l for l in range(1, N)])
        if Y.dim(m):
            u[m] = ExactMatrix.block(dom, ssz, [Y.dim(m)], {(0, 0): _eye(Y, m)})
        v[m] = _project_tail(dom, ssz)
    return C, StrictTriangle(f, ChainMap(Y, C, u), ChainMap(C, S, v))


def _project_tail(dom, sizes: list[int]) -> ExactMatrix:
    """Drop the first block: ``(a, b1, ..., bk) -> (b1, ..., bk)``."""
    tail = sum(sizes[1:])
    return ExactMatrix.block(dom, [tail], [sizes[0], tail], {(0, 1): ExactMatrix.identity(dom, tail)})


# -- degreewise split short exact sequences ------------------------------------------


@dataclass(frozen=True)
class DegreewiseSplitSES:
    """``0 -> left -inj-> middle -surj-> right -> 0``, split in every degree."""

    left: NComplex
    middle: NComplex
    right: NComplex
    inj: ChainMap
    surj: ChainMap

    def degreewise_splitting(self, m: int) -> tuple[ExactMatrix, ExactMatrix] | None:
        """``(retraction of inj, section of surj)`` at degree ``m``, or ``None``."""
        dom = self.middle.domain
        i, p = self.inj.component(m), self.surj.component(m)
        if not (p @ i).is_zero():
            return None
        if self.middle.dim(m) != self.left.dim(m) + self.right.dim(m):
            return None
        ret = solve(i.T, ExactMatrix.identity(dom, self.left.dim(m)))
        sec = solve(p, ExactMatrix.identity(dom, self.right.dim(m)))
        if ret is None or sec is None:
            return None
        return ret.T, sec

    def is_valid(self) -> bool:
        if not (is_chain_map(self.inj) and is_chain_map(self.surj)):
            return False
        degs = set(self.middle.degrees()) | set(self.left.degrees()) | set(self.right.degrees())
        return all(self.degreewise_splitting(m) is not None for m in degs)


def split_test(ses: DegreewiseSplitSES) -> ChainMap | None:
    """A chain-map retraction ``r`` with ``r . inj = 1``, if the sequence splits."""
    M, L = ses.middle, ses.left
    dom = M.domain
    C, maps = commutation_operator(M, L)
    idx = maps.index()
    # rows: commutation, then r^m inj^m = 1 for each degree of L
    extra = []
    off = C.nrows
    for m in L.degrees():
        if L.dim(m):
            extra.append((m, off))
            off += L.dim(m) * L.dim(m)
    asm = DenseSystem(dom, off, maps.size)
    asm.add(0, 0, C)
    rhs = [dom.zero] * off
    for m, roff in extra:
        if m not in idx:
            return None
        # vec(r inj) = kron(I, inj^T) vec(r)
        asm.add_kron(roff, idx[m][2], ExactMatrix.identity(dom, L.dim(m)), ses.inj.component(m).T)
        eye = ExactMatrix.identity(dom, L.dim(m)).entries
        rhs[roff:roff + len(eye)] = eye
    if maps.size == 0:
        return ChainMap(M, L, {}) if L.is_zero else None
    sol = asm.solve_vector(rhs)
    if sol is None:
        return None
    r = ChainMap(M, L, maps.unflatten(ExactMatrix(dom, maps.size, 1, tuple(sol))))
    check_chain_map(r)
    if compose_maps(r, ses.inj) != identity_map(L):
        raise AssertionError("retraction failed verification")
    return r


def direct_sum_sequence(X: NComplex, Y: NComplex) -> DegreewiseSplitSES:
    """``0 -> X -> X (+) Y -> Y -> 0``."""
    from .complexes import direct_sum

    _same_category(X, Y)
    M = direct_sum(X, Y)
    dom = X.domain
    inj = {m: ExactMatrix.block(dom, [X.dim(m), Y.dim(m)], [X.dim(m)], {(0, 0): _eye(X, m)}) for m in M.degrees()}
    surj = {m: ExactMatrix.block(dom, [Y.dim(m)], [X.dim(m), Y.dim(m)], {(0, 1): _eye(Y, m)}) for m in M.degrees()}
    return DegreewiseSplitSES(X, M, Y, ChainMap(X, M, inj), ChainMap(M, Y, surj))


def triangle_sequence(tri: StrictTriangle) -> DegreewiseSplitSES:
    """``0 -> Y -> C(f) -> SX -> 0`` underlying a strict triangle."""
    return DegreewiseSplitSES(tri.f.target, tri.cone, tri.onto_suspension.target, tri.into_cone, tri.onto_suspension)


def hull_sequence(X: NComplex) -> DegreewiseSplitSES:
    """``0 -> X -> I(X) -> SX -> 0``."""
    I, iota = hull(X)
    return DegreewiseSplitSES(X, I, suspension(X), iota, hull_quotient(X))


# -- unit and counit of the suspension pair ----------------------------------------
#
# Block (k, l) of (S S^-1 X)^m is X^(m+k-N+l); block (l, k) of (S^-1 S X)^m is
# X^(m-N+l+k).  Each of the four maps below is, up to a scalar, the only
# natural map built from composites of d.


def _double_layout(X: NComplex, m: int, outer_sign: int) -> list[tuple[int, int, int]]:
    N = X.N
    if outer_sign > 0:  # S S^-1 X
        return [(k, l, m + k - N + l) for k in range(1, N) for l in range(1, N)]
    return [(l, k, m - N + l + k) for l in range(1, N) for k in range(1, N)]


def _natural_map(X: NComplex, target: NComplex, outer_sign: int, into: bool, pick) -> ChainMap:
    """Assemble ``X -> target`` (``into``) or ``target -> X`` from chosen composites."""
    dom = X.domain
    comps = {}
    for m in target.degrees():
        lay = _double_layout(X, m, outer_sign)
        sizes = [X.dim(d) for _, _, d in lay]
        blocks = {}
        for b, (p, q, d) in enumerate(lay):
            if pick(p, q):
                if into:
                    blocks[(b, 0)] = X.composite(m, d - m)
                else:
                    blocks[(0, b)] = X.composite(d, m - d)
        if into:
            comps[m] = ExactMatrix.block(dom, sizes, [X.dim(m)], blocks)
        else:
            comps[m] = ExactMatrix.block(dom, [X.dim(m)], sizes, blocks)
    if into:
        return ChainMap(X, target, comps)
    return ChainMap(target, X, comps)


def sigma_unit(X: NComplex) -> ChainMap:
    """``X -> S^-1 S X``: the diagonal copies of ``X^m``."""
    N = X.N
    return _natural_map(X, inv_suspension(suspension(X)), -1, True, lambda l, k: l + k == N)


def sigma_unit_inverse(X: NComplex) -> ChainMap:
    """``S^-1 S X -> X`` with ``sigma_unit_inverse . sigma_unit = 1``."""
    return _natural_map(X, inv_suspension(suspension(X)), -1, False, lambda l, k: k == 1)


def sigma_counit(X: NComplex) -> ChainMap:
    """``S S^-1 X -> X``: sum of the diagonal copies of ``X^m``."""
    N = X.N
    return _natural_map(X, suspension(inv_suspension(X)), 1, False, lambda k, l: k + l == N)


def sigma_counit_inverse(X: NComplex) -> ChainMap:
    """``X -> S S^-1 X``, ``x -> d{k-1}x`` in block ``(k, N-1)``; ``sigma_counit . this = 1``."""
    N = X.N
    return _natural_map(X, suspension(inv_suspension(X)), 1, True, lambda k, l: l == N - 1)


def is_homotopy_equivalence(f: ChainMap) -> bool:
    """``f`` is invertible in K_N, i.e. its cone is contractible."""
    return is_contractible(cone(f)[0])


# -- Ext_dw classes ----------------------------------------------------------------


def psi(f: ChainMap, Y: NComplex, verify: bool = False) -> DegreewiseSplitSES:
    """Degreewise split extension ``0 -> X -> E -> Y -> 0`` classified by ``f : S^-1 Y -> X``.

    ``E`` is the pullback of ``0 -> X -> C(f) -> S S^-1 Y -> 0`` along
    ``sigma_counit_inverse(Y)``, so ``E^m = X^m + Y^m`` with differential
    ``[[d_X, g], [0, d_Y]]`` where ``g^m`` is ``f^(m+1)`` restricted to the
    last block ``Y^m`` of ``(S^-1 Y)^(m+1)``.  With ``verify=True`` the
    identification ``S S^-1 Y ~ Y`` is checked to be a homotopy equivalence
    first.
    """
    if f.source != inv_suspension(Y):
        raise DimensionMismatch("psi() needs a map out of inv_suspension(Y)")
    X, N, dom = f.target, Y.N, Y.domain
    if verify:
        eta, eps = sigma_counit_inverse(Y), sigma_counit(Y)
        if compose_maps(eps, eta) != identity_map(Y) or not is_homotopy_equivalence(eta):
            raise AssertionError("S S^-1 Y is not identified with Y")
    degs = set(X.degrees()) | set(Y.degrees())
    dims, diffs, inj, surj = {}, {}, {}, {}
    for m in degs:
        fm = f.component(m + 1)
        # last block of (S^-1 Y)^(m+1) is Y^m
        start = sum(Y.dim(m + 1 - N + l) for l in range(1, N - 1))
        g = fm.submatrix(range(fm.nrows), range(start, start + Y.dim(m)))
        dims[m] = X.dim(m) + Y.dim(m)
        diffs[m] = ExactMatrix.block(
            dom, [X.dim(m + 1), Y.dim(m + 1)], [X.dim(m), Y.dim(m)],
            {(0, 0): X.diff(m), (0, 1): g, (1, 1): Y.diff(m)},
        )
        inj[m] = ExactMatrix.block(dom, [X.dim(m), Y.dim(m)], [X.dim(m)], {(0, 0): _eye(X, m)})
        surj[m] = ExactMatrix.block(dom, [Y.dim(m)], [X.dim(m), Y.dim(m)], {(0, 1): _eye(Y, m)})
    E = NComplex.build(N, dom, dims, diffs)
    return DegreewiseSplitSES(X, E, Y, ChainMap(X, E, inj), ChainMap(E, Y, surj))


def psi_cone_sequence(f: ChainMap) -> DegreewiseSplitSES:
    """The unpulled sequence ``0 -> X -> C(f) -> S(source of f) -> 0``."""
    C, tri = cone(f)
    return triangle_sequence(tri)


# -- strict retractions from homotopy retractions ------------------------------------


def strict_retraction(f: ChainMap, r: ChainMap, t: Homotopy) -> ChainMap:
    """Turn a homotopy retraction of ``u : Y -> C(f)`` into a strict one.

    ``r : C(f) -> Y`` must satisfy ``1_Y - r.u = realize(t)``.  The result is

        a(y, x_1, ..., x_{N-1}) = y + r(0, x)
            + sum_{q=1}^{N-1} sum_{i=1}^{N-q} d_Y{N-i-q} t^(n+i+q-1) d_Y{i-1} f^(n+q)(x_q)

    which satisfies ``a.u = 1_Y`` exactly and is a chain map.
    """
    X, Y = f.source, f.target
    N, dom = X.N, X.domain
    C, tri = cone(f)
    u = tri.into_cone
    if r.source != C or r.target != Y:
        raise DimensionMismatch("r must be a map C(f) -> Y")
    if t.source != Y or t.target != Y:
        raise DimensionMismatch("t must be a homotopy on Y")
    check_chain_map(r)
    if realize(t) != identity_map(Y) - compose_maps(r, u):
        raise WitnessInvalid("t does not realize 1 - r.u")
    comps = {}
    for n in C.degrees():
        if not Y.dim(n):
            continue
        xs = [n + q for q in range(1, N)]
        ssz = [Y.dim(n)] + _blocks(X, xs)
        rn = r.component(n)
        blocks = {(0, 0): _eye(Y, n)}
        for q in range(1, N):
            corr = ExactMatrix.zeros(dom, Y.dim(n), X.dim(n + q))
            for i in range(1, N - q + 1):
                corr = corr + (
                    Y.composite(n - (N - i - q), N - i - q)
                    @ t.at(n + i + q - 1)
                    @ Y.composite(n + q, i - 1)
                    @ f.component(n + q)
                )
            blocks[(0, q)] = corr
        a_n = ExactMatrix.block(dom, [Y.dim(n)], ssz, blocks)
        tail = sum(ssz[1:])
        drop_y = ExactMatrix.block(dom, [Y.dim(n), tail], [Y.dim(n), tail], {(1, 1): ExactMatrix.identity(dom, tail)})
        comps[n] = a_n + rn @ drop_y  # the r(0, x) term
    return ChainMap(C, Y, comps)


lemma41_retraction = strict_retraction
