"""Seeded random N-complexes and chain maps for property checks.

Two complex models are mixed:

``projected``
    Differentials are drawn uniformly, then every window whose N-fold composite
    is nonzero is repaired by zeroing its trailing map.
``discs``
    A random direct sum of discs ``D^j_i(k^m)``, disguised by a random change
    of basis in every degree.  Over a field every finite N-complex is of this
    form up to isomorphism, so this model reaches all isomorphism types.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .complexes import NComplex, change_of_basis, direct_sum, disc, shift_degrees, zero_complex
from .homotopy import chain_map_basis
from .linalg import CoefficientDomain, ExactMatrix, rank
from .complexes import ChainMap

FIELDS = (
    CoefficientDomain.prime_field(2),
    CoefficientDomain.prime_field(3),
    CoefficientDomain.prime_field(5),
    CoefficientDomain.rationals(),
)
PRIME_FIELDS = FIELDS[:3]
N_VALUES = (2, 3, 4, 5)

_Q_CHOICES = (0, 0, 1, -1, 2, -2, 3, Fraction(1, 2), Fraction(-3, 2), Fraction(2, 3))


def scalar(rng: random.Random, domain: CoefficientDomain, nonzero: bool = False):
    while True:
        if domain.kind == "Fp":
            x = rng.randrange(domain.p)
        elif domain.kind == "Q":
            x = Fraction(rng.choice(_Q_CHOICES))
        else:
            x = rng.randint(-3, 3)
        if x or not nonzero:
            return domain.coerce(x)


def random_matrix(rng: random.Random, domain: CoefficientDomain, nrows: int, ncols: int, density: float = 1.0):
    rows = [[scalar(rng, domain) if rng.random() < density else 0 for _ in range(ncols)] for _ in range(nrows)]
    return ExactMatrix.from_rows(domain, rows, ncols=ncols)


def random_invertible(rng: random.Random, domain: CoefficientDomain, n: int) -> ExactMatrix:
    """Uniform-ish invertible matrix; unimodular (product of elementary moves) over Z."""
    if domain.kind == "Z":
        M = [[int(i == j) for j in range(n)] for i in range(n)]
        for _ in range(3 * n):
            i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
            if i == j:
                M[i] = [-x for x in M[i]]
                continue
            c = rng.choice((-2, -1, 1, 2))
            M[i] = [a + c * b for a, b in zip(M[i], M[j])]
        return ExactMatrix.from_rows(domain, M, ncols=n)
    while True:
        M = random_matrix(rng, domain, n, n)
        if rank(M) == n:
            return M


def random_disc_sum(
    rng: random.Random,
    N: int,
    domain: CoefficientDomain,
    lo: int,
    length: int,
    max_dim: int = 4,
    lengths: tuple[int, ...] | None = None,
) -> NComplex:
    """Random sum of discs inside ``[lo, lo + length - 1]``, basis-scrambled."""
    X = zero_complex(N, domain)
    hi = lo + length - 1
    for _ in range(rng.randint(1, max_dim + 1)):
        i = rng.choice(lengths) if lengths else rng.randint(1, N)
        if i > length:
            continue
        j = rng.randint(lo + i - 1, hi)
        D = disc(N, j, i, 1, domain)
        if max(X.dim(d) + D.dim(d) for d in D.degrees()) > max_dim:
            continue
        X = direct_sum(X, D)
    return change_of_basis(X, {i: random_invertible(rng, domain, X.dim(i)) for i in X.degrees()})


def random_projected(
    rng: random.Random, N: int, domain: CoefficientDomain, lo: int, length: int, max_dim: int = 4
) -> NComplex:
    dims = {lo + k: rng.randint(0, max_dim) for k in range(length)}
    diffs = {i: random_matrix(rng, domain, dims.get(i + 1, 0), dims[i]) for i in dims}
    X = NComplex.build(N, domain, dims, diffs)
    for i in range(X.lo - N, X.hi + 1):
        if not X.composite(i, N).is_zero():
            diffs[i + N - 1] = ExactMatrix.zeros(domain, dims.get(i + N, 0), dims.get(i + N - 1, 0))
            X = NComplex.build(N, domain, dims, diffs)
    return X


def random_complex(
    rng: random.Random,
    N: int | None = None,
    domain: CoefficientDomain | None = None,
    max_dim: int = 4,
    max_len: int | None = None,
    model: str | None = None,
) -> NComplex:
    """A valid random N-complex (``N in {2..5}``, dims ``<= max_dim``, support ``<= N + 3``)."""
    N = N or rng.choice(N_VALUES)
    domain = domain or rng.choice(FIELDS)
    max_len = max_len or N + 3
    length = rng.randint(1, max_len)
    lo = rng.randint(-2, 1)
    model = model or rng.choice(("projected", "discs"))
    if model == "projected":
        return random_projected(rng, N, domain, lo, length, max_dim)
    return random_disc_sum(rng, N, domain, lo, length, max_dim)


def random_exact_seed(rng: random.Random, N: int, domain: CoefficientDomain, max_dim: int = 3) -> NComplex:
    """Sum of N-discs with scrambled bases; N-exact (indeed contractible)."""
    length = rng.randint(N, N + 3)
    X = random_disc_sum(rng, N, domain, rng.randint(-2, 1), length, max_dim, lengths=(N,))
    return X


def random_near(rng: random.Random, anchor: NComplex, N: int, domain: CoefficientDomain, **kw) -> NComplex:
    """Random complex whose support starts inside (or just below) the support of ``anchor``."""
    X = random_complex(rng, N, domain, **kw)
    if anchor.is_zero or X.is_zero:
        return X
    return shift_degrees(X, rng.randint(anchor.lo - 1, anchor.hi) - X.lo)


def random_chain_map(rng: random.Random, X: NComplex, Y: NComplex) -> ChainMap:
    """Random element of ``Hom_C(X, Y)`` (uniform combination of a basis)."""
    basis = chain_map_basis(X, Y)
    f = ChainMap(X, Y, {})
    for b in basis:
        c = scalar(rng, X.domain)
        if c:
            f = f + b.scale(c)
    return f


def random_exact_complex(
    rng: random.Random, N: int, domain: CoefficientDomain, depth: int | None = None, max_dim: int = 6
) -> NComplex:
    """N-exact complex built as an iterated cone of random maps between exact pieces."""
    from .triangles import cone

    depth = rng.randint(0, 2) if depth is None else depth
    E = random_exact_seed(rng, N, domain, max_dim=2)
    for _ in range(depth):
        S = random_exact_seed(rng, N, domain, max_dim=2)
        f = random_chain_map(rng, S, E) if rng.random() < 0.5 else random_chain_map(rng, E, S)
        C = cone(f)[0]
        if max(C.dims) > max_dim:
            break
        E = C
    return E
