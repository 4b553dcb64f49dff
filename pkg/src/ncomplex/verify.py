"""Seeded randomized verification suites.

Every trial draws from its own generator, seeded by ``"<seed>:<suite>:<trial>"``,
so a report depends only on ``(suite, seed, trials)`` and any failing trial can
be replayed on its own.  ``N`` cycles through 2..5 with the trial index.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import classical
from .classes import disc_lifting_criterion, ext_dw_dim
from .complexes import (
    NComplex,
    compose_maps,
    direct_sum,
    disc,
    epi_criterion,
    homology,
    identity_map,
    is_chain_map,
    is_n_exact,
    stalk,
    validate,
)
from .homotopy import Homotopy, is_contractible, null_homotopy, realize
from .linalg import CoefficientDomain
from .randgen import (
    FIELDS,
    N_VALUES,
    PRIME_FIELDS,
    random_chain_map,
    random_complex,
    random_exact_complex,
    random_exact_seed,
    random_matrix,
    random_near,
)
from .serialize import to_dict
from .triangles import cone, hull, inv_suspension, psi, split_test, strict_retraction, suspension, triangle_sequence

Counterexample = dict


@dataclass
class VerifyReport:
    suite: str
    seed: int
    trials: int
    failures: list[tuple[int, Counterexample]] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self, with_elapsed: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "failures": [{"trial": t, "counterexample": c} for t, c in self.failures],
        }
        if with_elapsed:
            out["elapsed"] = round(self.elapsed, 3)
        return out


def trial_rng(seed: int, suite: str, trial: int) -> random.Random:
    return random.Random(f"{seed}:{suite}:{trial}")


def _n_for(trial: int) -> int:
    return N_VALUES[trial % len(N_VALUES)]


def _random_witness(rng: random.Random, X: NComplex, Y: NComplex) -> Homotopy:
    N, dom = X.N, X.domain
    return Homotopy(X, Y, {
        i: random_matrix(rng, dom, Y.dim(i - N + 1), X.dim(i)) for i in X.degrees() if Y.dim(i - N + 1)
    })


def _docs(**objs) -> Counterexample:
    return {name: to_dict(obj) for name, obj in objs.items()}


# -- suites: each returns None on success or a counterexample -----------------------


def _nilpotency(rng: random.Random, trial: int):
    N = _n_for(trial)
    dom = rng.choice(FIELDS)
    X = random_complex(rng, N, dom, max_dim=3, max_len=N + 1)
    Y = random_near(rng, X, N, dom, max_dim=3, max_len=N + 1)
    f = random_chain_map(rng, X, Y)
    for name, Z in (("cone", cone(f)[0]), ("suspension", suspension(X)),
                    ("inv_suspension", inv_suspension(X)), ("hull", hull(X)[0])):
        if not validate(Z):
            return {"construction": name, **_docs(map=f)}
    return None


def _single_amplitude(rng: random.Random, trial: int):
    X = random_complex(rng, _n_for(trial))
    answers = [is_n_exact(X, r) for r in range(1, X.N)] + [is_n_exact(X)]
    if len(set(answers)) != 1:
        return {"answers": answers, **_docs(complex=X)}
    return None


def _epi_criterion(rng: random.Random, trial: int):
    X = random_complex(rng, _n_for(trial))
    if is_n_exact(X) != epi_criterion(X):
        return {"n_exact": is_n_exact(X), **_docs(complex=X)}
    return None


def _cone_contractible(rng: random.Random, trial: int):
    X = random_complex(rng, _n_for(trial), max_dim=3, max_len=_n_for(trial) + 1)
    if not is_contractible(cone(identity_map(X))[0]):
        return {"construction": "cone of identity", **_docs(complex=X)}
    if not is_contractible(hull(X)[0]):
        return {"construction": "hull", **_docs(complex=X)}
    return None


def _extension_kernel(rng: random.Random, trial: int):
    N = _n_for(trial)
    dom = rng.choice(PRIME_FIELDS)
    Y = random_complex(rng, N, dom, max_dim=2, max_len=N)
    S = inv_suspension(Y)
    null_bias = rng.random() < 0.4
    for _ in range(10):  # prefer nonzero maps; the zero map is a trivial instance
        X = random_near(rng, S, N, dom, max_dim=3, max_len=N + 1)
        f = realize(_random_witness(rng, S, X)) if null_bias else random_chain_map(rng, S, X)
        if not f.is_zero():
            break
    splits = split_test(psi(f, Y)) is not None
    null = null_homotopy(f) is not None
    if splits != null:
        return {"splits": splits, "null_homotopic": null, **_docs(map=f, Y=Y)}
    return None


def retraction_instance(rng: random.Random, N: int, dom: CoefficientDomain, family: str):
    """A map ``f`` with a homotopy retraction ``(r, t)`` of ``u : Y -> C(f)``.

    ``family="equivalence"``: ``X`` and ``Y`` contractible, so ``f`` is a homotopy
    equivalence, ``r`` is an arbitrary chain map and ``t`` solves ``1 - r u``.
    ``family="null"``: ``f`` null-homotopic, ``r`` a strict retraction perturbed
    by a realized homotopy, ``t`` the matching correction.
    """
    if family == "equivalence":
        X, Y = random_exact_seed(rng, N, dom, max_dim=2), random_exact_seed(rng, N, dom, max_dim=2)
        f = random_chain_map(rng, X, Y)
        C, tri = cone(f)
        u = tri.into_cone
        r = random_chain_map(rng, C, Y)
        t = null_homotopy(identity_map(Y) - compose_maps(r, u))
        if t is None:
            raise AssertionError("a contractible Y must make 1 - r.u null-homotopic")
        return f, r, t
    X = random_complex(rng, N, dom, max_dim=3, max_len=N + 1)
    Y = random_near(rng, X, N, dom, max_dim=3, max_len=N + 1)
    f = realize(_random_witness(rng, X, Y))
    C, tri = cone(f)
    u = tri.into_cone
    r0 = split_test(triangle_sequence(tri))
    if r0 is None:
        raise AssertionError("cone of a null-homotopic map must split")
    W = _random_witness(rng, C, Y)
    r = r0 + realize(W)
    # realize(W) . u = realize(W . u) because u is a chain map
    t = Homotopy(Y, Y, {i: -(W.at(i) @ u.component(i)) for i in Y.degrees() if Y.dim(i - N + 1)})
    return f, r, t


def _retraction(rng: random.Random, trial: int):
    N = _n_for(trial)
    dom = rng.choice(FIELDS)
    family = "equivalence" if trial % 2 == 0 else "null"
    f, r, t = retraction_instance(rng, N, dom, family)
    a = strict_retraction(f, r, t)
    u = cone(f)[1].into_cone
    if not is_chain_map(a) or compose_maps(a, u) != identity_map(f.target):
        return {"family": family, **_docs(map=f, retraction=r)}
    return None


def _sigma_exact(rng: random.Random, trial: int):
    E = random_exact_complex(rng, _n_for(trial), rng.choice(FIELDS))
    if not is_n_exact(E):
        return {"problem": "generator produced a non-exact complex", **_docs(complex=E)}
    for name, Z in (("suspension", suspension(E)), ("inv_suspension", inv_suspension(E))):
        if not is_n_exact(Z):
            return {"construction": name, **_docs(complex=E)}
    return None


def lifting_sample(rng: random.Random, N: int) -> NComplex:
    """Random complexes with discs and stalks mixed in so both answers occur."""
    dom = rng.choice(FIELDS)
    kind = rng.random()
    if kind < 0.15:
        return stalk(N, rng.randint(-2, 2), rng.randint(1, 2), dom)
    if kind < 0.3:
        i = rng.randint(1, N)
        return disc(N, rng.randint(-2, 2), i, rng.randint(1, 2), dom)
    if kind < 0.45:
        return random_exact_seed(rng, N, dom)
    return random_complex(rng, N, dom)


def _lifting(rng: random.Random, trial: int):
    X = lifting_sample(rng, _n_for(trial))
    a, b = disc_lifting_criterion(X), is_n_exact(X)
    if a != b:
        return {"criterion": a, "n_exact": b, **_docs(complex=X)}
    return None


def _to_classical(X: NComplex) -> classical.ChainComplex:
    F = classical.Field(X.domain.p)
    return classical.ChainComplex(
        F, {i: X.dim(i) for i in X.degrees()}, {i: X.diff(i).rows() for i in X.degrees()}
    )


def _same_classical(A: classical.ChainComplex, B: classical.ChainComplex) -> bool:
    F = A.field
    degs = set(A.span()) | set(B.span())
    for i in degs:
        if A.dim(i) != B.dim(i):
            return False
        if [[F.norm(x) for x in r] for r in A.diff(i)] != [[F.norm(x) for x in r] for r in B.diff(i)]:
            return False
    return True


def _n2_regression(rng: random.Random, trial: int):
    dom = rng.choice(FIELDS)
    X = random_complex(rng, 2, dom, max_dim=3, max_len=4)
    Y = random_near(rng, X, 2, dom, max_dim=3, max_len=4)
    f = realize(_random_witness(rng, X, Y)) if rng.random() < 0.4 else random_chain_map(rng, X, Y)
    cX, cY = _to_classical(X), _to_classical(Y)
    cf = {i: m.rows() for i, m in f.components.items()}
    for i in X.degrees():
        if homology(X, i, 1).free_rank != cX.homology_dim(i):
            return {"check": "homology", "degree": i, **_docs(complex=X)}
    if not _same_classical(_to_classical(suspension(X)), classical.suspension(cX)):
        return {"check": "suspension", **_docs(complex=X)}
    if not _same_classical(_to_classical(cone(f)[0]), classical.cone(cX, cY, cf)):
        return {"check": "cone", **_docs(map=f)}
    if (null_homotopy(f) is not None) != classical.is_null_homotopic(cX, cY, cf):
        return {"check": "null-homotopy", **_docs(map=f)}
    return None


def _extdw_additivity(rng: random.Random, trial: int):
    N = _n_for(trial)
    dom = rng.choice(FIELDS)
    Y1 = random_complex(rng, N, dom, max_dim=2, max_len=N)
    Y2 = random_near(rng, Y1, N, dom, max_dim=2, max_len=N)
    X = random_near(rng, Y1, N, dom, max_dim=2, max_len=N)
    whole = ext_dw_dim(direct_sum(Y1, Y2), X)
    parts = ext_dw_dim(Y1, X) + ext_dw_dim(Y2, X)
    if whole != parts:
        return {"sum": whole, "parts": parts, **_docs(Y1=Y1, Y2=Y2, X=X)}
    return None


SUITES: dict[str, Callable[[random.Random, int], Counterexample | None]] = {
    "nilpotency": _nilpotency,
    "remark-amplitude": _single_amplitude,
    "epi-criterion": _epi_criterion,
    "cone-contractible": _cone_contractible,
    "lemma24-kernel": _extension_kernel,
    "lemma41": _retraction,
    "sigma-exact": _sigma_exact,
    "prop31": _lifting,
    "n2-regression": _n2_regression,
    "extdw-additivity": _extdw_additivity,
}


def run_trial(suite: str, seed: int, trial: int) -> Counterexample | None:
    check = SUITES[suite]
    try:
        return check(trial_rng(seed, suite, trial), trial)
    except Exception as exc:  # a crash inside a trial is a failure, not an abort
        return {"error": f"{type(exc).__name__}: {exc}"}


def run_suite(suite: str, seed: int, trials: int) -> VerifyReport:
    if suite not in SUITES:
        raise KeyError(suite)
    start = time.perf_counter()
    failures = []
    for t in range(trials):
        bad = run_trial(suite, seed, t)
        if bad is not None:
            failures.append((t, bad))
    failures.sort(key=lambda tc: tc[0])
    return VerifyReport(suite, seed, trials, failures, time.perf_counter() - start)
