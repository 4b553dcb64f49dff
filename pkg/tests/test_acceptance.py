"""Acceptance battery: one test per criterion, each reporting a PASS/FAIL line.

The lines are printed as they are decided and again in the terminal summary.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import sympy

from ncomplex.classes import ext_dw_dim, prop31_criterion
from ncomplex.complexes import (
    NComplex,
    compose_maps,
    disc,
    epi_criterion,
    homology,
    homology_table,
    identity_map,
    is_chain_map,
    is_n_exact,
    validate,
)
from ncomplex.homotopy import Homotopy, is_contractible, null_homotopy, realize
from ncomplex.linalg import CoefficientDomain, ExactMatrix, rank, smith_normal_form, solve
from ncomplex.randgen import (
    FIELDS,
    N_VALUES,
    PRIME_FIELDS,
    random_chain_map,
    random_complex,
    random_exact_complex,
    random_matrix,
    random_near,
)
from ncomplex.triangles import cone, hull, inv_suspension, lemma41_retraction, psi, split_test, suspension
from ncomplex.verify import retraction_instance, lifting_sample

sys.path.insert(0, str(Path(__file__).parent))
import classical_oracle as oracle  # noqa: E402
from conftest import ACCEPTANCE_LINES  # noqa: E402

Z = CoefficientDomain.integers()


def case_rng(criterion: int, case: int) -> random.Random:
    return random.Random(f"acceptance:{criterion}:{case}")


def report(number: int, title: str, failures: list, cases: int, extra: str = "") -> None:
    status = "PASS" if not failures else "FAIL"
    line = f"[{status}] criterion {number:>2}: {title} ({cases} cases{', ' + extra if extra else ''})"
    if failures:
        line += f"; first failures: {failures[:3]}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    assert not failures, line


def random_witness(rng, X: NComplex, Y: NComplex) -> Homotopy:
    N = X.N
    return Homotopy(X, Y, {i: random_matrix(rng, X.domain, Y.dim(i - N + 1), X.dim(i))
                           for i in X.degrees() if Y.dim(i - N + 1)})


def test_1_constructions_preserve_nilpotency():
    start, failures = time.perf_counter(), []
    for case in range(500):
        rng = case_rng(1, case)
        N, dom = N_VALUES[case % 4], rng.choice(FIELDS)
        X = random_complex(rng, N, dom, max_dim=3, max_len=N + 2)
        Y = random_near(rng, X, N, dom, max_dim=3, max_len=N + 2)
        f = random_chain_map(rng, X, Y)
        C, tri = cone(f)
        I, iota = hull(X)
        built = [C, suspension(X), inv_suspension(X), I]
        if not (all(validate(B) for B in built) and is_chain_map(tri.into_cone)
                and is_chain_map(tri.onto_suspension) and is_chain_map(iota)):
            failures.append(case)
    elapsed = time.perf_counter() - start
    if elapsed >= 30:
        failures.append(f"runtime {elapsed:.1f}s")
    report(1, "cone, suspension, inverse suspension and hull stay nilpotent", failures, 500,
           f"{elapsed:.1f}s")


def test_2_disc_lifting_criterion_matches_exactness():
    failures, values = [], []
    for case in range(240):
        X = lifting_sample(case_rng(2, case), N_VALUES[case % 4])
        a, b = prop31_criterion(X), is_n_exact(X)
        values.append(b)
        if a != b:
            failures.append(case)
    if len(set(values)) != 2:
        failures.append("sample lacks one truth value")
    report(2, "disc-lifting criterion agrees with N-exactness", failures, 240,
           f"{sum(values)} exact / {len(values) - sum(values)} not")


def test_3_split_extensions_are_null_homotopic_maps():
    failures, splits_seen, nonzero = [], set(), 0
    for case in range(240):
        rng = case_rng(3, case)
        N, dom = N_VALUES[case % 4], PRIME_FIELDS[case % 3]
        Y = random_complex(rng, N, dom, max_dim=2, max_len=N)
        S = inv_suspension(Y)
        for _ in range(10):  # the zero map is a trivial instance, so prefer nonzero ones
            X = random_near(rng, S, N, dom, max_dim=3, max_len=N + 1)
            f = realize(random_witness(rng, S, X)) if case % 5 < 2 else random_chain_map(rng, S, X)
            if not f.is_zero():
                break
        nonzero += not f.is_zero()
        splits = split_test(psi(f, Y)) is not None
        splits_seen.add(splits)
        if splits != (null_homotopy(f) is not None):
            failures.append(case)
    if splits_seen != {True, False}:
        failures.append("sample lacks split or non-split extensions")
    report(3, "extension splits iff its classifying map is null-homotopic", failures, 240,
           f"{nonzero} nonzero maps")


def test_4_strict_retraction():
    failures, corrected = [], {"equivalence": 0, "null": 0}
    for family in corrected:
        for case in range(100):
            rng = case_rng(4, case if family == "equivalence" else 1000 + case)
            f, r, t = retraction_instance(rng, N_VALUES[case % 4], rng.choice(FIELDS), family)
            corrected[family] += not t.is_zero()
            u = cone(f)[1].into_cone
            a = lemma41_retraction(f, r, t)
            if not (is_chain_map(a) and compose_maps(a, u) == identity_map(f.target)):
                failures.append((family, case))
    report(4, "homotopy retractions become strict retractions", failures, 200,
           "100 homotopy equivalences ({equivalence} corrected), 100 null-homotopic maps ({null} corrected)"
           .format(**corrected))


def _sample_5_6():
    return [random_complex(case_rng(5, case), N_VALUES[case % 4]) for case in range(240)]


def test_5_single_amplitude_exactness():
    failures, sample = [], _sample_5_6()
    for case, X in enumerate(sample):
        answers = {is_n_exact(X, r) for r in range(1, X.N)} | {is_n_exact(X)}
        if len(answers) != 1:
            failures.append(case)
    exact = sum(is_n_exact(X) for X in sample)
    report(5, "every single amplitude decides exactness", failures, len(sample), f"{exact} exact")


def test_6_epimorphism_criterion():
    failures, sample = [], _sample_5_6()
    for case, X in enumerate(sample):
        if epi_criterion(X) != is_n_exact(X):
            failures.append(case)
    report(6, "exactness iff every induced map on cycles is onto", failures, len(sample))


def test_7_suspensions_preserve_exactness():
    failures = []
    for case in range(120):
        rng = case_rng(7, case)
        E = random_exact_complex(rng, N_VALUES[case % 4], rng.choice(FIELDS))
        if not (is_n_exact(E) and is_n_exact(suspension(E)) and is_n_exact(inv_suspension(E))):
            failures.append(case)
    report(7, "suspension and its inverse keep exact complexes exact", failures, 120)


def test_8_disc_battery():
    failures, count = [], 0
    for N in (2, 3, 4, 5):
        for j in range(-3, 4):
            for m in (1, 2, 3):
                rng = case_rng(8, N * 100 + j * 10 + m)
                dom = rng.choice(FIELDS)
                D = disc(N, j, N, m, dom)
                count += 1
                ok = is_contractible(D) and is_n_exact(D)
                for _ in range(20):
                    Y = random_near(rng, D, N, dom, max_dim=3, max_len=N + 1)
                    ok = ok and ext_dw_dim(D, Y) == 0
                if not ok:
                    failures.append((N, j, m))
    report(8, "full discs are contractible, exact and have no extensions", failures, count,
           "20 targets each")


def _to_oracle(X: NComplex) -> oracle.Cochain:
    K = oracle.sympy_domain(X.domain.kind, X.domain.p)
    dims = {i: X.dim(i) for i in X.degrees()}
    d = {i: oracle.mat(K, X.diff(i).rows(), X.diff(i).shape) for i in X.degrees()}
    return oracle.Cochain(K, dims, d)


def _same(A: oracle.Cochain, B: oracle.Cochain) -> bool:
    degs = set(A.degrees()) | set(B.degrees())
    return all(A.dim(i) == B.dim(i) and A.diff(i) == B.diff(i) for i in degs)


def test_9_classical_regression():
    failures, null_seen = [], []
    for case in range(200):
        rng = case_rng(9, case)
        dom = rng.choice(FIELDS)
        X = random_complex(rng, 2, dom, max_dim=3, max_len=4)
        Y = random_near(rng, X, 2, dom, max_dim=3, max_len=4)
        f = realize(random_witness(rng, X, Y)) if case % 3 == 0 else random_chain_map(rng, X, Y)
        oX, oY = _to_oracle(X), _to_oracle(Y)
        of = oracle.Cochainmap(oX, oY, {i: oracle.mat(oX.K, m.rows(), m.shape) for i, m in f.components.items()})
        ours = {i: homology(X, i, 1).free_rank for i in X.degrees() if homology(X, i, 1).free_rank}
        checks = {
            "homology": ours == oX.homology_dims(),
            "suspension": _same(_to_oracle(suspension(X)), oracle.shift(oX)),
            "cone": _same(_to_oracle(cone(f)[0]), oracle.mapping_cone(of)),
            "null-homotopy": (null_homotopy(f) is not None) == oracle.is_null_homotopic(of),
        }
        null_seen.append(oracle.is_null_homotopic(of))
        bad = [name for name, ok in checks.items() if not ok]
        if bad:
            failures.append((case, bad))
    if len(set(null_seen)) != 2:
        failures.append("sample lacks null-homotopic or essential maps")
    report(9, "ordinary complexes agree with an independent sympy oracle", failures, 200,
           f"{sum(null_seen)} null-homotopic maps")


def test_10_worked_example():
    F5 = CoefficientDomain.prime_field(5)
    X = NComplex.build(3, F5, {0: 1, 1: 1}, {0: [[1]]})
    table = {(h.degree, h.amplitude): (h.free_rank, h.torsion) for h in homology_table(X)}
    nonzero = {k: v for k, v in table.items() if v != (0, ())}
    failures = [] if nonzero == {(0, 2): (1, ()), (1, 1): (1, ())} else [nonzero]
    report(10, "0 -> k -> k -> 0 over F5 with N = 3 has exactly H^0_2 = H^1_1 = k", failures, 1)


def test_11_exact_linear_algebra():
    failures, rejected = [], 0
    for case in range(1000):
        rng = case_rng(11, case)
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        A = ExactMatrix.from_rows(Z, [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)])
        snf = smith_normal_form(A)
        diag = [snf.D[i, i] for i in range(min(r, c))]
        nz = [d for d in diag if d]
        ok = (snf.U @ A @ snf.V == snf.D
              and abs(sympy.Matrix(snf.U.rows()).det()) == 1
              and abs(sympy.Matrix(snf.V.rows()).det()) == 1
              and all(snf.D[i, j] == 0 for i in range(r) for j in range(c) if i != j)
              and diag[: len(nz)] == nz and all(d > 0 for d in nz)
              and all(b % a == 0 for a, b in zip(nz, nz[1:]))
              and len(nz) == sympy.Matrix(A.rows()).rank())
        if not ok:
            failures.append(("snf", case))
    for case in range(400):
        rng = case_rng(11, 10_000 + case)
        dom = (FIELDS + (Z,))[case % 5]
        r, c = rng.randint(0, 6), rng.randint(0, 6)
        A = random_matrix(rng, dom, r, c, density=rng.choice([0.3, 0.7, 1.0]))
        x = random_matrix(rng, dom, c, 1)
        b = A @ x
        X = solve(A, b)
        if X is None or A @ X != b:
            failures.append(("solve", str(dom), case))
        K = oracle.sympy_domain(dom.kind, dom.p) if dom.kind != "Z" else sympy.QQ
        if r and c and rank(A) != oracle.rank(oracle.mat(K, A.rows(), A.shape)):
            failures.append(("rank", str(dom), case))
        if dom.kind != "Z" and r and c and rank(A) < r:
            # an off-image right-hand side must be rejected
            extended = ExactMatrix.identity(dom, r)
            off = [extended.submatrix(range(r), [k]) for k in range(r)
                   if rank(A.hstack(extended.submatrix(range(r), [k]))) > rank(A)]
            if off:
                rejected += 1
                if solve(A, off[0]) is not None:
                    failures.append(("inconsistent", str(dom), case))
    report(11, "Smith form invariants and solve/rank consistency", failures, 1400,
           f"{rejected} inconsistent systems rejected")
