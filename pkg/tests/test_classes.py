from __future__ import annotations

import random

import pytest

from ncomplex.classes import (
    ClassSpec,
    canonical_disc_epi,
    class_membership,
    disc_ext_checks,
    ext_dw_dim,
    orthogonality_spot_test,
    prop31_criterion,
    lifting_obstruction,
)
from ncomplex.complexes import NComplex, direct_sum, disc, is_chain_map, is_n_exact, stalk, zero_complex
from ncomplex.errors import ClassCheckError, UnsupportedDomain
from ncomplex.homotopy import hom_k, is_contractible
from ncomplex.linalg import CoefficientDomain
from ncomplex.randgen import FIELDS, random_complex, random_exact_complex, random_exact_seed, random_near
from ncomplex.verify import lifting_sample

Q = CoefficientDomain.rationals()
F3 = CoefficientDomain.prime_field(3)
Z = CoefficientDomain.integers()

ALL_DW = ClassSpec("all", "degreewise")
ALL_TILDE = ClassSpec("all", "exact-tilde")
ALL_EX = ClassSpec("all", "ex")


def test_class_spec_validation():
    with pytest.raises(UnsupportedDomain):
        ClassSpec("projective", "degreewise")
    with pytest.raises(UnsupportedDomain):
        ClassSpec("all", "dg")


def test_class_membership_examples():
    rng = random.Random(0)
    assert class_membership(random_complex(rng), ALL_DW)
    assert class_membership(disc(3, 0, 3, 1, Q), ALL_TILDE)
    assert not class_membership(stalk(3, 0, 1, Q), ALL_EX)


def test_free_class_only_over_integers():
    with pytest.raises(UnsupportedDomain):
        class_membership(disc(2, 0, 2, 1, Q), ClassSpec("free", "degreewise"))
    D = disc(3, 1, 3, 2, Z)
    assert class_membership(D, ClassSpec("free", "exact-tilde"))
    X = NComplex.build(2, Z, {0: 1, 1: 1}, {0: [[2]]})
    assert class_membership(X, ClassSpec("free", "degreewise"))
    assert not class_membership(X, ClassSpec("free", "ex"))


def test_class_implications_on_random_complexes():
    rng = random.Random(1)
    for trial in range(60):
        X = random_exact_complex(rng, 2 + trial % 4, rng.choice(FIELDS)) if trial % 3 == 0 else random_complex(rng)
        tilde, ex, dw = (class_membership(X, s) for s in (ALL_TILDE, ALL_EX, ALL_DW))
        assert (not tilde or ex) and (not ex or dw)


def test_ext_dw_examples():
    assert ext_dw_dim(stalk(3, 0, 1, Q), stalk(3, 0, 1, Q)) == 0
    rng = random.Random(2)
    for N in (2, 3, 4, 5):
        X = random_complex(rng, N, Q)
        assert ext_dw_dim(disc(N, rng.randint(-2, 2), N, 1, Q), X) == 0
        assert ext_dw_dim(zero_complex(N, Q), X) == 0
        assert ext_dw_dim(X, random_exact_seed(rng, N, Q)) == 0
    with pytest.raises(UnsupportedDomain):
        ext_dw_dim(stalk(2, 0, 1, Z), stalk(2, 0, 1, Z))


def test_ext_dw_detects_classical_extension():
    # N = 2: k -> k in degrees 0, 1 extends the stalk at 0 by the stalk at 1 without splitting
    assert ext_dw_dim(stalk(2, 0, 1, Q), stalk(2, 1, 1, Q)) == 1
    assert ext_dw_dim(stalk(2, 1, 1, Q), stalk(2, 0, 1, Q)) == 0


def test_ext_dw_additive():
    rng = random.Random(3)
    for trial in range(30):
        N = 2 + trial % 4
        dom = rng.choice(FIELDS)
        Y1 = random_complex(rng, N, dom, max_dim=2, max_len=N)
        Y2 = random_near(rng, Y1, N, dom, max_dim=2, max_len=N)
        X = random_near(rng, Y1, N, dom, max_dim=2, max_len=N)
        assert ext_dw_dim(direct_sum(Y1, Y2), X) == ext_dw_dim(Y1, X) + ext_dw_dim(Y2, X)


def test_canonical_disc_epi_is_a_surjective_chain_map():
    for N in (2, 3, 4, 5):
        for r in range(1, N):
            pi = canonical_disc_epi(N, 0, r, Q)
            assert is_chain_map(pi)
            assert all(pi.component(d).nrows == 1 for d in pi.target.degrees())


def test_lifting_criterion_examples():
    for N in (2, 3, 4, 5):
        assert prop31_criterion(random_exact_seed(random.Random(N), N, Q))
        assert prop31_criterion(zero_complex(N, Q))
        ob = lifting_obstruction(stalk(N, 0, 1, Q))
        assert ob is not None
        assert is_chain_map(ob.map) and not ob.map.is_zero()


def test_lifting_criterion_matches_exactness():
    rng = random.Random(4)
    seen = set()
    for trial in range(80):
        X = lifting_sample(rng, 2 + trial % 4)
        value = is_n_exact(X)
        seen.add(value)
        assert prop31_criterion(X) == value
    assert seen == {True, False}


def test_lifting_criterion_rejects_integers():
    with pytest.raises(UnsupportedDomain):
        prop31_criterion(stalk(2, 0, 1, Z))


def test_orthogonality_spot_test():
    rng = random.Random(5)
    tests = [random_exact_complex(rng, 3, Q) for _ in range(3)]
    assert orthogonality_spot_test(disc(3, 0, 3, 1, Q), tests).passed
    assert orthogonality_spot_test(stalk(3, 0, 1, Q), []).passed
    report = orthogonality_spot_test(stalk(3, 0, 1, Q), tests)
    # over a field N-exact complexes are contractible, so nothing can fail here
    assert report.passed and all(is_contractible(C) for C in tests)
    with pytest.raises(ClassCheckError):
        orthogonality_spot_test(stalk(3, 0, 1, Q), [stalk(3, 0, 1, Q)])


def test_orthogonality_spot_test_can_fail_with_a_weaker_test_class():
    S = stalk(3, 0, 1, Q)
    report = orthogonality_spot_test(S, [S], test_class=ALL_DW)
    assert not report.passed
    assert report.results[0].as_tuple() == hom_k(S, S).as_tuple()


def test_disc_ext_checks():
    rng = random.Random(6)
    for N in (2, 3, 4, 5):
        Y = random_complex(rng, N, F3)
        report = disc_ext_checks(2, Y, 0, 1)
        assert report.ok
        assert report.as_dict()["full-disc-source"] == 0
        E = random_exact_complex(rng, N, F3)
        report = disc_ext_checks(1, E, rng.randint(-2, 2), rng.randint(1, N - 1))
        assert report.ok and set(report.as_dict().values()) == {0}
    zero = disc_ext_checks(1, zero_complex(3, Q), 0, 2)
    assert set(zero.as_dict().values()) == {0}
