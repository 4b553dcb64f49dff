from __future__ import annotations

import random
from fractions import Fraction

import pytest

from ncomplex.complexes import NComplex, disc
from ncomplex.errors import NotNilpotent, ParseError
from ncomplex.linalg import CoefficientDomain
from ncomplex.randgen import FIELDS, random_chain_map, random_complex, random_near
from ncomplex.serialize import canonicalize, dumps, load, loads, save

F5 = CoefficientDomain.prime_field(5)
Q = CoefficientDomain.rationals()
Z = CoefficientDomain.integers()


def test_disc_round_trip(tmp_path):
    D = disc(3, 1, 3, 1, F5)
    path = tmp_path / "disc.json"
    save(D, path)
    assert load(path) == D
    assert canonicalize(path.read_text()) == path.read_text()


def test_random_round_trips():
    rng = random.Random(0)
    for _ in range(50):
        dom = rng.choice(FIELDS + (Z,))
        X = random_complex(rng, rng.choice([2, 3, 4, 5]), dom) if dom != Z else NComplex.build(
            2, Z, {0: 2, 1: 1}, {0: [[rng.randint(-5, 5), rng.randint(-5, 5)]]})
        text = dumps(X)
        assert loads(text) == X
        assert dumps(loads(text)) == text


def test_map_round_trip():
    rng = random.Random(1)
    X = random_complex(rng, 3, Q)
    Y = random_near(rng, X, 3, Q)
    f = random_chain_map(rng, X, Y)
    assert loads(dumps(f)) == f


def test_nilpotency_failure_cites_degree():
    text = '{"format_version": "1", "N": 2, "coeff": "Fp:2", "objects": {"0": 1, "1": 1, "2": 1},' \
           ' "diff": {"0": [[1]], "1": [[1]]}}'
    with pytest.raises(NotNilpotent) as err:
        loads(text)
    assert err.value.degree == 0


def test_rationals_reduce_to_lowest_terms():
    X = loads('{"format_version": "1", "N": 2, "coeff": "Q", "objects": {"0": 1, "1": 1}, "diff": {"0": [["6/4"]]}}')
    assert X.diff(0).entries == (Fraction(3, 2),)
    assert '"3/2"' in dumps(X)


def test_canonical_form_is_stable_under_reformatting():
    messy = '{"diff": {"0": [[1]]}, "objects": {"1": 1, "0": 1, "5": 0}, "coeff": "Fp:5", "N": 3, "format_version": "1"}'
    canon = canonicalize(messy)
    assert canonicalize(canon) == canon
    assert canon.index('"format_version"') < canon.index('"objects"')


@pytest.mark.parametrize(
    "text, line, degree",
    [
        ("{", 1, None),
        ('{"format_version": "1",\n "N": 2, "coeff": "Q", "objects": {"0": 1, "1": 1},\n "diff": {\n  "0": [[1, 2]]}}', 4, 0),
        ('{"format_version": "1", "N": 2, "coeff": "Q",\n "objects": {"0": -1}}', 2, 0),
    ],
)
def test_parse_errors_carry_location(text, line, degree):
    with pytest.raises(ParseError) as err:
        loads(text)
    assert err.value.line == line
    assert err.value.degree == degree


@pytest.mark.parametrize(
    "text",
    [
        "[]",
        '{"format_version": "2", "N": 2, "coeff": "Q", "objects": {}}',
        '{"format_version": "1", "N": 1, "coeff": "Q", "objects": {}}',
        '{"format_version": "1", "N": 2, "coeff": "Fp:4", "objects": {}}',
        '{"format_version": "1", "N": 2, "coeff": "Q", "objects": {"a": 1}}',
        '{"format_version": "1", "N": 2, "coeff": "Q", "objects": {"0": 1, "1": 1}, "diff": {"0": [[1.5]]}}',
        '{"format_version": "1", "N": 2, "coeff": "Q", "objects": {"0": 1, "1": 1}, "diff": {"0": [["x"]]}}',
        '{"format_version": "1", "N": 2, "coeff": "Z", "objects": {"0": 1, "1": 1}, "diff": {"0": [["1/2"]]}}',
        '{"format_version": "1", "N": 2, "coeff": "Q", "objects": {"0": 1, "1": 1}, "diff": {"0": 3}}',
        '{"format_version": "1", "N": 2, "coeff": "Q", "objects": {"0": 100000}}',
        '{"format_version": "1", "N": 2, "coeff": "Q"}',
    ],
)
def test_malformed_documents_raise_parse_errors(text):
    with pytest.raises(ParseError):
        loads(text)
