from __future__ import annotations

import pytest

from ncomplex.verify import SUITES, run_suite, run_trial


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_suite_passes_small_run(suite):
    report = run_suite(suite, seed=3, trials=12)
    assert report.ok, report.failures


def test_reports_are_deterministic():
    a = run_suite("lemma24-kernel", seed=5, trials=10).to_dict(with_elapsed=False)
    b = run_suite("lemma24-kernel", seed=5, trials=10).to_dict(with_elapsed=False)
    assert a == b


def test_trials_replay_individually():
    assert run_trial("prop31", 9, 4) is None


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope", 0, 1)


def test_crashing_trial_is_reported_not_raised(monkeypatch):
    def boom(rng, trial):
        raise RuntimeError("kaput")

    monkeypatch.setitem(SUITES, "boom", boom)
    report = run_suite("boom", 0, 3)
    assert [t for t, _ in report.failures] == [0, 1, 2]
    assert "kaput" in report.failures[0][1]["error"]
