import pytest

from sigmacat import selftest
from sigmacat.selftest import CHECKS, run_selftest


def test_selftest_passes():
    report = run_selftest(seed=3, samples=5)

    assert report.ok
    assert [name for name, _, _ in report.results] == list(CHECKS)


def test_failing_check_is_reported(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setitem(selftest.CHECKS, "broken", lambda _rng, _n: "always wrong")

    report = run_selftest(samples=1)

    assert not report.ok
    assert report.results[-1] == ("broken", False, "always wrong")
