import pytest

from hfsigma import verify
from hfsigma.errors import DomainError


@pytest.mark.parametrize("suite", [s for s in verify.SUITES if s != "all"])
def test_each_suite_passes_small_genus(suite):
    rep = verify.run_suite(suite, max_genus=3)
    bad = [c for c in rep.checks if not c.ok]
    assert not bad, "; ".join(
        f"{c.check_id}{c.params}: expected {c.expected} got {c.computed}"
        for c in bad)
    assert rep.checks, "suite produced no checks"
    assert rep.ok


def test_run_all_collects_everything():
    rep = verify.run_suite("all", max_genus=2)
    names = {c.check_id for c in rep.checks}
    assert "hat-closed-form" in names
    assert "swap-random" in names
    assert rep.ok
    lines = rep.lines()
    assert any(line.startswith("[PASS] suite=all") for line in lines)
    data = rep.to_json()
    assert data["pass"] is True


def test_unknown_suite_rejected():
    with pytest.raises(DomainError):
        verify.run_suite("bogus")


def test_report_shows_failures():
    rep = verify.VerificationReport("demo")
    rep.add("always-wrong", {"g": 1}, 1, 2)
    assert not rep.ok
    assert any(line.startswith("[FAIL] always-wrong") for line in rep.lines())
