import pytest

from lfrac import verify


@pytest.mark.parametrize("name", [n for n in verify.SUITES if n != "operator-conjugation"])
def test_suite_passes(name):
    (rep,) = verify.run_suite(name)
    failed = [c for c in rep.cases if not c.passed]
    assert rep.overall, failed


def test_operator_conjugation_suite():
    (rep,) = verify.run_suite("operator-conjugation")
    failed = [c for c in rep.cases if not c.passed]
    assert rep.overall, failed


def test_report_bookkeeping():
    rep = verify.VerifyReport("x")
    rep.add("ok", [1e-9, -2e-9], 1e-8)
    rep.add("bad", 3.0, 1.0)
    assert not rep.overall
    d = rep.as_dict()
    assert d["cases"][0]["max_abs_err"] == 2e-9 and d["cases"][1]["pass"] is False


def test_unknown_suite():
    with pytest.raises(KeyError):
        verify.run_suite("nope")
