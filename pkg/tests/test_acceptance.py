"""Acceptance criteria, one pass/fail line each.

Run directly (``python3 tests/test_acceptance.py``) or through pytest; in
both cases every criterion prints a single ``[PASS]``/``[FAIL]`` line with
its measured value and tolerance.
"""

import pytest

from iontrap_revivals.checks import CHECKS, run_checks


@pytest.fixture(scope="module")
def results(request):
    out = {r.id: r for r in run_checks()}
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    lines = ["", "acceptance criteria:"] + [r.line() for r in out.values()]
    if reporter is not None:
        for line in lines:
            reporter.write_line(line)
    else:
        print("\n".join(lines))
    return out


@pytest.mark.parametrize("cid", list(CHECKS))
def test_criterion(results, cid):
    r = results[cid]
    assert r.passed, r.line()


if __name__ == "__main__":
    import sys

    res = run_checks()
    for r in res:
        print(r.line())
    sys.exit(0 if all(r.passed for r in res) else 1)
