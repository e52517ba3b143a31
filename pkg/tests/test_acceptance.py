"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import pytest

from courant_kit import acceptance

from conftest import ACCEPTANCE_LINES


@pytest.mark.parametrize("number", [c[0] for c in acceptance.CRITERIA],
                         ids=["c%02d" % c[0] for c in acceptance.CRITERIA])
def test_criterion(number):
    result = acceptance.run_criterion(number, seed=7)
    line = result.line()
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert result.passed, line
    assert result.within_budget, line


def test_selftest_cli_exit_code():
    from courant_kit.cli import main
    import io
    out = io.StringIO()
    assert main(["selftest", "--seed", "7", "--format", "json"], out, io.StringIO()) == 0
    assert '"ok": true' in out.getvalue()
