"""The acceptance battery: each criterion is one test and one printed line.

Run directly (``python tests/test_acceptance.py``) or through pytest; in both
cases a pass/fail line per criterion is printed.
"""

import pytest

from padiclab.acceptance import CRITERIA, run_acceptance

LINES: list[str] = []


@pytest.fixture(scope="module")
def battery():
    run = run_acceptance(seed=0)
    LINES.clear()
    LINES.extend(summary_lines(run))
    return run


def summary_lines(run):
    by_number = {int(c.name.split("_")[0][1:]): c for c in run.checks}
    out = []
    for number, title in CRITERIA.items():
        check = by_number[number]
        out.append(f"criterion {number:2d} [{check.status.upper()}] {title}")
    out.append(f"sign ledger: {run.sign_ledger}")
    return out


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(battery, number):
    check = next(c for c in battery.checks if c.name.startswith(f"C{number}_"))
    assert check.passed, check.to_dict()


def test_every_criterion_reported_once(battery):
    names = [c.name.split("_")[0] for c in battery.checks]
    assert sorted(names) == sorted(f"C{n}" for n in CRITERIA)


def test_sign_ledger(battery):
    assert battery.sign_ledger == {"epsilon": -1, "sigma": -1, "mu_congruence": 1}


if __name__ == "__main__":
    import sys

    run = run_acceptance(seed=0)
    print("\n".join(summary_lines(run)))
    sys.exit(0 if run.passed else 1)
