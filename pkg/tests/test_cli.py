import json

import pytest

from padiclab import cache
from padiclab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gamma32_p3(capsys):
    code, out, _ = run(capsys, "--json", "gamma32", "--p", "3", "--m-max", "2")
    report = json.loads(out)
    assert code == 0 and report["sign_ledger"] == {"epsilon": -1}
    agreement = report["checks"][0]["detail"]["p3"]["agreement"]
    assert all(v == "inf" or v >= 2 for v in agreement.values())


def test_gamma32_p7(capsys):
    code, out, _ = run(capsys, "gamma32", "--p", "7", "--m-max", "1")
    assert code == 0 and "pass" in out


def test_gamma32_rejects_p5(capsys):
    code, _, err = run(capsys, "gamma32", "--p", "5")
    assert code == 2 and "not 3 mod 4" in err


def test_gamma32_budget_refusal(capsys):
    code, _, err = run(capsys, "gamma32", "--p", "19", "--m-max", "2")
    assert code == 2 and "BudgetExceeded" in err


def test_mu_32_at_3(capsys):
    code, out, _ = run(capsys, "--json", "mu", "--g2", "-16", "--g3", "0", "--p", "3")
    report = json.loads(out)
    solve = next(c for c in report["checks"] if c["name"] == "dieudonne")
    assert code == 0
    assert solve["detail"]["lambda"]["value"] == "0"
    assert solve["detail"]["mu"]["valuation"] == 0


def test_mu_from_curve_file_and_ordinary_prime(capsys, tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("g2 -16\ng3 0\n")
    assert run(capsys, "mu", "--curve", str(f), "--p", "7")[0] == 0
    code, _, err = run(capsys, "mu", "--curve", str(f), "--p", "5")
    assert code == 2 and "ordinary" in err


def test_parse_error_names_the_line(capsys, tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("g2 -16\nthree 0\n")
    code, _, err = run(capsys, "mu", "--curve", str(f), "--p", "3")
    assert code == 2 and f"{f}:2:" in err


def test_verify_identities(capsys):
    assert run(capsys, "verify", "wp-lift", "--terms", "50")[0] == 0
    code, out, _ = run(capsys, "--json", "verify", "twenty-zeta", "--terms", "50")
    assert code == 0 and json.loads(out)["sign_ledger"]["sigma"] == -1


def test_honda(capsys):
    assert run(capsys, "honda", "--terms", "80", "--p", "3", "7")[0] == 0


def test_reports_do_not_depend_on_the_cache(capsys, tmp_path):
    cache.clear()
    _, off, _ = run(capsys, "--json", "--no-cache", "verify", "wp-lift", "--terms", "60")
    _, on, _ = run(capsys, "--json", "--cache-dir", str(tmp_path), "verify", "wp-lift", "--terms", "60")
    cache.clear()
    _, reread, _ = run(capsys, "--json", "--cache-dir", str(tmp_path), "verify", "wp-lift", "--terms", "60")
    strip = lambda s: {k: v for k, v in json.loads(s).items() if k != "timing"}
    assert strip(off) == strip(on) == strip(reread)
    assert any(tmp_path.iterdir())
    cache.configure(None)


def test_property_suite(capsys):
    code, out, _ = run(capsys, "--seed", "3", "suite", "properties")
    assert code == 0


def test_parallel_battery_matches_serial():
    from padiclab.acceptance import run_acceptance

    tasks = ("c2", "c8", "c9")
    serial = run_acceptance(seed=1, jobs=1, tasks=tasks).to_dict(with_timing=False)
    parallel = run_acceptance(seed=1, jobs=2, tasks=tasks).to_dict(with_timing=False)
    assert serial == parallel
