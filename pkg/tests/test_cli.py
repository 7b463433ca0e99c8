import io
import json

import pytest

from rhocalc import cli
from rhocalc.calculus import LimitReport
from rhocalc.lcfield import SeriesVerdict


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_eval_delta_at_zero():
    assert run("eval", "--expr", "delta(x)", "--at", "x=0") == (0, "5.6418958354775628e-1*s^-1 + O(s^10)\n", "")


def test_eval_json_reads_back():
    code, out, _ = run("eval", "--expr", "delta(x)^2", "--at", "x=0", "--json")
    data = json.loads(out)
    assert code == 0 and data["terms"][0]["exp"] == [-2, 1]
    assert abs(data["terms"][0]["re"] - 0.3183098861837907) < 1e-15


def test_scalar_identity():
    assert run("scalar", "--expr", "sin(x)^2+cos(x)^2", "--domain", "box(-2,2)") == (0, "SCALAR C = 1 + O(s^10)\n", "")


def test_not_scalar_exits_two():
    code, out, _ = run("scalar", "--expr", "x", "--domain", "R")
    assert code == 2 and out.startswith("NOT SCALAR: gradient at x=0.0 is (1 + O(s^10))")


def test_differential_witness_table():
    code, out, _ = run("limit", "--expr", "x^2", "--at", "x=3", "--mode", "differential", "--nmax", "5")
    assert code == 0
    assert [line.split() for line in out.splitlines()[1:6]] == [[f"n={n}", f"m={n}"] for n in range(1, 6)]
    assert out.splitlines()[-1] == "verdict: HOLDS"


def test_limit_json():
    code, out, _ = run("limit", "--expr", "delta(x)", "--at", "x=0", "--nmax", "3", "--json")
    data = json.loads(out)
    assert code == 0 and [w["m"] for w in data["witnesses"]] == [2, 3, 3]


def test_diff_prints_tree_and_value():
    assert run("diff", "--expr", "heaviside(x)") == (0, "delta(x)\n", "")
    assert run("diff", "--expr", "x^3", "--at", "x=2") == (0, "3.0*x^2\n12 + O(s^10)\n", "")
    code, out, _ = run("diff", "--expr", "x*y^2", "--wrt", "y", "--domain", "R^2", "--at", "x=1, y=3")
    assert code == 0 and out.splitlines()[1] == "6 + O(s^10)"


def test_quotient():
    assert run("quotient", "--expr", "x^2", "--at", "x=3", "--h", "s") == (0, "6 + 1*s^1 + O(s^10)\n", "")
    assert run("quotient", "--expr", "x^2", "--at", "x=3", "--h", "0")[0] == 1


def test_suite_command():
    code, out, _ = run("suite", "--name", "distributions")
    assert code == 0 and out.splitlines()[-1] == "verdict: HOLDS"
    code, out, _ = run("suite", "--name", "distributions", "--json")
    assert json.loads(out)["verdict"] == "HOLDS"


@pytest.mark.parametrize("argv, fragment", [
    (("eval", "--expr", "log(x)", "--at", "x=-1"), "DomainError"),
    (("eval", "--expr", "exp(x)+s^1/2", "--at", "x=0"), "ambiguous power"),
    (("eval", "--expr", "exp(1/s)", "--at", "x=0"), "NotModerate"),
    (("eval", "--expr", "x", "--at", "x=5", "--domain", "box(0,1)"), "OutsideDomain"),
    (("eval", "--expr", "x", "--at", "x=0", "--mollifier", "box"), "unsupported mollifier"),
    (("scalar", "--expr", "x", "--domain", "union(box(0,1),box(2,3))"), "NotConnected"),
])
def test_errors_exit_one(argv, fragment):
    code, out, err = run(*argv)
    assert code == 1 and out == "" and fragment in err


@pytest.mark.parametrize("argv", [
    (),
    ("eval", "--expr", "x"),
    ("suite", "--name", "nope"),
    ("eval", "--expr", "x", "--at", "x=0", "--order", "0"),
    ("eval", "--expr", "x", "--at", "x=0", "--order", "ten"),
    ("eval", "--expr", "x", "--at", "x=0", "--tau", "-1"),
    ("limit", "--expr", "x", "--at", "x=0", "--nmax", "0"),
])
def test_usage_errors_exit_64(argv):
    assert run(*argv)[0] == 64


def test_undecided_verdict_exits_three(monkeypatch):
    def undecided(F, p, n_max, seed=42):
        return LimitReport("continuity", n_max, [(1, None)], SeriesVerdict.INDISTINGUISHABLE, 1, 1, seed)

    monkeypatch.setattr(cli, "continuity_check", undecided)
    assert run("limit", "--expr", "x", "--at", "x=0", "--nmax", "1")[0] == 3


def test_order_option_and_environment(monkeypatch):
    want = "1 + 1*s^1 + 5.0000000000000000e-1*s^2 + 1.6666666666666666e-1*s^3 + O(s^4)\n"
    assert run("eval", "--expr", "exp(x)", "--at", "x=s", "--order", "4")[1] == want
    monkeypatch.setenv("RHOCALC_ORDER", "4")
    assert run("eval", "--expr", "exp(x)", "--at", "x=s")[1] == want
    assert run("eval", "--expr", "exp(x)", "--at", "x=s", "--order", "2")[1] == "1 + 1*s^1 + O(s^2)\n"


def test_tau_controls_the_zero_threshold():
    assert run("eval", "--expr", "1e-13*x", "--at", "x=1")[1] == "O(s^10)\n"
    assert run("eval", "--expr", "1e-13*x", "--at", "x=1", "--tau", "1e-15")[1] == "1.0000000000000000e-13 + O(s^10)\n"


def test_output_is_deterministic():
    argv = ("limit", "--expr", "heaviside(x)", "--at", "x=0", "--mode", "differential", "--json")
    assert run(*argv) == run(*argv)


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "rhocalc", "eval", "--expr", "heaviside(x)", "--at", "x=0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "5.0000000000000000e-1 + O(s^10)\n"
