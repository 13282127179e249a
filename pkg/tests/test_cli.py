import io
import json
import subprocess
import sys

import pytest

from odograph.acceptance import _perturbed_swap_tables
from odograph.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_simplicity_report():
    code, out, _ = call("simplicity", "--n", "2,4", "--json")
    assert code == 0
    doc = json.loads(out)
    assert {k: doc[k] for k in ("simple", "p", "q")} == {"simple": False, "p": [2, 0], "q": [0, 1]}


def test_normal_form_text():
    assert call("normal-form", "--n", "2,3", "x2:1 x1:0") == (0, "x1:1 x2:0\n", "")


def test_verify_relations_exit_zero():
    code, out, _ = call("verify-relations", "--n", "2,3", "--json")
    assert code == 0 and json.loads(out)["passed"]


def test_usage_errors_exit_two():
    assert call("normal-form", "--n", "2,3", "x3:0")[0] == 2
    assert call("normal-form", "x1:0")[0] == 2
    assert call("contracting", "--n", "2,3", "1/4")[0] == 2
    assert call("kernel-witness", "--n", "2,3", "--p", "1,0", "--q", "0,1")[0] == 2
    assert call("no-such-command")[0] == 2


def test_verification_failure_exits_one(tmp_path):
    f = tmp_path / "theta.json"
    f.write_text(json.dumps(_perturbed_swap_tables().to_json()))
    code, out, err = call("cubic-check", "--theta-file", str(f), "--json")
    assert code == 1
    doc = json.loads(out)
    assert not doc["passed"] and doc["triple"]
    # other commands warn that the tables are unchecked
    code, out, err = call("normal-form", "--theta-file", str(f), "x3:1 x1:0")
    assert code == 0 and "cubic-check" in err


def test_check_axioms_reversed_fails():
    code, out, _ = call("check-axioms", "--n", "2,2", "--g-range", "3", "--max-len", "2", "--reversed", "--json")
    # the reversed odometer on every colour is a valid action, so the standard rule is what matters
    assert code in (0, 1)
    assert "axioms" in json.loads(out)


def test_big_integers_are_strings():
    code, out, _ = call("encode", "--n", "2,3", " ".join(["x2:2"] * 40), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["code"] == str(3**40 - 1)
    code, out, _ = call("solve-restriction", "--n", "3", " ".join(["x1:2"] * 40), "5", "--json")
    assert json.loads(out)["solution"] == str(5 * 3**40 - (3**40 - 1))


def test_deterministic_output():
    a = call("ideal-intersect", "--n", "2,4", "--x", "x1:0", "--y", "x2:0", "--json")
    b = call("ideal-intersect", "--n", "2,4", "--x", "x1:0", "--y", "x2:0", "--json")
    assert a == b
    assert json.loads(a[1])["codes"] == ["0", "4"]


@pytest.mark.parametrize("argv,key,value", [
    (["act", "--n", "2", "5", "x1:1 x1:0", "--json"], "image", "x1:0 x1:1"),
    (["zs-mul", "--n", "2", "x1:1", "1", "x1:1", "0", "--json"], "word", "x1:1 x1:0"),
    (["min-ext", "--n", "2,4", "x1:0", "x2:0", "--json"], "count", 2),
    (["ideal-chain", "--n", "2,4", "--pair", "x1:0", "x2:0", "--max-degree", "2,2", "--json"], "codes", ["0", "2"]),
    (["exhaustive", "--n", "2,4", "x1:0", "x2:1", "x2:3", "--json"], "exhaustive", True),
    (["roots", "--n", "2", "1/3", "1", "--json"], "roots", ["1/6", "2/3"]),
    (["orbit", "--n", "2,3", "0", "1/3", "1/12", "--json"], "p", [0, 1]),
    (["contracting", "--n", "2,3", "1/32", "--json"], "passed", True),
    (["kernel-witness", "--n", "2,4", "--json"], "map", "m -> 4*m"),
    (["op-eval", "--n", "2", "g(1,0) g(1,0)*", "--m", "4", "--json"], "direct_agrees", True),
    (["verify-qn", "--n", "2,3", "--json"], "passed", True),
    (["verify-psystem", "--n", "2,3", "--exp-range=-2,2", "--json"], "passed", True),
    (["lcm", "--n", "2,4", "--json"], "right_lcm", False),
    (["path", "--n", "2,3", "1/5", "1,1", "--front", "1,0", "--json"], "factorization",
     [["1/5", [1, 0]], ["2/5", [0, 1]]]),
])
def test_subcommands(argv, key, value):
    code, out, _ = call(*argv)
    assert code == 0
    assert json.loads(out)[key] == value


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "odograph", "normal-form", "--n", "2,3", "x2:1 x1:0"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "x1:1 x2:0"
