import json
import subprocess
import sys

import pytest

from jetfiber.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "--surface", "d41", "-m", "5", "--mod", "2,2,1")
    assert code == 0
    assert out.splitlines() == ["0", "0", "0", "0", "y2*z1^2 + x2^2", "x2*y2*z1 + y2^2*z1 + y3*z1^2"]


def test_lemma_g_json(capsys):
    code, out, _ = run(capsys, "lemma-g", "--pmax", "3", "--lmax", "8")
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and len(doc["rows"]) == 27 * 9
    assert out.count("\n") == 1


def test_ideal(capsys):
    code, out, _ = run(capsys, "ideal", "-m", "5", "--build", "J1", "--saturate", "z1", "--dim", "--gb", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["dimension"] == 11 and "y1" in doc["gb"]
    assert list(doc) == sorted(doc)


def test_ideal_coordinate_space(capsys):
    code, out, _ = run(capsys, "ideal", "-m", "5", "--build", "L:3,2,2", "--dim")
    assert code == 0 and out.strip().endswith("dimension: 11")


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "--surface", "d40", "-m", "5", "--json")
    doc = json.loads(out)
    assert code == 0
    comps = {c["label"]: c for c in doc["components"]}
    assert all(c["dimension"] == 11 for c in comps.values())
    assert comps["Z1"]["symmetry_images"] == {"psi1": "Z2", "psi2": "Z1"}
    assert comps["Z1"]["witnesses"] == "(0,0,t)"


def test_graph_dot(capsys, tmp_path):
    dot = tmp_path / "g.dot"
    code, out, _ = run(capsys, "graph", "--surface", "d41", "-m", "5", "--dot", str(dot), "--json")
    assert code == 0
    assert dot.read_text().strip() == "graph Gamma { Z0 -- Z1; Z0 -- Z2; Z0 -- Z3; }"
    assert json.loads(out)["dynkin_d4"]


def test_count(capsys):
    code, out, _ = run(capsys, "count", "-m", "1", "--build", "L:1,1,1")
    assert code == 0 and out.strip() == "8"
    code, out, _ = run(capsys, "count", "-m", "3", "-k", "2", "--cover", "--json")
    assert code == 0 and json.loads(out)["equal"]


def test_suite(capsys):
    code, out, _ = run(capsys, "suite", "--surface", "d40", "-m", "5", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and doc["summary"]["fail"] == 0


def test_suite_precondition(capsys):
    code, _, err = run(capsys, "suite", "--surface", "d40", "-m", "4")
    assert code == 3 and "m >= 5" in err


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "ideal", "--surface", "d41", "-m", "7", "--build", "J1", "--saturate", "z1",
                       "--budget", "10")
    assert code == 2 and "budget" in err
    code, _, _ = run(capsys, "count", "-m", "5", "-k", "2")
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["expand", "--surface", "e8"],
    ["expand", "--mod", "1,2"],
    ["ideal", "--build", "J9"],
    ["ideal", "--build", "J1", "--saturate", "q1"],
    ["expand", "-m", "-1"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == 3


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "jetfiber.cli", "expand", "-m", "2"], capture_output=True,
                          text=True, check=True)
    assert proc.stdout.splitlines()[0] == "y0^2*z0 + y0*z0^2 + x0^2"
