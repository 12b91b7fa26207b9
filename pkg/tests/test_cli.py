import json
import re
import subprocess
import sys

import pytest

from semidiv.cli import main
from semidiv.errors import InputError
from semidiv.problem import parse_problem
from semidiv.report import parse_machine, render_report, run_command, to_machine

# a decimal point or exponent in a number; dotted version strings like 0.1.0 are skipped
FLOAT = re.compile(r"(?<![\w/.])-?\d+\.\d+(?![\d.])|\d[eE][+-]?\d")


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def machine(argv, capsys):
    code, out, err = run(argv + ["--format", "machine"], capsys)
    assert code == 0, err
    return json.loads(out)


def test_parse_generators():
    p = parse_problem('{"rank": 2, "generators": [[1, 0], [0, 1]]}')
    assert p.presentation == "generators" and len(p.data) == 2
    S = p.semigroup()
    assert S.rank == 2 and len(S.hilbert_basis) == 2


def test_parse_equations_segre():
    p = parse_problem('{"rank": 5, "presentation": "equations", "equations": [[1, 1, -1, -1, -1]]}')
    S = p.semigroup()
    assert (S.rank, S.s, len(S.hilbert_basis)) == (4, 5, 6)


def test_parse_congruence_quadratic():
    p = parse_problem('{"rank": 2, "equations": [],'
                      ' "congruences": [{"form": [1, 1], "modulus": 2}]}')
    S = p.semigroup()
    assert S.rank == 2 and S.s == 2 and len(S.hilbert_basis) == 3
    assert S.basis_changed
    assert run_command(p, "class-group")["result"]["group"] == "Z/2"


@pytest.mark.parametrize("text,needle", [
    ('{"rank": 2, "generators": [[1, 0.5], [0, 1]]}', "non-integer"),
    ('{"rank": 2, "generators": [[1, 0], [0, 1]],}', "line 1"),
    ('{"rank": 2,\n "generators": [[1, 0], [0, 1]\n', "line 3"),
    ('{"rank": 2, "generators": [[1, 0], [0]]}', "generators[1]"),
    ('{"rank": 2, "generators": [[1, 0], [0, "x"]]}', "generators[1][1]"),
    ('{"rank": 2}', "exactly one of"),
    ('{"rank": 2, "generators": [[1, 0]], "inequalities": [[1, 0]]}', "exactly one of"),
    ('{"rank": 2, "equations": [[1, 1]], "congruences": [{"form": [1, 1], "modulus": 1}]}',
     "modulus"),
    ('{"rank": 2, "generators": [[1, 0]], "colour": 3}', "unknown field"),
    ('[1, 2]', "object"),
    ('{"rank": 2, "generators": []}', "non-empty"),
])
def test_parse_diagnostics(text, needle):
    with pytest.raises(InputError, match=re.escape(needle)):
        parse_problem(text)


def test_commands(problem_path, capsys):
    seg = problem_path("segre23.json")
    assert machine(["class-group", seg], capsys)["result"]["group"] == "Z"
    assert machine(["mu", seg, "--class", "-2"], capsys)["result"]["mu"] == 6
    res = machine(["cm", seg, "--class", "3"], capsys)["result"]
    assert res["cohen_macaulay"] is False and res["length_module"] == 4
    res = machine(["progression", seg, "--class", "-1", "--jmax", "12"], capsys)["result"]
    assert res["degree"] == 2 and res["inf_depth_estimate"] == 2
    res = machine(["depth-bounds", seg], capsys)["result"]
    assert (res["grade_mP"], res["lambda"]) == (2, 2)
    res = machine(["enumerate", seg, "--bound", "4", "--box", "10"], capsys)["result"]
    assert [c["class"] for c in res["classes"]] == [[-1], [0], [1], [2], [3]]
    res = machine(["face-ideal", seg, "--face", "0"], capsys)["result"]
    assert res["q"]["bounds"] == [1, 0, 0, 0, 0]


def test_quadratic_commands(problem_path, capsys):
    q = problem_path("quadratic.json")
    res = machine(["frobenius", q, "--k", "2"], capsys)["result"]
    assert {tuple(s["class"]): s["multiplicity"] for s in res["summands"]} == {(0,): 2, (1,): 2}
    res = machine(["hilbert-basis", q], capsys)["result"]
    assert res["hilbert_basis"] == [[1, 0], [1, 1], [1, 2]]
    res = machine(["mingen", q, "--class", "1"], capsys)["result"]
    assert res["mu"] == 2
    res = machine(["simplicial", q], capsys)["result"]
    assert res["simplicial"] is True and res["all_classes_cm"] is True
    for cmd in ("info", "pure-check", "divisorial-check"):
        machine([cmd, q], capsys)


def test_xi_commands(tmp_path, capsys):
    doc = {"rank": 2, "inequalities": [[0, 1], [2, -1]], "xi": [[0, 1], [2, -1], [2, 0]],
           "bounds": [0, 0, 1], "bounds2": [0, 0, 2], "zeta": [[0, 1], [2, -1], [2, 0]]}
    path = tmp_path / "xi.json"
    path.write_text(json.dumps(doc))
    res = machine(["eff", str(path)], capsys)["result"]
    assert res["eff"] == [0, 0, 2] and res["mu"] == 3
    assert machine(["iso", str(path)], capsys)["result"]["isomorphic"] is True
    assert machine(["pure-check", str(path)], capsys)["result"]["pure"] is True
    assert machine(["divisorial-check", str(path)], capsys)["result"]["divisorial"] is False
    res = machine(["intersect", str(path)], capsys)["result"]
    assert res["mu"] >= 1


def test_conic_report_has_rational_witnesses(problem_path, capsys):
    code, out, _ = run(["conic", problem_path("quadratic.json")], capsys)
    assert code == 0 and "witness" in out
    rep = machine(["conic", problem_path("quadratic.json")], capsys)
    for c in rep["result"]["classes"]:
        assert all(isinstance(x, (int, str)) for x in c["witness"])


def test_progression_table_has_two_columns(problem_path, capsys):
    code, out, _ = run(["progression", problem_path("segre23.json"), "--class", "1",
                        "--jmax", "8"], capsys)
    assert code == 0
    lines = out.splitlines()
    i = lines.index("mu_table:")
    assert lines[i + 1].split() == ["j", "mu"]
    assert lines[i + 2].split() == ["0", "1"]
    assert all(line == line.rstrip() for line in lines)


def test_determinism_and_no_floats(problem_path, capsys):
    for argv in (["conic", problem_path("quadratic.json")],
                 ["progression", problem_path("segre23.json"), "--class", "-1", "--jmax", "10"],
                 ["frobenius", problem_path("quadratic.json"), "--k", "3"]):
        for fmt in ("machine", "table"):
            outs = {run(argv + ["--format", fmt], capsys)[1] for _ in range(2)}
            assert len(outs) == 1
            assert not FLOAT.search(outs.pop())


def test_machine_round_trip(problem_path):
    from semidiv.problem import load_problem
    rep = run_command(load_problem(problem_path("segre23.json")), "progression",
                      {"cls": [-1], "jmax": 10})
    text = to_machine(rep)
    parsed = parse_machine(text)
    assert to_machine(parsed) == text
    assert parsed["result"]["limits"] == [1]
    assert parsed["provenance"]["seed"] is None
    assert render_report(rep, "machine") == text


def test_floats_rejected_in_reports():
    with pytest.raises(TypeError):
        to_machine({"x": 0.5})


def test_exit_codes(problem_path, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"rank": 2, "generators": [[1.5, 0], [0, 1]]}')
    code, _, err = run(["info", str(bad)], capsys)
    assert code == 2 and "non-integer" in err
    code, _, err = run(["info", str(tmp_path / "missing.json")], capsys)
    assert code == 2
    code, _, err = run(["progression", problem_path("quadratic.json"), "--class", "1"], capsys)
    assert code == 3 and "non-torsion" in err
    code, _, err = run(["progression", problem_path("segre23.json"), "--class", "1",
                        "--cap-faces", "2"], capsys)
    assert code == 4
    nonpos = tmp_path / "line.json"
    nonpos.write_text('{"rank": 2, "generators": [[1, 0], [-1, 0], [0, 1]]}')
    code, _, err = run(["info", str(nonpos)], capsys)
    assert code == 3 and "positive" in err
    code, _, err = run(["mu", problem_path("segre23.json")], capsys)
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["bogus", problem_path("segre23.json")])
    assert exc.value.code == 2


def test_console_script(problem_path):
    out = subprocess.run([sys.executable, "-m", "semidiv.cli", "class-group",
                          problem_path("segre23.json"), "--format", "machine"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["result"]["group"] == "Z"
    assert out.stderr == ""
