import json

import pytest

from zxand import circuit as cc
from zxand import diagram as dg
from zxand.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_RESOURCE, main
from zxand.matsem import NatMatrix
from zxand.matsem import eval as mat_eval
from zxand.rules import rule_by_name
from zxand.syntax import load, to_json, to_text


@pytest.fixture
def write(tmp_path):
    def go(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return go


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval(write, capsys):
    f = write("and.zx", to_text(dg.and_()))
    code, out, _ = run(capsys, "eval", f)
    assert code == EXIT_OK
    assert NatMatrix.from_text(out) == mat_eval(dg.and_())
    assert out.endswith("\n")


def test_eval_circuit(write, capsys):
    f = write("not.circ", "not 0\n")
    code, out, _ = run(capsys, "eval", f)
    assert code == EXIT_OK
    assert NatMatrix.from_text(out) == NatMatrix.from_rows([[0, 1], [1, 0]])


def test_eval_json_diagram_file(write, capsys):
    f = write("cup.json", to_json(dg.cup()))
    code, out, _ = run(capsys, "eval", f)
    assert code == EXIT_OK and NatMatrix.from_text(out) == mat_eval(dg.cup())


def test_eq_rule_sides(write, capsys):
    lhs, rhs = rule_by_name("ZXA.5").instance()
    a, b = write("a.zx", to_text(lhs)), write("b.zx", to_text(rhs))
    assert run(capsys, "eq", a, b)[0] == EXIT_OK
    code, out, _ = run(capsys, "eq", "--json", a, b)
    assert code == EXIT_OK and json.loads(out) == {"equal": True}


def test_eq_differs(write, capsys):
    a = write("a.zx", to_text(dg.identity(1)))
    b = write("b.zx", to_text(dg.z(1, 1, 1)))
    code, out, _ = run(capsys, "eq", a, b)
    assert code == EXIT_FAIL and out == "not equal\n"


def test_eq_diagram_against_circuit(write, capsys):
    a = write("x.zx", to_text(dg.z(1, 1, 1)))
    b = write("x.circ", "not 0\n")
    assert run(capsys, "eq", a, b)[0] == EXIT_OK


def test_check_axioms_zxa(capsys):
    code, out, _ = run(capsys, "check-axioms", "--set", "zxa")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[-1] == "17/17 rules pass"
    assert sum(" PASS " in line for line in lines) == 17


def test_check_axioms_json_and_dagger(capsys):
    code, out, _ = run(capsys, "check-axioms", "--set", "cnot", "--dagger", "--json")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["passed"] and rep["rules"] == 22
    assert all(i["status"] == "PASS" for i in rep["instances"])


def test_check_axioms_verbose(capsys):
    code, out, _ = run(capsys, "check-axioms", "--set", "tof", "-v", "--max-arity", "2")
    assert code == EXIT_OK and out.splitlines()[-1] == "18/18 rules pass"


def test_simplify_with_trace(write, capsys):
    f = write("chain.zx", to_text(dg.seq(dg.z(1, 1, 1), dg.z(1, 1, 1), dg.z(1, 1))))
    code, out, _ = run(capsys, "simplify", "--trace", f)
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].startswith("# ")
    body = "\n".join(line for line in lines if not line.startswith("#"))
    assert mat_eval(load(body)) == NatMatrix.identity(1)


def test_translate_both_ways(write, capsys):
    f = write("and.zx", to_text(dg.and_()))
    code, out, _ = run(capsys, "translate", "--to", "tof", f)
    assert code == EXIT_OK
    c = cc.parse_circuit(out)
    assert cc.circuit_matrix(c) == mat_eval(dg.and_())
    g = write("back.circ", out)
    code, out, _ = run(capsys, "translate", "--to", "zx", g)
    assert code == EXIT_OK and mat_eval(load(out)) == mat_eval(dg.and_())


def test_translate_wrong_direction(write, capsys):
    f = write("and.zx", to_text(dg.and_()))
    code, _, err = run(capsys, "translate", "--to", "zx", f)
    assert code == EXIT_INPUT and err.startswith("error:")


def test_synth(write, capsys):
    m = NatMatrix.from_rows([[1, 2], [0, 3]])
    f = write("m.mat", m.to_text())
    code, out, _ = run(capsys, "synth", f)
    assert code == EXIT_OK and mat_eval(load(out)) == m


def test_synth_bad_matrix(write, capsys):
    f = write("m.mat", "1 2 3\n")
    assert run(capsys, "synth", f)[0] == EXIT_INPUT


def test_classify(write, capsys):
    f = write("tof.circ", "tof 2 0 1\n")
    code, out, _ = run(capsys, "classify", f)
    assert code == EXIT_OK and out == "Bijection\n"
    code, out, _ = run(capsys, "classify", "--json", f)
    rep = json.loads(out)
    assert rep["class"] == "Bijection" and rep["bijection"] and rep["partial_injection"]


def test_classify_copy_is_injection(write, capsys):
    f = write("copy.zx", to_text(dg.x(1, 2)))
    code, out, _ = run(capsys, "classify", "--json", f)
    rep = json.loads(out)
    assert rep["injection"] and not rep["bijection"]


def test_cross_check(write, capsys):
    f = write("d.zx", to_text(dg.seq(dg.x(1, 2), dg.and_())))
    code, out, _ = run(capsys, "cross-check", f)
    assert code == EXIT_OK and "agree" in out
    code, out, _ = run(capsys, "cross-check", "--json", f)
    assert json.loads(out) == {"agree": True}


def test_dot(write, capsys):
    f = write("and.zx", to_text(dg.and_()))
    code, out, _ = run(capsys, "dot", f)
    assert code == EXIT_OK
    assert out.startswith("graph zxand {") and out.rstrip().endswith("}")


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "eval", str(tmp_path / "nope.zx"))
    assert code == EXIT_INPUT and "cannot read" in err


def test_parse_error(write, capsys):
    f = write("bad.zx", "(frob 1 2)")
    assert run(capsys, "eval", f)[0] == EXIT_INPUT


def test_bad_usage(capsys):
    assert run(capsys, "frobnicate")[0] == EXIT_INPUT
    assert run(capsys)[0] == EXIT_INPUT


def test_resource_cap(write, capsys, monkeypatch):
    monkeypatch.setenv("ZXAND_MAX_WIRES", "2")
    f = write("and.zx", to_text(dg.and_()))
    code, _, err = run(capsys, "eval", f)
    assert code == EXIT_RESOURCE and "cap" in err


def test_parallel_flag_same_output(write, capsys):
    f = write("d.zx", to_text(dg.seq(dg.x(1, 2), dg.and_())))
    a = run(capsys, "eval", f)
    b = run(capsys, "--parallel", "eval", f)
    assert a == b


def test_output_deterministic(write, capsys):
    f = write("d.zx", to_text(dg.seq(dg.z(1, 2, 1), dg.x(2, 1), dg.z(1, 1))))
    for cmd in (["simplify", "--trace"], ["dot"], ["classify", "--json"]):
        assert run(capsys, *cmd, f) == run(capsys, *cmd, f)
