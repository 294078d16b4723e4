import random

import pytest
from conftest import circuits, diagrams
from hypothesis import given

from zxand import circuit as cc
from zxand import diagram as dg
from zxand.circuit import Circuit, CircuitError, Ket1, circuit_matrix, lower
from zxand.matsem import eval as mat_eval
from zxand.sampling import random_circuit, random_diagram
from zxand.translate import (roundtrip_check, spider_gates, tof_table, tofhat_to_zx, zx_table,
                             zx_to_tof, zx_to_tofhat)

from oracle import dense


def test_not_row():
    c = zx_to_tof(dg.z(1, 1, 1))
    assert [g for g in c.gates] == [cc.not_(0)]
    assert mat_eval(zx_to_tofhat(dg.z(1, 1, 1))) == dense([[0, 1], [1, 0]])


def test_copy_row():
    c = zx_to_tof(dg.x(1, 2))
    assert any(isinstance(g, cc.GenCNot) and len(g.controls) == 1 for g in c.gates)
    assert circuit_matrix(c) == dense([[1, 0], [0, 0], [0, 0], [0, 1]])
    assert mat_eval(zx_to_tofhat(dg.x(1, 2))) == mat_eval(dg.x(1, 2))


def test_and_uses_toffoli_with_ancilla_below():
    c = zx_to_tof(dg.and_())
    tofs = [g for g in c.gates if isinstance(g, cc.GenCNot) and len(g.controls) == 2]
    assert tofs == [cc.tof(2, 0, 1)]
    assert circuit_matrix(c) == mat_eval(dg.and_())


def test_ket1_image():
    assert tofhat_to_zx(Circuit(0, [Ket1(0)])) == dg.z(0, 1, 1)


def test_tof_image():
    assert mat_eval(tofhat_to_zx(Circuit(3, [cc.tof(2, 0, 1)]))) == mat_eval(dg.tof())


def test_tofhat_needs_lowered_circuit():
    with pytest.raises(CircuitError):
        tofhat_to_zx(Circuit(2, [cc.cnot(1, 0)]))


ARITIES = [(0, 0), (0, 1), (1, 0), (1, 1), (2, 1), (1, 3), (3, 2), (0, 3)]
SPIDERS = [("z", k, r, p) for k, r in ARITIES for p in (0, 1)] + [("x", k, r, 0) for k, r in ARITIES]


@pytest.mark.parametrize("kind,k,r,phase", SPIDERS)
def test_spider_trees(kind, k, r, phase):
    c = Circuit(k, spider_gates(kind, k, r, phase, 0))
    want = mat_eval(dg.z(k, r, phase) if kind == "z" else dg.x(k, r))
    assert circuit_matrix(c) == want


@pytest.mark.parametrize("name", list(zx_table()))
def test_zx_table_preserved(name):
    d = zx_table()[name]
    assert circuit_matrix(zx_to_tof(d)) == mat_eval(d)
    assert mat_eval(zx_to_tofhat(d)) == mat_eval(d)


@pytest.mark.parametrize("name", list(tof_table()))
def test_tof_table_preserved(name):
    c = tof_table()[name]
    assert mat_eval(tofhat_to_zx(c)) == circuit_matrix(c)


def test_hundred_random_diagrams_preserved():
    rng = random.Random(17)
    for _ in range(100):
        d = random_diagram(rng, max_wires=4, max_vertices=12)
        assert mat_eval(zx_to_tofhat(d)) == mat_eval(d)


def test_hundred_random_circuits_preserved():
    rng = random.Random(18)
    for _ in range(100):
        c = lower(random_circuit(rng, max_width=4, max_gates=12))
        assert mat_eval(tofhat_to_zx(c)) == circuit_matrix(c)


@given(diagrams(max_vertices=8), diagrams(max_vertices=8))
def test_functorial_zx_side(f, g):
    if f.n_out == g.n_in:
        assert circuit_matrix(zx_to_tof(dg.compose(f, g))) == \
            circuit_matrix(zx_to_tof(g)) @ circuit_matrix(zx_to_tof(f))
    assert circuit_matrix(zx_to_tof(dg.tensor(f, g))) == \
        circuit_matrix(zx_to_tof(f)).kron(circuit_matrix(zx_to_tof(g)))


@given(circuits(max_width=3, max_gates=6), circuits(max_width=3, max_gates=6))
def test_functorial_tof_side(a, b):
    a, b = lower(a), lower(b)
    if a.n_out == b.n_in:
        assert mat_eval(tofhat_to_zx(a.then(b))) == \
            mat_eval(dg.compose(tofhat_to_zx(a), tofhat_to_zx(b)))


@given(diagrams(max_vertices=8))
def test_dagger_commutes(d):
    assert circuit_matrix(zx_to_tof(dg.dagger(d))) == circuit_matrix(zx_to_tof(d)).transpose()


@pytest.mark.parametrize("name", list(zx_table()))
def test_roundtrip_zx_generators(name):
    rep = roundtrip_check("zx", zx_table()[name])
    assert rep.semantic, str(rep)


@pytest.mark.parametrize("name", list(tof_table()))
def test_roundtrip_tof_generators(name):
    rep = roundtrip_check("tof", tof_table()[name])
    assert rep.semantic, str(rep)


def test_roundtrip_and_and_copy():
    assert roundtrip_check("zx", dg.and_()).semantic
    assert roundtrip_check("zx", dg.x(1, 2)).semantic


def test_roundtrip_fifty_random():
    rng = random.Random(19)
    for _ in range(50):
        d = random_diagram(rng, max_wires=3, max_vertices=8)
        assert roundtrip_check("zx", d).semantic


def test_roundtrip_bad_side():
    with pytest.raises(ValueError):
        roundtrip_check("zh", dg.identity(1))


def test_roundtrip_report_text():
    text = str(roundtrip_check("zx", dg.identity(1)))
    assert text.startswith("zx: semantic PASS")
