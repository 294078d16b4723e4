import random

import pytest
from conftest import circuits
from hypothesis import given

from zxand import circuit as cc
from zxand.circuit import (Bra1, Circuit, CircuitError, GenCNot, Ket1, SwapAdj, XCounit, XUnit,
                           circuit_matrix, circuit_to_diagram, expand_derived, format_circuit,
                           gate_semantics, iwama_commute, iwama_instances, iwama_pair, lower,
                           parse_circuit)
from zxand.matsem import NatMatrix, classify
from zxand.matsem import eval as mat_eval
from zxand.sampling import random_circuit

from oracle import dense, matmul, permutation_matrix


def gcx(t, *cs):
    return GenCNot(t, frozenset(cs))


def gate_matrix(g, w):
    """Independent dense matrix of a controlled-not on w wires."""
    def fn(v):
        bits = [(v >> (w - 1 - i)) & 1 for i in range(w)]
        if all(bits[c] for c in g.controls):
            return v ^ (1 << (w - 1 - g.target))
        return v
    return permutation_matrix(w, fn)


def product(gates, w):
    m = NatMatrix.identity(w)
    for g in gates:
        m = matmul(gate_matrix(g, w), m)
    return m


def test_toffoli_semantics():
    def fn(v):
        return v ^ 1 if v >> 1 == 3 else v
    assert gate_semantics(gcx(2, 0, 1), 3) == permutation_matrix(3, fn)


def test_not_semantics():
    assert gate_semantics(gcx(0), 1) == dense([[0, 1], [1, 0]])


def test_bra_then_ket():
    assert circuit_matrix(Circuit(1, [Bra1(0), Ket1(0)])) == dense([[0, 0], [0, 1]])


def test_units():
    assert circuit_matrix(Circuit(0, [XUnit(0)])) == dense([[1], [1]])
    assert circuit_matrix(Circuit(1, [XCounit(0)])) == dense([[1, 1]])
    assert circuit_matrix(Circuit(2, [SwapAdj(0)])) == dense(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])


def test_width_profile():
    c = Circuit(1, [Ket1(0), XUnit(2), cc.tof(0, 1, 2), Bra1(1), XCounit(0)])
    assert c.widths == [1, 2, 3, 3, 2, 1]
    with pytest.raises(CircuitError):
        Circuit(1, [cc.cnot(1, 0)])
    with pytest.raises(CircuitError):
        GenCNot(1, frozenset({1}))


def test_iwama_literal_example_is_rejected():
    # [1,{2}] then [2,{3}]: the second target is a control of the first gate
    with pytest.raises(CircuitError):
        iwama_commute(gcx(1, 2), gcx(2, 3))


def test_iwama_formula_shape():
    out = iwama_commute(gcx(1, 0), gcx(2, 3))
    assert out == [gcx(2, 0, 3), gcx(2, 3, 1), gcx(1, 0)]


def test_iwama_disjoint_commute():
    a, b = gcx(0, 1), gcx(2, 3)
    assert product([a, b], 4) == product([b, a], 4)


def test_iwama_all_instances_width4():
    count = 0
    for a, b in iwama_instances(4):
        assert product(iwama_commute(a, b), 4) == product(iwama_pair(a, b), 4)
        count += 1
    # x, y ordered distinct; X and Y any subsets of the other two wires
    assert count == 4 * 3 * 4 * 4


def test_iwama_random_pairs():
    rng = random.Random(9)
    for _ in range(100):
        x, y = rng.sample(range(4), 2)
        rest = [w for w in range(4) if w not in (x, y)]
        xs = [w for w in rest if rng.random() < 0.5]
        ys = [w for w in rest if rng.random() < 0.5]
        a, b = gcx(x, *xs), gcx(y, *ys)
        assert circuit_matrix(Circuit(4, iwama_commute(a, b))) == \
            circuit_matrix(Circuit(4, iwama_pair(a, b)))


def test_expand_ket0():
    c = expand_derived("ket0")
    assert c.gates[0] == Ket1(0)
    assert circuit_matrix(c) == dense([[1], [0]])


def test_expand_cnot():
    d = circuit_to_diagram(expand_derived("cnot"))
    assert mat_eval(d) == dense([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


def test_expand_fanout():
    m = mat_eval(circuit_to_diagram(expand_derived("fanout")))
    assert m == dense([[1, 0], [0, 0], [0, 0], [0, 1]])


@pytest.mark.parametrize("name", cc.DERIVED_NAMES)
def test_derived_gates_are_lowered(name):
    c = expand_derived(name)
    assert cc.is_lowered(c)
    assert mat_eval(circuit_to_diagram(c)) == circuit_matrix(c)


def test_unknown_derived():
    with pytest.raises(CircuitError):
        expand_derived("fredkin")


@pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
def test_lower_many_controls(k):
    w = k + 1
    g = GenCNot(k, frozenset(range(k)))
    c = Circuit(w, [g])
    low = lower(c)
    assert cc.is_lowered(low)
    assert circuit_matrix(low) == gate_matrix(g, w)
    assert circuit_matrix(lower(c, top=True)) == gate_matrix(g, w)


@given(circuits(max_width=4, max_gates=12, units=False))
def test_no_units_means_partial_injection(c):
    assert classify(circuit_matrix(c)).partial_injection


@given(circuits(max_width=4, max_gates=12, units=False, ancillae=False))
def test_no_ancillae_means_bijection(c):
    assert classify(circuit_matrix(c)).bijection


def test_hundred_random_circuits_classify():
    rng = random.Random(10)
    for _ in range(100):
        c = random_circuit(rng, max_width=4, max_gates=12, units=False)
        assert classify(circuit_matrix(c)).partial_injection
        c = random_circuit(rng, max_width=4, max_gates=12, units=False, ancillae=False)
        assert classify(circuit_matrix(c)).bijection


@given(circuits(max_width=4, max_gates=12))
def test_circuit_to_diagram_preserves_semantics(c):
    assert mat_eval(circuit_to_diagram(c)) == circuit_matrix(c)


@given(circuits(max_width=4, max_gates=8, ancillae=False, units=False))
def test_simulation_matches_dense_product(c):
    if all(isinstance(g, GenCNot) for g in c.gates):
        assert circuit_matrix(c) == product(c.gates, c.n_in)


def test_text_format():
    text = """# a small circuit
    wires 3
    tof 2 0 1
    cnot 0 1   # trailing comment
    not 2
    gcx 1 {0,2}
    gcx 0 {}
    ket1 3
    plus 0
    coplus 0
    bra1 3
    swap 1
    """
    c = parse_circuit(text)
    assert c.n_in == 3 and len(c.gates) == 10
    assert parse_circuit(format_circuit(c)) == c


def test_text_format_infers_width():
    assert parse_circuit("tof 2 0 1").n_in == 3
    assert parse_circuit("ket1 0\nbra1 0").n_in == 0


@pytest.mark.parametrize("bad", ["tof 1 1 2", "cnot 0", "gcx 0 1,2", "frob 1", "not -1",
                                 "wires 1\ncnot 0 1", "gcx 0 {1,1}"])
def test_text_format_errors(bad):
    with pytest.raises(CircuitError):
        parse_circuit(bad)
