import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zxand import diagram as dg
from zxand.matsem import NatMatrix, decide_eq
from zxand.matsem import eval as mat_eval
from zxand.sampling import random_matrix
from zxand.synth import (AnfPolynomial, TruthTable, anf, anf_to_diagram, apex_elements,
                         matrix_to_diagram)

from oracle import dense


def mono(*vs):
    return frozenset(vs)


@pytest.mark.parametrize("values,want", [
    ((0, 0, 0, 1), {mono(0, 1)}),
    ((0, 1, 1, 0), {mono(0), mono(1)}),
    ((0, 1, 1, 1), {mono(0), mono(1), mono(0, 1)}),
    ((1, 1, 1, 1), {mono()}),
    ((0, 0, 0, 0), set()),
])
def test_anf_examples(values, want):
    assert anf(TruthTable(2, values)).monomials == want


def brute_anf(t):
    """Solve for the coefficients one monomial at a time, smallest first."""
    k = t.k
    masks = sorted(range(1 << k), key=lambda m: (bin(m).count("1"), m))
    coef = {}
    for mask in masks:
        # the point whose set bits are exactly the monomial's variables
        a = mask
        acc = 0
        for sub, c in coef.items():
            if c and sub & mask == sub:
                acc ^= 1
        coef[mask] = t(a) ^ acc
    return {frozenset(j for j in range(k) if m >> (k - 1 - j) & 1) for m, c in coef.items() if c}


@pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
def test_anf_roundtrip_exhaustive(k):
    n = 1 << k
    tables = product((0, 1), repeat=n) if k <= 3 else \
        (tuple((f >> i) & 1 for i in range(n)) for f in range(1 << n))
    for values in tables:
        t = TruthTable(k, values)
        p = anf(t)
        assert all(p.evaluate(a) == t(a) for a in range(n))
    for values in [tuple(random.Random(k).randint(0, 1) for _ in range(n)) for _ in range(5)]:
        t = TruthTable(k, values)
        assert anf(t).monomials == brute_anf(t)


def test_truth_table_size_checked():
    with pytest.raises(ValueError):
        TruthTable(2, (0, 1))


def test_anf_text():
    assert str(anf(TruthTable(2, (0, 1, 1, 1)))) == "x0 + x1 + x0x1"
    assert str(AnfPolynomial(1, frozenset())) == "0"


def test_anf_and_is_and():
    d = anf_to_diagram([AnfPolynomial(2, frozenset({mono(0, 1)}))])
    assert decide_eq(d, dg.and_())


def test_anf_copy_is_copy():
    p = AnfPolynomial(1, frozenset({mono(0)}))
    assert decide_eq(anf_to_diagram([p, p]), dg.x(1, 2))


def test_anf_constant_discards_input():
    d = anf_to_diagram([AnfPolynomial(1, frozenset({mono()}))])
    assert mat_eval(d) == dense([[0, 0], [1, 1]])


def test_anf_mixed_polys_need_same_k():
    with pytest.raises(ValueError):
        anf_to_diagram([AnfPolynomial(1, frozenset()), AnfPolynomial(2, frozenset())])
    with pytest.raises(ValueError):
        anf_to_diagram([])


def function_matrix(k, fns):
    r = len(fns)
    rows = [[0] * (1 << k) for _ in range(1 << r)]
    for a in range(1 << k):
        y = 0
        for f in fns:
            y = (y << 1) | f(a)
        rows[y][a] = 1
    return dense(rows)


@given(st.integers(1, 3), st.integers(0, 3), st.integers(0, 2**32 - 1))
def test_anf_diagram_is_function_matrix(k, r, seed):
    rng = random.Random(seed)
    tables = [TruthTable(k, [rng.randint(0, 1) for _ in range(1 << k)]) for _ in range(r)]
    d = anf_to_diagram([anf(t) for t in tables], k)
    assert mat_eval(d) == function_matrix(k, tables)


def test_unused_variable_not_doubled():
    # f(x0, x1, x2) = x0 and x2 never looks at x1
    t = TruthTable.from_function(3, lambda a: (a >> 2) & a & 1)
    m = mat_eval(anf_to_diagram([anf(t)], 3))
    assert max(m.entries.values()) == 1
    assert m == function_matrix(3, [t])


def test_apex_elements_row_major():
    m = dense([[0, 2], [1, 0]])
    assert apex_elements(m) == [(1, 0), (1, 0), (0, 1)]


def test_scalar_one():
    assert mat_eval(matrix_to_diagram(NatMatrix.scalar(1))) == NatMatrix.scalar(1)


def test_identity():
    assert mat_eval(matrix_to_diagram(NatMatrix.identity(1))) == NatMatrix.identity(1)


@pytest.mark.parametrize("rows,cols", [(1, 1), (2, 2), (4, 1), (1, 4)])
def test_zero_matrix(rows, cols):
    z = NatMatrix(rows, cols)
    assert mat_eval(matrix_to_diagram(z)) == z


@pytest.mark.parametrize("entries", list(product(range(3), repeat=4)))
def test_all_small_two_by_two(entries):
    m = dense([entries[:2], entries[2:]])
    assert mat_eval(matrix_to_diagram(m)) == m


def test_fifty_random_matrices():
    rng = random.Random(23)
    for _ in range(50):
        m = random_matrix(rng, max_wires=2, max_entry=3)
        assert mat_eval(matrix_to_diagram(m)) == m


def test_deterministic():
    m = dense([[1, 2], [0, 3]])
    assert matrix_to_diagram(m) == matrix_to_diagram(m)
