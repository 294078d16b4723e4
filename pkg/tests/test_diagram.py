import random

import pytest
from conftest import diagrams
from hypothesis import given

from zxand import diagram as dg
from zxand.canon import canonical_form, certificate, relabel
from zxand.diagram import AND, X, Z, Diagram, DiagramError, Vertex, validate
from zxand.matsem import eval as mat_eval
from zxand.sampling import random_diagram
from zxand.syntax import ParseError, from_json, parse, to_dot, to_json, to_text

from oracle import brute_eval, dense, transpose


def test_gen_ket1_shape():
    d = dg.gen("z", 0, 1, "pi")
    assert d.arity == (0, 1)
    assert d.vertices == (Vertex(Z, 1),)


def test_gen_empty_identity():
    d = dg.gen("id", 0)
    assert d.arity == (0, 0)
    assert not d.vertices and not d.edges
    assert mat_eval(d).scalar_value() == 1


def test_gen_x_legs():
    d = dg.gen("x", 1, 2)
    assert d.vertices == (Vertex(X),)
    assert d.degree(0) == 3


@pytest.mark.parametrize("bad", [("z", 1), ("x", 1, 2, 3), ("q", 1, 1), ("z", 1, 1, 2)])
def test_gen_rejects_bad_parameters(bad):
    with pytest.raises(DiagramError):
        dg.gen(*bad)


def test_compose_identities():
    assert dg.compose(dg.identity(1), dg.identity(1)) == dg.identity(1)


def test_compose_closed_scalar():
    d = dg.compose(dg.z(0, 1), dg.x(1, 0))
    assert d.arity == (0, 0)
    assert len(d.vertices) == 2


def test_cup_swap_cap_is_circle():
    d = dg.seq(dg.cup(), dg.swap(), dg.cap())
    assert d.arity == (0, 0)
    assert not d.vertices and d.loops == 1
    assert mat_eval(d).scalar_value() == 2


def test_compose_arity_mismatch():
    with pytest.raises(DiagramError):
        dg.compose(dg.z(1, 2), dg.x(1, 1))


def test_tensor_unit_and_identity():
    d = dg.z(1, 2, 1)
    assert dg.tensor(dg.identity(0), d) == d
    assert dg.tensor(d, dg.identity(0)) == d
    assert dg.tensor(dg.identity(1), dg.identity(1)) == dg.identity(2)


def test_tensor_two_vertices():
    d = dg.tensor(dg.z(1, 1, 1), dg.x(1, 1))
    assert d.arity == (2, 2)
    assert sorted(v.kind for v in d.vertices) == [X, Z]


def test_dagger_of_ket1_is_bra1():
    assert dg.dagger(dg.z(0, 1, 1)) == dg.bra1()


def test_dagger_of_and_transposes():
    d = dg.dagger(dg.and_())
    assert d.arity == (1, 2)
    assert brute_eval(d) == transpose(dense([[1, 1, 1, 0], [0, 0, 0, 1]]))


@given(diagrams())
def test_dagger_involution(d):
    assert dg.dagger(dg.dagger(d)) == d


def test_validate_rejects_dangling_leg():
    with pytest.raises(DiagramError):
        Diagram([Vertex(AND)], [(("v", 0, 0), ("out", 0)), (("v", 0, 1), ("in", 0))], 1, 1)


def test_validate_rejects_reused_port():
    with pytest.raises(DiagramError):
        Diagram([], [(("in", 0), ("out", 0)), (("in", 0), ("out", 1))], 1, 2)


def test_validate_rejects_gap_in_legs():
    with pytest.raises(DiagramError):
        Diagram([Vertex(Z)], [(("v", 0, 0), ("in", 0)), (("v", 0, 2), ("out", 0))], 1, 1)


@given(diagrams(max_vertices=12))
def test_random_diagrams_are_well_formed(d):
    validate(d)
    for e, p in d.partner.items():
        assert d.partner[p] == e


def test_parse_seq_par():
    d = parse("(seq (z 1 2 0) (par (id 1) (x 1 1)))")
    assert d.arity == (1, 2)


def test_parse_cnot_expands_to_toffoli_with_ancilla():
    d = parse("(cnot)")
    assert d.arity == (2, 2)
    assert sum(v.kind == AND for v in d.vertices) == 1
    # the |1> and <1| of the ancilla are Z(pi) spiders
    assert sum(v == Vertex(Z, 1) for v in d.vertices) >= 2
    assert brute_eval(d) == dense([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


def test_hbox3_is_three_triangles():
    d = parse("(hbox 3)")
    assert sum(v.kind == AND for v in d.vertices) == 4
    assert brute_eval(d) == dense([[1, 1], [1, 3]])


def test_triangle_matrix():
    assert brute_eval(dg.triangle()) == dense([[1, 0], [1, 1]])


@pytest.mark.parametrize("text,msg", [
    ("(z 1 2", "position"), ("(seq (z 1 1 0))", "position"), ("(foo)", "position"),
    ("(z 1 1 0) x", "position"), ("(seq (z 1 2 0) (z 1 1 0))", ""), ("", "position"),
])
def test_parse_errors(text, msg):
    with pytest.raises(DiagramError) as err:
        parse(text)
    assert msg in str(err.value)


def test_parse_error_has_position():
    with pytest.raises(ParseError) as err:
        parse("(par (z 1 1 0) (bogus))")
    assert err.value.pos == 16


GENERATOR_TEXTS = ["(z 0 1 pi)", "(z 2 3 0)", "(x 1 2)", "(x 0 0)", "(and)", "(id 2)", "(swap)",
                   "(cup)", "(cap)", "(tof)", "(cnot)", "(not)", "(ket0)", "(ket1)", "(bra0)",
                   "(bra1)", "(plus)", "(coplus)", "(fanout)", "(tri)", "(hbox 2)"]


@pytest.mark.parametrize("text", GENERATOR_TEXTS)
def test_print_parse_idempotent_on_generators(text):
    d = parse(text)
    once = to_text(d)
    back = parse(once)
    assert back == d
    assert to_text(back) == once
    assert mat_eval(back) == mat_eval(d)


@given(diagrams(max_vertices=10))
def test_print_parse_idempotent_random(d):
    once = to_text(d)
    back = parse(once)
    assert back == d
    assert to_text(back) == once


@given(diagrams())
def test_json_roundtrip(d):
    assert from_json(to_json(d)) == d


def test_json_apex_position_is_respected():
    text = ('{"inputs":[0,1],"outputs":[0],"vertices":[{"id":7,"kind":"and","apex":2}],'
            '"edges":[[{"b":"in","i":0},{"v":7,"leg":0}],[{"b":"in","i":1},{"v":7,"leg":1}],'
            '[{"v":7,"leg":2},{"b":"out","i":0}]]}')
    assert from_json(text) == dg.and_()


def test_dot_mentions_every_vertex():
    text = to_dot(dg.tof())
    assert text.startswith("graph")
    assert text.count("label=") >= len(dg.tof().vertices)


def test_interchange_law():
    rng = random.Random(3)
    for _ in range(200):
        ds = [random_diagram(rng, 1, 1, max_vertices=4) for _ in range(4)]
        f, g, h, k = ds
        lhs = dg.compose(dg.tensor(f, g), dg.tensor(h, k))
        rhs = dg.tensor(dg.compose(f, h), dg.compose(g, k))
        assert lhs == rhs


def test_associativity_up_to_isomorphism():
    rng = random.Random(4)
    for _ in range(200):
        f, g, h = (random_diagram(rng, 2, 2, max_vertices=4) for _ in range(3))
        assert dg.compose(dg.compose(f, g), h) == dg.compose(f, dg.compose(g, h))
        assert dg.tensor(dg.tensor(f, g), h) == dg.tensor(f, dg.tensor(g, h))


@given(diagrams(max_vertices=12))
def test_equality_invariant_under_relabelling(d):
    perm = list(range(len(d.vertices)))
    random.Random(len(perm)).shuffle(perm)
    e = relabel(d, perm)
    assert e == d
    assert certificate(e) == certificate(d)
    assert canonical_form(e).edges == canonical_form(d).edges


def test_equality_distinguishes_structure():
    assert dg.z(1, 1, 1) != dg.z(1, 1, 0)
    assert dg.z(2, 1) != dg.x(2, 1)
    # boundary order matters
    assert dg.swap() != dg.identity(2)
    a = dg.seq(dg.tensor(dg.ket1(), dg.identity(1)), dg.and_())
    b = dg.seq(dg.tensor(dg.identity(1), dg.ket1()), dg.and_())
    assert a == b  # AND inputs are interchangeable
    c = dg.seq(dg.and_(), dg.and_().dagger())
    assert c != dg.identity(2)


def test_bend_is_partial_transpose():
    # swap the roles of input bit w and output bit w, entry by entry
    d = dg.cnot()
    m = mat_eval(d)
    for w in range(2):
        bent = mat_eval(dg.bend(d, w))
        sh = 1 - w
        for row in range(4):
            for col in range(4):
                a, b = (row >> sh) & 1, (col >> sh) & 1
                r2 = row ^ ((a ^ b) << sh)
                c2 = col ^ ((a ^ b) << sh)
                assert bent[r2, c2] == m[row, col]


def test_and_n():
    assert mat_eval(dg.and_n(0)) == dense([[0], [1]])
    m = mat_eval(dg.and_n(3))
    assert m == dense([[1] * 7 + [0], [0] * 7 + [1]])
