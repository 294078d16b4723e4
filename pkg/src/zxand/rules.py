"""Axiom databases and the soundness harness.

Every rule is built from the diagram combinators.  Schema rules take
arity or phase parameters and are checked for every instantiation up to a
bound.  Circuit rules are written as gate lists (gate ``[t, {c...}]`` flips
wire ``t`` when all controls are 1; ancilla gates insert or remove a wire)
and embedded as diagrams.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from . import circuit as cc
from . import diagram as dg
from .circuit import Bra1, Circuit, Ket1, SwapAdj, XUnit
from .diagram import Diagram
from .matsem import ResourceError
from .matsem import eval as mat_eval

I = dg.identity  # noqa: E741


@dataclass
class RewriteRule:
    name: str
    build: Callable[..., tuple]
    params: dict = field(default_factory=dict)  # name -> callable(bound) -> values
    bidirectional: bool = True
    group: str = "zxa"
    note: str = ""

    @property
    def is_schema(self) -> bool:
        return bool(self.params)

    def instances(self, bound: int = 3):
        """Yield (params, lhs, rhs) for every instantiation within ``bound``."""
        names = list(self.params)
        spaces = [list(self.params[n](bound)) for n in names]
        for values in product(*spaces):
            kw = dict(zip(names, values))
            lhs, rhs = self.build(**kw)
            yield kw, lhs, rhs

    def instance(self, **kw):
        if not kw and self.params:
            kw = {n: list(self.params[n](3))[0] for n in self.params}
        return self.build(**kw)

    @property
    def lhs(self) -> Diagram:
        return self.instance()[0]

    @property
    def rhs(self) -> Diagram:
        return self.instance()[1]


def _upto(lo=0):
    return lambda bound: range(lo, bound + 1)


PHASE = {"alpha": lambda bound: (0, 1)}


def _c(n_in, gates) -> Diagram:
    return cc.circuit_to_diagram(Circuit(n_in, gates))


# ---------------------------------------------------------------------------
# ZX& axioms


def _spider_fusion(n, m, alpha, beta):
    return dg.z(n, 1, alpha) >> dg.z(1, m, beta), dg.z(n, m, alpha ^ beta)


def _z_leg_swap(m, alpha):
    return dg.swap() >> dg.z(2, m, alpha), dg.z(2, m, alpha)


def _x_fusion(n, k, m):
    return dg.x(n, k) >> dg.x(k, m), dg.x(n, m)


def _x_leg_swap(n):
    return dg.x(n, 2) >> dg.swap(), dg.x(n, 2)


def _mid_swap():
    return I(1) @ dg.swap() @ I(1)


def _bialgebra():
    lhs = dg.z(2, 1) >> dg.x(1, 2)
    rhs = dg.seq(dg.x(1, 2) @ dg.x(1, 2), _mid_swap(), dg.z(2, 1) @ dg.z(2, 1))
    return lhs, rhs


def _zunit_copy():
    return dg.z(0, 1) >> dg.x(1, 2), dg.z(0, 1) @ dg.z(0, 1)


def _zunit_xcounit():
    return dg.z(0, 1) >> dg.x(1, 0), I(0)


def _hopf():
    return dg.x(1, 2) >> dg.z(2, 1), dg.x(1, 0) >> dg.z(0, 1)


def _and_fusion(a, p, b):
    lhs = (I(a) @ dg.and_n(p) @ I(b)) >> dg.and_n(a + 1 + b)
    return lhs, dg.and_n(a + p + b)


def _and_unit():
    return (dg.ket1() @ I(1)) >> dg.and_(), I(1)


def _and_comm():
    return dg.swap() >> dg.and_(), dg.and_()


def _and_copy():
    lhs = dg.and_() >> dg.x(1, 2)
    rhs = dg.seq(dg.x(1, 2) @ dg.x(1, 2), _mid_swap(), dg.and_() @ dg.and_())
    return lhs, rhs


def _and_discard():
    return dg.and_() >> dg.x(1, 0), dg.x(1, 0) @ dg.x(1, 0)


def _one_copy():
    return dg.z(0, 1, 1) >> dg.x(1, 2), dg.ket1() @ dg.ket1()


def _copy_and():
    return I(1), dg.x(1, 2) >> dg.and_()


def _and_bra1():
    return dg.and_() >> dg.bra1(), dg.bra1() @ dg.bra1()


def _and_distributes():
    lhs = (I(1) @ dg.z(2, 1)) >> dg.and_()
    rhs = dg.seq(dg.x(1, 2) @ I(2), _mid_swap(), dg.and_() @ dg.and_(), dg.z(2, 1))
    return lhs, rhs


def zxa_rules():
    return [
        RewriteRule("ZXA.1", _spider_fusion,
                    {"n": _upto(), "m": _upto(), "alpha": PHASE["alpha"], "beta": PHASE["alpha"]},
                    note="Z spiders joined by one wire fuse; phases add"),
        RewriteRule("ZXA.2", _z_leg_swap, {"m": _upto(), "alpha": PHASE["alpha"]},
                    note="Z spider legs commute"),
        RewriteRule("ZXA.3", _x_fusion, {"n": _upto(), "k": _upto(1), "m": _upto()},
                    note="X spiders joined by any positive number of wires fuse"),
        RewriteRule("ZXA.4", _x_leg_swap, {"n": _upto()}, note="X spider legs commute"),
        RewriteRule("ZXA.5", _bialgebra, note="bialgebra law between Z merge and X copy"),
        RewriteRule("ZXA.6", _zunit_copy, note="X copies the Z unit"),
        RewriteRule("ZXA.7", _zunit_xcounit, note="Z unit against X counit is the empty diagram"),
        RewriteRule("ZXA.8", _hopf, note="Hopf law"),
        RewriteRule("ZXA.9", _and_fusion, {"a": _upto(), "p": _upto(), "b": _upto()},
                    note="n-ary AND trees reassociate"),
        RewriteRule("ZXA.10", _and_unit, note="|1> is the AND unit"),
        RewriteRule("ZXA.11", _and_comm, note="AND is commutative"),
        RewriteRule("ZXA.12", _and_copy, note="X copies AND"),
        RewriteRule("ZXA.13", _and_discard, note="X discards AND"),
        RewriteRule("ZXA.14", _one_copy, note="X copies |1>"),
        RewriteRule("ZXA.15", _copy_and, note="copy then AND is the identity"),
        RewriteRule("ZXA.16", _and_bra1, note="<1| is copied through AND"),
        RewriteRule("ZXA.17", _and_distributes, note="AND distributes over XOR"),
    ]


# ---------------------------------------------------------------------------
# Toffoli axioms (circuit rules)


def _tof(t, a, b):
    return cc.tof(t, a, b)


def _cx(t, c):
    return cc.cnot(t, c)


def _ket0(w):
    return [Ket1(w), cc.not_(w)]


def _bra0(w):
    return [cc.not_(w), Bra1(w)]


def _pair(n_in, lhs, rhs):
    return lambda: (_c(n_in, lhs), _c(n_in, rhs))


def _swapped(n_in, g1, g2):
    return _pair(n_in, [g1, g2], [g2, g1])


def _tof16():
    body = _ket0(2) + [_tof(2, 0, 1), _tof(4, 2, 3), _tof(2, 0, 1)] + _bra0(2)
    lhs = _c(4, body)
    rhs = _c(4, [SwapAdj(1)] + body + [SwapAdj(1)])
    return lhs, rhs


def tof_rules():
    t = "tof"
    return [
        RewriteRule("TOF.1a", _pair(2, [Ket1(0), _tof(2, 0, 1)], [Ket1(0), _cx(2, 1)]), group=t),
        RewriteRule("TOF.1b", _pair(3, [_tof(2, 0, 1), Bra1(0)], [_cx(2, 1), Bra1(0)]), group=t),
        RewriteRule("TOF.2a", _pair(2, _ket0(0) + [_tof(2, 0, 1)], _ket0(0)), group=t),
        RewriteRule("TOF.2b", _pair(3, [_tof(2, 0, 1)] + _bra0(0), _bra0(0)), group=t),
        RewriteRule("TOF.3", _swapped(5, _tof(2, 0, 1), _tof(2, 3, 4)), group=t),
        RewriteRule("TOF.4", _swapped(5, _tof(0, 1, 2), _tof(4, 2, 3)), group=t),
        RewriteRule("TOF.5", _swapped(4, _tof(0, 1, 2), _tof(3, 1, 2)), group=t),
        RewriteRule("TOF.6", _swapped(4, _tof(3, 0, 2), _tof(3, 1, 2)), group=t),
        RewriteRule("TOF.7", _pair(
            2,
            [Ket1(2), _cx(2, 0)] + _bra0(2) + [Ket1(2), _cx(2, 1)] + _bra0(2),
            [Ket1(2), _tof(2, 0, 1)] + _bra0(2)), group=t),
        RewriteRule("TOF.8", _pair(0, [Ket1(0), Bra1(0)], []), group=t),
        RewriteRule("TOF.9", _pair(3, [_tof(2, 0, 1), _tof(2, 0, 1)], []), group=t),
        RewriteRule("TOF.10", _pair(4, [_tof(3, 1, 2), _tof(2, 0, 1), _tof(3, 1, 2)],
                                    [_tof(3, 0, 1), _tof(2, 0, 1)]), group=t),
        RewriteRule("TOF.11", _pair(4, [_cx(1, 0), _tof(3, 1, 2), _cx(1, 0)],
                                    [_tof(3, 0, 2), _tof(3, 1, 2)]), group=t),
        RewriteRule("TOF.12", _pair(4, [_tof(2, 0, 1), _tof(3, 1, 2), _tof(2, 0, 1)],
                                    [_tof(3, 0, 1), _tof(3, 1, 2)]), group=t),
        RewriteRule("TOF.13", _pair(4, [_tof(2, 0, 1), _cx(3, 2), _tof(2, 0, 1)],
                                    [_tof(3, 0, 1), _cx(3, 2)]), group=t),
        RewriteRule("TOF.14", _pair(2, [_cx(1, 0), _cx(0, 1), _cx(1, 0)], [SwapAdj(0)]), group=t),
        RewriteRule("TOF.15", _pair(3, [_tof(2, 0, 1)], [SwapAdj(0), _tof(2, 0, 1), SwapAdj(0)]),
                    group=t),
        RewriteRule("TOF.16", _tof16, group=t),
    ]


# ---------------------------------------------------------------------------
# CNOT axioms


def _dagger_gates(n_out, gates):
    """Reverse a gate list, exchanging preparations and post-selections."""
    swap = {Ket1: Bra1, Bra1: Ket1, cc.XUnit: cc.XCounit, cc.XCounit: cc.XUnit}
    out = []
    for g in reversed(gates):
        out.append(swap[type(g)](g.wire) if type(g) in swap else g)
    return out


def _mirror(n_in, lhs, rhs):
    n_out = Circuit(n_in, lhs).n_out
    return _pair(n_out, _dagger_gates(n_in, lhs), _dagger_gates(n_in, rhs))


def cnot_rules():
    g = "cnot"
    c4a_l = [Ket1(0), _cx(1, 0)]
    c4a_r = [Ket1(0), _cx(1, 0), Bra1(0), Ket1(0)]
    c7a_l = [Ket1(0), Ket1(1), _cx(1, 0), _cx(2, 1), Bra1(0)]
    c7a_r = [Ket1(0), Ket1(1), _cx(1, 0), Bra1(0)]
    c9_l = [Ket1(0), Ket1(1), _cx(1, 0), Bra1(0), Bra1(0)]
    return [
        RewriteRule("CNOT.1", _pair(2, [_cx(1, 0), _cx(0, 1), _cx(1, 0)], [SwapAdj(0)]), group=g),
        RewriteRule("CNOT.2", _pair(2, [_cx(1, 0), _cx(1, 0)], []), group=g),
        RewriteRule("CNOT.3", _swapped(3, _cx(0, 1), _cx(2, 1)), group=g),
        RewriteRule("CNOT.4a", _pair(1, c4a_l, c4a_r), group=g),
        RewriteRule("CNOT.4b", _mirror(1, c4a_l, c4a_r), group=g),
        RewriteRule("CNOT.5", _swapped(3, _cx(1, 0), _cx(1, 2)), group=g),
        RewriteRule("CNOT.6", _pair(0, [Ket1(0), Bra1(0)], []), group=g),
        RewriteRule("CNOT.7a", _pair(1, c7a_l, c7a_r), group=g),
        RewriteRule("CNOT.7b", _mirror(1, c7a_l, c7a_r), group=g),
        RewriteRule("CNOT.8", _pair(3, [_cx(1, 0), _cx(2, 1), _cx(1, 0)], [_cx(2, 1), _cx(2, 0)]),
                    group=g),
        RewriteRule("CNOT.9", _pair(1, c9_l, c9_l + [Bra1(0), Ket1(0)]), group=g),
    ]


# ---------------------------------------------------------------------------
# derived lemmas


def _blackdot():
    return dg.z(0, 0), I(0)


def _phase_fusion():
    return (dg.ket1() @ dg.ket1()) >> dg.z(2, 1), dg.z(0, 1)


def _phase_fusion_equiv():
    return dg.z(0, 1, 1) >> dg.x(1, 0), I(0)


def _oldaxiom():
    return (dg.z(0, 1) @ I(1)) >> dg.and_(), dg.x(1, 0) >> dg.z(0, 1)


def _twist():
    return dg.bend(dg.cnot(), 1), dg.cnot()


def _cnotslide():
    lhs = (I(1) @ dg.cup()) >> (dg.cnot() @ I(1))
    return lhs, lhs >> (I(1) @ dg.swap())


def _whiteunit():
    return (I(1) @ dg.plus()) >> dg.cnot(), I(1) @ dg.plus()


def _natoplus():
    lhs = dg.cnot() >> (I(1) @ dg.fanout())
    rhs = dg.seq(I(1) @ dg.fanout(), dg.cnot() @ I(1), _c(3, [_cx(2, 0)]))
    return lhs, rhs


def _iwama(index):
    a, b = _IWAMA[index]
    n = 3
    return (_c(n, cc.iwama_pair(a, b)), _c(n, cc.iwama_commute(a, b)))


_IWAMA = list(cc.iwama_instances(3))


def lemma_rules():
    g = "lemmas"
    return [
        RewriteRule("lemma.blackdot", _blackdot, group=g, note="phase-free Z scalar is 1"),
        RewriteRule("lemma.phasefusion", _phase_fusion, group=g,
                    note="two |1> states merged by Z give |0>"),
        RewriteRule("lemma.phasefusion-equiv", _phase_fusion_equiv, group=g,
                    note="|1> against the X counit is the empty diagram"),
        RewriteRule("lemma.oldaxiom", _oldaxiom, group=g, note="AND with a |0> input"),
        RewriteRule("lemma.twist", _twist, group=g, note="cnot is its own mate on the target"),
        RewriteRule("lemma.cnotslide", _cnotslide, group=g,
                    note="a cnot slides along a cup by exchanging the cup ends"),
        RewriteRule("lemma.whiteunit", _whiteunit, group=g,
                    note="cnot absorbs into the unit on its target"),
        RewriteRule("lemma.natoplus", _natoplus, group=g, note="fanout is natural for cnot"),
        RewriteRule("lemma.iwama", _iwama,
                    {"index": lambda bound: range(len(_IWAMA))}, group=g,
                    note="generalized cnot commutation with a trailing gate, all 3-wire cases"),
    ]


# ---------------------------------------------------------------------------
# definitional expansions of the derived gates


def _definition(name):
    def build():
        named = _flip(name) if name.endswith("-flip") else dg.derived(name)
        return named, cc.circuit_to_diagram(cc.expand_derived(name))
    return build


def _flip(name):
    base = dg.tof() if name == "tof-flip" else dg.cnot()
    n = base.n_in
    rev = dg.permutation(list(reversed(range(n))))
    return dg.seq(rev, base, rev)


def definitions():
    return [RewriteRule(f"def.{name}", _definition(name), bidirectional=False, group="definitions")
            for name in cc.DERIVED_NAMES]


SETS = {"zxa": zxa_rules, "tof": tof_rules, "cnot": cnot_rules, "lemmas": lemma_rules,
        "definitions": definitions}


def axiom_db(which: str) -> list[RewriteRule]:
    try:
        return SETS[which]()
    except KeyError:
        raise ValueError(f"unknown rule set {which!r}; choose from {sorted(SETS)}") from None


def all_rules(sets=("zxa", "tof", "cnot", "lemmas")) -> list[RewriteRule]:
    return [r for s in sets for r in axiom_db(s)]


def rule_by_name(name: str) -> RewriteRule:
    for s in SETS:
        for r in axiom_db(s):
            if r.name == name:
                return r
    raise KeyError(name)


# ---------------------------------------------------------------------------
# soundness


@dataclass
class Instance:
    params: dict
    status: str  # PASS, FAIL, SKIP
    lhs_dims: tuple
    witness: tuple | None = None  # (row, col, lhs value, rhs value)
    message: str = ""

    def as_json(self, rule):
        out = {"rule": rule, "instantiation": self.params, "status": self.status,
               "lhsDims": list(self.lhs_dims)}
        if self.witness is not None:
            out["witness"] = {"row": self.witness[0], "col": self.witness[1],
                              "lhs": self.witness[2], "rhs": self.witness[3]}
        if self.message:
            out["message"] = self.message
        return out


@dataclass
class SoundnessReport:
    rule: str
    instances: list

    @property
    def passed(self) -> bool:
        return all(i.status != "FAIL" for i in self.instances)

    def lines(self):
        for i in self.instances:
            p = ",".join(f"{k}={v}" for k, v in i.params.items())
            line = f"{self.rule}[{p}] {i.status} {i.lhs_dims[0]}x{i.lhs_dims[1]}"
            if i.witness:
                r, c, a, b = i.witness
                line += f" first difference at ({r},{c}): lhs {a} rhs {b}"
            if i.message:
                line += f" ({i.message})"
            yield line


def first_difference(a, b):
    if (a.rows, a.cols) != (b.rows, b.cols):
        return (-1, -1, (a.rows, a.cols), (b.rows, b.cols))
    for rc in sorted(set(a.entries) | set(b.entries)):
        if a[rc] != b[rc]:
            return (rc[0], rc[1], a[rc], b[rc])
    return None


def check_soundness(rule: RewriteRule, bound: int = 3, dagger: bool = False) -> SoundnessReport:
    """Evaluate both sides of every instantiation (and optionally their daggers)."""
    out = []
    for params, lhs, rhs in rule.instances(bound):
        if lhs.arity != rhs.arity:
            out.append(Instance(params, "FAIL", (1 << lhs.n_out, 1 << lhs.n_in), None,
                                f"arity {lhs.arity} vs {rhs.arity}"))
            continue
        if dagger:
            lhs, rhs = lhs.dagger(), rhs.dagger()
        try:
            ml, mr = mat_eval(lhs), mat_eval(rhs)
        except ResourceError as exc:
            out.append(Instance(params, "SKIP", (1 << lhs.n_out, 1 << lhs.n_in), None, str(exc)))
            continue
        diff = first_difference(ml, mr)
        out.append(Instance(params, "PASS" if diff is None else "FAIL", (ml.rows, ml.cols), diff))
    return SoundnessReport(rule.name, out)
