"""Interpretations between ZX& diagrams and Toffoli circuits.

``zx_to_tof`` replaces each generator by its circuit: spiders become trees
of (co)multiplications and (co)units, which in turn become CNOTs with a
|0> or unit ancilla; AND becomes a Toffoli onto a |0> ancilla whose
controls are discarded.  Cups and caps use the unit/counit with a copying
CNOT.  ``tofhat_to_zx`` sends each primitive gate to its diagram.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import circuit as cc
from .circuit import Bra1, Circuit, CircuitError, GenCNot, Ket1, SwapAdj, XCounit, XUnit
from .decompose import adjacent_swaps, decompose
from .diagram import Builder, Diagram
from .matsem import eval as mat_eval


def _ket0(w):
    return [Ket1(w), cc.not_(w)]


def _bra0(w):
    return [cc.not_(w), Bra1(w)]


# local circuits for the biomonoid generators; wire o is the first input


def _z_merge(o):
    return [cc.cnot(o, o + 1), XCounit(o + 1)]


def _z_split(o):
    return [XUnit(o + 1), cc.cnot(o, o + 1)]


def _x_merge(o):
    return [cc.cnot(o + 1, o)] + _bra0(o + 1)


def _x_split(o):
    return _ket0(o + 1) + [cc.cnot(o + 1, o)]


def _and(o):
    return _ket0(o + 2) + [cc.tof(o + 2, o, o + 1), XCounit(o), XCounit(o)]


def _cup(o):
    return [XUnit(o)] + _ket0(o + 1) + [cc.cnot(o + 1, o)]


def _cap(o):
    return [cc.cnot(o + 1, o)] + _bra0(o + 1) + [XCounit(o)]


def spider_gates(kind: str, k: int, r: int, phase: int, o: int) -> list:
    """Left-combed tree realising a ``k -> r`` spider starting at wire ``o``."""
    gates = []
    if k == 0:
        gates += _ket0(o) if kind == "z" else [XUnit(o)]
    for _ in range(k - 1):
        gates += _z_merge(o) if kind == "z" else _x_merge(o)
    if phase:
        gates.append(cc.not_(o))
    if r == 0:
        gates += _bra0(o) if kind == "z" else [XCounit(o)]
    for i in range(r - 1):
        gates += _z_split(o + i) if kind == "z" else _x_split(o + i)
    return gates


def zx_to_tof(d: Diagram) -> Circuit:
    """Circuit of generalized CNOTs (at most two controls) with the same matrix."""
    plan = decompose(d)
    gates = []
    for _ in range(d.loops):
        gates += _cup(d.n_in) + _cap(d.n_in)
    for st, w in zip(plan.steps, plan.widths()):
        if st[0] == "perm":
            gates += [SwapAdj(k) for k in adjacent_swaps(st[1])]
        elif st[0] == "cup":
            gates += _cup(w)
        elif st[0] == "cap":
            gates += _cap(w - 2)
        else:
            _, name, params, k, r = st
            o = w - k
            if name == "and":
                gates += _and(o)
            elif name == "z":
                gates += spider_gates("z", k, r, params[2], o)
            elif name == "x":
                gates += spider_gates("x", k, r, 0, o)
            else:
                raise CircuitError(f"no circuit for generator {name!r}")
    return Circuit(d.n_in, gates)


def zx_to_tofhat(d: Diagram) -> Diagram:
    """The circuit image of ``d``, drawn back as a diagram of Toffoli blocks."""
    return cc.circuit_to_diagram(zx_to_tof(d))


def tofhat_to_zx(c: Circuit) -> Diagram:
    if not cc.is_lowered(c):
        raise CircuitError("circuit contains gates other than tof; expand derived gates first")
    b = Builder(c.n_in)
    for g in c.gates:
        cc.gate_image(b, g)
    return b.finish()


# ---------------------------------------------------------------------------
# roundtrips


@dataclass
class RoundtripReport:
    side: str
    semantic: bool
    syntactic: bool
    size_before: tuple
    size_after: tuple

    def __str__(self):
        return (f"{self.side}: semantic {'PASS' if self.semantic else 'FAIL'}, "
                f"syntactic {'yes' if self.syntactic else 'no'} "
                f"(size {self.size_before} -> {self.size_after})")


def roundtrip_check(side: str, item) -> RoundtripReport:
    """Send ``item`` through both interpretations and compare.

    ``side="zx"`` takes a diagram, ``side="tof"`` a circuit.  Syntactic
    agreement is checked after simplification and is best effort.
    """
    from .rewrite import simplify

    if side == "zx":
        back = tofhat_to_zx(cc.lower(zx_to_tof(item)))
        semantic = mat_eval(back) == mat_eval(item)
        simp, _ = simplify(back)
        ref, _ = simplify(item)
        return RoundtripReport(side, semantic, simp == ref, item.measure(), simp.measure())
    if side == "tof":
        c = cc.lower(item)
        there = tofhat_to_zx(c)
        back = cc.lower(zx_to_tof(there))
        semantic = cc.circuit_matrix(back) == cc.circuit_matrix(c)
        simp, _ = simplify(tofhat_to_zx(back))
        ref, _ = simplify(there)
        return RoundtripReport(side, semantic, simp == ref, (c.n_in, len(c.gates)),
                               (back.n_in, len(back.gates)))
    raise ValueError(f"side must be 'zx' or 'tof', got {side!r}")


def zx_table():
    """Generators covered by the diagram-to-circuit table, by name."""
    from . import diagram as dg

    return {
        "z(1,2)": dg.z(1, 2), "z(2,1)": dg.z(2, 1), "z(0,1)": dg.z(0, 1), "z(1,0)": dg.z(1, 0),
        "z(1,1,pi)": dg.z(1, 1, 1),
        "x(1,2)": dg.x(1, 2), "x(2,1)": dg.x(2, 1), "x(0,1)": dg.x(0, 1), "x(1,0)": dg.x(1, 0),
        "and": dg.and_(), "and-dagger": dg.and_().dagger(),
        "swap": dg.swap(), "cup": dg.cup(), "cap": dg.cap(),
    }


def tof_table():
    """Gates covered by the circuit-to-diagram table, as one-gate circuits."""
    return {
        "tof": Circuit(3, [cc.tof(2, 0, 1)]),
        "ket1": Circuit(0, [Ket1(0)]),
        "bra1": Circuit(1, [Bra1(0)]),
        "plus": Circuit(0, [XUnit(0)]),
        "coplus": Circuit(1, [XCounit(0)]),
        "swap": Circuit(2, [SwapAdj(0)]),
    }


__all__ = ["zx_to_tof", "zx_to_tofhat", "tofhat_to_zx", "roundtrip_check", "RoundtripReport",
           "zx_table", "tof_table", "GenCNot"]
