"""Toffoli circuits with |1>/<1| ancillae and the adjoined unit/counit.

Gates act on wire indices counted from the top.  ``Ket1`` and ``XUnit``
insert a new wire at their index; ``Bra1`` and ``XCounit`` remove the wire
at theirs.  Gate lists read left to right, so the matrix of a circuit is
the product of its gate matrices in reverse order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import diagram as dg
from .matsem import NatMatrix


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class GenCNot:
    """Flip ``target`` when every wire in ``controls`` carries 1."""

    target: int
    controls: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "controls", frozenset(self.controls))
        if self.target in self.controls:
            raise CircuitError(f"target {self.target} is also a control")

    def __repr__(self):
        return f"[{self.target},{{{','.join(str(c) for c in sorted(self.controls))}}}]"


@dataclass(frozen=True)
class Ket1:
    wire: int


@dataclass(frozen=True)
class Bra1:
    wire: int


@dataclass(frozen=True)
class XUnit:
    wire: int


@dataclass(frozen=True)
class XCounit:
    wire: int


@dataclass(frozen=True)
class SwapAdj:
    """Exchange ``wire`` and ``wire + 1``."""

    wire: int


_GROW = (Ket1, XUnit)
_SHRINK = (Bra1, XCounit)


def tof(target, c1, c2):
    return GenCNot(target, frozenset((c1, c2)))


def cnot(target, control):
    return GenCNot(target, frozenset((control,)))


def not_(target):
    return GenCNot(target, frozenset())


def _check(g, w):
    if isinstance(g, GenCNot):
        wires = [g.target, *g.controls]
        if any(not 0 <= k < w for k in wires):
            raise CircuitError(f"{g!r} touches a wire outside width {w}")
        return w
    if isinstance(g, _GROW):
        if not 0 <= g.wire <= w:
            raise CircuitError(f"{g!r} inserts outside width {w}")
        return w + 1
    if isinstance(g, _SHRINK):
        if not 0 <= g.wire < w:
            raise CircuitError(f"{g!r} removes a wire outside width {w}")
        return w - 1
    if isinstance(g, SwapAdj):
        if not 0 <= g.wire < w - 1:
            raise CircuitError(f"{g!r} needs wires {g.wire} and {g.wire + 1} of width {w}")
        return w
    raise CircuitError(f"unknown gate {g!r}")


@dataclass(frozen=True)
class Circuit:
    n_in: int
    gates: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        self.widths  # validates

    @property
    def widths(self) -> list[int]:
        """Wire count before each gate, and after the last one."""
        w = self.n_in
        out = [w]
        for g in self.gates:
            w = _check(g, w)
            out.append(w)
        return out

    @property
    def n_out(self) -> int:
        return self.widths[-1]

    def then(self, other: "Circuit") -> "Circuit":
        if self.n_out != other.n_in:
            raise CircuitError("width mismatch in circuit composition")
        return Circuit(self.n_in, self.gates + other.gates)

    def matrix(self) -> NatMatrix:
        return circuit_matrix(self)


# ---------------------------------------------------------------------------
# semantics by simulation on basis states


def _step(states, g):
    out = {}

    def add(bits, k):
        out[bits] = out.get(bits, 0) + k

    for bits, k in states.items():
        if isinstance(g, GenCNot):
            if all(bits[c] for c in g.controls):
                b = list(bits)
                b[g.target] ^= 1
                bits = tuple(b)
            add(bits, k)
        elif isinstance(g, Ket1):
            add(bits[:g.wire] + (1,) + bits[g.wire:], k)
        elif isinstance(g, XUnit):
            add(bits[:g.wire] + (0,) + bits[g.wire:], k)
            add(bits[:g.wire] + (1,) + bits[g.wire:], k)
        elif isinstance(g, Bra1):
            if bits[g.wire] == 1:
                add(bits[:g.wire] + bits[g.wire + 1:], k)
        elif isinstance(g, XCounit):
            add(bits[:g.wire] + bits[g.wire + 1:], k)
        elif isinstance(g, SwapAdj):
            b = list(bits)
            b[g.wire], b[g.wire + 1] = b[g.wire + 1], b[g.wire]
            add(tuple(b), k)
    return out


def _index(bits):
    v = 0
    for b in bits:
        v = (v << 1) | b
    return v


def circuit_matrix(c: Circuit) -> NatMatrix:
    n = c.n_in
    ents = {}
    for xx in range(1 << n):
        states = {tuple((xx >> (n - 1 - i)) & 1 for i in range(n)): 1}
        for g in c.gates:
            states = _step(states, g)
            if not states:
                break
        for bits, k in states.items():
            ents[(_index(bits), xx)] = k
    return NatMatrix(1 << c.n_out, 1 << n, ents)


def gate_semantics(g, width: int) -> NatMatrix:
    return circuit_matrix(Circuit(width, (g,)))


# ---------------------------------------------------------------------------
# Iwama commutation


def iwama_pair(a: GenCNot, b: GenCNot) -> list:
    """The gate pair the commutation law rewrites: ``[x,X]`` then ``[y, Y + {x}]``."""
    _iwama_check(a, b)
    return [a, GenCNot(b.target, b.controls | {a.target})]


def iwama_commute(a: GenCNot, b: GenCNot) -> list:
    """Move ``[x,X]`` past ``[y, Y + {x}]``, leaving a trailing ``[y, X | Y]``.

    Returns ``[y, X | Y], [y, Y + {x}], [x, X]`` in circuit order; their
    product equals :func:`iwama_pair` of the same arguments.  Requires
    ``x`` not in ``Y`` and ``y`` not among ``X`` or ``x``.
    """
    _iwama_check(a, b)
    x, xs = a.target, a.controls
    y, ys = b.target, b.controls
    return [GenCNot(y, xs | ys), GenCNot(y, ys | {x}), GenCNot(x, xs)]


def _iwama_check(a, b):
    if a.target in b.controls:
        raise CircuitError("the first target may not control the second gate")
    if b.target == a.target or b.target in a.controls:
        raise CircuitError("the second target may not be the first gate's target or a control")


def iwama_instances(width: int):
    """Every valid (x, X, y, Y) on ``width`` wires."""
    wires = range(width)
    for x_ in wires:
        for y_ in wires:
            if y_ == x_:
                continue
            rest = [w for w in wires if w not in (x_, y_)]
            for i in range(len(rest) + 1):
                for xs in combinations(rest, i):
                    for j in range(len(rest) + 1):
                        for ys in combinations(rest, j):
                            yield GenCNot(x_, frozenset(xs)), GenCNot(y_, frozenset(ys))


# ---------------------------------------------------------------------------
# lowering generalized gates to tof with ancillae


def _shift(g, at):
    """Renumber ``g`` for a wire inserted at index ``at``."""
    up = lambda k: k + 1 if k >= at else k  # noqa: E731
    if isinstance(g, GenCNot):
        return GenCNot(up(g.target), frozenset(up(c) for c in g.controls))
    return type(g)(up(g.wire))


def _lower_cnot(g: GenCNot, width: int, top: bool) -> list:
    k = len(g.controls)
    if k == 2:
        return [g]
    anc = 0 if top else width
    g = _shift(g, anc) if top else g
    if k <= 1:
        # one more control wired to a |1> ancilla
        inner = GenCNot(g.target, g.controls | {anc})
        return [Ket1(anc)] + _lower_cnot(inner, width + 1, top) + [Bra1(anc)]
    # three or more controls: fold two of them into a |0> ancilla
    c1, c2, *rest = sorted(g.controls)
    body = [GenCNot(anc, frozenset())]
    body += [GenCNot(anc, frozenset((c1, c2))),
             GenCNot(g.target, frozenset([anc, *rest])),
             GenCNot(anc, frozenset((c1, c2))),
             GenCNot(anc, frozenset())]
    out = [Ket1(anc)]
    for h in body:
        out += _lower_cnot(h, width + 1, top)
    return out + [Bra1(anc)]


def lower(c: Circuit, top: bool = False) -> Circuit:
    """Only two-control gates remain; ancillae go below (or above) the circuit."""
    gates = []
    for g, w in zip(c.gates, c.widths):
        gates += _lower_cnot(g, w, top) if isinstance(g, GenCNot) else [g]
    return Circuit(c.n_in, gates)


def is_lowered(c: Circuit) -> bool:
    return all(not isinstance(g, GenCNot) or len(g.controls) == 2 for g in c.gates)


# ---------------------------------------------------------------------------
# derived gates, ancillae on top as in their defining pictures


def _reverse3():
    return [SwapAdj(0), SwapAdj(1), SwapAdj(0)]


DERIVED_NAMES = ("cnot", "not", "ket0", "bra0", "tof-flip", "cnot-flip", "fanout")


def expand_derived(name: str) -> Circuit:
    if name == "cnot":
        return lower(Circuit(2, [cnot(1, 0)]), top=True)
    if name == "not":
        return lower(Circuit(1, [not_(0)]), top=True)
    if name == "ket0":
        return lower(Circuit(0, [Ket1(0), not_(0)]), top=True)
    if name == "bra0":
        return lower(Circuit(1, [not_(0), Bra1(0)]), top=True)
    if name == "tof-flip":
        return Circuit(3, _reverse3() + [tof(2, 0, 1)] + _reverse3())
    if name == "cnot-flip":
        return Circuit(2, [SwapAdj(0)] + list(expand_derived("cnot").gates) + [SwapAdj(0)])
    if name == "fanout":
        # the |0> preparation lands on wire 1, below the input
        head = [_shift(g, 0) for g in expand_derived("ket0").gates]
        body = lower(Circuit(2, [cnot(1, 0)]), top=True).gates
        return Circuit(1, head + list(body))
    raise CircuitError(f"unknown derived gate {name!r}")


# ---------------------------------------------------------------------------
# embedding into diagrams


def gate_image(b: dg.Builder, g) -> None:
    """Append the diagram image of a primitive gate to builder ``b``."""
    if isinstance(g, GenCNot):
        if len(g.controls) != 2:
            raise CircuitError(f"{g!r} is not a Toffoli gate; lower the circuit first")
        c1, c2 = sorted(g.controls)
        x1 = b.tap(dg.X, c1)
        x2 = b.tap(dg.X, c2)
        a = b._vertex(dg.AND)
        b.connect(b.new_leg(x1), b.new_leg(a, 1))
        b.connect(b.new_leg(x2), b.new_leg(a, 2))
        t = b.tap(dg.Z, g.target)
        b.connect(b.new_leg(a, dg.APEX), b.new_leg(t))
    elif isinstance(g, Ket1):
        b.spider(dg.Z, 1, wires=[], n_out=1, at=g.wire)
    elif isinstance(g, Bra1):
        b.spider(dg.Z, 1, wires=[g.wire], n_out=0)
    elif isinstance(g, XUnit):
        b.spider(dg.X, 0, wires=[], n_out=1, at=g.wire)
    elif isinstance(g, XCounit):
        b.spider(dg.X, 0, wires=[g.wire], n_out=0)
    elif isinstance(g, SwapAdj):
        b.swap(g.wire)
    else:
        raise CircuitError(f"unknown gate {g!r}")


def circuit_to_diagram(c: Circuit) -> dg.Diagram:
    c = lower(c)
    b = dg.Builder(c.n_in)
    for g in c.gates:
        gate_image(b, g)
    return b.finish()


# ---------------------------------------------------------------------------
# text format


def parse_circuit(text: str) -> Circuit:
    gates = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *args = line.split(None, 1)
        arg = args[0] if args else ""
        try:
            if head == "gcx":
                t, rest = arg.split(None, 1)
                rest = rest.strip()
                if not (rest.startswith("{") and rest.endswith("}")):
                    raise ValueError("controls must be written {c1,c2,...}")
                inner = rest[1:-1].strip()
                ctrls = [int(s) for s in inner.split(",")] if inner else []
                if len(set(ctrls)) != len(ctrls):
                    raise ValueError("repeated control")
                gates.append(GenCNot(int(t), frozenset(ctrls)))
                continue
            nums = [int(s) for s in arg.split()]
            if any(k < 0 for k in nums):
                raise ValueError("negative wire index")
            if head == "wires" and len(nums) == 1:
                width = nums[0]
            elif head == "tof" and len(nums) == 3:
                if len(set(nums)) != 3:
                    raise ValueError("tof wires must be distinct")
                gates.append(tof(*nums))
            elif head == "cnot" and len(nums) == 2:
                gates.append(cnot(*nums))
            elif head == "not" and len(nums) == 1:
                gates.append(not_(nums[0]))
            elif head in _SINGLE and len(nums) == 1:
                gates.append(_SINGLE[head](nums[0]))
            else:
                raise ValueError(f"cannot read gate {head!r} with {len(nums)} arguments")
        except (ValueError, CircuitError) as exc:
            raise CircuitError(f"line {lineno}: {exc}") from None
    if width is None:
        width = _min_width(gates)
    try:
        return Circuit(width, gates)
    except CircuitError as exc:
        raise CircuitError(f"circuit does not fit {width} wires: {exc}") from None


_SINGLE = {"ket1": Ket1, "bra1": Bra1, "plus": XUnit, "coplus": XCounit, "swap": SwapAdj}
_NAMES = {Ket1: "ket1", Bra1: "bra1", XUnit: "plus", XCounit: "coplus", SwapAdj: "swap"}


def _min_width(gates):
    for w in range(0, 256):
        try:
            Circuit(w, gates)
            return w
        except CircuitError:
            continue
    raise CircuitError("no width up to 256 fits the circuit")


def format_circuit(c: Circuit) -> str:
    lines = [f"wires {c.n_in}"]
    for g in c.gates:
        if isinstance(g, GenCNot):
            ctrls = sorted(g.controls)
            if len(ctrls) == 2:
                lines.append(f"tof {g.target} {ctrls[0]} {ctrls[1]}")
            elif len(ctrls) == 1:
                lines.append(f"cnot {g.target} {ctrls[0]}")
            elif not ctrls:
                lines.append(f"not {g.target}")
            else:
                lines.append(f"gcx {g.target} {{{','.join(map(str, ctrls))}}}")
        else:
            lines.append(f"{_NAMES[type(g)]} {g.wire}")
    return "\n".join(lines) + "\n"
