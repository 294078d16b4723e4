"""Open-graph representation of ZX& diagrams.

A diagram is an undirected multigraph whose nodes are generator vertices
(Z spiders, X spiders, AND monoids) and ordered boundary ports.  Every vertex
leg and every port is the endpoint of exactly one edge; identity wires,
swaps, cups and caps are plain edges, so none of them is a vertex.

Endpoints are tuples:

* ``("v", vid, leg)`` -- leg ``leg`` of vertex ``vid``
* ``("in", i)`` / ``("out", i)`` -- boundary port ``i``

Spider legs are unordered.  An AND vertex always has three legs: leg 0 is
the apex (the monoid output), legs 1 and 2 are the two interchangeable
inputs.

Vertex-free closed loops are counted in ``Diagram.loops``; each one is
worth the scalar 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Z, X, AND = "z", "x", "and"
WIRE = "w"  # transient pass-through node, only inside Builder
KINDS = (Z, X, AND)

APEX = 0


class DiagramError(ValueError):
    """Malformed diagram, bad generator parameters or arity mismatch."""


@dataclass(frozen=True, order=True)
class Vertex:
    kind: str
    phase: int = 0

    def __post_init__(self):
        if self.kind not in KINDS and self.kind != WIRE:
            raise DiagramError(f"unknown vertex kind {self.kind!r}")
        if self.phase not in (0, 1):
            raise DiagramError(f"phase must be 0 or 1, got {self.phase!r}")
        if self.phase and self.kind != Z:
            raise DiagramError("only Z spiders carry a phase")


def _norm_edge(a, b):
    return (a, b) if a <= b else (b, a)


class Diagram:
    """Immutable ZX& diagram; use :class:`Builder` or the combinators."""

    __slots__ = ("vertices", "edges", "n_in", "n_out", "loops", "_partner", "_key")

    def __init__(self, vertices: Sequence[Vertex], edges: Iterable, n_in: int,
                 n_out: int, loops: int = 0, check: bool = True):
        self.vertices = tuple(vertices)
        self.edges = tuple(sorted(_norm_edge(a, b) for a, b in edges))
        self.n_in = n_in
        self.n_out = n_out
        self.loops = loops
        self._partner = None
        self._key = None
        if check:
            validate(self)

    # -- basic structure -------------------------------------------------

    @property
    def arity(self) -> tuple[int, int]:
        return (self.n_in, self.n_out)

    @property
    def partner(self) -> dict:
        """Map every endpoint to the endpoint at the other end of its edge."""
        if self._partner is None:
            p = {}
            for a, b in self.edges:
                p[a] = b
                p[b] = a
            self._partner = p
        return self._partner

    def degree(self, v: int) -> int:
        return sum(1 for e in self.legs(v))

    def legs(self, v: int) -> list:
        """Endpoints of vertex ``v`` in leg order."""
        out = []
        for a, b in self.edges:
            if a[0] == "v" and a[1] == v:
                out.append(a)
            if b[0] == "v" and b[1] == v:
                out.append(b)
        out.sort(key=lambda e: e[2])
        return out

    def leg_counts(self) -> list[int]:
        counts = [0] * len(self.vertices)
        for a, b in self.edges:
            for e in (a, b):
                if e[0] == "v":
                    counts[e[1]] += 1
        return counts

    def measure(self) -> tuple[int, int]:
        return (len(self.vertices), len(self.edges))

    def is_scalar(self) -> bool:
        return self.n_in == 0 and self.n_out == 0

    # -- equality is graph isomorphism ----------------------------------

    def canonical_key(self):
        if self._key is None:
            from .canon import certificate
            self._key = certificate(self)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        if self.arity != other.arity or self.loops != other.loops:
            return False
        if len(self.vertices) != len(other.vertices) or len(self.edges) != len(other.edges):
            return False
        return self.canonical_key() == other.canonical_key()

    def __hash__(self):
        return hash(self.canonical_key())

    def __repr__(self):
        return (f"Diagram({self.n_in}->{self.n_out}, {len(self.vertices)} vertices, "
                f"{len(self.edges)} edges, loops={self.loops})")

    # -- combinator sugar -----------------------------------------------

    def __rshift__(self, other: "Diagram") -> "Diagram":
        return compose(self, other)

    def __matmul__(self, other: "Diagram") -> "Diagram":
        return tensor(self, other)

    def dagger(self) -> "Diagram":
        return dagger(self)


def validate(d: Diagram) -> None:
    """Check the degree-one invariant on every leg and port."""
    seen = {}
    for a, b in d.edges:
        for e in (a, b):
            if e in seen:
                raise DiagramError(f"endpoint {e} used twice")
            seen[e] = True
            if e[0] == "v":
                if not 0 <= e[1] < len(d.vertices):
                    raise DiagramError(f"edge references unknown vertex {e[1]}")
            elif e[0] == "in":
                if not 0 <= e[1] < d.n_in:
                    raise DiagramError(f"input port {e[1]} out of range")
            elif e[0] == "out":
                if not 0 <= e[1] < d.n_out:
                    raise DiagramError(f"output port {e[1]} out of range")
            else:
                raise DiagramError(f"bad endpoint {e!r}")
    for i in range(d.n_in):
        if ("in", i) not in seen:
            raise DiagramError(f"input port {i} is not connected")
    for i in range(d.n_out):
        if ("out", i) not in seen:
            raise DiagramError(f"output port {i} is not connected")
    per_vertex = [[] for _ in d.vertices]
    for e in seen:
        if e[0] == "v":
            per_vertex[e[1]].append(e[2])
    for v, vx in enumerate(d.vertices):
        if vx.kind == WIRE:
            raise DiagramError("pass-through nodes may not survive construction")
        legs = sorted(per_vertex[v])
        if legs != list(range(len(legs))):
            raise DiagramError(f"vertex {v} legs are not contiguous: {legs}")
        if vx.kind == AND and len(legs) != 3:
            raise DiagramError(f"AND vertex {v} has {len(legs)} legs")
    if d.loops < 0:
        raise DiagramError("negative loop count")


# ---------------------------------------------------------------------------
# Builder


class Builder:
    """Mutable scratch space for assembling a diagram wire by wire.

    The builder keeps a *frontier*: the list of dangling endpoints that will
    become the output ports.  Operations consume frontier positions and
    insert new dangling legs.  Pass-through nodes created for cups and for
    plugging in sub-diagrams are spliced out by :meth:`finish`.
    """

    def __init__(self, n_in: int = 0):
        self.vertices: list[Vertex] = []
        self._nlegs: list[int] = []
        self.edges: list = []
        self.front: list = [("in", i) for i in range(n_in)]
        self.n_in = n_in
        self.loops = 0

    @property
    def width(self) -> int:
        return len(self.front)

    def _vertex(self, kind, phase=0) -> int:
        self.vertices.append(Vertex(kind, phase))
        self._nlegs.append(0)
        return len(self.vertices) - 1

    def _leg(self, v, leg=None):
        if leg is None:
            leg = self._nlegs[v]
        self._nlegs[v] = max(self._nlegs[v], leg + 1)
        return ("v", v, leg)

    def _take(self, wires: Sequence[int]) -> list:
        wires = list(wires)
        if len(set(wires)) != len(wires):
            raise DiagramError(f"repeated wire in {wires}")
        for w in wires:
            if not 0 <= w < len(self.front):
                raise DiagramError(f"wire {w} out of range (width {len(self.front)})")
        ends = [self.front[w] for w in wires]
        for w in sorted(wires, reverse=True):
            del self.front[w]
        return ends

    def _put(self, ends: list, at: int | None, wires: Sequence[int]):
        if at is None:
            at = min(wires) if wires else len(self.front)
        if not 0 <= at <= len(self.front):
            raise DiagramError(f"insert position {at} out of range")
        self.front[at:at] = ends

    def spider(self, kind: str, phase: int = 0, wires: Sequence[int] = (),
               n_out: int = 0, at: int | None = None) -> int:
        """Attach a spider to frontier ``wires`` and emit ``n_out`` legs."""
        v = self._vertex(kind, phase)
        for e in self._take(wires):
            self.edges.append((e, self._leg(v)))
        self._put([self._leg(v) for _ in range(n_out)], at, wires)
        return v

    def and_(self, i: int, j: int, at: int | None = None) -> int:
        v = self._vertex(AND)
        a, b = self._take([i, j])
        self.edges.append((a, self._leg(v, 1)))
        self.edges.append((b, self._leg(v, 2)))
        self._put([self._leg(v, APEX)], at, [i, j])
        return v

    def and_dagger(self, i: int, at: int | None = None) -> int:
        v = self._vertex(AND)
        (a,) = self._take([i])
        self.edges.append((a, self._leg(v, APEX)))
        self._put([self._leg(v, 1), self._leg(v, 2)], at, [i])
        return v

    def and_legs(self, consume: dict, emit: Sequence[int], at: int | None = None) -> int:
        """AND vertex with an arbitrary split of its legs.

        ``consume`` maps leg index -> frontier wire; ``emit`` lists the legs
        that become new frontier wires, in order.
        """
        if sorted(list(consume) + list(emit)) != [0, 1, 2]:
            raise DiagramError("AND legs must be split exactly once")
        v = self._vertex(AND)
        legs = list(consume)
        wires = [consume[l] for l in legs]
        for leg, e in zip(legs, self._take(wires)):
            self.edges.append((e, self._leg(v, leg)))
        self._put([self._leg(v, l) for l in emit], at, wires)
        return v

    def tap(self, kind: str, wire: int, phase: int = 0) -> int:
        """Put a spider on frontier ``wire``; its further legs come from :meth:`new_leg`."""
        v = self._vertex(kind, phase)
        self.edges.append((self.front[wire], self._leg(v)))
        self.front[wire] = self._leg(v)
        return v

    def new_leg(self, v: int, leg: int | None = None):
        return self._leg(v, leg)

    def connect(self, a, b):
        self.edges.append((a, b))

    def cup(self, at: int | None = None):
        w = self._vertex(WIRE)
        self._put([self._leg(w, 0), self._leg(w, 1)], at, [])

    def cap(self, i: int, j: int):
        a, b = self._take([i, j])
        self.edges.append((a, b))

    def swap(self, i: int):
        self.front[i], self.front[i + 1] = self.front[i + 1], self.front[i]

    def permute(self, perm: Sequence[int]):
        """New frontier position ``k`` takes old position ``perm[k]``."""
        if sorted(perm) != list(range(len(self.front))):
            raise DiagramError(f"not a permutation of the frontier: {perm}")
        self.front = [self.front[p] for p in perm]

    def scalar_loops(self, k: int):
        self.loops += k

    def plug(self, d: Diagram, wires: Sequence[int] | None = None, at: int | None = None):
        """Feed frontier ``wires`` into ``d``'s inputs; ``d``'s outputs join the frontier."""
        if wires is None:
            wires = range(len(self.front))
        wires = list(wires)
        if len(wires) != d.n_in:
            raise DiagramError(f"plugging a {d.n_in}-input diagram into {len(wires)} wires")
        base = len(self.vertices)
        for vx in d.vertices:
            self.vertices.append(vx)
            self._nlegs.append(0)
        for v, c in enumerate(d.leg_counts()):
            self._nlegs[base + v] = c
        ins = self._take(wires)
        in_nodes, out_nodes = [], []
        for e in ins:
            w = self._vertex(WIRE)
            self.edges.append((e, self._leg(w, 0)))
            in_nodes.append(("v", w, 1))
            self._leg(w, 1)
        outs = []
        for _ in range(d.n_out):
            w = self._vertex(WIRE)
            out_nodes.append(("v", w, 0))
            self._leg(w, 0)
            outs.append(self._leg(w, 1))

        def tr(e):
            if e[0] == "v":
                return ("v", base + e[1], e[2])
            if e[0] == "in":
                return in_nodes[e[1]]
            return out_nodes[e[1]]

        for a, b in d.edges:
            self.edges.append((tr(a), tr(b)))
        self.loops += d.loops
        self._put(outs, at, wires)

    def finish(self) -> Diagram:
        edges = list(self.edges)
        for i, e in enumerate(self.front):
            edges.append((e, ("out", i)))
        vertices, edges, loops = _splice(self.vertices, edges, self.loops)
        return Diagram(vertices, edges, self.n_in, len(self.front), loops)


def _splice(vertices, edges, loops):
    """Remove pass-through nodes and compact vertex ids."""
    partner = {}
    for a, b in edges:
        if a in partner or b in partner:
            raise DiagramError(f"endpoint used twice while splicing: {a} {b}")
        partner[a] = b
        partner[b] = a
    for w, vx in enumerate(vertices):
        if vx.kind != WIRE:
            continue
        l0, l1 = ("v", w, 0), ("v", w, 1)
        p0, p1 = partner.pop(l0), partner.pop(l1)
        if p0 == l1:
            loops += 1
            continue
        partner[p0] = p1
        partner[p1] = p0
    remap, kept = {}, []
    for v, vx in enumerate(vertices):
        if vx.kind != WIRE:
            remap[v] = len(kept)
            kept.append(vx)

    def tr(e):
        return ("v", remap[e[1]], e[2]) if e[0] == "v" else e

    out = set()
    for a, b in partner.items():
        out.add(_norm_edge(tr(a), tr(b)))
    return kept, sorted(out), loops


# ---------------------------------------------------------------------------
# Combinators


def compose(f: Diagram, g: Diagram) -> Diagram:
    """Sequential composition: ``f`` then ``g``."""
    if f.n_out != g.n_in:
        raise DiagramError(f"cannot compose {f.n_in}->{f.n_out} with {g.n_in}->{g.n_out}")
    b = Builder(f.n_in)
    b.plug(f)
    b.plug(g)
    return b.finish()


def tensor(f: Diagram, g: Diagram) -> Diagram:
    """Parallel composition, ``g`` below ``f``."""
    b = Builder(f.n_in + g.n_in)
    b.plug(f, range(f.n_in), at=0)
    b.plug(g, range(f.n_out, f.n_out + g.n_in), at=f.n_out)
    return b.finish()


def seq(*ds: Diagram) -> Diagram:
    out = ds[0]
    for d in ds[1:]:
        out = compose(out, d)
    return out


def par(*ds: Diagram) -> Diagram:
    out = identity(0)
    for d in ds:
        out = tensor(out, d)
    return out


def dagger(d: Diagram) -> Diagram:
    """Swap the input and output boundaries; vertices are untouched."""
    flip = {"in": "out", "out": "in"}

    def tr(e):
        return e if e[0] == "v" else (flip[e[0]], e[1])

    return Diagram(d.vertices, [(tr(a), tr(b)) for a, b in d.edges],
                   d.n_out, d.n_in, d.loops, check=False)


def bend(d: Diagram, wire: int) -> Diagram:
    """Exchange input ``wire`` and output ``wire`` through the compact structure.

    Used for the partial transpose ("mate") of a map on one wire.
    """
    if not (wire < d.n_in and wire < d.n_out):
        raise DiagramError("bend needs the wire on both sides")

    def tr(e):
        if e == ("in", wire):
            return ("out", wire)
        if e == ("out", wire):
            return ("in", wire)
        return e

    return Diagram(d.vertices, [(tr(a), tr(b)) for a, b in d.edges],
                   d.n_in, d.n_out, d.loops)


def scalar_loops(k: int) -> Diagram:
    return Diagram((), (), 0, 0, k)


# ---------------------------------------------------------------------------
# Generators


def z(n: int, m: int, phase: int = 0) -> Diagram:
    return _spider(Z, n, m, phase)


def x(n: int, m: int) -> Diagram:
    return _spider(X, n, m, 0)


def _spider(kind, n, m, phase):
    if n < 0 or m < 0:
        raise DiagramError("negative arity")
    edges = [(("in", i), ("v", 0, i)) for i in range(n)]
    edges += [(("v", 0, n + j), ("out", j)) for j in range(m)]
    return Diagram([Vertex(kind, phase)], edges, n, m)


def and_() -> Diagram:
    edges = [(("in", 0), ("v", 0, 1)), (("in", 1), ("v", 0, 2)), (("v", 0, APEX), ("out", 0))]
    return Diagram([Vertex(AND)], edges, 2, 1)


def identity(n: int = 1) -> Diagram:
    if n < 0:
        raise DiagramError("negative arity")
    return Diagram((), [(("in", i), ("out", i)) for i in range(n)], n, n)


def swap() -> Diagram:
    return Diagram((), [(("in", 0), ("out", 1)), (("in", 1), ("out", 0))], 2, 2)


def cup() -> Diagram:
    return Diagram((), [(("out", 0), ("out", 1))], 0, 2)


def cap() -> Diagram:
    return Diagram((), [(("in", 0), ("in", 1))], 2, 0)


def permutation(perm: Sequence[int]) -> Diagram:
    """Wire permutation sending input ``i`` to output ``perm[i]``."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise DiagramError(f"not a permutation: {perm}")
    return Diagram((), [(("in", i), ("out", perm[i])) for i in range(n)], n, n)


def _parse_phase(p) -> int:
    if p in (0, "0"):
        return 0
    if p in (1, "1", "pi", "π"):
        return 1
    raise DiagramError(f"phase must be 0 or pi, got {p!r}")


PRIMITIVES = ("z", "x", "and", "id", "swap", "cup", "cap")


def gen(name: str, *params) -> Diagram:
    """Primitive generator by name: z(n, m, phase), x(n, m), and, id(n), swap, cup, cap."""
    try:
        if name == "z":
            n, m, *rest = params
            return z(int(n), int(m), _parse_phase(rest[0] if rest else 0))
        if name == "x":
            n, m = params
            return x(int(n), int(m))
        if name == "and":
            return and_()
        if name == "id":
            return identity(int(params[0]) if params else 1)
        if name == "swap":
            return swap()
        if name == "cup":
            return cup()
        if name == "cap":
            return cap()
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DiagramError):
            raise
        raise DiagramError(f"bad parameters for {name}: {params!r}") from exc
    raise DiagramError(f"unknown generator {name!r}")


# ---------------------------------------------------------------------------
# Derived generators


def ket1() -> Diagram:
    return z(0, 1, 1)


def bra1() -> Diagram:
    return z(1, 0, 1)


def plus() -> Diagram:
    return x(0, 1)


def coplus() -> Diagram:
    return x(1, 0)


def tof() -> Diagram:
    """Toffoli image: the two controls are copied into an AND whose output is
    XOR-ed onto the target."""
    b = Builder(3)
    c0 = b.spider(X, wires=[0], n_out=1)
    c1 = b.spider(X, wires=[1], n_out=1)
    a = b._vertex(AND)
    b.edges.append((b._leg(c0), b._leg(a, 1)))
    b.edges.append((b._leg(c1), b._leg(a, 2)))
    t = b.spider(Z, wires=[2], n_out=1)
    b.edges.append((b._leg(a, APEX), b._leg(t)))
    return b.finish()


def cnot() -> Diagram:
    """Toffoli with a |1> preparation and <1| post-selection on a top control."""
    return seq(tensor(ket1(), identity(2)), tof(), tensor(bra1(), identity(2)))


def not_() -> Diagram:
    return seq(tensor(ket1(), identity(1)), cnot(), tensor(bra1(), identity(1)))


def ket0() -> Diagram:
    return compose(ket1(), not_())


def bra0() -> Diagram:
    return compose(not_(), bra1())


def fanout() -> Diagram:
    """|0>-prepared target under a CNOT: the copy map x -> xx."""
    return compose(tensor(identity(1), ket0()), cnot())


def triangle() -> Diagram:
    """1 -> 1 triangle ``[[1, 0], [1, 1]]`` (row = output, column = input).

    Wiring: the input and a bent wire meet in an AND whose result is
    post-selected on 0 by a phase-free Z effect; the bent wire passes a
    Z(pi) on its way to the output.  The relation is ``not (x and not y)``.
    """
    b = Builder(1)
    a = b._vertex(AND)
    (inp,) = b._take([0])
    b.edges.append((inp, b._leg(a, 1)))
    zero = b._vertex(Z, 0)
    b.edges.append((b._leg(a, APEX), b._leg(zero)))
    neg = b._vertex(Z, 1)
    b.edges.append((b._leg(a, 2), b._leg(neg)))
    b.front.append(b._leg(neg))
    return b.finish()


def hbox(n: int) -> Diagram:
    """1 -> 1 H-box with label ``n``: entry ``n`` at (1, 1), 1 elsewhere.

    An AND of the input with a bent wire (which is also the output), then a
    Z(pi), a chain of ``n`` triangles, and a <1| effect.
    """
    if n < 0:
        raise DiagramError("hbox label must be a natural number")
    b = Builder(1)
    a = b._vertex(AND)
    (inp,) = b._take([0])
    b.edges.append((inp, b._leg(a, 1)))
    b.front.append(b._leg(a, APEX))
    b.front.append(b._leg(a, 2))
    b.spider(Z, 1, wires=[0], n_out=1, at=0)
    for _ in range(n):
        b.plug(triangle(), [0], at=0)
    b.spider(Z, 1, wires=[0], n_out=0)
    return b.finish()


DERIVED = {
    "tof": tof,
    "cnot": cnot,
    "not": not_,
    "ket0": ket0,
    "ket1": ket1,
    "bra0": bra0,
    "bra1": bra1,
    "plus": plus,
    "coplus": coplus,
    "fanout": fanout,
    "tri": triangle,
}


def derived(name: str, *params) -> Diagram:
    if name == "hbox":
        if len(params) != 1:
            raise DiagramError("hbox takes one natural number")
        return hbox(int(params[0]))
    try:
        fn = DERIVED[name]
    except KeyError:
        raise DiagramError(f"unknown derived generator {name!r}") from None
    if params:
        raise DiagramError(f"{name} takes no parameters")
    return fn()


def and_n(k: int) -> Diagram:
    """k-ary conjunction as a left-combed tree; the 0-ary case is the unit |1>."""
    if k == 0:
        return ket1()
    b = Builder(k)
    while b.width > 1:
        b.and_(0, 1, at=0)
    return b.finish()
