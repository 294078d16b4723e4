"""Span semantics: diagrams as multiset spans between finite ordinals.

A span from ``2^n`` to ``2^m`` is stored as the multiplicity of each pair
``(x, y)``; composition sums over the shared middle point, which is the
pullback of the two multisets.  This backend shares no code with the
contraction engine in :mod:`matsem` and serves as its oracle.
"""

from __future__ import annotations

from .decompose import decompose
from .diagram import Diagram
from .matsem import NatMatrix, ResourceError, max_wires


def _is_pow2(k):
    return k > 0 and k & (k - 1) == 0


class Span:
    __slots__ = ("left", "right", "apex")

    def __init__(self, left: int, right: int, apex=None):
        if not (_is_pow2(left) and _is_pow2(right)):
            raise ValueError(f"span ends must be powers of two, got {left}, {right}")
        self.left = left
        self.right = right
        clean = {}
        for (xx, yy), k in (apex or {}).items():
            if not (0 <= xx < left and 0 <= yy < right):
                raise ValueError(f"point ({xx}, {yy}) outside the span ends")
            if k < 0:
                raise ValueError("multiplicities are natural numbers")
            if k:
                clean[(xx, yy)] = k
        self.apex = clean

    def __eq__(self, other):
        if not isinstance(other, Span):
            return NotImplemented
        return (self.left, self.right, self.apex) == (other.left, other.right, other.apex)

    def __repr__(self):
        return f"Span({self.left}->{self.right}, {self.apex})"

    @classmethod
    def identity(cls, size: int):
        return cls(size, size, {(i, i): 1 for i in range(size)})

    def is_partial_iso(self) -> bool:
        xs = [xx for xx, _ in self.apex]
        ys = [yy for _, yy in self.apex]
        return (all(k == 1 for k in self.apex.values())
                and len(set(xs)) == len(xs) and len(set(ys)) == len(ys))


def span_compose(f: Span, g: Span) -> Span:
    """``f`` then ``g``."""
    if f.right != g.left:
        raise ValueError(f"middle objects differ: {f.right} vs {g.left}")
    by_mid = {}
    for (yy, zz), k in g.apex.items():
        by_mid.setdefault(yy, []).append((zz, k))
    out = {}
    for (xx, yy), k in f.apex.items():
        for zz, j in by_mid.get(yy, ()):
            out[(xx, zz)] = out.get((xx, zz), 0) + k * j
    return Span(f.left, g.right, out)


def span_tensor(f: Span, g: Span) -> Span:
    out = {}
    for (x1, y1), k in f.apex.items():
        for (x2, y2), j in g.apex.items():
            out[(x1 * g.left + x2, y1 * g.right + y2)] = k * j
    return Span(f.left * g.left, f.right * g.right, out)


def span_to_matrix(s: Span) -> NatMatrix:
    return NatMatrix(s.right, s.left, {(yy, xx): k for (xx, yy), k in s.apex.items()})


def matrix_to_span(m: NatMatrix) -> Span:
    return Span(m.cols, m.rows, {(xx, yy): k for (yy, xx), k in m.entries.items()})


# ---------------------------------------------------------------------------
# generator spans, written as relations on bit tuples


def _points(n, m, rel):
    out = {}
    for xx in range(1 << n):
        xb = [(xx >> (n - 1 - i)) & 1 for i in range(n)]
        for yy in range(1 << m):
            yb = [(yy >> (m - 1 - i)) & 1 for i in range(m)]
            k = rel(xb, yb)
            if k:
                out[(xx, yy)] = k
    return Span(1 << n, 1 << m, out)


def generator_span(name: str, params=()) -> Span:
    if name == "z":
        n, m, ph = params
        return _points(n, m, lambda a, b: int((sum(a) + sum(b)) % 2 == ph))
    if name == "x":
        n, m = params
        return _points(n, m, lambda a, b: sum(1 for v in (0, 1) if all(t == v for t in a + b)))
    if name == "and":
        return _points(2, 1, lambda a, b: int(b[0] == a[0] * a[1]))
    if name == "cup":
        return _points(0, 2, lambda a, b: int(b[0] == b[1]))
    if name == "cap":
        return _points(2, 0, lambda a, b: int(a[0] == a[1]))
    raise ValueError(f"no span for generator {name!r}")


def _perm_span(perm):
    w = len(perm)
    out = {}
    for xx in range(1 << w):
        bits = [(xx >> (w - 1 - i)) & 1 for i in range(w)]
        yy = 0
        for i in range(w):
            yy = (yy << 1) | bits[perm[i]]
        out[(xx, yy)] = 1
    return Span(1 << w, 1 << w, out)


def eval_span(d: Diagram) -> Span:
    """Fold the layered decomposition of ``d`` with span composition."""
    cap = max_wires()
    if d.n_in + d.n_out > cap:
        raise ResourceError(f"{d.n_in + d.n_out} boundary wires exceed the cap of {cap}")
    plan = decompose(d)
    if max(plan.widths()) > cap:
        raise ResourceError("intermediate frontier exceeds the wire cap")
    acc = Span.identity(1 << d.n_in)
    for st, w in zip(plan.steps, plan.widths()):
        if st[0] == "perm":
            layer = _perm_span(st[1])
        elif st[0] == "gen":
            _, name, params, k, _r = st
            layer = span_tensor(Span.identity(1 << (w - k)), generator_span(name, params))
        elif st[0] == "cup":
            layer = span_tensor(Span.identity(1 << w), generator_span("cup"))
        else:
            layer = span_tensor(Span.identity(1 << (w - 2)), generator_span("cap"))
        acc = span_compose(acc, layer)
    if d.loops:
        acc = Span(acc.left, acc.right, {p: k * 2 ** d.loops for p, k in acc.apex.items()})
    return acc
