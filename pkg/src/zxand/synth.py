"""Synthesis of a diagram for any natural-number matrix.

A matrix ``M`` is a span: an apex of ``s = sum M`` elements with legs to
the input and output basis.  The apex is indexed by ``K`` bits, summed
over with X-units; the legs and the predicate ``a < s`` are Boolean
functions of those bits, realised through their algebraic normal forms
with X copies, AND trees and Z parities.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import AND, X, Z, Builder, Diagram
from .matsem import NatMatrix


@dataclass(frozen=True)
class TruthTable:
    """Boolean function of ``k`` variables; variable 0 is the high bit of the index."""

    k: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != 1 << self.k:
            raise ValueError(f"truth table over {self.k} variables needs {1 << self.k} values")
        object.__setattr__(self, "values", tuple(int(bool(v)) for v in self.values))

    @classmethod
    def from_function(cls, k, fn):
        return cls(k, tuple(fn(a) for a in range(1 << k)))

    def __call__(self, a: int) -> int:
        return self.values[a]


@dataclass(frozen=True)
class AnfPolynomial:
    """XOR of AND-monomials; each monomial is a frozenset of variable indices."""

    k: int
    monomials: frozenset

    def evaluate(self, a: int) -> int:
        bits = [(a >> (self.k - 1 - j)) & 1 for j in range(self.k)]
        acc = 0
        for mono in self.monomials:
            acc ^= all(bits[j] for j in mono)
        return int(acc)

    def sorted_monomials(self):
        return sorted(self.monomials, key=lambda m: (len(m), sorted(m)))

    def __str__(self):
        if not self.monomials:
            return "0"
        return " + ".join("1" if not m else "".join(f"x{j}" for j in sorted(m))
                          for m in self.sorted_monomials())


def anf(t: TruthTable) -> AnfPolynomial:
    """Algebraic normal form by the subset (Moebius) transform."""
    coef = list(t.values)
    n = 1 << t.k
    step = 1
    while step < n:
        for i in range(n):
            if i & step:
                coef[i] ^= coef[i ^ step]
        step <<= 1
    monos = set()
    for mask, c in enumerate(coef):
        if c:
            monos.add(frozenset(j for j in range(t.k) if mask >> (t.k - 1 - j) & 1))
    return AnfPolynomial(t.k, frozenset(monos))


def anf_to_diagram(polys, k: int | None = None) -> Diagram:
    """``k``-input diagram with one output per polynomial, computing all of them."""
    polys = list(polys)
    if k is None:
        if not polys:
            raise ValueError("give k when there are no polynomials")
        k = polys[0].k
    if any(p.k != k for p in polys):
        raise ValueError("all polynomials must be over the same variables")
    b = Builder(k)
    ins = list(b.front)
    b.front = []
    plan = [p.sorted_monomials() for p in polys]
    uses = [0] * k
    for monos in plan:
        for mono in monos:
            for j in mono:
                uses[j] += 1
    # copies of each variable, handed out in order
    copies = []
    for j in range(k):
        if uses[j] == 1:
            copies.append([ins[j]])
            continue
        v = b._vertex(X)
        b.connect(ins[j], b.new_leg(v))
        copies.append([b.new_leg(v) for _ in range(uses[j])])
    outs = []
    for monos in plan:
        const = 0
        terms = []
        for mono in monos:
            if not mono:
                const ^= 1
                continue
            vs = sorted(mono)
            acc = copies[vs[0]].pop(0)
            for j in vs[1:]:
                a = b._vertex(AND)
                b.connect(acc, b.new_leg(a, 1))
                b.connect(copies[j].pop(0), b.new_leg(a, 2))
                acc = b.new_leg(a, 0)
            terms.append(acc)
        if len(terms) == 1 and not const:
            outs.append(terms[0])
            continue
        v = b._vertex(Z, const)
        for t in terms:
            b.connect(t, b.new_leg(v))
        outs.append(b.new_leg(v))
    b.front = outs
    return b.finish()


def apex_elements(m: NatMatrix):
    """Row-major list of (x, y) pairs, repeated by multiplicity."""
    out = []
    for y in range(m.rows):
        for x in range(m.cols):
            out.extend([(x, y)] * m[y, x])
    return out


def matrix_to_diagram(m: NatMatrix) -> Diagram:
    n, r = m.n_in, m.n_out
    elems = apex_elements(m)
    s = len(elems)
    K = max(s - 1, 0).bit_length()

    def leg_tables(width, pick):
        tables = []
        for i in range(width):
            def bit(a, i=i):
                return (pick(elems[a]) >> (width - 1 - i)) & 1 if a < s else 0
            tables.append(TruthTable.from_function(K, bit))
        return tables

    tables = leg_tables(n, lambda e: e[0]) + leg_tables(r, lambda e: e[1])
    tables.append(TruthTable.from_function(K, lambda a: a < s))
    legs = anf_to_diagram([anf(t) for t in tables], K)
    b = Builder(n)
    for _ in range(K):
        b.spider(X, wires=[], n_out=1, at=b.width)
    b.plug(legs, range(n, n + K))
    b.spider(Z, 1, wires=[b.width - 1])  # keep only a < s
    for i in range(n):
        b.cap(0, n - i)
    return b.finish()


__all__ = ["TruthTable", "AnfPolynomial", "anf", "anf_to_diagram", "apex_elements",
           "matrix_to_diagram"]
