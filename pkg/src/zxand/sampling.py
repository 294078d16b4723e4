"""Seeded random diagrams and circuits for property tests and benchmarks."""

from __future__ import annotations

import random

from . import circuit as cc
from . import diagram as dg


def random_diagram(rng: random.Random, n_in=None, n_out=None, max_wires=3,
                   max_vertices=10, allow_cups=True) -> dg.Diagram:
    """A diagram built by stacking random generators on a small frontier."""
    if n_in is None:
        n_in = rng.randint(0, max_wires)
    if n_out is None:
        n_out = rng.randint(0, max_wires)
    b = dg.Builder(n_in)
    budget = rng.randint(0, max_vertices)
    placed = 0
    cap = max(max_wires + 1, 2)
    while placed < budget:
        w = b.width
        choice = rng.random()
        if choice < 0.10 and w >= 2:
            b.swap(rng.randrange(w - 1))
            continue
        if allow_cups and choice < 0.15 and w + 2 <= cap:
            b.cup(at=rng.randint(0, w))
            continue
        if allow_cups and choice < 0.20 and w >= 2:
            i, j = rng.sample(range(w), 2)
            b.cap(i, j)
            continue
        kind = rng.choice([dg.Z, dg.Z, dg.X, dg.X, dg.AND])
        if kind == dg.AND:
            mode = rng.random()
            if mode < 0.6 and w >= 2:
                i, j = rng.sample(range(w), 2)
                b.and_(i, j)
            elif w >= 1 and w + 1 <= cap:
                b.and_dagger(rng.randrange(w))
            else:
                continue
        else:
            k = rng.randint(0, min(w, 2))
            room = cap - (w - k)
            r = rng.randint(0, max(0, min(2, room)))
            wires = rng.sample(range(w), k)
            phase = rng.randint(0, 1) if kind == dg.Z else 0
            b.spider(kind, phase, wires=wires, n_out=r)
        placed += 1
    # fix up the width with random units and counits
    while b.width > n_out:
        kind = rng.choice([dg.Z, dg.X])
        if b.width >= 2 and rng.random() < 0.3:
            i, j = rng.sample(range(b.width), 2)
            b.spider(kind, rng.randint(0, 1) if kind == dg.Z else 0, wires=[i, j], n_out=1)
        else:
            b.spider(kind, rng.randint(0, 1) if kind == dg.Z else 0,
                     wires=[rng.randrange(b.width)], n_out=0)
    while b.width < n_out:
        kind = rng.choice([dg.Z, dg.X])
        b.spider(kind, rng.randint(0, 1) if kind == dg.Z else 0, wires=[], n_out=1,
                 at=rng.randint(0, b.width))
    return b.finish()


def random_circuit(rng: random.Random, max_width=4, max_gates=12, ancillae=True,
                   units=True, n_in=None) -> cc.Circuit:
    """Random circuit over tof/cnot/not/swap, optionally with |1>,<1| and the
    unit/counit."""
    if n_in is None:
        n_in = rng.randint(1 if not (ancillae or units) else 0, max_width)
    w = n_in
    gates = []
    for _ in range(rng.randint(0, max_gates)):
        options = []
        if w >= 1:
            options += ["gcx"] * 4
        if w >= 2:
            options.append("swap")
        if ancillae:
            if w < max_width:
                options.append("ket1")
            if w >= 1:
                options.append("bra1")
        if units:
            if w < max_width:
                options.append("plus")
            if w >= 1:
                options.append("coplus")
        if not options:
            break
        op = rng.choice(options)
        if op == "gcx":
            t = rng.randrange(w)
            others = [k for k in range(w) if k != t]
            ctrls = rng.sample(others, rng.randint(0, min(2, len(others))))
            gates.append(cc.GenCNot(t, frozenset(ctrls)))
        elif op == "swap":
            gates.append(cc.SwapAdj(rng.randrange(w - 1)))
        elif op == "ket1":
            gates.append(cc.Ket1(rng.randint(0, w)))
            w += 1
        elif op == "plus":
            gates.append(cc.XUnit(rng.randint(0, w)))
            w += 1
        elif op == "bra1":
            gates.append(cc.Bra1(rng.randrange(w)))
            w -= 1
        else:
            gates.append(cc.XCounit(rng.randrange(w)))
            w -= 1
    return cc.Circuit(n_in, gates)


def random_matrix(rng: random.Random, max_wires=2, max_entry=3):
    from .matsem import NatMatrix

    n = rng.randint(0, max_wires)
    m = rng.randint(0, max_wires)
    rows = [[rng.randint(0, max_entry) for _ in range(1 << n)] for _ in range(1 << m)]
    return NatMatrix.from_rows(rows)
