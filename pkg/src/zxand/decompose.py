"""Layered decomposition of an open graph into generator applications.

The sweep keeps a frontier of dangling wires, labelled by the endpoint
that will eventually consume them.  Each vertex is applied to whichever of
its legs already sit on the frontier (moved to the bottom first) and emits
the rest, so every step acts on the last ``k`` frontier wires.  AND
vertices met with their legs in an unusual orientation are completed with
cups and caps.

Steps:

* ``("perm", p)`` -- new position ``i`` takes old position ``p[i]``
* ``("gen", name, params, k, r)`` -- primitive on the last ``k`` wires,
  leaving ``r`` new wires at the bottom
* ``("cup",)`` -- two new wires at the bottom, joined
* ``("cap",)`` -- join and remove the last two wires
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import AND, APEX, X, Z, Diagram


@dataclass
class Plan:
    n_in: int
    n_out: int
    loops: int
    steps: list = field(default_factory=list)

    def widths(self):
        """Frontier width before each step, plus the final width."""
        w = self.n_in
        out = [w]
        for st in self.steps:
            if st[0] == "gen":
                w = w - st[3] + st[4]
            elif st[0] == "cup":
                w += 2
            elif st[0] == "cap":
                w -= 2
            out.append(w)
        return out


class _Sweep:
    def __init__(self, d: Diagram):
        self.d = d
        self.partner = d.partner
        self.front = [self.partner[("in", i)] for i in range(d.n_in)]
        self.plan = Plan(d.n_in, d.n_out, d.loops)
        self.fresh = 0

    def _bring(self, labels):
        """Move ``labels`` to the bottom of the frontier in the given order."""
        rest = [i for i, l in enumerate(self.front) if l not in labels]
        idx = {l: i for i, l in enumerate(self.front)}
        perm = rest + [idx[l] for l in labels]
        if perm != list(range(len(perm))):
            self.plan.steps.append(("perm", tuple(perm)))
            self.front = [self.front[p] for p in perm]

    def _apply(self, name, params, consumed, emitted):
        self._bring(consumed)
        self.plan.steps.append(("gen", name, params, len(consumed), len(emitted)))
        del self.front[len(self.front) - len(consumed):]
        self.front.extend(emitted)

    def _cap(self, a, b):
        self._bring([a, b])
        self.plan.steps.append(("cap",))
        del self.front[-2:]

    def _label(self):
        self.fresh += 1
        return ("t", self.fresh)

    def run(self) -> Plan:
        d = self.d
        # wires joining two inputs are caps right away
        for i in range(d.n_in):
            p = self.partner[("in", i)]
            if p[0] == "in" and p[1] > i:
                self._cap(p, ("in", i))
        done = [False] * len(d.vertices)
        legs = [[] for _ in d.vertices]
        for e in self.partner:
            if e[0] == "v":
                legs[e[1]].append(e)
        for l in legs:
            l.sort()
        for _ in range(len(d.vertices)):
            on_front = set(self.front)
            best, best_k = None, -1
            for v in range(len(d.vertices)):
                if done[v]:
                    continue
                k = sum(1 for e in legs[v] if e in on_front)
                if k > best_k:
                    best, best_k = v, k
            done[best] = True
            self._vertex(best, legs[best], on_front)
        # wires joining two outputs come from cups
        for j in range(d.n_out):
            p = self.partner[("out", j)]
            if p[0] == "out" and p[1] > j:
                self.plan.steps.append(("cup",))
                self.front.extend([("out", j), p])
        idx = {l: i for i, l in enumerate(self.front)}
        perm = [idx[("out", j)] for j in range(d.n_out)]
        if perm != list(range(len(perm))):
            self.plan.steps.append(("perm", tuple(perm)))
        return self.plan

    def _vertex(self, v, vlegs, on_front):
        vx = self.d.vertices[v]
        consumed = [e for e in vlegs if e in on_front]
        emitted_legs = [e for e in vlegs if e not in on_front]
        # the wire left by an emitted leg is labelled by that edge's far end
        emitted = [self.partner[e] for e in emitted_legs]
        if vx.kind in (Z, X):
            params = (len(consumed), len(emitted)) + ((vx.phase,) if vx.kind == Z else ())
            self._apply(vx.kind, params, consumed, emitted)
            # self-loops come out as two adjacent-edge wires
            for e in emitted_legs:
                p = self.partner[e]
                if p[0] == "v" and p[1] == v and e < p:
                    self._cap(p, e)
            return
        self._and(v, consumed, emitted_legs)

    def _and(self, v, consumed, emitted_legs):
        by_leg = {e[2]: e for e in consumed}
        inputs = []
        for leg in (1, 2):
            if leg in by_leg:
                inputs.append(by_leg[leg])
            else:
                # the input is not available yet: open a cup, feed one end in
                # and leave the other end standing for this leg's edge
                own = ("v", v, leg)
                feed = self._label()
                self.plan.steps.append(("cup",))
                self.front.extend([self.partner[own], feed])
                inputs.append(feed)
        apex = ("v", v, APEX)
        out_label = self.partner[apex] if APEX not in by_leg else self._label()
        self._apply("and", (), inputs, [out_label])
        if APEX in by_leg:
            self._cap(by_leg[APEX], out_label)
        # an input leg looping back to the apex or the other input
        for leg in (1, 2):
            own = ("v", v, leg)
            p = self.partner[own]
            if leg not in by_leg and p[0] == "v" and p[1] == v:
                if p in self.front and own in self.front:
                    self._cap(own, p)


def decompose(d: Diagram) -> Plan:
    return _Sweep(d).run()


def adjacent_swaps(perm) -> list[int]:
    """Positions ``k`` of adjacent swaps (k, k+1) realising ``perm``,
    where new position ``i`` takes old position ``perm[i]``."""
    cur = list(range(len(perm)))
    layers = []
    for i, want in enumerate(perm):
        j = cur.index(want)
        while j > i:
            cur[j - 1], cur[j] = cur[j], cur[j - 1]
            layers.append(j - 1)
            j -= 1
    return layers
