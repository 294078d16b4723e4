"""Pattern matching, rule application and a terminating simplifier.

A match sends every pattern vertex to a host vertex of the same kind,
phase and degree, and every pattern edge between vertices to a host edge
between the corresponding legs.  Pattern legs that run to a boundary port
are matched with the remaining host legs; the host edges there are the
cut points where the replacement is glued in.  Bare pattern wires
(port to port) match any host edge away from the matched vertices.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .canon import ROLE_APEX, ROLE_INPUT, ROLE_SPIDER
from .diagram import AND, APEX, WIRE, X, Z, Diagram, Vertex, _splice
from .matsem import ResourceError
from .matsem import eval as mat_eval

# check every step against the matrix semantics (enabled by the test suite)
CHECK_STEPS = os.environ.get("ZXAND_CHECK_REWRITES", "") not in ("", "0")


class RewriteError(RuntimeError):
    pass


def _role(d: Diagram, e):
    if d.vertices[e[1]].kind == AND:
        return ROLE_APEX if e[2] == APEX else ROLE_INPUT
    return ROLE_SPIDER


@dataclass
class Match:
    rule: str
    pattern: Diagram
    replacement: Diagram
    vertex_map: tuple
    leg_map: dict
    boundary_map: dict  # pattern port -> host endpoint outside the match, or ("link", port)
    wire_edges: tuple = ()
    host_key: tuple = field(default=(), repr=False)

    def host_vertices(self):
        return tuple(self.vertex_map)


class _Index:
    """Per-vertex leg lists and pair-wise edge groups of a diagram."""

    def __init__(self, d: Diagram):
        self.d = d
        self.degree = d.leg_counts()
        self.legs = [[] for _ in d.vertices]
        for e in d.partner:
            if e[0] == "v":
                self.legs[e[1]].append(e)
        for lst in self.legs:
            lst.sort()
        self.bucket = {}
        for h, vx in enumerate(d.vertices):
            self.bucket.setdefault((vx, self.degree[h]), []).append(h)
        self.adj = [set() for _ in d.vertices]
        # (u, role_u, v, role_v) -> list of (leg_u, leg_v), vertex edges only
        self.groups = {}
        for a, b in d.edges:
            if a[0] == "v" and b[0] == "v":
                self.adj[a[1]].add(b[1])
                self.adj[b[1]].add(a[1])
                for p, q in ((a, b), (b, a)):
                    key = (p[1], _role(d, p), q[1], _role(d, q))
                    self.groups.setdefault(key, []).append((p, q))
                    if a == b:
                        break

    def count(self, key):
        return len(self.groups.get(key, ()))


def _order(p: Diagram):
    """Pattern vertices in a connected-first order."""
    adj = [set() for _ in p.vertices]
    for a, b in p.edges:
        if a[0] == "v" and b[0] == "v":
            adj[a[1]].add(b[1])
            adj[b[1]].add(a[1])
    seen, order = set(), []
    for s in range(len(p.vertices)):
        if s in seen:
            continue
        queue = [s]
        seen.add(s)
        while queue:
            u = queue.pop(0)
            order.append(u)
            for w in sorted(adj[u]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def _host_key(d: Diagram):
    return (d.vertices, d.edges, d.n_in, d.n_out, d.loops)


def find_matches(rule, host: Diagram, reverse: bool = False, limit: int | None = None,
                 **params) -> list:
    """All matches of a rule's left side (right side if ``reverse``) in ``host``.

    ``rule`` is a :class:`rules.RewriteRule` or a ``(name, lhs, rhs)`` triple.
    """
    if isinstance(rule, tuple):
        name, lhs, rhs = rule
    else:
        name = rule.name
        lhs, rhs = rule.instance(**params)
    if reverse:
        lhs, rhs = rhs, lhs
    return _matches(name, lhs, rhs, host, limit)


def _matches(name, pat: Diagram, rep: Diagram, host: Diagram, limit=None, hi=None):
    if pat.arity != rep.arity:
        raise RewriteError(f"{name}: sides have different arities")
    if hi is None:
        hi = _Index(host)
    pdeg = pat.leg_counts()
    # need[v][u] = {(role at v, role at u): count} over pattern edges v-u
    need = [dict() for _ in pat.vertices]
    for a, b in pat.edges:
        if a[0] == "v" and b[0] == "v":
            ra, rb = _role(pat, a), _role(pat, b)
            pairs = [(a[1], b[1], ra, rb)]
            if a[1] != b[1]:
                pairs.append((b[1], a[1], rb, ra))
            for v, u, rv, ru in pairs:
                cnt = need[v].setdefault(u, {})
                cnt[(rv, ru)] = cnt.get((rv, ru), 0) + 1
    order = _order(pat)
    results = []
    phi = {}
    used = set()

    def compatible(v, h):
        for u, cnt in need[v].items():
            if u == v:
                hu = h
            elif u in phi:
                hu = phi[u]
            else:
                continue
            for (rv, ru), k in cnt.items():
                if hi.count((h, rv, hu, ru)) < k:
                    return False
        return True

    def search(i):
        if limit is not None and len(results) >= limit:
            return
        if i == len(order):
            m = _finish(name, pat, rep, host, hi, dict(phi))
            if m is not None:
                results.extend(m)
            return
        v = order[i]
        cands = hi.bucket.get((pat.vertices[v], pdeg[v]), ())
        anchor = next((u for u in need[v] if u in phi), None)
        if anchor is not None:
            near = hi.adj[phi[anchor]]
            cands = [h for h in cands if h in near]
        for h in cands:
            if h in used or not compatible(v, h):
                continue
            phi[v] = h
            used.add(h)
            search(i + 1)
            used.discard(h)
            del phi[v]

    search(0)
    results.sort(key=lambda m: (m.vertex_map, m.wire_edges))
    return results[:limit] if limit is not None else results


def _finish(name, pat, rep, host, hi, phi):
    """Assign legs for a full vertex map; returns matches (one per bare-wire choice)."""
    leg_map = {}
    taken = set()
    # internal edges, grouped by vertex pair and role pair
    for a, b in pat.edges:
        if not (a[0] == "v" and b[0] == "v"):
            continue
        ha, hb = phi[a[1]], phi[b[1]]
        ra, rb = _role(pat, a), _role(pat, b)
        found = None
        for p, q in hi.groups.get((ha, ra, hb, rb), ()):
            if p not in taken and q not in taken and p != q:
                found = (p, q)
                break
        if found is None:
            return None
        leg_map[a], leg_map[b] = found
        taken.update(found)
    # legs that run to a port take the leftover host legs of the same role
    boundary_leg = {}
    for a, b in pat.edges:
        for leg, port in ((a, b), (b, a)):
            if leg[0] == "v" and port[0] != "v":
                h = phi[leg[1]]
                role = _role(pat, leg)
                cand = [e for e in hi.legs[h] if e not in taken and _role(host, e) == role]
                if not cand:
                    return None
                leg_map[leg] = cand[0]
                taken.add(cand[0])
                boundary_leg[port] = cand[0]
    inv = {}
    for port, hleg in boundary_leg.items():
        inv[hleg] = port
    bmap = {}
    for port, hleg in boundary_leg.items():
        outside = host.partner[hleg]
        if outside in inv:
            bmap[port] = ("link", inv[outside])
        elif outside[0] == "v" and outside in taken:
            return None
        else:
            bmap[port] = outside
    # bare pattern wires may sit on any host edge away from the match
    bare = [(a, b) for a, b in pat.edges if a[0] != "v" and b[0] != "v"]
    matched = set(phi.values())
    free_edges = [e for e in host.edges
                  if not any(x[0] == "v" and x[1] in matched for x in e)] if bare else []
    out = []

    def assign(k, chosen, bm):
        if k == len(bare):
            out.append(Match(name, pat, rep, tuple(phi[v] for v in range(len(pat.vertices))),
                             dict(leg_map), dict(bm), tuple(chosen), _host_key(host)))
            return
        p, q = bare[k]
        for e in free_edges:
            if e in chosen:
                continue
            bm2 = dict(bm)
            bm2[p], bm2[q] = e[0], e[1]
            assign(k + 1, chosen + [e], bm2)

    assign(0, [], bmap)
    return out


def apply(host: Diagram, m: Match, check: bool | None = None) -> Diagram:
    """Replace the matched subdiagram by the match's replacement."""
    if m.host_key != _host_key(host):
        raise RewriteError("stale match: the host diagram has changed")
    removed = set(m.vertex_map)
    drop_edges = set(m.wire_edges)
    vertices = []
    remap = {}
    for v, vx in enumerate(host.vertices):
        if v not in removed:
            remap[v] = len(vertices)
            vertices.append(vx)

    def tr(e):
        return ("v", remap[e[1]], e[2]) if e[0] == "v" else e

    edges = []
    for a, b in host.edges:
        if (a, b) in drop_edges:
            continue
        if (a[0] == "v" and a[1] in removed) or (b[0] == "v" and b[1] in removed):
            continue
        edges.append((tr(a), tr(b)))
    # one pass-through node per port of the pattern
    ports = [("in", i) for i in range(m.pattern.n_in)] + [("out", i) for i in range(m.pattern.n_out)]
    node = {}
    for p in ports:
        node[p] = len(vertices)
        vertices.append(Vertex(WIRE))
    for p in ports:
        tgt = m.boundary_map[p]
        if tgt[0] == "link":
            if p < tgt[1]:
                edges.append((("v", node[p], 0), ("v", node[tgt[1]], 0)))
        else:
            edges.append((("v", node[p], 0), tr(tgt)))
    base = len(vertices)
    vertices.extend(m.replacement.vertices)

    def rtr(e):
        if e[0] == "v":
            return ("v", base + e[1], e[2])
        return ("v", node[e], 1)

    for a, b in m.replacement.edges:
        edges.append((rtr(a), rtr(b)))
    vs, es, loops = _splice(vertices, edges, host.loops + m.replacement.loops - m.pattern.loops)
    out = Diagram(vs, es, host.n_in, host.n_out, loops)
    if check if check is not None else CHECK_STEPS:
        _assert_same(host, out, m.rule)
    return out


def _assert_same(before, after, what):
    try:
        ok = mat_eval(before) == mat_eval(after)
    except ResourceError:
        return
    if not ok:
        raise RewriteError(f"rewrite step {what} changed the semantics")


# ---------------------------------------------------------------------------
# native passes


def _rebuild(vertices: dict, edges: list, d: Diagram, loops: int) -> Diagram:
    """Compact vertex ids and renumber spider legs after surgery."""
    ids = sorted(vertices)
    new_id = {v: i for i, v in enumerate(ids)}
    counter = {v: 0 for v in ids}
    out = []

    def tr(e):
        if e[0] != "v":
            return e
        v = e[1]
        if vertices[v].kind == AND:
            return ("v", new_id[v], e[2])
        leg = counter[v]
        counter[v] += 1
        return ("v", new_id[v], leg)

    for a, b in sorted(edges):
        out.append((tr(a), tr(b)))
    return Diagram([vertices[v] for v in ids], out, d.n_in, d.n_out, loops)


def _neighbours(d: Diagram):
    """(u, v) -> list of edges, vertex pairs with u <= v."""
    pairs = {}
    for a, b in d.edges:
        if a[0] == "v" and b[0] == "v":
            key = (min(a[1], b[1]), max(a[1], b[1]))
            pairs.setdefault(key, []).append((a, b))
    return pairs


def _step_fuse(d: Diagram):
    for (u, v), lst in sorted(_neighbours(d).items()):
        if u == v:
            continue
        ku, kv = d.vertices[u], d.vertices[v]
        if ku.kind != kv.kind or ku.kind not in (Z, X):
            continue
        verts = {i: vx for i, vx in enumerate(d.vertices) if i != v}
        verts[u] = Vertex(ku.kind, ku.phase ^ kv.phase)
        drop = {lst[0]} if ku.kind == Z else set(lst)
        edges = []
        for a, b in d.edges:
            if (a, b) in drop:
                continue
            a = ("v", u, a[2] + 1000) if a[0] == "v" and a[1] == v else a
            b = ("v", u, b[2] + 1000) if b[0] == "v" and b[1] == v else b
            edges.append((a, b))
        name = "fuse-z" if ku.kind == Z else "fuse-x"
        return name, (u, v), _rebuild(verts, edges, d, d.loops)
    return None


def _step_self_loop(d: Diagram):
    for a, b in d.edges:
        if a[0] == "v" and b[0] == "v" and a[1] == b[1]:
            v = a[1]
            vx = d.vertices[v]
            if vx.kind == AND:
                continue
            deg = d.leg_counts()[v]
            if vx.kind == X and deg == 2:
                continue  # a lone X loop is the scalar 2; the identity pass turns it into a circle
            verts = dict(enumerate(d.vertices))
            edges = [e for e in d.edges if e != (a, b)]
            extra = 1 if vx.kind == Z else 0
            return f"self-loop-{vx.kind}", (v,), _rebuild(verts, edges, d, d.loops + extra)
    return None


def _step_identity(d: Diagram):
    deg = d.leg_counts()
    for v, vx in enumerate(d.vertices):
        if deg[v] != 2 or vx.kind == AND or (vx.kind == Z and vx.phase):
            continue
        legs = [e for e in d.partner if e[0] == "v" and e[1] == v]
        p, q = (d.partner[e] for e in legs)
        verts = {i: w for i, w in enumerate(d.vertices) if i != v}
        edges = [e for e in d.edges if not any(x[0] == "v" and x[1] == v for x in e)]
        loops = d.loops
        if p[0] == "v" and p[1] == v:
            loops += 1  # a spider on a closed loop is a circle
        else:
            edges.append((p, q))
        return f"identity-{vx.kind}", (v,), _rebuild(verts, edges, d, loops)
    return None


def _step_hopf(d: Diagram):
    for (u, v), lst in sorted(_neighbours(d).items()):
        if u == v or len(lst) < 2:
            continue
        kinds = {d.vertices[u].kind, d.vertices[v].kind}
        if kinds != {Z, X}:
            continue
        drop = set(lst[:2])
        verts = dict(enumerate(d.vertices))
        edges = [e for e in d.edges if e not in drop]
        return "hopf", (u, v), _rebuild(verts, edges, d, d.loops)
    return None


def _step_scalar(d: Diagram):
    deg = d.leg_counts()
    for v, vx in enumerate(d.vertices):
        if deg[v]:
            continue
        if vx.kind == Z and vx.phase == 0:
            name, extra = "blackdot", 0
        elif vx.kind == X:
            name, extra = "x-scalar", 1
        else:
            continue
        verts = {i: w for i, w in enumerate(d.vertices) if i != v}
        return name, (v,), _rebuild(verts, list(d.edges), d, d.loops + extra)
    return None


NATIVE = (_step_fuse, _step_self_loop, _step_identity, _step_hopf, _step_scalar)

# (rule name, apply right-to-left) tried after the native passes
RULE_PASSES = (
    ("ZXA.7", False),
    ("lemma.phasefusion-equiv", False),
    ("ZXA.10", False),
    ("ZXA.13", False),
    ("ZXA.14", False),
    ("ZXA.6", False),
    ("ZXA.15", True),
    ("ZXA.16", False),
    ("lemma.oldaxiom", False),
)


def _rule_table():
    from .rules import rule_by_name

    table = []
    for name, rev in RULE_PASSES:
        r = rule_by_name(name)
        lhs, rhs = r.instance()
        if rev:
            lhs, rhs = rhs, lhs
        table.append((name + ("<-" if rev else ""), lhs, rhs))
    return table


_TABLE = None


def simplify(d: Diagram, max_steps: int = 100000, check: bool | None = None):
    """Rewrite until no pass applies.  Returns (diagram, trace lines)."""
    global _TABLE
    if _TABLE is None:
        _TABLE = _rule_table()
    check = CHECK_STEPS if check is None else check
    trace = []
    for _ in range(max_steps):
        before = d.measure()
        step = None
        for fn in NATIVE:
            res = fn(d)
            if res is not None:
                step = res
                break
        if step is None:
            hi = _Index(d)
            for name, lhs, rhs in _TABLE:
                for m in _matches(name, lhs, rhs, d, None, hi):
                    new = apply(d, m, check=False)
                    if new.measure() < before:
                        step = (name, m.vertex_map, new)
                        break
                if step:
                    break
        if step is None:
            return d, trace
        name, where, new = step
        after = new.measure()
        if not after < before:
            raise RewriteError(f"{name} did not decrease the measure")
        if check:
            _assert_same(d, new, name)
        trace.append(f"{name} {list(where)} {before} -> {after}")
        d = new
    raise RewriteError("step limit reached")


def is_simplified(d: Diagram) -> bool:
    """No like-coloured neighbours, no spider self-loops, no Z-unit/X-counit dots."""
    for (u, v), _ in _neighbours(d).items():
        ku, kv = d.vertices[u], d.vertices[v]
        if u == v and ku.kind in (Z, X):
            return False
        if u != v and ku.kind == kv.kind and ku.kind in (Z, X):
            return False
    deg = d.leg_counts()
    for (u, v), _ in _neighbours(d).items():
        if u == v:
            continue
        a, b = d.vertices[u], d.vertices[v]
        if {a.kind, b.kind} == {Z, X} and deg[u] == 1 and deg[v] == 1:
            return False
    return True
