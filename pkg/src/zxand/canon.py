"""Canonical labeling of diagrams.

Diagrams are treated as coloured multigraphs on generator vertices plus
boundary ports.  Each edge end carries a role (spider leg, AND apex, AND
input), so the unordered spider legs and the two interchangeable AND inputs
are symmetries of the graph rather than data.

The canonical form is found by colour refinement followed by an
individualization search for the lexicographically least certificate,
pruned with automorphisms discovered along the way.  Connected components
are canonized independently and sorted, which keeps many identical closed
components from multiplying the search.
"""

from __future__ import annotations

from .diagram import AND, APEX, Diagram, Vertex

ROLE_SPIDER, ROLE_APEX, ROLE_INPUT, ROLE_PORT = 0, 1, 2, 3


def _role(d: Diagram, e) -> int:
    if e[0] != "v":
        return ROLE_PORT
    if d.vertices[e[1]].kind == AND:
        return ROLE_APEX if e[2] == APEX else ROLE_INPUT
    return ROLE_SPIDER


class _Graph:
    """Node-indexed view: vertices first, then inputs, then outputs."""

    def __init__(self, d: Diagram):
        nv = len(d.vertices)
        self.labels = [("v", vx.kind, vx.phase) for vx in d.vertices]
        self.labels += [("in", i) for i in range(d.n_in)]
        self.labels += [("out", i) for i in range(d.n_out)]
        self.n = len(self.labels)

        def node(e):
            if e[0] == "v":
                return e[1]
            if e[0] == "in":
                return nv + e[1]
            return nv + d.n_in + e[1]

        self.edges = []  # (node a, role a, node b, role b)
        self.adj = [[] for _ in range(self.n)]
        for a, b in d.edges:
            na, ra, nb, rb = node(a), _role(d, a), node(b), _role(d, b)
            self.edges.append((na, ra, nb, rb))
            self.adj[na].append((ra, rb, nb))
            self.adj[nb].append((rb, ra, na))

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                u = stack.pop()
                comp.append(u)
                for _, _, w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps


def _refine(g: _Graph, nodes: list[int], colour: dict) -> dict:
    """Equitable refinement of ``colour`` (node -> int) restricted to ``nodes``."""
    ncells = len(set(colour.values()))
    while True:
        sig = {}
        for u in nodes:
            sig[u] = (colour[u], tuple(sorted((r, ro, colour[w]) for r, ro, w in g.adj[u])))
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {u: ranks[sig[u]] for u in nodes}
        k = len(ranks)
        colour = new
        if k == ncells:
            return colour
        ncells = k


def _individualize(colour: dict, v: int) -> dict:
    # shift every colour so v gets a fresh colour just below its cell mates
    out = {}
    for u, c in colour.items():
        out[u] = 2 * c + (0 if u == v else 1) if c == colour[v] else 2 * c + 1
    return out


def _leaf_cert(g: _Graph, nodes, colour):
    order = sorted(nodes, key=lambda u: colour[u])
    rank = {u: i for i, u in enumerate(order)}
    members = set(nodes)
    edges = []
    for a, ra, b, rb in g.edges:
        if a in members:
            p, q = (rank[a], ra), (rank[b], rb)
            edges.append((p, q) if p <= q else (q, p))
    edges.sort()
    return (tuple(g.labels[u] for u in order), tuple(edges)), order


def _twins(g: _Graph, nodes):
    """Pairs of interchangeable nodes: same label, same neighbourhood."""
    groups = {}
    for u in nodes:
        if g.labels[u][0] != "v":
            continue
        nb = tuple(sorted((r, ro, w) for r, ro, w in g.adj[u] if w != u))
        loops = tuple(sorted((r, ro) for r, ro, w in g.adj[u] if w == u))
        groups.setdefault((g.labels[u], nb, loops), []).append(u)
    perms = []
    for members in groups.values():
        for a, b in zip(members, members[1:]):
            perms.append({a: b, b: a})
    return perms


def _orbits(perms, nodes):
    parent = {u: u for u in nodes}

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for p in perms:
        for a, b in p.items():
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return find


def _canon_component(g: _Graph, nodes: list[int]):
    init_sorted = sorted(set(g.labels[u] for u in nodes))
    rank = {lab: i for i, lab in enumerate(init_sorted)}
    colour = _refine(g, nodes, {u: rank[g.labels[u]] for u in nodes})
    autos = _twins(g, nodes)
    best = [None, None]  # certificate, order

    def search(colour, fixed):
        cells = {}
        for u in nodes:
            cells.setdefault(colour[u], []).append(u)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            cert, order = _leaf_cert(g, nodes, colour)
            if best[0] is None or cert < best[0]:
                best[0], best[1] = cert, order
            elif cert == best[0]:
                # two leaves with equal certificates differ by an automorphism
                autos.append({a: b for a, b in zip(best[1], order) if a != b})
            return
        done = []
        for v in sorted(target):
            stab = [p for p in autos if all(p.get(f, f) == f for f in fixed)]
            if done and stab:
                find = _orbits(stab, nodes)
                if any(find(v) == find(w) for w in done):
                    continue
            search(_refine(g, nodes, _individualize(colour, v)), fixed + [v])
            done.append(v)

    search(colour, [])
    return best[0], best[1]


def _canonical(d: Diagram):
    g = _Graph(d)
    parts = []
    for comp in g.components():
        cert, order = _canon_component(g, comp)
        parts.append((cert, order))
    parts.sort(key=lambda p: p[0])
    return g, parts


def certificate(d: Diagram):
    """Hashable value equal for two diagrams iff they are isomorphic."""
    _, parts = _canonical(d)
    return (d.n_in, d.n_out, d.loops, tuple(p[0] for p in parts))


def canonical_form(d: Diagram) -> Diagram:
    """Relabel vertices and legs canonically; isomorphic inputs give equal data."""
    g, parts = _canonical(d)
    nv = len(d.vertices)
    order = [u for _, o in parts for u in o]
    new_id = {}
    vertices = []
    for u in order:
        if u < nv:
            new_id[u] = len(vertices)
            vertices.append(d.vertices[u])
    # re-derive the edge list from the certificate so leg numbers are canonical
    rank = {u: i for i, u in enumerate(order)}
    ordered = []
    for a, ra, b, rb in g.edges:
        p, q = (rank[a], ra, a), (rank[b], rb, b)
        ordered.append((p, q) if p[:2] <= q[:2] else (q, p))
    ordered.sort(key=lambda e: (e[0][:2], e[1][:2]))
    next_leg = [0] * len(vertices)
    and_inputs = [1] * len(vertices)

    def endpoint(node, role):
        if node >= nv:
            k = node - nv
            return ("in", k) if k < d.n_in else ("out", k - d.n_in)
        v = new_id[node]
        if role == ROLE_APEX:
            return ("v", v, APEX)
        if role == ROLE_INPUT:
            leg = and_inputs[v]
            and_inputs[v] += 1
            return ("v", v, leg)
        leg = next_leg[v]
        next_leg[v] += 1
        return ("v", v, leg)

    edges = [(endpoint(p[2], p[1]), endpoint(q[2], q[1])) for p, q in ordered]
    return Diagram(vertices, edges, d.n_in, d.n_out, d.loops)


def relabel(d: Diagram, perm) -> Diagram:
    """Rename vertex ``v`` to ``perm[v]`` (testing aid for label invariance)."""
    vertices: list[Vertex] = [None] * len(d.vertices)
    for v, vx in enumerate(d.vertices):
        vertices[perm[v]] = vx

    def tr(e):
        return ("v", perm[e[1]], e[2]) if e[0] == "v" else e

    return Diagram(vertices, [(tr(a), tr(b)) for a, b in d.edges], d.n_in, d.n_out, d.loops)
