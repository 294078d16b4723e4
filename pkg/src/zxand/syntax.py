"""Text, JSON and DOT serialization of diagrams.

The text form is an s-expression over the generator names, with ``seq`` for
sequential and ``par`` for parallel composition.  Printing goes through the
canonical form, so isomorphic diagrams print identically.
"""

from __future__ import annotations

import json
import re

from . import diagram as dg
from .canon import canonical_form
from .decompose import adjacent_swaps, decompose
from .diagram import AND, APEX, Diagram, DiagramError, Vertex


class ParseError(DiagramError):
    def __init__(self, msg, pos=None):
        self.pos = pos
        super().__init__(f"{msg} at position {pos}" if pos is not None else msg)


_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")


def _tokenize(text):
    pos = 0
    out = []
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError("unexpected character", pos)
            break
        start = m.start(m.lastindex)
        out.append((m.group(m.lastindex), start))
        pos = m.end()
    return out


def _nat(tok, pos):
    if not tok.isdigit():
        raise ParseError(f"expected a natural number, got {tok!r}", pos)
    return int(tok)


def parse(text: str) -> Diagram:
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty input", 0)
    d, i = _term(toks, 0)
    if i != len(toks):
        raise ParseError("trailing input", toks[i][1])
    return d


def _term(toks, i):
    if i >= len(toks):
        raise ParseError("unexpected end of input", toks[-1][1] if toks else 0)
    tok, pos = toks[i]
    if tok != "(":
        raise ParseError(f"expected '(', got {tok!r}", pos)
    if i + 1 >= len(toks):
        raise ParseError("unexpected end of input", pos)
    head, hpos = toks[i + 1]
    i += 2
    if head in ("seq", "par"):
        parts = []
        while i < len(toks) and toks[i][0] != ")":
            d, i = _term(toks, i)
            parts.append(d)
        if i >= len(toks):
            raise ParseError("unclosed parenthesis", pos)
        if len(parts) < 2:
            raise ParseError(f"{head} needs at least two terms", hpos)
        try:
            d = dg.seq(*parts) if head == "seq" else dg.par(*parts)
        except DiagramError as exc:
            raise ParseError(f"arity mismatch in {head}: {exc}", hpos) from None
        return d, i + 1
    args = []
    while i < len(toks) and toks[i][0] not in ("(", ")"):
        args.append(toks[i])
        i += 1
    if i >= len(toks) or toks[i][0] != ")":
        raise ParseError("expected ')'", toks[i][1] if i < len(toks) else pos)
    return _gen(head, hpos, args), i + 1


_ARITY = {"and": 0, "swap": 0, "cup": 0, "cap": 0, "tof": 0, "cnot": 0, "not": 0,
          "ket0": 0, "ket1": 0, "bra0": 0, "bra1": 0, "plus": 0, "coplus": 0,
          "fanout": 0, "tri": 0, "id": 1, "hbox": 1, "x": 2, "z": 3}


def _gen(head, hpos, args):
    if head not in _ARITY:
        raise ParseError(f"unknown symbol {head!r}", hpos)
    if len(args) != _ARITY[head]:
        raise ParseError(f"{head} takes {_ARITY[head]} arguments, got {len(args)}", hpos)
    if head == "z":
        n, m = _nat(*args[0]), _nat(*args[1])
        ph, ppos = args[2]
        if ph not in ("0", "pi"):
            raise ParseError(f"phase must be 0 or pi, got {ph!r}", ppos)
        return dg.z(n, m, 1 if ph == "pi" else 0)
    if head == "x":
        return dg.x(_nat(*args[0]), _nat(*args[1]))
    if head == "id":
        return dg.identity(_nat(*args[0]))
    if head == "hbox":
        return dg.hbox(_nat(*args[0]))
    if head in dg.PRIMITIVES:
        return dg.gen(head)
    return dg.derived(head)


# ---------------------------------------------------------------------------
# printing


def _par(items):
    items = [t for t in items if t is not None]
    if not items:
        return "(id 0)"
    if len(items) == 1:
        return items[0]
    return "(par " + " ".join(items) + ")"


def _ident(k):
    return f"(id {k})" if k else None


def _gen_text(name, params):
    if name == "z":
        n, m, ph = params
        return f"(z {n} {m} {'pi' if ph else '0'})"
    if name == "x":
        return f"(x {params[0]} {params[1]})"
    return f"({name})"


def render(plan) -> str:
    layers = []
    widths = plan.widths()
    if plan.loops:
        circle = "(seq (cup) (cap))"
        layers.append(_par([_ident(plan.n_in)] + [circle] * plan.loops))
    for st, w in zip(plan.steps, widths):
        if st[0] == "perm":
            for k in adjacent_swaps(st[1]):
                layers.append(_par([_ident(k), "(swap)", _ident(w - k - 2)]))
        elif st[0] == "gen":
            _, name, params, k, _r = st
            layers.append(_par([_ident(w - k), _gen_text(name, params)]))
        elif st[0] == "cup":
            layers.append(_par([_ident(w), "(cup)"]))
        elif st[0] == "cap":
            layers.append(_par([_ident(w - 2), "(cap)"]))
    if not layers:
        return f"(id {plan.n_in})"
    if len(layers) == 1:
        return layers[0]
    return "(seq " + " ".join(layers) + ")"


def to_text(d: Diagram) -> str:
    """Deterministic s-expression; a function of the isomorphism class."""
    return render(decompose(canonical_form(d)))


# ---------------------------------------------------------------------------
# JSON graph format


def _ep_json(e):
    if e[0] == "v":
        return {"v": e[1], "leg": e[2]}
    return {"b": e[0], "i": e[1]}


def to_json(d: Diagram) -> str:
    obj = {
        "inputs": list(range(d.n_in)),
        "outputs": list(range(d.n_out)),
        "vertices": [],
        "edges": [[_ep_json(a), _ep_json(b)] for a, b in d.edges],
        "loops": d.loops,
    }
    for v, vx in enumerate(d.vertices):
        item = {"id": v, "kind": vx.kind, "phase": vx.phase}
        if vx.kind == AND:
            item["apex"] = APEX
        obj["vertices"].append(item)
    return json.dumps(obj, sort_keys=True)


def from_json(text: str) -> Diagram:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
    try:
        ids = {}
        vertices = []
        apex_of = {}
        for item in obj["vertices"]:
            kind = item["kind"]
            if kind not in dg.KINDS:
                raise ParseError(f"unknown vertex kind {kind!r}")
            ids[item["id"]] = len(vertices)
            vertices.append(Vertex(kind, int(item.get("phase", 0))))
            if kind == AND:
                apex_of[len(vertices) - 1] = int(item.get("apex", 0))

        def ep(o):
            if "v" in o:
                v = ids[o["v"]]
                leg = int(o["leg"])
                if v in apex_of:
                    # store the apex as leg 0 whatever the file numbers it
                    a = apex_of[v]
                    if leg == a:
                        leg = APEX
                    elif leg == APEX:
                        leg = a
                return ("v", v, leg)
            side = o["b"]
            if side not in ("in", "out"):
                raise ParseError(f"bad boundary side {side!r}")
            return (side, int(o["i"]))

        edges = [(ep(a), ep(b)) for a, b in obj["edges"]]
        return Diagram(vertices, edges, len(obj["inputs"]), len(obj["outputs"]),
                       int(obj.get("loops", 0)))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DiagramError):
            raise
        raise ParseError(f"malformed graph JSON: {exc}") from None


def load(text: str) -> Diagram:
    """Accept either serialization."""
    if text.lstrip().startswith("{"):
        return from_json(text)
    return parse(text)


# ---------------------------------------------------------------------------
# DOT


def to_dot(d: Diagram) -> str:
    lines = ["graph zxand {", "  rankdir=LR;"]
    for i in range(d.n_in):
        lines.append(f'  in{i} [shape=point, xlabel="in {i}"];')
    for i in range(d.n_out):
        lines.append(f'  out{i} [shape=point, xlabel="out {i}"];')
    for v, vx in enumerate(d.vertices):
        if vx.kind == dg.Z:
            style = 'shape=circle, style=filled, fillcolor=gray40, fontcolor=white'
            label = "π" if vx.phase else ""
        elif vx.kind == dg.X:
            style = "shape=circle"
            label = ""
        else:
            style = "shape=triangle"
            label = "&"
        lines.append(f'  v{v} [{style}, label="{label}"];')

    def name(e):
        return f"v{e[1]}" if e[0] == "v" else f"{e[0]}{e[1]}"

    for a, b in d.edges:
        attrs = []
        for e, side in ((a, "tail"), (b, "head")):
            if e[0] == "v" and d.vertices[e[1]].kind == AND and e[2] == APEX:
                attrs.append(f'{side}label="apex"')
        extra = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {name(a)} -- {name(b)}{extra};")
    for k in range(d.loops):
        lines.append(f'  loop{k} [shape=circle, label="", width=0.2];')
    lines.append("}")
    return "\n".join(lines) + "\n"
