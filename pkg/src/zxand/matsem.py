"""Exact matrix semantics over the natural numbers.

Basis convention: wire 0 is the most significant bit of a basis index, and
a diagram with ``n`` inputs and ``m`` outputs denotes a ``2^m x 2^n``
matrix ``M[y][x]``.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from itertools import product

from . import kernel
from .diagram import AND, APEX, X, Z, Diagram, DiagramError

DEFAULT_MAX_WIRES = 24


class ResourceError(RuntimeError):
    """A diagram exceeds the evaluation guardrails."""


def max_wires() -> int:
    raw = os.environ.get("ZXAND_MAX_WIRES")
    return int(raw) if raw else DEFAULT_MAX_WIRES


def _is_pow2(k: int) -> bool:
    return k > 0 and k & (k - 1) == 0


def _log2(k: int) -> int:
    return k.bit_length() - 1


class NatMatrix:
    """Sparse ``rows x cols`` matrix of naturals; both sizes are powers of two."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries=None):
        if not (_is_pow2(rows) and _is_pow2(cols)):
            raise ValueError(f"dimensions must be powers of two, got {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        clean = {}
        for (r, c), v in (entries or {}).items():
            if v < 0:
                raise ValueError("entries must be natural numbers")
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r}, {c}) outside {rows}x{cols}")
            if v:
                clean[(r, c)] = v
        self.entries = clean

    @property
    def n_in(self) -> int:
        return _log2(self.cols)

    @property
    def n_out(self) -> int:
        return _log2(self.rows)

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        ents = {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v}
        return cls(len(rows), ncols, ents)

    @classmethod
    def identity(cls, wires: int = 1):
        k = 1 << wires
        return cls(k, k, {(i, i): 1 for i in range(k)})

    @classmethod
    def scalar(cls, v: int):
        return cls(1, 1, {(0, 0): v})

    def __getitem__(self, rc):
        return self.entries.get(rc, 0)

    def to_rows(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def __eq__(self, other):
        if not isinstance(other, NatMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self):
        if self.rows * self.cols <= 64:
            return f"NatMatrix({self.to_rows()})"
        return f"NatMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    def __matmul__(self, other: "NatMatrix") -> "NatMatrix":
        """Ordinary matrix product ``self * other``."""
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                out[(r, c)] = out.get((r, c), 0) + v * w
        return NatMatrix(self.rows, other.cols, out)

    def then(self, other: "NatMatrix") -> "NatMatrix":
        """Diagrammatic composition: apply ``self`` first."""
        return other @ self

    def kron(self, other: "NatMatrix") -> "NatMatrix":
        out = {}
        for (r1, c1), v in self.entries.items():
            for (r2, c2), w in other.entries.items():
                out[(r1 * other.rows + r2, c1 * other.cols + c2)] = v * w
        return NatMatrix(self.rows * other.rows, self.cols * other.cols, out)

    def transpose(self) -> "NatMatrix":
        return NatMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def scale(self, k: int) -> "NatMatrix":
        return NatMatrix(self.rows, self.cols, {rc: v * k for rc, v in self.entries.items()})

    def scalar_value(self) -> int:
        if (self.rows, self.cols) != (1, 1):
            raise ValueError("not a scalar")
        return self[(0, 0)]

    # text format -----------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines += [" ".join(str(v) for v in row) for row in self.to_rows()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "NatMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        try:
            rows, cols = (int(t) for t in lines[0].split())
        except ValueError:
            raise ValueError("first line must be 'rows cols'") from None
        if not (_is_pow2(rows) and _is_pow2(cols)):
            raise ValueError("rows and cols must be powers of two")
        if len(lines) != rows + 1:
            raise ValueError(f"expected {rows} rows, got {len(lines) - 1}")
        data = []
        for i, ln in enumerate(lines[1:]):
            vals = ln.split()
            if len(vals) != cols:
                raise ValueError(f"row {i} has {len(vals)} entries, expected {cols}")
            try:
                row = [int(t) for t in vals]
            except ValueError:
                raise ValueError(f"row {i} contains a non-integer") from None
            if any(v < 0 for v in row):
                raise ValueError(f"row {i} contains a negative entry")
            data.append(row)
        return cls.from_rows(data)


# ---------------------------------------------------------------------------
# generator matrices, straight from the closed-form rules


def _bits(k: int, width: int):
    return [(k >> (width - 1 - i)) & 1 for i in range(width)]


def _parity(k: int) -> int:
    return bin(k).count("1") & 1


def z_matrix(n: int, m: int, phase: int = 0) -> NatMatrix:
    ents = {}
    for xx in range(1 << n):
        for yy in range(1 << m):
            if _parity(xx) ^ _parity(yy) == phase:
                ents[(yy, xx)] = 1
    return NatMatrix(1 << m, 1 << n, ents)


def x_matrix(n: int, m: int) -> NatMatrix:
    ents = {}
    for v in (0, 1):
        xx = ((1 << n) - 1) if v else 0
        yy = ((1 << m) - 1) if v else 0
        ents[(yy, xx)] = ents.get((yy, xx), 0) + 1
    return NatMatrix(1 << m, 1 << n, ents)


def and_matrix() -> NatMatrix:
    return NatMatrix(2, 4, {(((xx >> 1) & xx) & 1, xx): 1 for xx in range(4)})


def gen_matrix(kind: str, *params) -> NatMatrix:
    """Matrix of a primitive generator, built from its defining rule."""
    from .diagram import _parse_phase

    if kind == "z":
        n, m, *rest = params
        return z_matrix(int(n), int(m), _parse_phase(rest[0] if rest else 0))
    if kind == "x":
        n, m = params
        return x_matrix(int(n), int(m))
    if kind == "and":
        return and_matrix()
    if kind == "id":
        return NatMatrix.identity(int(params[0]) if params else 1)
    if kind == "swap":
        return NatMatrix(4, 4, {(0, 0): 1, (2, 1): 1, (1, 2): 1, (3, 3): 1})
    if kind == "cup":
        return NatMatrix(4, 1, {(0, 0): 1, (3, 0): 1})
    if kind == "cap":
        return NatMatrix(1, 4, {(0, 0): 1, (0, 3): 1})
    raise DiagramError(f"unknown generator {kind!r}")


# ---------------------------------------------------------------------------
# contraction


class _ParityUF:
    """Union-find over binary variables with XOR offsets to the root."""

    def __init__(self):
        self.parent = []
        self.offset = []

    def new(self) -> int:
        self.parent.append(len(self.parent))
        self.offset.append(0)
        return len(self.parent) - 1

    def find(self, a):
        path = []
        while self.parent[a] != a:
            path.append(a)
            a = self.parent[a]
        root = a
        # path compression, accumulating offsets from the top down
        acc = 0
        for node in reversed(path):
            acc ^= self.offset[node]
            self.offset[node] = acc
            self.parent[node] = root
        return root

    def resolve(self, a):
        r = self.find(a)
        return r, (self.offset[a] if a != r else 0)

    def union(self, a, b, parity) -> bool:
        """Impose ``a XOR b == parity``; False on contradiction."""
        ra, oa = self.resolve(a)
        rb, ob = self.resolve(b)
        if ra == rb:
            return (oa ^ ob) == parity
        self.parent[rb] = ra
        self.offset[rb] = oa ^ ob ^ parity
        return True


def _factor(legs, pred):
    """Table over the distinct roots in ``legs`` where ``pred`` holds.

    ``legs`` is a list of (root, offset); ``pred`` sees leg values.
    """
    scope = tuple(sorted(set(r for r, _ in legs)))
    pos = {r: i for i, r in enumerate(scope)}
    table = {}
    for mask in range(1 << len(scope)):
        vals = [((mask >> pos[r]) & 1) ^ o for r, o in legs]
        if pred(vals):
            table[mask] = 1
    return scope, table


def _parity_factors(uf, roots, target):
    """XOR of ``roots`` equals ``target`` as a chain of small factors."""
    if len(roots) <= 3:
        return [_factor([(r, 0) for r in roots], lambda v: (sum(v) & 1) == target)]
    out = []
    acc = roots[0]
    for r in roots[1:-2]:
        t = uf.new()
        out.append(_factor([(acc, 0), (r, 0), (t, 0)], lambda v: v[0] ^ v[1] == v[2]))
        acc = t
    a, b = roots[-2], roots[-1]
    out.append(_factor([(acc, 0), (a, 0), (b, 0)], lambda v: (v[0] ^ v[1] ^ v[2]) == target))
    return out


class _Zero(Exception):
    pass


def _build(d: Diagram):
    """Variables, factors and boundary bindings for ``d``."""
    uf = _ParityUF()
    edge_var = {}
    for a, b in d.edges:
        edge_var[a] = edge_var[b] = uf.new()

    legs_of = [[] for _ in d.vertices]
    for e, var in edge_var.items():
        if e[0] == "v":
            legs_of[e[1]].append((e[2], var))
    for lst in legs_of:
        lst.sort()

    pending_z = []
    ands = []
    for v, vx in enumerate(d.vertices):
        vars_ = [var for _, var in legs_of[v]]
        if vx.kind == X:
            hub = uf.new()
            for var in vars_:
                if not uf.union(hub, var, 0):
                    raise _Zero
        elif vx.kind == Z:
            if len(vars_) == 2 and vars_[0] != vars_[1]:
                if not uf.union(vars_[0], vars_[1], vx.phase):
                    raise _Zero
            else:
                pending_z.append((vars_, vx.phase))
        elif vx.kind == AND:
            ands.append(vars_)

    factors = []
    for vars_, phase in pending_z:
        target = phase
        count = {}
        for var in vars_:
            r, o = uf.resolve(var)
            target ^= o
            count[r] = count.get(r, 0) ^ 1
        roots = sorted(r for r, odd in count.items() if odd)
        if not roots:
            if target:
                raise _Zero
            continue
        factors.extend(_parity_factors(uf, roots, target))
    for vars_ in ands:
        legs = [uf.resolve(var) for var in vars_]
        factors.append(_factor(legs, lambda val: val[0] == (val[1] & val[2])))

    # every X hub and edge variable lives in the union-find; all roots matter
    boundary = []
    for i in range(d.n_in):
        boundary.append(uf.resolve(edge_var[("in", i)]))
    for i in range(d.n_out):
        boundary.append(uf.resolve(edge_var[("out", i)]))
    roots = set(uf.find(v) for v in range(len(uf.parent)))
    return factors, boundary, roots


def _combine(fa, fb):
    sa, ta = fa
    sb, tb = fb
    scope = tuple(sorted(set(sa) | set(sb)))
    if len(scope) > 62:
        raise ResourceError("intermediate factor scope too wide")
    pos = {r: i for i, r in enumerate(scope)}
    shared = 0
    for r in set(sa) & set(sb):
        shared |= 1 << pos[r]
    a = kernel.scatter(ta, [pos[r] for r in sa])
    b = kernel.scatter(tb, [pos[r] for r in sb])
    return scope, kernel.join(a, b, shared)


def _eliminate(factors, keep):
    """Sum out every variable not in ``keep``; return remaining factors and
    the multiplicative constant from fully contracted pieces."""
    factors = list(factors)
    const = 1
    holders = {}
    for i, (scope, _) in enumerate(factors):
        for r in scope:
            holders.setdefault(r, set()).add(i)
    alive = set(range(len(factors)))
    todo = set(r for r in holders if r not in keep)
    while todo:
        best, best_cost = None, None
        for r in todo:
            sc = set()
            for i in holders[r]:
                sc.update(factors[i][0])
            cost = (len(sc), r)
            if best_cost is None or cost < best_cost:
                best, best_cost = r, cost
        r = best
        todo.discard(r)
        idx = sorted(holders.pop(r))
        acc = factors[idx[0]]
        for i in idx[1:]:
            acc = _combine(acc, factors[i])
            if not acc[1]:
                raise _Zero
        scope, table = acc
        bit = scope.index(r)
        table = kernel.marginalize(table, bit)
        scope = scope[:bit] + scope[bit + 1:]
        for i in idx:
            alive.discard(i)
            for s in factors[i][0]:
                if s != r:
                    holders[s].discard(i)
        if not table:
            raise _Zero
        if not scope:
            const *= table[0]
            continue
        factors.append((scope, table))
        new = len(factors) - 1
        alive.add(new)
        for s in scope:
            holders[s].add(new)
    rest = [factors[i] for i in sorted(alive)]
    return rest, const


def eval(d: Diagram) -> NatMatrix:  # noqa: A001 - mirrors the semantic bracket
    """Exact ``2^m x 2^n`` matrix of ``d``."""
    cap = max_wires()
    if d.n_in + d.n_out > cap:
        raise ResourceError(f"{d.n_in + d.n_out} boundary wires exceed the cap of {cap}")
    rows, cols = 1 << d.n_out, 1 << d.n_in
    try:
        factors, boundary, roots = _build(d)
        keep = set(r for r, _ in boundary)
        covered = set()
        for scope, table in factors:
            if not table:
                raise _Zero
            covered.update(scope)
        free_internal = sum(1 for r in roots if r not in covered and r not in keep)
        rest, const = _eliminate(factors, keep)
    except _Zero:
        return NatMatrix(rows, cols)
    const *= 2 ** (free_internal + d.loops)

    acc = ((), {0: 1})
    for f in rest:
        acc = _combine(acc, f)
        if not acc[1]:
            return NatMatrix(rows, cols)
    scope, table = acc
    free_b = sorted(keep - set(scope))
    pos = {r: i for i, r in enumerate(scope)}
    n = d.n_in
    ents = {}
    for mask, val in table.items():
        for extra in product((0, 1), repeat=len(free_b)):
            value = dict(zip(free_b, extra))
            xx = yy = 0
            for k, (r, o) in enumerate(boundary):
                bit = (value[r] if r in value else (mask >> pos[r]) & 1) ^ o
                if k < n:
                    xx = (xx << 1) | bit
                else:
                    yy = (yy << 1) | bit
            ents[(yy, xx)] = ents.get((yy, xx), 0) + val * const
    return NatMatrix(rows, cols, ents)


def decide_eq(a: Diagram, b: Diagram) -> bool:
    if a.arity != b.arity:
        raise DiagramError(f"arity mismatch: {a.arity} vs {b.arity}")
    return eval(a) == eval(b)


# ---------------------------------------------------------------------------
# classification


class MapKind(enum.Enum):
    MULTIRELATION = "Multirelation"
    ZERO_ONE = "ZeroOneMatrix"
    PARTIAL_FUNCTION = "PartialFunction"
    FUNCTION = "Function"
    PARTIAL_INJECTION = "PartialInjection"
    INJECTION = "Injection"
    BIJECTION = "Bijection"


@dataclass(frozen=True)
class MapClass:
    """Tightest class plus the individual containment flags.

    Columns are inputs: a function has exactly one 1 per column, an
    injection at most one 1 per row.
    """

    kind: MapKind
    zero_one: bool
    partial_function: bool
    function: bool
    partial_injection: bool
    injection: bool
    bijection: bool

    def __str__(self):
        return self.kind.value


def classify(m: NatMatrix) -> MapClass:
    zero_one = all(v == 1 for v in m.entries.values())
    col_count = {}
    row_count = {}
    for r, c in m.entries:
        col_count[c] = col_count.get(c, 0) + 1
        row_count[r] = row_count.get(r, 0) + 1
    pfun = zero_one and all(k <= 1 for k in col_count.values())
    fun = pfun and len(col_count) == m.cols
    pinj = pfun and all(k <= 1 for k in row_count.values())
    inj = pinj and fun
    bij = inj and len(row_count) == m.rows
    if bij:
        kind = MapKind.BIJECTION
    elif inj:
        kind = MapKind.INJECTION
    elif pinj:
        kind = MapKind.PARTIAL_INJECTION
    elif fun:
        kind = MapKind.FUNCTION
    elif pfun:
        kind = MapKind.PARTIAL_FUNCTION
    elif zero_one:
        kind = MapKind.ZERO_ONE
    else:
        kind = MapKind.MULTIRELATION
    return MapClass(kind, zero_one, pfun, fun, pinj, inj, bij)


def restriction_idempotent(m: NatMatrix) -> NatMatrix:
    """Diagonal domain-of-definition map of a partial function."""
    if not classify(m).partial_function:
        raise ValueError("restriction is only defined for partial functions")
    cols = set(c for _, c in m.entries)
    return NatMatrix(m.cols, m.cols, {(c, c): 1 for c in cols})
