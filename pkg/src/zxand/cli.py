"""Command-line front end.

Exit codes: 0 success, 1 semantic inequality or rule failure, 2 input
error, 3 evaluation resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import circuit as cc
from . import rules as rl
from .diagram import Diagram, DiagramError
from .matsem import NatMatrix, ResourceError, classify, decide_eq
from .matsem import eval as mat_eval
from .syntax import ParseError, load, to_dot, to_text

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_item(path: str):
    """A diagram or a circuit, chosen by extension (.circ) or by trying both."""
    text = _read(path)
    if path.endswith(".circ"):
        return cc.parse_circuit(text)
    try:
        return load(text)
    except ParseError as first:
        if path.endswith((".zx", ".json")):
            raise
        try:
            return cc.parse_circuit(text)
        except cc.CircuitError:
            raise first from None


def _matrix(item) -> NatMatrix:
    if isinstance(item, Diagram):
        return mat_eval(item)
    return cc.circuit_matrix(item)


def _as_diagram(item) -> Diagram:
    if isinstance(item, Diagram):
        return item
    from .translate import tofhat_to_zx

    return tofhat_to_zx(cc.lower(item))


def _out(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit(args, payload, text):
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_eval(args):
    _out(_matrix(load_item(args.file)).to_text())
    return EXIT_OK


def cmd_eq(args):
    a, b = load_item(args.a), load_item(args.b)
    if isinstance(a, Diagram) and isinstance(b, Diagram):
        same = decide_eq(a, b)
    else:
        same = _matrix(a) == _matrix(b)
    _emit(args, {"equal": same}, "equal" if same else "not equal")
    return EXIT_OK if same else EXIT_FAIL


def cmd_check_axioms(args):
    sets = [args.set] if args.set else ["zxa", "tof", "cnot", "lemmas"]
    reports = []
    for s in sets:
        for r in rl.axiom_db(s):
            reports.append(rl.check_soundness(r, bound=args.max_arity))
            if args.dagger:
                rep = rl.check_soundness(r, bound=args.max_arity, dagger=True)
                rep.rule += "^dagger"
                reports.append(rep)
    ok = all(r.passed for r in reports)
    if args.json:
        items = [i.as_json(r.rule) for r in reports for i in r.instances]
        print(json.dumps({"passed": ok, "rules": len(reports), "instances": items}, sort_keys=True))
    else:
        for r in reports:
            if args.verbose:
                for line in r.lines():
                    print(line)
            n = len(r.instances)
            print(f"{r.rule} {'PASS' if r.passed else 'FAIL'} ({n} instance{'s' * (n != 1)})")
            if not r.passed and not args.verbose:
                for line in r.lines():
                    if " FAIL " in line:
                        print("  " + line)
        passed = sum(r.passed for r in reports)
        print(f"{passed}/{len(reports)} rules pass")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_simplify(args):
    from .rewrite import simplify

    d, trace = simplify(_as_diagram(load_item(args.file)))
    if args.trace:
        for line in trace:
            print("# " + line)
    _out(to_text(d))
    return EXIT_OK


def cmd_translate(args):
    from . import translate as tr

    item = load_item(args.file)
    if args.to == "tof":
        if not isinstance(item, Diagram):
            raise InputError("translate --to tof expects a diagram")
        _out(cc.format_circuit(tr.zx_to_tof(item)))
    else:
        if isinstance(item, Diagram):
            raise InputError("translate --to zx expects a circuit")
        _out(to_text(tr.tofhat_to_zx(cc.lower(item))))
    return EXIT_OK


def cmd_synth(args):
    from .synth import matrix_to_diagram

    try:
        m = NatMatrix.from_text(_read(args.file))
    except ValueError as exc:
        raise InputError(f"bad matrix file: {exc}") from None
    _out(to_text(matrix_to_diagram(m)))
    return EXIT_OK


def cmd_classify(args):
    c = classify(_matrix(load_item(args.file)))
    flags = {k: getattr(c, k) for k in ("zero_one", "partial_function", "function",
                                         "partial_injection", "injection", "bijection")}
    _emit(args, {"class": str(c), **flags}, str(c))
    return EXIT_OK


def cmd_cross_check(args):
    from .spansem import eval_span, span_to_matrix

    d = _as_diagram(load_item(args.file))
    a = mat_eval(d)
    b = span_to_matrix(eval_span(d))
    same = a == b
    _emit(args, {"agree": same}, "matrix and span semantics agree" if same
          else "matrix and span semantics DIFFER")
    return EXIT_OK if same else EXIT_FAIL


def cmd_dot(args):
    _out(to_dot(_as_diagram(load_item(args.file))))
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="zxand", description="ZX& diagrams, circuits and matrices")
    p.add_argument("--parallel", action="store_true",
                   help="accepted for compatibility; evaluation is sequential and output identical")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *files, json_flag=False):
        sp = sub.add_parser(name)
        for f in files:
            sp.add_argument(f)
        if json_flag:
            sp.add_argument("--json", action="store_true")
        sp.set_defaults(func=fn)
        return sp

    add("eval", cmd_eval, "file")
    add("eq", cmd_eq, "a", "b", json_flag=True)
    sp = add("check-axioms", cmd_check_axioms, json_flag=True)
    sp.add_argument("--set", choices=sorted(rl.SETS))
    sp.add_argument("--max-arity", type=int, default=3)
    sp.add_argument("--dagger", action="store_true", help="also check the daggered rules")
    sp.add_argument("-v", "--verbose", action="store_true")
    sp = add("simplify", cmd_simplify, "file")
    sp.add_argument("--trace", action="store_true")
    sp = add("translate", cmd_translate, "file")
    sp.add_argument("--to", choices=["zx", "tof"], required=True)
    add("synth", cmd_synth, "file")
    add("classify", cmd_classify, "file", json_flag=True)
    add("cross-check", cmd_cross_check, "file", json_flag=True)
    add("dot", cmd_dot, "file")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InputError, DiagramError, cc.CircuitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
