"""Command-line front end: ``bicoh <command> [files]``.

Each input file holds one term; with no file the term is read from stdin
(two commands that take a pair read two non-empty lines). Exit codes: 0 on
success, the verdict code for ``equal``, 64 on usage errors, 65 on input
that does not parse, type or fit the requested fragment, 70 when an
internal invariant breaks.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .decide import equal
from .graph import interpret
from .maximality import collapse_witness
from .oracle import verify_faithfulness
from .render import FORMATS, render
from .rewrite import StepBudgetExceeded, kl_normalize, normalize
from .syntax import (
    Fragment, FragmentError, ParseError, TermTypeError, fragment_of,
    infer_type, is_bifunctorial, is_combinator, parse_formula, parse_term,
    show_formula, style,
)
from .translate import StyleError, to_bifunctorial, to_combinator

EX_USAGE, EX_DATAERR, EX_SOFTWARE = 64, 65, 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def _read_terms(paths: list, n: int, stdin) -> list:
    if paths:
        if len(paths) != n:
            raise UsageError(f"expected {n} term file(s), got {len(paths)}")
        texts = []
        for p in paths:
            try:
                with open(p, encoding="utf-8") as fh:
                    texts.append(fh.read())
            except OSError as e:
                raise UsageError(str(e)) from e
    else:
        data = stdin.read()
        texts = [data] if n == 1 else [ln for ln in data.splitlines() if ln.strip()]
        if len(texts) != n:
            raise UsageError(f"expected {n} term(s) on stdin, got {len(texts)}")
    terms = [parse_term(t.strip()) for t in texts]
    for t in terms:
        infer_type(t)
    return terms


def _fragment(args, *terms) -> Optional[Fragment]:
    """The ``--fragment`` override, checked against what the terms use."""
    if args.fragment is None:
        return None
    try:
        fr = Fragment.from_name(args.fragment)
    except ValueError as e:
        raise UsageError(str(e)) from e
    actual = fragment_of(list(terms))
    if not actual <= fr:
        raise FragmentError(f"terms use {actual.name}, outside --fragment {fr.name}")
    return fr


def _emit(args, payload: dict, human: str, out) -> None:
    if args.format == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        out.write(human.rstrip("\n") + "\n")


def _type_str(t) -> str:
    a, b = infer_type(t)
    return f"{show_formula(a)} -> {show_formula(b)}"


def cmd_typecheck(args, out, stdin):
    (t,) = _read_terms(args.files, 1, stdin)
    fr = _fragment(args, t) or fragment_of(t)
    a, b = infer_type(t)
    payload = {"term": str(t), "src": str(a), "tgt": str(b), "style": style(t), "fragment": fr.name}
    _emit(args, payload, f"{t} : {_type_str(t)}  [{style(t)}, {fr.name}]", out)
    return 0


def cmd_translate(args, out, stdin):
    (t,) = _read_terms(args.files, 1, stdin)
    _fragment(args, t)
    u = to_combinator(t) if args.to == "c" else to_bifunctorial(t)
    _emit(args, {"input": str(t), "output": str(u), "to": args.to}, str(u), out)
    return 0


def cmd_normalize(args, out, stdin):
    (t,) = _read_terms(args.files, 1, stdin)
    fr = _fragment(args, t)
    if not is_combinator(t):
        t = to_combinator(t, strict=False)
    trace = [] if args.trace else None
    nf = normalize(t, fr, trace, args.max_steps)
    payload = {"input": str(t), "normal_form": str(nf)}
    human = str(nf)
    if trace is not None:
        payload["trace"] = [{"rule": e["rule"], "term": str(e["term"]),
                             "degree": list(e["degree"]) if e.get("degree") else None}
                            for e in trace]
        lines = [f"{e['rule']:>6}  {e['term']}" + (f"  deg={tuple(e['degree'])}" if e.get("degree") else "")
                 for e in trace]
        human = "\n".join(lines + [str(nf)])
    _emit(args, payload, human, out)
    return 0


def cmd_kl_normalize(args, out, stdin):
    (t,) = _read_terms(args.files, 1, stdin)
    _fragment(args, t)
    if not is_bifunctorial(t):
        t = to_bifunctorial(t, strict=False)
    kpart, lpart = kl_normalize(t)
    payload = {"input": str(t), "kpart": str(kpart), "lpart": str(lpart)}
    _emit(args, payload, f"K: {kpart}\nL: {lpart}", out)
    return 0


def cmd_graph(args, out, stdin):
    (t,) = _read_terms(args.files, 1, stdin)
    _fragment(args, t)
    rel = interpret(t)
    _emit(args, rel.to_json(), str(rel), out)
    return 0


def cmd_equal(args, out, stdin):
    f, g = _read_terms(args.files, 2, stdin)
    _fragment(args, f, g)
    v = equal(f, g)
    _emit(args, v.to_json(), " ".join(f"{k}={val}" for k, val in v.to_json().items()), out)
    return v.exit_code


def cmd_witness(args, out, stdin):
    f, g = _read_terms(args.files, 2, stdin)
    _fragment(args, f, g)
    if infer_type(f) != infer_type(g):
        raise TermTypeError(f"types differ: {_type_str(f)} and {_type_str(g)}", g)
    try:
        w = collapse_witness(f, g)
    except ValueError as e:
        if isinstance(e, FragmentError):
            raise
        sys.stderr.write(f"bicoh: {e}\n")
        return 1
    payload = w.to_json()
    if not payload["certificate"]["ok"]:
        raise AssertionError(f"witness failed its certificate: {payload['certificate']}")
    lines = [f"{s['tag']:>6} {s['side']:>4}  {s['term']}" for s in payload["stages"]]
    lines += [f"f* = {w.fstar}", f"g* = {w.gstar}", f"conclusion: {w.conclusion}"]
    _emit(args, payload, "\n".join(lines), out)
    return 0


def cmd_oracle(args, out, stdin):
    try:
        src, tgt = parse_formula(args.src), parse_formula(args.tgt)
        fr = Fragment.from_name(args.fragment or "C_x,+")
    except ParseError:
        raise
    except ValueError as e:
        raise UsageError(str(e)) from e
    rep = verify_faithfulness(src, tgt, args.size, fr, step_bound=args.step_bound)
    human = (f"{rep['terms']} terms, {rep['g_classes']} graph classes, "
             f"{rep['closure_classes']} closure classes, coincide={rep['coincide']}, "
             f"saturated={rep['saturated']} after {rep['rounds']} rounds, "
             f"hard failures={len(rep['hard_failures'])}")
    _emit(args, rep, human, out)
    return 0


def cmd_render(args, out, stdin):
    (t,) = _read_terms(args.files, 1, stdin)
    _fragment(args, t)
    a, b = infer_type(t)
    out.write(render(interpret(t), a, b, args.diagram))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "human"), default="json")
    common.add_argument("--fragment", metavar="NAME", help="fragment name, e.g. C_x,+")
    common.add_argument("--trace", action="store_true", help="print each rewrite step")
    common.add_argument("--max-steps", type=int, metavar="N", help="rewrite step budget")

    p = _Parser(prog="bicoh", description="Arrows of free categories with products and sums.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, nfiles, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        if nfiles:
            sp.add_argument("files", nargs="*", metavar="TERM_FILE")
        sp.set_defaults(fn=fn)
        return sp

    add("typecheck", cmd_typecheck, 1, "print the type, style and fragment")
    add("translate", cmd_translate, 1, "switch term style").add_argument(
        "--to", choices=("c", "cprime"), required=True)
    add("normalize", cmd_normalize, 1, "composition-free normal form")
    add("kl-normalize", cmd_kl_normalize, 1, "K-term then L-term factorization")
    add("graph", cmd_graph, 1, "the relation G(f)")
    add("equal", cmd_equal, 2, "decide f = g by graphs")
    add("witness", cmd_witness, 2, "reduce f = g to k1 = k2 or l1 = l2")
    sp = add("oracle", cmd_oracle, 0, "bounded equational closure against graphs")
    sp.add_argument("--src", required=True)
    sp.add_argument("--tgt", required=True)
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--step-bound", type=int, default=30)
    add("render", cmd_render, 1, "draw G(f)").add_argument(
        "--diagram", choices=FORMATS, default="ascii")
    return p


def main(argv=None, out=None, stdin=None) -> int:
    out = out or sys.stdout
    stdin = stdin or sys.stdin
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args, out, stdin)
    except SystemExit as e:  # --help
        return int(e.code or 0)
    except UsageError as e:
        sys.stderr.write(f"{e}\n")
        return EX_USAGE
    except (ParseError, TermTypeError, FragmentError, StyleError, StepBudgetExceeded) as e:
        sys.stderr.write(f"bicoh: {type(e).__name__}: {e}\n")
        return EX_DATAERR
    except Exception as e:  # noqa: BLE001 - any other failure is our bug
        sys.stderr.write(f"bicoh: internal error: {type(e).__name__}: {e}\n")
        return EX_SOFTWARE


if __name__ == "__main__":
    sys.exit(main())
