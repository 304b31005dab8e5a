"""Command-line front end.

Exit codes: 0 for a positive answer, 1 for a negative one, 2 for errors.
"""
from __future__ import annotations

import argparse
import os
import sys
import warnings

from . import closure
from .core import Fa, Gva, Letter, Nfma, validate_gva, word_of
from .decisions import nonemptiness
from .dsl import print_automaton, parse_automaton
from .errors import GvaError
from .export import export_dot, export_strategy_json
from .semantics import enumerate_language, membership
from .simulation import compose_services, simulates


class _Failure(Exception):
    pass


def _color(text, code):
    if os.environ.get("GVA_COLOR", "1") == "0" or not sys.stdout.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _load(path, want=None):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _Failure(f"{path}: {exc.strerror}") from None
    try:
        a = parse_automaton(text)
    except GvaError as exc:
        raise _Failure(f"{path}:{exc}") from None
    if want is not None and not isinstance(a, want):
        raise _Failure(f"{path}: expected a {want.__name__.lower()} automaton")
    return a


def _load_gva(path):
    a = _load(path)
    if isinstance(a, Nfma):
        return closure.nfma_to_gva(a)
    if isinstance(a, Fa):
        return _fa_as_gva(a)
    return a


def _fa_as_gva(f: Fa) -> Gva:
    from .core import TRUE, Transition

    return Gva(
        states=f.states,
        initial=f.initial,
        accepting=f.accepting,
        transitions=[Transition(s, c, TRUE, d) for s, c, d in f.transitions],
        constants=f.letters,
        variables=(),
        name=f.name,
    )


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _trace_lines(trace):
    for w in trace:
        yield f"  {w.source!r} --{w.read} [{w.index}] {w.guess!r}--> {w.target!r}"


def cmd_check(args):
    a = _load(args.file)
    if not isinstance(a, Gva):
        print("ok")
        return 0
    diags = validate_gva(a)
    for d in diags:
        print(d, file=sys.stderr)
    if not diags:
        print("ok")
    return 1 if diags else 0


def cmd_nonempty(args):
    found = nonemptiness(_load_gva(args.file))
    if found is None:
        print(_color("EMPTY", "31"))
        return 1
    word, trace = found
    print(" ".join(str(c) for c in word) if word else "(empty word)")
    if args.trace:
        print("\n".join(_trace_lines(trace)))
    return 0


def cmd_member(args):
    a = _load_gva(args.file)
    trace = membership(a, word_of(args.word))
    if trace is None:
        print(_color("REJECT", "31"))
        return 1
    print(_color("ACCEPT", "32"))
    if args.trace:
        print("\n".join(_trace_lines(trace)))
    return 0


def cmd_op(args):
    a = _load_gva(args.a)
    if args.name == "star":
        if args.b is not None:
            raise _Failure("star takes a single automaton")
        result = closure.gva_star(a)
    else:
        if args.b is None:
            raise _Failure(f"{args.name} needs two automata")
        b = _load_gva(args.b)
        fn = {"union": closure.gva_union, "intersect": closure.gva_intersection,
              "concat": closure.gva_concat}[args.name]
        result = fn(a, b)
    _emit(print_automaton(result), args.output)
    return 0


def cmd_complement(args):
    f = _load(args.file, Fa)
    _emit(print_automaton(closure.complement_fa(f.determinize())), args.output)
    return 0


def cmd_product(args):
    comps = [_load_gva(p) for p in args.files]
    _emit(print_automaton(closure.async_product(comps)), args.output)
    return 0


def cmd_translate(args):
    n = _load(args.file, Nfma)
    _emit(print_automaton(closure.nfma_to_gva(n)), args.output)
    return 0


def cmd_simulate(args):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ok = simulates(_load_gva(args.a), _load_gva(args.b))
    print("SIMULATES" if ok else "NO SIMULATION")
    return 0 if ok else 1


def cmd_compose(args):
    client = _load_gva(args.client)
    services = [_load_gva(p) for p in args.services]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        comp = compose_services(client, services)
    if comp is None:
        print("NO COMPOSITION")
        return 1
    print(f"COMPOSITION: {len(comp.strategy)} mediator entries")
    if args.strategy:
        _emit(export_strategy_json(comp.strategy, comp.product), args.strategy)
    return 0


def cmd_gen_ln(args):
    if args.n < 1:
        raise _Failure("N must be at least 1")
    _emit(print_automaton(closure.gen_ln(args.n)), args.output)
    return 0


def cmd_dot(args):
    _emit(export_dot(_load(args.file)), args.output)
    return 0


def cmd_enumerate(args):
    a = _load_gva(args.file)
    pool = [Letter(c) for c in args.pool.split(",") if c]
    if not pool:
        raise _Failure("--pool needs at least one letter")
    words = sorted(enumerate_language(a, pool, args.maxlen), key=lambda w: (len(w), w))
    for w in words:
        print(" ".join(str(c) for c in w) if w else "(empty word)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gva", description="Guarded variable automata toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("check", cmd_check, "validate an automaton file")
    sp.add_argument("file")
    sp = add("nonempty", cmd_nonempty, "print a shortest accepted word or EMPTY")
    sp.add_argument("file")
    sp.add_argument("--trace", action="store_true")
    sp = add("member", cmd_member, "test membership of a word given after --")
    sp.add_argument("file")
    sp.add_argument("word", nargs="*")
    sp.add_argument("--trace", action="store_true")
    sp = add("op", cmd_op, "closure operation")
    sp.add_argument("name", choices=["union", "intersect", "concat", "star"])
    sp.add_argument("a")
    sp.add_argument("b", nargs="?")
    sp.add_argument("-o", "--output")
    sp = add("complement-fa", cmd_complement, "complement an FA into a GVA")
    sp.add_argument("file")
    sp.add_argument("-o", "--output")
    sp = add("product", cmd_product, "asynchronous product")
    sp.add_argument("files", nargs="+")
    sp.add_argument("-o", "--output")
    sp = add("translate-nfma", cmd_translate, "translate an NFMA into a GVA")
    sp.add_argument("file")
    sp.add_argument("-o", "--output")
    sp = add("simulate", cmd_simulate, "decide whether A is simulated by B")
    sp.add_argument("a")
    sp.add_argument("b")
    sp = add("compose", cmd_compose, "synthesize a mediator for a client")
    sp.add_argument("client")
    sp.add_argument("services", nargs="+")
    sp.add_argument("--strategy")
    sp = add("gen-ln", cmd_gen_ln, "write the L_n benchmark automaton")
    sp.add_argument("n", type=int)
    sp.add_argument("-o", "--output")
    sp = add("dot", cmd_dot, "Graphviz export")
    sp.add_argument("file")
    sp.add_argument("-o", "--output")
    sp = add("enumerate", cmd_enumerate, "list accepted words over a pool")
    sp.add_argument("file")
    sp.add_argument("--pool", required=True)
    sp.add_argument("--maxlen", type=int, default=3)
    return ap


def dispatch(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _Failure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GvaError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(dispatch())
