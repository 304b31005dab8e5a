"""A line-oriented text format for GVAs, NFMAs and FAs.

::

    gva A1 {
      letters: ;
      vars: x, y;
      states: p0 init, p1 accept;
      refresh: y @ p0;
      trans: p0 -> p0 on y if y != x;
      trans: p0 -> p1 on x;
    }

``//`` starts a comment.  Guards may use ``||`` at top level; each
disjunct becomes its own transition.
"""
from __future__ import annotations

import re

from .core import (
    EPS,
    FRESH_PREFIX,
    TRUE_ATOM,
    Atom,
    Disjunction,
    Fa,
    Guard,
    Gva,
    Letter,
    Nfma,
    NfmaTransition,
    Transition,
    Var,
    normalize_disjunction,
)
from .errors import DslSyntaxError

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>//[^\n]*)"
    r"|(?P<op>->|==|!=|&&|\|\||[{}:;,@=])"
    r"|(?P<word>[A-Za-z0-9_#$~'][A-Za-z0-9_#$.~']*)"
)
KEYWORDS = {"eps", "true"}


class _Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col


def _lex(text: str) -> list:
    toks, line, start, pos = [], 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DslSyntaxError(line, pos - start + 1, "a token", text[pos])
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind in ("op", "word"):
            toks.append(_Tok(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "end of input", line, pos - start + 1))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _lex(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def fail(self, expected, tok=None):
        tok = tok or self.tok
        raise DslSyntaxError(tok.line, tok.col, expected, tok.text)

    def take(self, text=None, kind=None, expected=None):
        tok = self.tok
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            self.fail(expected or repr(text) if text else expected or "a name")
        self.i += 1
        return tok

    def at(self, text):
        return self.tok.text == text and self.tok.kind == "op"

    def name(self, what="a name"):
        tok = self.take(kind="word", expected=what)
        if tok.text.startswith(FRESH_PREFIX):
            self.fail(f"a name not starting with {FRESH_PREFIX!r}", tok)
        return tok

    def names(self, what="a name"):
        """Comma-separated list, possibly empty, terminated by ';'."""
        out = []
        if self.at(";"):
            return out
        out.append(self.name(what))
        while self.at(","):
            self.i += 1
            out.append(self.name(what))
        return out


def parse_automaton(text: str):
    p = _Parser(text)
    head = p.take(kind="word", expected="'gva', 'nfma' or 'fa'")
    if head.text not in ("gva", "nfma", "fa"):
        p.fail("'gva', 'nfma' or 'fa'", head)
    name = p.name("an automaton name").text
    p.take("{")
    sections = []
    while not p.at("}"):
        key = p.take(kind="word", expected="a section keyword or '}'")
        p.take(":")
        sections.append((key, p.i))
        # skip to the end of the section; each builder re-reads it
        while not p.at(";"):
            if p.tok.kind == "eof" or p.at("}"):
                p.fail("';'")
            p.i += 1
        p.i += 1
    p.take("}")
    p.take(kind="eof", expected="end of input")
    build = {"gva": _build_gva, "nfma": _build_nfma, "fa": _build_fa}[head.text]
    return build(p, name, sections)


def _states(p):
    states, init, acc = [], [], []
    if p.at(";"):
        return states, init, acc
    while True:
        q = p.name("a state name")
        states.append(q.text)
        while p.tok.kind == "word" and p.tok.text in ("init", "accept"):
            (init if p.tok.text == "init" else acc).append(q.text)
            p.i += 1
        if not p.at(","):
            break
        p.i += 1
    return states, init, acc


def _expect_end(p):
    p.take(";", expected="';'")


def _build_gva(p, name, sections):
    letters, variables = [], []
    for key, at in sections:
        if key.text in ("letters", "vars"):
            p.i = at
            toks = p.names("a letter" if key.text == "letters" else "a variable")
            for t in toks:
                if t.text in KEYWORDS:
                    p.fail("a name that is not a keyword", t)
            (letters if key.text == "letters" else variables).extend(t.text for t in toks)
            _expect_end(p)
    both = set(letters) & set(variables)
    if both:
        key = next(k for k, _ in sections if k.text == "vars")
        p.fail(f"variables distinct from letters ({sorted(both)[0]} is both)", key)
    lset, vset = set(letters), set(variables)

    def operand(tok):
        if tok.text in vset:
            return Var(tok.text)
        if tok.text in lset:
            return Letter(tok.text)
        p.fail("a declared letter or variable", tok)

    states, init, acc, refresh, trans = [], [], [], {}, []
    for key, at in sections:
        p.i = at
        k = key.text
        if k in ("letters", "vars"):
            continue
        if k == "states":
            s, i, a = _states(p)
            states += s
            init += i
            acc += a
        elif k == "refresh":
            x = p.name("a variable")
            if x.text not in vset:
                p.fail("a declared variable", x)
            p.take("@")
            qs = p.names("a state name")
            refresh.setdefault(Var(x.text), []).extend(q.text for q in qs)
        elif k == "trans":
            src = p.name("a state name").text
            p.take("->")
            dst = p.name("a state name").text
            p.take("on", kind="word", expected="'on'")
            lab = p.take(kind="word", expected="a label")
            label = EPS if lab.text == "eps" else operand(lab)
            guards = [Guard()]
            if p.tok.kind == "word" and p.tok.text == "if":
                p.i += 1
                guards = normalize_disjunction(_disjunction(p, operand))
            for g in guards:
                trans.append(Transition(src, label, g, dst))
        else:
            p.fail("'letters', 'vars', 'states', 'refresh' or 'trans'", key)
        _expect_end(p)
    return Gva(
        states=states,
        initial=init,
        accepting=acc,
        transitions=trans,
        refresh=refresh,
        constants={Letter(c) for c in letters},
        variables={Var(v) for v in variables},
        name=name,
    )


def _disjunction(p, operand):
    alts = [_conjunction(p, operand)]
    while p.at("||"):
        p.i += 1
        alts.append(_conjunction(p, operand))
    return alts[0] if len(alts) == 1 else Disjunction(tuple(alts))


def _conjunction(p, operand):
    atoms = [_atom(p, operand)]
    while p.at("&&"):
        p.i += 1
        atoms.append(_atom(p, operand))
    return Guard(tuple(atoms))


def _atom(p, operand):
    lhs = p.take(kind="word", expected="a guard atom")
    if lhs.text == "true":
        return TRUE_ATOM
    if not (p.at("==") or p.at("!=")):
        p.fail("'==' or '!='")
    op = p.take().text
    rhs = p.take(kind="word", expected="a letter or variable")
    return Atom("eq" if op == "==" else "neq", operand(lhs), operand(rhs))


def _build_nfma(p, name, sections):
    registers, init_assign, states, init, acc, trans = None, {}, [], [], [], []
    for key, at in sections:
        p.i = at
        k = key.text
        if k == "registers":
            tok = p.take(kind="word", expected="a register count")
            if not tok.text.isdigit() or int(tok.text) < 1:
                p.fail("a positive integer", tok)
            registers = int(tok.text)
        elif k == "init":
            if not p.at(";"):
                while True:
                    r = _register(p)
                    p.take("=")
                    init_assign[r] = Letter(p.name("a letter").text)
                    if not p.at(","):
                        break
                    p.i += 1
        elif k == "states":
            s, i, a = _states(p)
            states += s
            init += i
            acc += a
        elif k == "trans":
            src = p.name("a state name").text
            p.take("->")
            dst = p.name("a state name").text
            kind = p.take(kind="word", expected="'read', 'reassign' or 'eps'")
            if kind.text in ("read", "reassign"):
                trans.append(NfmaTransition(src, kind.text, _register(p), dst))
            elif kind.text == "eps":
                trans.append(NfmaTransition(src, "eps", None, dst))
            else:
                p.fail("'read', 'reassign' or 'eps'", kind)
        else:
            p.fail("'registers', 'init', 'states' or 'trans'", key)
        _expect_end(p)
    if registers is None:
        p.fail("a 'registers' section", p.toks[0])
    if len(init) != 1:
        p.fail("exactly one initial state", p.toks[0])
    for r in list(init_assign) + [t.register for t in trans if t.register]:
        if r > registers:
            p.fail(f"a register index at most {registers}", p.toks[0])
    return Nfma(registers, states, init[0], acc, trans, init_assign, name=name)


def _register(p):
    tok = p.take(kind="word", expected="a register index")
    if not tok.text.isdigit() or int(tok.text) < 1:
        p.fail("a register index", tok)
    return int(tok.text)


def _build_fa(p, name, sections):
    letters, states, init, acc, trans = [], [], [], [], []
    for key, at in sections:
        p.i = at
        k = key.text
        if k == "letters":
            letters += [t.text for t in p.names("a letter")]
        elif k == "states":
            s, i, a = _states(p)
            states += s
            init += i
            acc += a
        elif k == "trans":
            src = p.name("a state name").text
            p.take("->")
            dst = p.name("a state name").text
            p.take("on", kind="word", expected="'on'")
            c = p.name("a letter")
            if c.text not in letters:
                p.fail("a declared letter", c)
            trans.append((src, Letter(c.text), dst))
        else:
            p.fail("'letters', 'states' or 'trans'", key)
        _expect_end(p)
    return Fa({Letter(c) for c in letters}, states, init, acc, trans, name=name)


# --------------------------------------------------------------------------
# Printing


def _state_line(states, init, acc):
    parts = []
    for q in states:
        marks = (" init" if q in init else "") + (" accept" if q in acc else "")
        parts.append(q + marks)
    return "  states: " + ", ".join(parts) + ";"


def _list(items):
    return ", ".join(str(x) for x in sorted(items))


def print_automaton(a) -> str:
    if isinstance(a, Gva):
        lines = [
            f"gva {a.name} {{",
            f"  letters: {_list(a.constants)};",
            f"  vars: {_list(a.variables)};",
            _state_line(a.states, a.initial, a.accepting),
        ]
        for x, qs in a.refresh.items():
            lines.append(f"  refresh: {x} @ {_list(qs)};")
        for t in a.transitions:
            cond = f" if {t.guard}" if t.guard.atoms else ""
            lines.append(f"  trans: {t.source} -> {t.target} on {t.label}{cond};")
    elif isinstance(a, Nfma):
        lines = [f"nfma {a.name} {{", f"  registers: {a.registers};"]
        if a.init_assign:
            lines.append("  init: " + ", ".join(f"{r} = {c}" for r, c in a.init_assign.items()) + ";")
        lines.append(_state_line(a.states, {a.initial}, a.accepting))
        for t in a.transitions:
            op = "eps" if t.kind == "eps" else f"{t.kind} {t.register}"
            lines.append(f"  trans: {t.source} -> {t.target} {op};")
    elif isinstance(a, Fa):
        lines = [
            f"fa {a.name} {{",
            f"  letters: {_list(a.letters)};",
            _state_line(a.states, a.initial, a.accepting),
        ]
        for src, c, dst in a.transitions:
            lines.append(f"  trans: {src} -> {dst} on {c};")
    else:
        raise TypeError(f"cannot print {type(a).__name__}")
    lines.append("}")
    return "\n".join(lines) + "\n"
