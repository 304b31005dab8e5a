"""Symbols, substitutions, guards and the automaton records (GVA, NFMA, FA).

Letters and variables are interned string tokens living in separate
namespaces: ``Letter("a") != Var("a")``.  Any token is a letter, so the
alphabet is open-ended; a finite automaton only ever mentions finitely many.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property, total_ordering
from types import MappingProxyType
from typing import Union

from .errors import DomainOverlap, UnboundVariable

FRESH_PREFIX = "#fresh"


def _fresh_index(name: str) -> int | None:
    tail = name[len(FRESH_PREFIX):]
    if name.startswith(FRESH_PREFIX) and tail.isdigit():
        return int(tail)
    return None


@total_ordering
@dataclass(frozen=True, slots=True)
class Letter:
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise ValueError("a letter needs a nonempty string name")

    def sort_key(self):
        # named letters lexicographic, then fresh letters by numeric index
        idx = _fresh_index(self.name)
        return (0, 0, self.name) if idx is None else (1, idx, "")

    def __lt__(self, other):
        if not isinstance(other, Letter):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    @property
    def is_fresh(self) -> bool:
        return _fresh_index(self.name) is not None

    def __repr__(self):
        return f"Letter({self.name!r})"

    def __str__(self):
        return self.name


@total_ordering
@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise ValueError("a variable needs a nonempty string name")

    def __lt__(self, other):
        if not isinstance(other, Var):
            return NotImplemented
        return self.name < other.name

    def __repr__(self):
        return f"Var({self.name!r})"

    def __str__(self):
        return self.name


class Epsilon:
    """The empty label.  Use the module-level ``EPS`` singleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EPS"

    def __str__(self):
        return "eps"

    def __reduce__(self):
        return (Epsilon, ())


EPS = Epsilon()

Operand = Union[Letter, Var]
Symbol = Union[Letter, Var, Epsilon]


def fresh_letters(count: int, avoid: Iterable[Letter] = ()) -> list[Letter]:
    """Return ``count`` reserved fresh letters, skipping any in ``avoid``."""
    avoid = set(avoid)
    out, i = [], 1
    while len(out) < count:
        cand = Letter(f"{FRESH_PREFIX}{i}")
        if cand not in avoid:
            out.append(cand)
        i += 1
    return out


# --------------------------------------------------------------------------
# Substitutions


class Substitution(Mapping):
    """Immutable ground mapping from variables to letters.

    Iteration follows variable-name order so printing and hashing are stable.
    """

    __slots__ = ("_map", "_hash")

    def __init__(self, bindings=None):
        items = dict(bindings) if bindings else {}
        for k, v in items.items():
            if not isinstance(k, Var):
                raise TypeError(f"substitution key must be a Var, got {k!r}")
            if not isinstance(v, Letter):
                raise TypeError(f"substitution value must be a Letter, got {v!r}")
        self._map = dict(sorted(items.items())) if len(items) > 1 else items
        self._hash = None

    def __getitem__(self, key):
        return self._map[key]

    def __iter__(self):
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def __contains__(self, key):
        return key in self._map

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._map.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Substitution):
            return self._map == other._map
        if isinstance(other, Mapping):
            return self._map == dict(other)
        return NotImplemented

    def __repr__(self):
        inner = ", ".join(f"{k}->{v}" for k, v in self._map.items())
        return "{" + inner + "}"

    @property
    def domain(self) -> frozenset:
        return frozenset(self._map)

    @property
    def codomain(self) -> frozenset:
        return frozenset(self._map.values())

    def apply(self, sym):
        """Image of a symbol: letters and EPS map to themselves."""
        if isinstance(sym, Var):
            return self._map.get(sym, sym)
        return sym

    def extend(self, other: Mapping) -> "Substitution":
        return subst_disjoint_union(self, other)

    def restrict(self, keep) -> "Substitution":
        return subst_restrict(self, keep)

    def without(self, drop) -> "Substitution":
        drop = set(drop)
        if not drop.intersection(self._map):
            return self
        return Substitution({k: v for k, v in self._map.items() if k not in drop})


EMPTY = Substitution()


def subst_disjoint_union(s1: Mapping, s2: Mapping) -> Substitution:
    overlap = set(s1).intersection(s2)
    if overlap:
        names = ", ".join(sorted(v.name for v in overlap))
        raise DomainOverlap(f"domains overlap on {names}")
    if not s2 and isinstance(s1, Substitution):
        return s1
    if not s1 and isinstance(s2, Substitution):
        return s2
    merged = dict(s1)
    merged.update(s2)
    return Substitution(merged)


def subst_restrict(s: Mapping, keep) -> Substitution:
    keep = set(keep)
    return Substitution({k: v for k, v in s.items() if k in keep})


# --------------------------------------------------------------------------
# Guards

TRUE_KIND, EQ_KIND, NEQ_KIND = "true", "eq", "neq"


@dataclass(frozen=True, slots=True)
class Atom:
    kind: str
    lhs: Operand | None = None
    rhs: Operand | None = None

    def __post_init__(self):
        if self.kind == TRUE_KIND:
            if self.lhs is not None or self.rhs is not None:
                raise ValueError("true carries no operands")
        elif self.kind in (EQ_KIND, NEQ_KIND):
            for side in (self.lhs, self.rhs):
                if not isinstance(side, (Letter, Var)):
                    raise TypeError(f"guard operand must be a Letter or Var, got {side!r}")
        else:
            raise ValueError(f"unknown atom kind {self.kind!r}")

    @property
    def variables(self) -> frozenset:
        return frozenset(s for s in (self.lhs, self.rhs) if isinstance(s, Var))

    @property
    def letters(self) -> frozenset:
        return frozenset(s for s in (self.lhs, self.rhs) if isinstance(s, Letter))

    def __str__(self):
        if self.kind == TRUE_KIND:
            return "true"
        op = "==" if self.kind == EQ_KIND else "!="
        return f"{self.lhs} {op} {self.rhs}"


TRUE_ATOM = Atom(TRUE_KIND)


def eq(lhs: Operand, rhs: Operand) -> Atom:
    return Atom(EQ_KIND, lhs, rhs)


def neq(lhs: Operand, rhs: Operand) -> Atom:
    return Atom(NEQ_KIND, lhs, rhs)


@dataclass(frozen=True)
class Guard:
    """A conjunction of atoms; the empty conjunction is ``true``."""

    atoms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))

    @classmethod
    def of(cls, *atoms: Atom) -> "Guard":
        return cls(atoms)

    @cached_property
    def variables(self) -> frozenset:
        out = set()
        for a in self.atoms:
            out |= a.variables
        return frozenset(out)

    @cached_property
    def letters(self) -> frozenset:
        out = set()
        for a in self.atoms:
            out |= a.letters
        return frozenset(out)

    def __and__(self, other: "Guard") -> "Guard":
        return Guard(self.atoms + other.atoms)

    def __or__(self, other) -> "Disjunction":
        rest = other.alternatives if isinstance(other, Disjunction) else (other,)
        return Disjunction((self,) + rest)

    def __str__(self):
        return " && ".join(str(a) for a in self.atoms) if self.atoms else "true"


TRUE = Guard()


@dataclass(frozen=True)
class Disjunction:
    """Input-only disjunctive guard; see :func:`normalize_disjunction`."""

    alternatives: tuple

    def __or__(self, other) -> "Disjunction":
        rest = other.alternatives if isinstance(other, Disjunction) else (other,)
        return Disjunction(self.alternatives + rest)

    def __str__(self):
        return " || ".join(str(g) for g in self.alternatives)


def guard_free_vars(g: Guard) -> frozenset:
    return g.variables


def guard_apply(sigma: Mapping, g: Guard) -> Guard:
    if not sigma:
        return g
    atoms = []
    for a in g.atoms:
        if a.kind == TRUE_KIND:
            atoms.append(a)
        else:
            lhs = sigma.get(a.lhs, a.lhs) if isinstance(a.lhs, Var) else a.lhs
            rhs = sigma.get(a.rhs, a.rhs) if isinstance(a.rhs, Var) else a.rhs
            atoms.append(Atom(a.kind, lhs, rhs))
    return Guard(tuple(atoms))


def _atom_holds(atom: Atom, env: Mapping) -> bool:
    if atom.kind == TRUE_KIND:
        return True
    lhs = env[atom.lhs] if isinstance(atom.lhs, Var) else atom.lhs
    rhs = env[atom.rhs] if isinstance(atom.rhs, Var) else atom.rhs
    return (lhs == rhs) == (atom.kind == EQ_KIND)


def guard_satisfies(sigma: Mapping, g: Guard) -> bool:
    missing = g.variables.difference(sigma)
    if missing:
        raise UnboundVariable(missing)
    return all(_atom_holds(a, sigma) for a in g.atoms)


def solve_guard(bound: Mapping, g: Guard, free, pool):
    """Yield every assignment of ``free`` over ``pool`` satisfying ``g``.

    ``bound`` must cover all variables of ``g`` outside ``free``.  Atoms are
    checked as soon as their last variable is assigned, and assignments come
    out in lexicographic order of ``free`` over ``pool``.
    """
    free = list(free)
    pos = {v: i for i, v in enumerate(free)}
    checks = [[] for _ in free]
    for atom in g.atoms:
        if atom.kind == TRUE_KIND:
            continue
        idx = [pos[s] for s in (atom.lhs, atom.rhs) if isinstance(s, Var) and s in pos]
        if idx:
            checks[max(idx)].append(atom)
        elif not _atom_holds(atom, bound):
            return
    env = dict(bound)
    if not free:
        yield {}
        return
    n = len(free)

    def rec(i):
        var, tests = free[i], checks[i]
        for letter in pool:
            env[var] = letter
            if all(_atom_holds(a, env) for a in tests):
                if i + 1 == n:
                    yield {v: env[v] for v in free}
                else:
                    yield from rec(i + 1)
        del env[var]

    yield from rec(0)


def guard_satisfiable_ext(sigma: Mapping, g: Guard, pool) -> Substitution | None:
    """Search for gamma over ``pool`` such that sigma + gamma satisfies ``g``."""
    pool = sorted(set(pool))
    if not pool:
        raise ValueError("pool must be nonempty")
    free = sorted(g.variables.difference(sigma))
    for sol in solve_guard(sigma, g, free, pool):
        return Substitution(sol)
    return None


def normalize_disjunction(g) -> list[Guard]:
    """Split a disjunctive guard into conjunctive ones with equal free variables.

    Each disjunct is padded with ``x == x`` for the variables only the other
    disjuncts mention, so every output guesses the same variables.
    """
    if isinstance(g, Guard):
        return [g]
    alts = list(g.alternatives)
    if len(alts) == 1:
        return [alts[0]]
    every = frozenset().union(*(a.variables for a in alts))
    out = []
    for alt in alts:
        pad = tuple(eq(x, x) for x in sorted(every - alt.variables))
        out.append(Guard(alt.atoms + pad))
    return out


# --------------------------------------------------------------------------
# Automata


@dataclass(frozen=True)
class Transition:
    source: str
    label: Symbol
    guard: Guard
    target: str

    def __str__(self):
        g = "" if not self.guard.atoms else f" if {self.guard}"
        return f"{self.source} -> {self.target} on {self.label}{g}"


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    location: str = ""

    def __str__(self):
        loc = f" [{self.location}]" if self.location else ""
        return f"{self.code}: {self.message}{loc}"


@dataclass(frozen=True, eq=False)
class Gva:
    """A guarded variable automaton.

    ``constants`` and ``variables`` are inferred from the transitions (and the
    refresh map) when left as ``None``.  ``refresh`` maps each variable to the
    states where it is freed on entry.
    """

    states: tuple
    initial: frozenset
    accepting: frozenset
    transitions: tuple
    refresh: Mapping = field(default_factory=dict)
    constants: frozenset | None = None
    variables: frozenset | None = None
    name: str = "A"

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "states", tuple(dict.fromkeys(self.states)))
        set_(self, "initial", frozenset(self.initial))
        set_(self, "accepting", frozenset(self.accepting))
        set_(self, "transitions", tuple(self.transitions))
        kappa = {v: frozenset(qs) for v, qs in self.refresh.items() if qs}
        set_(self, "refresh", MappingProxyType(dict(sorted(kappa.items()))))
        if self.constants is None:
            found = set()
            for t in self.transitions:
                if isinstance(t.label, Letter):
                    found.add(t.label)
                found |= t.guard.letters
            set_(self, "constants", frozenset(found))
        else:
            set_(self, "constants", frozenset(self.constants))
        if self.variables is None:
            found = set(self.refresh)
            for t in self.transitions:
                if isinstance(t.label, Var):
                    found.add(t.label)
                found |= t.guard.variables
            set_(self, "variables", frozenset(found))
        else:
            set_(self, "variables", frozenset(self.variables))

    def _key(self):
        return (
            self.name,
            self.states,
            self.initial,
            self.accepting,
            self.transitions,
            tuple(self.refresh.items()),
            self.constants,
            self.variables,
        )

    def __eq__(self, other):
        if not isinstance(other, Gva):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @cached_property
    def outgoing(self) -> Mapping:
        """state -> tuple of (transition index, transition)."""
        out = {q: [] for q in self.states}
        for i, t in enumerate(self.transitions):
            out.setdefault(t.source, []).append((i, t))
        return {q: tuple(ts) for q, ts in out.items()}

    @cached_property
    def _refreshed(self) -> Mapping:
        inv = {}
        for x, qs in self.refresh.items():
            for q in qs:
                inv.setdefault(q, set()).add(x)
        return {q: frozenset(xs) for q, xs in inv.items()}

    def refreshed_at(self, q) -> frozenset:
        """Variables freed on entering ``q``."""
        return self._refreshed.get(q, frozenset())

    @property
    def has_epsilon(self) -> bool:
        return any(t.label is EPS for t in self.transitions)

    def size(self) -> int:
        return len(self.states) + len(self.transitions)

    def rename_variables(self, mapping: Mapping) -> "Gva":
        def sym(s):
            return mapping.get(s, s) if isinstance(s, Var) else s

        def guard(g):
            atoms = [
                a if a.kind == TRUE_KIND else Atom(a.kind, sym(a.lhs), sym(a.rhs))
                for a in g.atoms
            ]
            return Guard(tuple(atoms))

        ts = [Transition(t.source, sym(t.label), guard(t.guard), t.target) for t in self.transitions]
        return Gva(
            states=self.states,
            initial=self.initial,
            accepting=self.accepting,
            transitions=ts,
            refresh={sym(x): qs for x, qs in self.refresh.items()},
            constants=self.constants,
            variables=frozenset(sym(x) for x in self.variables),
            name=self.name,
        )

    def map_states(self, fn, name=None) -> "Gva":
        ts = [Transition(fn(t.source), t.label, t.guard, fn(t.target)) for t in self.transitions]
        return Gva(
            states=[fn(q) for q in self.states],
            initial={fn(q) for q in self.initial},
            accepting={fn(q) for q in self.accepting},
            transitions=ts,
            refresh={x: {fn(q) for q in qs} for x, qs in self.refresh.items()},
            constants=self.constants,
            variables=self.variables,
            name=self.name if name is None else name,
        )

    def replace(self, **changes) -> "Gva":
        fields_ = dict(
            states=self.states,
            initial=self.initial,
            accepting=self.accepting,
            transitions=self.transitions,
            refresh=self.refresh,
            constants=self.constants,
            variables=self.variables,
            name=self.name,
        )
        fields_.update(changes)
        return Gva(**fields_)


def validate_gva(a: Gva) -> list[Diagnostic]:
    diags = []
    states = set(a.states)

    def state(q, where):
        if q not in states:
            diags.append(Diagnostic("UnknownState", f"state {q!r} is not declared", where))

    def operand(s, where):
        if isinstance(s, Var) and s not in a.variables:
            diags.append(Diagnostic("UndeclaredVariable", f"variable {s} is not declared", where))
        elif isinstance(s, Letter) and s not in a.constants:
            diags.append(Diagnostic("UndeclaredLetter", f"letter {s} is not a constant", where))

    for q in sorted(a.initial):
        state(q, "initial")
    for q in sorted(a.accepting):
        state(q, "accepting")
    for i, t in enumerate(a.transitions):
        where = f"transition {i}"
        state(t.source, where)
        state(t.target, where)
        if not isinstance(t.label, (Letter, Var, Epsilon)):
            diags.append(Diagnostic("BadLabel", f"label {t.label!r}", where))
        elif t.label is not EPS:
            operand(t.label, where)
        for atom in t.guard.atoms:
            for s in (atom.lhs, atom.rhs):
                if s is not None:
                    operand(s, where)
    for x, qs in a.refresh.items():
        operand(x, f"refresh {x}")
        for q in sorted(qs):
            state(q, f"refresh {x}")
    for c in sorted(a.constants):
        if c.is_fresh:
            diags.append(Diagnostic("ReservedLetter", f"letter {c} uses the reserved prefix", "constants"))
    return diags


@dataclass(frozen=True)
class NfmaTransition:
    """``kind`` is "read" (register index), "reassign" (index) or "eps"."""

    source: str
    kind: str
    register: int | None
    target: str

    def __post_init__(self):
        if self.kind not in ("read", "reassign", "eps"):
            raise ValueError(f"unknown NFMA transition kind {self.kind!r}")
        if (self.kind == "eps") != (self.register is None):
            raise ValueError("only plain eps transitions omit the register")


@dataclass(frozen=True, eq=False)
class Nfma:
    registers: int
    states: tuple
    initial: str
    accepting: frozenset
    transitions: tuple
    init_assign: Mapping = field(default_factory=dict)
    name: str = "N"

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "states", tuple(dict.fromkeys(self.states)))
        set_(self, "accepting", frozenset(self.accepting))
        set_(self, "transitions", tuple(self.transitions))
        set_(self, "init_assign", MappingProxyType(dict(sorted(self.init_assign.items()))))
        if self.registers < 1:
            raise ValueError("an NFMA has at least one register")
        for t in self.transitions:
            if t.register is not None and not 1 <= t.register <= self.registers:
                raise ValueError(f"register {t.register} out of range 1..{self.registers}")
        for r in self.init_assign:
            if not 1 <= r <= self.registers:
                raise ValueError(f"register {r} out of range 1..{self.registers}")

    def _key(self):
        return (self.name, self.registers, self.states, self.initial, self.accepting,
                self.transitions, tuple(self.init_assign.items()))

    def __eq__(self, other):
        if not isinstance(other, Nfma):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def size(self) -> int:
        return len(self.states) + len(self.transitions)


@dataclass(frozen=True, eq=False)
class Fa:
    """Classical automaton over an explicit finite letter set.

    Words mentioning letters outside ``letters`` are rejected.
    """

    letters: frozenset
    states: tuple
    initial: frozenset
    accepting: frozenset
    transitions: tuple
    name: str = "F"

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "letters", frozenset(self.letters))
        set_(self, "states", tuple(dict.fromkeys(self.states)))
        set_(self, "initial", frozenset(self.initial))
        set_(self, "accepting", frozenset(self.accepting))
        set_(self, "transitions", tuple(tuple(t) for t in self.transitions))
        for src, c, dst in self.transitions:
            if c not in self.letters:
                raise ValueError(f"letter {c} not in the declared letter set")

    def _key(self):
        return (self.name, self.letters, self.states, self.initial, self.accepting, self.transitions)

    def __eq__(self, other):
        if not isinstance(other, Fa):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @cached_property
    def delta(self) -> Mapping:
        out = {}
        for src, c, dst in self.transitions:
            out.setdefault((src, c), []).append(dst)
        return {k: tuple(v) for k, v in out.items()}

    @property
    def is_deterministic(self) -> bool:
        return len(self.initial) <= 1 and all(len(v) == 1 for v in self.delta.values())

    @property
    def is_complete(self) -> bool:
        return all((q, c) in self.delta for q in self.states for c in self.letters)

    def accepts(self, word) -> bool:
        current = set(self.initial)
        for c in word:
            current = {d for q in current for d in self.delta.get((q, c), ())}
            if not current:
                return False
        return bool(current & self.accepting)

    def determinize(self) -> "Fa":
        """Subset construction; reachable subsets become states d0, d1, ..."""
        letters = sorted(self.letters)
        start = frozenset(self.initial)
        index, order, trans = {start: 0}, [start], []
        i = 0
        while i < len(order):
            cur = order[i]
            i += 1
            for c in letters:
                nxt = frozenset(d for q in cur for d in self.delta.get((q, c), ()))
                if not nxt:
                    continue
                if nxt not in index:
                    index[nxt] = len(order)
                    order.append(nxt)
                trans.append((f"d{index[cur]}", c, f"d{index[nxt]}"))
        return Fa(
            letters=self.letters,
            states=[f"d{j}" for j in range(len(order))],
            initial={"d0"},
            accepting={f"d{j}" for j, s in enumerate(order) if s & self.accepting},
            transitions=trans,
            name=self.name,
        )


def as_letter(x) -> Letter:
    return x if isinstance(x, Letter) else Letter(str(x))


def word_of(tokens) -> tuple:
    """Coerce an iterable of strings/letters into a tuple of letters."""
    if isinstance(tokens, str):
        raise TypeError("pass a word as a sequence of letter tokens, not a string")
    return tuple(as_letter(t) for t in tokens)
