"""Configurations, single steps, epsilon-closure and membership."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .coherence import canonical_key
from .core import (
    EMPTY,
    EPS,
    Gva,
    Substitution,
    Transition,
    Var,
    fresh_letters,
    solve_guard,
    word_of,
)
from .errors import PoolMissingInput


@dataclass(frozen=True)
class Configuration:
    sigma: Substitution
    state: str

    def __repr__(self):
        return f"({self.sigma!r}, {self.state})"


@dataclass(frozen=True)
class StepWitness:
    """One fired transition: where from, which edge, what was guessed."""

    source: Configuration
    index: int
    transition: Transition
    guess: Substitution
    target: Configuration
    read: object  # Letter or EPS


def _moves(a: Gva, c: Configuration, pool, letter):
    """Yield ``StepWitness`` for every step from ``c``.

    ``letter`` is a Letter, ``EPS``, or ``None`` meaning "any letter of the
    pool".  ``pool`` must be an ordered sequence.
    """
    sigma = c.sigma
    for idx, t in a.outgoing.get(c.state, ()):
        lab = t.label
        fixed = {}
        if lab is EPS:
            if letter is not EPS:
                continue
        else:
            if letter is EPS:
                continue
            if isinstance(lab, Var) and lab not in sigma:
                if letter is not None:
                    fixed[lab] = letter
            elif letter is not None and sigma.apply(lab) != letter:
                continue
        needed = set(t.guard.variables)
        if isinstance(lab, Var):
            needed.add(lab)
        free = sorted(needed.difference(sigma, fixed))
        bound = dict(sigma)
        bound.update(fixed)
        drop = a.refreshed_at(t.target)
        for sol in solve_guard(bound, t.guard, free, pool):
            full = dict(bound)
            full.update(sol)
            read = EPS if lab is EPS else (full[lab] if isinstance(lab, Var) else lab)
            guess = dict(fixed)
            guess.update(sol)
            nxt = Substitution({k: v for k, v in full.items() if k not in drop})
            yield StepWitness(c, idx, t, Substitution(guess), Configuration(nxt, t.target), read)


def _ordered_pool(a: Gva, pool):
    return sorted(set(pool) | a.constants)


def step(a: Gva, c: Configuration, input, pool) -> set:
    """All ``(successor, witness)`` pairs for one step on ``input``.

    The automaton's constants are always added to ``pool``.
    """
    if input is not EPS and input not in set(pool):
        raise PoolMissingInput(f"input letter {input} is not in the pool")
    return {(w.target, w) for w in _moves(a, c, _ordered_pool(a, pool), input)}


def eps_closure(a: Gva, cs, pool) -> set:
    order = _ordered_pool(a, pool)
    seen = set(cs)
    todo = list(seen)
    while todo:
        c = todo.pop()
        for w in _moves(a, c, order, EPS):
            if w.target not in seen:
                seen.add(w.target)
                todo.append(w.target)
    return seen


def initial_configurations(a: Gva) -> list:
    return [Configuration(EMPTY, q) for q in a.states if q in a.initial]


def membership_pool(a: Gva, w, extra: int = 0) -> list:
    """Letters of ``w``, the constants, and one fresh letter per variable
    (plus ``extra`` more)."""
    base = set(w) | a.constants
    return sorted(base) + fresh_letters(len(a.variables) + extra, avoid=base)


def membership(a: Gva, w, extra: int = 0):
    """Accepting trace of ``a`` on ``w``, or None when ``w`` is rejected.

    An empty trace means the empty word is accepted without moving.  The
    search is breadth-first over (position, configuration), merging
    configurations that are coherent w.r.t. the letters of ``w`` and the
    constants.
    """
    w = word_of(w)
    base = frozenset(w) | a.constants
    pool = membership_pool(a, w, extra)
    n = len(w)
    parent = {}
    queue = deque()
    seen = set()
    for c in initial_configurations(a):
        key = (0, canonical_key(c.state, c.sigma, base))
        if key not in seen:
            seen.add(key)
            parent[(0, c)] = None
            queue.append((0, c))
    while queue:
        node = queue.popleft()
        pos, c = node
        if pos == n and c.state in a.accepting:
            return _unwind(parent, node)
        moves = [(pos, EPS)]
        if pos < n:
            moves.append((pos + 1, w[pos]))
        for npos, letter in moves:
            for wit in _moves(a, c, pool, letter):
                key = (npos, canonical_key(wit.target.state, wit.target.sigma, base))
                if key in seen:
                    continue
                seen.add(key)
                child = (npos, wit.target)
                parent[child] = (node, wit)
                queue.append(child)
    return None


def _unwind(parent, node) -> list:
    trace = []
    while parent[node] is not None:
        node, wit = parent[node]
        trace.append(wit)
    trace.reverse()
    return trace


def replay_step(a: Gva, source: Configuration, index: int, guess):
    """Re-fire transition ``index`` from ``source`` with exactly ``guess``.

    Returns the resulting witness, or None if the step is not legal.
    """
    if not 0 <= index < len(a.transitions):
        return None
    t = a.transitions[index]
    if t.source != source.state:
        return None
    guess = Substitution(guess)
    needed = set(t.guard.variables)
    if isinstance(t.label, Var):
        needed.add(t.label)
    if set(guess) != needed - set(source.sigma):
        return None
    full = dict(source.sigma)
    full.update(guess)
    for atom in t.guard.atoms:
        if atom.kind == "true":
            continue
        lhs = full[atom.lhs] if isinstance(atom.lhs, Var) else atom.lhs
        rhs = full[atom.rhs] if isinstance(atom.rhs, Var) else atom.rhs
        if (lhs == rhs) != (atom.kind == "eq"):
            return None
    read = EPS if t.label is EPS else (full[t.label] if isinstance(t.label, Var) else t.label)
    drop = a.refreshed_at(t.target)
    nxt = Configuration(Substitution({k: v for k, v in full.items() if k not in drop}), t.target)
    return StepWitness(source, index, t, guess, nxt, read)


def accepts_trace(a: Gva, w, trace) -> bool:
    w = word_of(w)
    trace = list(trace)
    if not trace:
        return not w and bool(a.initial & a.accepting)
    first = trace[0].source
    if first.state not in a.initial or first.sigma:
        return False
    current, read = first, []
    for wit in trace:
        if wit.source != current:
            return False
        redo = replay_step(a, current, wit.index, wit.guess)
        if redo is None or redo.target != wit.target or redo.read != wit.read:
            return False
        if redo.read is not EPS:
            read.append(redo.read)
        current = redo.target
    return tuple(read) == w and current.state in a.accepting


def enumerate_language(a: Gva, pool, max_len: int) -> set:
    """Words over ``pool`` of length at most ``max_len`` accepted by ``a``.

    Deliberately naive: every transition is fired by trying all value tuples
    for its unbound variables.  Read letters come from ``pool``; variables
    that are only guessed may also take constants or fresh letters.
    """
    alphabet = sorted(set(pool))
    base = set(alphabet) | a.constants
    guesses = sorted(base) + fresh_letters(len(a.variables), avoid=base)
    accepted = set()
    visited = set()
    stack = [(dict(), q, ()) for q in sorted(a.initial)]
    while stack:
        env, q, word = stack.pop()
        key = (frozenset(env.items()), q, word)
        if key in visited:
            continue
        visited.add(key)
        if q in a.accepting:
            accepted.add(word)
        for t in a.transitions:
            if t.source != q:
                continue
            names = {t.label} if isinstance(t.label, Var) else set()
            names |= t.guard.variables
            unbound = sorted(v for v in names if v not in env)
            for values in itertools.product(guesses, repeat=len(unbound)):
                full = dict(env)
                full.update(zip(unbound, values))
                if not all(_naive_atom(atom, full) for atom in t.guard.atoms):
                    continue
                if t.label is EPS:
                    nword = word
                else:
                    letter = full[t.label] if isinstance(t.label, Var) else t.label
                    if letter not in alphabet or len(word) >= max_len:
                        continue
                    nword = word + (letter,)
                freed = {x for x, qs in a.refresh.items() if t.target in qs}
                nenv = {k: v for k, v in full.items() if k not in freed}
                stack.append((nenv, t.target, nword))
    return accepted


def _naive_atom(atom, env) -> bool:
    if atom.kind == "true":
        return True
    lhs = env.get(atom.lhs, atom.lhs)
    rhs = env.get(atom.rhs, atom.rhs)
    return (lhs == rhs) if atom.kind == "eq" else (lhs != rhs)
