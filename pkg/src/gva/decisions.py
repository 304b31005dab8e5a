"""Nonemptiness with shortest witnesses, and containment against an FA."""
from __future__ import annotations

from collections import deque
from enum import Enum

from .closure import complement_fa, gva_intersection
from .coherence import canonical_key
from .core import EPS, Fa, Gva, fresh_letters
from .semantics import _moves, initial_configurations, membership_pool


def bold_sigma(a: Gva) -> list:
    """Constants followed by one reserved fresh letter per variable."""
    return sorted(a.constants) + fresh_letters(len(a.variables), avoid=a.constants)


def nonemptiness(a: Gva):
    """``(word, trace)`` for a shortest accepted word, or None if L(a) is empty.

    0-1 breadth-first search over configurations whose values range over
    :func:`bold_sigma`: epsilon steps cost nothing, letter steps cost one.
    Configurations coherent w.r.t. the constants are merged.
    """
    pool = bold_sigma(a)
    base = a.constants
    best = {}  # key -> (dist, config, parent key, witness)
    dq = deque()
    for c in initial_configurations(a):
        k = canonical_key(c.state, c.sigma, base)
        if k not in best:
            best[k] = (0, c, None, None)
            dq.append((0, k))
    done = set()
    while dq:
        d, k = dq.popleft()
        if k in done or best[k][0] != d:
            continue
        done.add(k)
        c = best[k][1]
        if c.state in a.accepting:
            return _witness(best, k)
        for wit in _moves(a, c, pool, None):
            _relax(best, dq, k, d + 1, wit, base, front=False)
        for wit in _moves(a, c, pool, EPS):
            _relax(best, dq, k, d, wit, base, front=True)
    return None


def _relax(best, dq, parent, dist, wit, base, front):
    k = canonical_key(wit.target.state, wit.target.sigma, base)
    old = best.get(k)
    if old is not None and old[0] <= dist:
        return
    best[k] = (dist, wit.target, parent, wit)
    if front:
        dq.appendleft((dist, k))
    else:
        dq.append((dist, k))


def _witness(best, k):
    trace = []
    while best[k][2] is not None:
        _, _, parent, wit = best[k]
        trace.append(wit)
        k = parent
    trace.reverse()
    word = tuple(w.read for w in trace if w.read is not EPS)
    return word, trace


class Direction(Enum):
    GVA_IN_FA = "gva-in-fa"
    FA_IN_GVA = "fa-in-gva"


GvaInFa = Direction.GVA_IN_FA
FaInGva = Direction.FA_IN_GVA


def containment_vs_fa(a: Gva, f: Fa, direction: Direction):
    """None when the containment holds, else a counterexample word.

    An FA rejects every word using a letter outside its declared set.
    """
    if direction is Direction.GVA_IN_FA:
        found = nonemptiness(gva_intersection(a, complement_fa(f.determinize())))
        return None if found is None else found[0]
    if direction is Direction.FA_IN_GVA:
        return _fa_minus_gva(f.determinize(), a)
    raise ValueError(f"unknown direction {direction!r}")


def _fa_minus_gva(d: Fa, a: Gva):
    """Shortest word of L(d) not in L(a), by a subset construction over the
    configurations of ``a`` (finitely many over the pool below)."""
    letters = sorted(d.letters)
    pool = membership_pool(a, letters)
    base = frozenset(letters) | a.constants

    def close(configs):
        reps = {}
        todo = []
        for c in configs:
            k = canonical_key(c.state, c.sigma, base)
            if k not in reps:
                reps[k] = c
                todo.append(c)
        while todo:
            c = todo.pop()
            for wit in _moves(a, c, pool, EPS):
                k = canonical_key(wit.target.state, wit.target.sigma, base)
                if k not in reps:
                    reps[k] = wit.target
                    todo.append(wit.target)
        return reps

    def accepting(reps):
        return any(c.state in a.accepting for c in reps.values())

    start_reps = close(initial_configurations(a))
    start = (next(iter(d.initial)), frozenset(start_reps))
    reps_of = {start[1]: start_reps}
    parent = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        q, macro = node
        if q in d.accepting and not accepting(reps_of[macro]):
            word = []
            while parent[node] is not None:
                node, c = parent[node]
                word.append(c)
            return tuple(reversed(word))
        for c in letters:
            nxt = d.delta.get((q, c))
            if not nxt:
                continue
            succ = [w.target for r in reps_of[macro].values() for w in _moves(a, r, pool, c)]
            reps = close(succ)
            key = frozenset(reps)
            reps_of.setdefault(key, reps)
            child = (nxt[0], key)
            if child not in parent:
                parent[child] = (node, c)
                queue.append(child)
    return None
