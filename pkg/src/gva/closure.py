"""Closure constructions, FA complement, asynchronous product, NFMA
translation and the L_n benchmark family."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (
    EPS,
    TRUE,
    Fa,
    Guard,
    Gva,
    Letter,
    Nfma,
    Transition,
    Var,
    eq,
    neq,
)
from .errors import NondeterministicFa

BLANK = Letter("#blank")


@dataclass(frozen=True)
class RenamingPlan:
    """Injective variable renamings making the automata's variables disjoint."""

    mappings: tuple

    def apply(self, automata) -> list:
        return [a.rename_variables(m) if m else a for a, m in zip(automata, self.mappings)]


def plan_renaming(automata) -> RenamingPlan:
    """Keep names where possible; suffix clashing ones with the operand index."""
    taken = set()
    mappings = []
    for i, a in enumerate(automata):
        mapping = {}
        clashes = sorted(v for v in a.variables if v.name in taken)
        keep = {v.name for v in a.variables} - {v.name for v in clashes}
        taken |= keep
        for v in clashes:
            n, cand = 0, f"{v.name}_{i}"
            while cand in taken or cand in keep:
                n += 1
                cand = f"{v.name}_{i}_{n}"
            mapping[v] = Var(cand)
            taken.add(cand)
        mappings.append(mapping)
    return RenamingPlan(tuple(mappings))


def rename_apart(automata) -> list:
    return plan_renaming(automata).apply(automata)


def _tuple_namer(tuples):
    """Dotted names for state tuples, disambiguated when two tuples collide."""
    names, used = {}, set()
    for tup in tuples:
        base = ".".join(tup)
        cand, n = base, 0
        while cand in used:
            n += 1
            cand = f"{base}~{n}"
        used.add(cand)
        names[tup] = cand
    return names


def _prefixed(a: Gva, i: int) -> Gva:
    return a.map_states(lambda q: f"{i}.{q}")


def gva_union(a: Gva, b: Gva) -> Gva:
    a, b = rename_apart([a, b])
    a, b = _prefixed(a, 0), _prefixed(b, 1)
    return Gva(
        states=a.states + b.states,
        initial=a.initial | b.initial,
        accepting=a.accepting | b.accepting,
        transitions=a.transitions + b.transitions,
        refresh={**a.refresh, **b.refresh},
        constants=a.constants | b.constants,
        variables=a.variables | b.variables,
        name=f"{a.name}_or_{b.name}",
    )


def gva_intersection(a: Gva, b: Gva) -> Gva:
    a, b = rename_apart([a, b])
    pairs = list(itertools.product(a.states, b.states))
    nm = _tuple_namer(pairs)
    ts = []
    for p, q in pairs:
        for _, t1 in a.outgoing.get(p, ()):
            if t1.label is EPS:
                ts.append(Transition(nm[p, q], EPS, t1.guard, nm[t1.target, q]))
                continue
            for _, t2 in b.outgoing.get(q, ()):
                if t2.label is EPS:
                    continue
                l1, l2 = t1.label, t2.label
                if isinstance(l1, Letter) and isinstance(l2, Letter) and l1 != l2:
                    continue  # a == b with distinct letters never holds
                g = Guard((eq(l1, l2),)) & t1.guard & t2.guard
                ts.append(Transition(nm[p, q], l1, g, nm[t1.target, t2.target]))
        for _, t2 in b.outgoing.get(q, ()):
            if t2.label is EPS:
                ts.append(Transition(nm[p, q], EPS, t2.guard, nm[p, t2.target]))
    refresh = {}
    for p, q in pairs:
        for x in a.refreshed_at(p) | b.refreshed_at(q):
            refresh.setdefault(x, set()).add(nm[p, q])
    return Gva(
        states=[nm[pq] for pq in pairs],
        initial={nm[p, q] for p, q in pairs if p in a.initial and q in b.initial},
        accepting={nm[p, q] for p, q in pairs if p in a.accepting and q in b.accepting},
        transitions=ts,
        refresh=refresh,
        constants=a.constants | b.constants,
        variables=a.variables | b.variables,
        name=f"{a.name}_and_{b.name}",
    )


def gva_concat(a: Gva, b: Gva) -> Gva:
    a, b = rename_apart([a, b])
    a, b = _prefixed(a, 0), _prefixed(b, 1)
    bridge = [
        Transition(f, EPS, TRUE, q)
        for f in a.states if f in a.accepting
        for q in b.states if q in b.initial
    ]
    return Gva(
        states=a.states + b.states,
        initial=a.initial,
        accepting=b.accepting,
        transitions=a.transitions + tuple(bridge) + b.transitions,
        refresh={**a.refresh, **b.refresh},
        constants=a.constants | b.constants,
        variables=a.variables | b.variables,
        name=f"{a.name}_then_{b.name}",
    )


def gva_star(a: Gva) -> Gva:
    """Kleene star through a hub state that is initial, accepting and frees
    every variable, so each iteration starts from an empty substitution."""
    a = _prefixed(a, 0)
    hub = "hub"
    ts = [Transition(hub, EPS, TRUE, q) for q in a.states if q in a.initial]
    ts += list(a.transitions)
    ts += [Transition(f, EPS, TRUE, hub) for f in a.states if f in a.accepting]
    refresh = {x: set(a.refresh.get(x, ())) | {hub} for x in a.variables}
    return Gva(
        states=(hub,) + a.states,
        initial={hub},
        accepting={hub},
        transitions=ts,
        refresh=refresh,
        constants=a.constants,
        variables=a.variables,
        name=f"{a.name}_star",
    )


def _fresh_name(base, used):
    cand, n = base, 0
    while cand in used:
        n += 1
        cand = f"{base}~{n}"
    used.add(cand)
    return cand


def complement_fa(f: Fa) -> Gva:
    """GVA for the complement of a deterministic FA over the infinite alphabet.

    Every state ``q`` gets an escape edge reading a variable that differs
    from each letter ``q`` can already read; the escape leads to a pair of
    accepting sink states that read anything.
    """
    if not f.is_deterministic:
        raise NondeterministicFa(f"{f.name} is not deterministic")
    used = set(f.states)
    ts = [Transition(src, c, TRUE, dst) for src, c, dst in f.transitions]
    states, refresh, accepting = list(f.states), {}, set(f.states) - f.accepting
    for i, q in enumerate(f.states):
        x = Var(f"x{i}")
        s1, s2 = _fresh_name(f"{q}~out", used), _fresh_name(f"{q}~any", used)
        readable = sorted({c for (src, c), _ in f.delta.items() if src == q})
        ts.append(Transition(q, x, Guard(tuple(neq(x, c) for c in readable)), s1))
        ts.append(Transition(s1, x, TRUE, s2))
        ts.append(Transition(s2, x, TRUE, s2))
        states += [s1, s2]
        accepting |= {s1, s2}
        refresh[x] = {s1, s2}
    return Gva(
        states=states,
        initial=f.initial,
        accepting=accepting,
        transitions=ts,
        refresh=refresh,
        constants=f.letters,
        variables=set(refresh),
        name=f"not_{f.name}",
    )


def async_product_with_origin(components) -> tuple:
    """Asynchronous product plus, per transition, the index of the component
    that moves."""
    comps = rename_apart(list(components))
    if not comps:
        raise ValueError("need at least one component")
    tuples = list(itertools.product(*(c.states for c in comps)))
    nm = _tuple_namer(tuples)
    ts, origin = [], []
    for p in tuples:
        for i, c in enumerate(comps):
            for _, t in c.outgoing.get(p[i], ()):
                q = p[:i] + (t.target,) + p[i + 1:]
                ts.append(Transition(nm[p], t.label, t.guard, nm[q]))
                origin.append(i)
    refresh = {}
    for p in tuples:
        for i, c in enumerate(comps):
            for x in c.refreshed_at(p[i]):
                refresh.setdefault(x, set()).add(nm[p])
    product = Gva(
        states=[nm[p] for p in tuples],
        initial={nm[p] for p in tuples if all(s in c.initial for s, c in zip(p, comps))},
        accepting={nm[p] for p in tuples if all(s in c.accepting for s, c in zip(p, comps))},
        transitions=ts,
        refresh=refresh,
        constants=frozenset().union(*(c.constants for c in comps)),
        variables=frozenset().union(*(c.variables for c in comps)),
        name="_x_".join(c.name for c in comps),
    )
    return product, tuple(origin)


def async_product(components) -> Gva:
    return async_product_with_origin(components)[0]


def nfma_to_gva(n: Nfma) -> Gva:
    """Translate an NFMA into a GVA with one variable per register.

    A fresh start state binds the registers with equality guards: assigned
    registers to their initial letter, empty ones to the reserved letter
    ``#blank`` that never occurs in input words.  A reassignment of register
    ``l`` becomes an epsilon edge into a state refreshing ``x_l`` followed by
    an epsilon edge choosing a value distinct from every other register.
    """
    regs = [Var(f"x{i}") for i in range(1, n.registers + 1)]
    used = set(n.states)
    start = _fresh_name("start", used)
    init_atoms = []
    constants = set(n.init_assign.values())
    for i, x in enumerate(regs, 1):
        value = n.init_assign.get(i)
        if value is None:
            value = BLANK
            constants.add(BLANK)
        init_atoms.append(eq(x, value))
    ts = [Transition(start, EPS, Guard(tuple(init_atoms)), n.initial)]
    states = [start] + list(n.states)
    refresh = {}
    for t in n.transitions:
        if t.kind == "read":
            ts.append(Transition(t.source, regs[t.register - 1], TRUE, t.target))
        elif t.kind == "eps":
            ts.append(Transition(t.source, EPS, TRUE, t.target))
        else:
            xl = regs[t.register - 1]
            mid = _fresh_name(f"{t.source}~{t.register}~{t.target}", used)
            states.append(mid)
            refresh.setdefault(xl, set()).add(mid)
            others = Guard(tuple(neq(xl, xi) for xi in regs if xi != xl))
            if not others.atoms:
                others = Guard((eq(xl, xl),))  # still guess the new value
            ts.append(Transition(t.source, EPS, TRUE, mid))
            ts.append(Transition(mid, EPS, others, t.target))
    return Gva(
        states=states,
        initial={start},
        accepting=n.accepting,
        transitions=ts,
        refresh=refresh,
        constants=constants,
        variables=regs,
        name=n.name,
    )


def gen_ln(n: int) -> Gva:
    """Linear GVA for the palindrome-like family L_n (4n+2 states,
    1+3n+n^2 transitions)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    xa = [Var(f"xa{i}") for i in range(1, n + 1)]
    xb = [Var(f"xb{i}") for i in range(1, n + 1)]
    s = [f"s{i}" for i in range(4 * n + 2)]
    ts = []
    for i in range(n):
        ts.append(Transition(s[i], xa[i], TRUE, s[i + 1]))
    for i in range(n):
        for j in range(n):
            ts.append(Transition(s[n + i], xb[i], Guard((eq(xb[i], xa[j]),)), s[n + i + 1]))
    ts.append(Transition(s[2 * n], Letter("#"), TRUE, s[2 * n + 1]))
    mirror = list(reversed(xb)) + list(reversed(xa))
    for i, x in enumerate(mirror):
        ts.append(Transition(s[2 * n + 1 + i], x, TRUE, s[2 * n + 2 + i]))
    return Gva(
        states=s,
        initial={s[0]},
        accepting={s[-1]},
        transitions=ts,
        constants={Letter("#")},
        variables=xa + xb,
        name=f"L{n}",
    )
