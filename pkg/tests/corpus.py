"""Seeded random generators for GVAs, FA-like GVAs and NFMAs."""
import random

from gva.core import EPS, Fa, Guard, Gva, Letter, Nfma, NfmaTransition, Transition, Var, eq, neq

WORD_POOL = [Letter(c) for c in "abcd"]
CONSTANTS = [Letter("c"), Letter("d")]
VARIABLES = [Var("x"), Var("y")]


def random_gva(rng, simulation=False, max_states=4, max_trans=6, eps_rate=0.15, name="R"):
    """Small random GVA.

    With ``simulation`` set the result has one initial state, no epsilon
    moves and every state accepting.
    """
    n = rng.randint(1, max_states)
    states = [f"s{i}" for i in range(n)]
    variables = rng.sample(VARIABLES, rng.randint(0, 2))
    constants = rng.sample(CONSTANTS, rng.randint(0, 2))
    operands = variables + constants
    trans = []
    for _ in range(rng.randint(1, max_trans)):
        labels = operands[:] or [Letter("c")]
        if not simulation and rng.random() < eps_rate:
            label = EPS
        else:
            label = rng.choice(labels)
            if isinstance(label, Letter) and label not in constants:
                constants.append(label)
                operands.append(label)
        atoms = []
        for _ in range(rng.choice([0, 0, 1, 1, 2])):
            if not operands:
                break
            lhs, rhs = rng.choice(operands), rng.choice(operands)
            atoms.append((eq if rng.random() < 0.4 else neq)(lhs, rhs))
        trans.append(Transition(rng.choice(states), label, Guard(tuple(atoms)), rng.choice(states)))
    refresh = {}
    for x in variables:
        qs = {q for q in states if rng.random() < 0.35}
        if qs:
            refresh[x] = qs
    if simulation:
        initial, accepting = {states[0]}, set(states)
    else:
        initial = {states[0]} | ({states[-1]} if rng.random() < 0.15 else set())
        accepting = {q for q in states if q not in initial and rng.random() < 0.6}
        accepting |= {q for q in initial if rng.random() < 0.1}
    return Gva(states, initial, accepting, trans, refresh,
               constants=set(constants), variables=set(variables), name=name)


def corpus(count=200, seed=2024, **kw):
    rng = random.Random(seed)
    return [random_gva(rng, name=f"R{i}", **kw) for i in range(count)]


def random_fa_gva(rng, letters=("a", "b"), max_states=3, max_trans=5, name="F"):
    """Variable-free GVA in simulation form (an FA with all states accepting)."""
    n = rng.randint(1, max_states)
    states = [f"f{i}" for i in range(n)]
    sig = [Letter(c) for c in letters]
    trans = [
        Transition(rng.choice(states), rng.choice(sig), Guard(), rng.choice(states))
        for _ in range(rng.randint(0, max_trans))
    ]
    return Gva(states, {states[0]}, set(states), trans, constants=set(sig), variables=(), name=name)


def random_fa(rng, letters=("a", "b"), max_states=3, deterministic=False, name="F"):
    n = rng.randint(1, max_states)
    states = [f"f{i}" for i in range(n)]
    sig = [Letter(c) for c in letters]
    trans = []
    for q in states:
        for c in sig:
            if deterministic:
                if rng.random() < 0.7:
                    trans.append((q, c, rng.choice(states)))
            else:
                for d in states:
                    if rng.random() < 0.3:
                        trans.append((q, c, d))
    accepting = {q for q in states if rng.random() < 0.5}
    return Fa(set(sig), states, {states[0]}, accepting, trans, name=name)


def random_nfma(rng, name="N"):
    k = rng.randint(1, 3)
    n = rng.randint(1, 4)
    states = [f"n{i}" for i in range(n)]
    trans = []
    for _ in range(rng.randint(1, 6)):
        kind = rng.choice(["read", "read", "reassign", "reassign", "eps"])
        reg = None if kind == "eps" else rng.randint(1, k)
        trans.append(NfmaTransition(rng.choice(states), kind, reg, rng.choice(states)))
    init = {}
    for r in range(1, k + 1):
        if rng.random() < 0.4:
            init[r] = rng.choice(WORD_POOL)
    accepting = {q for q in states if rng.random() < 0.5}
    return Nfma(k, states, states[0], accepting, trans, init, name=name)
