"""Reference implementations that share no code with the library's search
procedures.  Each is deliberately brute force."""
import itertools

from gva.core import EPS, Letter, Var, fresh_letters


def _holds(atom, env):
    if atom.kind == "true":
        return True
    l = env[atom.lhs] if isinstance(atom.lhs, Var) else atom.lhs
    r = env[atom.rhs] if isinstance(atom.rhs, Var) else atom.rhs
    return (l == r) is (atom.kind == "eq")


def fire_all(a, env, q, values):
    """Every (letter-or-EPS, env', q') reachable by one transition, trying
    all value tuples for the unbound variables."""
    out = []
    for t in a.transitions:
        if t.source != q:
            continue
        names = set(t.guard.variables)
        if isinstance(t.label, Var):
            names.add(t.label)
        todo = sorted(n for n in names if n not in env)
        for vals in itertools.product(values, repeat=len(todo)):
            full = dict(env)
            full.update(zip(todo, vals))
            if all(_holds(at, full) for at in t.guard.atoms):
                read = t.label if t.label is EPS or isinstance(t.label, Letter) else full[t.label]
                gone = {x for x, qs in a.refresh.items() if t.target in qs}
                out.append((read, frozenset((k, v) for k, v in full.items() if k not in gone), t.target))
    return out


def bounded_nonempty(a, values, bound):
    """Is some word of length <= bound over ``values`` accepted?  Layered
    reachability over concrete configurations; stops early once a layer
    repeats."""

    def close(layer):
        layer = set(layer)
        todo = list(layer)
        while todo:
            env, q = todo.pop()
            for read, env2, q2 in fire_all(a, dict(env), q, values):
                if read is EPS and (env2, q2) not in layer:
                    layer.add((env2, q2))
                    todo.append((env2, q2))
        return frozenset(layer)

    layer = close({(frozenset(), q) for q in a.initial})
    seen = set()
    for _ in range(bound + 1):
        if any(q in a.accepting for _, q in layer):
            return True
        if layer in seen:
            return False
        seen.add(layer)
        nxt = set()
        for env, q in layer:
            for read, env2, q2 in fire_all(a, dict(env), q, values):
                if read is not EPS:
                    nxt.add((env2, q2))
        layer = close(nxt)
    return False


def fa_simulates(a1, a2):
    """Greatest-fixpoint simulation for variable-free, guard-free GVAs."""
    def succ(a, q):
        return [(t.label, t.target) for t in a.transitions if t.source == q]

    rel = {(p, q) for p in a1.states for q in a2.states}
    changed = True
    while changed:
        changed = False
        for p, q in sorted(rel):
            ok = all(
                any(c2 == c and (p2, q2) in rel for c2, q2 in succ(a2, q))
                for c, p2 in succ(a1, p)
            )
            if not ok:
                rel.discard((p, q))
                changed = True
    (i1,), (i2,) = a1.initial, a2.initial
    return (i1, i2) in rel


def nfma_language(n, pool, max_len):
    """Words over ``pool`` up to ``max_len`` accepted by an NFMA, straight
    from its register semantics (empty registers never match)."""
    alphabet = set(pool)
    base = alphabet | set(n.init_assign.values())
    values = sorted(base) + fresh_letters(n.registers, avoid=base)
    start = tuple(n.init_assign.get(i) for i in range(1, n.registers + 1))
    todo = [(n.initial, start, ())]
    seen, words = set(), set()
    while todo:
        node = todo.pop()
        if node in seen:
            continue
        seen.add(node)
        q, regs, w = node
        if q in n.accepting:
            words.add(w)
        for t in n.transitions:
            if t.source != q:
                continue
            if t.kind == "eps":
                todo.append((t.target, regs, w))
            elif t.kind == "read":
                c = regs[t.register - 1]
                if c is not None and c in alphabet and len(w) < max_len:
                    todo.append((t.target, regs, w + (c,)))
            else:
                l = t.register - 1
                others = {r for i, r in enumerate(regs) if i != l and r is not None}
                for c in values:
                    if c not in others:
                        todo.append((t.target, regs[:l] + (c,) + regs[l + 1:], w))
    return words


def all_words(pool, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(pool, repeat=n)
