"""Coherence of substitutions and the transfer functions built on it.

Two substitutions are coherent w.r.t. a letter set ``C`` when they have the
same domain, agree on every binding into ``C`` and induce the same equality
pattern.  Coherent configurations have the same future, which is what makes
finite letter pools sufficient everywhere in this package.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .core import (
    EPS,
    FRESH_PREFIX,
    Letter,
    Substitution,
    Var,
    guard_satisfies,
    subst_disjoint_union,
)
from .errors import PreconditionViolation


def coherent(C, sbar: Mapping, s: Mapping) -> bool:
    C = frozenset(C)
    if set(sbar) != set(s):
        return False
    for x in sbar:
        a, b = sbar[x], s[x]
        if (a in C or b in C) and a != b:
            return False
    keys = list(sbar)
    for i, x in enumerate(keys):
        for y in keys[i + 1:]:
            if (sbar[x] == sbar[y]) != (s[x] == s[y]):
                return False
    return True


def canonical_key(state, sigma: Mapping, base) -> tuple:
    """Hashable key equal for configurations coherent w.r.t. ``base``.

    Letters outside ``base`` are replaced by their first-occurrence index in
    variable order.
    """
    ren = {}
    items = []
    for x, v in sigma.items():
        if v in base:
            items.append((x, v))
        else:
            items.append((x, ren.setdefault(v, len(ren))))
    return state, tuple(items)


@dataclass(frozen=True)
class Pool:
    """A letter pool: an explicit finite part plus optional generated letters.

    With ``prefix`` set, the pool is infinite and also contains
    ``prefix + "1"``, ``prefix + "2"``, ...
    """

    letters: frozenset = frozenset()
    prefix: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "letters", frozenset(self.letters))

    def __contains__(self, c) -> bool:
        if c in self.letters:
            return True
        if self.prefix is None or not isinstance(c, Letter):
            return False
        tail = c.name[len(self.prefix):]
        return c.name.startswith(self.prefix) and tail.isdigit() and int(tail) >= 1

    def get(self, exclude: Iterable) -> Letter:
        """Least letter of the pool outside ``exclude``."""
        exclude = set(exclude)
        for c in sorted(self.letters):
            if c not in exclude:
                return c
        if self.prefix is None:
            raise PreconditionViolation("pool exhausted")
        i = 1
        while True:
            c = Letter(f"{self.prefix}{i}")
            if c not in exclude and c not in self.letters:
                return c
            i += 1


@dataclass(frozen=True)
class CoherenceContext:
    """Shared letters ``C`` and the two pools; by default each pool is ``C``
    plus its own unbounded run of fresh letters."""

    C: frozenset
    S1: Pool | None = None
    S2: Pool | None = None

    def __post_init__(self):
        object.__setattr__(self, "C", frozenset(self.C))
        if self.S1 is None:
            object.__setattr__(self, "S1", Pool(self.C, FRESH_PREFIX + "L"))
        if self.S2 is None:
            object.__setattr__(self, "S2", Pool(self.C, FRESH_PREFIX + "R"))
        for side in (self.S1, self.S2):
            missing = self.C - side.letters
            if missing:
                raise PreconditionViolation("both pools must contain C")

    def check(self, nvars: int) -> bool:
        """Pools share exactly C and each difference holds ``nvars`` letters."""
        for side, other in ((self.S1, self.S2), (self.S2, self.S1)):
            if any(c in other and c not in self.C for c in side.letters):
                return False
            if side.prefix is None and len(side.letters - self.C) < nvars:
                return False
        return True


def _check_disjoint(M1, g1):
    if set(M1).intersection(g1):
        raise PreconditionViolation("dom(gamma1) must be disjoint from dom(M1)")


def theta(ctx: CoherenceContext, M1: Mapping, gamma1: Mapping, M2: Mapping) -> Substitution:
    if len(gamma1) != 1:
        raise PreconditionViolation("theta expects a single binding")
    _check_disjoint(M1, gamma1)
    if not coherent(ctx.C, M1, M2):
        raise PreconditionViolation("M1 and M2 are not coherent")
    (x, c), = gamma1.items()
    if c in ctx.C:
        return Substitution({x: c})
    for y in sorted(M1):
        if M1[y] == c:
            return Substitution({x: M2[y]})
    # a brand new value: avoid C too, or the equality pattern would break
    used = set(M2.values()) | ctx.C
    return Substitution({x: ctx.S2.get(used)})


def big_theta(ctx: CoherenceContext, M1: Mapping, gamma1: Mapping, M2: Mapping) -> Substitution:
    _check_disjoint(M1, gamma1)
    if not coherent(ctx.C, M1, M2):
        raise PreconditionViolation("M1 and M2 are not coherent")
    acc1, acc2 = Substitution(M1), Substitution(M2)
    out = {}
    for x in sorted(gamma1):
        step = theta(ctx, acc1, {x: gamma1[x]}, acc2)
        out.update(step)
        acc1 = subst_disjoint_union(acc1, {x: gamma1[x]})
        acc2 = subst_disjoint_union(acc2, step)
    return Substitution(out)


def xi(ctx, s1, s2, s3, gamma2, alpha, beta, g2, s1p, s2p, s3p) -> Substitution:
    """Transfer Eloise's answer ``gamma2`` to a coherent position.

    Given a challenge letter ``s3(alpha)`` matched by ``gamma2`` on ``beta``
    under guard ``g2``, build ``gamma2'`` matching ``s3'(alpha)`` from the
    primed position.  Both challenges must be ground.
    """
    s1, s2, s3 = Substitution(s1), Substitution(s2), Substitution(s3)
    s1p, s2p, s3p = Substitution(s1p), Substitution(s2p), Substitution(s3p)
    gamma2 = Substitution(gamma2)
    if alpha is EPS or beta is EPS:
        raise PreconditionViolation("challenge labels must be letters or variables")
    if not set(s1).issubset(s3) or not set(s1p).issubset(s3p):
        raise PreconditionViolation("s1 must be contained in s3 (and primed)")
    if set(s3).intersection(s2) or set(s3p).intersection(s2p):
        raise PreconditionViolation("s3 and s2 must bind disjoint variables")
    stray = {s for s in (alpha, beta) if isinstance(s, Letter)} | set(g2.letters)
    if not stray <= ctx.C:
        raise PreconditionViolation("labels and guards may only mention letters of C")
    left = subst_disjoint_union(s3, s2)
    right = subst_disjoint_union(s3p, s2p)
    if not coherent(ctx.C, left, right) or not coherent(ctx.C, s1, s1p):
        raise PreconditionViolation("positions are not coherent")
    challenge = s3.apply(alpha)
    challenge_p = s3p.apply(alpha)
    if not isinstance(challenge, Letter) or not isinstance(challenge_p, Letter):
        raise PreconditionViolation("the challenge must be ground")
    _check_disjoint(s2, gamma2)
    full = subst_disjoint_union(s2, gamma2)
    if full.apply(beta) != challenge:
        raise PreconditionViolation("gamma2 does not match the challenge")
    guard_vars = set(g2.variables)
    if isinstance(beta, Var):
        guard_vars.add(beta)
    if set(gamma2) != guard_vars - set(s2):
        raise PreconditionViolation("gamma2 must bind exactly the free variables")
    if not guard_satisfies(full, g2):
        raise PreconditionViolation("gamma2 violates the guard")
    # Ground challenges: whether the letter is a constant, reuses a bound
    # value or is fresh, Theta over the joined substitutions picks the
    # corresponding letter on the primed side.
    return big_theta(ctx, left, gamma2, right)
