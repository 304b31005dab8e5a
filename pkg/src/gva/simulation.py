"""The finite simulation game between two GVAs, its solution, strategy
extraction and service composition."""
from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple

from .closure import async_product_with_origin
from .core import EMPTY, EPS, Diagnostic, Gva, Letter, Substitution, fresh_letters
from .errors import NotWinning, PreconditionViolation
from .semantics import Configuration, _moves


class AbelardPos(NamedTuple):
    sigma1: Substitution
    q1: str
    sigma2: Substitution
    q2: str


class EloisePos(NamedTuple):
    """Abelard has moved A1 to ``(sigma1, q1)``; Eloise must answer the
    letter ``sigma3(alpha)`` from ``(sigma2, q2)``."""

    sigma1: Substitution
    q1: str
    sigma2: Substitution
    q2: str
    sigma3: Substitution
    alpha: object

    @property
    def challenge(self) -> Letter:
        return self.sigma3.apply(self.alpha)


class EloiseMove(NamedTuple):
    target: AbelardPos
    index: int  # transition of A2
    guess: Substitution


@dataclass
class RestrictedGame:
    a1: Gva
    a2: Gva
    pool: tuple
    start: AbelardPos
    abelard: dict  # AbelardPos -> tuple of EloisePos
    eloise: dict  # EloisePos -> tuple of EloiseMove

    @property
    def positions(self) -> set:
        return set(self.abelard) | set(self.eloise)

    def successors(self, p) -> list:
        if isinstance(p, EloisePos):
            return [m.target for m in self.eloise[p]]
        return list(self.abelard[p])


@dataclass
class Strategy:
    """Eloise's choice at each Eloise position reachable under the strategy.

    ``routing`` maps an Eloise position to the index of the service that
    answers it, when the strategy comes from a composition.
    """

    start: AbelardPos
    moves: dict
    routing: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.moves)


def check_sim_preconditions(a: Gva) -> list:
    diags = []
    for i, t in enumerate(a.transitions):
        if t.label is EPS:
            diags.append(Diagnostic("EpsilonNotAllowed", "epsilon transition", f"transition {i}"))
    if len(a.initial) != 1:
        diags.append(Diagnostic("MultipleInitial", f"{len(a.initial)} initial states", "initial"))
    for q in a.states:
        if q not in a.accepting:
            diags.append(Diagnostic("NonAccepting", f"state {q} is not accepting", q))
    return diags


def normalize_for_simulation(a: Gva) -> Gva:
    """Reject epsilon moves and several initial states; make every state
    accepting (with a warning) when some are not."""
    diags = check_sim_preconditions(a)
    fatal = [d for d in diags if d.code != "NonAccepting"]
    if fatal:
        raise PreconditionViolation(f"{a.name}: " + "; ".join(str(d) for d in fatal))
    if len(diags) > len(fatal):
        warnings.warn(f"{a.name}: treating every state as accepting", stacklevel=3)
        return a.replace(accepting=a.states)
    return a


def game_pool(a1: Gva, a2: Gva, extra_fresh: int = 0) -> list:
    consts = a1.constants | a2.constants
    k = len(a1.variables) + len(a2.variables) + extra_fresh
    return sorted(consts) + fresh_letters(k, avoid=consts)


def build_restricted_game(a1: Gva, a2: Gva, extra_fresh: int = 0) -> RestrictedGame:
    a1, a2 = normalize_for_simulation(a1), normalize_for_simulation(a2)
    pool = game_pool(a1, a2, extra_fresh)
    (i1,), (i2,) = a1.initial, a2.initial
    start = AbelardPos(EMPTY, i1, EMPTY, i2)
    abelard, eloise = {}, {}
    todo = deque([start])
    seen = {start}

    def visit(p):
        if p not in seen:
            seen.add(p)
            todo.append(p)

    while todo:
        p = todo.popleft()
        if isinstance(p, AbelardPos):
            succ = []
            for w in _moves(a1, Configuration(p.sigma1, p.q1), pool, None):
                sigma3 = p.sigma1.extend(w.guess)
                e = EloisePos(w.target.sigma, w.target.state, p.sigma2, p.q2, sigma3, w.transition.label)
                succ.append(e)
                visit(e)
            abelard[p] = tuple(succ)
        else:
            succ = []
            for w in _moves(a2, Configuration(p.sigma2, p.q2), pool, p.challenge):
                nxt = AbelardPos(p.sigma1, p.q1, w.target.sigma, w.target.state)
                succ.append(EloiseMove(nxt, w.index, w.guess))
                visit(nxt)
            eloise[p] = tuple(succ)
    return RestrictedGame(a1, a2, tuple(pool), start, abelard, eloise)


def solve_safety_game(g: RestrictedGame) -> tuple:
    """``(winning, losing)`` for Eloise: backward attractor of the positions
    where she gets stuck."""
    preds = {}
    for p in g.abelard:
        for s in g.abelard[p]:
            preds.setdefault(s, []).append(p)
    for p in g.eloise:
        for m in g.eloise[p]:
            preds.setdefault(m.target, []).append(p)
    remaining = {p: len(ms) for p, ms in g.eloise.items()}
    losing = {p for p, n in remaining.items() if n == 0}
    todo = list(losing)
    while todo:
        p = todo.pop()
        for pre in preds.get(p, ()):
            if pre in losing:
                continue
            if isinstance(pre, EloisePos):
                remaining[pre] -= 1
                if remaining[pre] > 0:
                    continue
            losing.add(pre)
            todo.append(pre)
    winning = g.positions - losing
    return winning, losing


def simulates(a1: Gva, a2: Gva, extra_fresh: int = 0) -> bool:
    g = build_restricted_game(a1, a2, extra_fresh)
    winning, _ = solve_safety_game(g)
    return g.start in winning


def extract_strategy(g: RestrictedGame, winning) -> Strategy:
    """Least winning answer at every Eloise position reachable under it."""
    if g.start not in winning:
        raise NotWinning("Eloise does not win from the start position")
    moves = {}
    seen = {g.start}
    todo = deque([g.start])
    while todo:
        p = todo.popleft()
        if isinstance(p, AbelardPos):
            nexts = g.abelard[p]
        else:
            choice = next(m for m in g.eloise[p] if m.target in winning)
            moves[p] = choice
            nexts = (choice.target,)
        for s in nexts:
            if s not in seen:
                seen.add(s)
                todo.append(s)
    return Strategy(g.start, moves)


@dataclass
class Composition:
    product: Gva
    origin: tuple
    game: RestrictedGame
    strategy: Strategy


def compose_services(client: Gva, services) -> Composition | None:
    """Mediator for ``client`` over the asynchronous product of ``services``.

    Each strategy move is annotated with the index of the service whose
    transition realizes it.
    """
    if not services:
        raise PreconditionViolation("need at least one service")
    client = normalize_for_simulation(client)
    services = [normalize_for_simulation(s) for s in services]
    product, origin = async_product_with_origin(services)
    game = build_restricted_game(client, product)
    winning, _ = solve_safety_game(game)
    if game.start not in winning:
        return None
    strategy = extract_strategy(game, winning)
    strategy.routing = {p: origin[m.index] for p, m in strategy.moves.items()}
    return Composition(product, origin, game, strategy)
