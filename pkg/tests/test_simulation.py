import random
import warnings

import pytest

from conftest import load
from corpus import random_fa_gva, random_gva
from gva.core import EMPTY, EPS, TRUE, Guard, Gva, Letter, Transition, Var, neq
from gva.errors import NotWinning, PreconditionViolation
from gva.simulation import (
    AbelardPos,
    EloisePos,
    RestrictedGame,
    build_restricted_game,
    check_sim_preconditions,
    compose_services,
    extract_strategy,
    game_pool,
    simulates,
    solve_safety_game,
)
from oracles import fa_simulates

a, b, c = (Letter(n) for n in "abc")
x, y, z = Var("x"), Var("y"), Var("z")

pytestmark = pytest.mark.filterwarnings("ignore::UserWarning")


def fa(edges, name="F"):
    states = sorted({s for s, _, _ in edges} | {d for _, _, d in edges} | {"0"})
    return Gva(states, {"0"}, states, [Transition(s, Letter(l), TRUE, d) for s, l, d in edges], name=name)


def test_preconditions(a2):
    assert [d.code for d in check_sim_preconditions(load("a2_all.gva"))] == []
    assert [d.code for d in check_sim_preconditions(a2)] == ["NonAccepting"]
    with_eps = Gva(["s", "t"], {"s"}, {"s", "t"}, [Transition("s", EPS, TRUE, "t")])
    assert [d.code for d in check_sim_preconditions(with_eps)] == ["EpsilonNotAllowed"]
    two = Gva(["s", "t"], {"s", "t"}, {"s", "t"}, [])
    assert [d.code for d in check_sim_preconditions(two)] == ["MultipleInitial"]
    with pytest.raises(PreconditionViolation):
        simulates(with_eps, with_eps)


def test_non_accepting_states_are_normalized_with_a_warning(a2):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        assert simulates(a2, load("a2_copy.gva"))
    assert any("accepting" in str(w.message) for w in caught)


def test_pool_size():
    g1 = Gva(["s"], {"s"}, {"s"}, [Transition("s", x, Guard.of(neq(x, c)), "s")])
    g2 = Gva(["t"], {"t"}, {"t"}, [Transition("t", y, Guard.of(neq(y, z)), "t")])
    assert len(game_pool(g1, g2)) == 4


def test_fa_game_is_the_classical_one():
    g = build_restricted_game(fa([("0", "a", "0")]), fa([("0", "a", "0")]))
    assert len(g.abelard) == 1 and len(g.eloise) == 1


def test_game_is_finite_and_bounded():
    g = build_restricted_game(load("a2_all.gva"), load("a2_copy.gva"))
    n = len(g.pool)
    # substitutions over two variables into the pool, with or without each binding
    assert len(g.abelard) <= 2 * 2 * (n + 1) ** 2 * (n + 1) ** 2


def test_stuck_eloise_loses_and_stuck_abelard_wins():
    start = AbelardPos(EMPTY, "s", EMPTY, "t")
    stuck = EloisePos(EMPTY, "s1", EMPTY, "t", EMPTY, a)
    g = RestrictedGame(None, None, (), start, {start: (stuck,)}, {stuck: ()})
    win, lose = solve_safety_game(g)
    assert stuck in lose and start in lose
    g = RestrictedGame(None, None, (), start, {start: ()}, {})
    win, lose = solve_safety_game(g)
    assert start in win


def test_self_loops_give_an_infinite_play():
    g = build_restricted_game(fa([("0", "a", "0")]), fa([("0", "a", "0")]))
    win, _ = solve_safety_game(g)
    assert g.start in win


def test_reflexivity_on_renamed_copy():
    assert simulates(load("a2_all.gva"), load("a2_copy.gva"))
    assert simulates(load("a1.gva"), load("a1.gva").rename_variables({x: Var("u"), y: Var("v")}))


def test_chain_versus_fresh_loop():
    chain = Gva(["c0", "c1"], {"c0"}, {"c0", "c1"}, [Transition("c0", x, TRUE, "c1")])
    loop = Gva(["l0"], {"l0"}, {"l0"}, [Transition("l0", y, TRUE, "l0")], {y: {"l0"}})
    assert simulates(chain, loop)
    assert not simulates(loop, chain)


def test_variable_memory_matters():
    # repeats its first letter forever vs reads anything
    sticky = Gva(["s", "t"], {"s"}, {"s", "t"}, [Transition("s", x, TRUE, "t"), Transition("t", x, TRUE, "t")])
    free = Gva(["l"], {"l"}, {"l"}, [Transition("l", y, TRUE, "l")], {y: {"l"}})
    assert simulates(sticky, free)
    assert not simulates(free, sticky)


@pytest.mark.parametrize("seed", range(30))
def test_fa_verdicts_match_classical_algorithm(seed):
    rng = random.Random(seed)
    g1, g2 = random_fa_gva(rng, name="P"), random_fa_gva(rng, name="Q")
    assert simulates(g1, g2) == fa_simulates(g1, g2)


def test_strategy_for_classical_pair():
    g = build_restricted_game(fa([("0", "a", "1"), ("1", "b", "0")]), fa([("0", "a", "1"), ("0", "a", "0"), ("1", "b", "0")]))
    win, _ = solve_safety_game(g)
    strat = extract_strategy(g, win)
    # the first winning answer to "a" is the move to state 1
    first = next(m for p, m in strat.moves.items() if p.q1 == "1" and p.q2 == "0")
    assert first.target.q2 == "1"


def test_single_move_strategy():
    g = build_restricted_game(fa([("0", "a", "1")]), fa([("0", "a", "1")]))
    win, _ = solve_safety_game(g)
    strat = extract_strategy(g, win)
    assert len(strat.moves) == 1
    (move,) = strat.moves.values()
    assert move.index == 0


def test_strategy_requires_a_win():
    g = build_restricted_game(fa([("0", "b", "0")]), fa([("0", "a", "0")]))
    win, _ = solve_safety_game(g)
    with pytest.raises(NotWinning):
        extract_strategy(g, win)


@pytest.mark.parametrize("seed", range(15))
def test_solver_partition_and_strategy_closure(seed):
    rng = random.Random(seed)
    g1 = random_gva(rng, simulation=True)
    g2 = random_gva(rng, simulation=True).rename_variables({x: Var("u"), y: Var("v")})
    g = build_restricted_game(g1, g2)
    win, lose = solve_safety_game(g)
    assert win | lose == g.positions and not win & lose
    for p in win:
        succ = g.successors(p)
        if isinstance(p, EloisePos):
            assert any(s in win for s in succ)
        else:
            assert all(s in win for s in succ)
    if g.start in win:
        strat = extract_strategy(g, win)
        for p, m in strat.moves.items():
            assert p in win and m.target in win


def test_compose_trivial_community():
    svc = load("a2_all.gva")
    comp = compose_services(svc.rename_variables({x: Var("u"), y: Var("v")}), [svc])
    assert comp is not None
    assert set(comp.strategy.routing.values()) == {0}


def test_compose_rejects_unservable_client():
    assert compose_services(load("greedy.gva"), [load("auth.gva"), load("flight.gva"), load("payment.gva")]) is None
