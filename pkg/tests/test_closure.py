import itertools
import random

import pytest

from corpus import WORD_POOL, random_fa, random_nfma
from gva.closure import (
    BLANK,
    async_product,
    async_product_with_origin,
    complement_fa,
    gen_ln,
    gva_concat,
    gva_intersection,
    gva_star,
    gva_union,
    nfma_to_gva,
    plan_renaming,
    rename_apart,
)
from gva.core import TRUE, Fa, Guard, eq, Gva, Letter, Nfma, NfmaTransition, Transition, Var, validate_gva, word_of
from gva.errors import NondeterministicFa
from gva.semantics import enumerate_language, membership
from oracles import all_words, nfma_language

a, b, c = (Letter(n) for n in "abc")
x, y = Var("x"), Var("y")


def W(s):
    return word_of(s.split())


def accepts(g, w):
    return membership(g, w) is not None


def single(label, name):
    return Gva(["i", "f"], {"i"}, {"f"}, [Transition("i", label, TRUE, "f")], name=name)


EMPTY_LANG = Gva(["s"], {"s"}, set(), [], name="Nothing")
UNIVERSAL = Gva(["u"], {"u"}, {"u"}, [Transition("u", x, TRUE, "u")], {x: {"u"}}, name="All")


def test_renaming_is_only_applied_on_clashes(a1, a2):
    plan = plan_renaming([a1, a2])
    assert plan.mappings[0] == {}
    assert plan.mappings[1] == {x: Var("x_1"), y: Var("y_1")}
    r1, r2 = rename_apart([a1, a2])
    assert not r1.variables & r2.variables


def test_union(a1, a2):
    u = gva_union(a1, a2)
    assert validate_gva(u) == []
    assert accepts(u, W("a b")) and accepts(u, W("a b c")) and accepts(u, ())
    assert not accepts(u, W("a b a"))
    assert enumerate_language(gva_union(a1, EMPTY_LANG), WORD_POOL[:3], 3) == enumerate_language(a1, WORD_POOL[:3], 3)
    assert enumerate_language(gva_union(a1, a1), WORD_POOL[:3], 3) == enumerate_language(a1, WORD_POOL[:3], 3)


def test_intersection(a1, a2):
    i = gva_intersection(a1, a2)
    assert validate_gva(i) == []
    assert accepts(i, W("a b"))
    assert not accepts(i, W("a a"))
    assert not accepts(i, W("a b a"))
    pool = WORD_POOL[:3]
    assert enumerate_language(gva_intersection(a1, UNIVERSAL), pool, 3) == enumerate_language(a1, pool, 3)
    assert enumerate_language(gva_intersection(a1, EMPTY_LANG), pool, 3) == set()


def test_concat_of_single_letters():
    g = gva_concat(single(x, "X"), single(y, "Y"))
    pool = WORD_POOL[:3]
    assert enumerate_language(g, pool, 3) == set(itertools.product(pool, repeat=2))
    assert enumerate_language(gva_concat(single(x, "X"), EMPTY_LANG), pool, 3) == set()


def test_star():
    pairs = Gva(["i", "m", "f"], {"i"}, {"f"},
                [Transition("i", x, TRUE, "m"), Transition("m", y, Guard.of(eq(y, x)), "f")], name="Pair")
    s = gva_star(pairs)
    assert accepts(s, ())
    assert accepts(s, W("a a b b a a"))
    assert not accepts(s, W("a a b c"))
    assert not accepts(s, W("a"))


def test_star_restarts_variables():
    # x is bound on the first pass; without refreshing, "a b" would be rejected
    once = Gva(["i", "f"], {"i"}, {"f"}, [Transition("i", x, TRUE, "f")], name="Once")
    assert accepts(gva_star(once), W("a b"))


def test_complement_of_a_star():
    f = Fa({a}, ["u"], {"u"}, {"u"}, [("u", a, "u")])
    g = complement_fa(f)
    assert validate_gva(g) == []
    assert accepts(g, W("b")) and accepts(g, W("a a b a"))
    assert not accepts(g, W("a a")) and not accepts(g, ())


def test_complement_of_universal_fa_catches_undeclared_letters():
    f = Fa({a, b}, ["u"], {"u"}, {"u"}, [("u", a, "u"), ("u", b, "u")])
    g = complement_fa(f)
    assert accepts(g, W("a c")) and not accepts(g, W("a b b a"))


def test_complement_needs_determinism():
    f = Fa({a}, ["p", "q"], {"p"}, {"q"}, [("p", a, "p"), ("p", a, "q")])
    with pytest.raises(NondeterministicFa):
        complement_fa(f)


@pytest.mark.parametrize("seed", range(15))
def test_complement_xor(seed):
    f = random_fa(random.Random(seed), deterministic=True)
    g = complement_fa(f)
    for w in all_words(WORD_POOL[:3], 3):
        assert f.accepts(w) != accepts(g, w)


def test_async_product_interleaves():
    p = async_product([single(x, "X"), single(y, "Y")])
    pool = WORD_POOL[:3]
    assert enumerate_language(p, pool, 3) == set(itertools.product(pool, repeat=2))
    assert len(p.states) == 4


def test_async_product_single_and_idle_components(a1):
    pool = WORD_POOL[:3]
    assert enumerate_language(async_product([a1]), pool, 3) == enumerate_language(a1, pool, 3)
    idle = Gva(["z"], {"z"}, {"z"}, [], name="Idle")
    assert enumerate_language(async_product([a1, idle]), pool, 3) == enumerate_language(a1, pool, 3)


def test_async_product_moves_one_component_at_a_time(a1, a2):
    p, origin = async_product_with_origin([a1, a2])
    assert len(p.states) == len(a1.states) * len(a2.states)
    for t, i in zip(p.transitions, origin):
        before, after = t.source.split("."), t.target.split(".")
        changed = [k for k in range(2) if before[k] != after[k]]
        assert changed in ([], [i])


def test_nfma_reading_one_register_twice():
    n = Nfma(1, ["n0", "n1", "n2", "n3"], "n0", {"n3"},
             [NfmaTransition("n0", "reassign", 1, "n1"), NfmaTransition("n1", "read", 1, "n2"),
              NfmaTransition("n2", "read", 1, "n3")])
    g = nfma_to_gva(n)
    assert enumerate_language(g, WORD_POOL[:3], 3) == {(l, l) for l in WORD_POOL[:3]}


def test_nfma_without_reassignment_is_a_relabeling():
    n = Nfma(2, ["n0", "n1"], "n0", {"n1"}, [NfmaTransition("n0", "read", 2, "n1")], {1: a, 2: b})
    g = nfma_to_gva(n)
    assert BLANK not in g.constants
    assert enumerate_language(g, WORD_POOL[:3], 2) == {(b,)}


def test_nfma_reassignment_avoids_other_registers():
    n = Nfma(2, ["n0", "n1", "n2"], "n0", {"n2"},
             [NfmaTransition("n0", "reassign", 1, "n1"), NfmaTransition("n1", "read", 1, "n2")], {2: c})
    assert enumerate_language(nfma_to_gva(n), WORD_POOL[:3], 1) == {(a,), (b,)}


def test_nfma_empty_registers_never_match():
    n = Nfma(1, ["n0", "n1"], "n0", {"n1"}, [NfmaTransition("n0", "read", 1, "n1")])
    assert enumerate_language(nfma_to_gva(n), WORD_POOL, 2) == set()


@pytest.mark.parametrize("seed", range(20))
def test_nfma_translation_matches_register_semantics(seed):
    n = random_nfma(random.Random(seed))
    g = nfma_to_gva(n)
    assert g.size() <= 3 * n.size()
    assert enumerate_language(g, WORD_POOL, 3) == nfma_language(n, WORD_POOL, 3)


@pytest.mark.parametrize("n, states, trans", [(1, 6, 5), (2, 10, 11), (3, 14, 19)])
def test_gen_ln_sizes(n, states, trans):
    g = gen_ln(n)
    assert (len(g.states), len(g.transitions)) == (states, trans)
    assert validate_gva(g) == []


def test_gen_ln_words():
    assert accepts(gen_ln(1), W("a a # a a"))
    assert not accepts(gen_ln(1), W("a a a a"))
    assert accepts(gen_ln(2), W("a b b a # a b b a"))
    assert not accepts(gen_ln(2), W("a b c a # a c b a"))
