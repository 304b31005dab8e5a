"""Walk through the basic questions one can ask about a GVA.

Run with ``python3 demos/languages.py``.
"""
from pathlib import Path

from gva import nonemptiness
from gva.closure import gva_intersection, gva_star
from gva.dsl import parse_automaton, print_automaton
from gva.semantics import enumerate_language, membership
from gva.core import Letter, word_of

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def show(title, a, pool="abc", max_len=3):
    words = sorted(enumerate_language(a, [Letter(c) for c in pool], max_len), key=lambda w: (len(w), w))
    print(f"{title}: {len(words)} words of length <= {max_len} over {{{', '.join(pool)}}}")
    print("   ", " | ".join(" ".join(map(str, w)) or "()" for w in words[:12]), "..." if len(words) > 12 else "")


def main():
    a1 = parse_automaton((FIXTURES / "a1.gva").read_text())
    a2 = parse_automaton((FIXTURES / "a2.gva").read_text())
    print(print_automaton(a1))

    # Membership: the automaton guesses a value for x up front and keeps
    # re-reading fresh y values until it reads x again.
    for w in ["a b c", "a b a", "c"]:
        trace = membership(a1, word_of(w.split()))
        print(f"A1 accepts {w!r}: {trace is not None}")
        for step in trace or []:
            print(f"    {step.source.state} --{step.read}--> {step.target.state}  guessed {step.guess!r}")

    show("A1", a1)
    show("A2", a2, max_len=4)

    # Closure: both languages at once, and repetition.
    both = gva_intersection(a1, a2)
    show("A1 & A2", both, max_len=4)
    show("A1*", gva_star(a1), pool="ab")

    # Nonemptiness needs no pool: it searches over the constants plus one
    # generated letter per variable.
    word, trace = nonemptiness(both)
    print("shortest word of A1 & A2:", " ".join(map(str, word)), f"({len(trace)} steps)")
    unsat = parse_automaton((FIXTURES / "unsat.gva").read_text())
    print("unsat.gva is empty:", nonemptiness(unsat) is None)


if __name__ == "__main__":
    main()
