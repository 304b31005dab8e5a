"""Graphviz DOT and strategy JSON writers."""
from __future__ import annotations

import json

from .core import EPS, Fa, Gva, Nfma


def _q(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(a) -> str:
    if isinstance(a, Nfma):
        states, initial, accepting = a.states, {a.initial}, a.accepting
        edges = [
            (t.source, t.target, "eps" if t.kind == "eps" else
             (str(t.register) if t.kind == "read" else f"eps/{t.register}"))
            for t in a.transitions
        ]
        refreshed = {}
    elif isinstance(a, Fa):
        states, initial, accepting = a.states, a.initial, a.accepting
        edges = [(s, d, str(c)) for s, c, d in a.transitions]
        refreshed = {}
    else:
        states, initial, accepting = a.states, a.initial, a.accepting
        edges = []
        for t in a.transitions:
            label = "eps" if t.label is EPS else str(t.label)
            if t.guard.atoms:
                label += f", {t.guard}"
            edges.append((t.source, t.target, label))
        refreshed = {q: a.refreshed_at(q) for q in a.states}
    lines = [f"digraph {_q(a.name)} {{", "  rankdir=LR;"]
    for q in states:
        attrs = [f"shape={'doublecircle' if q in accepting else 'circle'}"]
        if q in initial:
            attrs.append("penwidth=2")
        if refreshed.get(q):
            names = ", ".join(sorted(str(x) for x in refreshed[q]))
            attrs.append(f"xlabel={_q('refresh: ' + names)}")
        lines.append(f"  {_q(q)} [{', '.join(attrs)}];")
    for src, dst, label in edges:
        lines.append(f"  {_q(src)} -> {_q(dst)} [label={_q(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _sigma(s) -> dict:
    return {str(k): str(v) for k, v in s.items()}


def strategy_records(strategy, a2: Gva | None = None) -> list:
    """Plain-data view of a strategy, sorted for byte-stable output."""
    out = []
    for pos, move in strategy.moves.items():
        rec = {
            "position": {
                "q1": pos.q1,
                "sigma1": _sigma(pos.sigma1),
                "q2": pos.q2,
                "sigma2": _sigma(pos.sigma2),
                "challenge": str(pos.challenge),
            },
            "move": {
                "transition": move.index,
                "guess": _sigma(move.guess),
                "target": {"q2": move.target.q2, "sigma2": _sigma(move.target.sigma2)},
            },
        }
        if pos in strategy.routing:
            rec["move"]["service_index"] = strategy.routing[pos]
        if a2 is not None:
            t = a2.transitions[move.index]
            rec["move"]["edge"] = f"{t.source} -> {t.target}"
        out.append(rec)
    out.sort(key=lambda r: json.dumps(r, sort_keys=True))
    return out


def export_strategy_json(strategy, a2: Gva | None = None) -> str:
    return json.dumps(strategy_records(strategy, a2), sort_keys=True, indent=2) + "\n"
