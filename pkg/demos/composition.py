"""Synthesize a mediator for a travel client from three services.

The client logs in, searches, books and pays.  No single service offers all
of that, but their asynchronous product does.  Run with
``python3 demos/composition.py [OUT.json]``.
"""
import sys
import time
import warnings
from pathlib import Path

from gva.dsl import parse_automaton
from gva.export import strategy_records, export_strategy_json
from gva.simulation import compose_services, simulates

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load(name):
    return parse_automaton((FIXTURES / name).read_text())


def main(out=None):
    warnings.simplefilter("ignore")
    client = load("client.gva")
    services = [load(n) for n in ("auth.gva", "flight.gva", "payment.gva")]
    for s in services:
        print(f"{s.name:>8}: {len(s.states)} states, simulates the client alone: {simulates(client, s)}")

    start = time.perf_counter()
    comp = compose_services(client, services)
    print(f"composition found in {time.perf_counter() - start:.1f}s: {comp is not None}")
    if comp is None:
        return 1
    print(f"product has {len(comp.product.states)} states, mediator table has {len(comp.strategy)} entries")

    # Follow the mediator along one session of the client.
    records = {(r["position"]["q1"], r["position"]["challenge"]): r for r in strategy_records(comp.strategy, comp.product)}
    print("one session, client step -> service that answers:")
    for q in ["p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8", "p0"]:
        hit = next((r for (q1, _), r in sorted(records.items()) if q1 == q), None)
        if hit:
            who = services[hit["move"]["service_index"]].name
            print(f"    reach {q} on {hit['position']['challenge']:<10} answered by {who:<8} via {hit['move']['edge']}")

    # A greedy service that insists on refunds first cannot be used.
    print("with the greedy service instead:", compose_services(client, [load("greedy.gva")]) is not None)
    if out:
        Path(out).write_text(export_strategy_json(comp.strategy, comp.product))
        print("strategy written to", out)
    return 0


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:2]))
