#!/usr/bin/env python3
# Some puzzle families never need search.  One color is always winnable; so
# is "no traffic with at least one spot per color".  And without traffic the
# state space only grows polynomially, which a quick sweep makes visible.
from busout.generators import fuzz_instance
from busout.model import ClassParams
from busout.solver import enumerate_reachable, verify_plan
from busout.tractable import (
    IndependentInstance,
    classify_class,
    decide_monochrome,
    decide_reserved,
)

mono = fuzz_instance(ClassParams.of(2, 1, {4, 6, 10}), seed=1, shape="dag")
print("a one-color jam of", len(mono.graph), "buses:", classify_class(mono).value)
result = decide_monochrome(mono)
print("  peeled in", len(result.plan), "dispatches, replay ok:",
      verify_plan(mono, result.plan).ok)

flat = fuzz_instance(ClassParams.of(4, 4, {1, 2, 5}), seed=2, shape="edgeless")
print("no traffic,", len(flat.spots), "spots for",
      len({l.color for _, l in flat.graph.labels()}), "colors:",
      classify_class(flat).value)
result = decide_reserved(IndependentInstance(flat))
print("  reserved-spot strategy wins, replay ok:",
      verify_plan(flat, result.plan).ok)

print()
print("state counts for a fixed no-traffic family as the queue grows:")
from busout.model import (  # a small deterministic family
    BusLabel, Configuration, CongestionGraph, PassengerQueue, SpotState,
)

for n in (10, 20, 40, 80):
    per = n // 2
    buses = []
    for color in (0, 1):
        rest = per - 1
        buses.append((f"c{color}u", BusLabel(color, 1)))
        j = 0
        while rest >= 2:
            buses.append((f"c{color}d{j}", BusLabel(color, 2)))
            rest, j = rest - 2, j + 1
        if rest:
            buses.append((f"c{color}v", BusLabel(color, 1)))
    cfg = Configuration(
        CongestionGraph(buses, ()),
        PassengerQueue.from_colors([c for _ in range(per) for c in (0, 1)]),
        SpotState.empty(2),
        ("a", "b"),
    )
    print(f"  {n:3d} passengers -> {enumerate_reachable(cfg, 100_000).count:5d} states")
print("roughly linear growth; compare demos/03 where paths make it explode")
