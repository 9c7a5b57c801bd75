#!/usr/bin/env python3
# Ask the exact solver for a plan, check it, and find the least number of
# parking spots the scenario really needs.
from busout.levels import classic_trap
from busout.solver import enumerate_reachable, min_spots, solve, verify_plan

cfg = classic_trap()

result = solve(cfg)
print("verdict:", result.verdict.value)
print("plan:", " -> ".join(result.plan))
print("search visited", result.stats.states_visited, "states")
print("replay says:", verify_plan(cfg, result.plan))
print()

print("How many spots does this layout actually need?")
probe = min_spots(cfg.graph, cfg.queue)
for s, verdict in probe.per_spot:
    print(f"  {s} spot(s): {verdict.value}")
print("minimum:", probe.s0)
print()

print("The whole game tree here is tiny:",
      enumerate_reachable(cfg, 10_000).count, "reachable states")
