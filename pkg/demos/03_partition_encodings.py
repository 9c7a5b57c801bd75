#!/usr/bin/env python3
# Encode equal-sum partition questions as puzzles.  A multiset of numbers is
# solvable as a puzzle exactly when it splits into equal-sum groups, so the
# solver doubles as a (very slow) partition decider.
from busout.generators import (
    ThreePartitionInstance,
    gen_reduction_121,
    gen_reduction_ind,
    gen_reduction_s21,
    oracle_3partition,
)
from busout.solver import min_spots, solve

good = ThreePartitionInstance.of((4, 4, 4, 3, 4, 5))   # T = 12: {4,4,4} + {3,4,5}
bad = ThreePartitionInstance.of((4, 4, 4, 4, 4, 6))    # T = 13: no triple works

for inst in (good, bad):
    print("elements:", inst.elements, "| per-group target:", inst.target,
          "| strict:", inst.strict)
    print("  exhaustive partition search:",
          "yes" if oracle_3partition(inst).found else "no")

    paths = gen_reduction_121(inst)
    print(f"  one-spot path puzzle: {len(paths.graph)} unit buses,"
          f" {paths.queue.total} passengers ->",
          solve(paths).verdict.value)

    wide = gen_reduction_s21(inst, 3)
    print("  three-spot replica  ->", solve(wide).verdict.value,
          "(extra spots cannot fake a partition)")

    flat = gen_reduction_ind(inst, 2)
    print("  no-traffic variant  ->", solve(flat).verdict.value)
    print()

print("For a solvable multiset, even the replicated build needs just one spot:")
wide = gen_reduction_s21(good, 3)
print("  min spots =", min_spots(wide.graph, wide.queue).s0)
