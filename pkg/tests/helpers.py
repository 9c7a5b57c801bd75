"""Shared test oracles, kept deliberately independent of the fast solver.

Everything here walks the plain model operations (`dispatch`,
`normalize_boarding`, `classify`, `state_key`) with no compiled state, no
symmetry folding, and no move ordering, so it can serve as ground truth for
the search module.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Iterator, Optional

from busout.model import (
    Configuration,
    GameStatus,
    classify,
    dispatch,
    legal_moves,
    normalize_boarding,
    state_key,
)
from busout.generators import ThreePartitionInstance


def brute_reachable(cfg: Configuration, cap: int = 200_000) -> Optional[list[Configuration]]:
    """All reachable boarding-normalized configurations, identity-keyed.

    Plain BFS over model operations; returns None when the space exceeds
    ``cap`` states.
    """
    root, _ = normalize_boarding(cfg)
    seen = {state_key(root)}
    out = [root]
    frontier = deque([root])
    while frontier:
        current = frontier.popleft()
        for bus_id in legal_moves(current):
            child = dispatch(current, bus_id)
            key = state_key(child)
            if key in seen:
                continue
            seen.add(key)
            out.append(child)
            if len(out) > cap:
                return None
            frontier.append(child)
    return out


def brute_solvable(cfg: Configuration, cap: int = 200_000) -> Optional[bool]:
    """Ground-truth solvability by exhaustive identity-keyed BFS."""
    states = brute_reachable(cfg, cap)
    if states is None:
        return None
    return any(classify(state) is GameStatus.EMPTY for state in states)


def replay(cfg: Configuration, plan) -> Configuration:
    current, _ = normalize_boarding(cfg)
    for bus_id in plan:
        current = dispatch(current, bus_id)
    return current


def subset_partition_exists(elements: tuple[int, ...], groups: int) -> bool:
    """Can the multiset be split into ``groups`` parts (any sizes) of equal sum?

    This is the question the path reductions actually encode; it coincides
    with the triple-partition question exactly on instances satisfying the
    strict T/4 < a < T/2 constraint.
    """
    if groups == 0:
        return not elements
    total = sum(elements)
    if total % groups:
        return False
    target = total // groups
    items = sorted(elements, reverse=True)
    if items and items[0] > target:
        return False
    fills = [0] * groups

    def place(i: int) -> bool:
        if i == len(items):
            return True
        seen: set[int] = set()
        for g in range(groups):
            if fills[g] in seen:
                continue
            seen.add(fills[g])
            if fills[g] + items[i] <= target:
                fills[g] += items[i]
                if place(i + 1):
                    return True
                fills[g] -= items[i]
        return False

    return place(0)


def strict_instances(max_sum: int, group_counts=(1, 2)) -> Iterator[ThreePartitionInstance]:
    """All distinct multisets (up to ordering) in the strict constraint regime.

    Strictness (every element in the open interval (T/4, T/2)) is the
    assumption under which the hardness constructions are exact encodings of
    the triple-partition question.
    """
    for n in group_counts:
        k = 3 * n
        for combo in itertools.combinations_with_replacement(range(1, max_sum + 1), k):
            total = sum(combo)
            if total > max_sum or total % n:
                continue
            target = total // n
            if all(4 * a > target and 2 * a < target for a in combo):
                yield ThreePartitionInstance.of(combo)


def all_instances(max_sum: int, group_counts=(1, 2)) -> Iterator[ThreePartitionInstance]:
    """All distinct multisets with an integral per-group target."""
    for n in group_counts:
        k = 3 * n
        for combo in itertools.combinations_with_replacement(range(1, max_sum + 1), k):
            total = sum(combo)
            if total > max_sum or total % n:
                continue
            yield ThreePartitionInstance.of(combo)
