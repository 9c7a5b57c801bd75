"""Polynomial-time deciders for the easy configuration classes.

Three situations admit a verdict without general search:

* **Monochrome** instances (one color anywhere) are always solvable: boarding
  empties any parked bus before the player must move again, so peeling free
  buses in any order wins.
* **Reserved** instances (no traffic, at most as many colors as spots) are
  always solvable: dedicating a spot per color means a stalled front
  passenger can always be served by dispatching a bus of their color.
* **Independent** instances (no traffic) with bounded colors and capacities
  have polynomially many distinguishable states, because buses of equal
  color and capacity are interchangeable and the queue position is forced by
  what has been dispatched; a plain breadth-first walk over those canonical
  states decides them exactly.

The first two return constructive plans; the third searches but cannot blow
up the way general traffic graphs can.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Optional

from .model import (
    ClassParams,
    Configuration,
    GameStatus,
    classify,
    check_eligibility,
    dispatch,
    normalize_boarding,
)
from .solver import (
    IneligibleError,
    SolveResult,
    SolveStats,
    Verdict,
    _Compiled,
)


class InstanceClass(Enum):
    MONOCHROME = "monochrome"
    INDEPENDENT_RESERVED = "reserved"
    INDEPENDENT_BOUNDED = "independent"
    GENERAL = "general"


def _distinct_colors(cfg: Configuration) -> set[int]:
    colors = {label.color for _, label in cfg.graph.labels()}
    colors.update(entry.color for _, entry in cfg.spots.occupied())
    colors.update(cfg.queue.remaining_counts())
    return colors


def classify_class(cfg: Configuration) -> InstanceClass:
    """Route a configuration to the strongest decider that applies."""
    colors = _distinct_colors(cfg)
    if len(colors) <= 1:
        return InstanceClass.MONOCHROME
    if cfg.graph.blocks:
        return InstanceClass.GENERAL
    if len(colors) <= len(cfg.spots):
        return InstanceClass.INDEPENDENT_RESERVED
    return InstanceClass.INDEPENDENT_BOUNDED


@dataclass(frozen=True)
class IndependentInstance:
    """A configuration whose congestion graph has no edges.

    With no blocking, buses of equal color and capacity are fully
    interchangeable, so the instance is characterized by the bus label
    multiset plus queue and spots.
    """

    config: Configuration

    def __post_init__(self) -> None:
        if self.config.graph.blocks:
            raise ValueError("the congestion graph must have no edges")

    @classmethod
    def from_configuration(cls, cfg: Configuration) -> "IndependentInstance":
        return cls(cfg)

    @cached_property
    def ids_by_label(self) -> dict[tuple[int, int], tuple[str, ...]]:
        by_label: dict[tuple[int, int], list[str]] = {}
        for bus_id, label in self.config.graph.labels():
            by_label.setdefault((label.color, label.capacity), []).append(bus_id)
        return {k: tuple(v) for k, v in by_label.items()}

    @cached_property
    def bus_multiset(self) -> dict[tuple[int, int], int]:
        return {label: len(ids) for label, ids in self.ids_by_label.items()}

    @cached_property
    def params(self) -> ClassParams:
        colors = _distinct_colors(self.config)
        caps = {cap for _, cap in self.bus_multiset} or {1}
        return ClassParams.of(max(1, len(self.config.spots)), max(1, len(colors)), caps)


def _require_eligible(cfg: Configuration) -> None:
    report = check_eligibility(cfg)
    if not report.ok:
        raise IneligibleError(report)


def decide_monochrome(cfg: Configuration) -> SolveResult:
    """Solve a one-color instance constructively.

    After boarding settles, a one-color instance never keeps a parked bus
    (the front passenger would board it), so a spot is always open and any
    free bus makes progress.  The plan peels free buses in declaration
    order.
    """
    _require_eligible(cfg)
    if len(_distinct_colors(cfg)) > 1:
        raise ValueError("the instance uses more than one color")
    start = time.monotonic()
    current, _ = normalize_boarding(cfg)
    plan: list[str] = []
    while classify(current) is not GameStatus.EMPTY:
        move = next(b for b in current.graph if current.graph.is_free(b))
        plan.append(move)
        current = dispatch(current, move)
    return SolveResult(
        Verdict.SOLVABLE,
        tuple(plan),
        SolveStats(len(plan) + 1, 1, time.monotonic() - start),
    )


def decide_reserved(inst: IndependentInstance) -> SolveResult:
    """Solve a no-traffic instance with at least one spot per color.

    Strategy: whenever boarding stalls, dispatch a bus of the front
    passenger's color.  At most one bus per color is ever parked (a stalled
    color has no parked bus by definition), so at most ``colors - 1`` spots
    are busy at any stall and a spot is always open.
    """
    cfg = inst.config
    _require_eligible(cfg)
    if len(_distinct_colors(cfg)) > len(cfg.spots):
        raise ValueError("more colors than spots; the reserved strategy needs c <= s")
    start = time.monotonic()
    current, _ = normalize_boarding(cfg)
    parked_colors = [e.color for _, e in current.spots.occupied()]
    if len(set(parked_colors)) != len(parked_colors):
        raise ValueError(
            "initial spots park several buses of one color; "
            "the reserved strategy starts from at most one per color"
        )
    plan: list[str] = []
    while classify(current) is not GameStatus.EMPTY:
        front = current.queue.front_color()
        assert front is not None, "a settled nonempty instance has passengers waiting"
        move = next(
            b for b in current.graph
            if current.graph.label(b).color == front
        )
        plan.append(move)
        current = dispatch(current, move)
    return SolveResult(
        Verdict.SOLVABLE,
        tuple(plan),
        SolveStats(len(plan) + 1, 1, time.monotonic() - start),
    )


def decide_independent(inst: IndependentInstance) -> SolveResult:
    """Decide a no-traffic instance by BFS over canonical label states.

    A state is the multiset of buses still in traffic plus the spot
    contents; the queue position is pinned by conservation (every dispatched
    seat was either filled by a boarded passenger or is still open on a
    parked bus), which is recomputed and asserted at every expansion.
    """
    cfg = inst.config
    _require_eligible(cfg)
    start = time.monotonic()
    comp = _Compiled(cfg)
    labels = sorted(inst.bus_multiset)
    label_caps = tuple(cap for _, cap in labels)
    counts0 = tuple(inst.bus_multiset[label] for label in labels)
    cap_total0 = sum(
        count * cap for count, (_, cap) in zip(counts0, labels)
    )
    seats0 = sum(e.remaining for _, e in cfg.spots.occupied())
    cursor_base = cfg.queue.cursor

    occ0, cursor0 = comp.settle_multiset(comp.occ0, comp.cursor0)
    s = len(cfg.spots)
    qtotal = comp.qtotal

    def conserved_cursor(counts, occ):
        cap_left = sum(c * k for c, k in zip(counts, label_caps))
        seats_now = sum(r for _, r in occ)
        return cursor_base + (cap_total0 - cap_left) + (seats0 - seats_now)

    root = (counts0, occ0)
    assert conserved_cursor(*root) == cursor0
    if not any(counts0) and not occ0 and cursor0 == qtotal:
        return SolveResult(Verdict.SOLVABLE, (), SolveStats(1, 1, time.monotonic() - start))

    parent: dict[tuple, tuple[Optional[tuple], int]] = {root: (None, -1)}
    frontier = deque([(counts0, occ0, cursor0)])
    visited = 1
    peak = 1
    goal = None
    while frontier and goal is None:
        peak = max(peak, len(frontier))
        counts, occ, cursor = frontier.popleft()
        if len(occ) >= s:
            continue
        for i, count in enumerate(counts):
            if not count:
                continue
            ccounts = counts[:i] + (count - 1,) + counts[i + 1:]
            color, cap = labels[i]
            cocc, ccursor = comp.settle_multiset(
                tuple(sorted(occ + ((color, cap),))), cursor
            )
            key = (ccounts, cocc)
            if key in parent:
                continue
            assert conserved_cursor(ccounts, cocc) == ccursor
            parent[key] = ((counts, occ), i)
            visited += 1
            if not any(ccounts) and not cocc and ccursor == qtotal:
                goal = key
                break
            frontier.append((ccounts, cocc, ccursor))
    elapsed = time.monotonic() - start
    stats = SolveStats(visited, peak, elapsed)
    if goal is None:
        return SolveResult(Verdict.UNSOLVABLE, None, stats)

    label_moves: list[int] = []
    key = goal
    while True:
        prev, i = parent[key]
        if prev is None:
            break
        label_moves.append(i)
        key = prev
    label_moves.reverse()
    pools = {label: list(ids) for label, ids in inst.ids_by_label.items()}
    plan = tuple(pools[labels[i]].pop(0) for i in label_moves)
    return SolveResult(Verdict.SOLVABLE, plan, stats)


def decide_auto(cfg: Configuration, budget=None, *, heuristics: bool = True) -> tuple[InstanceClass, SolveResult]:
    """Classify and decide with the strongest applicable method."""
    from .solver import solve

    cls = classify_class(cfg)
    if cls is InstanceClass.MONOCHROME:
        return cls, decide_monochrome(cfg)
    if cls is InstanceClass.INDEPENDENT_RESERVED:
        try:
            return cls, decide_reserved(IndependentInstance(cfg))
        except ValueError:
            return InstanceClass.INDEPENDENT_BOUNDED, decide_independent(
                IndependentInstance(cfg)
            )
    if cls is InstanceClass.INDEPENDENT_BOUNDED:
        return cls, decide_independent(IndependentInstance(cfg))
    return cls, solve(cfg, budget, heuristics=heuristics)
