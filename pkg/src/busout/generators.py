"""Instance generators: number-partition reductions and a random fuzzer.

The hardness constructions all start from the same question: can a multiset
of ``3n`` positive integers be split into ``n`` triples of equal sum?  Each
generator encodes that question as a dispatch puzzle whose solvability
matches the answer:

* ``gen_reduction_121``  -- disjoint red/green bus paths, one parking spot,
  unit capacities.
* ``gen_reduction_s21``  -- the same construction with buses and passengers
  replicated once per spot, so extra spots buy nothing.
* ``gen_reduction_ind`` -- no traffic at all, one more color than spots,
  with capacity-2 "plug" buses that pin down all but one spot.

``oracle_3partition`` answers the partition question by exhaustive search
and is the ground truth the reductions are tested against.
``duplicate_capacity`` rescales a whole configuration by an integer factor
without changing solvability, and ``fuzz_instance`` emits random eligible
instances for property tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .model import (
    BusLabel,
    ClassParams,
    Configuration,
    CongestionGraph,
    PassengerQueue,
    SpotEntry,
    SpotState,
    check_eligibility,
)


class TooLargeError(Exception):
    """The partition instance is beyond the exhaustive oracle's reach."""


@dataclass(frozen=True)
class ThreePartitionInstance:
    """A multiset of 3n positive integers to split into n equal-sum triples.

    ``divisible`` is False when the total cannot spread evenly over the n
    groups; such inputs are immediate no-instances rather than errors.
    ``strict`` records whether every element lies strictly between T/4 and
    T/2 (the regime in which the partition problem stays hard and every
    group is forced to exactly three elements).
    """

    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.elements) % 3 != 0:
            raise ValueError("the element count must be a multiple of 3")
        if any(a < 1 for a in self.elements):
            raise ValueError("elements must be positive integers")

    @classmethod
    def of(cls, elements: Iterable[int]) -> "ThreePartitionInstance":
        return cls(tuple(elements))

    @property
    def groups(self) -> int:
        return len(self.elements) // 3

    @property
    def total(self) -> int:
        return sum(self.elements)

    @property
    def divisible(self) -> bool:
        return self.groups == 0 or self.total % self.groups == 0

    @property
    def target(self) -> int:
        """Per-group sum T; only meaningful when ``divisible``."""
        if self.groups == 0:
            return 0
        if not self.divisible:
            raise ValueError("total does not divide evenly into groups")
        return self.total // self.groups

    @property
    def strict(self) -> bool:
        if not self.divisible:
            return False
        t = self.target
        return all(4 * a > t and 2 * a < t for a in self.elements)


@dataclass(frozen=True)
class PartitionResult:
    found: bool
    triples: Optional[tuple[tuple[int, int, int], ...]] = None


def oracle_3partition(
    inst: ThreePartitionInstance, max_groups: int = 6
) -> PartitionResult:
    """Exhaustively search for a triple partition; exact but exponential.

    Returns the triples (as sorted value tuples) on success.  Refuses
    instances with more than ``max_groups`` groups, where the exhaustive
    enumeration stops being a desk-scale tool.
    """
    n = inst.groups
    if n > max_groups:
        raise TooLargeError(f"{n} groups exceed the exhaustive bound of {max_groups}")
    if n == 0:
        return PartitionResult(True, ())
    if not inst.divisible:
        return PartitionResult(False)
    target = inst.target
    values = inst.elements
    order = sorted(range(3 * n), key=lambda i: values[i])
    used = [False] * (3 * n)
    triples: list[tuple[int, int, int]] = []

    def extend() -> bool:
        first = next((i for i in order if not used[i]), None)
        if first is None:
            return True
        used[first] = True
        rest = [i for i in order if not used[i]]
        for x in range(len(rest)):
            second = rest[x]
            pair = values[first] + values[second]
            if pair + values[second] > target:
                # rest is sorted ascending; nothing later can fit either
                break
            used[second] = True
            for y in range(x + 1, len(rest)):
                third = rest[y]
                total = pair + values[third]
                if total > target:
                    break
                if total == target:
                    used[third] = True
                    triples.append(
                        tuple(sorted((values[first], values[second], values[third])))  # type: ignore[arg-type]
                    )
                    if extend():
                        return True
                    triples.pop()
                    used[third] = False
            used[second] = False
        used[first] = False
        return False

    if extend():
        return PartitionResult(True, tuple(triples))
    return PartitionResult(False)


RED, GREEN = 0, 1
_PATH_PALETTE = ("red", "green")


def _path_reduction(inst: ThreePartitionInstance, copies: int) -> Configuration:
    """Shared builder for the disjoint-path constructions.

    Path ``i`` carries ``copies * a_i`` red unit buses followed by the same
    number of green ones; each bus is blocked by the bus ahead of it, so the
    reds come out first and a green leaves only after every red on its path.
    """
    if not inst.divisible:
        raise ValueError(
            "the per-group target is not an integer; the instance is an immediate "
            "no-instance and has no path encoding"
        )
    if copies < 1:
        raise ValueError("copies must be positive")
    target = inst.target
    buses: list[tuple[str, BusLabel]] = []
    blocks: list[tuple[str, str]] = []
    for i, a in enumerate(inst.elements):
        path = [f"p{i}r{j}" for j in range(copies * a)]
        path += [f"p{i}g{j}" for j in range(copies * a)]
        for j, bus_id in enumerate(path):
            buses.append((bus_id, BusLabel(RED if j < copies * a else GREEN, 1)))
            if j > 0:
                blocks.append((bus_id, path[j - 1]))
    runs: list[tuple[int, int]] = []
    for _ in range(inst.groups):
        runs.append((RED, copies * target))
        runs.append((GREEN, copies * target))
    return Configuration(
        CongestionGraph(buses, blocks),
        PassengerQueue.from_runs(runs),
        SpotState.empty(copies),
        _PATH_PALETTE,
    )


def gen_reduction_121(inst: ThreePartitionInstance) -> Configuration:
    """Partition question as a one-spot, two-color, unit-capacity puzzle."""
    return _path_reduction(inst, 1)


def gen_reduction_s21(inst: ThreePartitionInstance, spots: int) -> Configuration:
    """The path construction replicated once per spot.

    With everything duplicated ``spots`` times, the extra spots cannot make
    an unsolvable partition instance solvable; ``spots=1`` reproduces
    ``gen_reduction_121`` exactly.
    """
    return _path_reduction(inst, spots)


def duplicate_capacity(cfg: Configuration, factor: int) -> Configuration:
    """Scale capacities, run lengths, and open seats by an integer factor.

    Solvability is unchanged: every boarding step simply happens ``factor``
    times in a row.  Eligibility is preserved because seats and passengers
    scale together.
    """
    if factor < 1:
        raise ValueError("factor must be positive")
    if factor == 1:
        return cfg
    graph = CongestionGraph(
        [
            (bus_id, BusLabel(label.color, label.capacity * factor))
            for bus_id, label in cfg.graph.labels()
        ],
        cfg.graph.blocks,
    )
    queue = PassengerQueue(
        tuple((color, count * factor) for color, count in cfg.queue.runs),
        cfg.queue.cursor * factor,
    )
    spots = SpotState(
        tuple(
            SpotEntry(e.color, e.remaining * factor) if e is not None else None
            for e in cfg.spots.entries
        )
    )
    return Configuration(graph, queue, spots, cfg.palette)


def gen_reduction_ind(inst: ThreePartitionInstance, spots: int) -> Configuration:
    """Partition question with no traffic and one more color than spots.

    Colors are ``x0 .. x{spots}``.  Every element becomes an ``x0`` bus with
    that capacity; each middle color ``x1 .. x{spots-1}`` gets one
    capacity-2 bus per group, and ``x{spots}`` gets one unit bus per group.
    The queue per group is one passenger of each middle color, then the
    ``x0`` block, then one ``x{spots}`` passenger, then the middle colors
    again: the capacity-2 buses sit half-full across the ``x0`` block and
    pin all but one spot.
    """
    if not inst.divisible:
        raise ValueError(
            "the per-group target is not an integer; the instance is an immediate "
            "no-instance and has no independent encoding"
        )
    if spots < 1:
        raise ValueError("spots must be positive")
    n = inst.groups
    target = inst.target
    x0, xs = 0, spots
    buses: list[tuple[str, BusLabel]] = []
    for i, a in enumerate(inst.elements):
        buses.append((f"e{i}", BusLabel(x0, a)))
    for color in range(1, spots):
        for j in range(n):
            buses.append((f"x{color}-{j}", BusLabel(color, 2)))
    for j in range(n):
        buses.append((f"x{xs}-{j}", BusLabel(xs, 1)))
    runs: list[tuple[int, int]] = []
    for _ in range(n):
        runs.extend((color, 1) for color in range(1, spots))
        if target:
            runs.append((x0, target))
        runs.append((xs, 1))
        runs.extend((color, 1) for color in range(1, spots))
    return Configuration(
        CongestionGraph(buses, ()),
        PassengerQueue.from_runs(runs),
        SpotState.empty(spots),
        tuple(f"x{c}" for c in range(spots + 1)),
    )


def fuzz_instance(
    params: ClassParams,
    seed: int,
    shape: str = "any",
    max_buses: int = 10,
) -> Configuration:
    """Random eligible instance within the given class bounds.

    ``shape`` is one of ``paths``, ``dag``, ``edgeless``, or ``any``.
    Buses are drawn first; the queue is then a random interleaving that
    matches the per-color seat totals exactly, so the output always passes
    the eligibility check.  Deterministic for a given seed.
    """
    if shape not in ("paths", "dag", "edgeless", "any"):
        raise ValueError(f"unknown shape {shape!r}")
    if max_buses < 1:
        raise ValueError("max_buses must be positive")
    rng = random.Random(seed)
    if shape == "any":
        shape = rng.choice(("paths", "dag", "edgeless"))
    n_buses = rng.randint(1, max_buses)
    n_colors = rng.randint(1, min(params.colors, n_buses))
    capacities = sorted(params.capacities)
    buses: list[tuple[str, BusLabel]] = []
    for i in range(n_buses):
        color = i if i < n_colors else rng.randrange(n_colors)
        buses.append((f"b{i}", BusLabel(color, rng.choice(capacities))))

    blocks: list[tuple[str, str]] = []
    order = list(range(n_buses))
    rng.shuffle(order)
    if shape == "paths":
        start = 0
        while start < n_buses:
            length = rng.randint(1, n_buses - start)
            chain = order[start:start + length]
            for ahead, behind in zip(chain, chain[1:]):
                blocks.append((f"b{behind}", f"b{ahead}"))
            start += length
    elif shape == "dag":
        p = min(1.0, 2.0 / max(1, n_buses - 1))
        for pos, later in enumerate(order):
            for earlier in order[:pos]:
                if rng.random() < p:
                    blocks.append((f"b{later}", f"b{earlier}"))

    passengers: list[int] = []
    for _, label in buses:
        passengers.extend([label.color] * label.capacity)
    rng.shuffle(passengers)
    cfg = Configuration(
        CongestionGraph(buses, blocks),
        PassengerQueue.from_colors(passengers),
        SpotState.empty(params.spots),
        tuple(f"c{c}" for c in range(n_colors)),
    )
    assert check_eligibility(cfg).ok
    return cfg
