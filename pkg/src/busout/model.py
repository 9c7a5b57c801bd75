"""Rules engine for the bus-dispatch puzzle.

A puzzle state is a configuration of three parts: a *congestion graph* of
buses stuck in traffic, a *passenger queue* of colored passengers, and a row
of *parking spots* at the station.  A bus may be dispatched only if no other
bus blocks it (its out-degree in the graph is zero) and an empty spot exists.
Passengers board strictly from the front of the queue: whenever the front
passenger's color matches a parked bus with seats left, boarding happens
automatically before the player may act again, and a bus that fills up
departs at once, freeing its spot.  The puzzle is won when graph, queue, and
spots are all empty.

Everything here is an immutable value; operations return new values, so
configurations can be shared freely across threads and search frontiers.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union


class NotFreeError(Exception):
    """Raised when dispatching a bus that other buses still block."""


class NoEmptySpotError(Exception):
    """Raised when dispatching while every parking spot is occupied."""


class UnknownBusError(KeyError):
    """Raised when a bus id does not exist in the congestion graph."""


@dataclass(frozen=True)
class BusLabel:
    """Color and seat count of a single bus."""

    color: int
    capacity: int

    def __post_init__(self) -> None:
        if self.color < 0:
            raise ValueError(f"color must be non-negative, got {self.color}")
        if self.capacity < 1:
            raise ValueError(f"capacity must be positive, got {self.capacity}")


class CongestionGraph:
    """Directed graph of buses waiting in traffic.

    An edge ``(u, v)`` records that bus ``v`` blocks bus ``u``; a bus is
    *free* (dispatchable) exactly when its out-degree is zero.  Bus ids keep
    their declaration order, which downstream code uses as the stable move
    order.  Instances are immutable; removing a bus returns a new graph.
    """

    __slots__ = ("_buses", "_blocks", "_blockers", "_blocked_by")

    def __init__(
        self,
        buses: Union[Mapping[str, BusLabel], Iterable[tuple[str, BusLabel]]],
        blocks: Iterable[tuple[str, str]] = (),
    ) -> None:
        items = buses.items() if isinstance(buses, Mapping) else buses
        bus_map: dict[str, BusLabel] = {}
        for bus_id, label in items:
            if bus_id in bus_map:
                raise ValueError(f"duplicate bus id {bus_id!r}")
            if not isinstance(label, BusLabel):
                raise TypeError(f"bus {bus_id!r}: expected BusLabel, got {label!r}")
            bus_map[bus_id] = label
        edge_list: list[tuple[str, str]] = []
        blockers: dict[str, list[str]] = {b: [] for b in bus_map}
        blocked_by: dict[str, list[str]] = {b: [] for b in bus_map}
        seen: set[tuple[str, str]] = set()
        for blocked, blocker in blocks:
            if blocked not in bus_map:
                raise ValueError(f"edge references unknown bus {blocked!r}")
            if blocker not in bus_map:
                raise ValueError(f"edge references unknown bus {blocker!r}")
            if blocked == blocker:
                raise ValueError(f"bus {blocked!r} cannot block itself")
            if (blocked, blocker) in seen:
                continue
            seen.add((blocked, blocker))
            edge_list.append((blocked, blocker))
            blockers[blocked].append(blocker)
            blocked_by[blocker].append(blocked)
        self._buses = bus_map
        self._blocks = tuple(edge_list)
        self._blockers = {b: tuple(v) for b, v in blockers.items()}
        self._blocked_by = {b: tuple(v) for b, v in blocked_by.items()}

    @property
    def bus_ids(self) -> tuple[str, ...]:
        return tuple(self._buses)

    @property
    def blocks(self) -> tuple[tuple[str, str], ...]:
        """Edges as (blocked, blocker) pairs, in declaration order."""
        return self._blocks

    def label(self, bus_id: str) -> BusLabel:
        try:
            return self._buses[bus_id]
        except KeyError:
            raise UnknownBusError(bus_id) from None

    def labels(self) -> Iterator[tuple[str, BusLabel]]:
        return iter(self._buses.items())

    def blockers(self, bus_id: str) -> tuple[str, ...]:
        """Buses that must leave before ``bus_id`` becomes free."""
        return self._blockers[bus_id]

    def blocked_by(self, bus_id: str) -> tuple[str, ...]:
        """Buses that ``bus_id`` currently blocks."""
        return self._blocked_by[bus_id]

    def out_degree(self, bus_id: str) -> int:
        return len(self._blockers[bus_id])

    def is_free(self, bus_id: str) -> bool:
        if bus_id not in self._buses:
            raise UnknownBusError(bus_id)
        return not self._blockers[bus_id]

    def __contains__(self, bus_id: str) -> bool:
        return bus_id in self._buses

    def __len__(self) -> int:
        return len(self._buses)

    def __iter__(self) -> Iterator[str]:
        return iter(self._buses)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CongestionGraph):
            return NotImplemented
        return self._buses == other._buses and set(self._blocks) == set(other._blocks)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"CongestionGraph({len(self._buses)} buses, {len(self._blocks)} blocks)"

    def without(self, bus_id: str) -> "CongestionGraph":
        """New graph with ``bus_id`` and its incident edges removed."""
        if bus_id not in self._buses:
            raise UnknownBusError(bus_id)
        buses = [(b, lbl) for b, lbl in self._buses.items() if b != bus_id]
        blocks = [(u, v) for u, v in self._blocks if u != bus_id and v != bus_id]
        return CongestionGraph(buses, blocks)

    def find_cycle(self) -> Optional[list[str]]:
        """Return one blocking cycle as a list of bus ids, or None."""
        WHITE, GRAY, BLACK = 0, 1, 2
        state = {b: WHITE for b in self._buses}
        for start in self._buses:
            if state[start] != WHITE:
                continue
            stack: list[tuple[str, Iterator[str]]] = [(start, iter(self._blockers[start]))]
            state[start] = GRAY
            path = [start]
            while stack:
                node, it = stack[-1]
                advanced = False
                for nxt in it:
                    if state[nxt] == GRAY:
                        return path[path.index(nxt):] + [nxt]
                    if state[nxt] == WHITE:
                        state[nxt] = GRAY
                        path.append(nxt)
                        stack.append((nxt, iter(self._blockers[nxt])))
                        advanced = True
                        break
                if not advanced:
                    state[node] = BLACK
                    path.pop()
                    stack.pop()
        return None

    @property
    def is_acyclic(self) -> bool:
        return self.find_cycle() is None


@dataclass(frozen=True)
class PassengerQueue:
    """Run-length encoded passenger line with a consumed-prefix cursor.

    ``runs`` never changes; ``cursor`` counts how many passengers from the
    front have already boarded.  Adjacent runs always have distinct colors.
    """

    runs: tuple[tuple[int, int], ...]
    cursor: int = 0

    def __post_init__(self) -> None:
        prev_color = None
        for color, count in self.runs:
            if count < 1:
                raise ValueError(f"run counts must be positive, got {count}")
            if color < 0:
                raise ValueError(f"colors must be non-negative, got {color}")
            if color == prev_color:
                raise ValueError("adjacent runs must have distinct colors")
            prev_color = color
        if not 0 <= self.cursor <= self.total:
            raise ValueError(f"cursor {self.cursor} out of range 0..{self.total}")

    @classmethod
    def from_runs(cls, runs: Iterable[tuple[int, int]], cursor: int = 0) -> "PassengerQueue":
        """Build a queue, merging adjacent same-color runs and dropping empties."""
        merged: list[list[int]] = []
        for color, count in runs:
            if count == 0:
                continue
            if count < 0:
                raise ValueError(f"run counts must be non-negative, got {count}")
            if merged and merged[-1][0] == color:
                merged[-1][1] += count
            else:
                merged.append([color, count])
        return cls(tuple((c, n) for c, n in merged), cursor)

    @classmethod
    def from_colors(cls, colors: Iterable[int], cursor: int = 0) -> "PassengerQueue":
        return cls.from_runs(((c, 1) for c in colors), cursor)

    @cached_property
    def _ends(self) -> tuple[int, ...]:
        ends: list[int] = []
        acc = 0
        for _, count in self.runs:
            acc += count
            ends.append(acc)
        return tuple(ends)

    @property
    def total(self) -> int:
        return self._ends[-1] if self.runs else 0

    @property
    def exhausted(self) -> bool:
        return self.cursor >= self.total

    def front_color(self) -> Optional[int]:
        if self.exhausted:
            return None
        return self.runs[bisect_right(self._ends, self.cursor)][0]

    def front_run(self) -> Optional[tuple[int, int]]:
        """Front color and how many of it remain in the current run."""
        if self.exhausted:
            return None
        i = bisect_right(self._ends, self.cursor)
        return self.runs[i][0], self._ends[i] - self.cursor

    def advance(self, count: int = 1) -> "PassengerQueue":
        return PassengerQueue(self.runs, self.cursor + count)

    def remaining_counts(self) -> dict[int, int]:
        """Passengers at or after the cursor, per color."""
        counts: dict[int, int] = {}
        if self.exhausted:
            return counts
        i = bisect_right(self._ends, self.cursor)
        counts[self.runs[i][0]] = self._ends[i] - self.cursor
        for color, count in self.runs[i + 1:]:
            counts[color] = counts.get(color, 0) + count
        return counts

    def colors(self) -> Iterator[int]:
        """Expand the remaining queue passenger by passenger."""
        i = bisect_right(self._ends, self.cursor) if not self.exhausted else len(self.runs)
        if i < len(self.runs):
            yield from (self.runs[i][0] for _ in range(self._ends[i] - self.cursor))
            for color, count in self.runs[i + 1:]:
                yield from (color for _ in range(count))


@dataclass(frozen=True)
class SpotEntry:
    """A parked bus: its color and how many seats it still has."""

    color: int
    remaining: int

    def __post_init__(self) -> None:
        if self.remaining < 1:
            raise ValueError("a parked bus always has at least one seat left")
        if self.color < 0:
            raise ValueError(f"colors must be non-negative, got {self.color}")


@dataclass(frozen=True)
class SpotState:
    """Fixed-length row of parking spots; None marks an empty spot."""

    entries: tuple[Optional[SpotEntry], ...]

    @classmethod
    def empty(cls, count: int) -> "SpotState":
        if count < 0:
            raise ValueError("spot count cannot be negative")
        return cls((None,) * count)

    def __len__(self) -> int:
        return len(self.entries)

    def replace(self, index: int, entry: Optional[SpotEntry]) -> "SpotState":
        items = list(self.entries)
        items[index] = entry
        return SpotState(tuple(items))

    def first_empty(self) -> Optional[int]:
        for i, entry in enumerate(self.entries):
            if entry is None:
                return i
        return None

    def occupied(self) -> Iterator[tuple[int, SpotEntry]]:
        for i, entry in enumerate(self.entries):
            if entry is not None:
                yield i, entry

    @property
    def all_empty(self) -> bool:
        return all(entry is None for entry in self.entries)

    def remaining_seats(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for _, entry in self.occupied():
            counts[entry.color] = counts.get(entry.color, 0) + entry.remaining
        return counts


@dataclass(frozen=True)
class Configuration:
    """Full puzzle state: congestion graph, passenger queue, parking spots.

    ``palette`` optionally names each color id for display and file output;
    operations never read it.
    """

    graph: CongestionGraph
    queue: PassengerQueue
    spots: SpotState
    palette: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if len(set(self.palette)) != len(self.palette):
            raise ValueError("palette names must be unique")

    def color_name(self, color: int) -> str:
        if color < len(self.palette):
            return self.palette[color]
        return f"c{color}"

    @property
    def is_empty(self) -> bool:
        return len(self.graph) == 0 and self.queue.exhausted and self.spots.all_empty


@dataclass(frozen=True)
class ClassParams:
    """Configuration class bounds: spot count, color bound, allowed capacities."""

    spots: int
    colors: int
    capacities: frozenset[int]

    def __post_init__(self) -> None:
        if self.spots < 1:
            raise ValueError("at least one parking spot is required")
        if self.colors < 1:
            raise ValueError("at least one color is required")
        if not self.capacities:
            raise ValueError("the capacity set cannot be empty")
        if any(v < 1 for v in self.capacities):
            raise ValueError("capacities must be positive")

    @classmethod
    def of(cls, spots: int, colors: int, capacities: Iterable[int]) -> "ClassParams":
        return cls(spots, colors, frozenset(capacities))


class GameStatus(Enum):
    EMPTY = "empty"
    DEADLOCK = "deadlock"
    LIVE = "live"


class BoardingPolicy(Enum):
    """Which same-color parked bus the front passenger boards.

    FEWEST_REMAINING fills the bus closest to departing (ties go to the
    lowest spot index); LEFTMOST always boards the lowest-index match.  The
    two policies never disagree about solvability, only about intermediate
    spot contents.
    """

    FEWEST_REMAINING = "fewest-remaining"
    LEFTMOST = "leftmost"


@dataclass(frozen=True)
class BoardingEvent:
    """One forced step: a passenger boarding, or a full bus departing."""

    kind: str  # "board" or "depart"
    spot: int
    color: int
    seats_left: int = 0


@dataclass(frozen=True)
class Violation:
    kind: str  # "cycle" or "color_balance"
    message: str
    color: Optional[int] = None


@dataclass(frozen=True)
class EligibilityReport:
    ok: bool
    violations: tuple[Violation, ...] = ()


StateKey = tuple


def check_eligibility(cfg: Configuration) -> EligibilityReport:
    """Check whether the configuration can possibly be won.

    The graph must be acyclic and, for every color, the seats on that
    color's buses (in traffic plus still open on parked buses) must equal
    the number of that color's passengers still in line.  Both conditions
    are preserved by every transition, so they are checked once at ingest.
    """
    violations: list[Violation] = []
    cycle = cfg.graph.find_cycle()
    if cycle is not None:
        violations.append(
            Violation("cycle", "blocking cycle: " + " -> ".join(cycle))
        )
    seats: dict[int, int] = {}
    for _, label in cfg.graph.labels():
        seats[label.color] = seats.get(label.color, 0) + label.capacity
    for color, count in cfg.spots.remaining_seats().items():
        seats[color] = seats.get(color, 0) + count
    passengers = cfg.queue.remaining_counts()
    for color in sorted(set(seats) | set(passengers)):
        have = seats.get(color, 0)
        need = passengers.get(color, 0)
        if have != need:
            violations.append(
                Violation(
                    "color_balance",
                    f"{cfg.color_name(color)}: {have} seats vs {need} passengers",
                    color,
                )
            )
    return EligibilityReport(not violations, tuple(violations))


def free_buses(graph: CongestionGraph) -> frozenset[str]:
    """Buses with out-degree zero, i.e. not blocked by anything."""
    return frozenset(b for b in graph if not graph.blockers(b))


def _pick_boarding_spot(
    spots: SpotState, color: int, policy: BoardingPolicy
) -> Optional[int]:
    best: Optional[tuple[int, int]] = None
    for i, entry in spots.occupied():
        if entry.color != color:
            continue
        if policy is BoardingPolicy.LEFTMOST:
            return i
        key = (entry.remaining, i)
        if best is None or key < best:
            best = key
    return best[1] if best is not None else None


def normalize_boarding(
    cfg: Configuration,
    policy: BoardingPolicy = BoardingPolicy.FEWEST_REMAINING,
) -> tuple[Configuration, list[BoardingEvent]]:
    """Run forced boarding to its fixpoint and report what happened.

    Repeats while the front passenger's color matches an occupied spot:
    board one passenger, and the moment a bus has no seats left it departs,
    emptying its spot.  Afterwards either the queue is exhausted or no
    parked bus matches the front color.
    """
    queue = cfg.queue
    spots = cfg.spots
    events: list[BoardingEvent] = []
    while True:
        color = queue.front_color()
        if color is None:
            break
        index = _pick_boarding_spot(spots, color, policy)
        if index is None:
            break
        entry = spots.entries[index]
        assert entry is not None
        left = entry.remaining - 1
        events.append(BoardingEvent("board", index, color, left))
        queue = queue.advance(1)
        if left == 0:
            spots = spots.replace(index, None)
            events.append(BoardingEvent("depart", index, color, 0))
        else:
            spots = spots.replace(index, SpotEntry(color, left))
    if not events:
        return cfg, events
    return Configuration(cfg.graph, queue, spots, cfg.palette), events


def dispatch_events(
    cfg: Configuration,
    bus_id: str,
    policy: BoardingPolicy = BoardingPolicy.FEWEST_REMAINING,
) -> tuple[Configuration, list[BoardingEvent]]:
    """Dispatch a free bus and settle forced boarding; also return the log."""
    if bus_id not in cfg.graph:
        raise UnknownBusError(bus_id)
    if not cfg.graph.is_free(bus_id):
        raise NotFreeError(
            f"bus {bus_id!r} is blocked by {', '.join(cfg.graph.blockers(bus_id))}"
        )
    index = cfg.spots.first_empty()
    if index is None:
        raise NoEmptySpotError("every parking spot is occupied")
    label = cfg.graph.label(bus_id)
    placed = Configuration(
        cfg.graph.without(bus_id),
        cfg.queue,
        cfg.spots.replace(index, SpotEntry(label.color, label.capacity)),
        cfg.palette,
    )
    return normalize_boarding(placed, policy)


def dispatch(
    cfg: Configuration,
    bus_id: str,
    policy: BoardingPolicy = BoardingPolicy.FEWEST_REMAINING,
) -> Configuration:
    """Dispatch a free bus into the lowest-index empty spot."""
    return dispatch_events(cfg, bus_id, policy)[0]


def legal_moves(cfg: Configuration) -> list[str]:
    """Dispatchable buses, in graph declaration order.

    Empty when no spot is free, regardless of how many buses are free.
    Assumes the configuration is boarding-normalized.
    """
    if cfg.spots.first_empty() is None:
        return []
    return [b for b in cfg.graph if cfg.graph.is_free(b)]


def classify(cfg: Configuration) -> GameStatus:
    """Empty, Deadlock, or Live, for a boarding-normalized configuration."""
    if cfg.is_empty:
        return GameStatus.EMPTY
    if not legal_moves(cfg):
        return GameStatus.DEADLOCK
    return GameStatus.LIVE


def state_key(cfg: Configuration) -> StateKey:
    """Canonical hashable key for search memoization.

    Spots are interchangeable, so only the multiset of occupied entries
    matters; the remaining buses are identified by id and the queue by its
    cursor.  The key is a plain tuple of sorted tuples, so it is stable
    across processes.
    """
    return (
        tuple(sorted(cfg.graph.bus_ids)),
        tuple(sorted((e.color, e.remaining) for _, e in cfg.spots.occupied())),
        cfg.queue.cursor,
    )
