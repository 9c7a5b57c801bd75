"""Exact solvability search over the dispatch transition system.

``solve`` runs a depth-first search with a transposition table: plans are as
long as the bus count, so depth stays small while memoization keeps the
visited set tight.  An *unsolvable* verdict is only ever reported after the
whole reachable space has been exhausted; running out of budget yields
*inconclusive*, never a wrong answer.  Move ordering (front-color buses
first, then larger capacity) is a heuristic only and cannot change verdicts.

Two exact reductions keep the search tractable:

* Spots are interchangeable, so spot contents are tracked as a multiset
  (matching the canonical state key of the model layer).
* Buses are interchangeable when swapping them is a label-preserving
  isomorphism of the configuration.  The searcher detects the common case:
  connected components of the congestion graph that form simple blocking
  chains are canonicalized by their remaining label sequence, so a state is
  keyed by *which chain shapes remain*, not by which bus ids.  Isomorphic
  states have identical futures, hence identical verdicts; fused states
  collapse whole permutation families of disjoint equal paths (and of
  equal-label buses in edgeless instances) into one entry.

The searcher compiles the instance once into flat tuples and bitmasks and
then works on light tuples instead of full ``Configuration`` values;
``verify_plan`` replays plans through the plain model operations, so the two
routes check each other.
"""

from __future__ import annotations

import time
from bisect import bisect_left, bisect_right
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .model import (
    BoardingPolicy,
    Configuration,
    CongestionGraph,
    EligibilityReport,
    GameStatus,
    NoEmptySpotError,
    NotFreeError,
    PassengerQueue,
    SpotState,
    UnknownBusError,
    check_eligibility,
    classify,
    dispatch,
    normalize_boarding,
)


class Verdict(Enum):
    SOLVABLE = "solvable"
    UNSOLVABLE = "unsolvable"
    INCONCLUSIVE = "inconclusive"


class IneligibleError(Exception):
    """The input configuration fails the eligibility check."""

    def __init__(self, report: EligibilityReport):
        details = "; ".join(v.message for v in report.violations)
        super().__init__(f"ineligible configuration: {details}")
        self.report = report


class BudgetExceededError(Exception):
    """A spot-count probe ran out of budget before reaching a verdict."""

    def __init__(self, partial: tuple[tuple[int, "Verdict"], ...]):
        super().__init__("search budget exceeded before the minimum spot count was found")
        self.partial = partial


@dataclass(frozen=True)
class SolveBudget:
    """Limits on a single search; None means unlimited."""

    max_states: Optional[int] = None
    time_limit: Optional[float] = None

    def __post_init__(self) -> None:
        if self.max_states is not None and self.max_states < 1:
            raise ValueError("max_states must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")


UNLIMITED = SolveBudget()


@dataclass(frozen=True)
class SolveStats:
    states_visited: int
    peak_frontier: int
    elapsed: float


@dataclass(frozen=True)
class SolveResult:
    """Verdict plus, when solvable, a dispatch plan that wins."""

    verdict: Verdict
    plan: Optional[tuple[str, ...]]
    stats: SolveStats


@dataclass(frozen=True)
class MinSpotsResult:
    """Least spot count that makes (graph, queue) winnable, with the probes run."""

    s0: int
    per_spot: tuple[tuple[int, Verdict], ...]


@dataclass(frozen=True)
class ReachableCount:
    count: int
    truncated: bool


@dataclass(frozen=True)
class VerifyResult:
    """Outcome of replaying a plan; ``failed_step`` counts applied dispatches."""

    ok: bool
    failed_step: Optional[int] = None
    reason: Optional[str] = None


_EMPTY_SUFFIX = 0


class _Compiled:
    """Flat, index-based view of an instance for the search hot loop.

    Buses get dense indices in graph declaration order.  Connected
    components that are simple blocking chains are listed in ``chains``
    (head first, i.e. in forced dispatch order); every other bus lives in a
    bitmask with per-bus blocker masks.  ``sid`` maps (chain, position) to
    an interned id for the remaining label suffix, so two chains with the
    same tail shape share ids and states can be keyed by the sorted id
    multiset.
    """

    __slots__ = (
        "ids", "color", "cap",
        "qcolors", "qends", "qtotal", "spots", "cursor0", "occ0", "spots0",
        "chains", "sid", "sid_color", "sid_cap",
        "loose", "blockers_mask", "unblocks", "loose_mask0", "loose_free0",
    )

    def __init__(self, cfg: Configuration):
        graph = cfg.graph
        self.ids = tuple(graph.bus_ids)
        index = {b: i for i, b in enumerate(self.ids)}
        self.color = tuple(graph.label(b).color for b in self.ids)
        self.cap = tuple(graph.label(b).capacity for b in self.ids)
        n = len(self.ids)

        out_deg = [0] * n
        in_deg = [0] * n
        adj: list[list[int]] = [[] for _ in range(n)]  # undirected, for components
        points_at: list[int] = [-1] * n  # the single blocker, when out-degree is 1
        pointed_by: list[int] = [-1] * n
        blockers_mask = [0] * n
        unblocks: list[list[int]] = [[] for _ in range(n)]
        for blocked, blocker in graph.blocks:
            u, v = index[blocked], index[blocker]
            out_deg[u] += 1
            in_deg[v] += 1
            adj[u].append(v)
            adj[v].append(u)
            points_at[u] = v
            pointed_by[v] = u
            blockers_mask[u] |= 1 << v
            unblocks[v].append(u)
        self.blockers_mask = tuple(blockers_mask)
        self.unblocks = tuple(tuple(x) for x in unblocks)

        comp = [-1] * n
        comps: list[list[int]] = []
        for start in range(n):
            if comp[start] >= 0:
                continue
            comp_id = len(comps)
            members = [start]
            comp[start] = comp_id
            queue = [start]
            while queue:
                node = queue.pop()
                for other in adj[node]:
                    if comp[other] < 0:
                        comp[other] = comp_id
                        members.append(other)
                        queue.append(other)
            comps.append(members)

        chains: list[tuple[int, ...]] = []
        loose: list[int] = []
        for members in comps:
            edges = sum(out_deg[m] for m in members)
            is_chain = (
                edges == len(members) - 1
                and all(out_deg[m] <= 1 and in_deg[m] <= 1 for m in members)
            )
            if is_chain:
                head = next(m for m in members if out_deg[m] == 0)
                order = [head]
                while pointed_by[order[-1]] >= 0:
                    order.append(pointed_by[order[-1]])
                chains.append(tuple(order))
            else:
                loose.extend(members)
        # deterministic ordering: by head bus index / by bus index
        chains.sort(key=lambda ch: ch[0])
        loose.sort()
        self.chains = tuple(chains)
        self.loose = tuple(loose)
        self.loose_mask0 = 0
        for b in loose:
            self.loose_mask0 |= 1 << b
        self.loose_free0 = frozenset(
            b for b in loose if blockers_mask[b] & self.loose_mask0 == 0
        )

        # intern label suffixes of the chains; id 0 is the exhausted chain
        intern: dict[tuple[tuple[int, int], ...], int] = {(): _EMPTY_SUFFIX}
        sid_color = [-1]
        sid_cap = [0]
        sids: list[tuple[int, ...]] = []
        for chain in chains:
            labels = tuple((self.color[b], self.cap[b]) for b in chain)
            per_pos = []
            for pos in range(len(chain) + 1):
                suffix = labels[pos:]
                got = intern.get(suffix)
                if got is None:
                    got = len(intern)
                    intern[suffix] = got
                    sid_color.append(suffix[0][0])
                    sid_cap.append(suffix[0][1])
                per_pos.append(got)
            sids.append(tuple(per_pos))
        self.sid = tuple(sids)
        self.sid_color = tuple(sid_color)
        self.sid_cap = tuple(sid_cap)

        ends: list[int] = []
        acc = 0
        for _, count in cfg.queue.runs:
            acc += count
            ends.append(acc)
        self.qcolors = tuple(c for c, _ in cfg.queue.runs)
        self.qends = tuple(ends)
        self.qtotal = acc
        self.spots = len(cfg.spots)
        self.cursor0 = cfg.queue.cursor
        self.occ0 = tuple(
            sorted((e.color, e.remaining) for _, e in cfg.spots.occupied())
        )
        self.spots0 = tuple(
            (e.color, e.remaining) if e is not None else None
            for e in cfg.spots.entries
        )

    # -- forced boarding on the compact spot representations ---------------

    def settle_multiset(self, occ, cursor):
        """Boarding fixpoint on a sorted multiset of occupied entries.

        Feeding the fewest-seats matching entry until it departs or the run
        ends reproduces the per-passenger rule: once fed, that entry stays
        the strict minimum of its color.
        """
        qends = self.qends
        qcolors = self.qcolors
        total = self.qtotal
        while cursor < total:
            i = bisect_right(qends, cursor)
            front = qcolors[i]
            k = -1
            for j, (c, _) in enumerate(occ):
                if c == front:
                    k = j
                    break
                if c > front:
                    break
            if k < 0:
                break
            remaining = occ[k][1]
            run_left = qends[i] - cursor
            if remaining <= run_left:
                cursor += remaining
                occ = occ[:k] + occ[k + 1:]
            else:
                cursor += run_left
                occ = tuple(sorted(occ[:k] + occ[k + 1:] + ((front, remaining - run_left),)))
        return occ, cursor

    def settle_positional(self, spots, cursor, leftmost):
        """Boarding fixpoint keeping real spot indices (for the leftmost policy)."""
        qends = self.qends
        qcolors = self.qcolors
        total = self.qtotal
        while cursor < total:
            i = bisect_right(qends, cursor)
            front = qcolors[i]
            k = -1
            if leftmost:
                for j, e in enumerate(spots):
                    if e is not None and e[0] == front:
                        k = j
                        break
            else:
                best = None
                for j, e in enumerate(spots):
                    if e is not None and e[0] == front and (best is None or e[1] < best[0]):
                        best = (e[1], j)
                if best is not None:
                    k = best[1]
            if k < 0:
                break
            remaining = spots[k][1]
            run_left = qends[i] - cursor
            items = list(spots)
            if remaining <= run_left:
                cursor += remaining
                items[k] = None
            else:
                cursor += run_left
                items[k] = (front, remaining - run_left)
            spots = tuple(items)
        return spots, cursor

    def front_color(self, cursor: int) -> int:
        if cursor >= self.qtotal:
            return -1
        return self.qcolors[bisect_right(self.qends, cursor)]

    # -- canonical state keys ----------------------------------------------

    def chain_key(self, pos: tuple[int, ...]) -> tuple[int, ...]:
        """Sorted multiset of remaining chain shapes; the search maintains it
        incrementally, this recomputes it from scratch."""
        sid = self.sid
        return tuple(sorted(
            s for s in (sid[c][p] for c, p in enumerate(pos)) if s != _EMPTY_SUFFIX
        ))

    def moves(self, pos, loose_mask, loose_free, cursor, heuristics):
        """Dispatch candidates: one per distinct chain shape, plus free loose buses.

        Chains with the same remaining label suffix lead to isomorphic
        children, so only the lowest-numbered of each shape is offered.
        Each move is (sort bus, color, cap, kind, payload): kind "c" carries
        a suffix id, kind "b" a bus index.
        """
        sid = self.sid
        chains = self.chains
        out = []
        seen: set[int] = set()
        for c, p in enumerate(pos):
            s = sid[c][p]
            if s == _EMPTY_SUFFIX or s in seen:
                continue
            seen.add(s)
            bus = chains[c][p]
            out.append((bus, self.color[bus], self.cap[bus], "c", s))
        for b in loose_free:
            out.append((b, self.color[b], self.cap[b], "b", b))
        if heuristics:
            front = self.front_color(cursor)
            out.sort(key=lambda m: (m[1] != front, -m[2], m[0]))
        else:
            out.sort()
        return out

    def lowest_chain_with(self, pos: tuple[int, ...], suffix: int) -> int:
        sid = self.sid
        for c, p in enumerate(pos):
            if sid[c][p] == suffix:
                return c
        raise AssertionError("no chain carries the recorded suffix")


def _apply_move(comp, pos, sids, loose_mask, loose_free, move):
    """Carry out one dispatch on the compact state, before boarding settles.

    ``sids`` is the sorted tuple of remaining chain shape ids and is updated
    incrementally: a chain move swaps one id for its successor suffix.
    Returns (bus, pos, sids, loose_mask, loose_free).
    """
    kind = move[3]
    if kind == "c":
        suffix = move[4]
        c = comp.lowest_chain_with(pos, suffix)
        p = pos[c]
        bus = comp.chains[c][p]
        next_sid = comp.sid[c][p + 1]
        pos = pos[:c] + (p + 1,) + pos[c + 1:]
        i = bisect_left(sids, suffix)
        rest = sids[:i] + sids[i + 1:]
        if next_sid != _EMPTY_SUFFIX:
            j = bisect_left(rest, next_sid)
            sids = rest[:j] + (next_sid,) + rest[j:]
        else:
            sids = rest
        return bus, pos, sids, loose_mask, loose_free
    bus = move[4]
    loose_mask &= ~(1 << bus)
    loose_free = loose_free.difference((bus,))
    blockers_mask = comp.blockers_mask
    added = [
        w for w in comp.unblocks[bus]
        if (loose_mask >> w) & 1 and blockers_mask[w] & loose_mask == 0
    ]
    if added:
        loose_free = loose_free.union(added)
    return bus, pos, sids, loose_mask, loose_free


_TIME_CHECK_EVERY = 4096


def _run_dfs(comp, budget, heuristics, policy):
    start = time.monotonic()
    positional = policy is BoardingPolicy.LEFTMOST
    s = comp.spots
    max_states = budget.max_states
    time_limit = budget.time_limit
    qtotal = comp.qtotal
    pos0 = (0,) * len(comp.chains)

    if positional:
        spots0, cursor0 = comp.settle_positional(comp.spots0, comp.cursor0, True)
        occupied0 = sum(1 for e in spots0 if e is not None)
    else:
        spots0, cursor0 = comp.settle_multiset(comp.occ0, comp.cursor0)
        occupied0 = len(spots0)

    def is_done(pos, loose_mask, occupied, cursor):
        return (
            loose_mask == 0
            and occupied == 0
            and cursor == qtotal
            and all(p == len(ch) for p, ch in zip(pos, comp.chains))
        )

    sids0 = comp.chain_key(pos0)
    root_key = (sids0, comp.loose_mask0, spots0, cursor0)
    if is_done(pos0, comp.loose_mask0, occupied0, cursor0):
        return Verdict.SOLVABLE, (), SolveStats(1, 1, time.monotonic() - start)

    memo: dict[tuple, bool] = {}
    win: dict[tuple, tuple] = {}
    visited = 1
    peak = 1

    moves0 = (
        []
        if occupied0 >= s
        else comp.moves(pos0, comp.loose_mask0, comp.loose_free0, cursor0, heuristics)
    )
    # frame: [key, pos, sids, loose_mask, loose_free, spots, cursor,
    #         moves, ptr, pending_key, pending_move]
    stack: list[list] = [
        [root_key, pos0, sids0, comp.loose_mask0, comp.loose_free0, spots0, cursor0,
         moves0, 0, None, None]
    ]

    while stack:
        frame = stack[-1]
        pending = frame[9]
        if pending is not None:
            if memo[pending]:
                memo[frame[0]] = True
                win[frame[0]] = frame[10]
                stack.pop()
                continue
            frame[9] = None

        solved_move = None
        pushed = False
        moves = frame[7]
        while frame[8] < len(moves):
            move = moves[frame[8]]
            frame[8] += 1
            bus, cpos, csids, cmask, cfree = _apply_move(
                comp, frame[1], frame[2], frame[3], frame[4], move
            )
            if positional:
                items = list(frame[5])
                for slot, entry in enumerate(items):
                    if entry is None:
                        items[slot] = (comp.color[bus], comp.cap[bus])
                        break
                cspots, ccursor = comp.settle_positional(tuple(items), frame[6], True)
                coccupied = sum(1 for e in cspots if e is not None)
            else:
                cspots, ccursor = comp.settle_multiset(
                    tuple(sorted(frame[5] + ((comp.color[bus], comp.cap[bus]),))),
                    frame[6],
                )
                coccupied = len(cspots)
            child_key = (csids, cmask, cspots, ccursor)
            known = memo.get(child_key)
            if known is True:
                solved_move = (move[3], move[4])
                break
            if known is False:
                continue
            if is_done(cpos, cmask, coccupied, ccursor):
                memo[child_key] = True
                solved_move = (move[3], move[4])
                break
            child_moves = (
                []
                if coccupied >= s
                else comp.moves(cpos, cmask, cfree, ccursor, heuristics)
            )
            stack.append(
                [child_key, cpos, csids, cmask, cfree, cspots, ccursor,
                 child_moves, 0, None, None]
            )
            frame[9] = child_key
            frame[10] = (move[3], move[4])
            visited += 1
            if len(stack) > peak:
                peak = len(stack)
            if max_states is not None and visited > max_states:
                return (
                    Verdict.INCONCLUSIVE,
                    None,
                    SolveStats(visited, peak, time.monotonic() - start),
                )
            if time_limit is not None and visited % _TIME_CHECK_EVERY == 0:
                if time.monotonic() - start > time_limit:
                    return (
                        Verdict.INCONCLUSIVE,
                        None,
                        SolveStats(visited, peak, time.monotonic() - start),
                    )
            pushed = True
            break

        if pushed:
            continue
        if solved_move is not None:
            memo[frame[0]] = True
            win[frame[0]] = solved_move
            stack.pop()
            continue
        # every move explored and none won: this state is exhausted
        memo[frame[0]] = False
        stack.pop()

    elapsed = time.monotonic() - start
    if memo.get(root_key):
        plan = _extract_plan(comp, win, pos0, spots0, cursor0, positional)
        return Verdict.SOLVABLE, plan, SolveStats(visited, peak, elapsed)
    return Verdict.UNSOLVABLE, None, SolveStats(visited, peak, elapsed)


def _extract_plan(comp, win, pos0, spots0, cursor0, positional):
    """Rebuild the winning dispatch order by replaying recorded moves.

    Recorded chain moves name a suffix shape, not a bus, so the replay picks
    the lowest chain currently carrying that shape; any choice is equivalent.
    """
    plan: list[str] = []
    pos, loose_mask, loose_free = pos0, comp.loose_mask0, comp.loose_free0
    sids = comp.chain_key(pos0)
    spots, cursor = spots0, cursor0
    qtotal = comp.qtotal
    while True:
        if positional:
            occupied = sum(1 for e in spots if e is not None)
        else:
            occupied = len(spots)
        if (
            loose_mask == 0
            and occupied == 0
            and cursor == qtotal
            and all(p == len(ch) for p, ch in zip(pos, comp.chains))
        ):
            return tuple(plan)
        kind, payload = win[(sids, loose_mask, spots, cursor)]
        bus, pos, sids, loose_mask, loose_free = _apply_move(
            comp, pos, sids, loose_mask, loose_free, (None, None, None, kind, payload)
        )
        plan.append(comp.ids[bus])
        if positional:
            items = list(spots)
            for slot, entry in enumerate(items):
                if entry is None:
                    items[slot] = (comp.color[bus], comp.cap[bus])
                    break
            spots, cursor = comp.settle_positional(tuple(items), cursor, True)
        else:
            spots, cursor = comp.settle_multiset(
                tuple(sorted(spots + ((comp.color[bus], comp.cap[bus]),))), cursor
            )


def solve(
    cfg: Configuration,
    budget: Optional[SolveBudget] = None,
    *,
    heuristics: bool = True,
    policy: BoardingPolicy = BoardingPolicy.FEWEST_REMAINING,
) -> SolveResult:
    """Decide solvability exactly, returning a winning plan when one exists.

    Raises :class:`IneligibleError` for configurations that fail the
    eligibility check; those are rejected rather than reported unsolvable.
    """
    report = check_eligibility(cfg)
    if not report.ok:
        raise IneligibleError(report)
    comp = _Compiled(cfg)
    verdict, plan, stats = _run_dfs(comp, budget or UNLIMITED, heuristics, policy)
    return SolveResult(verdict, plan, stats)


def verify_plan(cfg: Configuration, plan: tuple[str, ...] | list[str]) -> VerifyResult:
    """Replay a dispatch plan through the model and check it wins.

    ``failed_step`` is the number of dispatches applied when the failure was
    detected: an illegal move fails at its own index, while a plan that runs
    out with the station still busy fails at ``len(plan)``.
    """
    current, _ = normalize_boarding(cfg)
    for step, bus_id in enumerate(plan):
        try:
            current = dispatch(current, bus_id)
        except UnknownBusError:
            return VerifyResult(False, step, "unknown-bus")
        except NotFreeError:
            return VerifyResult(False, step, "not-free")
        except NoEmptySpotError:
            return VerifyResult(False, step, "no-empty-spot")
    status = classify(current)
    if status is GameStatus.EMPTY:
        return VerifyResult(True)
    return VerifyResult(False, len(plan), status.value)


def min_spots(
    graph: CongestionGraph,
    queue: PassengerQueue,
    budget: Optional[SolveBudget] = None,
    *,
    heuristics: bool = True,
) -> MinSpotsResult:
    """Scan spot counts upward until (graph, queue, empty spots) is solvable.

    Solvability is monotone in the spot count (a winning plan simply never
    touches the extra spot), so the first solvable count is the minimum.
    Parking every bus at once always works, so ``len(graph)`` spots bound the
    scan.  Negative probes are the expensive ones; scanning upward keeps
    them to the minimum.
    """
    probe = Configuration(graph, queue, SpotState.empty(1))
    report = check_eligibility(probe)
    if not report.ok:
        raise IneligibleError(report)
    per_spot: list[tuple[int, Verdict]] = []
    for s in range(1, max(1, len(graph)) + 1):
        result = solve(
            Configuration(graph, queue, SpotState.empty(s)),
            budget,
            heuristics=heuristics,
        )
        per_spot.append((s, result.verdict))
        if result.verdict is Verdict.SOLVABLE:
            return MinSpotsResult(s, tuple(per_spot))
        if result.verdict is Verdict.INCONCLUSIVE:
            raise BudgetExceededError(tuple(per_spot))
    raise AssertionError("an eligible instance is always solvable with one spot per bus")


def enumerate_reachable(cfg: Configuration, cap: int) -> ReachableCount:
    """Count reachable boarding-normalized states, breadth-first.

    States are counted up to the interchangeable-bus symmetry described in
    the module docstring (swapping identically shaped chains, or same-label
    buses with no traffic, does not produce a new state).  The count is
    exact while it stays within ``cap``; beyond that the walk stops and
    reports truncation, so the true count is at least ``cap``.
    """
    report = check_eligibility(cfg)
    if not report.ok:
        raise IneligibleError(report)
    if cap < 1:
        raise ValueError("cap must be positive")
    comp = _Compiled(cfg)
    occ0, cursor0 = comp.settle_multiset(comp.occ0, comp.cursor0)
    pos0 = (0,) * len(comp.chains)
    sids0 = comp.chain_key(pos0)
    seen = {(sids0, comp.loose_mask0, occ0, cursor0)}
    frontier = deque([(pos0, sids0, comp.loose_mask0, comp.loose_free0, occ0, cursor0)])
    count = 1
    s = comp.spots
    while frontier:
        pos, sids, loose_mask, loose_free, occ, cursor = frontier.popleft()
        if len(occ) >= s:
            continue
        for move in comp.moves(pos, loose_mask, loose_free, cursor, False):
            bus, cpos, csids, cmask, cfree = _apply_move(
                comp, pos, sids, loose_mask, loose_free, move
            )
            cocc, ccursor = comp.settle_multiset(
                tuple(sorted(occ + ((comp.color[bus], comp.cap[bus]),))), cursor
            )
            key = (csids, cmask, cocc, ccursor)
            if key in seen:
                continue
            seen.add(key)
            count += 1
            if count > cap:
                return ReachableCount(cap, True)
            frontier.append((cpos, csids, cmask, cfree, cocc, ccursor))
    return ReachableCount(count, False)
