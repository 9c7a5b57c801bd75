import pytest
from hypothesis import given, strategies as st

from busout.model import (
    BoardingPolicy,
    BusLabel,
    Configuration,
    CongestionGraph,
    GameStatus,
    NoEmptySpotError,
    NotFreeError,
    PassengerQueue,
    SpotEntry,
    SpotState,
    UnknownBusError,
    check_eligibility,
    classify,
    dispatch,
    dispatch_events,
    free_buses,
    legal_moves,
    normalize_boarding,
    state_key,
)
from busout.levels import CLASSIC_MISSTEP, CLASSIC_WIN

from helpers import replay


def empty_config(spots=1):
    return Configuration(
        CongestionGraph([], []), PassengerQueue.from_runs([]), SpotState.empty(spots)
    )


# -- eligibility -------------------------------------------------------------

def test_classic_is_eligible(classic):
    assert check_eligibility(classic).ok


def test_empty_configuration_is_eligible():
    assert check_eligibility(empty_config()).ok


def test_seat_mismatch_names_the_color():
    cfg = Configuration(
        CongestionGraph([("r0", BusLabel(0, 2))], []),
        PassengerQueue.from_runs([(0, 1)]),
        SpotState.empty(1),
        ("red",),
    )
    report = check_eligibility(cfg)
    assert not report.ok
    (violation,) = report.violations
    assert violation.kind == "color_balance"
    assert violation.color == 0
    assert "red" in violation.message and "2" in violation.message and "1" in violation.message


def test_blocking_cycle_is_reported():
    cfg = Configuration(
        CongestionGraph(
            [("a", BusLabel(0, 1)), ("b", BusLabel(0, 1))],
            [("a", "b"), ("b", "a")],
        ),
        PassengerQueue.from_runs([(0, 2)]),
        SpotState.empty(1),
    )
    report = check_eligibility(cfg)
    assert not report.ok
    assert any(v.kind == "cycle" for v in report.violations)


def test_queue_color_with_no_bus_fails_eligibility():
    cfg = Configuration(
        CongestionGraph([("r0", BusLabel(0, 1))], []),
        PassengerQueue.from_runs([(0, 1), (1, 1)]),
        SpotState.empty(1),
        ("red", "ghost"),
    )
    report = check_eligibility(cfg)
    assert not report.ok
    assert any(v.color == 1 for v in report.violations)


def test_parked_seats_count_toward_eligibility():
    cfg = Configuration(
        CongestionGraph([], []),
        PassengerQueue.from_runs([(0, 3)]),
        SpotState((SpotEntry(0, 3),)),
    )
    assert check_eligibility(cfg).ok


# -- graph structure ---------------------------------------------------------

def test_free_buses_classic(classic):
    assert free_buses(classic.graph) == {"Y-10", "R-6"}


def test_free_buses_empty_and_isolated():
    assert free_buses(CongestionGraph([], [])) == frozenset()
    graph = CongestionGraph([(f"b{i}", BusLabel(0, 1)) for i in range(3)], [])
    assert free_buses(graph) == {"b0", "b1", "b2"}


def test_graph_rejects_self_loops_unknown_ids_and_duplicates():
    with pytest.raises(ValueError):
        CongestionGraph([("a", BusLabel(0, 1))], [("a", "a")])
    with pytest.raises(ValueError):
        CongestionGraph([("a", BusLabel(0, 1))], [("a", "ghost")])
    with pytest.raises(ValueError):
        CongestionGraph([("a", BusLabel(0, 1)), ("a", BusLabel(0, 2))], [])


def test_without_removes_vertex_and_edges(classic):
    graph = classic.graph.without("Y-10")
    assert "Y-10" not in graph
    assert graph.is_free("B-6")
    assert len(graph.blocks) == 4


# -- forced boarding ---------------------------------------------------------

def test_single_forced_board_and_departure():
    cfg = Configuration(
        CongestionGraph([], []),
        PassengerQueue.from_runs([(0, 1)]),
        SpotState((SpotEntry(0, 1),)),
    )
    settled, events = normalize_boarding(cfg)
    assert settled.spots.all_empty
    assert settled.queue.exhausted
    assert [e.kind for e in events] == ["board", "depart"]


def test_exhausted_queue_is_already_settled():
    cfg = Configuration(
        CongestionGraph([], []),
        PassengerQueue(((0, 2),), cursor=2),
        SpotState((SpotEntry(1, 4),)),
    )
    settled, events = normalize_boarding(cfg)
    assert settled == cfg
    assert events == []


def test_boarding_prefers_fewest_remaining_seats():
    cfg = Configuration(
        CongestionGraph([], []),
        PassengerQueue.from_runs([(0, 2)]),
        SpotState((SpotEntry(0, 5), SpotEntry(0, 2))),
    )
    settled, _ = normalize_boarding(cfg)
    # both passengers go to the two-seat bus at index 1, not the roomy one
    assert settled.spots.entries[0] == SpotEntry(0, 5)
    assert settled.spots.entries[1] is None


def test_leftmost_policy_differs_only_in_which_bus_fills():
    cfg = Configuration(
        CongestionGraph([], []),
        PassengerQueue.from_runs([(0, 2)]),
        SpotState((SpotEntry(0, 5), SpotEntry(0, 2))),
    )
    settled, _ = normalize_boarding(cfg, BoardingPolicy.LEFTMOST)
    assert settled.spots.entries[0] == SpotEntry(0, 3)
    assert settled.spots.entries[1] == SpotEntry(0, 2)


def test_winning_line_interleaves_boardings(classic):
    staged = replay(classic, ("Y-10", "B-6", "G-4", "R-4"))
    settled, events = dispatch_events(staged, "P-4")
    purple = classic.palette.index("purple")
    yellow = classic.palette.index("yellow")
    departure = next(
        i for i, e in enumerate(events) if e.kind == "depart" and e.color == purple
    )
    before = events[:departure]
    assert sum(1 for e in before if e.kind == "board" and e.color == purple) == 4
    assert sum(1 for e in before if e.kind == "board" and e.color == yellow) == 2
    # afterwards the yellow, blue, and green buses fill and depart too
    assert settled.queue.front_color() == classic.palette.index("red")
    assert settled.spots.all_empty


# -- dispatch ----------------------------------------------------------------

def test_dispatch_parks_in_lowest_empty_spot_and_boards(classic):
    after = dispatch(classic, "R-6")
    assert after.spots.entries[0] == SpotEntry(classic.palette.index("red"), 2)
    assert after.queue.cursor == 4
    assert "R-6" not in after.graph


def test_dispatch_blocked_bus_raises(classic):
    with pytest.raises(NotFreeError):
        dispatch(classic, "P-4")


def test_dispatch_unknown_bus_raises(classic):
    with pytest.raises(UnknownBusError):
        dispatch(classic, "nope")


def test_dispatch_with_full_spots_raises(classic):
    jammed = replay(classic, CLASSIC_MISSTEP)
    free = [b for b in jammed.graph if jammed.graph.is_free(b)]
    assert free == ["R-4"]
    with pytest.raises(NoEmptySpotError):
        dispatch(jammed, "R-4")


# -- moves and classification --------------------------------------------------

def test_legal_moves_in_declaration_order(classic):
    assert legal_moves(classic) == ["Y-10", "R-6"]


def test_legal_moves_empty_when_spots_full(classic):
    jammed = replay(classic, CLASSIC_MISSTEP)
    assert legal_moves(jammed) == []


def test_classify_live_deadlock_empty(classic):
    assert classify(classic) is GameStatus.LIVE
    assert classify(empty_config(4)) is GameStatus.EMPTY
    jammed = replay(classic, CLASSIC_MISSTEP)
    assert classify(jammed) is GameStatus.DEADLOCK


def test_misstep_reaches_the_documented_jam(classic):
    jammed = replay(classic, CLASSIC_MISSTEP)
    names = [
        (classic.color_name(e.color), e.remaining) if e else None
        for e in jammed.spots.entries
    ]
    assert names == [("red", 2), ("yellow", 10), ("blue", 6), ("green", 4)]
    assert set(jammed.graph.bus_ids) == {"R-4", "P-4"}
    assert jammed.queue.cursor == 4


def test_winning_line_empties_the_station(classic):
    final = replay(classic, CLASSIC_WIN)
    assert classify(final) is GameStatus.EMPTY


# -- state keys ----------------------------------------------------------------

def test_state_key_ignores_spot_permutation(classic):
    base = replay(classic, ("Y-10", "B-6"))
    entries = base.spots.entries
    permuted = Configuration(
        base.graph,
        base.queue,
        SpotState((entries[1], entries[0]) + entries[2:]),
        base.palette,
    )
    assert state_key(base) == state_key(permuted)


def test_state_key_distinguishes_graph_changes(classic):
    assert state_key(classic) != state_key(dispatch(classic, "Y-10"))


def test_state_key_is_identity_based_for_equal_labels():
    twins = Configuration(
        CongestionGraph([("a", BusLabel(0, 1)), ("b", BusLabel(0, 1))], []),
        PassengerQueue.from_runs([(0, 2)]),
        SpotState.empty(1),
    )
    assert state_key(dispatch(twins, "a")) != state_key(dispatch(twins, "b"))


# -- queue representation --------------------------------------------------------

@given(st.lists(st.integers(min_value=0, max_value=4), max_size=40))
def test_queue_rle_roundtrip(colors):
    queue = PassengerQueue.from_colors(colors)
    assert list(queue.colors()) == colors
    assert queue.total == len(colors)
    for (c1, _), (c2, _) in zip(queue.runs, queue.runs[1:]):
        assert c1 != c2


@given(
    st.lists(
        st.tuples(st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=5)),
        max_size=20,
    )
)
def test_queue_from_runs_matches_expansion(runs):
    queue = PassengerQueue.from_runs(runs)
    expanded = [c for c, n in runs for _ in range(n)]
    assert list(queue.colors()) == expanded


def test_queue_cursor_tracking():
    queue = PassengerQueue.from_runs([(0, 2), (1, 3)])
    assert queue.front_run() == (0, 2)
    advanced = queue.advance(3)
    assert advanced.front_run() == (1, 2)
    assert advanced.remaining_counts() == {1: 2}
    with pytest.raises(ValueError):
        queue.advance(6)


def test_queue_rejects_bad_runs():
    with pytest.raises(ValueError):
        PassengerQueue(((0, 0),))
    with pytest.raises(ValueError):
        PassengerQueue(((0, 1), (0, 2)))


def test_palette_names_must_be_unique():
    with pytest.raises(ValueError):
        Configuration(
            CongestionGraph([], []),
            PassengerQueue.from_runs([]),
            SpotState.empty(1),
            ("red", "red"),
        )
