"""Bundled sample instances.

``classic_trap`` is the standard six-bus teaching scenario: a red bus with
spare seats is immediately dispatchable, but sending it first strands two
seats and walls off the purple bus, deadlocking the station.  The winning
line parks the yellow, blue, and green buses first.
"""

from __future__ import annotations

from .model import (
    BusLabel,
    Configuration,
    CongestionGraph,
    PassengerQueue,
    SpotState,
)

CLASSIC_PALETTE = ("red", "purple", "yellow", "blue", "green")
RED, PURPLE, YELLOW, BLUE, GREEN = range(5)

# One known winning dispatch order for classic_trap.
CLASSIC_WIN = ("Y-10", "B-6", "G-4", "R-4", "P-4", "R-6")
# The tempting opening that strands the purple bus.
CLASSIC_MISSTEP = ("R-6", "Y-10", "B-6", "G-4")


def classic_trap() -> Configuration:
    """Four spots, six buses, and a queue that punishes greedy red dispatch."""
    graph = CongestionGraph(
        [
            ("Y-10", BusLabel(YELLOW, 10)),
            ("B-6", BusLabel(BLUE, 6)),
            ("G-4", BusLabel(GREEN, 4)),
            ("R-4", BusLabel(RED, 4)),
            ("P-4", BusLabel(PURPLE, 4)),
            ("R-6", BusLabel(RED, 6)),
        ],
        [
            ("B-6", "Y-10"),
            ("G-4", "B-6"),
            ("R-4", "G-4"),
            ("P-4", "R-4"),
            ("P-4", "G-4"),
        ],
    )
    queue = PassengerQueue.from_runs(
        [
            (RED, 4),
            (PURPLE, 2),
            (YELLOW, 2),
            (PURPLE, 2),
            (BLUE, 3),
            (YELLOW, 5),
            (GREEN, 2),
            (YELLOW, 1),
            (BLUE, 3),
            (YELLOW, 2),
            (GREEN, 2),
            (RED, 6),
        ]
    )
    return Configuration(graph, queue, SpotState.empty(4), CLASSIC_PALETTE)
