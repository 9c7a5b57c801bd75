"""Instance files and result documents.

An instance is a single JSON document (see ``docs/file-format.md`` for the
bit-exact grammar):

.. code-block:: json

    {
      "palette": ["red", "green"],
      "spots": 2,
      "buses": [{"id": "b0", "color": "red", "capacity": 2}],
      "blocks": [["b1", "b0"]],
      "queue": [["red", 2]],
      "initialSpots": ["empty", {"color": "red", "remaining": 1}]
    }

Colors are referenced by palette name everywhere; the palette index is the
internal color id.  ``blocks`` entries are ``[blocked, blocker]`` pairs.
``initialSpots`` is optional and defaults to all empty.  Unknown fields are
rejected, and rendering is canonical (fixed key order, two-space indent,
sorted nothing, trailing newline), so ``parse(render(cfg))`` reproduces the
configuration exactly.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional, Union

from .model import (
    BusLabel,
    Configuration,
    CongestionGraph,
    EligibilityReport,
    PassengerQueue,
    SpotEntry,
    SpotState,
)
from .solver import MinSpotsResult, ReachableCount, SolveResult


class ParseError(ValueError):
    """The document is not a well-formed instance file."""


_TOP_FIELDS = {"palette", "spots", "buses", "blocks", "queue", "initialSpots"}
_BUS_FIELDS = {"id", "color", "capacity"}
_SPOT_FIELDS = {"color", "remaining"}


def _fail(message: str) -> "NoReturn":  # noqa: F821 - typing helper only
    raise ParseError(message)


def _expect_int(value: Any, what: str, minimum: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        _fail(f"{what} must be an integer, got {value!r}")
    if value < minimum:
        _fail(f"{what} must be >= {minimum}, got {value}")
    return value


def parse_instance(text: str) -> Configuration:
    """Parse an instance document; raises ParseError with a diagnostic."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        _fail(f"invalid JSON: {exc}")
    if not isinstance(doc, dict):
        _fail("the top-level value must be an object")
    unknown = set(doc) - _TOP_FIELDS
    if unknown:
        _fail(f"unknown fields: {', '.join(sorted(unknown))}")
    for required in ("palette", "spots", "buses", "queue"):
        if required not in doc:
            _fail(f"missing required field {required!r}")

    palette = doc["palette"]
    if not isinstance(palette, list) or not all(isinstance(p, str) for p in palette):
        _fail("palette must be a list of color names")
    if len(set(palette)) != len(palette):
        _fail("palette names must be unique")
    color_of = {name: i for i, name in enumerate(palette)}

    def color_id(name: Any, where: str) -> int:
        if not isinstance(name, str) or name not in color_of:
            _fail(f"{where}: unknown color {name!r}")
        return color_of[name]

    spots_count = _expect_int(doc["spots"], "spots", 1)

    buses: list[tuple[str, BusLabel]] = []
    seen_ids: set[str] = set()
    if not isinstance(doc["buses"], list):
        _fail("buses must be a list")
    for item in doc["buses"]:
        if not isinstance(item, dict):
            _fail(f"bus entries must be objects, got {item!r}")
        unknown = set(item) - _BUS_FIELDS
        if unknown:
            _fail(f"bus entry has unknown fields: {', '.join(sorted(unknown))}")
        if set(item) != _BUS_FIELDS:
            _fail(f"bus entry must have id, color, capacity: {item!r}")
        bus_id = item["id"]
        if not isinstance(bus_id, str) or not bus_id:
            _fail(f"bus id must be a non-empty string, got {bus_id!r}")
        if bus_id in seen_ids:
            _fail(f"duplicate bus id {bus_id!r}")
        seen_ids.add(bus_id)
        buses.append(
            (
                bus_id,
                BusLabel(
                    color_id(item["color"], f"bus {bus_id}"),
                    _expect_int(item["capacity"], f"bus {bus_id} capacity", 1),
                ),
            )
        )

    blocks: list[tuple[str, str]] = []
    for item in doc.get("blocks", []):
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(x, str) for x in item)
        ):
            _fail(f"blocks entries must be [blocked, blocker] id pairs, got {item!r}")
        blocked, blocker = item
        for ref in (blocked, blocker):
            if ref not in seen_ids:
                _fail(f"blocks references unknown bus {ref!r}")
        if blocked == blocker:
            _fail(f"bus {blocked!r} cannot block itself")
        blocks.append((blocked, blocker))

    if not isinstance(doc["queue"], list):
        _fail("queue must be a list of [color, count] runs")
    runs: list[tuple[int, int]] = []
    for item in doc["queue"]:
        if not isinstance(item, list) or len(item) != 2:
            _fail(f"queue entries must be [color, count] pairs, got {item!r}")
        runs.append(
            (
                color_id(item[0], "queue"),
                _expect_int(item[1], "queue run count", 1),
            )
        )

    entries: Optional[list[Optional[SpotEntry]]] = None
    if "initialSpots" in doc:
        raw = doc["initialSpots"]
        if not isinstance(raw, list) or len(raw) != spots_count:
            _fail(f"initialSpots must list exactly {spots_count} entries")
        entries = []
        for item in raw:
            if item == "empty":
                entries.append(None)
                continue
            if not isinstance(item, dict) or set(item) != _SPOT_FIELDS:
                _fail(
                    "initialSpots entries must be \"empty\" or "
                    f"{{color, remaining}} objects, got {item!r}"
                )
            entries.append(
                SpotEntry(
                    color_id(item["color"], "initialSpots"),
                    _expect_int(item["remaining"], "initialSpots remaining", 1),
                )
            )

    try:
        graph = CongestionGraph(buses, blocks)
        queue = PassengerQueue.from_runs(runs)
        spots = SpotState(tuple(entries)) if entries is not None else SpotState.empty(spots_count)
        return Configuration(graph, queue, spots, tuple(palette))
    except ValueError as exc:
        _fail(str(exc))


def render_instance(cfg: Configuration) -> str:
    """Render a configuration as a canonical instance document.

    Only fresh instances can be rendered: the file format has no queue
    cursor, so a partially consumed queue is an error.
    """
    if cfg.queue.cursor != 0:
        raise ValueError("cannot render a partially consumed queue as an instance file")
    used = {label.color for _, label in cfg.graph.labels()}
    used.update(color for color, _ in cfg.queue.runs)
    used.update(entry.color for _, entry in cfg.spots.occupied())
    if used and max(used) >= len(cfg.palette):
        raise ValueError("the palette does not name every color in use")
    doc: dict[str, Any] = {
        "palette": list(cfg.palette),
        "spots": len(cfg.spots),
        "buses": [
            {"id": bus_id, "color": cfg.palette[label.color], "capacity": label.capacity}
            for bus_id, label in cfg.graph.labels()
        ],
        "blocks": [[blocked, blocker] for blocked, blocker in cfg.graph.blocks],
        "queue": [[cfg.palette[color], count] for color, count in cfg.queue.runs],
    }
    if not cfg.spots.all_empty:
        doc["initialSpots"] = [
            {"color": cfg.palette[e.color], "remaining": e.remaining} if e else "empty"
            for e in cfg.spots.entries
        ]
    return json.dumps(doc, indent=2) + "\n"


def load_instance(path: Union[str, Path]) -> Configuration:
    return parse_instance(Path(path).read_text())


def save_instance(cfg: Configuration, path: Union[str, Path]) -> None:
    Path(path).write_text(render_instance(cfg))


# -- result documents -------------------------------------------------------


def eligibility_document(report: EligibilityReport) -> dict:
    return {
        "ok": report.ok,
        "violations": [
            {"kind": v.kind, "message": v.message}
            | ({"color": v.color} if v.color is not None else {})
            for v in report.violations
        ],
    }


def solve_document(result: SolveResult) -> dict:
    return {
        "verdict": result.verdict.value,
        "plan": list(result.plan) if result.plan is not None else None,
        "stats": {
            "statesVisited": result.stats.states_visited,
            "peakFrontier": result.stats.peak_frontier,
            "elapsed": result.stats.elapsed,
        },
    }


def min_spots_document(result: MinSpotsResult) -> dict:
    return {
        "s0": result.s0,
        "perS": [[s, verdict.value] for s, verdict in result.per_spot],
    }


def count_document(result: ReachableCount) -> dict:
    return {"count": result.count, "truncated": result.truncated}
