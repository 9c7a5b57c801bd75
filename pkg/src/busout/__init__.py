"""Engine, exact solver, and instance toolkit for the Bus Out dispatch puzzle."""

from .model import (
    BoardingEvent,
    BoardingPolicy,
    BusLabel,
    ClassParams,
    Configuration,
    CongestionGraph,
    EligibilityReport,
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

__all__ = [
    "BoardingEvent",
    "BoardingPolicy",
    "BusLabel",
    "ClassParams",
    "Configuration",
    "CongestionGraph",
    "EligibilityReport",
    "GameStatus",
    "NoEmptySpotError",
    "NotFreeError",
    "PassengerQueue",
    "SpotEntry",
    "SpotState",
    "UnknownBusError",
    "check_eligibility",
    "classify",
    "dispatch",
    "dispatch_events",
    "free_buses",
    "legal_moves",
    "normalize_boarding",
    "state_key",
]

__version__ = "0.1.0"
