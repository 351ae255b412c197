"""Nurse rostering with ant colony and particle swarm optimization."""

from ._core import (
    HardViolationReport,
    InstanceError,
    PenaltyBreakdown,
    RosterInstance,
    RunResult,
    RunStats,
    Schedule,
    check_hard,
    compute_stats,
    desk_instance,
    empty_schedule,
    evaluate,
    evaluate_batch,
    load_instance,
    parse_instance,
    parse_roster,
    reference_instance,
    run_aco,
    run_pso,
    serialize_instance,
    serialize_roster,
    set_assignment,
    soft_penalty,
)

__all__ = [
    "HardViolationReport",
    "InstanceError",
    "PenaltyBreakdown",
    "RosterInstance",
    "RunResult",
    "RunStats",
    "Schedule",
    "check_hard",
    "compute_stats",
    "desk_instance",
    "empty_schedule",
    "evaluate",
    "evaluate_batch",
    "load_instance",
    "parse_instance",
    "parse_roster",
    "reference_instance",
    "run_aco",
    "run_pso",
    "serialize_instance",
    "serialize_roster",
    "set_assignment",
    "soft_penalty",
]
