"""Decision-matrix based max-min scheduling with baseline schedulers and usage monitoring."""

import json as _json

from ._core import (
    Error,
    ParseError,
    SchedulingError,
    ValidationError,
    Criterion,
    Column,
    DecisionMatrix,
    UserProfile,
    UsageRecord,
    Scenario,
    Schedule,
    build_matrix,
    column_total,
    matrix_score,
    best_user_type,
    rank_resources,
    parse_scenario,
    load_scenario,
    schedule,
    oracle_schedule,
    check_schedule,
    metrics,
    compare,
    synthesize_usage,
    classify_users,
    run_cli,
)
from ._core import report_json as _report_json


def build_report(records, peak_threshold, dormant_threshold):
    """Usage report as a dict (same layout as report.json)."""
    return _json.loads(_report_json(records, peak_threshold, dormant_threshold))


__all__ = [name for name in dir() if not name.startswith("_")]
