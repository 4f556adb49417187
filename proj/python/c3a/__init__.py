"""Collaborative-control maze navigation: simulation core and bridge helpers."""

import json

from ._c3a import (
    C3AError,
    GridWorld,
    Pose2D,
    RunResult,
    advance,
    bridge_canonical,
    cast_scan,
    classify_trend,
    load_maze,
    load_maze_file,
    plan,
    priority_config,
    run_trial,
    score_answers,
    step_kinematics,
    topics,
)


def decode_frame(frame):
    """Parses a bridge frame into a dict after validating it against the topic schema."""
    return json.loads(bridge_canonical(frame))


def encode_frame(topic, data, stamp=0.0, seq=0):
    """Builds a canonical bridge frame. Raises C3AError for unknown topics or bad payloads."""
    return bridge_canonical(json.dumps({"topic": topic, "stamp": stamp, "seq": seq, "data": data}))


__all__ = [
    "C3AError",
    "GridWorld",
    "Pose2D",
    "RunResult",
    "advance",
    "bridge_canonical",
    "cast_scan",
    "classify_trend",
    "decode_frame",
    "encode_frame",
    "load_maze",
    "load_maze_file",
    "plan",
    "priority_config",
    "run_trial",
    "score_answers",
    "step_kinematics",
    "topics",
]
