import json
import math
import os
from pathlib import Path

import pytest

import c3a

ROOT = Path(os.environ.get("C3A_SOURCE_DIR", Path(__file__).resolve().parents[2]))
MAZE = ROOT / "data" / "mazes" / "reference.txt"
SUBJECTS = ROOT / "data" / "subjects"


@pytest.fixture(scope="module")
def maze():
    return c3a.load_maze_file(str(MAZE))


def test_maze_shape(maze):
    assert maze.resolution == 0.25
    assert maze.default_goal() == (39, 39)
    assert maze.is_wall(-1, 0)


def test_bad_maze_raises_with_kind():
    with pytest.raises(c3a.C3AError) as err:
        c3a.load_maze("###\n#.#\n###\n")
    assert err.value.kind == "NoStart"


def test_kinematics_arc():
    p = c3a.step_kinematics(c3a.Pose2D(0, 0, 0), 1.0, math.pi / 2, 1.0)
    r = 1.0 / (math.pi / 2)
    assert p.x == pytest.approx(r, abs=1e-12)
    assert p.y == pytest.approx(r, abs=1e-12)
    assert p.theta == pytest.approx(math.pi / 2)


def test_scan_is_bounded(maze):
    ranges = c3a.cast_scan(maze, maze.start_pose)
    assert len(ranges) == 181
    assert all(0.0 < r <= 8.0 for r in ranges)


def test_plan_reaches_goal(maze):
    start = (int(maze.start_pose.x / 0.25), int(maze.start_pose.y / 0.25))
    result = c3a.plan(maze, start, maze.default_goal())
    assert result["cells"][0] == start
    assert result["cells"][-1] == (39, 39)
    assert result["cost"] > 0
    for (ai, aj), (bi, bj) in zip(result["cells"], result["cells"][1:]):
        assert max(abs(ai - bi), abs(aj - bj)) == 1
    with pytest.raises(c3a.C3AError) as err:
        c3a.plan(maze, start, (0, 0))
    assert err.value.kind == "GoalLethal"


def test_scores_and_priority():
    assert c3a.score_answers([True] * 5 + [False] * 5) == (5, "HCS")
    assert c3a.score_answers([True] * 4 + [False] * 6) == (4, "LCS")
    with pytest.raises(c3a.C3AError):
        c3a.score_answers([True] * 3)
    lcs = c3a.priority_config("LCS")
    hcs = c3a.priority_config("HCS")
    assert lcs["pause_timeout"] == 0.4
    assert hcs["pause_timeout"] == 0.8
    assert sorted(lcs["takeover_trends"]) == ["NEUTRAL", "WORSENING"]
    assert hcs["takeover_trends"] == ["WORSENING"]


def test_trend():
    rising = [(0.5 * k, 10.0 + 0.2 * k) for k in range(7)]
    falling = [(0.5 * k, 10.0 - 0.2 * k) for k in range(7)]
    assert c3a.classify_trend(rising, "HCS") == "WORSENING"
    assert c3a.classify_trend(falling, "HCS") == "IMPROVING"


def test_machine_trial_is_deterministic(maze):
    subject = str(SUBJECTS / "subject_1.cfg")
    a = c3a.run_trial(maze, subject, mode="machine", seed=42)
    b = c3a.run_trial(maze, subject, mode="machine", seed=42)
    assert a == b
    assert not a.timed_out
    assert a.manoeuvring_time == pytest.approx(28.15)
    assert a.takeover_count == 0


def test_topics_and_frames():
    roster = dict(c3a.topics())
    assert len(roster) == 14
    assert [t for t, latched in c3a.topics() if latched] == ["/map", "/goal", "/mode", "/cognitive_score"]
    frame = c3a.encode_frame("/cmd_vel_human", {"linear": 0.25, "angular": -0.5})
    back = c3a.decode_frame(frame)
    assert back["topic"] == "/cmd_vel_human"
    assert back["data"]["linear"] == 0.25
    assert back["data"]["source"] == "HUMAN"
    with pytest.raises(c3a.C3AError) as err:
        c3a.encode_frame("/teleport", {})
    assert err.value.kind == "UnknownTopic"


def test_golden_frames_are_canonical():
    for line in (ROOT / "tests" / "fixtures" / "bridge_frames.jsonl").read_text().splitlines():
        assert c3a.bridge_canonical(line) == line
        assert json.loads(line)["topic"] == c3a.decode_frame(line)["topic"]
