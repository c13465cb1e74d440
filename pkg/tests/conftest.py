import json
from importlib import resources

import pytest

from tenetbench.engine import Session, replay
from tenetbench.goals import GoalGraph, parse_goal_graph
from tenetbench.knowledge import KnowledgeBase, parse_rules


def _data(name: str) -> str:
    return resources.files("tenetbench.data").joinpath(f"care_o_bot/{name}").read_text()


@pytest.fixture(scope="session")
def care_kb() -> KnowledgeBase:
    return parse_rules(_data("rules.txt"))


@pytest.fixture(scope="session")
def care_goals() -> GoalGraph:
    return parse_goal_graph(_data("goals_fig3.json"))


@pytest.fixture(scope="session")
def care_goals_revised() -> GoalGraph:
    return parse_goal_graph(_data("goals_fig4.json"))


@pytest.fixture(scope="session")
def care_log() -> dict:
    return json.loads(_data("session.log.json"))


@pytest.fixture(scope="session")
def golden_session(care_log, care_goals, care_kb) -> Session:
    return replay(care_log, care_goals, care_kb)
