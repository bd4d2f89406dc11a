from __future__ import annotations

import sys
from importlib import resources
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make `oracles` importable

from xaiplan.model import GroundedTask, ground
from xaiplan.pddl import parse_domain, parse_problem


def data_text(name: str) -> str:
    return (resources.files("xaiplan") / "data" / name).read_text()


def data_path(name: str) -> Path:
    return Path(str(resources.files("xaiplan") / "data" / name))


@pytest.fixture(scope="session")
def triline_domain():
    return parse_domain(data_text("triline.pddl"))


@pytest.fixture(scope="session")
def triline(triline_domain) -> GroundedTask:
    problem = parse_problem(data_text("triline-to-r.pddl"), triline_domain)
    return ground(triline_domain, problem)


@pytest.fixture(scope="session")
def triline_to_q(triline_domain) -> GroundedTask:
    text = data_text("triline-to-r.pddl").replace("(:goal (r))", "(:goal (q))")
    problem = parse_problem(text.replace("triline-to-r", "triline-to-q"), triline_domain)
    return ground(triline_domain, problem)


@pytest.fixture(scope="session")
def cd_domain():
    return parse_domain(data_text("collective-decision.pddl"))


@pytest.fixture(scope="session")
def cd_decide(cd_domain) -> GroundedTask:
    problem = parse_problem(data_text("cd-decide.pddl"), cd_domain)
    return ground(cd_domain, problem)


@pytest.fixture(scope="session")
def cd_propose(cd_domain) -> GroundedTask:
    problem = parse_problem(data_text("cd-propose.pddl"), cd_domain)
    return ground(cd_domain, problem)
