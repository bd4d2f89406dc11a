"""CLI tests driven through main(argv)."""

from __future__ import annotations

import json

import pytest

from conftest import data_path
from xaiplan.cli import main
from xaiplan.vizdoc import parse_document

DOMAIN = str(data_path("triline.pddl"))
PROBLEM = str(data_path("triline-to-r.pddl"))
CD_DOMAIN = str(data_path("collective-decision.pddl"))
CD_PROBLEM = str(data_path("cd-decide.pddl"))
ENV = str(data_path("triline.xml"))


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_plan_ipc_output(capsys):
    code, out = run(capsys, "plan", "--domain", DOMAIN, "--problem", PROBLEM)
    assert code == 0
    assert out.splitlines() == ["(a)", "(b)", "; cost = 2"]


def test_plan_satisficing(capsys):
    code, out = run(capsys, "plan", "--domain", DOMAIN, "--problem", PROBLEM,
                    "--satisficing")
    assert code == 0
    assert out.splitlines()[-1].startswith("; cost = ")


def test_plan_unsolvable_exit_code(capsys, tmp_path):
    empty_init = (tmp_path / "p.pddl")
    empty_init.write_text(
        "(define (problem t) (:domain triline) (:init) (:goal (r)))")
    code, out = run(capsys, "plan", "--domain", DOMAIN, "--problem", str(empty_init))
    assert code == 1
    assert "unsolvable" in out


def test_plan_blind_heuristic(capsys):
    code, out = run(capsys, "plan", "--domain", DOMAIN, "--problem", PROBLEM,
                    "--heuristic", "blind")
    assert code == 0
    assert out.splitlines()[-1] == "; cost = 2"


def test_topk_headers_and_doc(capsys, tmp_path):
    doc_path = tmp_path / "bundle.json"
    code, out = run(capsys, "topk", "--domain", DOMAIN, "--problem", PROBLEM,
                    "-k", "3", "--emit-doc", str(doc_path))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ";; plan 0 cost 2"
    assert sum(1 for l in lines if l.startswith(";; plan")) == 3
    doc = parse_document(doc_path.read_text())
    assert doc["kind"] == "topk" and doc["k"] == 3


def test_recognize_rows(capsys, tmp_path):
    obs = tmp_path / "obs.jsonl"
    obs.write_text(json.dumps({"t": 1000, "action": "(c)"}) + "\n")
    code, out = run(capsys, "recognize", "--env", ENV, "--observations", str(obs))
    assert code == 0
    rows = {line.split("\t")[0]: line for line in out.splitlines()}
    assert set(rows) == {"reach-r", "reach-q"}
    assert "0.850" in rows["reach-r"]


def test_explain_output(capsys):
    code, out = run(capsys, "explain", "--domain", DOMAIN, "--problem", PROBLEM)
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "total=7 relevant=3 grayed=4"
    assert set(lines[:-1]) == {"PRE (b) (q)", "ADD (a) (q)", "ADD (b) (r)"}


def test_explain_with_plan_file(capsys, tmp_path):
    plan_file = tmp_path / "plan.txt"
    plan_file.write_text("(a)\n(b)\n; cost = 2\n")
    code, out = run(capsys, "explain", "--domain", DOMAIN, "--problem", PROBLEM,
                    "--plan", str(plan_file))
    assert code == 0
    assert "total=7 relevant=3 grayed=4" in out


def test_explain_cd_task(capsys):
    code, out = run(capsys, "explain", "--domain", CD_DOMAIN, "--problem",
                    str(data_path("cd-propose.pddl")))
    assert code == 0
    summary = out.splitlines()[-1]
    # 33 ground conditions in the CD model; 3 carry this plan's optimality
    assert summary == "total=33 relevant=3 grayed=30"


def test_error_exit_code(capsys, tmp_path):
    broken = tmp_path / "broken.pddl"
    broken.write_text("(define (domain x")
    code, _ = run(capsys, "plan", "--domain", str(broken), "--problem", PROBLEM)
    assert code == 2
