import os
from pathlib import Path

import pytest

import chorc

CORPUS = Path(os.environ.get("CHORC_CORPUS_DIR", Path(__file__).resolve().parents[2] / "corpus"))


def source(name):
    return (CORPUS / f"{name}.chor").read_text()


def test_project_auth():
    net = chorc.project(source("auth"))
    assert net["c"] == "ip!credentials; ip & { left: s?t; end, right: end }"
    assert net["s"] == "ip & { left: c!token; end, right: end }"
    assert net["ip"].startswith("c?x; if x == 0 then")


def test_check_reports_conflicts():
    report = chorc.check(source("auth_noselect"))
    assert not report["ok"]
    assert {i["process"] for i in report["projectability"]} == {"c", "s"}
    assert chorc.check(source("auth"))["ok"]


def test_run_and_simulate_agree():
    state = {"c.credentials": 1}
    ran = [r["label"] for r in chorc.run(source("auth"), state)["trace"]]
    sim = [r["label"] for r in chorc.simulate(source("auth"), state)["trace"]]
    assert ran == sim
    assert ran[-1] == "L_Sel ip c right"


def test_execute_replays():
    out = chorc.execute(source("pipeline"), {"a.x": 2}, seed=5)
    assert out["outcome"] == "terminated"
    assert out["traceValid"]
    assert out["finalState"]["a.r"] == 6


def test_verify():
    verdict = chorc.verify(source("filetransfer"), depth=6)
    assert verdict["status"] == "verified"


def test_merge_and_pruning():
    assert chorc.merge("p & { left: end }", "p & { right: end }") == "p & { left: end, right: end }"
    assert chorc.merge("s?t; end", "end") == "undefined"
    assert chorc.more_branches("p & { left: end, right: end }", "p & { right: end }")


def test_syntax_errors():
    with pytest.raises(chorc.ChorSyntaxError, match="1:"):
        chorc.check("main { p.1 -> q.x }")
    with pytest.raises(ValueError):
        chorc.project(source("auth_noselect"))
