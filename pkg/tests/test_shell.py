from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from modlink.shell import (
    WorksheetError,
    corpus_worksheets,
    parse_worksheet,
    read_worksheet,
    run,
)

HEAD = "ring S = poly(char=32003, vars=[x,y], order=grevlex)\n"


def test_ring_and_module_declarations():
    ws = parse_worksheet(HEAD + "module M = coker(S, rows=[0], cols=[1], matrix=[[x]])\n")
    kinds = [(s.kind, s.name, s.op) for s in ws.statements]
    assert kinds == [("ring", "S", "poly"), ("module", "M", "coker")]


def test_undefined_name_reports_position():
    text = HEAD + "module M = coker(S, rows=[0], cols=[1], matrix=[[x]])\ntask verify thm3.3 M n=1 X=[p1]\n"
    with pytest.raises(WorksheetError) as e:
        parse_worksheet(text)
    assert e.value.line == 3 and "p1" in str(e.value)
    assert e.value.col == text.splitlines()[2].index("p1") + 1


@pytest.mark.parametrize("line, fragment", [
    ("task frobnicate M", "unknown task"),
    ("task verify thm9.9 M", "unknown verify target"),
    ("module M = cyclic(S)", "positional"),
    ("module M = cyclic(S, [x], colour=1)", "unknown keyword"),
    ("module M = cyclic(S, [x + + ])", "bad polynomial"),
    ("module M = lambda(S)", "expected a module"),
    ("ring S = poly(vars=[x])", "already declared"),
])
def test_parse_errors(line, fragment):
    with pytest.raises(WorksheetError) as e:
        parse_worksheet(HEAD + line + "\n")
    assert fragment in str(e.value)
    assert e.value.line == 2


@pytest.mark.parametrize("name", sorted(corpus_worksheets()))
def test_corpus_worksheets_round_trip(name):
    ws = parse_worksheet(read_worksheet(f"corpus:{name}"))
    again = parse_worksheet(ws.render())
    assert again == ws
    assert again.render() == ws.render()


polys = st.sampled_from(["x", "y", "x*y", "x^2 - y^2", "3*x + 2*y", "x^3"])


@given(st.lists(st.lists(polys, min_size=1, max_size=3), min_size=1, max_size=3))
@settings(max_examples=40, deadline=None)
def test_generated_worksheets_round_trip(gen_lists):
    lines = [HEAD.strip()]
    for i, gens in enumerate(gen_lists):
        lines.append(f"module M{i} = cyclic(S, [{', '.join(gens)}])")
        lines.append(f"task dims M{i} window=0..2")
    ws = parse_worksheet("\n".join(lines))
    assert parse_worksheet(ws.render()) == ws


def test_empty_worksheet_runs_clean():
    rep = run(parse_worksheet("# nothing\n\n"))
    assert rep.results == [] and rep.exit_code == 0


def test_degree_cap_is_an_engine_error():
    ws = parse_worksheet("ring S = poly(vars=[x,y,z])\nmodule M = cyclic(S, [x^5, y^5, z^5])\ntask dims M window=0..12\n")
    rep = run(ws, max_degree=3)
    assert rep.exit_code == 2
    assert "truncated" in rep.results[0].error
    run(parse_worksheet(""), max_degree=24)


def test_failed_expectation_exits_one():
    ws = parse_worksheet(HEAD + "module M = cyclic(S, [x])\ntask depth M expect=2\n")
    rep = run(ws)
    assert rep.results[0].verdict == "Fail" and rep.exit_code == 1


def test_hypersurface_worksheet_passes():
    rep = run(parse_worksheet(read_worksheet("corpus:hypersurface")))
    assert rep.exit_code == 0
    assert {r.verdict for r in rep.results} == {"Pass"}


def test_reports_are_deterministic_and_schedule_free():
    ws = parse_worksheet(read_worksheet("corpus:hypersurface"))
    a = run(ws, seed=3).as_dict(timings=False)
    b = run(ws, seed=3).as_dict(timings=False)
    c = run(ws, seed=3, jobs=3).as_dict(timings=False)
    assert a == b == c


def test_text_and_machine_reports_agree():
    rep = run(parse_worksheet(read_worksheet("corpus:ideal_linkage")))
    data = json.loads(rep.machine())
    text = rep.text()
    for row in data["results"]:
        assert set(row) >= {"task", "verdict", "evidence", "timing_ms"}
        assert f"[{row['verdict']}] {row['task']}" in text


def test_cli(tmp_path):
    path = tmp_path / "w.mlw"
    path.write_text(HEAD + "module M = cyclic(S, [x])\ntask depth M expect=1\n")
    env = dict(os.environ)
    out = subprocess.run([sys.executable, "-m", "modlink", "run", str(path), "--report", "machine",
                          "--window", "0..3", "--seed", "7"], capture_output=True, text=True, env=env)
    assert out.returncode == 0, out.stderr
    assert json.loads(out.stdout)["seed"] == 7
    bad = tmp_path / "bad.mlw"
    bad.write_text("task depth M\n")
    out = subprocess.run([sys.executable, "-m", "modlink", "run", str(bad)], capture_output=True, text=True)
    assert out.returncode == 2 and "line 1" in out.stderr
