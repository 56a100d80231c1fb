import io
import json

import pytest

from run import run
from services.errors import EnumerationBudgetError, InconsistentVerdictError
from services.graph_core import (
    canonical_form,
    format_edge_list,
    graph6_decode,
    graph6_encode,
    make_complete,
    make_cycle,
    make_star,
)

P5_EDGE_LIST = "5 4\n0 1\n1 2\n2 3\n3 4\n"


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def error_payload(capsys):
    lines = [line for line in capsys.readouterr().err.splitlines() if line.startswith("{")]
    return json.loads(lines[-1])


def test_formula_reports_odd_stars_case():
    code, text = invoke("formula", "--f1", "3,3", "--f2", "3,2")
    assert code == 0
    report = json.loads(text)
    assert report["l_sequence"] == [5, 5, 4]
    assert report["total"] == 14
    assert report["covered_by"] == "odd-stars-vs-forest"
    assert report["provenance"] == "theorem"


def test_formula_all_matches_and_text_format():
    code, text = invoke("formula", "--f1", "3,2", "--f2", "2", "--all-matches")
    assert code == 0
    report = json.loads(text)
    assert report["covered_by"] == "star-vs-forest"
    assert report["provenance"] == "theorem"
    assert report["mirrored"] is True
    assert any(m["mirrored"] for m in report["all_matches"])
    code, text = invoke("formula", "--f1", "3,3", "--f2", "3,2", "--format", "text")
    assert code == 0
    assert "total: 14" in text.splitlines()


def test_witness():
    code, text = invoke("witness", "--f1", "2", "--f2", "2")
    report = json.loads(text)
    assert code == 0
    assert report["edge_count"] == 3
    assert graph6_decode(report["graph6"]) == make_star(3)


def test_arrows_on_p5_from_stdin(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(P5_EDGE_LIST))
    code, text = invoke("arrows", "--graph", "edgelist:-", "--f1", "2", "--f2", "1,1")
    assert code == 1
    report = json.loads(text)
    assert report["outcome"] == "not-arrows"
    assert [r["color"] for r in report["counterexample"]] == [0, 1, 1, 0]
    assert "elapsed" not in report


def test_arrows_exit_codes():
    k3 = graph6_encode(make_complete(3))
    code, text = invoke("arrows", "--graph", f"g6:{k3}", "--f1", "2", "--f2", "2", "--timing")
    assert code == 0
    assert "elapsed" in json.loads(text)
    code, _ = invoke("arrows", "--graph", f"g6:{k3}", "--f1", "2", "--f2", "2", "--budget", "1")
    assert code == 2
    star = graph6_encode(make_star(4))
    code, _ = invoke("arrows", "--graph", f"g6:{star}", "--fi", "2", "--fi", "2", "--fi", "2")
    assert code == 0


def test_random_graphs_are_reproducible():
    argv = ("arrows", "--graph", "random:7:0.5", "--seed", "5", "--f1", "2,1", "--f2", "2")
    assert invoke(*argv) == invoke(*argv)


def test_search_small_instance():
    code, text = invoke("search", "--f1", "2", "--f2", "2", "--max-edges", "4")
    assert code == 0
    report = json.loads(text)
    assert report["value"] == 3
    assert report["status"] == "exact"
    found = {canonical_form(graph6_decode(code6)) for code6 in report["minimal_graphs"]}
    assert found == {canonical_form(make_complete(3)), canonical_form(make_star(3))}


def test_search_not_found_exits_one():
    code, text = invoke("search", "--f1", "2", "--f2", "2", "--max-edges", "2")
    assert code == 1
    assert json.loads(text)["status"] == "not-found"


def test_verify_writes_pdf(tmp_path):
    target = tmp_path / "report.pdf"
    code, text = invoke("verify", "--f1", "2", "--f2", "1,1", "--pdf", str(target))
    assert code == 0
    assert json.loads(text)["status"] == "equal"
    assert target.read_bytes().startswith(b"%PDF")


def test_verify_beyond_enumeration_budget_is_partial(monkeypatch):
    monkeypatch.setattr("config.Config.ENUM_MAX_EDGES", 6)
    code, text = invoke("verify", "--f1", "3,3", "--f2", "3,2")
    assert code == 2
    report = json.loads(text)
    assert report["status"] == "partial"
    assert report["lower_bound"] == 7
    assert report["max_edges"] == 6


def test_edge_color_and_two_factor():
    c6 = graph6_encode(make_cycle(6))
    code, text = invoke("edge-color", "--graph", f"g6:{c6}")
    report = json.loads(text)
    assert code == 0
    assert report["bipartite"] is True
    assert report["color_count"] == 2
    k5 = graph6_encode(make_complete(5))
    code, text = invoke("two-factor", "--graph", f"g6:{k5}")
    assert code == 0
    assert len(json.loads(text)["factors"]) == 2


def test_free_color(tmp_path):
    path = tmp_path / "c5.txt"
    path.write_text(format_edge_list(make_cycle(5)))
    code, text = invoke("free-color", "--graph", f"edgelist:{path}", "--n", "3", "--m", "2")
    assert code == 0
    assert len(json.loads(text)) == 5


@pytest.mark.parametrize("argv", [
    ("formula", "--f1", "3"),
    ("formula", "--f1", "0", "--f2", "1"),
    ("formula", "--f1", "3", "--f2", "2", "--fi", "1"),
    ("bogus",),
    ("arrows", "--f1", "2", "--f2", "2"),
])
def test_usage_errors_exit_64(capsys, argv):
    code, text = invoke(*argv)
    assert code == 64
    assert text == ""
    payload = error_payload(capsys)
    assert payload["success"] is False
    assert payload["error"] == "Usage error"


def test_hypothesis_failure_exits_65(tmp_path, capsys):
    path = tmp_path / "k14.txt"
    path.write_text(format_edge_list(make_star(4)))
    code, _ = invoke("free-color", "--graph", f"edgelist:{path}", "--n", "3", "--m", "2")
    assert code == 65
    assert error_payload(capsys)["error"] == "DecompositionHypothesisError"


def test_bad_graph6_exits_65(capsys):
    code, _ = invoke("edge-color", "--graph", "g6:B")
    assert code == 65
    assert "offset" in error_payload(capsys)["details"]


def test_enumeration_budget_exits_2(mocker, capsys):
    mocker.patch("app.size_ramsey_exhaustive", side_effect=EnumerationBudgetError("too many edges"))
    code, _ = invoke("search", "--f1", "2", "--f2", "2")
    assert code == 2
    assert error_payload(capsys)["details"] == "too many edges"


def test_inconsistent_verdict_exits_70(mocker, capsys):
    mocker.patch("app.arrows_with_certificate_check",
                 side_effect=InconsistentVerdictError("certificate rejected"))
    code, _ = invoke("arrows", "--graph", "g6:Bw", "--f1", "2", "--f2", "2")
    assert code == 70
    assert error_payload(capsys)["error"] == "Internal inconsistency"


def test_help_exits_zero(capsys):
    code, _ = invoke("--help")
    assert code == 0
    assert "formula" in capsys.readouterr().out
