from __future__ import annotations

import json

import pytest

from girthtree import harness
from girthtree.cli import main, parse_range
from girthtree.digraph import max_independent_mask, max_scattered_set
from girthtree.formats import write_graph
from girthtree.generators import connected_graph_masks, graph_from_masks
from girthtree.trees import OrientedTree


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


# ranges -------------------------------------------------------------------------


def test_parse_range():
    assert parse_range("2,3,4") == [2, 3, 4]
    assert parse_range("1-4") == [1, 2, 3, 4]
    assert parse_range("2,5-7,5") == [2, 5, 6, 7]
    assert parse_range("") == []


@pytest.mark.parametrize("bad", ["x", "3-1", "1-", "2,,a"])
def test_malformed_range_exits_2(bad, capsys):
    with pytest.raises(SystemExit) as info:
        main(["lemma-tests", "--ell", bad])
    assert info.value.code == 2


# reports --------------------------------------------------------------------------


def test_report_envelope_and_determinism():
    a = harness.cmd_sharpness(2, 2)
    b = harness.cmd_sharpness(2, 2)
    assert a["schema"] == harness.SCHEMA
    assert a["run_id"] == b["run_id"]
    assert "wall_clock_seconds" in a["timing"]
    assert harness.report_json(harness.strip_timing(a)) == harness.report_json(harness.strip_timing(b))
    assert a["counts"] == {"NO_EMBEDDING": 1}
    inst = a["instances"][0]
    assert inst["certificate"]["exhausted"] is True
    assert inst["semidegree_meets_k_over_ell"] and not inst["semidegree_meets_max_degree"]
    assert harness.exit_code(a) == 0


def test_finish_report_rejects_duplicate_ids():
    r = harness.new_report("x", {})
    r["instances"] = [{"id": "a", "outcome": "PASS"}, {"id": "a", "outcome": "PASS"}]
    with pytest.raises(AssertionError):
        harness.finish_report(r)


def test_resolve_host(tmp_path):
    D, name = harness.resolve_host("catalog:petersen:doubled")
    assert name == "catalog:petersen:doubled"
    assert D.summary.pseudo_semidegree == 3
    with pytest.raises(ValueError, match="undirected"):
        harness.resolve_host("catalog:petersen")
    path = tmp_path / "h.txt"
    write_graph(path, D)
    E, _ = harness.resolve_host(str(path))
    assert E == D
    with pytest.raises(ValueError, match="already a digraph"):
        harness.resolve_host(f"{path}:doubled")


def test_verify_with_failing_host_is_all_hypothesis_fail():
    # balanced Robertson has girth 5, so ell = 3 fails for every tree
    r = harness.cmd_verify("oriented", "catalog:robertson:balanced", 4, 3, max_degree=2)
    assert r["instances"]
    assert r["counts"] == {"HYPOTHESIS_FAIL": len(r["instances"])}
    assert all("girth" in inst["failed"] for inst in r["instances"])
    assert harness.exit_code(r) == 0


def test_lemma_suites_empty_ranges():
    r = harness.cmd_lemma_tests([], [], [], [], [])
    assert r["instances"] == [] and r["violations"] == []


def test_lemma_suites_small():
    r = harness.cmd_lemma_tests([2, 3], [1, 2, 3, 4, 5], [2, 3, 4, 5, 6], [3, 5], [1, 2, 6, 7])
    assert r["violations"] == []
    assert set(r["counts"]) == {"PASS"}
    ids = [inst["id"] for inst in r["instances"]]
    assert "scattered/n=05/ell=3" in ids and "leaf-degree/n=06" in ids and "depth/n=07/ell=5" in ids


def test_search_zero_trials_and_seed_determinism():
    r = harness.cmd_search_counterexample("c-star-free", 8, 3, 2, 0, 1)
    assert r["instances"] == [] and r["summary"] == "none found in 0 trials"
    a = harness.cmd_search_counterexample("c-star-free", 8, 3, 2, 5, 3)
    b = harness.cmd_search_counterexample("c-star-free", 8, 3, 2, 5, 3)
    assert harness.report_json(harness.strip_timing(a)) == harness.report_json(harness.strip_timing(b))
    c = harness.cmd_search_counterexample("c-star-free", 8, 3, 2, 5, 4)
    assert c["hosts"] != a["hosts"]
    with pytest.raises(ValueError):
        harness.cmd_search_counterexample("9.9", 8, 3, 2, 1, 0)


# CLI end to end -------------------------------------------------------------------------


def test_cli_girth(capsys):
    code, out = run_cli(capsys, "girth", "--host", "catalog:petersen:doubled", "--ell", "2")
    payload = json.loads(out)
    assert code == 0
    assert payload["girth"] == 5 and payload["c_star_free"] and payload["c_free"]
    code, out = run_cli(capsys, "girth", "--host", "catalog:heawood:doubled", "--ell", "3")
    assert len(json.loads(out)["c_star_free_witness"]) == 6


def test_cli_analyze_tree(tmp_path, capsys):
    path = tmp_path / "t.txt"
    write_graph(path, OrientedTree(6, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 2)]))
    code, out = run_cli(capsys, "analyze-tree", "--tree", str(path))
    payload = json.loads(out)
    assert code == 0
    assert payload["leaves"] == [0, 4, 5] and payload["skeleton"] == [1, 2, 3]
    assert payload["dep"] == {"1": 2, "2": 1, "3": 2}


def test_cli_embed(tmp_path, capsys):
    path = tmp_path / "p.txt"
    write_graph(path, OrientedTree(3, [(0, 1), (1, 2)]))
    host = "catalog:robertson:balanced"
    code, out = run_cli(capsys, "embed", "--tree", str(path), "--host", host, "--method", "greedy", "--ell", "2")
    assert code == 0 and json.loads(out)["outcome"] == "EMBEDDED"
    code, out = run_cli(capsys, "embed", "--tree", str(path), "--host", host, "--method", "exact")
    assert json.loads(out)["outcome"] == "EMBEDDED"
    code, out = run_cli(capsys, "embed", "--tree", str(path), "--host", host, "--method", "greedy", "--ell", "3")
    payload = json.loads(out)
    assert code == 1 and payload["failed"] == "cycle-free"


def test_cli_verify_and_sharpness(tmp_path, capsys):
    out_path = tmp_path / "r.json"
    code = main(["verify", "--host", "catalog:robertson:balanced", "--k", "4", "--ell", "2", "--max-degree", "2", "--out", str(out_path)])
    report = json.loads(out_path.read_text())
    assert code == 0 and report["counts"] == {"EMBEDDED": 10}
    code, out = run_cli(capsys, "sharpness", "--d", "2", "--ell", "3")
    assert code == 0 and json.loads(out)["counts"] == {"NO_EMBEDDING": 1}


def test_cli_search_and_bad_host(capsys):
    code, out = run_cli(capsys, "search-counterexample", "--question", "c-free", "--n", "7", "--k", "2", "--trials", "2")
    assert code == 0 and json.loads(out)["summary"] == "none found in 2 trials"
    with pytest.raises(SystemExit) as info:
        main(["girth", "--host", "catalog:nonesuch:doubled"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["girth", "--host", "/no/such/file.txt"])
    assert info.value.code == 2


def test_scattered_suite_matches_library_search():
    # the suite uses bitmask distances; compare with max_scattered_set graph by graph
    for n in range(1, 7):
        for masks in connected_graph_masks(n):
            rows = harness._all_pairs_distances(masks)
            G = graph_from_masks(masks)
            for ell in (2, 3):
                conflict = [sum(1 << v for v in range(n) if v != u and rows[u][v] < 2 * ell - 1) for u in range(n)]
                assert max_independent_mask(conflict).bit_count() == len(max_scattered_set(G, 2 * ell - 1))
