"""Verification sweeps and their JSON reports.

Every command returns a report dict.  Apart from the ``timing`` key, a report
is a pure function of the command, its parameters (seeds and budgets
included) and the library version, so two runs serialize to identical bytes
once ``timing`` is dropped.
"""

from __future__ import annotations

import hashlib
import json
import logging
import random
import time
from collections import Counter
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .digraph import Digraph, Graph, doubled_digraph, max_independent_mask
from .embedder import (
    DEFAULT_BUDGET,
    Outcome,
    SearchBudgetExceeded,
    Variant,
    check_embedding,
    exact_search,
    verify_theorem,
)
from .formats import read_graph, write_graph
from .generators import (
    GenerationError,
    balanced_orientation,
    catalog_graph,
    connected_graph_masks,
    enumerate_trees,
    random_host_with_retries,
    sharpness_instance,
)
from .trees import OrientedTree, canonical_form, leaves, min_depth_m, penultimate, recognize_tab, skeleton_graph

log = logging.getLogger(__name__)

SCHEMA = "girthtree.report/1"
LEMMA_GRAPH_MAX_N = 10
LEMMA_TREE_MAX_N = 14


# ---------------------------------------------------------------------------
# reports


def new_report(command: str, parameters: dict) -> dict:
    ident = json.dumps({"command": command, "parameters": parameters, "version": __version__}, sort_keys=True)
    return {
        "schema": SCHEMA,
        "version": __version__,
        "run_id": hashlib.sha256(ident.encode()).hexdigest()[:16],
        "command": command,
        "parameters": parameters,
        "instances": [],
        "violations": [],
        "timing": {"started_at": datetime.now(timezone.utc).isoformat(), "_t0": time.perf_counter()},
    }


def finish_report(report: dict) -> dict:
    ids = [inst["id"] for inst in report["instances"]]
    if len(ids) != len(set(ids)):
        raise AssertionError("duplicate instance ids in report")
    report["instances"].sort(key=lambda inst: inst["id"])
    report["counts"] = dict(sorted(Counter(inst["outcome"] for inst in report["instances"]).items()))
    t0 = report["timing"].pop("_t0")
    report["timing"]["wall_clock_seconds"] = round(time.perf_counter() - t0, 3)
    return report


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=1) + "\n"


def strip_timing(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timing"}


def write_report(report: dict, path: str | Path) -> None:
    Path(path).write_text(report_json(report), encoding="utf-8")


def exit_code(report: dict) -> int:
    return 1 if report["violations"] else 0


# ---------------------------------------------------------------------------
# hosts


def resolve_host(target: str) -> tuple[Digraph, str]:
    """``catalog:NAME:MODE`` or ``PATH[:MODE]``.

    MODE turns an undirected graph into a digraph: ``doubled`` (every edge a
    2-cycle) or ``balanced`` (Eulerian orientation).  Digraph files need no
    mode.
    """
    mode = None
    for m in ("doubled", "balanced"):
        if target.endswith(":" + m):
            target, mode = target[: -len(m) - 1], m
    if target.startswith("catalog:"):
        G = catalog_graph(target[len("catalog:") :])
    else:
        G = read_graph(target)
    if isinstance(G, Graph):
        if mode is None:
            raise ValueError(f"host {target!r} is undirected; append ':doubled' or ':balanced'")
        D = doubled_digraph(G) if mode == "doubled" else balanced_orientation(G)
    else:
        if mode is not None:
            raise ValueError(f"host {target!r} is already a digraph; drop ':{mode}'")
        D = G
    name = target if mode is None else f"{target}:{mode}"
    return D, name


def host_descriptor(D: Digraph, name: str) -> dict:
    s = D.summary
    return {
        "name": name,
        "n": D.n,
        "m": len(D.arcs),
        "min_semidegree": s.min_semidegree,
        "pseudo_semidegree": s.pseudo_semidegree,
        "girth": D.girth,
    }


def tree_descriptor(T: OrientedTree) -> dict:
    return {"n": T.n, "arcs": [list(a) for a in T.sorted_arcs()], "canonical": canonical_form(T)}


def _record_instance(report: dict, inst_id: str, T: OrientedTree, D: Digraph, rec) -> dict:
    inst = {"id": inst_id, "tree": tree_descriptor(T)}
    inst.update(rec.to_dict())
    if rec.outcome is Outcome.EMBEDDED:
        check_embedding(T, D, rec.embedding.mapping)
    report["instances"].append(inst)
    return inst


# ---------------------------------------------------------------------------
# lemma suites


def _all_pairs_distances(masks: tuple[int, ...]) -> list[list[int]]:
    n = len(masks)
    inf = n + 1
    rows = []
    for s in range(n):
        row = [inf] * n
        row[s] = 0
        frontier, seen, d = 1 << s, 1 << s, 0
        while frontier:
            d += 1
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= masks[low.bit_length() - 1]
                f ^= low
            nxt &= ~seen
            seen |= nxt
            f = nxt
            while f:
                low = f & -f
                row[low.bit_length() - 1] = d
                f ^= low
            frontier = nxt
        rows.append(row)
    return rows


def scattered_suite(n: int, ells: list[int]) -> tuple[dict[int, int], list[dict]]:
    """Check |S| <= max(n // ell, 1) for maximum (2*ell-1)-scattered sets over
    all connected graphs on n vertices.  Returns per-ell counts and violations.
    """
    checked = {ell: 0 for ell in ells}
    violations = []
    for masks in connected_graph_masks(n):
        rows = _all_pairs_distances(masks)
        for ell in ells:
            min_dist = 2 * ell - 1
            conflict = [sum(1 << v for v in range(n) if v != u and rows[u][v] < min_dist) for u in range(n)]
            size = max_independent_mask(conflict).bit_count()
            checked[ell] += 1
            if size > max(n // ell, 1):
                violations.append(
                    {"suite": "scattered-set", "n": n, "ell": ell, "size": size, "adjacency_masks": list(masks)}
                )
    return checked, violations


def leaf_degree_suite(n: int, trees=None) -> tuple[int, list[dict]]:
    """Trees with t leaves have at most t - 2 vertices of degree >= 3."""
    checked = 0
    violations = []
    for T in trees if trees is not None else enumerate_trees(n - 1, "free"):
        t = len(leaves(T))
        big = sum(1 for v in range(T.n) if T.degree(v) >= 3)
        checked += 1
        if big > t - 2:
            violations.append({"suite": "leaf-degree", "n": n, "edges": T.sorted_edges(), "leaves": t, "deg3": big})
    return checked, violations


def depth_suite(n: int, ell: int, trees=None) -> tuple[dict[str, int], list[dict]]:
    """For trees with <= ell-1 penultimate vertices and a skeleton vertex of
    skeleton-degree 2: 2m <= ell-1, and at equality the skeleton is T(r, m)."""
    stats = {"trees": 0, "applicable": 0, "equality": 0}
    violations = []
    for T in trees if trees is not None else enumerate_trees(n - 1, "free"):
        stats["trees"] += 1
        if len(penultimate(T)) > ell - 1:
            continue
        m = min_depth_m(T)
        if m is None:
            continue
        stats["applicable"] += 1
        if 2 * m > ell - 1:
            violations.append({"suite": "depth", "n": n, "ell": ell, "edges": T.sorted_edges(), "m": m})
            continue
        if 2 * m == ell - 1:
            stats["equality"] += 1
            S, _ = skeleton_graph(T)
            ab = recognize_tab(S)
            if ab is None or ab[1] != m or ab[0] < 2 * m:
                violations.append(
                    {"suite": "depth-shape", "n": n, "ell": ell, "edges": T.sorted_edges(), "m": m, "recognized": ab}
                )
    return stats, violations


def cmd_lemma_tests(
    ells: list[int],
    graph_sizes: list[int],
    tree_sizes: list[int],
    depth_ells: list[int],
    depth_sizes: list[int],
) -> dict:
    """Scattered-set, leaf/degree and depth suites, exhaustively at the given sizes."""
    if any(n > LEMMA_GRAPH_MAX_N for n in graph_sizes):
        raise ValueError(f"graph sizes are capped at n <= {LEMMA_GRAPH_MAX_N}")
    if any(n > LEMMA_TREE_MAX_N for n in tree_sizes + depth_sizes):
        raise ValueError(f"tree sizes are capped at n <= {LEMMA_TREE_MAX_N}")
    if any(n < 1 for n in graph_sizes + tree_sizes + depth_sizes) or any(e < 1 for e in ells + depth_ells):
        raise ValueError("sizes and ell values must be positive")
    report = new_report(
        "lemma-tests",
        {
            "ell": ells,
            "graph_sizes": graph_sizes,
            "tree_sizes": tree_sizes,
            "depth_ell": depth_ells,
            "depth_sizes": depth_sizes,
        },
    )
    if ells:
        for n in graph_sizes:
            checked, bad = scattered_suite(n, ells)
            for ell in ells:
                nbad = sum(1 for b in bad if b["ell"] == ell)
                report["instances"].append(
                    {
                        "id": f"scattered/n={n:02d}/ell={ell}",
                        "checked": checked[ell],
                        "outcome": "VIOLATION" if nbad else "PASS",
                        "violations": nbad,
                    }
                )
            report["violations"].extend(bad)
    for n in tree_sizes:
        if n < 2:
            # a single vertex has no leaves; the bound is stated for n >= 2
            continue
        checked, bad = leaf_degree_suite(n)
        report["instances"].append(
            {"id": f"leaf-degree/n={n:02d}", "checked": checked, "outcome": "VIOLATION" if bad else "PASS", "violations": len(bad)}
        )
        report["violations"].extend(bad)
    for n in depth_sizes:
        for ell in depth_ells:
            stats, bad = depth_suite(n, ell)
            report["instances"].append(
                {
                    "id": f"depth/n={n:02d}/ell={ell}",
                    **stats,
                    "outcome": "VIOLATION" if bad else "PASS",
                    "violations": len(bad),
                }
            )
            report["violations"].extend(bad)
    return finish_report(report)


# ---------------------------------------------------------------------------
# theorem sweeps


def cmd_verify(
    variant: str,
    host: str,
    k: int,
    ell: int,
    max_degree: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> dict:
    """Run every enumerated tree with k edges against one host."""
    variant = Variant(variant)
    D, name = resolve_host(host)
    report = new_report(
        "verify",
        {"variant": variant.value, "host": name, "k": k, "ell": ell, "max_degree": max_degree, "budget": budget},
    )
    report["host"] = host_descriptor(D, name)
    family = "antidirected" if variant is Variant.ANTIDIRECTED else "oriented"
    for i, T in enumerate(enumerate_trees(k, family, max_degree)):
        rec = verify_theorem(T, D, k, ell, variant, budget)
        inst = _record_instance(report, f"T{k}-{i:04d}", T, D, rec)
        if rec.outcome is Outcome.NO_EMBEDDING:
            report["violations"].append({"id": inst["id"], "reason": "hypotheses hold but no embedding exists"})
    report["inconclusive"] = [inst["id"] for inst in report["instances"] if inst["outcome"] == "INCONCLUSIVE"]
    return finish_report(report)


def cmd_sharpness(d: int, ell: int, budget: int = DEFAULT_BUDGET) -> dict:
    """Certify that the out-star with d edges does not embed in the balanced
    orientation of a 2(d-1)-regular graph of girth >= 2*ell+1."""
    report = new_report("sharpness", {"d": d, "ell": ell, "budget": budget})
    D, T = sharpness_instance(d, ell)
    s = D.summary
    report["host"] = host_descriptor(D, f"sharpness({d},{ell})")
    inst = {
        "id": f"sharpness/d={d}/ell={ell}",
        "tree": tree_descriptor(T),
        "min_semidegree": s.min_semidegree,
        "tree_max_degree": T.max_degree(),
        # only the max-degree condition may fail: (d-1) >= d/ell must hold
        "semidegree_meets_k_over_ell": s.min_semidegree * ell >= T.k,
        "semidegree_meets_max_degree": s.min_semidegree >= T.max_degree(),
    }
    if not inst["semidegree_meets_k_over_ell"]:
        report["violations"].append({"id": inst["id"], "reason": "semidegree below k/ell"})
    try:
        res = exact_search(T, D, budget)
    except SearchBudgetExceeded as exc:
        inst.update(outcome=Outcome.INCONCLUSIVE.value, nodes=exc.nodes)
    else:
        if res.embedding is None:
            inst.update(outcome=Outcome.NO_EMBEDDING.value, certificate={"exhausted": True, "nodes": res.nodes})
        else:
            check_embedding(T, D, res.embedding.mapping)
            inst.update(outcome=Outcome.EMBEDDED.value, embedding=list(res.embedding.mapping))
            report["violations"].append({"id": inst["id"], "reason": "sharpness tree embeds"})
    report["instances"].append(inst)
    return finish_report(report)


QUESTIONS = {
    "c-free": (Variant.C_FREE, False),
    "c-star-free": (Variant.C_STAR_FREE, True),
}


def cmd_search_counterexample(
    question: str,
    n: int,
    k: int,
    ell: int,
    trials: int,
    seed: int,
    budget: int = DEFAULT_BUDGET,
    min_n: int | None = None,
    host_budget: int = 1000,
    dump_dir: str | Path | None = None,
) -> dict:
    """Random hosts (digons allowed) against every oriented tree with <= k edges.

    Each trial draws an order in [min_n, n] and a maximal random host from the
    question's cycle family with semidegree >= ceil(k/ell); trees failing the
    degree hypotheses for that host are skipped.  A NO_EMBEDDING outcome comes
    from exhausted search only and is dumped as a counterexample candidate.
    """
    if question not in QUESTIONS:
        raise ValueError(f"unknown question {question!r}; choose from {sorted(QUESTIONS)}")
    variant, star = QUESTIONS[question]
    if min_n is None:
        min_n = min(n, 2 * ell + 1)
    target = max(1, -(-k // ell))
    report = new_report(
        "search-counterexample",
        {
            "question": question,
            "n": n,
            "min_n": min_n,
            "k": k,
            "ell": ell,
            "trials": trials,
            "seed": seed,
            "budget": budget,
            "host_budget": host_budget,
            "target_semidegree": target,
        },
    )
    trees = [T for j in range(1, k + 1) for T in enumerate_trees(j, "oriented")]
    hosts = []
    skipped = 0
    for trial in range(trials):
        rng = random.Random(seed * 1_000_003 + trial)
        order = rng.randint(min_n, n)
        host_seed = rng.getrandbits(32)
        try:
            D, retries = random_host_with_retries(
                order, ell, target, host_seed, star_variant=star, oriented=False, budget=host_budget
            )
        except GenerationError as exc:
            hosts.append({"trial": trial, "n": order, "error": str(exc)})
            continue
        hosts.append(
            {
                "trial": trial,
                "n": order,
                "arcs": [list(a) for a in D.sorted_arcs()],
                "retries": retries,
                "min_semidegree": D.summary.min_semidegree,
            }
        )
        for i, T in enumerate(trees):
            rec = verify_theorem(T, D, T.k, ell, variant, budget)
            if not rec.hypotheses_hold:
                skipped += 1
                continue
            inst = _record_instance(report, f"trial{trial:05d}/T{T.k}-{i:04d}", T, D, rec)
            if rec.outcome is Outcome.NO_EMBEDDING:
                cand = {"id": inst["id"], "reason": "counterexample candidate", "certificate": inst["certificate"]}
                if dump_dir is not None:
                    out = Path(dump_dir)
                    out.mkdir(parents=True, exist_ok=True)
                    stem = inst["id"].replace("/", "_")
                    write_graph(out / f"{stem}.host.txt", D)
                    write_graph(out / f"{stem}.tree.txt", T)
                    cand["files"] = [f"{stem}.host.txt", f"{stem}.tree.txt"]
                report["violations"].append(cand)
                log.warning("counterexample candidate %s", inst["id"])
    report["hosts"] = hosts
    report["skipped_hypothesis_fail"] = skipped
    report["inconclusive"] = [inst["id"] for inst in report["instances"] if inst["outcome"] == "INCONCLUSIVE"]
    report["summary"] = (
        f"{len(report['violations'])} candidate(s) in {trials} trials"
        if report["violations"]
        else f"none found in {trials} trials"
    )
    return finish_report(report)
