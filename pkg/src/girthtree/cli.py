"""Command-line driver.

Exit status: 0 on success, 1 when a violation or counterexample candidate was
recorded, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import harness
from .digraph import Graph, find_forbidden_cycle, is_oriented, underlying_girth
from .embedder import DEFAULT_BUDGET, Anchor, HypothesisError, SearchBudgetExceeded, exact_search, greedy_embed
from .formats import FormatError, read_graph
from .trees import (
    OrientedTree,
    canonical_form,
    dep,
    min_depth_m,
    profile,
    recognize_tab,
    skeleton,
    skeleton_graph,
)


def parse_range(text: str) -> list[int]:
    """``"2,3,4"``, ``"1-9"``, mixtures like ``"2,5-7"``, or ``""`` for none."""
    out: list[int] = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        lo, sep, hi = part.partition("-")
        try:
            if sep:
                a, b = int(lo), int(hi)
                if a > b:
                    raise ValueError
                out.extend(range(a, b + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise argparse.ArgumentTypeError(f"malformed range {text!r}") from None
    return sorted(set(out))


def _emit(payload: dict, out: str | None) -> None:
    text = harness.report_json(payload) if "schema" in payload else json.dumps(payload, indent=1, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_tree(path: str) -> OrientedTree:
    T = read_graph(path)
    if isinstance(T, Graph):
        if len(T.edges) != T.n - 1:
            raise FormatError(f"{path} is not a tree")
        return OrientedTree(T.n, T.sorted_edges())
    if not isinstance(T, OrientedTree):
        T = OrientedTree(T.n, T.sorted_arcs())
    return T


def _parse_anchor(text: str) -> Anchor:
    try:
        tree_part, host_part = text.split(":")
        u, v = (int(x) for x in tree_part.split(","))
        x, y = (int(z) for z in host_part.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"anchor must look like 'u,v:x,y', got {text!r}") from None
    return Anchor((u, v), (x, y))


def cmd_girth(args) -> int:
    D, name = harness.resolve_host(args.host)
    payload = {"host": harness.host_descriptor(D, name), "oriented": is_oriented(D)}
    s = D.summary
    payload["degrees"] = {
        "min_semidegree": s.min_semidegree,
        "pseudo_semidegree": s.pseudo_semidegree,
        "max_degree": s.max_degree,
        "max_outdegree": s.max_outdegree,
        "max_indegree": s.max_indegree,
        "min_of_max": s.min_of_max,
    }
    payload["girth"] = underlying_girth(D)
    if args.ell is not None:
        for star in (False, True):
            cyc = find_forbidden_cycle(D, args.ell, star)
            key = "c_star_free" if star else "c_free"
            payload[key] = cyc is None
            if cyc is not None:
                payload[key + "_witness"] = list(cyc)
    _emit(payload, args.out)
    return 0


def cmd_analyze_tree(args) -> int:
    T = _load_tree(args.tree)
    p = profile(T)
    payload = {
        "n": T.n,
        "canonical": canonical_form(T),
        "leaves": sorted(p.leaves),
        "in_leaves": sorted(p.in_leaves),
        "out_leaves": sorted(p.out_leaves),
        "skeleton": sorted(p.skeleton),
        "penultimate": sorted(p.penultimate),
        "diameter": p.diameter,
        "max_degree": p.max_degree,
        "antidirected": p.antidirected,
        "min_depth_m": min_depth_m(T),
    }
    if len(skeleton(T)) >= 2:
        payload["dep"] = {str(x): dep(T, x) for x in sorted(p.skeleton)}
        tab = recognize_tab(skeleton_graph(T)[0])
        payload["skeleton_tab"] = list(tab) if tab else None
    _emit(payload, args.out)
    return 0


def cmd_embed(args) -> int:
    T = _load_tree(args.tree)
    D, name = harness.resolve_host(args.host)
    payload: dict = {"host": name, "method": args.method}
    if args.method == "greedy":
        if args.ell is None:
            raise SystemExit("embed --method greedy needs --ell")
        try:
            emb = greedy_embed(T, D, args.ell, args.anchor, antidirected_mode=args.variant == "antidirected")
        except HypothesisError as exc:
            payload.update(outcome="HYPOTHESIS_FAIL", failed=exc.hypothesis, detail=str(exc))
            _emit(payload, args.out)
            return 1
        payload.update(outcome="EMBEDDED", embedding=list(emb.mapping))
    else:
        try:
            res = exact_search(T, D, args.budget)
        except SearchBudgetExceeded as exc:
            payload.update(outcome="INCONCLUSIVE", nodes=exc.nodes)
            _emit(payload, args.out)
            return 0
        if res.embedding is None:
            payload.update(outcome="NO_EMBEDDING", certificate={"exhausted": True, "nodes": res.nodes})
        else:
            payload.update(outcome="EMBEDDED", embedding=list(res.embedding.mapping), nodes=res.nodes)
    _emit(payload, args.out)
    return 0


def cmd_verify(args) -> int:
    report = harness.cmd_verify(args.variant, args.host, args.k, args.ell, args.max_degree, args.budget)
    _emit(report, args.out)
    return harness.exit_code(report)


def cmd_sharpness(args) -> int:
    report = harness.cmd_sharpness(args.d, args.ell, args.budget)
    _emit(report, args.out)
    return harness.exit_code(report)


def cmd_lemma_tests(args) -> int:
    report = harness.cmd_lemma_tests(args.ell, args.graph_sizes, args.tree_sizes, args.depth_ell, args.depth_sizes)
    _emit(report, args.out)
    return harness.exit_code(report)


def cmd_search(args) -> int:
    report = harness.cmd_search_counterexample(
        args.question,
        args.n,
        args.k,
        args.ell,
        args.trials,
        args.seed,
        budget=args.budget,
        min_n=args.min_n,
        host_budget=args.host_budget,
        dump_dir=args.dump_dir,
    )
    _emit(report, args.out)
    return harness.exit_code(report)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="girthtree", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, host=True):
        if host:
            p.add_argument("--host", required=True, help="file, or catalog:NAME, with :doubled / :balanced for undirected graphs")
        p.add_argument("--out", help="write JSON here instead of stdout")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="exact-search node cap")

    p = sub.add_parser("girth", help="girth, semidegrees and cycle-family membership of a host")
    common(p)
    p.add_argument("--ell", type=int)
    p.set_defaults(func=cmd_girth)

    p = sub.add_parser("analyze-tree", help="leaf classes, skeleton, depths of a tree")
    p.add_argument("--tree", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze_tree)

    p = sub.add_parser("embed", help="embed one tree into one host")
    common(p)
    p.add_argument("--tree", required=True)
    p.add_argument("--ell", type=int)
    p.add_argument("--method", choices=["greedy", "exact"], default="exact")
    p.add_argument("--variant", choices=["oriented", "antidirected"], default="oriented")
    p.add_argument("--anchor", type=_parse_anchor, help="u,v:x,y maps tree arc u->v onto host arc x->y")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("verify", help="sweep all trees with k edges against a host")
    common(p)
    p.add_argument("--variant", choices=[v.value for v in harness.Variant], default="oriented")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--max-degree", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sharpness", help="certify the degree condition cannot be dropped")
    common(p, host=False)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_sharpness)

    p = sub.add_parser("lemma-tests", help="exhaustive lemma suites")
    p.add_argument("--out")
    p.add_argument("--ell", type=parse_range, default=parse_range("2-4"), help="ell values for the scattered-set suite")
    p.add_argument("--graph-sizes", type=parse_range, default=parse_range("1-9"))
    p.add_argument("--tree-sizes", type=parse_range, default=parse_range("2-12"))
    p.add_argument("--depth-ell", type=parse_range, default=parse_range("3,5,7"))
    p.add_argument("--depth-sizes", type=parse_range, default=parse_range("1-14"))
    p.set_defaults(func=cmd_lemma_tests)

    p = sub.add_parser("search-counterexample", help="random search on hosts with digons")
    common(p, host=False)
    p.add_argument("--question", choices=sorted(harness.QUESTIONS), required=True)
    p.add_argument("--n", type=int, default=12, help="largest host order")
    p.add_argument("--min-n", type=int)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--ell", type=int, default=2)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--host-budget", type=int, default=1000, help="host resamples per trial before the trial is reported as a host error")
    p.add_argument("--dump-dir")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ValueError, KeyError, FormatError, OSError) as exc:
        parser.error(str(exc))
    return 2


if __name__ == "__main__":
    sys.exit(main())
