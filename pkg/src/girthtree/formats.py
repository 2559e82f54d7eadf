"""Plain-text graph files.

Header ``d <n> <m>`` (digraph), ``t <n> <m>`` (oriented tree) or
``u <n> <m>`` (undirected graph), then ``m`` lines ``a b``.  Lines starting
with ``#`` are comments.  Writers emit sorted pairs and a trailing newline, so
the same object always serializes to the same bytes.
"""

from __future__ import annotations

from pathlib import Path

from .digraph import Digraph, Graph
from .trees import OrientedTree


class FormatError(ValueError):
    pass


def parse_graph_text(text: str) -> Graph | Digraph | OrientedTree:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty graph file")
    head = lines[0].split()
    if len(head) != 3 or head[0] not in ("d", "t", "u"):
        raise FormatError(f"bad header line {lines[0]!r}; expected 'd|t|u <n> <m>'")
    kind = head[0]
    try:
        n, m = int(head[1]), int(head[2])
    except ValueError as exc:
        raise FormatError(f"bad header line {lines[0]!r}") from exc
    pairs = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError(f"bad edge line {ln!r}")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise FormatError(f"bad edge line {ln!r}") from exc
    if len(pairs) != m:
        raise FormatError(f"header announces {m} lines, found {len(pairs)}")
    if kind == "u":
        return Graph(n, pairs)
    if kind == "t":
        return OrientedTree(n, pairs)
    return Digraph(n, pairs)


def format_graph(G: Graph | Digraph) -> str:
    if isinstance(G, Graph):
        kind, pairs = "u", G.sorted_edges()
    else:
        kind = "t" if isinstance(G, OrientedTree) else "d"
        pairs = G.sorted_arcs()
    out = [f"{kind} {G.n} {len(pairs)}"]
    out.extend(f"{a} {b}" for a, b in pairs)
    return "\n".join(out) + "\n"


def read_graph(path: str | Path) -> Graph | Digraph | OrientedTree:
    return parse_graph_text(Path(path).read_text(encoding="utf-8"))


def write_graph(path: str | Path, G: Graph | Digraph) -> None:
    Path(path).write_text(format_graph(G), encoding="utf-8")
