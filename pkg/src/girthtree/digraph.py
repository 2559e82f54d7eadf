"""Digraphs, undirected graphs and host-side metrics.

Vertices are the integers ``0..n-1``.  Both :class:`Graph` and
:class:`Digraph` expose ``n`` and ``neighbors(v)`` (underlying adjacency), and
every metric in this module that only looks at the underlying graph accepts
either of them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Protocol

SCATTERED_SET_CAP = 24


class SearchCapExceeded(ValueError):
    """An exhaustive search was asked to run above its documented size cap."""


class UnderlyingGraph(Protocol):
    n: int

    def neighbors(self, v: int) -> frozenset[int]: ...


class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        normalized = set()
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge {a}-{b} out of range for n={n}")
            if a == b:
                raise ValueError(f"loop at vertex {a}")
            e = (a, b) if a < b else (b, a)
            if e in normalized:
                raise ValueError(f"parallel edge {e[0]}-{e[1]}")
            normalized.add(e)
            adj[a].add(b)
            adj[b].add(a)
        self.n = n
        self.edges: frozenset[tuple[int, int]] = frozenset(normalized)
        self._adj = tuple(frozenset(s) for s in adj)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"


class Digraph:
    """Loopless digraph without parallel arcs.

    A bidirected pair ``(u, v), (v, u)`` is allowed and counts as a single
    edge of the underlying simple graph.  Instances are treated as immutable;
    derived quantities are cached on first use.
    """

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        out: list[set[int]] = [set() for _ in range(n)]
        inn: list[set[int]] = [set() for _ in range(n)]
        seen = set()
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc {u}->{v} out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if (u, v) in seen:
                raise ValueError(f"parallel arc {u}->{v}")
            seen.add((u, v))
            out[u].add(v)
            inn[v].add(u)
        self.n = n
        self.arcs: frozenset[tuple[int, int]] = frozenset(seen)
        self._out = tuple(frozenset(s) for s in out)
        self._in = tuple(frozenset(s) for s in inn)
        self._und = tuple(self._out[v] | self._in[v] for v in range(n))
        self._c_free: dict[tuple[int, bool], bool] = {}

    def out_neighbors(self, v: int) -> frozenset[int]:
        return self._out[v]

    def in_neighbors(self, v: int) -> frozenset[int]:
        return self._in[v]

    def neighbors(self, v: int) -> frozenset[int]:
        return self._und[v]

    def out_degree(self, v: int) -> int:
        return len(self._out[v])

    def in_degree(self, v: int) -> int:
        return len(self._in[v])

    def has_arc(self, u: int, v: int) -> bool:
        return v in self._out[u]

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def underlying(self) -> Graph:
        return Graph(self.n, {(min(a), max(a)) for a in self.arcs})

    @cached_property
    def summary(self) -> DegreeSummary:
        return degree_summary(self)

    @cached_property
    def girth(self) -> int | None:
        return underlying_girth(self)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Digraph)
            and type(self) is type(other)
            and self.n == other.n
            and self.arcs == other.arcs
        )

    def __hash__(self) -> int:
        return hash((self.n, self.arcs))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, m={len(self.arcs)})"


@dataclass(frozen=True)
class DegreeSummary:
    min_semidegree: int
    pseudo_semidegree: int
    max_degree: int
    max_outdegree: int
    max_indegree: int

    @property
    def min_of_max(self) -> int:
        return min(self.max_outdegree, self.max_indegree)


def degree_summary(D: Digraph) -> DegreeSummary:
    """Semidegree statistics of ``D``.

    The pseudo-semidegree is 0 for an arcless digraph, otherwise the smaller of
    the minimum positive out-degree and the minimum positive in-degree.
    """
    if D.n == 0:
        return DegreeSummary(0, 0, 0, 0, 0)
    outs = [D.out_degree(v) for v in range(D.n)]
    ins = [D.in_degree(v) for v in range(D.n)]
    min_semi = min(min(o, i) for o, i in zip(outs, ins))
    if D.arcs:
        pseudo = min(min(d for d in outs if d > 0), min(d for d in ins if d > 0))
    else:
        pseudo = 0
    return DegreeSummary(
        min_semidegree=min_semi,
        pseudo_semidegree=pseudo,
        max_degree=max(len(D.neighbors(v)) for v in range(D.n)),
        max_outdegree=max(outs),
        max_indegree=max(ins),
    )


def is_oriented(D: Digraph) -> bool:
    return not any((v, u) in D.arcs for u, v in D.arcs)


def underlying_girth(G: UnderlyingGraph) -> int | None:
    """Length of a shortest cycle (>= 3) of the underlying simple graph.

    Returns None for a forest.  Digons are parallel underlying edges and do
    not count.
    """
    best: int | None = None
    for s in range(G.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in G.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


def iter_short_cycles(G: UnderlyingGraph, max_len: int) -> Iterator[tuple[int, ...]]:
    """Yield every simple cycle of length 3..max_len of the underlying graph once.

    Each cycle is reported starting at its smallest vertex, in the direction
    whose second vertex is smaller than its last.
    """
    for s in range(G.n):
        path = [s]
        on_path = {s}
        stack = [iter(sorted(w for w in G.neighbors(s) if w > s))]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if len(path) >= 2 and path[1] < nxt and s in G.neighbors(nxt):
                yield (*path, nxt)
            if len(path) + 1 < max_len:
                path.append(nxt)
                on_path.add(nxt)
                stack.append(iter(sorted(w for w in G.neighbors(nxt) if w > s and w not in on_path)))


def cycle_orientations(D: Digraph, cycle: tuple[int, ...]) -> tuple[bool, bool]:
    """Which oriented cycles of ``D`` live on the vertex cycle ``cycle``.

    Returns ``(directed, non_directed)``: whether some choice of arcs along the
    cycle is consistently oriented, and whether some choice is not.  A
    bidirected pair may be traversed by either of its arcs.
    """
    L = len(cycle)
    fwd = [D.has_arc(cycle[i], cycle[(i + 1) % L]) for i in range(L)]
    bwd = [D.has_arc(cycle[(i + 1) % L], cycle[i]) for i in range(L)]
    directed = all(fwd) or all(bwd)
    if any(f and b for f, b in zip(fwd, bwd)):
        non_directed = True
    else:
        non_directed = not all(fwd) and not all(bwd)
    return directed, non_directed


def find_forbidden_cycle(D: Digraph, ell: int, star_variant: bool) -> tuple[int, ...] | None:
    """Return a witness cycle from the forbidden family, or None.

    Without ``star_variant`` any cycle on 3..2*ell vertices is forbidden; with
    it, only cycles admitting a non-directed orientation in ``D`` are.
    """
    if ell < 1:
        raise ValueError(f"ell must be >= 1, got {ell}")
    for cyc in iter_short_cycles(D, 2 * ell):
        if not star_variant or cycle_orientations(D, cyc)[1]:
            return cyc
    return None


def is_c_free(D: Digraph, ell: int, star_variant: bool = False) -> bool:
    """True iff ``D`` has no cycle of length 3..2*ell (``star_variant``: no
    non-directed one; directed cycles of those lengths are then permitted).
    """
    key = (ell, star_variant)
    if key not in D._c_free:
        D._c_free[key] = find_forbidden_cycle(D, ell, star_variant) is None
    return D._c_free[key]


def distances_from(G: UnderlyingGraph, source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in G.neighbors(u):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def dist(G: UnderlyingGraph, u: int, v: int) -> int | None:
    """Underlying (orientation-free) distance, or None if disconnected."""
    return distances_from(G, u).get(v)


def diameter(G: UnderlyingGraph) -> int | None:
    """Largest pairwise distance; None if disconnected (0 for n <= 1)."""
    best = 0
    for s in range(G.n):
        d = distances_from(G, s)
        if len(d) < G.n:
            return None
        best = max(best, max(d.values()))
    return best


def is_connected(G: UnderlyingGraph) -> bool:
    return G.n == 0 or len(distances_from(G, 0)) == G.n


def max_scattered_set(G: UnderlyingGraph, min_dist: int) -> frozenset[int]:
    """Maximum vertex set whose pairwise underlying distances are all >= min_dist.

    Exhaustive branch-and-bound; graphs above SCATTERED_SET_CAP vertices and
    disconnected graphs are rejected.
    """
    if G.n > SCATTERED_SET_CAP:
        raise SearchCapExceeded(f"max_scattered_set is capped at n <= {SCATTERED_SET_CAP}, got n={G.n}")
    if G.n == 0:
        return frozenset()
    rows = [distances_from(G, s) for s in range(G.n)]
    if len(rows[0]) < G.n:
        raise ValueError("max_scattered_set requires a connected graph")
    conflict = [0] * G.n
    for u in range(G.n):
        for v, d in rows[u].items():
            if v != u and d < min_dist:
                conflict[u] |= 1 << v
    return frozenset(_bits(max_independent_mask(conflict)))


def _bits(mask: int) -> Iterator[int]:
    v = 0
    while mask:
        if mask & 1:
            yield v
        mask >>= 1
        v += 1


def max_independent_mask(conflict: list[int]) -> int:
    """Maximum independent set of the conflict graph given as bitmask rows."""
    n = len(conflict)
    best = 0
    best_size = 0

    def grow(chosen: int, size: int, cand: int) -> None:
        nonlocal best, best_size
        if cand == 0:
            if size > best_size:
                best, best_size = chosen, size
            return
        if size + cand.bit_count() <= best_size:
            return
        # branch on the candidate with most conflicts: take it, or drop it
        v = max(_bits(cand), key=lambda x: (conflict[x] & cand).bit_count())
        bit = 1 << v
        grow(chosen | bit, size + 1, cand & ~bit & ~conflict[v])
        grow(chosen, size, cand & ~bit)

    grow(0, 0, (1 << n) - 1)
    return best


def doubled_digraph(G: Graph) -> Digraph:
    """Replace every edge of ``G`` by a directed 2-cycle."""
    arcs = []
    for a, b in G.sorted_edges():
        arcs.append((a, b))
        arcs.append((b, a))
    return Digraph(G.n, arcs)
