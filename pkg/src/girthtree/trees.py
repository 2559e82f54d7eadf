"""Oriented trees and the structural notions used by the embedding arguments.

Functions that only need the underlying tree (skeleton, depth, diameter,
canonical shape) accept any object with ``n`` and ``neighbors(v)``, so they
work on :class:`OrientedTree` and on undirected trees given as
:class:`~girthtree.digraph.Graph` alike.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .digraph import Digraph, Graph, UnderlyingGraph, distances_from, is_connected, is_oriented


class EmptySkeletonError(ValueError):
    """A skeleton vertex was requested but the skeleton is empty or too small."""


class OrientedTree(Digraph):
    """A digraph whose underlying graph is a tree (one direction per edge)."""

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        super().__init__(n, arcs)
        if n < 1:
            raise ValueError("a tree needs at least one vertex")
        if len(self.arcs) != n - 1:
            raise ValueError(f"a tree on {n} vertices has {n - 1} arcs, got {len(self.arcs)}")
        if not is_oriented(self):
            raise ValueError("tree edges must carry a single direction")
        if not is_connected(self):
            raise ValueError("underlying graph is not connected")

    @property
    def k(self) -> int:
        """Number of edges."""
        return self.n - 1

    def max_degree(self) -> int:
        return max((len(self.neighbors(v)) for v in range(self.n)), default=0)


def is_tree(G: UnderlyingGraph) -> bool:
    m = sum(len(G.neighbors(v)) for v in range(G.n)) // 2
    return G.n >= 1 and m == G.n - 1 and is_connected(G)


def out_star(k: int) -> OrientedTree:
    """Center 0 with arcs 0 -> 1..k."""
    return OrientedTree(k + 1, [(0, i) for i in range(1, k + 1)])


def in_star(k: int) -> OrientedTree:
    return OrientedTree(k + 1, [(i, 0) for i in range(1, k + 1)])


def directed_path(k: int) -> OrientedTree:
    return OrientedTree(k + 1, [(i, i + 1) for i in range(k)])


# ---------------------------------------------------------------------------
# leaves, skeleton, closures


def leaves(T: UnderlyingGraph) -> frozenset[int]:
    return frozenset(v for v in range(T.n) if len(T.neighbors(v)) == 1)


def in_leaves(T: OrientedTree) -> frozenset[int]:
    """Leaves with out-degree 1 and in-degree 0."""
    return frozenset(v for v in leaves(T) if T.out_degree(v) == 1)


def out_leaves(T: OrientedTree) -> frozenset[int]:
    return frozenset(v for v in leaves(T) if T.in_degree(v) == 1)


def siblings(T: UnderlyingGraph, leaf: int) -> frozenset[int]:
    """The other leaves sharing ``leaf``'s unique neighbor."""
    if len(T.neighbors(leaf)) != 1:
        raise ValueError(f"vertex {leaf} is not a leaf")
    (hub,) = T.neighbors(leaf)
    return frozenset(w for w in T.neighbors(hub) if w != leaf and len(T.neighbors(w)) == 1)


def skeleton(T: UnderlyingGraph) -> frozenset[int]:
    """Vertex set of the skeleton: the tree with all leaves deleted.

    A star keeps its center; a single edge has an empty skeleton.
    """
    return frozenset(range(T.n)) - leaves(T)


def restricted_adjacency(T: UnderlyingGraph, vertices: frozenset[int]) -> dict[int, frozenset[int]]:
    return {v: T.neighbors(v) & vertices for v in vertices}


def penultimate(T: UnderlyingGraph) -> frozenset[int]:
    """Leaves of the skeleton (skeleton vertices with one skeleton neighbor)."""
    adj = restricted_adjacency(T, skeleton(T))
    return frozenset(v for v, nb in adj.items() if len(nb) == 1)


def induced_graph(T: UnderlyingGraph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph relabeled to ``0..len-1`` in increasing vertex order.

    Returns the graph and the tuple of original ids (index = new id).
    """
    order = tuple(sorted(vertices))
    index = {v: i for i, v in enumerate(order)}
    edges = {
        (index[u], index[w]) for u in order for w in T.neighbors(u) if w in index and u < w
    }
    return Graph(len(order), edges), order


def induced_subtree(T: OrientedTree, vertices: Iterable[int]) -> tuple[OrientedTree, tuple[int, ...]]:
    order = tuple(sorted(vertices))
    index = {v: i for i, v in enumerate(order)}
    arcs = [(index[u], index[w]) for u, w in T.arcs if u in index and w in index]
    return OrientedTree(len(order), arcs), order


def skeleton_graph(T: UnderlyingGraph) -> tuple[Graph, tuple[int, ...]]:
    return induced_graph(T, skeleton(T))


def _connected_within(adj: dict[int, frozenset[int]], vertices: frozenset[int]) -> bool:
    if not vertices:
        return False
    start = next(iter(vertices))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w in vertices and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vertices


def leaf_closure(T: UnderlyingGraph, sub: Iterable[int]) -> frozenset[int]:
    """Vertices of L(T'): the skeleton subtree ``sub`` plus every leaf of T
    adjacent to it.  The closure is an induced subtree of T, so arc directions
    come along unchanged (see :func:`induced_subtree`).
    """
    sub = frozenset(sub)
    skel = skeleton(T)
    if not sub <= skel:
        raise ValueError(f"vertices {sorted(sub - skel)} are not in the skeleton")
    if not _connected_within(restricted_adjacency(T, skel), sub):
        raise ValueError("vertex set is not a connected subtree of the skeleton")
    lv = leaves(T)
    return sub | frozenset(w for v in sub for w in T.neighbors(v) if w in lv)


# ---------------------------------------------------------------------------
# depth


def _skeleton_components(T: UnderlyingGraph, x: int) -> tuple[dict[int, frozenset[int]], list[frozenset[int]]]:
    skel = skeleton(T)
    if x not in skel:
        if not skel:
            raise EmptySkeletonError("the skeleton is empty")
        raise ValueError(f"vertex {x} is not in the skeleton")
    adj = restricted_adjacency(T, skel)
    comps = []
    for start in sorted(adj[x]):
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w != x and w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(frozenset(seen))
    return adj, comps


def _skeleton_dist(adj: dict[int, frozenset[int]], x: int) -> dict[int, int]:
    dist = {x: 0}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def skeleton_components(T: UnderlyingGraph, x: int) -> list[frozenset[int]]:
    """Components of S(T) - x, ordered by their smallest neighbor of x."""
    return _skeleton_components(T, x)[1]


def dep_component(T: UnderlyingGraph, x: int, component: Iterable[int]) -> int:
    """Depth of a component A of S(T) - x from x: max skeleton distance into A."""
    adj, comps = _skeleton_components(T, x)
    component = frozenset(component)
    if component not in comps:
        raise ValueError("not a component of the skeleton minus x")
    d = _skeleton_dist(adj, x)
    return max(d[u] for u in component)


def dep(T: UnderlyingGraph, x: int) -> int:
    """Depth of skeleton vertex x: the minimum component depth over S(T) - x.

    Defined for every skeleton vertex; the embedding argument only uses it at
    skeleton vertices of skeleton-degree 2.
    """
    adj, comps = _skeleton_components(T, x)
    if not comps:
        raise EmptySkeletonError("the skeleton is a single vertex; S(T) - x has no component")
    d = _skeleton_dist(adj, x)
    return min(max(d[u] for u in comp) for comp in comps)


def skeleton_degree_two(T: UnderlyingGraph) -> frozenset[int]:
    """Vertices of degree 2 in the skeleton (not in T)."""
    adj = restricted_adjacency(T, skeleton(T))
    return frozenset(v for v, nb in adj.items() if len(nb) == 2)


def min_depth_m(T: UnderlyingGraph) -> int | None:
    """min dep(x) over skeleton-degree-2 vertices x, or None if there are none."""
    cands = skeleton_degree_two(T)
    if not cands:
        return None
    return min(dep(T, x) for x in cands)


# ---------------------------------------------------------------------------
# distances and orientation


def tree_diameter(T: UnderlyingGraph) -> int:
    if T.n == 0:
        raise ValueError("empty tree")
    d0 = distances_from(T, 0)
    far = max(d0, key=lambda v: (d0[v], -v))
    return max(distances_from(T, far).values())


def center(T: UnderlyingGraph) -> tuple[int, ...]:
    """The one or two central vertices, found by repeatedly stripping leaves."""
    if T.n <= 2:
        return tuple(range(T.n))
    degree = {v: len(T.neighbors(v)) for v in range(T.n)}
    layer = [v for v, d in degree.items() if d <= 1]
    remaining = T.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in T.neighbors(v):
                degree[w] -= 1
                if degree[w] == 1:
                    nxt.append(w)
        layer = nxt
    return tuple(sorted(layer))


def is_antidirected(T: Digraph) -> bool:
    """No directed path of length 2: every vertex is a source or a sink."""
    return all(T.in_degree(v) == 0 or T.out_degree(v) == 0 for v in range(T.n))


@dataclass(frozen=True)
class TreeProfile:
    leaves: frozenset[int]
    in_leaves: frozenset[int]
    out_leaves: frozenset[int]
    skeleton: frozenset[int]
    penultimate: frozenset[int]
    diameter: int
    max_degree: int
    antidirected: bool


def profile(T: OrientedTree) -> TreeProfile:
    if T.n < 2:
        raise ValueError("profile needs a tree with at least two vertices")
    return TreeProfile(
        leaves=leaves(T),
        in_leaves=in_leaves(T),
        out_leaves=out_leaves(T),
        skeleton=skeleton(T),
        penultimate=penultimate(T),
        diameter=tree_diameter(T),
        max_degree=T.max_degree(),
        antidirected=is_antidirected(T),
    )


# ---------------------------------------------------------------------------
# the caterpillar family T(a, b)


def construct_tab(a: int, b: int) -> Graph:
    """Path v1..va with a pendant leaf on each of v2..vb and v(a-b+1)..v(a-1).

    Path vertex v_i gets id i-1; pendant leaves follow in path order.  For
    b = 1 both pendant ranges are empty and the result is a bare path.
    """
    if b < 1 or a < 2 * b:
        raise ValueError(f"T(a, b) needs a >= 2b >= 2, got a={a}, b={b}")
    edges = [(i, i + 1) for i in range(a - 1)]
    hosts = list(range(2, b + 1)) + list(range(a - b + 1, a))
    for j, i in enumerate(hosts):
        edges.append((i - 1, a + j))
    return Graph(a + len(hosts), edges)


def recognize_tab(S: UnderlyingGraph) -> tuple[int, int] | None:
    """Return (a, b) if the undirected tree S is isomorphic to T(a, b)."""
    if not is_tree(S):
        return None
    t = len(leaves(S))
    if t < 2 or t % 2:
        return None
    b = t // 2
    a = S.n - 2 * (b - 1)
    if a < 2 * b:
        return None
    if canonical_form(S) == canonical_form(construct_tab(a, b)):
        return a, b
    return None


# ---------------------------------------------------------------------------
# canonical forms


def _encode(T: UnderlyingGraph, root: int, directed: bool) -> tuple[str, dict[int, str], dict[int, list[int]]]:
    parent = {root: -1}
    order = [root]
    for u in order:
        for w in T.neighbors(u):
            if w != parent[u]:
                parent[w] = u
                order.append(w)
    code: dict[int, str] = {}
    children: dict[int, list[int]] = {}
    for u in reversed(order):
        kids = sorted((w for w in T.neighbors(u) if w != parent[u]), key=lambda w: code[w])
        children[u] = kids
        p = parent[u]
        if p < 0 or not directed:
            mark = ""
        else:
            mark = ">" if T.has_arc(p, u) else "<"
        code[u] = "(" + mark + "".join(code[w] for w in kids) + ")"
    return code[root], code, children


def canonical_form(T: UnderlyingGraph) -> str:
    """Isomorphism-invariant string for a tree.

    Center-rooted AHU encoding; for digraphs each non-root node also records
    whether its edge to the parent points down (``>``) or up (``<``).
    """
    directed = isinstance(T, Digraph)
    return min(_encode(T, c, directed)[0] for c in center(T))


def canonical_relabel(T: UnderlyingGraph):
    """Relabel T so that vertex ids follow the preorder of its canonical encoding.

    Isomorphic trees come out identical, which keeps enumerations and reports
    reproducible.
    """
    directed = isinstance(T, Digraph)
    best = None
    for c in center(T):
        enc = _encode(T, c, directed)
        if best is None or enc[0] < best[1][0]:
            best = (c, enc)
    root, (_, _, children) = best
    new_id: dict[int, int] = {}
    stack = [root]
    while stack:
        u = stack.pop()
        new_id[u] = len(new_id)
        stack.extend(reversed(children[u]))
    if directed:
        return OrientedTree(T.n, sorted((new_id[u], new_id[v]) for u, v in T.arcs))
    edges = {(new_id[u], new_id[w]) for u in range(T.n) for w in T.neighbors(u) if u < w}
    return Graph(T.n, edges)
