"""Host and tree generators.

Everything returned here is re-checked against its advertised properties
before it leaves the module; a generator never vouches for itself.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations
from typing import Iterator

import pynauty

from .digraph import (
    Digraph,
    Graph,
    find_forbidden_cycle,
    is_oriented,
    iter_short_cycles,
    underlying_girth,
)
from .trees import OrientedTree, canonical_form, canonical_relabel, is_antidirected, out_star

FREE_TREE_MAX_EDGES = 13
ORIENTED_TREE_MAX_EDGES = 7
CONNECTED_GRAPH_MAX_N = 10


class GenerationError(RuntimeError):
    """A generator could not produce an instance with the requested properties."""


def _lcf(n: int, shifts: list[int]) -> list[tuple[int, int]]:
    edges = {(min(i, (i + 1) % n), max(i, (i + 1) % n)) for i in range(n)}
    for i in range(n):
        j = (i + shifts[i % len(shifts)]) % n
        edges.add((min(i, j), max(i, j)))
    return sorted(edges)


def _petersen() -> list[tuple[int, int]]:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return outer + spokes + inner


# name -> (n, edges, degree, girth)
_CATALOG_SOURCES = {
    "petersen": (10, _petersen, 3, 5),
    "heawood": (14, lambda: _lcf(14, [5, -5]), 3, 6),
    "mcgee": (24, lambda: _lcf(24, [12, 7, -7]), 3, 7),
    "robertson": (19, lambda: _lcf(19, [8, 4, 7, 4, 8, 5, 7, 4, 7, 8, 4, 5, 7, 8, 4, 8, 4, 8, 4]), 4, 5),
}


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def _verify_regular_girth(G: Graph, d: int, g: int, what: str) -> Graph:
    degrees = {G.degree(v) for v in range(G.n)}
    if degrees != {d}:
        raise GenerationError(f"{what}: expected {d}-regular, degrees are {sorted(degrees)}")
    girth = underlying_girth(G)
    if girth is None or girth < g:
        raise GenerationError(f"{what}: expected girth >= {g}, got {girth}")
    return G


def catalog_graph(name: str) -> Graph:
    """Named high-girth regular graph; ``C<g>`` gives the cycle on g vertices.

    Regularity and girth are recomputed on every load.
    """
    key = name.lower()
    if key.startswith("c") and key[1:].isdigit():
        g = int(key[1:])
        return _verify_regular_girth(cycle_graph(g), 2, g, name)
    if key not in _CATALOG_SOURCES:
        raise KeyError(f"unknown catalog graph {name!r}; known: {', '.join(catalog_names())}, C<g>")
    n, build, d, g = _CATALOG_SOURCES[key]
    return _verify_regular_girth(Graph(n, build()), d, g, name)


def catalog_names() -> list[str]:
    return sorted(_CATALOG_SOURCES)


def regular_high_girth(
    d: int, g: int, *, n: int | None = None, seed: int | None = None, budget: int = 200
) -> Graph:
    """A d-regular simple graph with girth at least g.

    Catalog witnesses are preferred (smallest order, exact girth first).  On a
    catalog miss, a random d-regular graph on ``n`` vertices is repaired by
    double edge swaps; that path needs both ``n`` and ``seed``.
    """
    if d < 2 or g < 3:
        raise ValueError(f"need d >= 2 and g >= 3, got d={d}, g={g}")
    if d == 2:
        return catalog_graph(f"C{g}")
    hits = []
    for name, (order, _, deg, girth) in _CATALOG_SOURCES.items():
        if deg == d and girth >= g:
            hits.append((girth != g, order, name))
    if hits:
        return catalog_graph(min(hits)[2])
    if n is None or seed is None:
        raise GenerationError(f"no catalog graph with degree {d} and girth >= {g}; pass n and seed for random search")
    G = random_regular_high_girth(n, d, g, seed=seed, budget=budget)
    return _verify_regular_girth(G, d, g, f"random({n},{d},{g})")


def _random_regular_edges(n: int, d: int, rng: random.Random) -> set[tuple[int, int]] | None:
    stubs = [v for v in range(n) for _ in range(d)]
    rng.shuffle(stubs)
    edges: set[tuple[int, int]] = set()
    for a, b in zip(stubs[::2], stubs[1::2]):
        e = (min(a, b), max(a, b))
        if a == b or e in edges:
            return None
        edges.add(e)
    return edges


def random_regular_high_girth(n: int, d: int, g: int, *, seed: int, budget: int = 200) -> Graph:
    """Stub matching followed by short-cycle repair with double edge swaps."""
    if (n * d) % 2 or d >= n:
        raise GenerationError(f"no {d}-regular simple graph on {n} vertices")
    rng = random.Random(seed)
    for _ in range(budget):
        edges = None
        while edges is None:
            edges = _random_regular_edges(n, d, rng)
        for _ in range(50 * n * d):
            G = Graph(n, edges)
            cyc = next(iter_cycles_below(G, g), None)
            if cyc is None:
                return G
            i = rng.randrange(len(cyc))
            a, b = cyc[i], cyc[(i + 1) % len(cyc)]
            c, e = rng.choice(sorted(edges))
            if rng.random() < 0.5:
                c, e = e, c
            if len({a, b, c, e}) < 4:
                continue
            new1, new2 = (min(a, c), max(a, c)), (min(b, e), max(b, e))
            if new1 in edges or new2 in edges:
                continue
            edges -= {(min(a, b), max(a, b)), (min(c, e), max(c, e))}
            edges |= {new1, new2}
    raise GenerationError(f"random search for a {d}-regular graph of girth >= {g} on {n} vertices exhausted its budget")


def iter_cycles_below(G: Graph, g: int) -> Iterator[tuple[int, ...]]:
    if g <= 3:
        return iter(())
    return iter_short_cycles(G, g - 1)


# ---------------------------------------------------------------------------
# orientations


def eulerian_circuits(G: Graph) -> list[list[int]]:
    """One closed walk per nontrivial component, covering each edge once.

    Iterative Hierholzer, starting each component at its smallest vertex and
    always leaving along the smallest unused edge.
    """
    for v in range(G.n):
        if G.degree(v) % 2:
            raise ValueError(f"vertex {v} has odd degree {G.degree(v)}")
    remaining = {v: sorted(G.neighbors(v), reverse=True) for v in range(G.n)}
    used: set[tuple[int, int]] = set()
    circuits = []
    for start in range(G.n):
        if not remaining[start]:
            continue
        if all((min(start, w), max(start, w)) in used for w in remaining[start]):
            continue
        stack = [start]
        circuit = []
        while stack:
            u = stack[-1]
            while remaining[u] and (min(u, remaining[u][-1]), max(u, remaining[u][-1])) in used:
                remaining[u].pop()
            if remaining[u]:
                w = remaining[u].pop()
                used.add((min(u, w), max(u, w)))
                stack.append(w)
            else:
                circuit.append(stack.pop())
        circuits.append(circuit[::-1])
    return circuits


def balanced_orientation(G: Graph) -> Digraph:
    """Orient every edge along an Eulerian circuit so in- and out-degree agree."""
    arcs = []
    for circuit in eulerian_circuits(G):
        arcs.extend(zip(circuit, circuit[1:]))
    D = Digraph(G.n, arcs)
    if D.underlying() != G or any(D.out_degree(v) != D.in_degree(v) for v in range(G.n)):
        raise GenerationError("orientation is not balanced")
    return D


def directed_cycle(n: int) -> Digraph:
    return balanced_orientation(cycle_graph(n))


def sharpness_instance(d: int, ell: int) -> tuple[Digraph, OrientedTree]:
    """Host with semidegree d-1 and girth >= 2*ell+1, and the out-star with d edges."""
    if d < 2 or ell < 1:
        raise ValueError(f"need d >= 2 and ell >= 1, got d={d}, ell={ell}")
    D = balanced_orientation(regular_high_girth(2 * (d - 1), 2 * ell + 1))
    s = D.summary
    if s.min_semidegree != d - 1 or s.max_outdegree != d - 1 or s.max_indegree != d - 1:
        raise GenerationError("sharpness host has the wrong semidegrees")
    if D.girth is not None and D.girth < 2 * ell + 1:
        raise GenerationError("sharpness host girth too small")
    return D, out_star(d)


# ---------------------------------------------------------------------------
# trees


@lru_cache(maxsize=None)
def _free_trees(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph(1),)
    seen: dict[str, Graph] = {}
    for T in _free_trees(n - 1):
        for v in range(T.n):
            G = Graph(n, list(T.edges) + [(v, n - 1)])
            key = canonical_form(G)
            if key not in seen:
                seen[key] = G
    return tuple(canonical_relabel(seen[key]) for key in sorted(seen))


@lru_cache(maxsize=None)
def _oriented_trees(k: int, antidirected: bool) -> tuple[OrientedTree, ...]:
    seen: dict[str, OrientedTree] = {}
    for F in _free_trees(k + 1):
        edges = F.sorted_edges()
        if antidirected:
            side = _two_colouring(F)
            choices = [
                [(a, b) if side[a] == s else (b, a) for a, b in edges] for s in (0, 1)
            ]
        else:
            choices = (
                [(a, b) if (mask >> i) & 1 else (b, a) for i, (a, b) in enumerate(edges)]
                for mask in range(1 << len(edges))
            )
        for arcs in choices:
            T = OrientedTree(k + 1, arcs)
            key = canonical_form(T)
            if key not in seen:
                seen[key] = T
    return tuple(canonical_relabel(seen[key]) for key in sorted(seen))


def _two_colouring(F: Graph) -> dict[int, int]:
    side = {0: 0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in F.neighbors(u):
            if w not in side:
                side[w] = 1 - side[u]
                stack.append(w)
    return side


def enumerate_trees(k: int, variant: str = "free", max_degree: int | None = None) -> Iterator:
    """One tree per isomorphism class with ``k`` edges.

    ``variant`` is ``free`` (undirected :class:`Graph`), ``oriented`` or
    ``antidirected`` (:class:`OrientedTree`, direction-aware isomorphism).
    Output order is by canonical form and vertex ids are canonical.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if variant == "free" or variant == "antidirected":
        if k > FREE_TREE_MAX_EDGES:
            raise GenerationError(f"{variant} tree enumeration is capped at k <= {FREE_TREE_MAX_EDGES}")
    elif variant == "oriented":
        if k > ORIENTED_TREE_MAX_EDGES:
            raise GenerationError(f"oriented tree enumeration is capped at k <= {ORIENTED_TREE_MAX_EDGES}")
    else:
        raise ValueError(f"unknown variant {variant!r}")
    if variant == "free":
        trees = _free_trees(k + 1)
    else:
        trees = _oriented_trees(k, variant == "antidirected")
    for T in trees:
        if max_degree is not None and max(len(T.neighbors(v)) for v in range(T.n)) > max_degree:
            continue
        if variant == "antidirected" and not is_antidirected(T):
            raise GenerationError("antidirected enumeration produced a directed P2")
        yield T


# ---------------------------------------------------------------------------
# connected graphs (for the scattered-set suite)


def _certificate(n: int, masks: list[int]) -> bytes:
    adj = {v: [w for w in range(n) if masks[v] >> w & 1] for v in range(n)}
    return pynauty.certificate(pynauty.Graph(n, adjacency_dict=adj))


@lru_cache(maxsize=4)
def connected_graph_masks(n: int) -> tuple[tuple[int, ...], ...]:
    """Adjacency bitmasks of all connected graphs on n vertices, one per
    isomorphism class.

    Grown one vertex at a time: every connected graph has a vertex whose
    removal keeps it connected, so attaching a new vertex to a nonempty subset
    of a smaller connected graph reaches every class.  Duplicates are dropped
    by nauty certificate.
    """
    if n < 1:
        return ()
    if n > CONNECTED_GRAPH_MAX_N:
        raise GenerationError(f"connected graph enumeration is capped at n <= {CONNECTED_GRAPH_MAX_N}")
    if n == 1:
        return ((0,),)
    found: dict[bytes, tuple[int, ...]] = {}
    new = n - 1
    for masks in connected_graph_masks(n - 1):
        for subset in range(1, 1 << new):
            grown = [m | ((subset >> v & 1) << new) for v, m in enumerate(masks)]
            grown.append(subset)
            cert = _certificate(n, grown)
            if cert not in found:
                found[cert] = tuple(grown)
    return tuple(found[c] for c in sorted(found))


def graph_from_masks(masks: tuple[int, ...]) -> Graph:
    n = len(masks)
    return Graph(n, [(u, w) for u in range(n) for w in range(u + 1, n) if masks[u] >> w & 1])


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    for masks in connected_graph_masks(n):
        yield graph_from_masks(masks)


# ---------------------------------------------------------------------------
# random hosts


def random_oriented_host(
    n: int,
    ell: int,
    target_semidegree: int,
    seed: int,
    *,
    star_variant: bool = False,
    oriented: bool = True,
    budget: int = 1000,
) -> Digraph:
    """Random maximal digraph free of the short-cycle family, with the
    requested minimum semidegree.

    Candidate arcs are tried in seeded random order and kept when they close no
    forbidden cycle (any cycle on 3..2*ell vertices, or with ``star_variant``
    only the non-directed ones).  With ``oriented=False`` digons are allowed.
    A saturated digraph below the semidegree target, or one failing the full
    recheck, is discarded and counts against ``budget``.
    """
    D, _ = random_host_with_retries(
        n, ell, target_semidegree, seed, star_variant=star_variant, oriented=oriented, budget=budget
    )
    return D


def random_host_with_retries(
    n: int,
    ell: int,
    target_semidegree: int,
    seed: int,
    *,
    star_variant: bool = False,
    oriented: bool = True,
    budget: int = 1000,
) -> tuple[Digraph, int]:
    """As :func:`random_oriented_host`, also returning the number of discarded samples."""
    if n < 1 or ell < 1:
        raise ValueError(f"need n >= 1 and ell >= 1, got n={n}, ell={ell}")
    rng = random.Random(seed)
    pairs = [(u, v) for u, v in combinations(range(n), 2)] + [(v, u) for u, v in combinations(range(n), 2)]
    for attempt in range(budget):
        order = pairs[:]
        rng.shuffle(order)
        out = [set() for _ in range(n)]
        inn = [set() for _ in range(n)]
        for u, v in order:
            if oriented and u in out[v]:
                continue
            if _closes_forbidden_cycle(out, inn, u, v, ell, star_variant):
                continue
            out[u].add(v)
            inn[v].add(u)
        D = Digraph(n, [(u, v) for u in range(n) for v in sorted(out[u])])
        if D.summary.min_semidegree < target_semidegree:
            continue
        if oriented and not is_oriented(D):
            continue
        if find_forbidden_cycle(D, ell, star_variant) is not None:
            continue
        return D, attempt
    raise GenerationError(
        f"no {'C*' if star_variant else 'C'}<= {2 * ell}-free digraph on {n} vertices "
        f"with semidegree >= {target_semidegree} within {budget} samples"
    )


def _closes_forbidden_cycle(out, inn, u: int, v: int, ell: int, star_variant: bool) -> bool:
    """Would adding arc u->v create a forbidden cycle through the edge uv?"""
    max_len = 2 * ell
    if max_len < 3:
        return False

    def has(a, b):
        return b in out[a]

    def nbrs(a):
        return out[a] | inn[a]

    # simple paths v .. u of length 2..max_len-1 avoiding the edge uv itself
    path = [v]
    on_path = {v}

    def walk() -> bool:
        x = path[-1]
        for y in sorted(nbrs(x)):
            if y == u:
                if len(path) < 2:
                    continue
                if not star_variant:
                    return True
                cyc = [u, *path]
                if _nondirected_after_add(cyc, has, u, v):
                    return True
                continue
            if y in on_path:
                continue
            if len(path) + 1 < max_len:
                path.append(y)
                on_path.add(y)
                if walk():
                    return True
                on_path.discard(path.pop())
        return False

    on_path.add(u)
    return walk()


def _nondirected_after_add(cyc: list[int], has, u: int, v: int) -> bool:
    L = len(cyc)
    fwd, bwd = [], []
    for i in range(L):
        a, b = cyc[i], cyc[(i + 1) % L]
        f = has(a, b) or (a, b) == (u, v)
        r = has(b, a) or (b, a) == (u, v)
        fwd.append(f)
        bwd.append(r)
    if any(f and r for f, r in zip(fwd, bwd)):
        return True
    return not all(fwd) and not all(bwd)
