"""Brute-force reference implementations.

Deliberately naive and independent of the library's search code: they work
from raw vertex/arc lists and enumerate permutations or subsets.
"""

from __future__ import annotations

from itertools import combinations, permutations, product

import pynauty


def naive_embeddings_exist(tree_n, tree_arcs, host_n, host_arcs) -> bool:
    host = set(host_arcs)
    for image in permutations(range(host_n), tree_n):
        if all((image[u], image[v]) in host for u, v in tree_arcs):
            return True
    return False


def naive_cycles(n, edges, max_len):
    """Vertex cycles of length 3..max_len, as frozensets of their edges."""
    adj = {v: set() for v in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    found = set()
    for L in range(3, max_len + 1):
        for seq in permutations(range(n), L):
            if all(seq[(i + 1) % L] in adj[seq[i]] for i in range(L)):
                found.add(frozenset(frozenset((seq[i], seq[(i + 1) % L])) for i in range(L)))
    return found


def naive_max_scattered(n, edges, min_dist):
    dist = [[None] * n for _ in range(n)]
    adj = {v: set() for v in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    for s in range(n):
        dist[s][s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if dist[s][w] is None:
                        dist[s][w] = dist[s][u] + 1
                        nxt.append(w)
            frontier = nxt
    for size in range(n, 0, -1):
        for S in combinations(range(n), size):
            if all(dist[a][b] >= min_dist for a, b in combinations(S, 2)):
                return size
    return 0


def prufer_trees(n):
    """All labeled trees on n >= 2 vertices as sorted edge lists."""
    if n == 2:
        yield [(0, 1)]
        return
    for seq in product(range(n), repeat=n - 2):
        degree = [1] * n
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = min(v for v in range(n) if degree[v] == 1)
            edges.append((min(leaf, x), max(leaf, x)))
            degree[leaf] -= 1
            degree[x] -= 1
        u, w = [v for v in range(n) if degree[v] == 1]
        edges.append((u, w))
        yield sorted(edges)


def perm_canonical(n, pairs, directed):
    """Lexicographically least relabeled pair list over all n! permutations."""
    best = None
    for p in permutations(range(n)):
        if directed:
            img = tuple(sorted((p[a], p[b]) for a, b in pairs))
        else:
            img = tuple(sorted((min(p[a], p[b]), max(p[a], p[b])) for a, b in pairs))
        if best is None or img < best:
            best = img
    return best


def naive_tree_classes(n, variant):
    """Number of free / oriented / antidirected trees on n vertices, by brute force."""
    if n == 1:
        return 1
    classes = set()
    for edges in prufer_trees(n):
        if variant == "free":
            classes.add(perm_canonical(n, edges, False))
            continue
        for mask in range(1 << len(edges)):
            arcs = [(a, b) if mask >> i & 1 else (b, a) for i, (a, b) in enumerate(edges)]
            if variant == "antidirected":
                heads = {b for _, b in arcs}
                tails = {a for a, _ in arcs}
                if heads & tails:
                    continue
            classes.add(perm_canonical(n, arcs, True))
    return len(classes)


def all_graphs(n):
    """Every simple graph on n vertices up to isomorphism, as edge lists."""
    layer = {pynauty.certificate(pynauty.Graph(1)): []}
    for size in range(2, n + 1):
        nxt = {}
        new = size - 1
        for edges in layer.values():
            for subset in range(1 << new):
                grown = edges + [(v, new) for v in range(new) if subset >> v & 1]
                adj = {v: [] for v in range(size)}
                for a, b in grown:
                    adj[a].append(b)
                cert = pynauty.certificate(pynauty.Graph(size, adjacency_dict=adj))
                nxt.setdefault(cert, grown)
        layer = nxt
    return list(layer.values())


def all_oriented_graphs(n):
    """Every oriented graph (no digons) on n vertices up to isomorphism."""
    layer = {pynauty.certificate(pynauty.Graph(1, directed=True)): []}
    for size in range(2, n + 1):
        nxt = {}
        new = size - 1
        for arcs in layer.values():
            for choice in product((0, 1, 2), repeat=new):
                grown = list(arcs)
                for v, c in enumerate(choice):
                    if c == 1:
                        grown.append((v, new))
                    elif c == 2:
                        grown.append((new, v))
                adj = {v: [] for v in range(size)}
                for a, b in grown:
                    adj[a].append(b)
                cert = pynauty.certificate(pynauty.Graph(size, directed=True, adjacency_dict=adj))
                nxt.setdefault(cert, grown)
        layer = nxt
    return list(layer.values())
