"""Tree embeddings: the anchored greedy embedder, an exact backtracking
search used as its oracle, and theorem-level instance checks.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field

from .digraph import Digraph, is_c_free, is_oriented
from .trees import OrientedTree, center, is_antidirected, tree_diameter

DEFAULT_BUDGET = 10**7


class HypothesisError(ValueError):
    """greedy_embed was called outside the hypotheses that guarantee success.

    ``hypothesis`` names the failed condition: ``diameter``, ``cycle-free``,
    ``degree``, ``antidirected`` or ``anchor``.
    """

    def __init__(self, hypothesis: str, message: str):
        super().__init__(f"{hypothesis}: {message}")
        self.hypothesis = hypothesis


class GreedyStuck(AssertionError):
    """The greedy extension found no free neighbor although its hypotheses hold."""


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, nodes: int, budget: int):
        super().__init__(f"exact search exceeded its budget of {budget} nodes")
        self.nodes = nodes
        self.budget = budget


class InvalidEmbedding(ValueError):
    pass


@dataclass(frozen=True)
class Embedding:
    """``mapping[t]`` is the host vertex of tree vertex ``t``."""

    mapping: tuple[int, ...]

    def __getitem__(self, t: int) -> int:
        return self.mapping[t]


@dataclass(frozen=True)
class Anchor:
    tree_arc: tuple[int, int]
    host_arc: tuple[int, int]


def check_embedding(T: Digraph, D: Digraph, mapping) -> None:
    """Raise InvalidEmbedding unless ``mapping`` is injective and arc-preserving."""
    mapping = tuple(mapping)
    if len(mapping) != T.n:
        raise InvalidEmbedding(f"mapping covers {len(mapping)} of {T.n} tree vertices")
    if any(not 0 <= x < D.n for x in mapping):
        raise InvalidEmbedding("mapping leaves the host vertex range")
    if len(set(mapping)) != len(mapping):
        raise InvalidEmbedding("mapping is not injective")
    for u, v in sorted(T.arcs):
        if not D.has_arc(mapping[u], mapping[v]):
            raise InvalidEmbedding(f"tree arc {u}->{v} maps to non-arc {mapping[u]}->{mapping[v]}")


def is_valid_embedding(T: Digraph, D: Digraph, mapping) -> bool:
    try:
        check_embedding(T, D, mapping)
    except InvalidEmbedding:
        return False
    return True


# ---------------------------------------------------------------------------
# greedy


def check_greedy_hypotheses(
    T: OrientedTree, D: Digraph, ell: int, anchor: Anchor | None = None, antidirected_mode: bool = False
) -> None:
    """Raise HypothesisError naming the first failed precondition.

    Cheap checks run before the cycle-family check.
    """
    if ell < 1:
        raise ValueError(f"ell must be >= 1, got {ell}")
    if anchor is not None:
        if anchor.tree_arc not in T.arcs:
            raise HypothesisError("anchor", f"{anchor.tree_arc} is not an arc of the tree")
        if anchor.host_arc not in D.arcs:
            raise HypothesisError("anchor", f"{anchor.host_arc} is not an arc of the host")
    if T.n > 1 and tree_diameter(T) > 2 * ell:
        raise HypothesisError("diameter", f"tree diameter {tree_diameter(T)} exceeds 2*ell = {2 * ell}")
    delta = T.max_degree()
    if antidirected_mode:
        if not is_antidirected(T):
            raise HypothesisError("antidirected", "tree contains a directed path of length 2")
        if D.summary.pseudo_semidegree < delta:
            raise HypothesisError(
                "degree", f"pseudo-semidegree {D.summary.pseudo_semidegree} < max tree degree {delta}"
            )
    elif D.summary.min_semidegree < delta:
        raise HypothesisError("degree", f"min semidegree {D.summary.min_semidegree} < max tree degree {delta}")
    if not is_c_free(D, ell, star_variant=antidirected_mode):
        family = "C*" if antidirected_mode else "C"
        raise HypothesisError("cycle-free", f"host contains a cycle of the family {family}<={2 * ell}")


def greedy_embed(
    T: OrientedTree,
    D: Digraph,
    ell: int,
    anchor: Anchor | None = None,
    antidirected_mode: bool = False,
) -> Embedding:
    """Embed T by growing outward from an anchored arc, one leaf at a time.

    Preconditions: diameter(T) <= 2*ell and either D is C<=2ell-free with
    min semidegree >= Delta(T), or (``antidirected_mode``) T is antidirected,
    D is C*<=2ell-free and its pseudo-semidegree is >= Delta(T).  Under these
    the free out-/in-neighbor needed at each step always exists; the short
    cycle that would otherwise close through the partial image is forbidden.

    Vertices are attached in BFS order from the anchor arc (smallest id
    first), each to the smallest free host neighbor of the right direction.
    Without an anchor the smallest tree arc goes to the smallest host arc.
    """
    check_greedy_hypotheses(T, D, ell, anchor, antidirected_mode)
    if T.n == 1:
        if D.n == 0:
            raise HypothesisError("degree", "empty host")
        return Embedding((0,))
    if anchor is None:
        if not D.arcs:
            raise HypothesisError("degree", "host has no arcs")
        anchor = Anchor(min(T.arcs), min(D.arcs))
    (u, v), (x, y) = anchor.tree_arc, anchor.host_arc
    f = {u: x, v: y}
    used = {x, y}
    queue = deque(sorted((u, v)))
    while queue:
        p = queue.popleft()
        for w in sorted(T.neighbors(p)):
            if w in f:
                continue
            if T.has_arc(p, w):
                cands = D.out_neighbors(f[p]) - used
            else:
                cands = D.in_neighbors(f[p]) - used
            if not cands:
                raise GreedyStuck(f"no free neighbor for tree vertex {w} at host vertex {f[p]}")
            f[w] = min(cands)
            used.add(f[w])
            queue.append(w)
    emb = Embedding(tuple(f[t] for t in range(T.n)))
    check_embedding(T, D, emb.mapping)
    return emb


# ---------------------------------------------------------------------------
# exact search


@dataclass(frozen=True)
class SearchResult:
    """Outcome of an exhausted search: the embedding found, or None as a
    certificate that none exists.  ``nodes`` counts tried assignments."""

    embedding: Embedding | None
    nodes: int


def exact_search(T: OrientedTree, D: Digraph, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Backtracking search for an embedding of T in D.

    Candidates are filtered by (out, in)-degree dominance and adjacency to the
    already placed neighbor; the next tree vertex is the frontier vertex with
    fewest candidates, the search starting at a center of T.  Raises
    SearchBudgetExceeded rather than ever reporting absence it has not proven.
    """
    nt = T.n
    if nt > D.n:
        return SearchResult(None, 0)
    t_out = [T.out_degree(t) for t in range(nt)]
    t_in = [T.in_degree(t) for t in range(nt)]
    d_out = [D.out_degree(x) for x in range(D.n)]
    d_in = [D.in_degree(x) for x in range(D.n)]
    fits = [
        frozenset(x for x in range(D.n) if d_out[x] >= t_out[t] and d_in[x] >= t_in[t]) for t in range(nt)
    ]
    if any(not s for s in fits):
        return SearchResult(None, 0)

    f: dict[int, int] = {}
    used: set[int] = set()
    nodes = 0

    def candidates(t: int) -> list[int]:
        for p in T.neighbors(t):
            if p in f:
                side = D.out_neighbors(f[p]) if T.has_arc(p, t) else D.in_neighbors(f[p])
                return sorted(x for x in side if x in fits[t] and x not in used)
        raise AssertionError("frontier vertex without a placed neighbor")

    def extend() -> bool:
        nonlocal nodes
        if len(f) == nt:
            return True
        frontier = sorted({w for p in f for w in T.neighbors(p) if w not in f})
        best_t, best_c = None, None
        for t in frontier:
            c = candidates(t)
            if best_c is None or len(c) < len(best_c):
                best_t, best_c = t, c
                if not c:
                    return False
        for x in best_c:
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(nodes, budget)
            f[best_t] = x
            used.add(x)
            if extend():
                return True
            del f[best_t]
            used.discard(x)
        return False

    root = center(T)[0]
    for x in sorted(fits[root]):
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(nodes, budget)
        f[root] = x
        used.add(x)
        if extend():
            emb = Embedding(tuple(f[t] for t in range(nt)))
            check_embedding(T, D, emb.mapping)
            return SearchResult(emb, nodes)
        del f[root]
        used.discard(x)
    return SearchResult(None, nodes)


def exact_embed(T: OrientedTree, D: Digraph, budget: int = DEFAULT_BUDGET) -> Embedding | None:
    """An embedding of T in D, or None when exhaustive search proves there is none."""
    return exact_search(T, D, budget).embedding


# ---------------------------------------------------------------------------
# theorem checks


class Outcome(str, enum.Enum):
    HYPOTHESIS_FAIL = "HYPOTHESIS_FAIL"
    EMBEDDED = "EMBEDDED"
    NO_EMBEDDING = "NO_EMBEDDING"
    INCONCLUSIVE = "INCONCLUSIVE"


class Variant(str, enum.Enum):
    """Which statement an instance is checked against.

    ``oriented``: oriented host of girth >= 2*ell+1, semidegree bound.
    ``antidirected``: antidirected tree, C*<=2ell-free host, pseudo-semidegree bound.
    ``c-free`` / ``c-star-free``: the open generalisations where the host is
    any C<=2ell-free (resp. C*<=2ell-free) digraph, digons allowed, with the
    semidegree bound and an arbitrary oriented tree.
    """

    ORIENTED = "oriented"
    ANTIDIRECTED = "antidirected"
    C_FREE = "c-free"
    C_STAR_FREE = "c-star-free"


@dataclass
class VerificationRecord:
    variant: Variant
    k: int
    ell: int
    hypotheses_hold: bool
    failed: list[str] = field(default_factory=list)
    outcome: Outcome = Outcome.HYPOTHESIS_FAIL
    method: str | None = None
    embedding: Embedding | None = None
    nodes: int | None = None

    def to_dict(self) -> dict:
        d = {
            "variant": self.variant.value,
            "k": self.k,
            "ell": self.ell,
            "hypotheses_hold": self.hypotheses_hold,
            "failed": list(self.failed),
            "outcome": self.outcome.value,
            "method": self.method,
        }
        if self.embedding is not None:
            d["embedding"] = list(self.embedding.mapping)
        if self.outcome is Outcome.NO_EMBEDDING:
            d["certificate"] = {"exhausted": True, "nodes": self.nodes}
        elif self.nodes is not None:
            d["nodes"] = self.nodes
        return d


def failed_hypotheses(T: OrientedTree, D: Digraph, k: int, ell: int, variant: Variant) -> list[str]:
    """Names of the theorem hypotheses that fail, cheapest checks first.

    The bound delta >= k/ell is compared exactly as delta*ell >= k.
    """
    variant = Variant(variant)
    failed = []
    if T.k != k:
        failed.append("edge-count")
    delta = D.summary.pseudo_semidegree if variant is Variant.ANTIDIRECTED else D.summary.min_semidegree
    if delta * ell < k:
        failed.append("degree-k/ell")
    if delta < T.max_degree():
        failed.append("degree-max-tree-degree")
    if variant is Variant.ANTIDIRECTED and not is_antidirected(T):
        failed.append("antidirected")
    if variant is Variant.ORIENTED:
        if not is_oriented(D):
            failed.append("oriented")
        if D.girth is not None and D.girth < 2 * ell + 1:
            failed.append("girth")
    elif not is_c_free(D, ell, star_variant=variant is not Variant.C_FREE):
        failed.append("cycle-free")
    return failed


def verify_theorem(
    T: OrientedTree, D: Digraph, k: int, ell: int, variant: Variant | str, budget: int = DEFAULT_BUDGET
) -> VerificationRecord:
    """Check hypotheses, then look for an embedding.

    The greedy embedder is used whenever its own preconditions hold (tree
    diameter <= 2*ell); otherwise exhaustive search decides.  ``method``
    records which path was taken.
    """
    variant = Variant(variant)
    rec = VerificationRecord(variant=variant, k=k, ell=ell, hypotheses_hold=False)
    rec.failed = failed_hypotheses(T, D, k, ell, variant)
    if rec.failed:
        return rec
    rec.hypotheses_hold = True
    greedy_mode = {
        Variant.ORIENTED: False,
        Variant.C_FREE: False,
        Variant.ANTIDIRECTED: True,
        Variant.C_STAR_FREE: None,
    }[variant]
    if greedy_mode is not None and (T.n == 1 or tree_diameter(T) <= 2 * ell):
        rec.embedding = greedy_embed(T, D, ell, antidirected_mode=greedy_mode)
        rec.method = "greedy"
        rec.outcome = Outcome.EMBEDDED
        return rec
    rec.method = "exact"
    try:
        res = exact_search(T, D, budget)
    except SearchBudgetExceeded as exc:
        rec.outcome = Outcome.INCONCLUSIVE
        rec.nodes = exc.nodes
        return rec
    rec.nodes = res.nodes
    if res.embedding is None:
        rec.outcome = Outcome.NO_EMBEDDING
    else:
        rec.embedding = res.embedding
        rec.outcome = Outcome.EMBEDDED
    return rec
