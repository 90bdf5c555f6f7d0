"""Exhaustive minor containment for small patterns.

A pattern ``H`` is a minor of ``G`` iff ``G`` has pairwise disjoint connected
vertex sets ("branch sets"), one per vertex of ``H``, with a ``G``-edge
between the sets of every ``H``-edge. When ``H`` is connected it is enough to
search a single component of ``G`` and to partition *all* of its vertices:
unused vertices can always be absorbed into an adjacent branch set.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import Budget, BudgetExceeded
from .graph import Graph, complete_graph, delete_edge


@dataclass(frozen=True)
class MinorWitness:
    """Branch sets of a minor model: pattern vertex -> host vertex set."""

    branch_sets: dict[int, frozenset[int]]

    def __hash__(self):
        return hash(tuple(sorted((k, tuple(sorted(v))) for k, v in self.branch_sets.items())))

    def as_lists(self) -> dict[int, list[int]]:
        return {k: sorted(v) for k, v in sorted(self.branch_sets.items())}

    def validate(self, host: Graph, pattern: Graph) -> bool:
        """Independent check of every model condition."""
        if set(self.branch_sets) != set(pattern.vertices):
            return False
        seen: set[int] = set()
        for bs in self.branch_sets.values():
            if not bs or seen & bs or not all(1 <= v <= host.n for v in bs):
                return False
            if not host.is_connected_set(bs):
                return False
            seen |= bs
        for a, b in pattern.edges:
            A, B = self.branch_sets[a], self.branch_sets[b]
            if not any(host.has_edge(u, v) for u in A for v in B):
                return False
        return True


@dataclass(frozen=True)
class MinorProfile:
    k4_free: bool
    k5e_free: bool
    k5_free: bool

    def as_dict(self) -> dict[str, bool]:
        return {"k4_free": self.k4_free, "k5e_free": self.k5e_free, "k5_free": self.k5_free}


def _vertex_order(host: Graph, verts: list[int]) -> list[int]:
    """Degree-descending then label, re-threaded so each vertex (after the
    first) is adjacent to an earlier one where possible."""
    pref = sorted(verts, key=lambda v: (-host.degree(v), v))
    rank = {v: i for i, v in enumerate(pref)}
    vs = set(verts)
    order = [pref[0]]
    placed = {pref[0]}
    while len(order) < len(pref):
        frontier = [w for u in order for w in host.adjacency[u] if w in vs and w not in placed]
        nxt = min(frontier, key=rank.__getitem__) if frontier else next(v for v in pref if v not in placed)
        order.append(nxt)
        placed.add(nxt)
    return order


def _embed_pattern(quot: list[set[int]], pattern: Graph) -> tuple[int, ...] | None:
    """Injective map pattern vertex -> block with pattern edges present in the quotient."""
    k = pattern.n
    padj = pattern.adjacency
    pverts = sorted(pattern.vertices, key=lambda v: -len(padj[v]))
    assign: dict[int, int] = {}
    used = [False] * len(quot)

    def go(i: int) -> bool:
        if i == k:
            return True
        p = pverts[i]
        for b in range(len(quot)):
            if used[b] or len(quot[b]) < len(padj[p]):
                continue
            if all(assign[q] in quot[b] for q in padj[p] if q in assign):
                assign[p] = b
                used[b] = True
                if go(i + 1):
                    return True
                used[b] = False
                del assign[p]
        return False

    if go(0):
        return tuple(assign[p] for p in pattern.vertices)
    return None


def _search_component(host: Graph, comp: list[int], pattern: Graph, budget: Budget,
                      allow_unused: bool) -> MinorWitness | None:
    k = pattern.n
    order = _vertex_order(host, comp)
    pos = {v: i for i, v in enumerate(order)}
    adj = host.adjacency
    n = len(order)
    later_nbr = [any(pos.get(w, -1) > i for w in adj[v]) for i, v in enumerate(order)]
    blocks: list[list[int]] = []
    block_of: dict[int, int] = {}
    need_edges = pattern.m

    def leaf() -> MinorWitness | None:
        if len(blocks) != k:
            return None
        for b in blocks:
            if not host.is_connected_set(b):
                return None
        quot: list[set[int]] = [set() for _ in blocks]
        for u, v in host.edges:
            bu, bv = block_of.get(u), block_of.get(v)
            if bu is not None and bv is not None and bu != bv:
                quot[bu].add(bv)
                quot[bv].add(bu)
        if sum(len(q) for q in quot) // 2 < need_edges:
            return None
        emb = _embed_pattern(quot, pattern)
        if emb is None:
            return None
        return MinorWitness({p: frozenset(blocks[b]) for p, b in zip(pattern.vertices, emb)})

    def go(i: int) -> MinorWitness | None:
        budget.tick()
        if k - len(blocks) > n - i:
            return None
        if i == n:
            return leaf()
        v = order[i]
        for b in range(len(blocks)):
            blk = blocks[b]
            if not any(u in adj[v] for u in blk) and not later_nbr[i]:
                continue
            blk.append(v)
            block_of[v] = b
            found = go(i + 1)
            blk.pop()
            del block_of[v]
            if found:
                return found
        if len(blocks) < k:
            blocks.append([v])
            block_of[v] = len(blocks) - 1
            found = go(i + 1)
            blocks.pop()
            del block_of[v]
            if found:
                return found
        if allow_unused:
            return go(i + 1)
        return None

    return go(0)


def has_minor(host: Graph, pattern: Graph, budget: Budget | int | None = None) -> MinorWitness | None:
    """Return a minor model of ``pattern`` in ``host``, or ``None`` if none exists.

    Raises :class:`BudgetExceeded` if the node budget runs out first.
    """
    budget = Budget.coerce(budget, "minor search")
    if pattern.n == 0:
        return MinorWitness({})
    if pattern.n > host.n or pattern.m > host.m:
        return None
    connected = len(pattern.components()) == 1
    if connected:
        for comp in host.components():
            if len(comp) < pattern.n:
                continue
            w = _search_component(host, comp, pattern, budget, allow_unused=False)
            if w is not None:
                return _shrink(w, host, pattern)
        return None
    w = _search_component(host, list(host.vertices), pattern, budget, allow_unused=True)
    return None if w is None else _shrink(w, host, pattern)


def _shrink(w: MinorWitness, host: Graph, pattern: Graph) -> MinorWitness:
    """Greedily drop vertices from branch sets while the model stays valid."""
    sets = dict(w.branch_sets)
    for p in sorted(sets):
        for v in sorted(sets[p], reverse=True):
            if len(sets[p]) == 1:
                break
            trial = dict(sets)
            trial[p] = sets[p] - {v}
            if MinorWitness(trial).validate(host, pattern):
                sets = trial
    return MinorWitness(sets)


K4 = complete_graph(4)
K5 = complete_graph(5)
K5_MINUS_E = delete_edge(K5, K5.m - 1)[0]


@lru_cache(maxsize=4096)
def _cached_minor(host: Graph, pattern: Graph) -> MinorWitness | None:
    return has_minor(host, pattern)


def find_minor(host: Graph, pattern: Graph, budget: Budget | int | None = None) -> MinorWitness | None:
    """:func:`has_minor` with an unbudgeted-result cache."""
    if budget is None:
        return _cached_minor(host, pattern)
    return has_minor(host, pattern, budget)


def minor_profile(g: Graph, budget: Budget | int | None = None) -> MinorProfile:
    budget = Budget.coerce(budget, "minor search") if budget is not None else None
    k5_free = find_minor(g, K5, budget) is None
    if not k5_free:
        return MinorProfile(False, False, False)
    k5e_free = find_minor(g, K5_MINUS_E, budget) is None
    if not k5e_free:
        return MinorProfile(False, False, True)
    k4_free = find_minor(g, K4, budget) is None
    return MinorProfile(k4_free, True, True)


def is_k5_minor_free(g: Graph) -> bool:
    return find_minor(g, K5) is None


def is_k4_minor_free(g: Graph) -> bool:
    return find_minor(g, K4) is None


__all__ = [
    "BudgetExceeded",
    "MinorProfile",
    "MinorWitness",
    "find_minor",
    "has_minor",
    "is_k4_minor_free",
    "is_k5_minor_free",
    "minor_profile",
]
