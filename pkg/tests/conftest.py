"""Shared brute-force oracles and graph generators for the test suite.

Everything in here is deliberately naive and independent of the code paths
under test.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations, permutations

import pytest

from cutpoly.graph import Graph, contract_edge


def canonical_form(g: Graph) -> tuple:
    """Isomorphism-invariant key by minimising over all relabellings."""
    best = None
    for perm in permutations(range(1, g.n + 1)):
        key = tuple(sorted(tuple(sorted((perm[u - 1], perm[v - 1]))) for u, v in g.edges))
        if best is None or key < best:
            best = key
    return (g.n, best)


def isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and canonical_form(g) == canonical_form(h)


@lru_cache(maxsize=None)
def graphs_up_to_iso(n: int) -> tuple[Graph, ...]:
    """All simple graphs on exactly ``n`` vertices, one per isomorphism class."""
    all_edges = list(combinations(range(1, n + 1), 2))
    seen = {}
    for mask in range(1 << len(all_edges)):
        g = Graph(n, tuple(e for i, e in enumerate(all_edges) if mask >> i & 1))
        key = canonical_form(g)
        if key not in seen:
            seen[key] = g
    return tuple(seen.values())


def random_graph(rng: random.Random, n_lo: int = 2, n_hi: int = 6, p: float | None = None) -> Graph:
    n = rng.randint(n_lo, n_hi)
    p = rng.uniform(0.3, 0.9) if p is None else p
    return Graph.from_edges(n, [e for e in combinations(range(1, n + 1), 2) if rng.random() < p])


def brute_induced_cycles(g: Graph) -> set[frozenset[int]]:
    """Vertex sets inducing a cycle: connected, every vertex of degree 2, size >= 3."""
    out = set()
    for k in range(3, g.n + 1):
        for S in combinations(g.vertices, k):
            Ss = set(S)
            if all(sum(1 for w in g.adjacency[v] if w in Ss) == 2 for v in S) and g.is_connected_set(S):
                out.add(frozenset(S))
    return out


def brute_all_cycles(g: Graph) -> list[frozenset[int]]:
    """Edge sets of all simple cycles, by enumerating vertex orderings."""
    cycles = set()
    for k in range(3, g.n + 1):
        for S in combinations(g.vertices, k):
            first, rest = S[0], S[1:]
            for perm in permutations(rest):
                seq = (first, *perm)
                if all(g.has_edge(seq[i], seq[(i + 1) % k]) for i in range(k)):
                    cycles.add(frozenset(g.index(seq[i], seq[(i + 1) % k]) for i in range(k)))
    return list(cycles)


def brute_has_minor(host: Graph, pattern: Graph) -> bool:
    """Minor test by exhausting edge-contraction sequences down to the pattern size.

    Valid for connected host and connected pattern: vertices outside a model
    can always be contracted into it, so contracting to exactly ``pattern.n``
    vertices and looking for the pattern as a subgraph is complete.
    """
    k = pattern.n
    perms = [p for p in permutations(range(1, k + 1))]
    pedges = pattern.edges

    def contains(h: Graph) -> bool:
        if h.m < pattern.m:
            return False
        return any(all(h.has_edge(p[u - 1], p[v - 1]) for u, v in pedges) for p in perms)

    seen = set()
    stack = [host]
    while stack:
        h = stack.pop()
        if h.n == k:
            if contains(h):
                return True
            continue
        for e in range(h.m):
            c = contract_edge(h, e)
            if c.edges not in seen:
                seen.add(c.edges)
                stack.append(c)
    return False


def random_shores(rng: random.Random, n: int, count: int) -> list[frozenset[int]]:
    return [frozenset(v for v in range(1, n + 1) if rng.random() < 0.5) for _ in range(count)]


@pytest.fixture
def rng():
    return random.Random(20241016)


ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line for an acceptance criterion."""
    lines = request.config.stash[ACCEPTANCE_KEY]

    def record(number: int, ok: bool, detail: str) -> bool:
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
