"""Canonical simple graphs, minor-producing operations and cycle enumeration.

Vertices are ``1..n``. Edges are pairs ``(u, v)`` with ``u < v`` kept in
lexicographic order; the position of an edge in that list is its index and
every edge-indexed vector in the package uses this order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import GraphFormatError, PreconditionError

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``1..n`` with canonical edge order."""

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise PreconditionError(f"vertex count must be >= 0, got {self.n}")
        prev = None
        for e in self.edges:
            u, v = e
            if not (1 <= u < v <= self.n):
                raise PreconditionError(f"edge {e} is not a canonical pair in 1..{self.n}")
            if prev is not None and e <= prev:
                raise PreconditionError("edge list must be strictly increasing")
            prev = e

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        """Build a graph from any edge iterable; sorts, dedupes, rejects loops."""
        canon = set()
        for u, v in edges:
            if u == v:
                raise PreconditionError(f"loop at vertex {u}")
            canon.add((min(u, v), max(u, v)))
        return cls(n, tuple(sorted(canon)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(s) for v, s in adj.items()}

    def index(self, u: int, v: int) -> int:
        """Index of the edge ``{u, v}``; raises ``KeyError`` if absent."""
        return self.edge_index[(min(u, v), max(u, v))]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_index

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def check_edge(self, e: int) -> Edge:
        if not 0 <= e < self.m:
            raise PreconditionError(f"edge index {e} out of range for {self.m} edges")
        return self.edges[e]

    def induced_subgraph(self, keep: Iterable[int]) -> tuple[Graph, dict[int, int]]:
        """Induced subgraph on ``keep``, relabelled densely in increasing order.

        Returns the subgraph and the map from old to new labels.
        """
        order = sorted(set(keep))
        relabel = {v: i + 1 for i, v in enumerate(order)}
        edges = [(relabel[u], relabel[v]) for u, v in self.edges if u in relabel and v in relabel]
        return Graph.from_edges(len(order), edges), relabel

    def remove_vertex(self, v: int) -> Graph:
        return self.induced_subgraph(w for w in self.vertices if w != v)[0]

    def add_edge(self, u: int, v: int) -> Graph:
        return Graph.from_edges(self.n, [*self.edges, (u, v)])

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by smallest vertex."""
        seen: set[int] = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected_set(self, verts: Iterable[int]) -> bool:
        verts = set(verts)
        if not verts:
            return False
        start = next(iter(verts))
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in self.adjacency[u]:
                if w in verts and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(verts)

    def is_clique(self, verts: Iterable[int]) -> bool:
        return all(self.has_edge(u, v) for u, v in combinations(sorted(set(verts)), 2))

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={[f'{u}{v}' if self.n < 10 else f'{u}-{v}' for u, v in self.edges]})"


@dataclass(frozen=True)
class Cycle:
    """A cycle given by its cyclic vertex sequence.

    ``edge_indices[i]`` is the index of the edge between ``vertices[i]`` and
    ``vertices[i + 1]`` (cyclically).
    """

    vertices: tuple[int, ...]
    edge_indices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edge_indices)


def _cycle(g: Graph, verts: Sequence[int]) -> Cycle:
    k = len(verts)
    return Cycle(tuple(verts), tuple(g.index(verts[i], verts[(i + 1) % k]) for i in range(k)))


def canonical_cycle(g: Graph, verts: Sequence[int]) -> Cycle:
    """Rotate/reflect so the smallest vertex is first and its smaller neighbour second."""
    verts = list(verts)
    i = verts.index(min(verts))
    verts = verts[i:] + verts[:i]
    if verts[-1] < verts[1]:
        verts = [verts[0]] + verts[:0:-1]
    return _cycle(g, verts)


# ---------------------------------------------------------------------------
# named graphs

def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(combinations(range(1, n + 1), 2)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise PreconditionError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def path_graph(n: int) -> Graph:
    if n < 1:
        raise PreconditionError(f"path needs n >= 1, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def wheel_graph(n: int) -> Graph:
    """``W_n``: the suspension of ``C_n`` (rim 1..n, hub n+1)."""
    return suspension(cycle_graph(n))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise PreconditionError(f"K_(a,b) needs a, b >= 1, got {a}, {b}")
    return Graph.from_edges(a + b, [(i, a + j) for i in range(1, a + 1) for j in range(1, b + 1)])


def prism_graph(k: int = 3) -> Graph:
    """``C_k x K_2``; the default is the triangular prism."""
    if k < 3:
        raise PreconditionError(f"prism needs k >= 3, got {k}")
    edges = []
    for i in range(1, k + 1):
        j = i % k + 1
        edges += [(i, j), (k + i, k + j), (i, k + i)]
    return Graph.from_edges(2 * k, edges)


V8_EDGES = ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (1, 8),
            (1, 5), (2, 6), (3, 7), (4, 8))


def v8_graph() -> Graph:
    return Graph.from_edges(8, V8_EDGES)


def grid_graph(r: int, c: int) -> Graph:
    if r < 1 or c < 1:
        raise PreconditionError(f"grid needs r, c >= 1, got {r}, {c}")
    label = lambda i, j: i * c + j + 1  # noqa: E731
    edges = []
    for i in range(r):
        for j in range(c):
            if j + 1 < c:
                edges.append((label(i, j), label(i, j + 1)))
            if i + 1 < r:
                edges.append((label(i, j), label(i + 1, j)))
    return Graph.from_edges(r * c, edges)


def empty_graph(n: int) -> Graph:
    return Graph(n, ())


_CATALOG = {
    "complete": (complete_graph, 1, 1),
    "cycle": (cycle_graph, 1, 1),
    "wheel": (wheel_graph, 1, 1),
    "bipartite": (complete_bipartite, 2, 2),
    "prism": (prism_graph, 0, 1),
    "v8": (v8_graph, 0, 0),
    "grid": (grid_graph, 2, 2),
    "path": (path_graph, 1, 1),
    "empty": (empty_graph, 1, 1),
}

_ALIASES = {
    "k": "complete", "c": "cycle", "w": "wheel", "kab": "bipartite",
    "complete-bipartite": "bipartite", "p": "path", "wagner": "v8",
}


def make_named(name: str, params: Sequence[int] = ()) -> Graph:
    """Build a catalog graph: complete, cycle, wheel, bipartite, prism, v8, grid, path, empty.

    Single-letter aliases ``K``, ``C``, ``W``, ``P`` are accepted, and
    ``KAB`` for the complete bipartite graph.
    """
    key = name.lower()
    key = _ALIASES.get(key, key)
    if key not in _CATALOG:
        raise PreconditionError(f"unknown graph name {name!r}")
    build, lo, hi = _CATALOG[key]
    params = [int(p) for p in params]
    if not lo <= len(params) <= hi:
        raise PreconditionError(f"{key} takes {lo}..{hi} integer parameters, got {len(params)}")
    if key == "complete" and params[0] < 1:
        raise PreconditionError(f"complete graph needs n >= 1, got {params[0]}")
    if key == "empty" and params[0] < 1:
        raise PreconditionError(f"empty graph needs n >= 1, got {params[0]}")
    return build(*params)


def parse_graph_name(text: str) -> Graph:
    """Parse compact names such as ``K5``, ``C7``, ``W4``, ``P3``, ``K3,3``,
    ``grid3x4``, ``prism``, ``V8`` and ``K5-e``."""
    import re

    s = text.strip()
    low = s.lower()
    if low in ("k5-e", "k5e", "k5\\e"):
        g = complete_graph(5)
        return delete_edge(g, 0)[0]
    if low in ("v8", "wagner"):
        return v8_graph()
    if low == "prism":
        return prism_graph()
    m = re.fullmatch(r"k(\d+),(\d+)", low)
    if m:
        return complete_bipartite(int(m[1]), int(m[2]))
    m = re.fullmatch(r"grid(\d+)x(\d+)", low)
    if m:
        return grid_graph(int(m[1]), int(m[2]))
    m = re.fullmatch(r"prism(\d+)", low)
    if m:
        return prism_graph(int(m[1]))
    m = re.fullmatch(r"([kcwp])(\d+)", low)
    if m:
        return make_named(m[1], [int(m[2])])
    raise PreconditionError(f"cannot parse graph name {text!r}")


# ---------------------------------------------------------------------------
# operations

def delete_edge(g: Graph, e: int) -> tuple[Graph, list[int | None]]:
    """Remove edge ``e``. Returns the new graph and the old-to-new index map
    (``None`` at the deleted position)."""
    g.check_edge(e)
    h = Graph(g.n, g.edges[:e] + g.edges[e + 1:])
    mapping: list[int | None] = [i if i < e else i - 1 for i in range(g.m)]
    mapping[e] = None
    return h, mapping


def contract_edge(g: Graph, e: int) -> Graph:
    """Identify the endpoints of edge ``e``, keeping the smaller label.

    Labels above the removed one shift down by one; parallel edges merge and
    the loop disappears.
    """
    keep, gone = g.check_edge(e)
    relabel = lambda w: keep if w == gone else (w - 1 if w > gone else w)  # noqa: E731
    edges = []
    for u, v in g.edges:
        a, b = relabel(u), relabel(v)
        if a != b:
            edges.append((a, b))
    return Graph.from_edges(g.n - 1, edges)


def suspension(g: Graph) -> Graph:
    """Add vertex ``n + 1`` adjacent to every vertex of ``g``."""
    apex = g.n + 1
    return Graph.from_edges(apex, [*g.edges, *((v, apex) for v in g.vertices)])


@dataclass(frozen=True)
class CliqueSumSpec:
    """Gluing data for a clique sum of ``g1`` and ``g2``.

    ``shared`` pairs a vertex of ``g1`` with a vertex of ``g2``; the shared
    vertices must form a clique of size 1..3 in both graphs. In the glued
    graph ``g1`` keeps its labels and the unshared vertices of ``g2`` follow
    as ``n1 + 1, n1 + 2, ...`` in increasing order.
    """

    g1: Graph
    g2: Graph
    shared: tuple[tuple[int, int], ...]
    map1: dict[int, int] = field(init=False, repr=False, compare=False)
    map2: dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        shared = tuple((int(v), int(w)) for v, w in self.shared)
        object.__setattr__(self, "shared", shared)
        s = len(shared)
        if not 1 <= s <= 3:
            raise PreconditionError(f"clique sums are supported for 1..3 shared vertices, got {s}")
        left = [v for v, _ in shared]
        right = [w for _, w in shared]
        if len(set(left)) != s or len(set(right)) != s:
            raise PreconditionError("shared vertex pairs must be distinct")
        if not all(1 <= v <= self.g1.n for v in left) or not all(1 <= w <= self.g2.n for w in right):
            raise PreconditionError("shared vertex out of range")
        if not self.g1.is_clique(left):
            raise PreconditionError(f"shared vertices {left} are not a clique of g1")
        if not self.g2.is_clique(right):
            raise PreconditionError(f"shared vertices {right} are not a clique of g2")
        object.__setattr__(self, "map1", {v: v for v in self.g1.vertices})
        map2 = {w: v for v, w in shared}
        nxt = self.g1.n + 1
        for w in self.g2.vertices:
            if w not in map2:
                map2[w] = nxt
                nxt += 1
        object.__setattr__(self, "map2", map2)

    @property
    def k(self) -> int:
        """The ``k`` of a ``k``-sum (one less than the number of shared vertices)."""
        return len(self.shared) - 1

    @cached_property
    def result(self) -> Graph:
        n = self.g1.n + self.g2.n - len(self.shared)
        edges = list(self.g1.edges)
        edges += [(self.map2[u], self.map2[v]) for u, v in self.g2.edges]
        return Graph.from_edges(n, edges)


def clique_sum(spec: CliqueSumSpec) -> Graph:
    return spec.result


# ---------------------------------------------------------------------------
# cycles

def induced_cycles(g: Graph) -> list[Cycle]:
    """All chordless cycles, each once, sorted by (length, vertex sequence)."""
    adj = g.adjacency
    found: list[tuple[int, ...]] = []

    def extend(path: list[int], on_path: set[int]):
        s = path[0]
        last = path[-1]
        interior = path[1:-1]
        for w in adj[last]:
            if w <= s or w in on_path:
                continue
            if any(w in adj[u] for u in interior):
                continue
            if s in adj[w]:
                # closes a cycle; keep the orientation with path[1] < w
                if len(path) >= 2 and path[1] < w:
                    found.append((*path, w))
                continue
            path.append(w)
            on_path.add(w)
            extend(path, on_path)
            path.pop()
            on_path.discard(w)

    for s in g.vertices:
        for v1 in adj[s]:
            if v1 > s:
                extend([s, v1], {s, v1})
    found.sort(key=lambda c: (len(c), c))
    return [_cycle(g, c) for c in found]


def cycles_through_edge(g: Graph, e: int) -> list[Cycle]:
    g.check_edge(e)
    return [c for c in induced_cycles(g) if e in c.edge_set]


def cycle_basis(g: Graph) -> list[Cycle]:
    """Fundamental cycles of a BFS spanning forest, one per non-tree edge."""
    parent: dict[int, int | None] = {}
    depth: dict[int, int] = {}
    tree: set[Edge] = set()
    for root in g.vertices:
        if root in parent:
            continue
        parent[root] = None
        depth[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(g.adjacency[u]):
                if w not in parent:
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    tree.add((min(u, w), max(u, w)))
                    queue.append(w)
    basis = []
    for u, v in g.edges:
        if (u, v) in tree:
            continue
        up, down = [u], [v]
        a, b = u, v
        while depth[a] > depth[b]:
            a = parent[a]
            up.append(a)
        while depth[b] > depth[a]:
            b = parent[b]
            down.append(b)
        while a != b:
            a, b = parent[a], parent[b]
            up.append(a)
            down.append(b)
        verts = up + down[-2::-1]
        basis.append(canonical_cycle(g, verts))
    return basis


# ---------------------------------------------------------------------------
# text format

def parse_graph(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` lines are comments."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line))
    if not rows:
        raise GraphFormatError("empty graph file", 0)
    lineno, header = rows[0]
    try:
        n, m = (int(t) for t in header.split())
    except ValueError:
        raise GraphFormatError(f"expected 'n m' header, got {header!r}", lineno) from None
    if n < 0 or m < 0:
        raise GraphFormatError("negative size in header", lineno)
    body = rows[1:]
    if len(body) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(body)}", lineno)
    edges = []
    for lineno, line in body:
        parts = line.split()
        try:
            u, v = (int(t) for t in parts)
        except ValueError:
            raise GraphFormatError(f"expected 'u v', got {line!r}", lineno) from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"vertex out of range 1..{n}", lineno)
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", lineno)
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path) as fh:
        try:
            return parse_graph(fh.read())
        except GraphFormatError as exc:
            exc.path = str(path)
            raise


def write_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_graph(g))
