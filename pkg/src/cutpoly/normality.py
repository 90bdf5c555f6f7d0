"""Semigroup membership, hole search and normality verdicts.

A *hole* of degree ``alpha`` is an integer point ``(x, alpha)`` in the lattice
and the cone of the homogenized cut vectors that is not a sum of ``alpha``
cut vectors. The polytope is normal iff there are none; degrees up to
``|E| - 1`` suffice to certify this.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .cutlattice import (
    HomPoint,
    cut_generators,
    has_k5_minor,
    hull_inequalities,
    in_cone,
    in_cone_nonhomogeneous,
    in_lattice,
    in_lattice_nonhomogeneous,
    pruning_system,
    _basis_supports,
    _k5_witness,
)
from .errors import Budget, BudgetExceeded, PreconditionError
from .graph import Graph
from .minors import K4, K5, K5_MINUS_E, MinorWitness, find_minor

NORMAL_CERTIFIED = "normal_certified"
NORMAL_UP_TO = "normal_up_to_degree"
NOT_NORMAL = "not_normal"
UNKNOWN = "unknown"

SUMSET_LIMIT = 20_000_000


@dataclass(frozen=True)
class Decomposition:
    """Generator indices (into :func:`cut_generators`) summing to a point."""

    parts: tuple[int, ...]
    degree: int

    def total(self, g: Graph) -> HomPoint:
        gens = cut_generators(g).generators
        x = [0] * g.m
        for i in self.parts:
            for e, v in enumerate(gens[i].coords):
                x[e] += v
        return HomPoint(tuple(x), len(self.parts))

    def shores(self, g: Graph) -> list[frozenset[int]]:
        gens = cut_generators(g).generators
        return [gens[i].shore for i in self.parts]


@dataclass(frozen=True)
class Hole:
    point: HomPoint
    lattice_ok: bool = True
    cone_ok: bool = True
    decomposable: bool = False

    def reverify(self, g: Graph, seed: int | None = 1) -> bool:
        """Recheck all three flags with the independent oracles."""
        return (in_lattice(g, self.point) and in_cone(g, self.point)
                and decompose(g, self.point, seed=seed) is None)


@dataclass
class NormalityVerdict:
    status: str
    rules_fired: list[str] = field(default_factory=list)
    search_degree: int = 0
    hole: Hole | None = None
    minor_witness: MinorWitness | None = None

    @property
    def is_normal(self) -> bool | None:
        if self.status == NORMAL_CERTIFIED:
            return True
        if self.status == NOT_NORMAL:
            return False
        return None

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "rules": list(self.rules_fired),
            "search_degree": self.search_degree,
            "hole": self.hole.point.as_dict() if self.hole else None,
            "minor_witness": ({str(k): v for k, v in self.minor_witness.as_lists().items()}
                              if self.minor_witness else None),
        }


@dataclass(frozen=True)
class HilbertVerdict:
    status: str  # "no_violation_up_to" | "violation"
    bound: int
    witness: tuple[int, ...] | None = None

    def as_dict(self) -> dict:
        return {"status": self.status, "bound": self.bound,
                "witness": list(self.witness) if self.witness is not None else None}


# ---------------------------------------------------------------------------
# decomposition

def _gen_rows(g: Graph) -> np.ndarray:
    return cut_generators(g).matrix()


@lru_cache(maxsize=128)
def _system(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    return pruning_system(g)


def decompose(g: Graph, p: HomPoint, budget: Budget | int | None = None,
              seed: int | None = None) -> Decomposition | None:
    """Write ``p`` as a sum of ``p.alpha`` homogenized cut vectors, or return
    ``None`` if that is impossible.

    Exhaustive depth-first search; every remainder must stay inside the box
    and the cone of its residual degree, and failed remainders are memoized.
    ``seed`` shuffles the generator order (an independent search path).
    """
    budget = Budget.coerce(budget, "decomposition")
    if len(p.x) != g.m:
        raise PreconditionError(f"point has {len(p.x)} coordinates, graph has {g.m} edges")
    x = np.array([int(v) for v in p.x], dtype=np.int64)
    if any(int(v) != v for v in p.x):
        return None
    alpha = p.alpha
    G = _gen_rows(g)
    order = list(range(len(G)))
    if seed is not None:
        random.Random(seed).shuffle(order)
    A, b = _system(g)
    failed: set[tuple[bytes, int]] = set()

    def feasible(r: np.ndarray, d: int) -> bool:
        if r.size and (r.min() < 0 or r.max() > d):
            return False
        return not A.size or bool(np.all(A @ r <= d * b))

    if not feasible(x, alpha) or not in_lattice_nonhomogeneous(g, p.x):
        return None

    def go(r: np.ndarray, d: int) -> list[int] | None:
        if d == 0:
            return [] if not r.any() else None
        key = (r.tobytes(), d)
        if key in failed:
            return None
        budget.tick()
        for i in order:
            nr = r - G[i]
            if feasible(nr, d - 1):
                rest = go(nr, d - 1)
                if rest is not None:
                    rest.append(i)
                    return rest
        failed.add(key)
        return None

    parts = go(x, alpha)
    if parts is None:
        return None
    return Decomposition(tuple(sorted(parts)), alpha)


# ---------------------------------------------------------------------------
# lattice-point enumeration

class _Scanner:
    """Lexicographic enumeration of ``x in {0..top}^m`` with ``A x <= rhs`` and
    even weight on every cycle-basis cycle.

    A prefix is cut as soon as some inequality cannot be met even with the
    most favourable values for the unassigned coordinates.
    """

    def __init__(self, g: Graph, A: np.ndarray, rhs: np.ndarray, top: int, budget: Budget):
        m = g.m
        self.m, self.top, self.budget = m, top, budget
        self.cols = [A[:, j].copy() for j in range(m)]
        neg = np.minimum(A, 0) * top
        # thr[d]: bound on the partial sum once coordinates < d are fixed
        tail = np.zeros((m + 1, A.shape[0]), dtype=np.int64)
        for d in range(m - 1, -1, -1):
            tail[d] = tail[d + 1] + neg[:, d]
        self.thr = rhs[None, :] - tail
        closing: list[list[tuple[int, ...]]] = [[] for _ in range(m)]
        for sup in _basis_supports(g):
            last = max(sup)
            closing[last].append(tuple(e for e in sup if e != last))
        self.closing = closing
        self.vals = np.arange(top + 1, dtype=np.int64)
        self.nrows = A.shape[0]

    def points(self, prefix: Sequence[int] = ()) -> Iterator[tuple[int, ...]]:
        m = self.m
        x = [0] * m
        partial = np.zeros(self.nrows, dtype=np.int64)
        for d, v in enumerate(prefix):
            ok, partial = self._step(x, d, partial, [v])
            if not ok:
                return
            x[d] = v
        if len(prefix) == m:
            yield tuple(x)
            return
        yield from self._rec(x, len(prefix), partial)

    def _allowed(self, x: list[int], d: int) -> np.ndarray:
        vals = self.vals
        for sup in self.closing[d]:
            par = sum(x[e] for e in sup) & 1
            vals = vals[(vals & 1) == par]
        return vals

    def _step(self, x, d, partial, vals):
        vals = np.asarray(vals, dtype=np.int64)
        allowed = self._allowed(x, d)
        vals = vals[np.isin(vals, allowed)]
        if not vals.size:
            return False, partial
        P = partial[None, :] + vals[:, None] * self.cols[d][None, :]
        ok = np.all(P <= self.thr[d + 1][None, :], axis=1)
        if not ok[0]:
            return False, partial
        return True, P[0]

    def _rec(self, x: list[int], d: int, partial: np.ndarray) -> Iterator[tuple[int, ...]]:
        self.budget.tick()
        vals = self._allowed(x, d)
        if not vals.size:
            return
        P = partial[None, :] + vals[:, None] * self.cols[d][None, :]
        ok = np.all(P <= self.thr[d + 1][None, :], axis=1)
        last = d == self.m - 1
        for k in np.flatnonzero(ok):
            x[d] = int(vals[k])
            if last:
                yield tuple(x)
            else:
                yield from self._rec(x, d + 1, P[k])
        x[d] = 0


def _sumset(g: Graph, alpha: int, base: int) -> set[int] | None:
    """Integer keys of all sums of ``alpha`` cut vectors (``None`` if too large)."""
    w = [base ** e for e in range(g.m)]
    keys = sorted({sum(wi for wi, c in zip(w, gen.coords) if c) for gen in cut_generators(g).generators})
    cur = {0}
    for _ in range(alpha):
        if len(cur) * len(keys) > SUMSET_LIMIT:
            return None
        cur = {a + k for a in cur for k in keys}
    return cur


@lru_cache(maxsize=16)
def _cached_sumset(g: Graph, alpha: int) -> set[int] | None:
    return _sumset(g, alpha, alpha + 1)


def _scan_block(g: Graph, alpha: int, prefix: tuple[int, ...], limit: int | None,
                budget: Budget | None = None) -> tuple[tuple[int, ...] | None, int]:
    """First hole of degree ``alpha`` whose leading coordinates equal ``prefix``."""
    budget = budget if budget is not None else Budget(limit, "hole search")
    start = budget.used
    A, b = _system(g)
    scanner = _Scanner(g, A, alpha * b, alpha, budget)
    dec = _cached_sumset(g, alpha)
    base = alpha + 1
    w = [base ** e for e in range(g.m)]
    for x in scanner.points(prefix):
        if dec is not None:
            if sum(wi * v for wi, v in zip(w, x)) in dec:
                continue
        if decompose(g, HomPoint(x, alpha), budget) is None:
            return x, budget.used - start
    return None, budget.used - start


def _scan_degree(g: Graph, alpha: int, budget: Budget, n_jobs: int) -> tuple[int, ...] | None:
    if g.m == 0:
        return None
    if n_jobs <= 1 or g.m < 2:
        return _scan_block(g, alpha, (), budget.limit, budget)[0]
    prefixes = [(a, c) for a in range(alpha + 1) for c in range(alpha + 1)]
    remaining = None if budget.limit is None else max(budget.limit - budget.used, 0)
    import multiprocessing as mp

    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else None
    with ProcessPoolExecutor(max_workers=n_jobs, mp_context=ctx) as pool:
        futs = [pool.submit(_scan_block, g, alpha, pre, remaining) for pre in prefixes]
        results = [f.result() for f in futs]
    # scan-order-minimal hole wins regardless of worker count
    for hole, used in results:
        budget.tick(used)
        if hole is not None:
            return hole
    return None


def _resolve_jobs(n_jobs: int | None) -> int:
    if n_jobs is None or n_jobs <= 0:
        return os.cpu_count() or 1
    return n_jobs


def _holes_by_degree(g: Graph, max_degree: int, budget: Budget, n_jobs: int):
    for alpha in range(2, max_degree + 1):
        yield alpha, _scan_degree(g, alpha, budget, n_jobs)


def find_hole(g: Graph, max_degree: int, budget: Budget | int | None = None,
              n_jobs: int = 1) -> Hole | None:
    """First hole in scan order (degree ascending, then lexicographic ``x``)
    up to ``max_degree``, or ``None``."""
    if max_degree < 2:
        raise PreconditionError("max_degree must be >= 2")
    budget = Budget.coerce(budget, "hole search")
    for alpha, x in _holes_by_degree(g, max_degree, budget, _resolve_jobs(n_jobs)):
        if x is not None:
            return Hole(HomPoint(x, alpha))
    return None


def verify_normality(g: Graph, max_degree: int | None = None, full: bool = False,
                     budget: Budget | int | None = None, n_jobs: int = 1) -> NormalityVerdict:
    """Bounded (``max_degree``) or full (degree ``|E| - 1``) hole search."""
    if full:
        top = g.m - 1
    elif max_degree is None:
        raise PreconditionError("give max_degree or full=True")
    else:
        top = max_degree
    budget = Budget.coerce(budget, "hole search")
    done = 1 if g.m else 0
    try:
        for alpha, x in _holes_by_degree(g, top, budget, _resolve_jobs(n_jobs)):
            if x is not None:
                return NormalityVerdict(NOT_NORMAL, ["hole-search"], alpha, Hole(HomPoint(x, alpha)))
            done = alpha
    except BudgetExceeded:
        return NormalityVerdict(UNKNOWN, ["hole-search"], done)
    done = max(done, top)
    if full:
        return NormalityVerdict(NORMAL_CERTIFIED, ["full-degree-search"], done)
    return NormalityVerdict(NORMAL_UP_TO, ["hole-search"], done)


# ---------------------------------------------------------------------------
# rule-based classification

RULE_K5 = "k5-minor"
RULE_NO_K5E = "no-k5-minus-e-minor"
RULE_APEX = "apex-over-k4-minor-free"
RULE_SUSPENSION = "suspension-of-K4-minor-free"
RULE_CLIQUE_SUM = "clique-sum"


def _k4_free(g: Graph, budget) -> bool:
    return find_minor(g, K4, budget) is None


def _clique_separation(g: Graph) -> tuple[list[int], list[int], list[int]] | None:
    """First clique separator of size 0..3 (by size, then lexicographic) with
    the two vertex sets it splits the graph into."""
    for size in range(0, 4):
        for S in combinations(g.vertices, size):
            if not g.is_clique(S):
                continue
            rest = g.induced_subgraph(v for v in g.vertices if v not in S)
            h, relabel = rest
            comps = h.components()
            if len(comps) < 2:
                continue
            back = {new: old for old, new in relabel.items()}
            first = [back[v] for v in comps[0]]
            others = [back[v] for c in comps[1:] for v in c]
            return list(S), first, others
    return None


def classify_normality(g: Graph, budget: Budget | int | None = None) -> NormalityVerdict:
    """Decide normality from minor structure alone, recording the rules used.

    Rule order: a ``K5`` minor gives ``not_normal``; otherwise every positive
    rule among no-``K5``-minus-edge, apex-over-``K4``-free and
    suspension-of-``K4``-free is evaluated and recorded; if none applies the
    graph is split along a clique separator of at most three vertices and the
    parts are classified recursively.
    """
    budget = Budget.coerce(budget, "minor search") if budget is not None else None
    try:
        return _classify(g, budget)
    except BudgetExceeded:
        return NormalityVerdict(UNKNOWN, ["budget-exceeded"])


def _classify(g: Graph, budget) -> NormalityVerdict:
    w = _k5_witness(g) if budget is None else find_minor(g, K5, budget)
    if w is not None:
        return NormalityVerdict(NOT_NORMAL, [RULE_K5], minor_witness=w)
    rules = []
    if find_minor(g, K5_MINUS_E, budget) is None:
        rules.append(RULE_NO_K5E)
    apex = [v for v in g.vertices if _k4_free(g.remove_vertex(v), budget)]
    if apex:
        rules.append(RULE_APEX)
    if any(g.degree(v) == g.n - 1 for v in apex):
        rules.append(RULE_SUSPENSION)
    if rules:
        return NormalityVerdict(NORMAL_CERTIFIED, rules)
    sep = _clique_separation(g)
    if sep is None:
        return NormalityVerdict(UNKNOWN, [])
    S, first, others = sep
    parts = [g.induced_subgraph(S + first)[0], g.induced_subgraph(S + others)[0]]
    verdicts = [_classify(h, budget) for h in parts]
    rules = [RULE_CLIQUE_SUM]
    for v in verdicts:
        rules += [r for r in v.rules_fired if r not in rules]
    if all(v.status == NORMAL_CERTIFIED for v in verdicts):
        return NormalityVerdict(NORMAL_CERTIFIED, rules)
    if any(v.status == NOT_NORMAL for v in verdicts):
        return NormalityVerdict(NOT_NORMAL, rules)
    return NormalityVerdict(UNKNOWN, rules)


# ---------------------------------------------------------------------------
# Hilbert basis (nonhomogeneous) check

def _decomposable_in_box(g: Graph, cap: int) -> set[tuple[int, ...]]:
    """Every nonnegative integer combination of cut vectors inside ``{0..cap}^E``."""
    gens = [c.coords for c in cut_generators(g).generators if any(c.coords)]
    seen = {tuple([0] * g.m)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for a in gens:
                q = tuple(u + v for u, v in zip(p, a))
                if max(q) <= cap and q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def decompose_nonhomogeneous(g: Graph, x: Sequence[int], budget: Budget | int | None = None) -> list[int] | None:
    """Nonnegative integer combination of cut vectors equal to ``x`` (generator
    indices with repetition), or ``None``. Multiplicities are unbounded."""
    budget = Budget.coerce(budget, "decomposition")
    G = _gen_rows(g)
    nz = [i for i in range(len(G)) if G[i].any()]
    failed: set[bytes] = set()

    def go(r: np.ndarray, start: int) -> list[int] | None:
        if not r.any():
            return []
        key = r.tobytes() + start.to_bytes(4, "little")
        if key in failed:
            return None
        budget.tick()
        for k in range(start, len(nz)):
            nr = r - G[nz[k]]
            if nr.min() >= 0:
                rest = go(nr, k)
                if rest is not None:
                    rest.append(nz[k])
                    return rest
        failed.add(key)
        return None

    x = np.array([int(v) for v in x], dtype=np.int64)
    if x.size and x.min() < 0:
        return None
    res = go(x, 0)
    return None if res is None else sorted(res)


def hilbert_check(g: Graph, max_degree: int, budget: Budget | int | None = None) -> HilbertVerdict:
    """Search ``{0..max_degree}^E`` for a lattice point of the cut cone that is
    not a nonnegative integer combination of cut vectors."""
    if max_degree < 2:
        raise PreconditionError("max_degree must be >= 2")
    budget = Budget.coerce(budget, "hilbert search")
    cap = max_degree
    if g.m == 0:
        return HilbertVerdict("no_violation_up_to", cap)
    A, _ = hull_inequalities(g, False)
    scanner = _Scanner(g, A, np.zeros(A.shape[0], dtype=np.int64), cap, budget)
    good = _decomposable_in_box(g, cap)
    for x in scanner.points():
        if x in good:
            continue
        # confirm with the independent oracles before reporting
        if (in_lattice_nonhomogeneous(g, x) and in_cone_nonhomogeneous(g, x)
                and decompose_nonhomogeneous(g, x, budget) is None):
            return HilbertVerdict("violation", cap, x)
    return HilbertVerdict("no_violation_up_to", cap)


__all__ = [
    "Decomposition",
    "HilbertVerdict",
    "Hole",
    "NormalityVerdict",
    "classify_normality",
    "decompose",
    "decompose_nonhomogeneous",
    "find_hole",
    "hilbert_check",
    "verify_normality",
    "has_k5_minor",
]
