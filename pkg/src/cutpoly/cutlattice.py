"""Cut semimetrics and the membership oracles for the lattice and cone they span.

Homogeneous points are pairs ``(x, alpha)`` standing for the vector
``(x, alpha)`` in ``Z^E x Z``; the cut generators are homogenized with a
trailing ``1``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import K5MinorError, PreconditionError
from .exact import cone_facets, feasible_nonneg, hermite_normal_form, in_row_lattice
from .graph import Cycle, Graph, cycle_basis, induced_cycles
from .minors import K5, find_minor

MAX_GENERATOR_VERTICES = 16


@dataclass(frozen=True)
class CutVector:
    coords: tuple[int, ...]
    shore: frozenset[int]


@dataclass(frozen=True)
class CutBasis:
    """All ``2^(n-1)`` cut vectors of ``graph``, zero vector first."""

    graph: Graph
    generators: tuple[CutVector, ...]

    def __len__(self) -> int:
        return len(self.generators)

    def matrix(self) -> np.ndarray:
        """Generators as rows of an ``N x |E|`` integer array."""
        return np.array([c.coords for c in self.generators], dtype=np.int64).reshape(len(self), self.graph.m)

    def index_of_shore(self, shore: Iterable[int]) -> int:
        return _shore_index(self.graph.n, canonical_shore(self.graph.n, shore))


@dataclass(frozen=True)
class HomPoint:
    x: tuple
    alpha: int

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        if self.alpha < 0:
            raise PreconditionError(f"degree must be >= 0, got {self.alpha}")

    def as_dict(self) -> dict:
        return {"x": [_jsonable(v) for v in self.x], "alpha": self.alpha}


@dataclass(frozen=True)
class CycleInequality:
    """``x(F) - x(C \\ F) <= alpha * (|F| - 1)`` for a cycle ``C`` and odd ``F``."""

    cycle: Cycle
    odd_set: frozenset[int]

    def __post_init__(self):
        if not self.odd_set <= self.cycle.edge_set or len(self.odd_set) % 2 == 0:
            raise PreconditionError("odd_set must be an odd subset of the cycle's edges")

    @property
    def rhs(self) -> int:
        return len(self.odd_set) - 1

    def coefficients(self, m: int) -> list[int]:
        row = [0] * m
        for e in self.cycle.edge_indices:
            row[e] = 1 if e in self.odd_set else -1
        return row


@dataclass(frozen=True)
class FacetSystem:
    """Odd-cycle inequalities plus the box ``0 <= x_e <= alpha``.

    ``matrix() @ x <= alpha * rhs()`` is the homogenized system.
    """

    graph: Graph
    cycle_inequalities: tuple[CycleInequality, ...]

    @property
    def n_box(self) -> int:
        return 2 * self.graph.m

    def __len__(self) -> int:
        return len(self.cycle_inequalities) + self.n_box

    def matrix(self) -> np.ndarray:
        m = self.graph.m
        rows = [ci.coefficients(m) for ci in self.cycle_inequalities]
        for e in range(m):
            rows.append([-int(j == e) for j in range(m)])
            rows.append([int(j == e) for j in range(m)])
        return np.array(rows, dtype=np.int64).reshape(len(rows), m)

    def rhs(self) -> np.ndarray:
        vals = [ci.rhs for ci in self.cycle_inequalities] + [0, 1] * self.graph.m
        return np.array(vals, dtype=np.int64)


# ---------------------------------------------------------------------------
# generators

def canonical_shore(n: int, s: Iterable[int]) -> frozenset[int]:
    s = frozenset(s)
    bad = [v for v in s if not 1 <= v <= n]
    if bad:
        raise PreconditionError(f"vertices {sorted(bad)} out of range 1..{n}")
    if n and 1 not in s:
        s = frozenset(range(1, n + 1)) - s
    return s


def _shore_index(n: int, shore: frozenset[int]) -> int:
    # bit i set <=> vertex i + 2 is outside the shore
    return sum(1 << (v - 2) for v in range(2, n + 1) if v not in shore)


def cut_vector(g: Graph, s: Iterable[int]) -> CutVector:
    shore = canonical_shore(g.n, s)
    coords = tuple(int((u in shore) != (v in shore)) for u, v in g.edges)
    return CutVector(coords, shore)


@lru_cache(maxsize=256)
def _generators(g: Graph) -> CutBasis:
    n = g.n
    gens = []
    for c in range(1 << max(n - 1, 0)):
        shore = frozenset([1] + [v for v in range(2, n + 1) if not (c >> (v - 2)) & 1]) if n else frozenset()
        gens.append(cut_vector(g, shore))
    return CutBasis(g, tuple(gens))


def cut_generators(g: Graph, max_vertices: int = MAX_GENERATOR_VERTICES) -> CutBasis:
    """The canonical list of cut vectors: shores contain vertex 1 and are
    enumerated by a binary counter over vertices ``2..n`` (a set bit removes
    the vertex), so the first generator is ``delta(V) = 0``."""
    if g.n > max_vertices:
        raise PreconditionError(f"{g.n} vertices exceeds the generator limit of {max_vertices}")
    return _generators(g)


# ---------------------------------------------------------------------------
# lattice

def _check_dim(g: Graph, x: Sequence) -> None:
    if len(x) != g.m:
        raise PreconditionError(f"point has {len(x)} coordinates, graph has {g.m} edges")


@lru_cache(maxsize=256)
def _basis_supports(g: Graph) -> tuple[tuple[int, ...], ...]:
    return tuple(c.edge_indices for c in cycle_basis(g))


def in_lattice(g: Graph, p: HomPoint) -> bool:
    """``(x, alpha)`` lies in the lattice of the homogenized cuts iff every
    cycle has even ``x``-weight; checking a cycle basis suffices."""
    return in_lattice_nonhomogeneous(g, p.x)


def in_lattice_nonhomogeneous(g: Graph, x: Sequence[int]) -> bool:
    _check_dim(g, x)
    if any(Fraction(v).denominator != 1 for v in x):
        return False
    return all(sum(int(x[e]) for e in sup) % 2 == 0 for sup in _basis_supports(g))


@lru_cache(maxsize=256)
def _generator_hnf(g: Graph, homogeneous: bool) -> tuple[tuple[int, ...], ...]:
    rows = [c.coords + ((1,) if homogeneous else ()) for c in cut_generators(g).generators]
    return tuple(map(tuple, hermite_normal_form(rows)))


def in_lattice_reduction(g: Graph, p: HomPoint) -> bool:
    """Lattice membership by integer row reduction of the generator matrix.

    Independent of the cycle-parity test; used to cross-check it.
    """
    _check_dim(g, p.x)
    if any(Fraction(v).denominator != 1 for v in p.x):
        return False
    return in_row_lattice(_generator_hnf(g, True), [*map(int, p.x), p.alpha])


# ---------------------------------------------------------------------------
# cone

@lru_cache(maxsize=256)
def _k5_witness(g: Graph):
    return find_minor(g, K5)


def has_k5_minor(g: Graph) -> bool:
    return _k5_witness(g) is not None


@lru_cache(maxsize=256)
def facet_inequalities(g: Graph) -> FacetSystem:
    """Odd-cycle and box inequalities describing the cut polytope of a graph
    without a ``K5`` minor. Raises :class:`K5MinorError` otherwise."""
    w = _k5_witness(g)
    if w is not None:
        raise K5MinorError(w)
    ineqs = []
    for c in induced_cycles(g):
        for r in range(1, len(c) + 1, 2):
            for F in combinations(c.edge_indices, r):
                ineqs.append(CycleInequality(c, frozenset(F)))
    return FacetSystem(g, tuple(ineqs))


def _facet_check(g: Graph, x: Sequence, alpha) -> bool:
    fs = facet_inequalities(g)
    if any(v < 0 or v > alpha for v in x):
        return False
    for ci in fs.cycle_inequalities:
        lhs = sum(x[e] if e in ci.odd_set else -x[e] for e in ci.cycle.edge_indices)
        if lhs > alpha * ci.rhs:
            return False
    return True


def _lp_check(g: Graph, x: Sequence, alpha) -> bool:
    basis = cut_generators(g)
    N = len(basis)
    A = [[c.coords[e] for c in basis.generators] for e in range(g.m)]
    A.append([1] * N)
    return feasible_nonneg(A, [*x, alpha]) is not None


def in_cone(g: Graph, p: HomPoint, backend: str = "auto") -> bool:
    """Is ``(x, alpha)`` a nonnegative rational combination of the homogenized cuts?

    ``backend``: ``"facets"`` evaluates the odd-cycle system (graphs without a
    ``K5`` minor only), ``"lp"`` runs exact simplex feasibility over the
    generators, ``"auto"`` picks facets when they apply.
    """
    _check_dim(g, p.x)
    x = [Fraction(v) for v in p.x]
    if backend == "auto":
        backend = "lp" if has_k5_minor(g) else "facets"
    if backend == "facets":
        return _facet_check(g, x, p.alpha)
    if backend == "lp":
        return _lp_check(g, x, p.alpha)
    raise PreconditionError(f"unknown cone backend {backend!r}")


def in_polytope(g: Graph, x: Sequence) -> bool:
    """``x`` lies in the convex hull of the cut vectors."""
    _check_dim(g, x)
    return _lp_check(g, [Fraction(v) for v in x], 1)


def in_cone_nonhomogeneous(g: Graph, x: Sequence) -> bool:
    """``x`` is a nonnegative rational combination of the cut vectors (cut cone)."""
    _check_dim(g, x)
    x = [Fraction(v) for v in x]
    if any(v < 0 for v in x):
        return False
    basis = cut_generators(g)
    A = [[c.coords[e] for c in basis.generators] for e in range(g.m)]
    if not A:
        return True
    return feasible_nonneg(A, x) is not None


@lru_cache(maxsize=64)
def hull_inequalities(g: Graph, homogeneous: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Exact facet system ``A @ x <= alpha * b`` computed from the generators.

    With ``homogeneous=False`` this describes the cut cone instead and ``b`` is
    all zeros. Works for any graph small enough for double description.
    """
    basis = cut_generators(g)
    if homogeneous:
        gens = [c.coords + (1,) for c in basis.generators]
    else:
        gens = [c.coords for c in basis.generators]
    if g.m == 0:
        return np.zeros((0, 0), dtype=np.int64), np.zeros(0, dtype=np.int64)
    normals = cone_facets(gens)
    # a . (x, alpha) >= 0  <=>  (-a_x) . x <= alpha * a_alpha
    A = np.array([[-v for v in a[: g.m]] for a in normals], dtype=np.int64).reshape(len(normals), g.m)
    if homogeneous:
        b = np.array([a[g.m] for a in normals], dtype=np.int64)
    else:
        b = np.zeros(len(normals), dtype=np.int64)
    return A, b


def pruning_system(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Homogenized inequality system ``A @ x <= alpha * b`` exactly describing
    the cone over the cut polytope: odd-cycle inequalities when there is no
    ``K5`` minor, double description otherwise."""
    if has_k5_minor(g):
        return hull_inequalities(g, True)
    fs = facet_inequalities(g)
    return fs.matrix(), fs.rhs()


# ---------------------------------------------------------------------------
# point text format

_NUM = re.compile(r"^-?\d+(/\d+)?$")


def _parse_num(tok: str, allow_fraction: bool):
    if not _NUM.match(tok):
        raise PreconditionError(f"bad number {tok!r}")
    if "/" in tok:
        if not allow_fraction:
            raise PreconditionError(f"fraction {tok!r} not allowed here")
        return Fraction(tok)
    return int(tok)


def parse_point(text: str, allow_fraction: bool = False) -> tuple[list, int | None]:
    """Parse ``x_1 ... x_m ; alpha`` or the JSON form ``{"x": [...], "alpha": k}``.

    Returns ``(x, alpha)``; ``alpha`` is ``None`` when omitted.
    """
    s = text.strip()
    if s.startswith("{"):
        try:
            obj = json.loads(s)
        except json.JSONDecodeError as exc:
            raise PreconditionError(f"bad point JSON: {exc}") from None
        x = [_parse_num(str(v), allow_fraction) for v in obj.get("x", [])]
        alpha = obj.get("alpha")
        return x, (int(alpha) if alpha is not None else None)
    if ";" in s:
        left, right = s.split(";", 1)
        alpha = _parse_num(right.strip(), False)
    else:
        left, alpha = s, None
    x = [_parse_num(t, allow_fraction) for t in left.replace(",", " ").split()]
    return x, alpha


def format_point(x: Sequence, alpha: int | None = None) -> str:
    body = " ".join(str(v) for v in x)
    return body if alpha is None else f"{body} ; {alpha}"


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    return int(v)
