"""Constructive lifting across edge deletion and clique sums.

``lift_deletion`` extends a lattice point of the cone of ``G - e0`` by a
coordinate ``gamma`` on ``e0`` so that it lands in the lattice and cone of
``G``. ``merge_clique_sum`` glues decompositions of the two sides of a clique
sum into a decomposition on the glued graph by matching shores that agree on
the shared clique.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .cutlattice import HomPoint, canonical_shore, cut_vector, has_k5_minor, in_cone, in_lattice
from .errors import InternalContradiction, K5MinorError, PreconditionError
from .graph import CliqueSumSpec, Graph, cycles_through_edge, delete_edge
from .cutlattice import _k5_witness


@dataclass(frozen=True)
class GammaBounds:
    """Feasible range for the new coordinate.

    ``x_max``/``x_min`` are ``None`` when no induced cycle passes through the
    edge (the constraints are vacuous); ``parity`` is ``None`` then as well.
    """

    x_max: int | None
    x_min: int | None
    lower: int
    upper: int
    parity: int | None

    def candidates(self) -> list[int]:
        return [v for v in range(self.lower, self.upper + 1)
                if self.parity is None or v % 2 == self.parity]

    def choose(self) -> int:
        """Smallest value in ``[lower, upper]`` with the required parity."""
        if self.parity is None:
            if self.lower > self.upper:
                raise InternalContradiction(f"empty interval [{self.lower}, {self.upper}]")
            return self.lower
        opts = self.candidates()
        if not opts:
            raise InternalContradiction(
                f"no value of parity {self.parity} in [{self.lower}, {self.upper}]")
        return opts[0]


class MergeCountMismatch(InternalContradiction):
    """Pattern counts of the two decompositions differ."""


def _extended(g: Graph, e0: int, x: Sequence[int]) -> list[int]:
    """Place ``x`` (indexed on ``g - e0``) into a length-``m`` vector with 0 at ``e0``."""
    if len(x) != g.m - 1:
        raise PreconditionError(f"point has {len(x)} coordinates, expected {g.m - 1}")
    return [*x[:e0], 0, *x[e0:]]


def gamma_bounds(g: Graph, e0: int, x: Sequence[int], alpha: int, check: bool = True) -> GammaBounds:
    """Interval and parity for the coordinate on ``e0``.

    Lower end: max of ``x(F) - x(C - F - e0) - alpha(|F| - 1)`` over induced
    cycles ``C`` through ``e0`` and odd ``F`` avoiding ``e0`` (and 0). Upper end:
    min of ``-x(F - e0) + x(C - F) + alpha(|F| - 1)`` over odd ``F`` containing
    ``e0`` (and ``alpha``). Parity: weight of ``x`` on the rest of a cycle
    through ``e0``.
    """
    g.check_edge(e0)
    x = [int(v) for v in x]
    if check:
        w = _k5_witness(g)
        if w is not None:
            raise K5MinorError(w)
        h, _ = delete_edge(g, e0)
        p = HomPoint(tuple(x), alpha)
        if not in_lattice(h, p):
            raise PreconditionError("point is not in the lattice of G - e0")
        if not in_cone(h, p):
            raise PreconditionError("point is not in the cone of G - e0")
    xp = _extended(g, e0, x)
    cycles = cycles_through_edge(g, e0)
    if not cycles:
        return GammaBounds(None, None, 0, alpha, None)
    x_max = x_min = None
    for c in cycles:
        others = [e for e in c.edge_indices if e != e0]
        for r in range(1, len(c) + 1, 2):
            for F in combinations(c.edge_indices, r):
                Fs = set(F)
                if e0 in Fs:
                    val = (-sum(xp[e] for e in others if e in Fs)
                           + sum(xp[e] for e in others if e not in Fs) + alpha * (r - 1))
                    x_min = val if x_min is None else min(x_min, val)
                else:
                    val = (sum(xp[e] for e in others if e in Fs)
                           - sum(xp[e] for e in others if e not in Fs) - alpha * (r - 1))
                    x_max = val if x_max is None else max(x_max, val)
    parities = {sum(xp[e] for e in c.edge_indices if e != e0) % 2 for c in cycles}
    assert len(parities) == 1, "cycle parities disagree; point is not in the lattice"
    parity = min(parities)
    return GammaBounds(x_max, x_min, max(0, x_max), min(alpha, x_min), parity)


def lift_deletion(g: Graph, e0: int, x: Sequence[int], alpha: int, check: bool = True) -> HomPoint:
    """Extend ``(x, alpha)`` from ``g - e0`` to a point of the lattice and cone of ``g``."""
    bounds = gamma_bounds(g, e0, x, alpha, check=check)
    gamma = bounds.choose()
    xp = _extended(g, e0, [int(v) for v in x])
    xp[e0] = gamma
    return HomPoint(tuple(xp), alpha)


# ---------------------------------------------------------------------------
# clique sums

def shared_pattern(spec: CliqueSumSpec, shore: frozenset[int], side: int) -> str:
    """Pattern of a canonical shore on the shared clique.

    Three shared vertices: ``z0..z3`` by membership of the second and third
    shared vertex (``z0`` both in, ``z1`` only the second, ``z2`` only the
    third, ``z3`` neither). Two: ``plus``/``minus``. One: ``all``.
    """
    verts = [pair[side] for pair in spec.shared]
    s = len(verts)
    if s == 1:
        return "all"
    if s == 2:
        return "plus" if verts[1] in shore else "minus"
    inside = (verts[1] in shore, verts[2] in shore)
    return {(True, True): "z0", (True, False): "z1", (False, True): "z2", (False, False): "z3"}[inside]


def _canon_side(spec: CliqueSumSpec, shore: Iterable[int], side: int) -> frozenset[int]:
    g = spec.g1 if side == 0 else spec.g2
    anchor = spec.shared[0][side]
    s = frozenset(shore)
    bad = [v for v in s if not 1 <= v <= g.n]
    if bad:
        raise PreconditionError(f"shore vertices {sorted(bad)} out of range 1..{g.n}")
    if anchor not in s:
        s = frozenset(g.vertices) - s
    return s


def pattern_counts(spec: CliqueSumSpec, shores: Sequence[frozenset[int]], side: int) -> dict[str, int]:
    counts: dict[str, int] = defaultdict(int)
    for S in shores:
        counts[shared_pattern(spec, _canon_side(spec, S, side), side)] += 1
    return dict(counts)


def merge_clique_sum(spec: CliqueSumSpec, dec1: Sequence[Iterable[int]],
                     dec2: Sequence[Iterable[int]]) -> list[frozenset[int]]:
    """Glue shore lists on ``g1`` and ``g2`` into a shore list on the clique sum.

    Shores are first put into the form containing the first shared vertex,
    grouped by their pattern on the shared clique and paired class by class in
    sorted order. Raises :class:`MergeCountMismatch` if the class sizes differ.
    """
    if len(dec1) != len(dec2):
        raise MergeCountMismatch(f"decompositions have different degrees ({len(dec1)} vs {len(dec2)})")
    left = [_canon_side(spec, S, 0) for S in dec1]
    right = [_canon_side(spec, T, 1) for T in dec2]
    classes1: dict[str, list[frozenset[int]]] = defaultdict(list)
    classes2: dict[str, list[frozenset[int]]] = defaultdict(list)
    for S in left:
        classes1[shared_pattern(spec, S, 0)].append(S)
    for T in right:
        classes2[shared_pattern(spec, T, 1)].append(T)
    xi1 = {k: len(v) for k, v in classes1.items()}
    xi2 = {k: len(v) for k, v in classes2.items()}
    if xi1 != xi2:
        raise MergeCountMismatch(f"pattern counts differ: {sorted(xi1.items())} vs {sorted(xi2.items())}")
    merged = []
    for code in sorted(classes1):
        A = sorted(classes1[code], key=sorted)
        B = sorted(classes2[code], key=sorted)
        for S, T in zip(A, B):
            merged.append(frozenset(S) | frozenset(spec.map2[w] for w in T))
    return merged


def shores_total(g: Graph, shores: Sequence[Iterable[int]]) -> HomPoint:
    """Sum of the homogenized cut vectors of ``shores``."""
    x = [0] * g.m
    for S in shores:
        for e, v in enumerate(cut_vector(g, S).coords):
            x[e] += v
    return HomPoint(tuple(x), len(shores))


def glued_target(spec: CliqueSumSpec, x1: Sequence[int], x2: Sequence[int]) -> tuple[int, ...]:
    """Combine edge vectors of ``g1`` and ``g2`` into one on the glued graph.

    Shared-clique coordinates must agree.
    """
    g = spec.result
    out: list[int | None] = [None] * g.m
    for (u, v), val in zip(spec.g1.edges, x1):
        out[g.index(u, v)] = int(val)
    for (u, v), val in zip(spec.g2.edges, x2):
        i = g.index(spec.map2[u], spec.map2[v])
        if out[i] is not None and out[i] != int(val):
            raise PreconditionError(f"targets disagree on shared edge {g.edges[i]}")
        out[i] = int(val)
    return tuple(out)  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# shore-list text format

def parse_shores(text: str) -> list[frozenset[int]]:
    """One shore per line, space separated vertex labels; ``#`` comments.

    A line with just ``-`` (or ``{}``) is the empty shore.
    """
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line in ("-", "{}"):
            out.append(frozenset())
            continue
        try:
            out.append(frozenset(int(t) for t in line.replace(",", " ").split()))
        except ValueError:
            raise PreconditionError(f"line {lineno}: bad shore {raw!r}") from None
    return out


def format_shores(shores: Sequence[Iterable[int]]) -> str:
    return "".join((" ".join(map(str, sorted(S))) or "-") + "\n" for S in shores)


__all__ = [
    "GammaBounds",
    "MergeCountMismatch",
    "canonical_shore",
    "format_shores",
    "gamma_bounds",
    "glued_target",
    "has_k5_minor",
    "lift_deletion",
    "merge_clique_sum",
    "parse_shores",
    "pattern_counts",
    "shared_pattern",
    "shores_total",
]
