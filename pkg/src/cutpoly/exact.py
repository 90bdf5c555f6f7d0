"""Exact rational and integer linear algebra used by the membership oracles.

Everything here works on Python ints and :class:`fractions.Fraction`;
nothing is floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import Budget


def feasible_nonneg(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Solve ``A @ lam = b, lam >= 0`` exactly.

    Phase-one simplex with artificial variables and Bland's rule. Returns a
    feasible ``lam`` or ``None``.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    T = []
    for i in range(rows):
        row = [Fraction(a) for a in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-a for a in row]
            rhs = -rhs
        T.append(row + [Fraction(int(j == i)) for j in range(rows)] + [rhs])
    basis = [cols + i for i in range(rows)]
    width = cols + rows
    # reduced costs of the phase-one objective (minimise sum of artificials)
    cost = [Fraction(0)] * (width + 1)
    for row in T:
        for j in range(cols):
            cost[j] -= row[j]
        cost[width] -= row[width]

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(rows):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # unbounded direction; cannot happen in phase one
            break
        _pivot(T, cost, leave, enter)
        basis[leave] = enter

    if cost[width] != 0:
        return None
    lam = [Fraction(0)] * cols
    for i, j in enumerate(basis):
        if j < cols:
            lam[j] = T[i][width]
    return lam


def _pivot(T, cost, r, c):
    prow = T[r]
    p = prow[c]
    if p != 1:
        T[r] = prow = [a / p for a in prow]
    for i, row in enumerate(T):
        if i != r:
            f = row[c]
            if f:
                T[i] = [a - f * pa for a, pa in zip(row, prow)]
    f = cost[c]
    if f:
        cost[:] = [a - f * pa for a, pa in zip(cost, prow)]


# ---------------------------------------------------------------------------
# lattice membership via Hermite normal form

def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the integer row lattice of ``rows``.

    Returns the nonzero rows, echelon form with positive pivots and entries
    above each pivot reduced into ``[0, pivot)``.
    """
    M = [list(map(int, r)) for r in rows]
    if not M:
        return []
    ncols = len(M[0])
    out: list[list[int]] = []
    r0 = 0
    for c in range(ncols):
        # gcd-combine column c into row r0 over the remaining rows
        piv = None
        for i in range(r0, len(M)):
            if M[i][c] == 0:
                continue
            if piv is None:
                piv = i
                continue
            a, b = M[piv][c], M[i][c]
            g, s, t = _xgcd(a, b)
            u, v = a // g, b // g
            rp, ri = M[piv], M[i]
            M[piv] = [s * x + t * y for x, y in zip(rp, ri)]
            M[i] = [-v * x + u * y for x, y in zip(rp, ri)]
        if piv is None:
            continue
        M[r0], M[piv] = M[piv], M[r0]
        if M[r0][c] < 0:
            M[r0] = [-x for x in M[r0]]
        out.append(c)
        r0 += 1
    H = M[:r0]
    for i, c in enumerate(out):
        p = H[i][c]
        for k in range(i):
            q = H[k][c] // p
            if q:
                H[k] = [x - q * y for x, y in zip(H[k], H[i])]
    return H


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def in_row_lattice(hnf: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Membership of ``v`` in the row lattice given by its Hermite form."""
    v = list(map(int, v))
    for row in hnf:
        c = next(j for j, x in enumerate(row) if x)
        if v[c] % row[c]:
            return False
        q = v[c] // row[c]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


# ---------------------------------------------------------------------------
# cone facets by double description

def _primitive(v: list[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        v = [x // g for x in v]
    return tuple(v)


def _rank_select(gens: Sequence[Sequence[int]]) -> list[int]:
    """Indices of a maximal linearly independent subset, chosen greedily."""
    basis: list[tuple[int, list[Fraction]]] = []  # (pivot column, reduced row)
    picked = []
    for idx, g in enumerate(gens):
        r = [Fraction(x) for x in g]
        for c, row in basis:
            if r[c]:
                f = r[c] / row[c]
                r = [a - f * b for a, b in zip(r, row)]
        c = next((j for j, x in enumerate(r) if x), None)
        if c is not None:
            basis.append((c, r))
            picked.append(idx)
    return picked


def cone_facets(gens: Sequence[Sequence[int]], budget: Budget | int | None = None) -> list[tuple[int, ...]]:
    """Primitive integer normals ``a`` with ``a . g >= 0`` defining the facets
    of the cone spanned by ``gens``.

    The cone must be full-dimensional and pointed. Uses the double description
    method with the combinatorial adjacency test.
    """
    budget = Budget.coerce(budget, "double description")
    gens = [tuple(map(int, g)) for g in gens]
    gens = [g for g in dict.fromkeys(gens) if any(g)]
    if not gens:
        return []
    d = len(gens[0])
    init = _rank_select(gens)
    if len(init) != d:
        raise ValueError(f"cone is not full-dimensional (rank {len(init)} < {d})")
    # initial simplicial cone: rays are the columns of inv(G0)
    G0 = [[Fraction(x) for x in gens[i]] for i in init]
    inv = _inverse(G0)
    order = init + [i for i in range(len(gens)) if i not in set(init)]
    rays: list[tuple[int, ...]] = []
    zeros: list[frozenset[int]] = []
    for k in range(d):
        col = [inv[r][k] for r in range(d)]
        den = 1
        for x in col:
            den = den * x.denominator // gcd(den, x.denominator)
        ray = _primitive([int(x * den) for x in col])
        rays.append(ray)
        zeros.append(frozenset(j for j in range(d) if j != k))

    for step in range(d, len(order)):
        g = gens[order[step]]
        vals = [sum(a * b for a, b in zip(r, g)) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        if not neg:
            zeros = [z | {step} if vals[i] == 0 else z for i, z in enumerate(zeros)]
            continue
        new_rays = [rays[i] for i in pos]
        new_zeros = [zeros[i] for i in pos]
        new_rays += [rays[i] for i in zer]
        new_zeros += [zeros[i] | {step} for i in zer]
        for i in pos:
            for j in neg:
                budget.tick()
                common = zeros[i] & zeros[j]
                if len(common) < d - 2:
                    continue
                if any(common <= zeros[k] for k in range(len(rays)) if k != i and k != j):
                    continue
                vi, vj = vals[i], -vals[j]
                ray = _primitive([vj * a + vi * b for a, b in zip(rays[i], rays[j])])
                new_rays.append(ray)
                new_zeros.append(common | {step})
        rays, zeros = new_rays, new_zeros
    return sorted(set(rays))


def _inverse(M: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(M)
    A = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]
