"""Acceptance criteria, one test each.

Every test records a single PASS/FAIL line (shown in the terminal summary
under "acceptance criteria"). Run standalone with
``python3 tests/test_acceptance.py`` to get only those lines.
"""

import random
import sys
import time
from itertools import combinations

import pytest

from cutpoly.cutlattice import (
    HomPoint,
    cut_generators,
    facet_inequalities,
    in_cone,
    in_lattice,
    in_lattice_reduction,
)
from cutpoly.graph import (
    CliqueSumSpec,
    complete_graph,
    contract_edge,
    cycle_graph,
    delete_edge,
    induced_cycles,
    make_named,
    suspension,
)
from cutpoly.lifting import gamma_bounds, glued_target, lift_deletion, merge_clique_sum, pattern_counts, shores_total
from cutpoly.minors import K5, has_minor, minor_profile
from cutpoly.normality import (
    NORMAL_CERTIFIED,
    NOT_NORMAL,
    classify_normality,
    decompose,
    find_hole,
    hilbert_check,
)

from conftest import brute_induced_cycles, graphs_up_to_iso, random_graph, random_shores

K5G = complete_graph(5)


def _k5_first_hole():
    for k in range(2, 10):
        hole = find_hole(K5G, k)
        if hole is not None:
            return k, hole
    return None, None


def test_criterion_01_k5_not_normal(acceptance):
    t0 = time.perf_counter()
    k_star, hole = _k5_first_hole()
    elapsed = time.perf_counter() - t0
    ok = hole is not None and hole.point.alpha == k_star
    if ok:
        p = hole.point
        ok = in_lattice(K5G, p) and in_cone(K5G, p, "lp") and decompose(K5G, p, seed=3) is None
    detail = f"K5 first hole at degree k*={k_star}, x={list(hole.point.x) if hole else None} ({elapsed:.1f}s)"
    assert acceptance(1, ok, detail)


def test_criterion_02_small_graph_census(acceptance):
    bad = []
    total = 0
    for n in range(1, 6):
        for g in graphs_up_to_iso(n):
            total += 1
            is_k5 = n == 5 and g.m == 10
            status = classify_normality(g).status
            if status != (NOT_NORMAL if is_k5 else NORMAL_CERTIFIED):
                bad.append((g, status))
            elif not is_k5 and g.m and find_hole(g, 3) is not None:
                bad.append((g, "hole at degree <= 3"))
    assert acceptance(2, not bad, f"{total} graphs on <= 5 vertices, mismatches: {bad[:3]}")


def test_criterion_03_v8_bounded(acceptance):
    t0 = time.perf_counter()
    hole = find_hole(make_named("V8"), 3)
    elapsed = time.perf_counter() - t0
    assert acceptance(3, hole is None, f"V8 find_hole(3) -> {hole} ({elapsed:.1f}s)")


def test_criterion_04_deletion_lifting(acceptance):
    rng = random.Random(404)
    failures = []
    done = 0
    while done < 100:
        g = random_graph(rng, 3, 6)
        if g.m < 2 or has_minor(g, K5) is not None:
            continue
        done += 1
        e0 = rng.randrange(g.m)
        G = cut_generators(delete_edge(g, e0)[0]).matrix()
        alpha = rng.randint(1, 4)
        x = tuple(int(v) for v in G[[rng.randrange(len(G)) for _ in range(alpha)]].sum(axis=0))
        if not gamma_bounds(g, e0, x, alpha).candidates():
            failures.append((g.edges, e0, x, alpha, "empty"))
            continue
        p = lift_deletion(g, e0, x, alpha)
        if not (in_lattice(g, p) and in_cone(g, p)):
            failures.append((g.edges, e0, x, alpha, "lift outside"))
    assert acceptance(4, not failures, f"100 random K5-minor-free lifts, failures: {failures[:3]}")


def _random_clique_sum(rng: random.Random, s: int) -> CliqueSumSpec:
    while True:
        g1, g2 = random_graph(rng, s, 5, 0.7), random_graph(rng, s, 5, 0.7)
        c1 = [c for c in combinations(g1.vertices, s) if g1.is_clique(c)]
        c2 = [c for c in combinations(g2.vertices, s) if g2.is_clique(c)]
        if c1 and c2:
            right = list(rng.choice(c2))
            rng.shuffle(right)
            return CliqueSumSpec(g1, g2, tuple(zip(rng.choice(c1), right)))


def test_criterion_05_clique_sum_merge(acceptance):
    rng = random.Random(505)
    failures = []
    for trial in range(100):
        spec = _random_clique_sum(rng, 1 + trial % 3)
        g = spec.result
        alpha = rng.randint(1, 4)
        shores = random_shores(rng, g.n, alpha)
        back2 = {v: w for w, v in spec.map2.items()}
        dec1 = [frozenset(v for v in S if v <= spec.g1.n) for S in shores]
        right = [frozenset(back2[v] for v in S if v in back2) for S in shores]
        # an independently found decomposition of the same right-hand point
        dec2 = decompose(spec.g2, shores_total(spec.g2, right), seed=rng.randrange(10**6)).shores(spec.g2)
        counts_equal = pattern_counts(spec, dec1, 0) == pattern_counts(spec, dec2, 1)
        merged = merge_clique_sum(spec, dec1, dec2)
        target = glued_target(spec, shores_total(spec.g1, dec1).x, shores_total(spec.g2, dec2).x)
        valid = (len(merged) == alpha and all(S <= set(g.vertices) for S in merged)
                 and shores_total(g, merged) == HomPoint(target, alpha))
        if not (counts_equal and valid):
            failures.append((spec.shared, counts_equal, valid))
    assert acceptance(5, not failures, f"100 random clique-sum merges (s=1,2,3), failures: {failures[:3]}")


def test_criterion_06_suspensions(acceptance):
    mismatches = []
    count = 0
    for n in range(1, 5):
        for h in graphs_up_to_iso(n):
            count += 1
            s = suspension(h)
            k4_free = minor_profile(h).k4_free
            status = classify_normality(s).status
            if k4_free:
                ok = status == NORMAL_CERTIFIED and find_hole(s, 3) is None
            else:
                ok = status == NOT_NORMAL and find_hole(s, 4) is not None
            if not ok:
                mismatches.append((h.edges, status))
    assert acceptance(6, not mismatches, f"{count} suspensions of graphs on <= 4 vertices, mismatches: {mismatches}")


def test_criterion_07_minor_closed(acceptance):
    rng = random.Random(707)
    failures = []
    checked = 0
    t0 = time.perf_counter()
    while checked < 50:
        g = random_graph(rng, 3, 6)
        if not g.m or find_hole(g, 3) is not None:
            continue
        checked += 1
        for e in range(g.m):
            for kind, h in (("delete", delete_edge(g, e)[0]), ("contract", contract_edge(g, e))):
                if h.m and find_hole(h, 3) is not None:
                    failures.append((g.edges, kind, e))
    elapsed = time.perf_counter() - t0
    assert acceptance(7, not failures, f"50 clean graphs, all one-step minors clean at degree 3 "
                                       f"({elapsed:.1f}s), failures: {failures[:3]}")


def test_criterion_08_oracle_equivalence(acceptance):
    rng = random.Random(808)
    disagreements = []
    graphs = 0
    for n in range(2, 6):
        for g in graphs_up_to_iso(n):
            if not g.m or has_minor(g, K5) is not None:
                continue
            graphs += 1
            G = cut_generators(g).matrix()
            for i in range(200):
                alpha = rng.randint(0, 4)
                if i % 2:
                    # near the cone: a sum of generators with one coordinate nudged
                    x = [int(v) for v in G[[rng.randrange(len(G)) for _ in range(alpha)]].sum(axis=0)]
                    j = rng.randrange(g.m)
                    x[j] = max(0, x[j] + rng.choice((-1, 0, 1)))
                else:
                    x = [rng.randint(0, max(alpha, 1)) for _ in range(g.m)]
                p = HomPoint(tuple(x), alpha)
                if in_lattice(g, p) != in_lattice_reduction(g, p):
                    disagreements.append(("lattice", g.edges, p))
                if in_cone(g, p, "facets") != in_cone(g, p, "lp"):
                    disagreements.append(("cone", g.edges, p))
    assert acceptance(8, not disagreements, f"{graphs} K5-minor-free graphs x 200 points, "
                                            f"disagreements: {disagreements[:3]}")


def test_criterion_09_hilbert_without_normality(acceptance):
    hv = hilbert_check(K5G, 3)
    hole = find_hole(K5G, 4)
    ok = hv.status == "no_violation_up_to" and hole is not None and hole.reverify(K5G)
    assert acceptance(9, ok, f"hilbert_check(K5, 3) -> {hv.status}; normality hole present: {hole is not None}")


def test_criterion_10_facet_counts(acceptance):
    parts = []
    ok = True
    for name, g in [("K3", complete_graph(3)), ("C5", cycle_graph(5)), ("K4", complete_graph(4)),
                    ("V8", make_named("V8"))]:
        brute = brute_induced_cycles(g)
        expected = 2 * g.m + sum(2 ** (len(c) - 1) for c in brute)
        got = len(facet_inequalities(g))
        ok &= {frozenset(c.vertices) for c in induced_cycles(g)} == brute and got == expected
        parts.append(f"{name} {got}/{expected}")
    assert acceptance(10, ok, "inequality counts vs 2|E| + sum 2^(|C|-1): " + ", ".join(parts))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
