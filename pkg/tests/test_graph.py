import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cutpoly.errors import GraphFormatError, PreconditionError
from cutpoly.graph import (
    CliqueSumSpec,
    Graph,
    V8_EDGES,
    clique_sum,
    complete_graph,
    contract_edge,
    cycle_basis,
    cycle_graph,
    cycles_through_edge,
    delete_edge,
    format_graph,
    grid_graph,
    induced_cycles,
    make_named,
    parse_graph,
    parse_graph_name,
    path_graph,
    suspension,
    wheel_graph,
)

from conftest import brute_all_cycles, brute_induced_cycles, isomorphic


@st.composite
def graphs(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(1, n + 1), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


class TestConstruction:
    def test_canonical_invariants(self):
        g = Graph.from_edges(4, [(3, 1), (2, 1), (1, 3), (4, 2)])
        assert g.edges == ((1, 2), (1, 3), (2, 4))
        assert Graph.from_edges(g.n, g.edges) == g

    @pytest.mark.parametrize("edges", [[(2, 1)], [(1, 1)], [(1, 5)], [(1, 2), (1, 2)]])
    def test_rejects_noncanonical(self, edges):
        with pytest.raises(PreconditionError):
            Graph(4, tuple(edges))

    def test_v8_is_the_listed_edge_set(self):
        g = make_named("V8")
        assert g.n == 8
        assert set(g.edges) == {(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (1, 8),
                                (1, 5), (2, 6), (3, 7), (4, 8)}
        assert set(g.edges) == set(V8_EDGES)

    def test_k3(self):
        g = make_named("K", [3])
        assert g.n == 3 and g.edges == ((1, 2), (1, 3), (2, 3))

    def test_grid_2x2_is_c4(self):
        g = make_named("grid", [2, 2])
        assert (g.n, g.m) == (4, 4)
        assert isomorphic(g, cycle_graph(4))

    def test_wheel_is_suspended_cycle(self):
        assert make_named("wheel", [5]) == suspension(cycle_graph(5))
        assert wheel_graph(7).n == 8

    def test_other_catalog_entries(self):
        assert make_named("bipartite", [3, 3]).m == 9
        assert make_named("prism").m == 9
        assert make_named("path", [4]).m == 3
        assert grid_graph(3, 4).m == 3 * 3 + 2 * 4
        assert parse_graph_name("K3,3") == make_named("KAB", [3, 3])
        assert parse_graph_name("K5-e").m == 9

    @pytest.mark.parametrize("name,params", [("C", [2]), ("nonsense", []), ("grid", [2]), ("K", [0])])
    def test_catalog_errors(self, name, params):
        with pytest.raises(PreconditionError):
            make_named(name, params)


class TestOperations:
    def test_delete_from_k3(self):
        g = complete_graph(3)
        h, mapping = delete_edge(g, g.index(1, 2))
        assert h.edges == ((1, 3), (2, 3))
        assert mapping == [None, 0, 1]

    def test_delete_from_c4_gives_p4(self):
        for e in range(4):
            assert isomorphic(delete_edge(cycle_graph(4), e)[0], path_graph(4))

    def test_delete_from_k5(self):
        assert delete_edge(complete_graph(5), 3)[0].m == 9

    def test_delete_out_of_range(self):
        with pytest.raises(PreconditionError):
            delete_edge(complete_graph(3), 3)

    def test_contractions(self):
        for e in range(4):
            assert contract_edge(cycle_graph(4), e) == complete_graph(3)
        assert contract_edge(complete_graph(3), 1) == Graph(2, ((1, 2),))
        p3 = path_graph(3)
        assert contract_edge(p3, p3.index(1, 2)) == path_graph(2)
        with pytest.raises(PreconditionError):
            contract_edge(p3, 5)

    @pytest.mark.parametrize("n", range(4, 9))
    def test_contracting_a_cycle(self, n):
        g = cycle_graph(n)
        for e in range(n):
            assert isomorphic(contract_edge(g, e), cycle_graph(n - 1))

    def test_suspension_examples(self):
        assert isomorphic(suspension(cycle_graph(4)), wheel_graph(4))
        assert suspension(complete_graph(4)) == complete_graph(5)
        assert suspension(Graph(1)) == Graph(2, ((1, 2),))

    def test_clique_sums(self):
        k3, k4 = complete_graph(3), complete_graph(4)
        diamond = clique_sum(CliqueSumSpec(k3, k3, ((1, 1), (2, 2))))
        assert (diamond.n, diamond.m) == (4, 5)
        assert isomorphic(diamond, delete_edge(k4, 0)[0])
        k5e = clique_sum(CliqueSumSpec(k4, k4, ((1, 1), (2, 2), (3, 3))))
        assert isomorphic(k5e, parse_graph_name("K5-e"))
        bowtie = clique_sum(CliqueSumSpec(k3, k3, ((1, 1),)))
        assert (bowtie.n, bowtie.m) == (5, 6)

    def test_clique_sum_errors(self):
        k4 = complete_graph(4)
        with pytest.raises(PreconditionError):
            CliqueSumSpec(k4, k4, ((1, 1), (2, 2), (3, 3), (4, 4)))
        with pytest.raises(PreconditionError):
            CliqueSumSpec(path_graph(3), k4, ((1, 1), (3, 2)))

    @settings(max_examples=60, deadline=None)
    @given(graphs())
    def test_delete_then_readd(self, g):
        for e, (u, v) in enumerate(g.edges):
            h, _ = delete_edge(g, e)
            assert h.add_edge(u, v) == g

    @settings(max_examples=60, deadline=None)
    @given(graphs())
    def test_suspension_counts(self, g):
        s = suspension(g)
        assert s.n == g.n + 1 and s.m == g.m + g.n


class TestCycles:
    def test_k4_triangles(self):
        cyc = induced_cycles(complete_graph(4))
        assert len(cyc) == 4 and all(len(c) == 3 for c in cyc)

    def test_c5(self):
        assert [c.vertices for c in induced_cycles(cycle_graph(5))] == [(1, 2, 3, 4, 5)]

    def test_v8_against_subset_oracle(self):
        g = make_named("V8")
        ours = {frozenset(c.vertices) for c in induced_cycles(g)}
        assert ours == brute_induced_cycles(g)
        assert len(ours) == 12

    def test_through_edge(self):
        k3 = complete_graph(3)
        assert len(cycles_through_edge(k3, 0)) == 1
        diamond = delete_edge(complete_graph(4), complete_graph(4).index(3, 4))[0]
        chord = diamond.index(1, 2)
        assert len(cycles_through_edge(diamond, chord)) == 2
        p4 = path_graph(4)
        assert all(cycles_through_edge(p4, e) == [] for e in range(p4.m))

    def test_basis_sizes(self):
        assert cycle_basis(path_graph(5)) == []
        assert len(cycle_basis(complete_graph(4))) == 3
        assert len(cycle_basis(make_named("V8"))) == 5

    @settings(max_examples=80, deadline=None)
    @given(graphs())
    def test_induced_cycles_match_oracle(self, g):
        cyc = induced_cycles(g)
        assert {frozenset(c.vertices) for c in cyc} == brute_induced_cycles(g)
        assert len({frozenset(c.vertices) for c in cyc}) == len(cyc)
        for c in cyc:
            k = len(c)
            assert c.vertices[0] == min(c.vertices) and c.vertices[1] < c.vertices[-1]
            for i, j in combinations(range(k), 2):
                consecutive = j == i + 1 or (i == 0 and j == k - 1)
                assert g.has_edge(c.vertices[i], c.vertices[j]) == consecutive

    @settings(max_examples=80, deadline=None)
    @given(graphs())
    def test_basis_size_and_validity(self, g):
        basis = cycle_basis(g)
        assert len(basis) == g.m - g.n + len(g.components())
        for c in basis:
            k = len(c)
            assert len(set(c.vertices)) == k >= 3
            assert all(g.has_edge(c.vertices[i], c.vertices[(i + 1) % k]) for i in range(k))

    def test_basis_parity_equals_all_cycle_parity(self):
        rng = random.Random(7)
        for _ in range(60):
            n = rng.randint(3, 6)
            g = Graph.from_edges(n, [e for e in combinations(range(1, n + 1), 2) if rng.random() < 0.6])
            every = brute_all_cycles(g)
            basis = [c.edge_set for c in cycle_basis(g)]
            for _ in range(10):
                x = [rng.randint(0, 3) for _ in range(g.m)]
                even = lambda cyc: sum(x[e] for e in cyc) % 2 == 0  # noqa: E731
                assert all(map(even, basis)) == all(map(even, every))


class TestTextFormat:
    def test_roundtrip(self):
        g = make_named("V8")
        assert parse_graph(format_graph(g)) == g

    def test_comments_and_canonicalisation(self):
        g = parse_graph("# a triangle\n3 3\n2 1\n# middle\n3 1\n2 3\n")
        assert g == complete_graph(3)

    @pytest.mark.parametrize("text,line", [
        ("3 2\n1 2\n", 1),
        ("3 1\n1 4\n", 2),
        ("3 1\n1 x\n", 2),
        ("3\n", 1),
        ("", 0),
    ])
    def test_malformed(self, text, line):
        with pytest.raises(GraphFormatError) as info:
            parse_graph(text)
        assert info.value.lineno == line
