import itertools
import random

import pytest

from tmdd.graph import (
    Graph,
    GraphError,
    complete_bipartite_graph,
    complete_graph,
    compute_frontiers,
    cycle_graph,
    diamond_graph,
    king_graph,
    parse_edge_list,
    relabel,
    reorder_edges,
)


def definitional_frontier(g, i):
    """F_i straight from the definition (i is 1-based, 1..m+1)."""
    before = {x for e in g.edges[: i - 1] for x in e}
    after = {x for e in g.edges[i - 1 :] for x in e}
    return before & after


def random_graph(rng, n, p):
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    rng.shuffle(edges)
    return Graph(n, tuple(edges))


class TestParse:
    def test_two_lines(self):
        assert parse_edge_list("1 2\n2 3") == Graph(3, ((0, 1), (1, 2)))

    def test_self_loop_names_line(self):
        with pytest.raises(GraphError, match="line 1"):
            parse_edge_list("1 1")

    def test_duplicate_names_line(self):
        with pytest.raises(GraphError, match="line 3"):
            parse_edge_list("# comment\n1 2\n2 1\n")

    def test_malformed(self):
        with pytest.raises(GraphError, match="line 2"):
            parse_edge_list("1 2\n2 x\n")
        with pytest.raises(GraphError, match="line 1"):
            parse_edge_list("1 2 3\n")

    def test_k5_file(self):
        text = "\n".join(f"{u + 1} {v + 1}" for u, v in itertools.combinations(range(5), 2))
        g = parse_edge_list(text)
        assert (g.n, g.m) == (5, 10)

    def test_header_and_comments(self):
        g = parse_edge_list("# a path\n4 2\n1 2\n2 3\n")
        assert g.n == 4 and g.edges == ((0, 1), (1, 2))

    def test_round_trip(self):
        g = king_graph(3, 4)
        assert parse_edge_list(g.to_edge_list()) == g


class TestGenerators:
    @pytest.mark.parametrize("b", [1, 2, 4, 5, 10, 50])
    def test_king_sizes(self, b):
        g = king_graph(3, b)
        assert g.n == 3 * b
        assert g.m == 9 * b - 7

    def test_king_published_sizes(self):
        assert (king_graph(3, 4).n, king_graph(3, 4).m) == (12, 29)
        assert (king_graph(3, 10).n, king_graph(3, 10).m) == (30, 83)

    def test_king_degenerate(self):
        assert king_graph(1, 2).edges == ((0, 1),)

    def test_king_edges_are_king_moves(self):
        g = king_graph(3, 5)
        expected = set()
        for r1, c1, r2, c2 in itertools.product(range(3), range(5), range(3), range(5)):
            if (r1, c1) < (r2, c2) and max(abs(r1 - r2), abs(c1 - c2)) == 1:
                a, b = r1 * 5 + c1, r2 * 5 + c2
                expected.add((min(a, b), max(a, b)))
        assert set(g.edges) == expected

    def test_complete_and_bipartite(self):
        assert complete_graph(6).m == 15
        kb = complete_bipartite_graph(3, 3)
        assert kb.m == 9 and all(u < 3 <= v for u, v in kb.edges)

    def test_diamond(self):
        g = diamond_graph()
        assert sorted(g.degrees()) == [2, 2, 3, 3]


class TestFrontiers:
    def test_path(self):
        fs = compute_frontiers(Graph(3, ((0, 1), (1, 2))))
        assert fs.frontiers == (frozenset(), frozenset({1}), frozenset())
        assert fs.width == 1
        assert fs.entering == ((0, 1), (2,))
        assert fs.leaving == ((0,), (1, 2))

    def test_empty(self):
        fs = compute_frontiers(Graph(3, ()))
        assert fs.width == 0 and fs.frontiers == (frozenset(),)

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_definition(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng, rng.randint(2, 9), 0.5)
        fs = compute_frontiers(g)
        for i in range(1, g.m + 2):
            assert fs.frontiers[i - 1] == definitional_frontier(g, i)
        if g.m:
            assert fs.frontiers[0] == fs.frontiers[-1] == frozenset()
        touched = [v for v, d in enumerate(g.degrees()) if d]
        assert sorted(x for e in fs.entering for x in e) == touched
        assert sorted(x for e in fs.leaving for x in e) == touched

    def test_k4_width(self):
        g = complete_graph(4)
        assert compute_frontiers(g).width == max(len(definitional_frontier(g, i)) for i in range(1, 8))

    def test_king_bfs_width(self):
        assert compute_frontiers(reorder_edges(king_graph(3, 10), "bfs")).width <= 6

    def test_king_sweep_width(self):
        # the column-major sweep keeps a vertex of the previous column alive one step longer
        assert compute_frontiers(king_graph(3, 10)).width == 7

    def test_star_bfs(self):
        star = Graph(5, ((0, 1), (0, 2), (0, 3), (0, 4)))
        assert compute_frontiers(reorder_edges(star, "bfs")).width == 1


class TestReorder:
    def test_identity(self):
        g = king_graph(3, 3)
        assert reorder_edges(g, "as-given") is g

    @pytest.mark.parametrize("seed", range(10))
    def test_bfs_keeps_edges(self, seed):
        g = random_graph(random.Random(seed), 8, 0.4)
        h = reorder_edges(g, "bfs")
        assert sorted(h.edges) == sorted(g.edges)
        assert reorder_edges(g, "bfs") == h

    def test_unknown(self):
        with pytest.raises(GraphError):
            reorder_edges(cycle_graph(4), "dfs")


def test_graph_invariants():
    with pytest.raises(GraphError):
        Graph(2, ((0, 2),))
    with pytest.raises(GraphError):
        Graph(3, ((0, 1), (1, 0)))
    a = Graph(3, ((0, 1), (1, 2)))
    b = Graph(3, ((1, 2), (0, 1)))
    assert a != b


def test_relabel_keeps_order():
    g = cycle_graph(4)
    h = relabel(g, [1, 2, 3, 0])
    assert h.m == g.m and h.edges[0] == (1, 2)
