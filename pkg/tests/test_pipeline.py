import random

import pytest

from helpers import mask_to_set, random_connected_graph
from tmdd.graph import Graph, complete_bipartite_graph, complete_graph, cycle_graph, diamond_graph
from tmdd.mdd import count_members, enumerate_sets
from tmdd.oracle import brute_tm_embeddings
from tmdd.pipeline import CLASSES, QUERIES, ftm_subgraphs, query_profile, resolve_query, tm_embeddings
from tmdd.profiles import ProfileError


def tm_sets(g, h, choice="special"):
    return set(enumerate_sets(tm_embeddings(g, h, choice)))


def brute_sets(g, h):
    return {mask_to_set(mask) for mask in brute_tm_embeddings(g, h)}


class TestTmEmbeddings:
    def test_k5_in_k5(self):
        assert count_members(tm_embeddings(complete_graph(5), "k5")) == 1

    def test_k5_in_k33(self):
        assert count_members(tm_embeddings(complete_bipartite_graph(3, 3), "k5")) == 0

    def test_k5_in_k6(self):
        g = complete_graph(6)
        assert tm_sets(g, "k5") == brute_sets(g, complete_graph(5))

    def test_k33_in_k6(self):
        g = complete_graph(6)
        assert tm_sets(g, "k33") == brute_sets(g, complete_bipartite_graph(3, 3))

    @pytest.mark.parametrize("name", sorted(QUERIES))
    @pytest.mark.parametrize("choice", ["special", "vertex", "edge"])
    def test_small_hosts_all_profiles(self, name, choice):
        rng = random.Random(f"{name}/{choice}")
        h = QUERIES[name].graph
        if choice == "edge" and h.m > 6:
            pytest.skip("edge profile of a large query is exercised in the acceptance suite")
        for _ in range(4):
            g = random_connected_graph(rng, rng.randint(4, 7), 12)
            assert tm_sets(g, name, choice) == brute_sets(g, h)

    def test_graph_query_defaults_to_vertex(self):
        c5 = cycle_graph(5)
        # a 5-cycle needs three cover vertices
        assert query_profile(c5).c == 3
        assert tm_sets(complete_graph(5), c5) == brute_sets(complete_graph(5), c5)

    def test_isolated_query(self):
        with pytest.raises(ProfileError):
            tm_embeddings(complete_graph(4), Graph(3, ((0, 1),)))

    def test_unknown_shorthand(self):
        with pytest.raises(ProfileError):
            resolve_query("k9")


class TestClasses:
    def test_k5_planar(self):
        assert count_members(ftm_subgraphs(complete_graph(5), "planar")) == 1023

    def test_k6_planar(self):
        assert count_members(ftm_subgraphs(complete_graph(6), "planar")) == 32071

    def test_k3_cactus(self):
        assert count_members(ftm_subgraphs(complete_graph(3), "cactus")) == 8

    def test_k4_classes(self):
        g = complete_graph(4)
        counts = {name: count_members(ftm_subgraphs(g, name)) for name in CLASSES}
        assert counts["planar"] == 64
        assert counts["series-parallel"] == counts["outerplanar"] == 63
        # the diamond has 6 embeddings in K4, each of 5 edges; K4 itself contains them all
        assert counts["cactus"] == 64 - 1 - 6

    def test_unknown_class(self):
        with pytest.raises(ValueError):
            ftm_subgraphs(complete_graph(4), "bipartite")

    @pytest.mark.parametrize("seed", range(6))
    def test_inclusion_chain_and_downward_closed(self, seed):
        rng = random.Random(seed)
        g = random_connected_graph(rng, rng.randint(5, 7), 13)
        fam = {name: set(enumerate_sets(ftm_subgraphs(g, name))) for name in CLASSES}
        assert fam["cactus"] <= fam["series-parallel"] <= fam["planar"]
        assert fam["outerplanar"] <= fam["series-parallel"]
        for members in fam.values():
            for a in members:
                for x in a:
                    assert a - {x} in members


def test_diamond_embeddings_in_k4():
    assert len(tm_sets(complete_graph(4), "k4e")) == len(brute_sets(complete_graph(4), diamond_graph())) == 6
