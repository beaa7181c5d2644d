"""Test-side builders that do not go through the library's own algorithms."""
from __future__ import annotations

import itertools
import random

from tmdd.graph import Graph
from tmdd.mdd import BOT, TOP, DDStore, Mdd

# PASS/FAIL lines written by the acceptance tests, echoed in the terminal summary
ACCEPTANCE_LOG: list[str] = []


def distinct_pairs(store: DDStore | None = None) -> Mdd:
    """The 3-DD of all pairs ({e_a}, {e_b}) with a != b over three elements."""
    store = store or DDStore(3)
    mk = store.make_node
    none_left = mk(3, [TOP, BOT, BOT])
    want1 = mk(3, [BOT, TOP, BOT])
    want2 = mk(3, [BOT, BOT, TOP])
    both = mk(2, [BOT, want2, want1])
    only2 = mk(2, [want2, BOT, none_left])
    only1 = mk(2, [want1, none_left, BOT])
    return Mdd(store, mk(1, [both, only2, only1]), 3)


DISTINCT_PAIRS_MEMBERS = {
    (frozenset({a}), frozenset({b})) for a in (1, 2, 3) for b in (1, 2, 3) if a != b
}


def from_family(store: DDStore, members, arity: int) -> Mdd:
    """Build a DD for an explicit family of colored subsets by splitting on each label."""
    members = {tuple(frozenset(c) for c in m) for m in members}

    def color_of(member, lbl):
        for j, cls in enumerate(member, start=1):
            if lbl in cls:
                return j
        return 0

    def build(lbl, fam):
        if not fam:
            return BOT
        if lbl > store.m:
            return TOP
        kids = [build(lbl + 1, {m for m in fam if color_of(m, lbl) == j}) for j in range(arity)]
        return store.make_node(lbl, kids)

    return Mdd(store, build(1, members), arity)


def sets_family(store: DDStore, sets) -> Mdd:
    return from_family(store, [(frozenset(s),) for s in sets], 2)


def all_subsets(m: int):
    for mask in range(1 << m):
        yield frozenset(i + 1 for i in range(m) if mask >> i & 1)


def mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def random_connected_graph(rng: random.Random, n: int, max_edges: int) -> Graph:
    """Random spanning tree plus extra random edges, then shuffled edge order."""
    verts = list(range(n))
    rng.shuffle(verts)
    edges = set()
    for k in range(1, n):
        u, v = verts[k], verts[rng.randrange(k)]
        edges.add((min(u, v), max(u, v)))
    rest = [e for e in itertools.combinations(range(n), 2) if e not in edges]
    rng.shuffle(rest)
    while rest and len(edges) < max_edges and rng.random() < 0.8:
        edges.add(rest.pop())
    order = sorted(edges)
    rng.shuffle(order)
    return Graph(n, tuple(order))


def connected_graphs_up_to(n_max: int):
    """Every connected simple graph on 2..n_max labeled vertices (no isomorphism reduction)."""
    for n in range(2, n_max + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1, 1 << len(pairs)):
            edges = tuple(p for k, p in enumerate(pairs) if mask >> k & 1)
            if _connected(n, edges):
                yield Graph(n, edges)


def _connected(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in range(n)}) == 1
