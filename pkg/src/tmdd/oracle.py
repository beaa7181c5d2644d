"""Explicit ground truth for small hosts.

Nothing here touches decision diagrams.  Edge subsets of a host are bitmasks
with bit ``i`` standing for edge ``e_{i+1}``.
"""
from __future__ import annotations

import itertools
from typing import Callable, Iterable, Optional, Sequence, Union

import networkx as nx

from .graph import Edge, Graph

MAX_BRUTE_EDGES = 20

SubsetPredicate = Callable[[int], bool]


class OracleGuardError(RuntimeError):
    """The host is too large for exhaustive search."""


def _edge_list(f: Union[Graph, Iterable[Edge]]) -> list[Edge]:
    edges = f.edges if isinstance(f, Graph) else f
    return [(u, v) if u < v else (v, u) for u, v in edges]


def is_planar(g: Union[Graph, Iterable[Edge]]) -> bool:
    edges = _edge_list(g)
    if len(edges) <= 8:
        # every non-planar graph contains a subdivision of K5 or K3,3
        return True
    verts = {x for e in edges for x in e}
    if len(edges) > 3 * len(verts) - 6:
        return False
    graph = nx.Graph()
    graph.add_edges_from(edges)
    planar, _ = nx.check_planarity(graph)
    return planar


def _isomorphic(n: int, edges: Sequence[Edge], h: Graph) -> bool:
    """Backtracking isomorphism test between a graph on 0..n-1 and ``h``."""
    if n != h.n or len(edges) != h.m:
        return False
    adj_a = [set() for _ in range(n)]
    for u, v in edges:
        adj_a[u].add(v)
        adj_a[v].add(u)
    adj_h = [set(nb) for nb in h.adjacency()]
    if sorted(map(len, adj_a)) != sorted(map(len, adj_h)):
        return False
    order = sorted(range(n), key=lambda v: -len(adj_h[v]))
    image = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        hv = order[k]
        for av in range(n):
            if used[av] or len(adj_a[av]) != len(adj_h[hv]):
                continue
            if any((image[hw] in adj_a[av]) != (hw in adj_h[hv]) for hw in order[:k]):
                continue
            image[hv] = av
            used[av] = True
            if extend(k + 1):
                return True
            used[av] = False
        image[hv] = -1
        return False

    return extend(0)


def is_homeomorphic(f: Union[Graph, Iterable[Edge]], h: Graph) -> bool:
    """Whether the edge-induced graph ``f`` is exactly a subdivision of ``h``.

    Only ``h`` is subdivided.  Branch vertices are chosen among ``f``'s
    vertices (every vertex of degree other than 2 must be one); the remaining
    degree-2 vertices are threaded into branch-to-branch paths, which must use
    every edge and form a simple graph isomorphic to ``h``.
    """
    if h.isolated_vertices():
        raise ValueError("query graph has isolated vertices")
    edges = _edge_list(f)
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if len(edges) - len(adj) != h.m - h.n:
        return False
    hdeg = h.degrees()
    need = sorted(d for d in hdeg if d != 2)
    mandatory = [v for v in adj if len(adj[v]) != 2]
    if sorted(len(adj[v]) for v in mandatory) != need:
        return False
    optional = sorted(v for v in adj if len(adj[v]) == 2)
    k2 = hdeg.count(2)
    if len(optional) < k2:
        return False
    for extra in itertools.combinations(optional, k2):
        branch = sorted(mandatory) + list(extra)
        traced = _trace(adj, branch, len(edges))
        if traced is not None and _isomorphic(len(branch), traced, h):
            return True
    return False


def _trace(adj: dict[int, list[int]], branch: list[int], m: int) -> Optional[list[Edge]]:
    index = {v: k for k, v in enumerate(branch)}
    used: set[Edge] = set()
    pairs: set[Edge] = set()
    for b in branch:
        for w in adj[b]:
            if (min(b, w), max(b, w)) in used:
                continue
            prev, cur = b, w
            used.add((min(b, w), max(b, w)))
            while cur not in index:
                a, c = adj[cur]
                nxt = c if a == prev else a
                used.add((min(cur, nxt), max(cur, nxt)))
                prev, cur = cur, nxt
            if cur == b:
                return None
            pair = (min(index[b], index[cur]), max(index[b], index[cur]))
            if pair in pairs:
                return None
            pairs.add(pair)
    if len(used) != m:
        return None
    return sorted(pairs)


def brute_tm_embeddings(g: Graph, h: Graph) -> list[int]:
    """Bitmasks (ascending) of all edge subsets of ``g`` homeomorphic to ``h``."""
    if g.m > MAX_BRUTE_EDGES:
        raise OracleGuardError(
            f"exhaustive search over 2^{g.m} subsets refused (limit {MAX_BRUTE_EDGES} edges)"
        )
    hdeg = h.degrees()
    target = h.m - h.n
    big = sorted(d for d in hdeg if d >= 3)
    max_deg = max(hdeg, default=0)
    incident = [0] * g.n
    for i, (u, v) in enumerate(g.edges):
        incident[u] |= 1 << i
        incident[v] |= 1 << i
    found = []
    for mask in range(1 << g.m):
        size = mask.bit_count()
        if size < h.m:
            continue
        degs = [(mask & inc).bit_count() for inc in incident]
        nverts = g.n - degs.count(0)
        if size - nverts != target or max(degs) > max_deg:
            continue
        if sorted(d for d in degs if d >= 3) != big:
            continue
        if is_homeomorphic([e for i, e in enumerate(g.edges) if mask >> i & 1], h):
            found.append(mask)
    return found


def backtrack_enumerate(
    g: Graph, predicate: SubsetPredicate, collect: bool = False
) -> tuple[int, Optional[list[int]]]:
    """Count (and optionally list) edge subsets satisfying a hereditary predicate.

    Skips an edge, then takes it only if the enlarged subset still satisfies
    the predicate.
    """
    members: Optional[list[int]] = [] if collect else None
    m = g.m
    count = 0

    def rec(mask: int, i: int) -> None:
        nonlocal count
        if i == m:
            count += 1
            if members is not None:
                members.append(mask)
            return
        rec(mask, i + 1)
        bigger = mask | 1 << i
        if predicate(bigger):
            rec(bigger, i + 1)

    rec(0, 0)
    return count, members


def planarity_predicate(g: Graph) -> SubsetPredicate:
    edges = g.edges

    def pred(mask: int) -> bool:
        return is_planar([e for i, e in enumerate(edges) if mask >> i & 1])

    return pred


def forbidden_tm_predicate(g: Graph, forbidden: Iterable[Graph]) -> SubsetPredicate:
    """Subsets containing no subdivision of any forbidden graph."""
    embeddings = sorted({mask for h in forbidden for mask in brute_tm_embeddings(g, h)})

    def pred(mask: int) -> bool:
        return not any(e & mask == e for e in embeddings)

    return pred
