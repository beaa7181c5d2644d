"""Extended profiles: degree constraints whose colored solutions are exactly
the subdivisions of a query graph."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .cfbs import ColoredDegree, DegreeConstraint, colored_degree_multiset
from .graph import Graph


class ProfileError(ValueError):
    pass


@dataclass(frozen=True)
class ExtendedProfile:
    constraint: DegreeConstraint
    query_name: str

    @property
    def c(self) -> int:
        return self.constraint.c


def subdividing_degrees(c: int) -> frozenset[ColoredDegree]:
    """Degrees with a single 2 and zeros elsewhere."""
    return frozenset(tuple(2 if k == i else 0 for k in range(c)) for i in range(c))


def _check_query(h: Graph) -> None:
    if h.m < 1:
        raise ProfileError("query graph needs at least one edge")
    if h.isolated_vertices():
        raise ProfileError(f"query graph has isolated vertices {h.isolated_vertices()}")


def min_vertex_cover(h: Graph) -> tuple[int, ...]:
    """Smallest vertex cover, lexicographically first among the smallest."""
    if h.m < 1:
        raise ProfileError("vertex cover of an edgeless graph is not defined here")
    for size in range(1, h.n + 1):
        for cand in itertools.combinations(range(h.n), size):
            chosen = set(cand)
            if all(u in chosen or v in chosen for u, v in h.edges):
                return cand
    raise AssertionError("unreachable: the whole vertex set is a cover")


def _profile(c: int, s: Counter, name: str) -> ExtendedProfile:
    return ExtendedProfile(DegreeConstraint.build(c, s, subdividing_degrees(c)), name)


def edge_profile(h: Graph, name: str = "H") -> ExtendedProfile:
    """One color per query edge."""
    _check_query(h)
    colored = [(u, v, k + 1) for k, (u, v) in enumerate(h.edges)]
    return _profile(h.m, colored_degree_multiset(h.n, colored, h.m), f"{name} (edge coloring)")


def vertex_cover_profile(h: Graph, name: str = "H") -> ExtendedProfile:
    """One star color per vertex of a minimum cover.

    Each edge goes to its incident cover vertex that comes first in the
    cover; cover vertices left without edges lose their color.
    """
    _check_query(h)
    cover = min_vertex_cover(h)
    rank = {v: k for k, v in enumerate(cover)}
    owner = [min((rank[x] for x in e if x in rank)) for e in h.edges]
    used = sorted(set(owner))
    color = {k: i + 1 for i, k in enumerate(used)}
    colored = [(u, v, color[o]) for (u, v), o in zip(h.edges, owner)]
    c = len(used)
    return _profile(c, colored_degree_multiset(h.n, colored, c), f"{name} (vertex-cover coloring)")


def complete_profile(a: int) -> ExtendedProfile:
    """``a - 2`` colors for K_a: a triangle color plus stars of growing size."""
    if a < 3:
        raise ProfileError("complete_profile needs a >= 3")
    c = a - 2
    s: Counter = Counter()
    s[(2,) + (1,) * (c - 1)] += 3
    for i in range(2, c + 1):
        s[(0,) * (i - 1) + (i + 1,) + (1,) * (c - i)] += 1
    return _profile(c, s, f"K{a}")


def complete_bipartite_profile(a: int, b: int) -> ExtendedProfile:
    """``a`` star colors centred on the smaller part of K_{a,b}."""
    if not 1 <= a <= b:
        raise ProfileError("complete_bipartite_profile needs 1 <= a <= b")
    s: Counter = Counter()
    for i in range(a):
        s[tuple(b if k == i else 0 for k in range(a))] += 1
    s[(1,) * a] += b
    return _profile(a, s, f"K{a},{b}")


def diamond_profile() -> ExtendedProfile:
    return _profile(2, Counter({(3, 0): 1, (1, 2): 1, (1, 1): 2}), "K4-e")


def same_up_to_color_permutation(p: DegreeConstraint, q: DegreeConstraint) -> bool:
    if p.c != q.c:
        return False
    target = (dict(q.s), q.t)
    for perm in itertools.permutations(range(p.c)):
        s = {tuple(d[k] for k in perm): n for d, n in p.s}
        t = frozenset(tuple(d[k] for k in perm) for d in p.t)
        if (s, t) == target:
            return True
    return False


def handshake_ok(profile: ExtendedProfile, h: Graph) -> bool:
    """Multiplicities sum to |V(H)| and degrees sum to 2|E(H)|."""
    s = profile.constraint.s
    return sum(n for _, n in s) == h.n and sum(n * sum(d) for d, n in s) == 2 * h.m


def profile_for(h: Graph, choice: str, special: Optional[ExtendedProfile] = None, name: str = "H") -> ExtendedProfile:
    if choice == "edge":
        return edge_profile(h, name)
    if choice == "vertex":
        return vertex_cover_profile(h, name)
    if choice == "special":
        return special if special is not None else vertex_cover_profile(h, name)
    raise ProfileError(f"unknown profile choice {choice!r}")

