"""TM-embedding diagrams and forbidden-topological-minor subgraph families."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

from . import ddops
from .cfbs import construct
from .graph import Graph, complete_bipartite_graph, complete_graph, diamond_graph
from .mdd import BOT, DDStore, Mdd
from .profiles import (
    ExtendedProfile,
    ProfileError,
    complete_bipartite_profile,
    complete_profile,
    diamond_profile,
    profile_for,
)


@dataclass(frozen=True)
class NamedQuery:
    name: str
    graph: Graph
    special: Callable[[], ExtendedProfile]


QUERIES: dict[str, NamedQuery] = {
    "k3": NamedQuery("K3", complete_graph(3), lambda: complete_profile(3)),
    "k4": NamedQuery("K4", complete_graph(4), lambda: complete_profile(4)),
    "k5": NamedQuery("K5", complete_graph(5), lambda: complete_profile(5)),
    "k23": NamedQuery("K2,3", complete_bipartite_graph(2, 3), lambda: complete_bipartite_profile(2, 3)),
    "k33": NamedQuery("K3,3", complete_bipartite_graph(3, 3), lambda: complete_bipartite_profile(3, 3)),
    "k4e": NamedQuery("K4-e", diamond_graph(), diamond_profile),
}


@dataclass(frozen=True)
class GraphClassSpec:
    name: str
    forbidden: tuple[str, ...]

    def queries(self) -> list[NamedQuery]:
        return [QUERIES[q] for q in self.forbidden]


CLASSES: dict[str, GraphClassSpec] = {
    "planar": GraphClassSpec("planar", ("k5", "k33")),
    "outerplanar": GraphClassSpec("outerplanar", ("k4", "k23")),
    "series-parallel": GraphClassSpec("series-parallel", ("k4",)),
    "cactus": GraphClassSpec("cactus", ("k4e",)),
}


def resolve_query(h: Union[str, Graph, NamedQuery]) -> NamedQuery:
    if isinstance(h, NamedQuery):
        return h
    if isinstance(h, Graph):
        if h.isolated_vertices():
            raise ProfileError(f"query graph has isolated vertices {h.isolated_vertices()}")
        return NamedQuery("H", h, lambda: None)  # type: ignore[arg-type,return-value]
    try:
        return QUERIES[h.lower()]
    except KeyError:
        raise ProfileError(f"unknown query shorthand {h!r}; choose from {sorted(QUERIES)}") from None


def query_profile(h: Union[str, Graph, NamedQuery], choice: str = "special") -> ExtendedProfile:
    q = resolve_query(h)
    special = q.special() if choice == "special" else None
    return profile_for(q.graph, choice, special, q.name)


def tm_embeddings(
    g: Graph,
    h: Union[str, Graph, NamedQuery],
    profile_choice: str = "special",
    store: Optional[DDStore] = None,
) -> Mdd:
    """2-DD of all edge subsets of ``g`` that are subdivisions of ``h``."""
    profile = query_profile(h, profile_choice)
    if store is None:
        store = DDStore(g.m)
    colored = construct(g, profile.constraint, store=store)
    return ddops.decolorize(colored, store)


def subdivision_family(
    g: Graph, cls: Union[str, GraphClassSpec], profile_choice: str = "special", store: Optional[DDStore] = None
) -> Mdd:
    """Union of the TM-embedding diagrams of every forbidden graph of ``cls``."""
    spec = CLASSES[cls] if isinstance(cls, str) else cls
    if store is None:
        store = DDStore(g.m)
    acc = Mdd(store, BOT, 2)
    for q in spec.queries():
        acc = ddops.union(acc, tm_embeddings(g, q, profile_choice, store))
    return acc


def ftm_subgraphs(
    g: Graph, cls: Union[str, GraphClassSpec], profile_choice: str = "special", store: Optional[DDStore] = None
) -> Mdd:
    """2-DD of all subgraphs of ``g`` with no subdivision of a forbidden graph."""
    if isinstance(cls, str) and cls not in CLASSES:
        raise ValueError(f"unknown graph class {cls!r}; choose from {sorted(CLASSES)}")
    z = subdivision_family(g, cls, profile_choice, store)
    return ddops.nonsupset(z)
