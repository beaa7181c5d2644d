"""Host and query graphs with a fixed edge order, plus frontier schedules.

Vertices are ``0 .. n-1``.  The edge order matters: decision diagrams built
over a graph use ``e_1 .. e_m`` in exactly this order, and the frontier width
of the order governs construction cost.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, TextIO, Union

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graphs or unparsable edge lists."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph whose edge order is part of its value."""

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("vertex count must be nonnegative")
        normalized = []
        seen = set()
        for k, (u, v) in enumerate(self.edges):
            if u == v:
                raise GraphError(f"edge {k + 1} is a self-loop on vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {k + 1} = ({u}, {v}) has an endpoint outside [0, {self.n})")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"edge {k + 1} = ({u}, {v}) is a duplicate")
            seen.add(key)
            normalized.append(key)
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def isolated_vertices(self) -> list[int]:
        return [v for v, d in enumerate(self.degrees()) if d == 0]

    def edge_subgraph(self, indices: Iterable[int]) -> "Graph":
        """Subgraph on the same vertex set keeping the given 0-based edge indices."""
        return Graph(self.n, tuple(self.edges[i] for i in sorted(indices)))

    def to_edge_list(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u + 1} {v + 1}" for u, v in self.edges)
        return "\n".join(lines) + "\n"


def parse_edge_list(text: Union[str, TextIO]) -> Graph:
    """Parse a 1-based edge list.

    Lines starting with ``#`` and blank lines are skipped.  A first data line
    is treated as an ``n m`` header when the number of remaining data lines
    equals ``m``; otherwise every data line is an edge.
    """
    if not isinstance(text, str):
        text = text.read()
    rows: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: expected two integers, got {line!r}") from None
        if a < 0 or b < 0:
            raise GraphError(f"line {lineno}: negative vertex id")
        rows.append((lineno, a, b))

    n_header = None
    if rows and rows[0][2] == len(rows) - 1 and rows[0][1] >= 1:
        _, n_header, _ = rows[0]
        rows = rows[1:]

    edges = []
    seen = set()
    max_id = 0
    for lineno, a, b in rows:
        if a == 0 or b == 0:
            raise GraphError(f"line {lineno}: vertex ids are 1-based")
        if a == b:
            raise GraphError(f"line {lineno}: self-loop on vertex {a}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphError(f"line {lineno}: duplicate edge {a} {b}")
        seen.add(key)
        max_id = max(max_id, a, b)
        edges.append((a - 1, b - 1))
    n = max_id
    if n_header is not None:
        if n_header < max_id:
            raise GraphError(f"header declares {n_header} vertices but vertex {max_id} appears")
        n = n_header
    return Graph(n, tuple(edges))


def complete_graph(a: int) -> Graph:
    if a < 1:
        raise GraphError("complete graph needs a >= 1")
    return Graph(a, tuple((u, v) for u in range(a) for v in range(u + 1, a)))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    """K_{a,b} with part A = 0..a-1 and part B = a..a+b-1."""
    if a < 1 or b < 1:
        raise GraphError("complete bipartite graph needs a, b >= 1")
    return Graph(a + b, tuple((u, a + v) for u in range(a) for v in range(b)))


def king_graph(rows: int, cols: int) -> Graph:
    """Grid graph with both diagonals of every unit square.

    Vertex ``(r, c)`` is ``r * cols + c``.  Cells are swept column by column;
    each cell emits its right, down, down-right and down-left edges where
    they exist, which keeps the frontier inside two adjacent columns.
    """
    if rows < 1 or cols < 1:
        raise GraphError("king graph needs rows, cols >= 1")

    def vid(r: int, c: int) -> int:
        return r * cols + c

    edges = []
    for c in range(cols):
        for r in range(rows):
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c)))
                if c + 1 < cols:
                    edges.append((vid(r, c), vid(r + 1, c + 1)))
                if c >= 1:
                    edges.append((vid(r, c), vid(r + 1, c - 1)))
    return Graph(rows * cols, tuple(edges))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def diamond_graph() -> Graph:
    """K_4 minus an edge, vertices a, b, c, d = 0..3 with bd missing."""
    return Graph(4, ((0, 1), (0, 2), (0, 3), (2, 1), (2, 3)))


@dataclass(frozen=True)
class FrontierSchedule:
    """Frontiers ``F_1 .. F_{m+1}`` (stored 0-based) with vertex entry/exit events.

    ``frontiers[i]`` is the frontier in front of edge ``e_{i+1}``;
    ``entering[i]`` / ``leaving[i]`` list the vertices whose first / last
    incident edge is ``e_{i+1}``.
    """

    frontiers: tuple[frozenset[int], ...]
    entering: tuple[tuple[int, ...], ...]
    leaving: tuple[tuple[int, ...], ...]
    width: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "width", max((len(f) for f in self.frontiers), default=0))


def compute_frontiers(g: Graph) -> FrontierSchedule:
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    for i, (u, v) in enumerate(g.edges):
        for x in (u, v):
            first.setdefault(x, i)
            last[x] = i
    entering: list[list[int]] = [[] for _ in range(g.m)]
    leaving: list[list[int]] = [[] for _ in range(g.m)]
    for x in sorted(first):
        entering[first[x]].append(x)
        leaving[last[x]].append(x)

    frontiers = [frozenset()]
    current: set[int] = set()
    for i in range(g.m):
        current.update(entering[i])
        current.difference_update(leaving[i])
        frontiers.append(frozenset(current))
    return FrontierSchedule(
        tuple(frontiers),
        tuple(tuple(x) for x in entering),
        tuple(tuple(x) for x in leaving),
    )


def _bfs_vertex_order(g: Graph) -> list[int]:
    adj = [sorted(nb) for nb in g.adjacency()]
    order: list[int] = []
    seen = [False] * g.n
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


def reorder_edges(g: Graph, strategy: str = "as-given") -> Graph:
    """Return ``g`` with its edges reordered.

    ``bfs`` visits vertices breadth-first from vertex 0 (restarting at the
    smallest unvisited vertex) and emits each vertex's remaining edges in the
    breadth-first rank of the other endpoint.
    """
    if strategy == "as-given":
        return g
    if strategy != "bfs":
        raise GraphError(f"unknown edge-order strategy {strategy!r}")
    rank = {v: k for k, v in enumerate(_bfs_vertex_order(g))}
    ordered = sorted(g.edges, key=lambda e: (min(rank[e[0]], rank[e[1]]), max(rank[e[0]], rank[e[1]])))
    return Graph(g.n, tuple(ordered))


def iter_edge_subsets(g: Graph) -> Iterator[int]:
    """Bitmasks of all edge subsets in binary-counter order (bit i = edge i)."""
    return iter(range(1 << g.m))


def subset_edges(g: Graph, mask: int) -> list[Edge]:
    return [e for i, e in enumerate(g.edges) if mask >> i & 1]


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Apply the vertex permutation ``v -> perm[v]``, keeping edge order."""
    return Graph(g.n, tuple((perm[u], perm[v]) for u, v in g.edges))
