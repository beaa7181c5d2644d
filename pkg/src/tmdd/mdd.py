"""Hash-consed multi-valued decision diagrams over an ordered ground set.

A node with label ``l`` decides element ``e_l``: its ``j``-th child is taken
when ``e_l`` is excluded (``j = 0``) or included with color ``j``.  Children
sit at label ``l + 1`` or are ``BOT``; ``TOP`` is only ever a child of a
label-``m`` node.  An arc that would reach ``TOP`` early is rewritten into a
chain of exclude-only nodes, so every family has exactly one representation
per store and family equality is reference equality.
"""
from __future__ import annotations

import math
from array import array
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, TextIO, Union

BOT = 0
TOP = 1

ColoredSubset = tuple[frozenset[int], ...]


class MddError(ValueError):
    pass


class DDStore:
    """Append-only node arena with a unique table.

    Node references are ints; ``0`` and ``1`` are the terminals.  Children
    are always created before their parents, so ascending reference order is
    a topological order.
    """

    def __init__(self, ground_set_size: int):
        if ground_set_size < 0:
            raise MddError("ground set size must be nonnegative")
        self.m = ground_set_size
        self._labels = [ground_set_size + 1, ground_set_size + 1]
        self._children: list[tuple[int, ...]] = [(), ()]
        self._unique: dict[tuple[int, tuple[int, ...]], int] = {}
        self._chains: dict[int, list[int]] = {}

    def __len__(self) -> int:
        return len(self._labels)

    def label(self, ref: int) -> int:
        return self._labels[ref]

    def children(self, ref: int) -> tuple[int, ...]:
        return self._children[ref]

    def is_terminal(self, ref: int) -> bool:
        return ref <= TOP

    def empty_chain(self, arity: int, label: int) -> int:
        """Node at ``label`` representing ``{empty set}`` (TOP at label m+1)."""
        if label > self.m:
            return TOP
        chain = self._chains.get(arity)
        if chain is None:
            chain = [TOP]
            self._chains[arity] = chain
        # chain[k] is the node at label m + 1 - k
        depth = self.m + 1 - label
        while len(chain) <= depth:
            lbl = self.m + 1 - len(chain)
            chain.append(self._intern(lbl, (chain[-1],) + (BOT,) * (arity - 1)))
        return chain[depth]

    def _intern(self, label: int, children: tuple[int, ...]) -> int:
        key = (label, children)
        ref = self._unique.get(key)
        if ref is None:
            ref = len(self._labels)
            self._labels.append(label)
            self._children.append(children)
            self._unique[key] = ref
        return ref

    def _make(self, label: int, children: tuple[int, ...]) -> int:
        # unchecked variant for internal builders that already respect levels
        for ch in children:
            if ch != BOT:
                break
        else:
            return BOT
        if label < self.m and TOP in children:
            chain = self.empty_chain(len(children), label + 1)
            children = tuple(chain if ch == TOP else ch for ch in children)
        return self._intern(label, children)

    def make_node(self, label: int, children: Sequence[int]) -> int:
        """Return the canonical node for ``(label, children)``.

        All-``BOT`` children collapse to ``BOT``; a ``TOP`` child below label
        ``m`` is replaced by the exclude-only chain that means the same thing.
        """
        children = tuple(children)
        if not 1 <= label <= self.m:
            raise MddError(f"label {label} outside [1, {self.m}]")
        if len(children) < 2:
            raise MddError("a node needs at least two children")
        arity = len(children)
        for ch in children:
            if not 0 <= ch < len(self._labels):
                raise MddError(f"unknown node reference {ch}")
            if ch <= TOP:
                continue
            if self._labels[ch] != label + 1:
                raise MddError(
                    f"child {ch} has label {self._labels[ch]}, expected {label + 1} or a terminal"
                )
            if len(self._children[ch]) != arity:
                raise MddError("child arity differs from parent arity")
        return self._make(label, children)


@dataclass(frozen=True)
class Mdd:
    """A root in a store, read as a family of ``arity - 1``-colored subsets."""

    store: DDStore
    root: int
    arity: int

    def __post_init__(self) -> None:
        if self.arity < 2:
            raise MddError("arity must be at least 2")
        if self.root > TOP:
            if self.store.label(self.root) != 1:
                raise MddError("a non-terminal root must carry label 1")
            if len(self.store.children(self.root)) != self.arity:
                raise MddError("root arity mismatch")

    @property
    def ground_set_size(self) -> int:
        return self.store.m

    @property
    def colors(self) -> int:
        return self.arity - 1

    def nodes(self) -> list[int]:
        return reachable_nodes(self)

    def __len__(self) -> int:
        return len(reachable_nodes(self))


def reachable_nodes(d: Mdd) -> list[int]:
    """Non-terminal references reachable from the root, ascending."""
    if d.root <= TOP:
        return []
    seen = {d.root}
    stack = [d.root]
    children = d.store._children
    while stack:
        ref = stack.pop()
        for ch in children[ref]:
            if ch > TOP and ch not in seen:
                seen.add(ch)
                stack.append(ch)
    return sorted(seen)


def count_members(d: Mdd) -> int:
    """Number of root-to-TOP paths, i.e. the family size (exact)."""
    if d.root <= TOP:
        return d.root
    counts = {BOT: 0, TOP: 1}
    children = d.store._children
    for ref in reachable_nodes(d):
        counts[ref] = sum(counts[ch] for ch in children[ref])
    return counts[d.root]


def level_sizes(d: Mdd) -> list[int]:
    """Number of reachable nodes per label ``1 .. m``."""
    sizes = [0] * d.store.m
    labels = d.store._labels
    for ref in reachable_nodes(d):
        sizes[labels[ref] - 1] += 1
    return sizes


def width(d: Mdd) -> int:
    return max(level_sizes(d), default=0)


def iter_members(d: Mdd) -> Iterator[ColoredSubset]:
    """Members in depth-first order, lower arcs first.

    Elements are reported by label, i.e. ``e_l`` is ``l``.
    """
    c = d.arity - 1
    labels = d.store._labels
    children = d.store._children
    # picks form a linked list (label, color, parent) shared between siblings
    stack: list[tuple[int, Optional[tuple]]] = [(d.root, None)]
    while stack:
        ref, picks = stack.pop()
        if ref == BOT:
            continue
        if ref == TOP:
            classes: list[set[int]] = [set() for _ in range(c)]
            while picks is not None:
                lbl, j, picks = picks
                classes[j - 1].add(lbl)
            yield tuple(frozenset(s) for s in classes)
            continue
        lbl = labels[ref]
        kids = children[ref]
        for j in range(len(kids) - 1, 0, -1):
            if kids[j] != BOT:
                stack.append((kids[j], (lbl, j, picks)))
        if kids[0] != BOT:
            stack.append((kids[0], picks))


def enumerate_members(d: Mdd, limit: Optional[int] = None) -> list[ColoredSubset]:
    """At most ``limit`` members in the order of :func:`iter_members`."""
    if limit is not None and limit < 1:
        raise MddError("limit must be positive")
    out: list[ColoredSubset] = []
    for member in iter_members(d):
        out.append(member)
        if limit is not None and len(out) >= limit:
            break
    return out


def enumerate_sets(d: Mdd, limit: Optional[int] = None) -> list[frozenset[int]]:
    """Members of a 2-DD as plain label sets."""
    if d.arity != 2:
        raise MddError("enumerate_sets needs a 2-DD")
    return [m[0] for m in enumerate_members(d, limit)]


def contains(d: Mdd, x: Union[ColoredSubset, Iterable[int]]) -> bool:
    """Membership test; a plain set of labels is accepted for 2-DDs."""
    c = d.arity - 1
    classes = _as_colored(x, c)
    color_of: dict[int, int] = {}
    for j, cls in enumerate(classes, start=1):
        for lbl in cls:
            if not 1 <= lbl <= d.store.m:
                raise MddError(f"element {lbl} outside [1, {d.store.m}]")
            if lbl in color_of:
                raise MddError(f"element {lbl} appears in two color classes")
            color_of[lbl] = j
    ref = d.root
    labels = d.store._labels
    children = d.store._children
    while ref > TOP:
        ref = children[ref][color_of.get(labels[ref], 0)]
    return ref == TOP


def _as_colored(x, c: int) -> ColoredSubset:
    items = list(x)
    if items and all(isinstance(v, int) for v in items):
        if c != 1:
            raise MddError("a plain element set is only a member candidate for 2-DDs")
        return (frozenset(items),)
    if len(items) != c:
        raise MddError(f"expected {c} color classes, got {len(items)}")
    return tuple(frozenset(cls) for cls in items)


def format_count(value: int, digits: int = 3) -> str:
    """Scientific notation with ``digits`` significant digits, exact integer arithmetic."""
    if value < 0:
        raise ValueError("counts are nonnegative")
    if value == 0:
        return "0"
    exponent = len(str(value)) - 1
    if exponent < digits:
        scaled, shift = value * 10 ** (digits - 1 - exponent), 0
    else:
        shift = exponent - (digits - 1)
        q, r = divmod(value, 10**shift)
        scaled = q + (1 if 2 * r >= 10**shift else 0)
    if len(str(scaled)) > digits:
        scaled //= 10
        exponent += 1
    mantissa = str(scaled)
    if digits > 1:
        mantissa = mantissa[0] + "." + mantissa[1:]
    return f"{mantissa}e{exponent}"


def log10_count(value: int) -> float:
    return math.log10(value) if value else float("-inf")


def export_text(d: Mdd) -> str:
    """Text dump: header, then ``id label child_0 .. child_c`` bottom-up, root last."""
    nodes = reachable_nodes(d)
    ids = {BOT: 0, TOP: 1}
    for k, ref in enumerate(nodes, start=2):
        ids[ref] = k
    lines = [f"# mdd arity={d.arity} m={d.store.m} root={ids[d.root]}"]
    for ref in nodes:
        kids = " ".join(str(ids[ch]) for ch in d.store.children(ref))
        lines.append(f"{ids[ref]} {d.store.label(ref)} {kids}")
    return "\n".join(lines) + "\n"


def import_text(text: Union[str, TextIO], store: Optional[DDStore] = None) -> Mdd:
    if not isinstance(text, str):
        text = text.read()
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("# mdd"):
        raise MddError("missing '# mdd' header")
    try:
        fields = dict(part.split("=", 1) for part in lines[0][5:].split())
        arity, m, root = int(fields["arity"]), int(fields["m"]), int(fields["root"])
    except (KeyError, ValueError):
        raise MddError(f"bad header {lines[0]!r}") from None
    if store is None:
        store = DDStore(m)
    elif store.m != m:
        raise MddError("store ground set size differs from the dump")
    refs = {0: BOT, 1: TOP}
    for ln in lines[1:]:
        if ln.startswith("#"):
            continue
        parts = [int(p) for p in ln.split()]
        if len(parts) != arity + 2:
            raise MddError(f"bad node line {ln!r}")
        node_id, label, kids = parts[0], parts[1], parts[2:]
        try:
            refs[node_id] = store.make_node(label, [refs[k] for k in kids])
        except KeyError:
            raise MddError(f"node {node_id} references an undefined child") from None
    if root not in refs:
        raise MddError("root id not defined")
    return Mdd(store, refs[root], arity)


def build_levelwise(store: DDStore, start, expand, merge: bool = True) -> int:
    """Breadth-first top-down expansion from label 1, then bottom-up interning.

    ``expand(label, state)`` returns one entry per arc: either a hashable
    non-int state for the next label, or an int node reference (a terminal
    or an existing node at ``label + 1``).  With ``merge`` equal states on a
    level share one node; without it the expansion is a tree.  Only the
    child-index rows are kept once a level has been expanded, packed into
    one int array per level.
    """
    rows: list[array] = []
    current = [start]
    label = 1
    arity = 0
    while current:
        index: dict = {}
        nxt: list = []
        # child slots of every state on this level, flattened; terminals and
        # existing nodes are stored as ``~ref``
        row = array("i")
        for state in current:
            kids = expand(label, state)
            arity = len(kids)
            for k in kids:
                if type(k) is int:
                    row.append(~k)
                elif merge:
                    pos = index.get(k)
                    if pos is None:
                        pos = index[k] = len(nxt)
                        nxt.append(k)
                    row.append(pos)
                else:
                    row.append(len(nxt))
                    nxt.append(k)
        rows.append(row)
        current = nxt
        label += 1
        if label > store.m + 1:
            raise MddError("expansion produced states beyond the last label")

    make = store._make
    refs: list[int] = []
    for lbl in range(len(rows), 0, -1):
        below = refs
        row = rows.pop()
        refs = [
            make(lbl, tuple(below[k] if k >= 0 else ~k for k in row[p : p + arity]))
            for p in range(0, len(row), arity)
        ]
    return refs[0]
