"""Colorful frontier-based search for degree-multiset constraints.

Builds the (c+1)-DD of all c-colored edge subsets of a host graph whose
colored degree multiset is ``s`` plus any number of degrees from ``t`` and
whose every color class is connected.

Internally a configuration is a packed tuple aligned with the sorted
frontier of its level::

    (deg_ids, dn, comps, done)

``deg_ids[p]`` indexes the down-closure table of ``s | t`` (0 is the zero
degree), ``dn[k]`` counts retired vertices attributed to the k-th degree of
``s``, ``comps[j][p]`` is a component label for color ``j + 1`` (0 means the
vertex has no edge of that color yet) and ``done`` is a bitmask of finished
colors.  Component labels are renumbered by first occurrence, so equal packed
tuples are equal configurations.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Union

from .graph import Graph, compute_frontiers
from .mdd import BOT, TOP, DDStore, Mdd, build_levelwise

ColoredDegree = tuple[int, ...]


class ConstraintError(ValueError):
    pass


@dataclass(frozen=True)
class DegreeConstraint:
    """``s`` (exact multiplicities) and ``t`` (any number of occurrences) over ``c`` colors."""

    c: int
    s: tuple[tuple[ColoredDegree, int], ...]
    t: frozenset[ColoredDegree]

    def __post_init__(self) -> None:
        if self.c < 1:
            raise ConstraintError("need at least one color")
        zero = (0,) * self.c
        for delta, mult in self.s:
            if len(delta) != self.c:
                raise ConstraintError(f"degree {delta} does not have {self.c} components")
            if min(delta) < 0 or mult < 1:
                raise ConstraintError(f"bad entry {delta}^{mult} in s")
            if delta == zero:
                raise ConstraintError("the zero degree cannot appear in s")
        for delta in self.t:
            if len(delta) != self.c or min(delta) < 0:
                raise ConstraintError(f"bad degree {delta} in t")
            if delta == zero:
                raise ConstraintError("the zero degree cannot appear in t")
        if len({d for d, _ in self.s}) != len(self.s):
            raise ConstraintError("s lists a degree twice")

    @classmethod
    def build(
        cls,
        c: int,
        s: Union[Mapping[ColoredDegree, int], Iterable[ColoredDegree]],
        t: Iterable[ColoredDegree] = (),
    ) -> "DegreeConstraint":
        counts = Counter(dict(s)) if isinstance(s, Mapping) else Counter(tuple(d) for d in s)
        return cls(
            c,
            tuple(sorted((tuple(d), n) for d, n in counts.items() if n)),
            frozenset(tuple(d) for d in t),
        )

    def multiplicity(self, delta: ColoredDegree) -> int:
        return dict(self.s).get(tuple(delta), 0)

    def size(self) -> int:
        """Total multiplicity of ``s``."""
        return sum(n for _, n in self.s)

    def down_set(self) -> list[ColoredDegree]:
        """All degrees dominated by some element of ``s | t``, zero first."""
        tops = {d for d, _ in self.s} | set(self.t)
        found: set[ColoredDegree] = set()
        for top in tops:
            found.update(itertools.product(*(range(x + 1) for x in top)))
        zero = (0,) * self.c
        found.add(zero)
        return [zero] + sorted(found - {zero})


@dataclass(frozen=True)
class Configuration:
    """Readable form of a search state attached to a node with label ``level``.

    ``deg`` and ``dn`` are sorted ``(key, value)`` pairs; ``comp[j]`` is the
    partition of the color-``j + 1`` tracked frontier vertices.
    """

    level: int
    deg: tuple[tuple[int, ColoredDegree], ...]
    dn: tuple[tuple[ColoredDegree, int], ...]
    comp: tuple[frozenset[frozenset[int]], ...]
    done: tuple[bool, ...]


def canonical_key(cfg: Configuration) -> bytes:
    """Byte key that ignores the naming of component blocks."""
    comps = []
    for blocks in cfg.comp:
        owner = {v: min(b) for b in blocks for v in b}
        names: dict[int, int] = {}
        row = []
        for v in sorted(owner):
            row.append((v, names.setdefault(owner[v], len(names) + 1)))
        comps.append(tuple(row))
    packed = (cfg.level, tuple(sorted(cfg.deg)), tuple(sorted(cfg.dn)), tuple(comps), cfg.done)
    return repr(packed).encode()


class _Level:
    __slots__ = (
        "u", "v", "pu", "pv", "inserts", "departing", "keep", "prev", "ext", "nxt",
        "ru", "rv", "room", "budget", "rem",
    )

    def __init__(self, prev, ext, nxt, u, v, ru, rv):
        self.prev = prev
        self.ext = ext
        self.nxt = nxt
        self.u, self.v = u, v
        old = set(prev)
        # positions of ext that hold newly entered vertices, ascending
        self.inserts = tuple(k for k, x in enumerate(ext) if x not in old)
        self.pu = ext.index(u)
        self.pv = ext.index(v)
        survivors = set(nxt)
        self.departing = tuple(k for k, x in enumerate(ext) if x not in survivors)
        self.keep = tuple(k for k, x in enumerate(ext) if x in survivors)
        # incident edges of u and v still undecided after this one
        self.ru, self.rv = ru, rv
        self.room = 0
        self.budget = 0
        self.rem = ()


class FrontierSearch:
    """Colorful frontier-based search over ``g`` for ``con``."""

    def __init__(self, g: Graph, con: DegreeConstraint):
        self.graph = g
        self.con = con
        self.schedule = compute_frontiers(g)
        c = con.c
        self.c = c
        table = con.down_set()
        self.degrees = table
        ids = {d: k for k, d in enumerate(table)}
        # inc[d][j] = id after one more color-j edge, -1 when no longer dominated
        self.inc = [
            [-1] + [ids.get(d[:j] + (d[j] + 1,) + d[j + 1:], -1) for j in range(c)] for d in table
        ]
        s_pos = {d: k for k, (d, _) in enumerate(con.s)}
        self.s_index = [s_pos.get(d, -1) for d in table]
        self.s_mult = tuple(n for _, n in con.s)
        self.s_total = sum(self.s_mult)
        self.s_sizes = tuple(sum(d) for d, _ in con.s)
        self.in_t = [d in con.t for d in table]
        self.size = [sum(d) for d in table]
        finals = [d for d, _ in con.s] + list(con.t)
        # fewest further edges that turn degree d into an admissible final degree
        self.need = [0] + [
            min(sum(f) - sum(d) for f in finals if all(a <= b for a, b in zip(d, f))) for d in table[1:]
        ]
        self.all_done = (1 << c) - 1
        fr = self.schedule.frontiers
        remaining = g.degrees()
        unseen = g.n - len(g.isolated_vertices())
        self.levels = []
        for i, (u, v) in enumerate(g.edges):
            prev = tuple(sorted(fr[i]))
            ext = tuple(sorted(fr[i] | {u, v}))
            nxt = tuple(sorted(fr[i + 1]))
            remaining[u] -= 1
            remaining[v] -= 1
            lv = _Level(prev, ext, nxt, u, v, remaining[u], remaining[v])
            lv.rem = tuple(remaining[x] for x in nxt)
            unseen -= len(self.schedule.entering[i])
            # vertices that can still retire into s: current frontier plus unseen ones
            lv.room = len(nxt) + unseen
            lv.budget = 2 * (g.m - i - 1)
            self.levels.append(lv)
        self._fate: dict = {}
        self._viable: dict = {}
        self._viable_label = 0

    # packed states ---------------------------------------------------------

    def root_state(self) -> tuple:
        return ((), (0,) * len(self.s_mult), ((),) * self.c, 0)

    def _enter(self, lv: _Level, state: tuple):
        deg, dn, comps, done = state
        deg = list(deg)
        if lv.inserts:
            rows = [list(row) for row in comps]
            for p in lv.inserts:
                deg.insert(p, 0)
                for row in rows:
                    row.insert(p, 0)
            comps = tuple(map(tuple, rows))
        return deg, dn, comps, done

    def step(self, label: int, state: tuple, j: int):
        """Packed child for arc ``j`` of a node at ``label``: a state, ``TOP`` or ``BOT``."""
        lv = self.levels[label - 1]
        deg, dn, comps, done = self._enter(lv, state)
        return self._arc(label, lv, deg, dn, comps, done, j)

    def expand(self, label: int, state: tuple) -> list:
        lv = self.levels[label - 1]
        deg, dn, comps, done = self._enter(lv, state)
        arc = self._arc
        return [arc(label, lv, deg, dn, comps, done, j) for j in range(self.c + 1)]

    def _arc(self, label, lv, deg, dn, comps, done, j):
        pu, pv = lv.pu, lv.pv
        need = self.need
        if j:
            if done >> (j - 1) & 1:
                return BOT
            inc = self.inc
            a = inc[deg[pu]][j]
            b = inc[deg[pv]][j]
            if a < 0 or b < 0 or need[a] > lv.ru or need[b] > lv.rv:
                return BOT
            deg = deg[:]
            deg[pu] = a
            deg[pv] = b
            row = list(comps[j - 1])
            x, y = row[pu], row[pv]
            if x == 0 and y == 0:
                row[pu] = row[pv] = max(row) + 1
            elif x == 0:
                row[pu] = y
            elif y == 0:
                row[pv] = x
            elif x != y:
                row = [x if r == y else r for r in row]
            comps = comps[: j - 1] + (tuple(row),) + comps[j:]
        elif need[deg[pu]] > lv.ru or need[deg[pv]] > lv.rv:
            return BOT

        departing = lv.departing
        keep = lv.keep
        if departing:
            for col in range(self.c):
                if done >> col & 1:
                    continue
                row = comps[col]
                closing = {row[p] for p in departing if row[p]}
                if not closing:
                    continue
                alive = {row[p] for p in keep}
                closing -= alive
                if not closing:
                    continue
                if len(closing) > 1:
                    return BOT
                alive.discard(0)
                if alive:
                    return BOT
                done |= 1 << col
                comps = comps[:col] + ((0,) * len(row),) + comps[col + 1:]

            s_index, s_mult, in_t = self.s_index, self.s_mult, self.in_t
            for p in departing:
                d = deg[p]
                if d == 0:
                    continue
                k = s_index[d]
                if k >= 0 and dn[k] < s_mult[k]:
                    dn = dn[:k] + (dn[k] + 1,) + dn[k + 1:]
                elif not in_t[d]:
                    return BOT
            new_deg = tuple([deg[p] for p in keep])
        else:
            new_deg = tuple(deg)

        if done == self.all_done:
            return TOP if dn == self.s_mult else BOT
        if label == len(self.levels):
            return BOT
        if not self._viable_state(label, lv, new_deg, dn, done):
            return BOT

        if departing:
            new_comps = []
            for col, row in enumerate(comps):
                if done >> col & 1:
                    new_comps.append((0,) * len(keep))
                    continue
                names: dict[int, int] = {}
                out = []
                for p in keep:
                    r = row[p]
                    if r:
                        r = names.get(r) or names.setdefault(r, len(names) + 1)
                    out.append(r)
                new_comps.append(tuple(out))
            return (new_deg, dn, tuple(new_comps), done)

        if j:
            names = {}
            out = []
            for r in comps[j - 1]:
                if r:
                    r = names.get(r) or names.setdefault(r, len(names) + 1)
                out.append(r)
            comps = comps[: j - 1] + (tuple(out),) + comps[j:]
        return (new_deg, dn, comps, done)

    # lookahead -------------------------------------------------------------

    def _viable_state(self, label: int, lv: _Level, deg: tuple, dn: tuple, done: int) -> bool:
        """Necessary conditions that ignore components; memoized per level."""
        if label != self._viable_label:
            self._viable.clear()
            self._viable_label = label
        key = (deg, dn, done)
        ok = self._viable.get(key)
        if ok is None:
            ok = self._viable[key] = self._check_viable(lv, deg, dn, done)
        return ok

    def _check_viable(self, lv: _Level, deg: tuple, dn: tuple, done: int) -> bool:
        s_mult = self.s_mult
        deficit = self.s_total - sum(dn)
        if deficit > lv.room:
            return False
        # endpoint incidences still required versus those the remaining edges offer
        if sum(self.need[d] for d in deg) > lv.budget:
            return False
        if deficit:
            owed = sum((n - x) * z for n, x, z in zip(s_mult, dn, self.s_sizes))
            if owed - sum(self.size[d] for d in deg) > lv.budget:
                return False
        avail = 0
        for k, n in enumerate(dn):
            if n < s_mult[k]:
                avail |= 1 << k
        fate = self._fate
        committed = 0
        sole = [0] * len(s_mult)
        for d, left in zip(deg, lv.rem):
            if d == 0:
                continue
            key = (d, avail, done, left)
            info = fate.get(key) or self._vertex_fate(key)
            if not info[0]:
                return False
            if info[1]:
                committed += 1
                mask = info[2]
                if mask & (mask - 1) == 0:
                    sole[mask.bit_length() - 1] += 1
        if committed > deficit:
            return False
        return all(n <= s_mult[k] - dn[k] for k, n in enumerate(sole))

    def _vertex_fate(self, key: tuple) -> tuple:
        """(reachable, committed, s-mask) for one frontier vertex.

        ``key`` is (degree id, open s slots mask, done mask, edges left).  A
        vertex is committed when no ``t`` degree is reachable, so it must
        retire into one of the s slots in the mask.
        """
        d, avail, done, left = key
        cur = self.degrees[d]

        def fits(f):
            return all(
                a <= b and (a == b or not done >> j & 1) for j, (a, b) in enumerate(zip(cur, f))
            ) and sum(f) - sum(cur) <= left

        smask = 0
        for k, (f, _) in enumerate(self.con.s):
            if avail >> k & 1 and fits(f):
                smask |= 1 << k
        t_ok = any(fits(f) for f in self.con.t)
        out = (bool(smask) or t_ok, not t_ok, smask)
        self._fate[key] = out
        return out

    def construct(self, store: Optional[DDStore] = None, merge: bool = True, check: bool = False) -> Mdd:
        if store is None:
            store = DDStore(self.graph.m)
        elif store.m != self.graph.m:
            raise ConstraintError("store ground set size differs from the host edge count")
        arity = self.c + 1
        if self.graph.m == 0:
            return Mdd(store, BOT, arity)
        expand = self.expand
        if check:
            def expand(label, state, _inner=self.expand):  # noqa: E306
                self.check_state(label, state)
                return _inner(label, state)
        return Mdd(store, build_levelwise(store, self.root_state(), expand, merge=merge), arity)

    # readable configurations ----------------------------------------------

    def unpack(self, label: int, state: tuple) -> Configuration:
        deg, dn, comps, done = state
        frontier = self.levels[label - 1].prev
        comp = []
        for row in comps:
            blocks: dict[int, set[int]] = {}
            for v, r in zip(frontier, row):
                if r:
                    blocks.setdefault(r, set()).add(v)
            comp.append(frozenset(frozenset(b) for b in blocks.values()))
        return Configuration(
            level=label,
            deg=tuple((v, self.degrees[d]) for v, d in zip(frontier, deg)),
            dn=tuple((delta, n) for (delta, _), n in zip(self.con.s, dn)),
            comp=tuple(comp),
            done=tuple(bool(done >> j & 1) for j in range(self.c)),
        )

    def pack(self, cfg: Configuration) -> tuple:
        frontier = self.levels[cfg.level - 1].prev
        degmap = dict(cfg.deg)
        if set(degmap) != set(frontier):
            raise ConstraintError("configuration does not match the frontier of its level")
        ids = {d: k for k, d in enumerate(self.degrees)}
        deg = tuple(ids[tuple(degmap[v])] for v in frontier)
        dnmap = dict(cfg.dn)
        dn = tuple(dnmap.get(delta, 0) for delta, _ in self.con.s)
        comps = []
        for blocks in cfg.comp:
            owner = {v: min(b) for b in blocks for v in b}
            names: dict[int, int] = {}
            comps.append(tuple(names.setdefault(owner[v], len(names) + 1) if v in owner else 0 for v in frontier))
        done = sum(1 << j for j, flag in enumerate(cfg.done) if flag)
        return (deg, dn, tuple(comps), done)

    def root(self) -> Configuration:
        return self.unpack(1, self.root_state())

    def child(self, cfg: Configuration, edge_index: int, branch: int) -> Union[Configuration, int]:
        """Configuration after deciding ``e_{edge_index}`` with ``branch``, or ``TOP``/``BOT``."""
        if edge_index != cfg.level:
            raise ConstraintError("edge index must equal the configuration's level")
        if not 0 <= branch <= self.c:
            raise ConstraintError(f"branch must be in [0, {self.c}]")
        out = self.step(edge_index, self.pack(cfg), branch)
        if type(out) is int:
            return out
        return self.unpack(edge_index + 1, out)

    def check_state(self, label: int, state: tuple) -> None:
        """Assert the configuration invariants for a packed state at ``label``."""
        deg, dn, comps, done = state
        frontier = self.levels[label - 1].prev
        assert len(deg) == len(frontier)
        for k, n in enumerate(dn):
            assert n <= self.s_mult[k], "dn exceeds multiplicity"
        for col, row in enumerate(comps):
            assert len(row) == len(frontier)
            for p, r in enumerate(row):
                positive = self.degrees[deg[p]][col] > 0
                assert bool(r) == positive, "component tracking differs from color degree"
                if done >> col & 1:
                    assert not positive, "finished color still has frontier degree"
            labels = [r for r in row if r]
            seen: list[int] = []
            for r in labels:
                if r not in seen:
                    seen.append(r)
            assert seen == list(range(1, len(seen) + 1)), "labels are not first-occurrence canonical"


def construct(
    g: Graph,
    con: DegreeConstraint,
    store: Optional[DDStore] = None,
    merge: bool = True,
    check: bool = False,
) -> Mdd:
    """(c+1)-DD of all colorings of edge subsets of ``g`` satisfying ``con``."""
    return FrontierSearch(g, con).construct(store, merge=merge, check=check)


def child(search: FrontierSearch, cfg: Configuration, edge_index: int, branch: int):
    return search.child(cfg, edge_index, branch)


def colored_degree_multiset(n: int, colored_edges: Sequence[tuple[int, int, int]], c: int) -> Counter:
    """Multiset of nonzero colored degrees for edges ``(u, v, color)`` with colors ``1..c``."""
    deg = [[0] * c for _ in range(n)]
    for u, v, j in colored_edges:
        deg[u][j - 1] += 1
        deg[v][j - 1] += 1
    return Counter(tuple(d) for d in deg if any(d))
