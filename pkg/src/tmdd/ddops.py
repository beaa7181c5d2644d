"""Family algebra on decision diagrams: decolorize, union, nonsupset.

All three walk the operands one label at a time.  Results are interned in
``store`` (default: the store of the first operand); operands are never
modified.
"""
from __future__ import annotations

from typing import Optional

from .mdd import BOT, TOP, DDStore, Mdd, MddError, build_levelwise, reachable_nodes


def _target(d: Mdd, store: Optional[DDStore]) -> DDStore:
    out = d.store if store is None else store
    if out.m != d.store.m:
        raise MddError("ground set sizes differ")
    return out


def _lift(d: Mdd) -> Mdd:
    """Rewrite a TOP root into the exclude-only chain so every root has label 1."""
    if d.root == TOP and d.store.m:
        return Mdd(d.store, d.store.empty_chain(d.arity, 1), d.arity)
    return d


def decolorize(d: Mdd, store: Optional[DDStore] = None) -> Mdd:
    """2-DD of ``{B_1 | ... | B_c}`` over the colored members of ``d``.

    Subset construction: the state at a label is the sorted tuple of source
    nodes reachable under one uncolored prefix.
    """
    out = _target(d, store)
    if d.root <= TOP:
        return Mdd(out, d.root, 2)
    children = d.store._children
    m = d.store.m

    def expand(label, state):
        excl = set()
        incl = set()
        for ref in state:
            kids = children[ref]
            excl.add(kids[0])
            incl.update(kids[1:])
        excl.discard(BOT)
        incl.discard(BOT)
        if label == m:
            return (TOP if excl else BOT, TOP if incl else BOT)
        return (tuple(sorted(excl)) if excl else BOT, tuple(sorted(incl)) if incl else BOT)

    return Mdd(out, build_levelwise(out, (d.root,), expand), 2)


def union(a: Mdd, b: Mdd, store: Optional[DDStore] = None) -> Mdd:
    if a.arity != 2 or b.arity != 2:
        raise MddError("union is defined on 2-DDs")
    if a.store.m != b.store.m:
        raise MddError("ground set sizes differ")
    out = _target(a, store)
    a, b = _lift(a), _lift(b)
    if a.store is not out or b.store is not out:
        a = _copy(a, out)
        b = _copy(b, out)
    children = out._children

    def combine(x: int, y: int):
        if x == BOT or x == y:
            return y
        if y == BOT:
            return x
        return (x, y) if x < y else (y, x)

    start = combine(a.root, b.root)
    if type(start) is int:
        return Mdd(out, start, 2)

    def expand(label, state):
        x, y = state
        cx, cy = children[x], children[y]
        return (combine(cx[0], cy[0]), combine(cx[1], cy[1]))

    return Mdd(out, build_levelwise(out, start, expand), 2)


def nonsupset(z: Mdd, store: Optional[DDStore] = None) -> Mdd:
    """All subsets ``A`` of the ground set containing no member of ``z``.

    The state at a label is the set of ``z`` nodes whose members must still
    be avoided by the rest of ``A``.  Including the current element carries
    both the exclude and include children of every pending node forward.
    """
    if z.arity != 2:
        raise MddError("nonsupset is defined on 2-DDs")
    out = _target(z, store)
    m = z.store.m
    if z.root == TOP:
        return Mdd(out, BOT, 2)
    children = z.store._children
    has_empty: dict[int, bool] = {TOP: True}

    def holds_empty(ref: int) -> bool:
        # the exclude-only path from ref reaches TOP
        trail = []
        while ref not in has_empty:
            if ref == BOT:
                has_empty[BOT] = False
                break
            trail.append(ref)
            ref = children[ref][0]
        value = has_empty[ref]
        for r in trail:
            has_empty[r] = value
        return value

    def settle(label: int, pending: set[int]):
        pending.discard(BOT)
        if label > m:
            return BOT if pending else TOP
        for ref in pending:
            if holds_empty(ref):
                return BOT
        return tuple(sorted(pending))

    def expand(label, state):
        excl = {children[ref][0] for ref in state}
        incl = set(excl)
        incl.update(children[ref][1] for ref in state)
        return (settle(label + 1, excl), settle(label + 1, incl))

    start = settle(1, {z.root})
    if type(start) is int:
        return Mdd(out, start, 2)
    return Mdd(out, build_levelwise(out, start, expand), 2)


def _copy(d: Mdd, out: DDStore) -> Mdd:
    """Re-intern ``d`` into ``out``."""
    if d.store is out:
        return d
    if d.root <= TOP:
        return _lift(Mdd(out, d.root, d.arity))
    mapping = {BOT: BOT, TOP: TOP}
    src = d.store
    for ref in reachable_nodes(d):
        mapping[ref] = out._make(src.label(ref), tuple(mapping[ch] for ch in src.children(ref)))
    return Mdd(out, mapping[d.root], d.arity)


def import_into(d: Mdd, out: DDStore) -> Mdd:
    return _copy(d, out)
