"""Isomorphism classes of finite posets.

Posets are grown one maximal element at a time: a child of P adds a new
top element x whose strict down-set is a down-set D of P.  A child is kept
only if x lies in the automorphism orbit of a canonically chosen maximal
element (canonical deletion), so each class has exactly one parent class.
Children of the same parent are deduplicated by canonical form.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .poset import Poset, bits, popcount


@dataclass
class _Frame:
    hd: list[list[int]]
    hu: list[list[int]]
    down: tuple[int, ...]
    twin: list[int]


def _frame(down: tuple[int, ...]) -> _Frame:
    n = len(down)
    up = [0] * n
    for i, d in enumerate(down):
        for j in bits(d):
            up[j] |= 1 << i
    hd = [[j for j in bits(down[i]) if j != i] for i in range(n)]
    hu = [[j for j in bits(up[i]) if j != i] for i in range(n)]
    seen: dict = {}
    twin = []
    for i in range(n):
        key = (down[i] & ~(1 << i), up[i] & ~(1 << i))
        twin.append(seen.setdefault(key, i))
    return _Frame(hd, hu, down, twin)


def _initial_colors(f: _Frame) -> list:
    n = len(f.down)
    lev = [0] * n
    order = sorted(range(n), key=lambda i: len(f.hd[i]))
    for i in order:
        lev[i] = max((lev[j] + 1 for j in f.hd[i]), default=0)
    dep = [0] * n
    for i in reversed(order):
        dep[i] = max((dep[j] + 1 for j in f.hu[i]), default=0)
    return [(lev[i], dep[i], len(f.hu[i]), len(f.hd[i])) for i in range(n)]


def _renumber(keys: list) -> list[int]:
    table = {k: r for r, k in enumerate(sorted(set(keys)))}
    return [table[k] for k in keys]


def _refine(f: _Frame, col: list[int]) -> list[int]:
    ncol = len(set(col))
    while True:
        keys = [(col[i], tuple(sorted(col[j] for j in f.hd[i])), tuple(sorted(col[j] for j in f.hu[i])))
                for i in range(len(col))]
        new = _renumber(keys)
        k = len(set(new))
        if k == ncol:
            return new
        col, ncol = new, k


def _cert(f: _Frame, order: list[int]) -> tuple[int, ...]:
    pos = [0] * len(order)
    for k, v in enumerate(order):
        pos[v] = k
    out = []
    for v in order:
        m = 0
        for y in bits(f.down[v]):
            m |= 1 << pos[y]
        out.append(m)
    return tuple(out)


@dataclass
class Canon:
    form: tuple[int, ...]
    order: list[int]        # order[k] = element placed at canonical position k
    orbit: list[int]        # orbit representative of every element
    colors: list[int]       # stable colouring before any individualisation


def canonical(down: tuple[int, ...]) -> Canon:
    """Canonical labelling by colour refinement and individualisation."""
    f = _frame(down)
    n = len(down)
    if n == 0:
        return Canon((), [], [], [])
    col0 = _refine(f, _renumber(_initial_colors(f)))
    best: list = [None, []]  # best certificate, leaves attaining it

    def search(col):
        if len(set(col)) == n:
            order = sorted(range(n), key=col.__getitem__)
            c = _cert(f, order)
            if best[0] is None or c < best[0]:
                best[0] = c
                best[1] = [order]
            elif c == best[0]:
                best[1].append(order)
            return
        sizes: dict[int, int] = {}
        for c in col:
            sizes[c] = sizes.get(c, 0) + 1
        target = min(c for c, s in sizes.items() if s > 1)
        tried = set()
        for v in range(n):
            if col[v] != target or f.twin[v] in tried:
                continue
            tried.add(f.twin[v])
            keys = [(2 * c + (1 if c == target and i != v else 0)) for i, c in enumerate(col)]
            search(_refine(f, _renumber(keys)))

    search(col0)
    form, leaves = best
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    base = leaves[0]
    for other in leaves[1:]:
        for k in range(n):
            union(base[k], other[k])
    for v in range(n):
        union(v, f.twin[v])
    return Canon(form, base, [find(v) for v in range(n)], col0)


def canonical_form(p: Poset) -> bytes:
    """Isomorphism invariant that separates non-isomorphic posets."""
    form = canonical(p.down).form
    width = max(1, (p.n + 7) // 8)
    return bytes([p.n]) + b"".join(m.to_bytes(width, "little") for m in form)


def canonical_poset(p: Poset) -> Poset:
    c = canonical(p.down)
    return Poset([str(i) for i in range(p.n)], c.form, check=False)


def is_isomorphic(p: Poset, q: Poset) -> bool:
    return p.n == q.n and canonical(p.down).form == canonical(q.down).form


def down_sets(down: tuple[int, ...]) -> list[int]:
    """All down-sets (as masks), deciding elements along a linear extension."""
    n = len(down)
    order = sorted(range(n), key=lambda i: popcount(down[i]))
    out = []

    def rec(k, d):
        if k == n:
            out.append(d)
            return
        x = order[k]
        rec(k + 1, d)
        if down[x] & ~(1 << x) & ~d == 0:
            rec(k + 1, d | 1 << x)

    rec(0, 0)
    return out


def _top_invariant(down: tuple[int, ...], x: int) -> tuple:
    return (popcount(down[x]), tuple(sorted(popcount(down[y]) for y in bits(down[x]))))


def children(down: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Canonical-deletion children of one parent, in a deterministic order."""
    n = len(down)
    new = 1 << n
    out = []
    seen = set()
    for d in down_sets(down):
        q = down + (d | new,)
        # maximal elements of q: old maxima not below the new point, plus n
        tops = [i for i in range(n) if not d >> i & 1 and all(not q[j] >> i & 1 for j in range(n) if j != i)]
        tops.append(n)
        inv = {t: _top_invariant(q, t) for t in tops}
        best_inv = max(inv.values())
        if inv[n] != best_inv:
            continue
        cands = [t for t in tops if inv[t] == best_inv]
        if len(cands) == 1:
            c = canonical(q)
        else:
            c = canonical(q)
            pos = {v: k for k, v in enumerate(c.order)}
            chosen = min(cands, key=pos.__getitem__)
            if c.orbit[chosen] != c.orbit[n]:
                continue
        if c.form in seen:
            continue
        seen.add(c.form)
        out.append(q)
    return out


def _is_connected(down: tuple[int, ...]) -> bool:
    n = len(down)
    if n == 0:
        return False
    star = [0] * n
    for i, d in enumerate(down):
        star[i] |= d
        for j in bits(d):
            star[j] |= 1 << i
    comp = 1
    frontier = 1
    while frontier:
        grow = 0
        for i in bits(frontier):
            grow |= star[i]
        grow &= ~comp
        comp |= grow
        frontier = grow
    return comp == (1 << n) - 1


def level_posets(n: int, previous: list[tuple[int, ...]] | None = None) -> list[tuple[int, ...]]:
    """One representative of every poset class with n points."""
    if n == 0:
        return [()]
    if previous is None:
        previous = level_posets(n - 1)
    out = []
    for par in previous:
        out.extend(children(par))
    return out


def all_levels(nmax: int) -> list[list[tuple[int, ...]]]:
    levels = [[()]]
    for n in range(1, nmax + 1):
        levels.append(level_posets(n, levels[-1]))
    return levels


def as_poset(down: tuple[int, ...]) -> Poset:
    return Poset([f"x{i}" for i in range(len(down))], down, check=False)


def enumerate_connected_posets(n: int, previous: list[tuple[int, ...]] | None = None) -> Iterator[Poset]:
    """Connected posets with n points, one per isomorphism class."""
    if previous is None:
        previous = all_levels(n - 1)[-1] if n > 0 else []
    for par in previous:
        for q in children(par):
            if _is_connected(q):
                yield as_poset(q)


def class_counts(nmax: int) -> dict[int, tuple[int, int]]:
    """n -> (all classes, connected classes)."""
    out = {}
    levels = all_levels(nmax)
    for n in range(1, nmax + 1):
        lv = levels[n]
        out[n] = (len(lv), sum(1 for q in lv if _is_connected(q)))
    return out
