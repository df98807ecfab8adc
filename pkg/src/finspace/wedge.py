"""Symbolic wedge expressions and their homology.

Grammar:  point | S<n> | susp^<k>(<expr>) | wedge(<expr>, ...)
plus ``#<i>`` for a reference to the i-th child of a certificate node and
``leaf<i>`` for an unresolved space kept alongside the expression.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .homology import HomologyProfile, poset_homology
from .poset import Poset


class Expr:
    __slots__ = ()


@dataclass(frozen=True)
class Point(Expr):
    pass


@dataclass(frozen=True)
class Sphere(Expr):
    n: int


@dataclass(frozen=True)
class Susp(Expr):
    k: int
    child: Expr


@dataclass(frozen=True)
class Wedge(Expr):
    parts: tuple


@dataclass(frozen=True)
class PosetLeaf(Expr):
    poset: Poset


@dataclass(frozen=True)
class Slot(Expr):
    index: int


def wedge(parts) -> Expr:
    return Wedge(tuple(parts))


def _sort_key(e: Expr):
    if isinstance(e, Sphere):
        return (0, e.n, "")
    return (1, 0, to_str(e))


def normalize(e: Expr) -> Expr:
    """Flatten wedges, drop points, push suspensions into wedges and spheres."""
    if isinstance(e, Susp):
        c = normalize(e.child)
        k = e.k
        if k < 0:
            raise ValueError("negative suspension")
        if k == 0:
            return c
        if isinstance(c, Point):
            return c
        if isinstance(c, Sphere):
            return Sphere(c.n + k)
        if isinstance(c, Susp):
            return Susp(c.k + k, c.child)
        if isinstance(c, Wedge):
            return normalize(Wedge(tuple(Susp(k, p) for p in c.parts)))
        return Susp(k, c)
    if isinstance(e, Wedge):
        flat = []
        for p in e.parts:
            q = normalize(p)
            if isinstance(q, Wedge):
                flat.extend(q.parts)
            elif not isinstance(q, Point):
                flat.append(q)
        if not flat:
            return Point()
        if len(flat) == 1:
            return flat[0]
        flat.sort(key=_sort_key)
        return Wedge(tuple(flat))
    if isinstance(e, Sphere) and e.n < 0:
        raise ValueError("sphere of negative dimension")
    return e


def substitute(e: Expr, values) -> Expr:
    """Replace Slot(i) by values[i]."""
    if isinstance(e, Slot):
        return values[e.index]
    if isinstance(e, Susp):
        return Susp(e.k, substitute(e.child, values))
    if isinstance(e, Wedge):
        return Wedge(tuple(substitute(p, values) for p in e.parts))
    return e


def slots(e: Expr) -> list[int]:
    if isinstance(e, Slot):
        return [e.index]
    if isinstance(e, Susp):
        return slots(e.child)
    if isinstance(e, Wedge):
        return [i for p in e.parts for i in slots(p)]
    return []


def leaves(e: Expr) -> list[Poset]:
    if isinstance(e, PosetLeaf):
        return [e.poset]
    if isinstance(e, Susp):
        return leaves(e.child)
    if isinstance(e, Wedge):
        return [q for p in e.parts for q in leaves(p)]
    return []


def is_resolved(e: Expr) -> bool:
    """Only spheres and points remain."""
    if isinstance(e, (Point, Sphere)):
        return True
    if isinstance(e, Susp):
        return is_resolved(e.child)
    if isinstance(e, Wedge):
        return all(is_resolved(p) for p in e.parts)
    return False


def sphere_dims(e: Expr) -> list[int]:
    """Sphere dimensions of a resolved expression, ascending."""
    e = normalize(e)
    parts = e.parts if isinstance(e, Wedge) else (e,)
    out = []
    for p in parts:
        if isinstance(p, Point):
            continue
        if not isinstance(p, Sphere):
            raise ValueError("expression is not a wedge of spheres")
        out.append(p.n)
    return sorted(out)


def homology(e: Expr) -> HomologyProfile:
    if isinstance(e, Point):
        return HomologyProfile.zero()
    if isinstance(e, Sphere):
        return HomologyProfile.sphere(e.n)
    if isinstance(e, Susp):
        return homology(e.child).shift(e.k)
    if isinstance(e, Wedge):
        h = HomologyProfile.zero()
        for p in e.parts:
            h = h + homology(p)
        return h
    if isinstance(e, PosetLeaf):
        return poset_homology(e.poset)
    raise ValueError(f"cannot take homology of {e!r}")


def to_str(e: Expr, store: list | None = None) -> str:
    if isinstance(e, Point):
        return "point"
    if isinstance(e, Sphere):
        return f"S{e.n}"
    if isinstance(e, Susp):
        return f"susp^{e.k}({to_str(e.child, store)})"
    if isinstance(e, Wedge):
        return "wedge(" + ", ".join(to_str(p, store) for p in e.parts) + ")"
    if isinstance(e, Slot):
        return f"#{e.index}"
    if isinstance(e, PosetLeaf):
        if store is None:
            return f"leaf[{e.poset.n}]"
        store.append(e.poset)
        return f"leaf{len(store) - 1}"
    raise TypeError(e)


_TOKEN = re.compile(r"\s*(point|S\d+|susp\^\d+\(|wedge\(|#\d+|leaf\d+|,|\))")


def parse_expr(s: str, store: list | None = None) -> Expr:
    toks = []
    pos = 0
    s = s.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise ValueError(f"bad wedge expression near {s[pos:pos + 12]!r}")
        toks.append(m.group(1))
        pos = m.end()
        while pos < len(s) and s[pos].isspace():
            pos += 1
    at = [0]

    def take():
        if at[0] >= len(toks):
            raise ValueError("unexpected end of wedge expression")
        t = toks[at[0]]
        at[0] += 1
        return t

    def expr():
        t = take()
        if t == "point":
            return Point()
        if t.startswith("S"):
            return Sphere(int(t[1:]))
        if t.startswith("#"):
            return Slot(int(t[1:]))
        if t.startswith("leaf"):
            if store is None:
                raise ValueError("leaf reference without leaf table")
            return PosetLeaf(store[int(t[4:])])
        if t.startswith("susp^"):
            k = int(t[5:-1])
            c = expr()
            if take() != ")":
                raise ValueError("expected ')'")
            return Susp(k, c)
        if t == "wedge(":
            parts = [expr()]
            while True:
                t = take()
                if t == ")":
                    return Wedge(tuple(parts))
                if t != ",":
                    raise ValueError("expected ',' or ')'")
                parts.append(expr())
        raise ValueError(f"unexpected token {t!r}")

    e = expr()
    if at[0] != len(toks):
        raise ValueError("trailing input in wedge expression")
    return e
