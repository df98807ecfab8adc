"""Finite simplicial complexes and the order complex of a poset."""
from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .poset import DEFAULT_CHAIN_CAP, Poset, bits, chains


class SimplicialComplex:
    """Downward closed family of simplices on vertices 0..n-1.

    Simplices are sorted vertex tuples; ``faces[d]`` lists the d-simplices.
    """

    def __init__(self, labels: Sequence[str], simplices: Iterable[Sequence[int]], closed: bool = False):
        self.labels = tuple(labels)
        found: set[tuple[int, ...]] = set()
        for s in simplices:
            t = tuple(sorted(s))
            if not t:
                continue
            if closed:
                found.add(t)
            else:
                for k in range(1, len(t) + 1):
                    found.update(combinations(t, k))
        top = max((len(t) for t in found), default=0)
        faces: list[list[tuple[int, ...]]] = [[] for _ in range(top)]
        for t in found:
            faces[len(t) - 1].append(t)
        for f in faces:
            f.sort()
        self.faces = faces
        self._set = found

    @property
    def dim(self) -> int:
        return len(self.faces) - 1

    def __contains__(self, s) -> bool:
        return tuple(sorted(s)) in self._set

    def __len__(self):
        return len(self._set)

    def simplices(self):
        for f in self.faces:
            yield from f

    def vertices(self) -> list[int]:
        return [t[0] for t in self.faces[0]] if self.faces else []

    def f_vector(self) -> list[int]:
        return [len(f) for f in self.faces]

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(f) for d, f in enumerate(self.faces))

    def is_closed(self) -> bool:
        for t in self._set:
            if len(t) > 1:
                for i in range(len(t)):
                    if t[:i] + t[i + 1:] not in self._set:
                        return False
        return True

    def link(self, v: int) -> "SimplicialComplex":
        out = []
        for t in self._set:
            if v in t and len(t) > 1:
                out.append(tuple(x for x in t if x != v))
        return SimplicialComplex(self.labels, out, closed=True)

    def star(self, v: int) -> "SimplicialComplex":
        out = [t for t in self._set if v in t]
        return SimplicialComplex(self.labels, out)

    def deletion(self, v: int) -> "SimplicialComplex":
        return SimplicialComplex(self.labels, [t for t in self._set if v not in t], closed=True)

    def components(self) -> list[set[int]]:
        parent = {v: v for v in self.vertices()}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        if len(self.faces) > 1:
            for a, b in self.faces[1]:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, set[int]] = {}
        for v in parent:
            groups.setdefault(find(v), set()).add(v)
        return [groups[k] for k in sorted(groups)]

    def export_lines(self) -> list[str]:
        """One simplex per line, labels separated by spaces, by dimension."""
        return [" ".join(self.labels[v] for v in t) for f in self.faces for t in f]


def order_complex(p: Poset, mask: int | None = None, cap: int = DEFAULT_CHAIN_CAP) -> SimplicialComplex:
    """Nonempty chains of p as simplices; vertex order follows element ids."""
    chs = chains(p, mask, cap=cap)
    return SimplicialComplex(p.labels, (tuple(bits(c)) for c in chs), closed=True)


def face_poset(k: SimplicialComplex) -> Poset:
    """Simplices of k ordered by inclusion."""
    simp = list(k.simplices())
    pos = {t: i for i, t in enumerate(simp)}
    down = []
    for t in simp:
        m = 0
        for r in range(1, len(t) + 1):
            for s in combinations(t, r):
                m |= 1 << pos[s]
        down.append(m)
    labels = ["{" + ",".join(k.labels[v] for v in t) + "}" for t in simp]
    return Poset(labels, down, check=False)
