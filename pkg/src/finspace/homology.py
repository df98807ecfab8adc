"""Exact integer homology through Smith normal form.

Matrices are kept sparse as a list of rows, each a dict column -> nonzero
int.  Python ints never overflow, so no promotion step is needed.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .poset import Poset
from .simplicial import SimplicialComplex, order_complex


def _eliminate_units(rows: list[dict[int, int]]) -> tuple[int, list[dict[int, int]]]:
    """Pivot on +-1 entries until none remain; return (#units, remaining rows)."""
    cols: dict[int, set[int]] = {}
    for r, row in enumerate(rows):
        for c in row:
            cols.setdefault(c, set()).add(r)
    alive = set(range(len(rows)))
    units = 0
    changed = True
    while changed:
        changed = False
        for c in sorted(cols):
            hold = cols.get(c)
            if not hold:
                cols.pop(c, None)
                continue
            r = min((r for r in hold if rows[r][c] in (1, -1)), default=None)
            if r is None:
                continue
            prow = rows[r]
            v = prow[c]
            for s in list(hold):
                if s == r:
                    continue
                srow = rows[s]
                f = srow[c] * v
                for k, pv in prow.items():
                    nv = srow.get(k, 0) - f * pv
                    if nv:
                        if k not in srow:
                            cols.setdefault(k, set()).add(s)
                        srow[k] = nv
                    else:
                        del srow[k]
                        cols[k].discard(s)
            for k in prow:
                cols[k].discard(r)
            cols.pop(c, None)
            alive.discard(r)
            rows[r] = {}
            units += 1
            changed = True
    return units, [rows[r] for r in sorted(alive) if rows[r]]


def _diagonalize(dense: list[list[int]]) -> list[int]:
    """Diagonal entries (not yet a divisibility chain) of a dense matrix."""
    a = [row[:] for row in dense]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    top = 0
    while top < m and top < n:
        best = None
        for j in range(top, n):
            for i in range(top, m):
                v = abs(a[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        _, i, j = best
        a[top], a[i] = a[i], a[top]
        for row in a:
            row[top], row[j] = row[j], row[top]
        while True:
            p = a[top][top]
            dirty = False
            for i in range(top + 1, m):
                if a[i][top]:
                    q = a[i][top] // p
                    if q:
                        ri, rt = a[i], a[top]
                        for k in range(top, n):
                            ri[k] -= q * rt[k]
                    if a[i][top]:
                        dirty = True
            for j in range(top + 1, n):
                if a[top][j]:
                    q = a[top][j] // p
                    if q:
                        for row in a:
                            row[j] -= q * row[top]
                    if a[top][j]:
                        dirty = True
            if not dirty:
                break
            # a smaller remainder appeared; move it to the pivot slot
            best = None
            for i in range(top, m):
                v = abs(a[i][top])
                if v and (best is None or v < best[0]):
                    best = (v, i, top)
            for j in range(top, n):
                v = abs(a[top][j])
                if v and (best is None or v < best[0]):
                    best = (v, top, j)
            _, i, j = best
            a[top], a[i] = a[i], a[top]
            for row in a:
                row[top], row[j] = row[j], row[top]
        diag.append(abs(a[top][top]))
        top += 1
    return diag


def _divisibility_chain(diag: Sequence[int]) -> list[int]:
    d = sorted(x for x in diag if x)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def smith_invariants_sparse(rows: list[dict[int, int]]) -> list[int]:
    """Invariant factors d1 | d2 | ... of a sparse integer matrix.

    The rows are consumed.
    """
    units, rest = _eliminate_units(rows)
    inv = [1] * units
    if rest:
        colset = sorted({c for row in rest for c in row})
        cpos = {c: k for k, c in enumerate(colset)}
        dense = [[0] * len(colset) for _ in rest]
        for i, row in enumerate(rest):
            for c, v in row.items():
                dense[i][cpos[c]] = v
        inv.extend(_divisibility_chain(_diagonalize(dense)))
    return inv


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors of a dense integer matrix (positive, each divides the next)."""
    rows = [{j: int(v) for j, v in enumerate(row) if v} for row in matrix]
    return smith_invariants_sparse(rows)


def smith_rank(matrix: Sequence[Sequence[int]]) -> int:
    return len(smith_normal_form(matrix))


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced integral homology: dims[d] = (betti number, torsion coefficients)."""
    dims: tuple[tuple[int, tuple[int, ...]], ...]
    reduced: bool = True

    @staticmethod
    def make(dims, reduced: bool = True) -> "HomologyProfile":
        dims = [(int(b), tuple(sorted(int(t) for t in tor))) for b, tor in dims]
        while len(dims) > 1 and dims[-1] == (0, ()):
            dims.pop()
        if not dims:
            dims = [(0, ())]
        return HomologyProfile(tuple(dims), reduced)

    @staticmethod
    def zero() -> "HomologyProfile":
        return HomologyProfile.make([])

    @staticmethod
    def sphere(n: int) -> "HomologyProfile":
        return HomologyProfile.make([(0, ())] * n + [(1, ())])

    def betti(self, d: int) -> int:
        return self.dims[d][0] if 0 <= d < len(self.dims) else 0

    def torsion(self, d: int) -> tuple[int, ...]:
        return self.dims[d][1] if 0 <= d < len(self.dims) else ()

    def bettis(self) -> list[int]:
        return [b for b, _ in self.dims]

    def is_zero(self) -> bool:
        return all(b == 0 and not t for b, t in self.dims)

    def is_torsion_free(self) -> bool:
        return all(not t for _, t in self.dims)

    def shift(self, k: int = 1) -> "HomologyProfile":
        """Homology of the k-fold suspension."""
        return HomologyProfile.make([(0, ())] * k + list(self.dims), self.reduced)

    def __add__(self, other: "HomologyProfile") -> "HomologyProfile":
        n = max(len(self.dims), len(other.dims))
        out = []
        for d in range(n):
            out.append((self.betti(d) + other.betti(d), self.torsion(d) + other.torsion(d)))
        return HomologyProfile.make(out, self.reduced)

    def to_json(self) -> dict:
        return {"reduced": self.reduced,
                "dims": [{"betti": b, "torsion": list(t)} for b, t in self.dims]}

    def describe(self) -> str:
        parts = []
        for d, (b, t) in enumerate(self.dims):
            if b or t:
                terms = ([f"Z^{b}" if b > 1 else "Z"] if b else []) + [f"Z/{x}" for x in t]
                parts.append(f"H{d}=" + "+".join(terms))
        return ", ".join(parts) if parts else "acyclic"


def boundary_rows(k: SimplicialComplex, d: int) -> list[dict[int, int]]:
    """Boundary of every d-simplex as a row over the (d-1)-simplices."""
    if d <= 0 or d >= len(k.faces):
        return []
    index = {t: i for i, t in enumerate(k.faces[d - 1])}
    rows = []
    for t in k.faces[d]:
        row = {}
        for i in range(len(t)):
            row[index[t[:i] + t[i + 1:]]] = -1 if i & 1 else 1
        rows.append(row)
    return rows


def reduced_homology(k: SimplicialComplex) -> HomologyProfile:
    """Reduced homology of a nonempty complex."""
    if not k.faces:
        raise ValueError("reduced homology of the empty complex is not modelled")
    top = len(k.faces)
    inv = [[1]]  # the augmentation C_0 -> Z
    for d in range(1, top):
        inv.append(smith_invariants_sparse(boundary_rows(k, d)))
    inv.append([])
    dims = []
    for d in range(top):
        b = len(k.faces[d]) - len(inv[d]) - len(inv[d + 1])
        dims.append((b, [x for x in inv[d + 1] if x > 1]))
    return HomologyProfile.make(dims)


def poset_homology(p: Poset) -> HomologyProfile:
    return reduced_homology(order_complex(p))


def euler_from_profile(h: HomologyProfile) -> int:
    """Reduced Euler characteristic from the betti numbers."""
    return sum((-1) ** d * b for d, b in enumerate(h.bettis()))
