"""Finite T0 spaces stored as posets.

Elements are indexed 0..n-1 and every subset is a Python int used as a
bitmask.  ``down[i]`` is the minimal open set U_i (all x <= i) and ``up[i]``
is the closed set F_i (all x >= i); both include i itself.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

DEFAULT_CHAIN_CAP = 1 << 18


class ParseError(ValueError):
    pass


class InvariantError(RuntimeError):
    """Raised when a derived structure fails an internal consistency check."""


def bits(mask: int):
    """Yield the indices of the set bits of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def _close(down: list[int]) -> list[int]:
    # Warshall on bitmask rows: down[i] collects everything below i
    n = len(down)
    for k in range(n):
        bk = 1 << k
        dk = down[k]
        for i in range(n):
            if down[i] & bk:
                down[i] |= dk
    return down


class Preorder:
    """A reflexive transitive relation, possibly with cycles."""

    def __init__(self, labels: Sequence[str], down: Sequence[int]):
        self.labels = tuple(labels)
        self.down = tuple(down)

    @classmethod
    def from_relations(cls, labels, relations):
        index = {lab: i for i, lab in enumerate(labels)}
        down = [1 << i for i in range(len(labels))]
        for x, y in relations:
            down[index[y]] |= 1 << index[x]
        return cls(labels, _close(down))

    @property
    def n(self) -> int:
        return len(self.labels)

    def is_antisymmetric(self) -> bool:
        for i, d in enumerate(self.down):
            for j in bits(d & ~(1 << i)):
                if self.down[j] >> i & 1:
                    return False
        return True

    def t0_quotient(self) -> tuple["Poset", list[int]]:
        """Collapse the classes x ~ y (x <= y <= x).

        Returns the quotient poset and the class index of every element.
        Class labels join the member labels with '='.
        """
        n = self.n
        cls_of = [-1] * n
        members: list[list[int]] = []
        for i in range(n):
            if cls_of[i] >= 0:
                continue
            k = len(members)
            group = [j for j in bits(self.down[i]) if self.down[j] >> i & 1]
            for j in group:
                cls_of[j] = k
            members.append(group)
        down = []
        for group in members:
            m = 0
            for j in bits(self.down[group[0]]):
                m |= 1 << cls_of[j]
            down.append(m)
        labels = ["=".join(self.labels[j] for j in g) for g in members]
        return Poset(labels, down), cls_of


class Poset:
    """Finite poset with the full order relation stored as bitmask rows."""

    __slots__ = ("labels", "down", "up", "_index", "_key")

    def __init__(self, labels: Sequence[str], down: Sequence[int], check: bool = True):
        self.labels = tuple(labels)
        self.down = tuple(down)
        n = len(self.down)
        up = [0] * n
        for i, d in enumerate(self.down):
            for j in bits(d):
                up[j] |= 1 << i
        self.up = tuple(up)
        self._index = None
        self._key = None
        if check:
            self._check()

    def _check(self):
        n = self.n
        if len(self.labels) != n:
            raise InvariantError("label count does not match relation size")
        if len(set(self.labels)) != n:
            raise InvariantError("labels must be distinct")
        full = (1 << n) - 1
        for i, d in enumerate(self.down):
            if not d >> i & 1 or d & ~full:
                raise InvariantError("relation is not reflexive on the carrier")
            for j in bits(d):
                if self.down[j] & ~d:
                    raise InvariantError("relation is not transitive")
                if j != i and self.down[j] >> i & 1:
                    raise InvariantError("relation is not antisymmetric")

    # construction

    @classmethod
    def from_relations(cls, labels: Sequence[str], relations: Iterable[tuple[str, str]]) -> "Poset":
        """Build from pairs (x, y) meaning x < y, taking the transitive closure."""
        pre = Preorder.from_relations(labels, relations)
        if not pre.is_antisymmetric():
            raise InvariantError("relations contain a cycle")
        return cls(labels, pre.down)

    @classmethod
    def chain(cls, n: int) -> "Poset":
        return cls([str(i) for i in range(n)], [(1 << (i + 1)) - 1 for i in range(n)])

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls([str(i) for i in range(n)], [1 << i for i in range(n)])

    # basic queries

    @property
    def n(self) -> int:
        return len(self.down)

    def __len__(self):
        return len(self.down)

    @property
    def full(self) -> int:
        return (1 << len(self.down)) - 1

    def index(self, label: str) -> int:
        if self._index is None:
            self._index = {lab: i for i, lab in enumerate(self.labels)}
        return self._index[label]

    def has_label(self, label: str) -> bool:
        if self._index is None:
            self._index = {lab: i for i, lab in enumerate(self.labels)}
        return label in self._index

    def mask_of(self, labels: Iterable[str]) -> int:
        m = 0
        for lab in labels:
            m |= 1 << self.index(lab)
        return m

    def labels_of(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits(mask)]

    def leq(self, i: int, j: int) -> bool:
        return bool(self.down[j] >> i & 1)

    def key(self):
        """Structural identity: labels and relation rows."""
        if self._key is None:
            self._key = (self.labels, self.down)
        return self._key

    def __eq__(self, other):
        return isinstance(other, Poset) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Poset(n={self.n}, covers={len(self.cover_pairs())})"

    def hat_down(self, i: int) -> int:
        return self.down[i] & ~(1 << i)

    def hat_up(self, i: int) -> int:
        return self.up[i] & ~(1 << i)

    def star(self, i: int) -> int:
        """C_i = U_i union F_i."""
        return self.down[i] | self.up[i]

    def hat_star(self, i: int) -> int:
        return (self.down[i] | self.up[i]) & ~(1 << i)

    def down_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.down[i]
        return out

    def up_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.up[i]
        return out

    def maximal(self, mask: int | None = None) -> int:
        """Maximal elements of the subspace on mask (default: whole space)."""
        if mask is None:
            mask = self.full
        out = 0
        for i in bits(mask):
            if self.up[i] & mask == 1 << i:
                out |= 1 << i
        return out

    def minimal(self, mask: int | None = None) -> int:
        if mask is None:
            mask = self.full
        out = 0
        for i in bits(mask):
            if self.down[i] & mask == 1 << i:
                out |= 1 << i
        return out

    def body(self) -> int:
        return self.full & ~self.maximal() & ~self.minimal()

    def maximum(self, mask: int) -> int | None:
        """The largest element of the subspace on mask, if there is one."""
        for i in bits(mask):
            if self.down[i] & mask == mask:
                return i
        return None

    def minimum(self, mask: int) -> int | None:
        for i in bits(mask):
            if self.up[i] & mask == mask:
                return i
        return None

    def covers(self, i: int) -> int:
        """Elements covered by i."""
        below = self.hat_down(i)
        out = below
        for j in bits(below):
            out &= ~self.hat_down(j)
        return out

    def cover_pairs(self) -> list[tuple[int, int]]:
        return [(j, i) for i in range(self.n) for j in bits(self.covers(i))]

    def comparable_pairs(self) -> int:
        """Number of pairs x < y."""
        return sum(popcount(d) - 1 for d in self.down)

    def is_chain(self, mask: int) -> bool:
        return all(self.star(i) & mask == mask for i in bits(mask))

    def is_antichain(self, mask: int) -> bool:
        return all(self.star(i) & mask == 1 << i for i in bits(mask))

    def comparable(self, a: int, b: int) -> bool:
        """True if some x in mask a is comparable to some y in mask b."""
        for i in bits(a):
            if self.star(i) & b:
                return True
        return False

    def restrict(self, mask: int) -> tuple["Poset", tuple[int, ...]]:
        """Subspace on mask, with the back-map to the parent's indices."""
        ids = tuple(bits(mask))
        pos = {j: k for k, j in enumerate(ids)}
        down = []
        for j in ids:
            m = 0
            for x in bits(self.down[j] & mask):
                m |= 1 << pos[x]
            down.append(m)
        return Poset([self.labels[j] for j in ids], down, check=False), ids

    def sub(self, mask: int) -> "Poset":
        return self.restrict(mask)[0]

    def opposite(self) -> "Poset":
        return Poset(self.labels, self.up, check=False)

    def relabel(self, labels: Sequence[str]) -> "Poset":
        return Poset(labels, self.down)

    def components(self, mask: int | None = None) -> list[int]:
        """Connected components of the subspace on mask, ordered by least element."""
        if mask is None:
            mask = self.full
        out = []
        rest = mask
        while rest:
            low = rest & -rest
            comp = low
            frontier = low
            while frontier:
                grow = 0
                for i in bits(frontier):
                    grow |= self.star(i)
                grow &= mask & ~comp
                comp |= grow
                frontier = grow
            out.append(comp)
            rest &= ~comp
        return out

    def is_connected(self, mask: int | None = None) -> bool:
        if mask is None:
            mask = self.full
        return mask != 0 and len(self.components(mask)) == 1

    def height(self, mask: int | None = None) -> int:
        """Length of the longest chain in mask; -1 for the empty set."""
        if mask is None:
            mask = self.full
        best = {}
        h = -1
        for i in sorted(bits(mask), key=lambda k: popcount(self.down[k])):
            below = self.hat_down(i) & mask
            v = max((best[j] for j in bits(below)), default=-1) + 1
            best[i] = v
            h = max(h, v)
        return h

    def levels(self) -> list[int]:
        """Height of U_x within X for every x."""
        lev = [0] * self.n
        for i in sorted(range(self.n), key=lambda k: popcount(self.down[k])):
            lev[i] = max((lev[j] + 1 for j in bits(self.hat_down(i))), default=0)
        return lev

    def to_hasse(self) -> str:
        return to_hasse(self)


# Hasse text format

def to_hasse(p: Poset) -> str:
    lines = []
    touched = 0
    for i in range(p.n):
        for j in bits(p.covers(i)):
            lines.append(f"{p.labels[j]} < {p.labels[i]}")
            touched |= (1 << i) | (1 << j)
    for i in range(p.n):
        if not touched >> i & 1:
            lines.append(f"point {p.labels[i]}")
    return "\n".join(lines) + ("\n" if lines else "")


def _check_label(tok: str, lineno: int) -> str:
    if not tok or any(c.isspace() for c in tok) or "<" in tok:
        raise ParseError(f"line {lineno}: bad element name {tok!r}")
    return tok


def parse_hasse_preorder(text: str) -> Preorder:
    """Parse 'a < b' lines (chains 'a < b < c' allowed), '# comments' and 'point x'."""
    labels: list[str] = []
    seen = set()
    rel = []

    def add(lab):
        if lab not in seen:
            seen.add(lab)
            labels.append(lab)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "<" in line:
            parts = [_check_label(t.strip(), lineno) for t in line.split("<")]
            for lab in parts:
                add(lab)
            rel.extend(zip(parts, parts[1:]))
            continue
        toks = line.split()
        if len(toks) == 2 and toks[0] == "point":
            add(_check_label(toks[1], lineno))
            continue
        raise ParseError(f"line {lineno}: expected 'a < b' or 'point x', got {raw!r}")
    return Preorder.from_relations(labels, rel)


def parse_hasse(text: str) -> Poset:
    pre = parse_hasse_preorder(text)
    if not pre.is_antisymmetric():
        raise ParseError("relation has a cycle; use the T0 quotient")
    return Poset(pre.labels, pre.down)


# derived posets

def nh_suspension(p: Poset, k: int = 1) -> Poset:
    """Add k times a pair of incomparable points above everything."""
    labels = list(p.labels)
    down = list(p.down)
    taken = set(labels)
    for step in range(k):
        below = (1 << len(down)) - 1
        for side in ("+", "-"):
            name = f"s{step}{side}"
            while name in taken:
                name += "'"
            taken.add(name)
            labels.append(name)
            down.append(below | (1 << len(down)))
    return Poset(labels, down, check=False)


@dataclass(frozen=True)
class ChainPoset:
    """Chains of a poset ordered by inclusion, with each chain as a parent mask."""
    poset: Poset
    chains: tuple[int, ...]


def chains(p: Poset, mask: int | None = None, cap: int = DEFAULT_CHAIN_CAP) -> list[int]:
    """All nonempty chains inside mask, as bitmasks, in DFS order."""
    if mask is None:
        mask = p.full
    out: list[int] = []
    stack = []
    for i in bits(mask):
        stack.append((1 << i, p.star(i) & mask & ~((2 << i) - 1)))
    stack.reverse()
    while stack:
        ch, cand = stack.pop()
        out.append(ch)
        if len(out) > cap:
            raise InvariantError(f"more than {cap} chains")
        ext = []
        for j in bits(cand):
            ext.append((ch | 1 << j, cand & p.star(j) & ~((2 << j) - 1)))
        stack.extend(reversed(ext))
    return out


def _chain_label(p: Poset, ch: int) -> str:
    return "{" + ",".join(p.labels[i] for i in bits(ch)) + "}"


def chain_poset(p: Poset, chs: Sequence[int]) -> ChainPoset:
    """Subposet of the subdivision on the given chains (inclusion order)."""
    chs = sorted(chs, key=lambda c: (popcount(c), c))
    pos = {c: k for k, c in enumerate(chs)}
    down = []
    for c in chs:
        m = 0
        sub = c
        while sub:
            if sub in pos:
                m |= 1 << pos[sub]
            sub = (sub - 1) & c
        down.append(m)
    labels = [_chain_label(p, c) for c in chs]
    return ChainPoset(Poset(labels, down, check=False), tuple(chs))


def barycentric_subdivision(p: Poset, cap: int = DEFAULT_CHAIN_CAP) -> ChainPoset:
    return chain_poset(p, chains(p, cap=cap))


def ex_subposet(p: Poset, a: int, cap: int = DEFAULT_CHAIN_CAP) -> ChainPoset:
    """ex(A): chains meeting A."""
    return chain_poset(p, [c for c in chains(p, cap=cap) if c & a])


def ex_meet(p: Poset, a: int, b: int, cap: int = DEFAULT_CHAIN_CAP) -> ChainPoset:
    """ex(A) intersected with ex(B): chains meeting both A and B."""
    return chain_poset(p, [c for c in chains(p, cap=cap) if c & a and c & b])


@dataclass(frozen=True)
class IntervalPoset:
    """I(A, B) = {(a, b) in A x B : a <= b}; pairs hold parent indices."""
    poset: Poset
    pairs: tuple[tuple[int, int], ...]


def interval_poset(p: Poset, a: int, b: int) -> IntervalPoset:
    """(a, b) <= (a', b') iff a' <= a and b <= b'."""
    pairs = [(x, y) for x in bits(a) for y in bits(b & p.up[x])]
    pos = {pr: k for k, pr in enumerate(pairs)}
    down = []
    for x, y in pairs:
        m = 0
        for x2 in bits(p.up[x] & a):
            for y2 in bits(p.down[y] & b & p.up[x2]):
                m |= 1 << pos[(x2, y2)]
        down.append(m)
    labels = [f"({p.labels[x]},{p.labels[y]})" for x, y in pairs]
    return IntervalPoset(Poset(labels, down, check=False), tuple(pairs))


def s1_n(n: int) -> Poset:
    """Minimal finite model of the circle with 2n points (n >= 2)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    labels = [f"b{i}" for i in range(n)] + [f"a{i}" for i in range(n)]
    rel = []
    for i in range(n):
        rel.append((f"b{i}", f"a{i}"))
        rel.append((f"b{i}", f"a{(i + 1) % n}"))
    return Poset.from_relations(labels, rel)


def from_drawing(levels: dict[str, float], edges: Iterable[tuple[str, str]]) -> Poset:
    """Poset from a Hasse drawing: each edge points up by the drawn height."""
    labels = list(levels)
    rel = []
    for u, v in edges:
        if levels[u] == levels[v]:
            raise ValueError(f"edge {u}-{v} is horizontal")
        rel.append((u, v) if levels[u] < levels[v] else (v, u))
    return Poset.from_relations(labels, rel)


def disjoint_union(p: Poset, q: Poset) -> Poset:
    n = p.n
    labels = list(p.labels) + list(q.labels)
    if len(set(labels)) != len(labels):
        raise ValueError("labels clash")
    return Poset(labels, list(p.down) + [d << n for d in q.down])
