"""Beat points, weak points, cores and a three-valued triviality test.

All routines work on a subspace of a fixed poset given as a bitmask, so
removing points never reindexes anything.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .homology import HomologyProfile, poset_homology
from .poset import InvariantError, Poset, bits, popcount

KINDS = ("down-beat", "up-beat", "down-weak", "up-weak")


def is_down_beat(p: Poset, x: int, m: int) -> bool:
    """U^_x (inside m) has a maximum."""
    below = p.hat_down(x) & m
    if not below:
        return False
    for y in bits(below):
        if p.down[y] & m == below:
            return True
    return False


def is_up_beat(p: Poset, x: int, m: int) -> bool:
    above = p.hat_up(x) & m
    if not above:
        return False
    for y in bits(above):
        if p.up[y] & m == above:
            return True
    return False


def down_beat_points(p: Poset, m: int | None = None) -> int:
    m = p.full if m is None else m
    out = 0
    for x in bits(m):
        if is_down_beat(p, x, m):
            out |= 1 << x
    return out


def up_beat_points(p: Poset, m: int | None = None) -> int:
    m = p.full if m is None else m
    out = 0
    for x in bits(m):
        if is_up_beat(p, x, m):
            out |= 1 << x
    return out


def beat_points(p: Poset, m: int | None = None) -> int:
    return down_beat_points(p, m) | up_beat_points(p, m)


def remove_all_down_beat_points(p: Poset, m: int | None = None) -> int:
    """Drop every down beat point at once; returns the remaining mask."""
    m = p.full if m is None else m
    return m & ~down_beat_points(p, m)


def remove_all_up_beat_points(p: Poset, m: int | None = None) -> int:
    m = p.full if m is None else m
    return m & ~up_beat_points(p, m)


def core_mask(p: Poset, m: int | None = None, steps: list | None = None) -> int:
    """Remove beat points one at a time until none is left."""
    m = p.full if m is None else m
    changed = True
    while changed:
        changed = False
        for x in bits(m):
            if is_down_beat(p, x, m):
                kind = "down-beat"
            elif is_up_beat(p, x, m):
                kind = "up-beat"
            else:
                continue
            m &= ~(1 << x)
            if steps is not None:
                steps.append((x, kind))
            changed = True
    return m


def is_contractible_core(p: Poset, m: int) -> bool:
    """The core of m is one point (so m is contractible)."""
    return m != 0 and popcount(core_mask(p, m)) == 1


def weak_kind(p: Poset, x: int, m: int) -> str | None:
    """'down-weak' or 'up-weak' if x is a weak point of m, else None."""
    if is_contractible_core(p, p.hat_down(x) & m):
        return "down-weak"
    if is_contractible_core(p, p.hat_up(x) & m):
        return "up-weak"
    return None


def is_weak_point(p: Poset, x: int, m: int | None = None) -> bool:
    """C^_x contractible."""
    m = p.full if m is None else m
    return is_contractible_core(p, p.hat_star(x) & m)


def weak_points(p: Poset, m: int | None = None) -> int:
    m = p.full if m is None else m
    out = 0
    for x in bits(m):
        if is_weak_point(p, x, m):
            out |= 1 << x
    return out


def reduce_mask(p: Poset, m: int | None = None, steps: list | None = None, weak: bool = True) -> int:
    """Remove beat points, then weak points one by one, until neither exists."""
    m = p.full if m is None else m
    while True:
        m = core_mask(p, m, steps)
        if not weak:
            return m
        for x in bits(m):
            kind = weak_kind(p, x, m)
            if kind:
                m &= ~(1 << x)
                if steps is not None:
                    steps.append((x, kind))
                break
        else:
            return m


@dataclass(frozen=True)
class ReductionTrace:
    """Removals applied to a poset, by label and kind, and the result."""
    start: Poset
    steps: tuple[tuple[str, str], ...]
    result: Poset
    result_ids: tuple[int, ...] = field(default=())

    def to_json_lines(self) -> list[dict]:
        return [{"remove": lab, "kind": kind} for lab, kind in self.steps]


def _trace(p: Poset, m0: int, raw: list, m: int) -> ReductionTrace:
    q, ids = p.restrict(m)
    start = p if m0 == p.full else p.sub(m0)
    return ReductionTrace(start, tuple((p.labels[x], k) for x, k in raw), q, ids)


def core(p: Poset) -> tuple[Poset, ReductionTrace]:
    """Stong core by single beat point removals."""
    raw: list = []
    m = core_mask(p, p.full, raw)
    tr = _trace(p, p.full, raw, m)
    return tr.result, tr


def reduce(p: Poset, weak: bool = True) -> ReductionTrace:
    raw: list = []
    m = reduce_mask(p, p.full, raw, weak)
    return _trace(p, p.full, raw, m)


def step_ok(p: Poset, x: int, kind: str, m: int) -> bool:
    if not m >> x & 1:
        return False
    if kind == "down-beat":
        return is_down_beat(p, x, m)
    if kind == "up-beat":
        return is_up_beat(p, x, m)
    if kind == "down-weak":
        return is_contractible_core(p, p.hat_down(x) & m)
    if kind == "up-weak":
        return is_contractible_core(p, p.hat_up(x) & m)
    return False


def replay(p: Poset, steps, m: int | None = None) -> int:
    """Re-check every removal of a trace; returns the final mask."""
    m = p.full if m is None else m
    for lab, kind in steps:
        if not p.has_label(lab):
            raise InvariantError(f"unknown element {lab!r} in trace")
        x = p.index(lab)
        if not step_ok(p, x, kind, m):
            raise InvariantError(f"{lab} is not a {kind} point at this step")
        m &= ~(1 << x)
    return m


class Triviality(enum.Enum):
    TRIVIAL = "Trivial"
    NONTRIVIAL = "NonTrivial"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class TrivialityResult:
    status: Triviality
    trace: ReductionTrace
    homology: HomologyProfile | None = None


def is_homotopically_trivial(p: Poset) -> TrivialityResult:
    """Trivial if beat and weak point removals reach one point.

    Otherwise the reduced homology decides NonTrivial; zero homology gives
    Unknown, since acyclic spaces need not be weakly contractible.
    """
    if p.n == 0:
        raise ValueError("the empty space is not considered")
    tr = reduce(p)
    if tr.result.n == 1:
        return TrivialityResult(Triviality.TRIVIAL, tr)
    h = poset_homology(tr.result)
    if h.is_zero():
        return TrivialityResult(Triviality.UNKNOWN, tr, h)
    return TrivialityResult(Triviality.NONTRIVIAL, tr, h)


# triviality witnesses used by the splitting rules

def trivial_witness(p: Poset, m: int, depth: int = 3) -> dict | None:
    """A checkable reason why the subspace m is homotopically trivial."""
    if not m:
        return None
    t = p.maximum(m)
    if t is not None:
        return {"kind": "max", "at": p.labels[t]}
    t = p.minimum(m)
    if t is not None:
        return {"kind": "min", "at": p.labels[t]}
    raw: list = []
    r = reduce_mask(p, m, raw)
    if popcount(r) == 1:
        return {"kind": "trace", "steps": [[p.labels[x], k] for x, k in raw]}
    if depth <= 0:
        return None
    # two contractible pieces glued along a trivial subspace
    for side, ext, grab in (("down-pair", p.maximal, p.down), ("up-pair", p.minimal, p.up)):
        tops = list(bits(ext(r)))
        if len(tops) != 2:
            continue
        a, b = tops
        meet = grab[a] & grab[b] & r
        w = trivial_witness(p, meet, depth - 1)
        if w is not None:
            return {"kind": side, "steps": [[p.labels[x], k] for x, k in raw],
                    "tops": [p.labels[a], p.labels[b]], "meet": w}
    return None


def check_trivial_witness(p: Poset, m: int, w: dict) -> bool:
    """Re-verify a witness produced by trivial_witness."""
    try:
        kind = w["kind"]
        if kind == "max":
            t = p.index(w["at"])
            return bool(m >> t & 1) and p.down[t] & m == m
        if kind == "min":
            t = p.index(w["at"])
            return bool(m >> t & 1) and p.up[t] & m == m
        r = replay(p, w["steps"], m)
        if kind == "trace":
            return popcount(r) == 1
        if kind in ("down-pair", "up-pair"):
            a, b = (p.index(x) for x in w["tops"])
            ext, grab = (p.maximal, p.down) if kind == "down-pair" else (p.minimal, p.up)
            if a == b or ext(r) != (1 << a) | (1 << b):
                return False
            meet = grab[a] & grab[b] & r
            return bool(meet) and check_trivial_witness(p, meet, w["meet"])
    except (KeyError, TypeError, ValueError, InvariantError):
        return False
    return False
