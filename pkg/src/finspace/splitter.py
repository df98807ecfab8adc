"""Certified splitting of finite spaces into wedges of smaller pieces.

A certificate node stores a space, the rule applied, the evidence needed to
re-check the rule, a template expression whose ``#i`` slots refer to the
child certificates, and the resulting wedge.  ``split`` searches for rule
applications; ``validate_certificate`` rebuilds every node from its evidence
and compares integral homology of the root with that of the wedge.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from itertools import combinations

from .homology import poset_homology
from .poset import InvariantError, Poset, bits, interval_poset, parse_hasse_preorder, popcount, to_hasse
from .reduction import check_trivial_witness, reduce_mask, replay, trivial_witness
from .wedge import (Expr, Point, PosetLeaf, Slot, Sphere, Susp, Wedge, homology, normalize, parse_expr,
                    substitute, to_str)

DEFAULT_FUEL = 64

# rules whose children may be as large as (or larger than) the parent
NON_DESCENDING = ("R-interval", "R-opposite")


class Reject(Exception):
    """A rule's side condition does not hold; the message names it."""


@dataclass
class Application:
    rule: str
    evidence: dict
    template: Expr
    spaces: list
    cost: int = 1

    def score(self):
        sizes = [q.n for q in self.spaces]
        return (self.cost, max(sizes, default=0), sum(sizes), len(sizes))


@dataclass(frozen=True)
class Certificate:
    space: Poset
    rule: str
    evidence: dict
    template: Expr
    children: tuple = ()
    status: str = "complete"
    wedge: Expr = field(default=None)

    def derived_wedge(self) -> Expr:
        if self.rule == "unresolved":
            return PosetLeaf(self.space)
        return normalize(substitute(self.template, [c.wedge for c in self.children]))

    @property
    def complete(self) -> bool:
        return self.status == "complete" and all(c.complete for c in self.children)

    def nodes(self):
        yield self
        for c in self.children:
            yield from c.nodes()

    def residue(self) -> list[Poset]:
        return [n.space for n in self.nodes() if n.rule == "unresolved"]


def _node(space, app: Application, children) -> Certificate:
    c = Certificate(space, app.rule, app.evidence, app.template, tuple(children))
    return replace(c, wedge=c.derived_wedge())


def _unresolved(space, status) -> Certificate:
    c = Certificate(space, "unresolved", {}, PosetLeaf(space), (), status)
    return replace(c, wedge=PosetLeaf(space))


# building blocks shared by the rules

class _Parts:
    """Collects child spaces and hands out slots for them."""

    def __init__(self):
        self.spaces: list[Poset] = []

    def slot(self, q: Poset) -> Expr:
        if q.n == 1 or q.maximum(q.full) is not None or q.minimum(q.full) is not None:
            return Point()
        self.spaces.append(q)
        return Slot(len(self.spaces) - 1)

    def susp(self, p: Poset, mask: int, k: int = 1) -> Expr:
        """k-fold suspension of the subspace on mask, split over its components."""
        if not mask:
            return Sphere(k - 1)
        comps = p.components(mask)
        parts = [Susp(k, self.slot(p.sub(c))) for c in comps]
        parts += [Sphere(k)] * (len(comps) - 1)
        return Wedge(tuple(parts)) if len(parts) > 1 else parts[0]


def _idx(p: Poset, lab) -> int:
    if not isinstance(lab, str) or not p.has_label(lab):
        raise Reject(f"unknown element {lab!r}")
    return p.index(lab)


def _need(cond, reason):
    if not cond:
        raise Reject(reason)


def _connected(p: Poset):
    _need(p.is_connected(), "space is not connected")


# rule builders: evidence -> Application, checking every side condition

def build_point(p: Poset, ev: dict) -> Application:
    _need(p.n == 1, "space has more than one point")
    return Application("point", {}, Point(), [])


def build_core(p: Poset, ev: dict) -> Application:
    steps = ev.get("steps")
    _need(isinstance(steps, list) and steps, "empty removal trace")
    try:
        m = replay(p, steps)
    except (InvariantError, TypeError, ValueError) as e:
        raise Reject(f"removal trace: {e}")
    parts = _Parts()
    t = parts.slot(p.sub(m))
    return Application("R-core", {"steps": [list(s) for s in steps]}, t, parts.spaces)


def build_height1(p: Poset, ev: dict) -> Application:
    _connected(p)
    _need(p.height() <= 1, "height exceeds 1")
    e, v = p.comparable_pairs(), p.n
    _need(ev.get("edges") == e and ev.get("vertices") == v, "edge or vertex count mismatch")
    return Application("R-height1", {"edges": e, "vertices": v}, Wedge((Sphere(1),) * (e - v + 1)), [])


def build_m2(p: Poset, ev: dict) -> Application:
    _connected(p)
    tops = ev.get("tops")
    _need(isinstance(tops, list) and len(tops) == 2, "need two maximal elements")
    a, b = (_idx(p, t) for t in tops)
    _need(a != b and p.maximal() == (1 << a) | (1 << b), "maximal elements are not exactly the two given")
    parts = _Parts()
    t = parts.susp(p, p.down[a] & p.down[b])
    return Application("R-m2", {"tops": list(tops)}, t, parts.spaces)


def _family(p: Poset, mask: int, witnesses, side: str):
    comps = p.components(mask)
    _need(isinstance(witnesses, list) and len(witnesses) == len(comps), f"{side} witness count mismatch")
    for c, w in zip(comps, witnesses):
        _need(isinstance(w, dict) and check_trivial_witness(p, c, w),
              f"{side} piece {p.labels_of(c)} not shown trivial")
    return comps


def _pieces(p: Poset, down_mask: int, up_mask: int, ev: dict, rule: str, extra: dict) -> Application:
    """Split X = D u E with D a down-set, E an up-set, all components trivial."""
    _connected(p)
    _need(down_mask | up_mask == p.full, "the two families do not cover the space")
    dcs = _family(p, down_mask, ev.get("down_witnesses"), "down")
    ucs = _family(p, up_mask, ev.get("up_witnesses"), "up")
    pairs = []
    for i, d in enumerate(dcs):
        for j, u in enumerate(ucs):
            if p.comparable(d, u):
                pairs.append([i, j])
    circles = len(pairs) - len(dcs) - len(ucs) + 1
    _need(circles >= 0, "pieces do not form a connected pattern")
    _need(ev.get("pairs") == pairs, "comparable pairs mismatch")
    _need(ev.get("circles") == circles, "circle count mismatch")
    parts = _Parts()
    terms = []
    cost = 1
    for i, j in pairs:
        d, u = dcs[i], ucs[j]
        if popcount(d) == 1 and popcount(u) == 1:
            continue
        if popcount(u) == 1:
            y = u.bit_length() - 1
            if not d >> y & 1:
                terms.append(parts.susp(p, d & p.down[y]))
            continue
        if popcount(d) == 1:
            x = d.bit_length() - 1
            if not u >> x & 1:
                terms.append(parts.susp(p, u & p.up[x]))
            continue
        if d | u != p.full:
            terms.append(parts.slot(p.sub(d | u)))
            continue
        iv = interval_poset(p, d, u).poset
        terms.append(parts.susp(iv, iv.full))
        cost = 2
    terms += [Sphere(1)] * circles
    out = dict(extra)
    out.update({"down_witnesses": ev.get("down_witnesses"), "up_witnesses": ev.get("up_witnesses"),
                "pairs": pairs, "circles": circles})
    return Application(rule, out, Wedge(tuple(terms)), parts.spaces, cost)


def build_ua(p: Poset, ev: dict) -> Application:
    a = _idx(p, ev.get("a"))
    return _pieces(p, p.down[a] | p.minimal(), p.maximal(), ev, "R-Ua", {"a": ev.get("a")})


def build_uafb(p: Poset, ev: dict) -> Application:
    a = _idx(p, ev.get("a"))
    b = _idx(p, ev.get("b"))
    return _pieces(p, p.down[a] | p.minimal(), p.up[b] | p.maximal(), ev, "R-UaFb",
                   {"a": ev.get("a"), "b": ev.get("b")})


def build_suspension_poset(p: Poset, ev: dict) -> Application:
    s, t = ev.get("down"), ev.get("up")
    _need(isinstance(s, list) and isinstance(t, list), "missing generators")
    sm = p.mask_of(_checked(p, s))
    tm = p.mask_of(_checked(p, t))
    return _pieces(p, p.down_closure(sm) | p.minimal(), p.up_closure(tm) | p.maximal(), ev,
                   "R-suspension-poset", {"down": list(s), "up": list(t)})


def _checked(p, labs):
    for lab in labs:
        _idx(p, lab)
    return labs


def build_interval(p: Poset, ev: dict) -> Application:
    _connected(p)
    a = _idx(p, ev.get("a"))
    b = _idx(p, ev.get("b"))
    _need(p.down[a] | p.up[b] == p.full, "space is not U_a u F_b")
    iv = interval_poset(p, p.down[a], p.up[b]).poset
    parts = _Parts()
    t = parts.susp(iv, iv.full)
    return Application("R-interval", {"a": ev.get("a"), "b": ev.get("b")}, t, parts.spaces, 2)


def build_weak_gamma(p: Poset, ev: dict) -> Application:
    _connected(p)
    x = _idx(p, ev.get("x"))
    rest = p.full & ~(1 << x)
    _need(p.is_connected(rest), "space minus the point is not connected")
    link = p.hat_star(x)
    comps = _family(p, link, ev.get("witnesses"), "link")
    parts = _Parts()
    t = Wedge((parts.slot(p.sub(rest)),) + (Sphere(1),) * (len(comps) - 1))
    return Application("R-weak-gamma-max", {"x": ev.get("x"), "witnesses": ev.get("witnesses")},
                       t, parts.spaces)


def build_trivial_union(p: Poset, ev: dict) -> Application:
    _connected(p)
    a = _idx(p, ev.get("a"))
    mx = p.maximal()
    _need(mx >> a & 1, "chosen point is not maximal")
    rest = p.down_closure(mx & ~(1 << a))
    w = ev.get("witness")
    _need(isinstance(w, dict) and check_trivial_witness(p, rest, w), "union of the other pieces not shown trivial")
    parts = _Parts()
    t = parts.susp(p, p.down[a] & rest)
    return Application("R-trivial-union-pair", {"a": ev.get("a"), "witness": w}, t, parts.spaces)


def build_gamma_sc(p: Poset, ev: dict) -> Application:
    _connected(p)
    x = _idx(p, ev.get("x"))
    rest = p.full & ~(1 << x)
    _need(p.is_connected(rest), "space minus the point is not connected")
    side = ev.get("side")
    _need(side in ("down", "up"), "side must be down or up")
    tops = ev.get("tops")
    _need(isinstance(tops, list) and len(tops) == 2, "need two extremal elements")
    u, v = (_idx(p, t) for t in tops)
    ext, grab = (p.maximal, p.down) if side == "down" else (p.minimal, p.up)
    _need(u != v and ext(rest) == (1 << u) | (1 << v), "remaining space has other extremal elements")
    _need(p.is_connected(grab[u] & grab[v] & rest), "overlap of the two pieces is not connected")
    try:
        link = replay(p, ev.get("steps") or [], p.hat_star(x))
    except (InvariantError, TypeError, ValueError) as e:
        raise Reject(f"link reduction: {e}")
    _need(link and p.height(link) <= 1, "reduced link has height above 1")
    parts = _Parts()
    t = Wedge((parts.slot(p.sub(rest)), parts.susp(p, link)))
    return Application("R-gamma-simply-connected",
                       {"x": ev.get("x"), "side": side, "tops": list(tops), "steps": ev.get("steps") or []},
                       t, parts.spaces)


def build_opposite(p: Poset, ev: dict) -> Application:
    return Application("R-opposite", {}, Slot(0), [p.opposite()])


BUILDERS = {
    "point": build_point,
    "R-core": build_core,
    "R-height1": build_height1,
    "R-m2": build_m2,
    "R-Ua": build_ua,
    "R-weak-gamma-max": build_weak_gamma,
    "R-UaFb": build_uafb,
    "R-trivial-union-pair": build_trivial_union,
    "R-gamma-simply-connected": build_gamma_sc,
    "R-suspension-poset": build_suspension_poset,
    "R-interval": build_interval,
    "R-opposite": build_opposite,
}

RULE_ORDER = ("R-core", "R-height1", "R-m2", "R-Ua", "R-weak-gamma-max", "R-UaFb",
              "R-trivial-union-pair", "R-gamma-simply-connected", "R-suspension-poset",
              "R-interval", "R-opposite")


# search: find evidence for each rule

class _Search:
    def __init__(self, p: Poset):
        self.p = p
        self._wit: dict[int, dict | None] = {}

    def witness(self, mask: int):
        if mask not in self._wit:
            self._wit[mask] = trivial_witness(self.p, mask)
        return self._wit[mask]

    def witnesses(self, mask: int):
        out = []
        for c in self.p.components(mask):
            w = self.witness(c)
            if w is None:
                return None
            out.append(w)
        return out

    def pieces_evidence(self, down_mask, up_mask, extra):
        p = self.p
        if down_mask | up_mask != p.full:
            return None
        dw = self.witnesses(down_mask)
        if dw is None:
            return None
        uw = self.witnesses(up_mask)
        if uw is None:
            return None
        dcs, ucs = p.components(down_mask), p.components(up_mask)
        pairs = [[i, j] for i, d in enumerate(dcs) for j, u in enumerate(ucs) if p.comparable(d, u)]
        ev = dict(extra)
        ev.update({"down_witnesses": dw, "up_witnesses": uw, "pairs": pairs,
                   "circles": len(pairs) - len(dcs) - len(ucs) + 1})
        return ev


def _best(p, builder, evs):
    best = None
    for ev in evs:
        try:
            app = builder(p, ev)
        except Reject:
            continue
        if any(q.n >= p.n for q in app.spaces) and app.cost == 1:
            continue
        if best is None or app.score() < best.score():
            best = app
    return best


def find_core(p, s):
    raw: list = []
    reduce_mask(p, p.full, raw)
    if not raw:
        return None
    return build_core(p, {"steps": [[p.labels[x], k] for x, k in raw]})


def find_height1(p, s):
    if p.height() > 1:
        return None
    return build_height1(p, {"edges": p.comparable_pairs(), "vertices": p.n})


def find_m2(p, s):
    mx = list(bits(p.maximal()))
    if len(mx) != 2:
        return None
    return build_m2(p, {"tops": [p.labels[i] for i in mx]})


def find_ua(p, s):
    mn, mx = p.minimal(), p.maximal()
    evs = []
    for a in bits(p.body()):
        ev = s.pieces_evidence(p.down[a] | mn, mx, {"a": p.labels[a]})
        if ev:
            evs.append(ev)
    return _best(p, build_ua, evs)


def find_uafb(p, s):
    mn, mx = p.minimal(), p.maximal()
    body = p.body()
    evs = []
    for a in bits(p.full & ~mx):
        for b in bits(p.full & ~mn):
            if body & ~(p.down[a] | p.up[b]):
                continue
            ev = s.pieces_evidence(p.down[a] | mn, p.up[b] | mx, {"a": p.labels[a], "b": p.labels[b]})
            if ev:
                evs.append(ev)
    return _best(p, build_uafb, evs)


def find_suspension_poset(p, s, width: int = 2):
    mn, mx = p.minimal(), p.maximal()
    body = p.body()
    lows = [S for k in range(1, width + 1) for S in combinations(bits(p.full & ~mn), k)
            if p.is_antichain(sum(1 << i for i in S))]
    highs = [()] + [T for k in range(1, width + 1) for T in combinations(bits(p.full & ~mx), k)
                    if p.is_antichain(sum(1 << i for i in T))]
    evs = []
    for S in lows:
        dm = p.down_closure(sum(1 << i for i in S))
        for T in highs:
            if len(S) == 1 and len(T) <= 1:
                continue  # covered by R-Ua and R-UaFb
            um = p.up_closure(sum(1 << i for i in T))
            if body & ~(dm | um):
                continue
            ev = s.pieces_evidence(dm | mn, um | mx, {"down": [p.labels[i] for i in S],
                                                      "up": [p.labels[i] for i in T]})
            if ev:
                evs.append(ev)
    return _best(p, build_suspension_poset, evs)


def find_interval(p, s):
    for a in range(p.n):
        for b in range(p.n):
            if p.down[a] | p.up[b] == p.full and a != b:
                try:
                    return build_interval(p, {"a": p.labels[a], "b": p.labels[b]})
                except Reject:
                    continue
    return None


def find_weak_gamma(p, s):
    evs = []
    for x in range(p.n):
        if not p.is_connected(p.full & ~(1 << x)):
            continue
        w = s.witnesses(p.hat_star(x))
        if w is not None:
            evs.append({"x": p.labels[x], "witnesses": w})
    return _best(p, build_weak_gamma, evs)


def find_trivial_union(p, s):
    mx = p.maximal()
    evs = []
    for a in bits(mx):
        rest = p.down_closure(mx & ~(1 << a))
        w = s.witness(rest)
        if w is not None:
            evs.append({"a": p.labels[a], "witness": w})
    return _best(p, build_trivial_union, evs)


def find_gamma_sc(p, s):
    evs = []
    for x in range(p.n):
        rest = p.full & ~(1 << x)
        for side, ext, grab in (("down", p.maximal, p.down), ("up", p.minimal, p.up)):
            tops = list(bits(ext(rest)))
            if len(tops) != 2:
                continue
            u, v = tops
            if not p.is_connected(grab[u] & grab[v] & rest):
                continue
            raw: list = []
            link = reduce_mask(p, p.hat_star(x), raw)
            if not link or p.height(link) > 1:
                continue
            evs.append({"x": p.labels[x], "side": side, "tops": [p.labels[u], p.labels[v]],
                        "steps": [[p.labels[y], k] for y, k in raw]})
    return _best(p, build_gamma_sc, evs)


FINDERS = {
    "R-core": find_core,
    "R-height1": find_height1,
    "R-m2": find_m2,
    "R-Ua": find_ua,
    "R-weak-gamma-max": find_weak_gamma,
    "R-UaFb": find_uafb,
    "R-trivial-union-pair": find_trivial_union,
    "R-gamma-simply-connected": find_gamma_sc,
    "R-suspension-poset": find_suspension_poset,
    "R-interval": find_interval,
}


class _Engine:
    def __init__(self, fuel: int, rules=RULE_ORDER):
        self.fuel = fuel
        self.rules = rules
        self.memo: dict = {}

    def run(self, p: Poset, flipped: bool = False) -> Certificate:
        key = (p.key(), flipped)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        cert = self._run(p, flipped)
        self.memo[key] = cert
        return cert

    def _run(self, p: Poset, flipped: bool) -> Certificate:
        if p.n == 1:
            return _node(p, build_point(p, {}), [])
        if not p.is_connected():
            return _unresolved(p, "disconnected")
        app = None
        s = _Search(p)
        for name in self.rules:
            if name == "R-opposite":
                if not flipped:
                    app = build_opposite(p, {})
                    break
                continue
            app = FINDERS[name](p, s)
            if app is not None:
                break
        if app is None:
            return _unresolved(p, "no-rule")
        if self.fuel < app.cost:
            return _unresolved(p, "fuel-exhausted")
        self.fuel -= app.cost
        kids = []
        for q in app.spaces:
            kids.append(self.run(q, flipped or app.rule == "R-opposite"))
        return _node(p, app, kids)


def split(p: Poset, fuel: int = DEFAULT_FUEL, rules=RULE_ORDER) -> Certificate:
    """Search for a certificate that p is weakly equivalent to a wedge.

    The result may be partial: unresolved nodes keep the space as a leaf and
    carry the status 'no-rule', 'fuel-exhausted' or 'disconnected'.
    """
    if p.n == 0:
        raise ValueError("the empty space has no splitting")
    return _Engine(fuel, rules).run(p)


# validation

@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""
    where: str = ""

    def __bool__(self):
        return self.ok


def same_space(p: Poset, q: Poset) -> bool:
    """Equal as labelled posets, regardless of element order."""
    if p.n != q.n or set(p.labels) != set(q.labels):
        return False
    if p.labels == q.labels:
        return p.down == q.down
    for i, lab in enumerate(p.labels):
        if set(p.labels_of(p.down[i])) != set(q.labels_of(q.down[q.index(lab)])):
            return False
    return True


def _check_node(c: Certificate, path: str, deep: bool) -> Verdict:
    if c.rule == "unresolved":
        if not isinstance(c.template, PosetLeaf) or not same_space(c.template.poset, c.space):
            return Verdict(False, "unresolved node does not keep its space", path)
        if c.children:
            return Verdict(False, "unresolved node has children", path)
        return Verdict(True)
    builder = BUILDERS.get(c.rule)
    if builder is None:
        return Verdict(False, f"unknown rule {c.rule!r}", path)
    try:
        app = builder(c.space, c.evidence)
    except Reject as e:
        return Verdict(False, f"side condition: {e}", path)
    except (KeyError, TypeError, ValueError, InvariantError) as e:
        return Verdict(False, f"malformed evidence: {e}", path)
    if app.evidence != c.evidence:
        return Verdict(False, "evidence differs from the rebuilt rule", path)
    try:
        if normalize(app.template) != normalize(c.template):
            return Verdict(False, "template mismatch", path)
    except ValueError as e:
        return Verdict(False, f"template mismatch: {e}", path)
    if len(app.spaces) != len(c.children):
        return Verdict(False, "child count mismatch", path)
    for i, (q, kid) in enumerate(zip(app.spaces, c.children)):
        if not same_space(q, kid.space):
            return Verdict(False, "child space mismatch", f"{path}/{i}")
        if app.cost == 1 and c.rule not in NON_DESCENDING and kid.space.n >= c.space.n:
            return Verdict(False, "child is not smaller", f"{path}/{i}")
    for i, kid in enumerate(c.children):
        v = _check_node(kid, f"{path}/{i}", deep)
        if not v:
            return v
    try:
        if normalize(c.wedge) != c.derived_wedge():
            return Verdict(False, "wedge mismatch", path)
    except (ValueError, IndexError) as e:
        return Verdict(False, f"wedge mismatch: {e}", path)
    if deep and not _homology_ok(c):
        return Verdict(False, "homology mismatch", path)
    return Verdict(True)


def _homology_ok(c: Certificate) -> bool:
    try:
        return poset_homology(c.space) == homology(c.wedge)
    except ValueError:
        return False


def validate_certificate(c: Certificate, deep: bool = False) -> Verdict:
    """Re-check every side condition; compare homology of root and wedge.

    With deep=True the homology comparison is made at every node.
    """
    if c.wedge is None:
        return Verdict(False, "missing wedge", "")
    if not _homology_ok(c):
        return Verdict(False, "homology mismatch", "")
    return _check_node(c, "", deep)


# JSON form

def certificate_to_json(c: Certificate) -> dict:
    store: list = []
    wedge = to_str(c.wedge, store)
    out = {
        "space": to_hasse(c.space),
        "points": list(c.space.labels),
        "rule": c.rule,
        "evidence": c.evidence,
        "template": to_str(c.template, []) if c.rule == "unresolved" else to_str(c.template),
        "children": [certificate_to_json(k) for k in c.children],
        "wedge": wedge,
        "status": c.status,
    }
    if store:
        out["leaves"] = [{"space": to_hasse(q), "points": list(q.labels)} for q in store]
    return out


def _space_from(text: str, points) -> Poset:
    pre = parse_hasse_preorder(text)
    if not pre.is_antisymmetric():
        raise ValueError("space has a cycle")
    q = Poset(pre.labels, pre.down)
    if points is None:
        return q
    if set(points) != set(q.labels) or len(points) != q.n:
        raise ValueError("point list does not match the space")
    order = [q.index(lab) for lab in points]
    pos = {j: k for k, j in enumerate(order)}
    down = []
    for j in order:
        m = 0
        for x in bits(q.down[j]):
            m |= 1 << pos[x]
        down.append(m)
    return Poset(points, down)


def certificate_from_json(d: dict) -> Certificate:
    space = _space_from(d["space"], d.get("points"))
    kids = tuple(certificate_from_json(k) for k in d.get("children", []))
    store = [_space_from(x["space"], x.get("points")) for x in d.get("leaves", [])]
    if d["rule"] == "unresolved":
        template = PosetLeaf(space)
    else:
        template = parse_expr(d["template"])
    return Certificate(space, d["rule"], d.get("evidence", {}), template, kids,
                       d.get("status", "complete"), parse_expr(d["wedge"], store))


def dumps(c: Certificate) -> str:
    return json.dumps(certificate_to_json(c), indent=1, sort_keys=True)


def rule_counts(c: Certificate) -> dict[str, int]:
    out: dict[str, int] = {}
    for n in c.nodes():
        out[n.rule] = out.get(n.rule, 0) + 1
    return out
