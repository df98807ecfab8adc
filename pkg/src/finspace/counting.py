"""Element counts used to locate covering pairs (a, b) with X = U_a u F_b u mxl u mnl."""
from __future__ import annotations

from dataclasses import dataclass

from .poset import Poset, bits, popcount


@dataclass
class Counts:
    body: int                 # X - mxl - mnl, as a mask
    alpha: dict[int, int]     # x -> number of maximal elements above x
    beta: dict[int, int]      # x -> number of minimal elements below x
    gamma: dict[int, int]     # maximal a -> number of maximal elements of the body below a

    @property
    def m(self):
        return len(self.gamma)


def alpha_beta_gamma(p: Poset) -> Counts:
    mx, mn = p.maximal(), p.minimal()
    body = p.full & ~mx & ~mn
    top_body = p.maximal(body) if body else 0
    alpha = {x: popcount(p.up[x] & mx) for x in range(p.n)}
    beta = {x: popcount(p.down[x] & mn) for x in range(p.n)}
    gamma = {a: popcount(p.down[a] & top_body) for a in bits(mx)}
    return Counts(body, alpha, beta, gamma)


def obstruction_triples(p: Poset) -> list[tuple[int, int, int]]:
    """All (a, b, x) with a maximal, b minimal, x in the body, x not in U_a u F_b."""
    mx, mn = p.maximal(), p.minimal()
    body = p.full & ~mx & ~mn
    return [(a, b, x) for a in bits(mx) for b in bits(mn) for x in bits(body)
            if not p.down[a] >> x & 1 and not p.up[b] >> x & 1]


def obstruction_count(p: Poset) -> int:
    """Size of the triple set, from the per-element counts alone."""
    c = alpha_beta_gamma(p)
    m, n = popcount(p.maximal()), popcount(p.minimal())
    return sum((m - c.alpha[x]) * (n - c.beta[x]) for x in bits(c.body))


def covering_pairs(p: Poset) -> list[tuple[int, int]]:
    """Pairs (a, b) in mxl x mnl whose U_a u F_b contains the whole body."""
    mx, mn = p.maximal(), p.minimal()
    body = p.full & ~mx & ~mn
    return [(a, b) for a in bits(mx) for b in bits(mn) if not body & ~(p.down[a] | p.up[b])]
