import random
from functools import reduce
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import posets, poset_from_lt, strict_orders
from finspace import fixtures
from finspace.homology import (HomologyProfile, boundary_rows, euler_from_profile, poset_homology,
                               reduced_homology, smith_invariants_sparse, smith_normal_form, smith_rank)
from finspace.poset import Poset, nh_suspension, s1_n
from finspace.simplicial import SimplicialComplex, face_poset, order_complex

RP2 = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
       (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4)]


def matrices(max_rows=8, max_cols=8, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)))


def profile_matches_oracle(h: HomologyProfile, betti, torsion):
    mine = h.bettis()
    while mine and mine[-1] == 0:
        mine.pop()
    theirs = list(betti)
    while theirs and theirs[-1] == 0:
        theirs.pop()
    if mine != theirs:
        return False
    for d, counts in enumerate(torsion):
        for p, c in counts.items():
            if sum(1 for t in h.torsion(d) if t % p == 0) != c:
                return False
    for d in range(len(h.dims)):
        for t in h.torsion(d):
            if not any(t % p == 0 for p in (2, 3, 5, 7)):
                return False  # oracle only sees small primes
    return True


# Smith normal form

def test_identity():
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == [1, 1, 1]


def test_coprime_diagonal():
    assert smith_normal_form([[2, 0], [0, 3]]) == [1, 6]


def test_zero_matrix():
    assert smith_normal_form([[0, 0], [0, 0]]) == []
    assert smith_normal_form([]) == []


def test_small_worked_example():
    # gcd of entries 2, determinant -8
    assert smith_normal_form([[2, 4], [6, 8]]) == [2, 4]


@given(matrices())
def test_invariants_form_a_divisibility_chain(m):
    inv = smith_normal_form(m)
    assert all(x > 0 for x in inv)
    assert all(b % a == 0 for a, b in zip(inv, inv[1:]))


@given(matrices())
def test_rank_matches_bareiss(m):
    assert smith_rank(m) == oracles.bareiss_rank(m)


@given(matrices())
def test_first_invariant_is_gcd_of_entries(m):
    inv = smith_normal_form(m)
    g = reduce(gcd, (abs(x) for row in m for x in row), 0)
    if g == 0:
        assert inv == []
    else:
        assert inv[0] == g


@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n),
                                                   min_size=n, max_size=n)))
def test_product_is_absolute_determinant(m):
    det = oracles.det_fraction(m)
    inv = smith_normal_form(m)
    if det == 0:
        assert len(inv) < len(m)
    else:
        prod = 1
        for x in inv:
            prod *= x
        assert len(inv) == len(m) and prod == abs(det)


@given(matrices(), st.sampled_from([2, 3, 5, 7]))
def test_rank_mod_p_counts_invariants_prime_to_p(m, p):
    inv = smith_normal_form(m)
    assert oracles.rank_mod_p(m, p) == sum(1 for x in inv if x % p)


def test_sparse_entry_point_agrees_with_dense():
    rng = random.Random(5)
    for _ in range(50):
        r, c = rng.randint(1, 12), rng.randint(1, 12)
        dense = [[rng.choice([0, 0, 0, 1, -1, 2, 3]) for _ in range(c)] for _ in range(r)]
        rows = [{j: v for j, v in enumerate(row) if v} for row in dense]
        assert smith_invariants_sparse(rows) == smith_normal_form(dense)


def test_large_entries_do_not_overflow():
    big = 10 ** 30
    assert smith_normal_form([[big, 0], [0, big * 3]]) == [big, 3 * big]


# boundary matrices

def test_edge_boundary():
    k = SimplicialComplex("ab", [(0, 1)])
    assert boundary_rows(k, 1) == [{0: -1, 1: 1}]


def _compose(k, d):
    # d-boundary followed by (d-1)-boundary must vanish
    hi = boundary_rows(k, d)
    lo = boundary_rows(k, d - 1)
    for row in hi:
        acc = {}
        for j, v in row.items():
            for i, w in lo[j].items():
                acc[i] = acc.get(i, 0) + v * w
        assert all(v == 0 for v in acc.values())


def test_triangle_boundary_squares_to_zero():
    _compose(SimplicialComplex("abc", [(0, 1, 2)]), 2)


@given(posets(1, 6))
def test_boundary_squares_to_zero(p):
    k = order_complex(p)
    for d in range(2, k.dim + 1):
        _compose(k, d)


def test_hollow_tetrahedron():
    k = SimplicialComplex("abcd", [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    dense = [[0] * len(k.faces[1]) for _ in k.faces[2]]
    for i, row in enumerate(boundary_rows(k, 2)):
        for j, v in row.items():
            dense[i][j] = v
    assert oracles.bareiss_rank(dense) == 3
    assert reduced_homology(k) == HomologyProfile.sphere(2)


# homology of spaces

def test_point_and_spheres():
    assert poset_homology(Poset.chain(1)).is_zero()
    s = Poset([], [])
    for k in range(5):
        s = nh_suspension(s, 1)
        assert poset_homology(s) == HomologyProfile.sphere(k)


def test_circle_family():
    for n in range(2, 9):
        h = poset_homology(s1_n(n))
        assert h == HomologyProfile.sphere(1) and h.is_torsion_free()


def test_projective_plane_has_two_torsion():
    k = SimplicialComplex([str(i) for i in range(7)], RP2)
    h = reduced_homology(k)
    assert h.bettis() == [0, 0] and h.torsion(1) == (2,)
    # same through its face poset
    assert poset_homology(face_poset(k)) == h
    b, t = oracles.homology_oracle(k.simplices())
    assert b == [0, 0] and t[1] == {2: 1}


@pytest.mark.parametrize("name,dim,betti", [
    ("fig_3333_1e", 3, 1), ("fig_3333_1c", 2, 3), ("fig_3333_114c", 2, 3),
    ("fig_3333_15d", 2, 3), ("s12x4", 1, 5)])
def test_golden_figures(name, dim, betti):
    p = fixtures.named_spaces()[name]
    h = poset_homology(p)
    want = HomologyProfile.make([(0, ())] * dim + [(betti, ())])
    assert h == want
    b, t = oracles.poset_homology_oracle(oracles.from_masks(p.down))
    assert b == want.bettis() and not any(t)


@given(strict_orders(1, 7))
def test_homology_matches_rank_oracle(lt):
    h = poset_homology(poset_from_lt(lt))
    betti, torsion = oracles.poset_homology_oracle(lt)
    assert profile_matches_oracle(h, betti, torsion)


@given(posets(1, 7), st.integers(1, 2))
def test_suspension_shifts_homology(p, k):
    assert poset_homology(nh_suspension(p, k)) == poset_homology(p).shift(k)


@given(posets(1, 7))
def test_euler_characteristic_from_betti_numbers(p):
    h = poset_homology(p)
    chi = order_complex(p).euler_characteristic()
    assert euler_from_profile(h) == chi - 1


@given(posets(1, 7))
def test_opposite_has_same_homology(p):
    assert poset_homology(p.opposite()) == poset_homology(p)


def test_profile_algebra():
    a = HomologyProfile.sphere(1)
    b = HomologyProfile.make([(0, ()), (0, (2,))])
    assert (a + a).betti(1) == 2
    assert (a + b).torsion(1) == (2,)
    assert a.shift(2) == HomologyProfile.sphere(3)
    assert HomologyProfile.make([(0, ()), (0, ())]) == HomologyProfile.zero()
    assert not b.is_torsion_free()
    assert a.describe() == "H1=Z"
    assert HomologyProfile.zero().describe() == "acyclic"
    assert a.to_json() == {"reduced": True, "dims": [{"betti": 0, "torsion": []}, {"betti": 1, "torsion": []}]}


def test_disconnected_space_has_reduced_zeroth_homology():
    h = poset_homology(Poset.antichain(3))
    assert h.betti(0) == 2
