from fractions import Fraction as Q
from math import sqrt

import pytest
from hypothesis import given, settings, strategies as st

from rrdeg.bw import (Eigenpair, HomogeneousForm, bw_dist_sq, bw_inner, bw_norm_sq, closest_rank_one,
                      eigen_residual, form_from_raw_list, rank_one_power)
from rrdeg.errors import InvalidArgument, NotFound

CUBIC = form_from_raw_list(2, 3, [2, -3, 6, -1])


def scaled(vec):
    from rrdeg.bw import exponents
    return HomogeneousForm(2, 3, dict(zip(exponents(2, 3), vec)), "scaled")


G1 = scaled([Q(24, 25), Q(12, 25), Q(6, 25), Q(3, 25)])
G2 = scaled([Q(1, 2)] * 4)
G3 = scaled([Q(3, 2), Q(-3, 2), Q(3, 2), Q(-3, 2)])


def test_conventions_round_trip():
    assert CUBIC.scaled_vector() == [2, -1, 2, -1]
    assert CUBIC.scaled().raw() == CUBIC
    assert HomogeneousForm.from_json(CUBIC.to_json()) == CUBIC
    with pytest.raises(InvalidArgument):
        HomogeneousForm(2, 3, {(1, 1): 1})
    with pytest.raises(InvalidArgument):
        HomogeneousForm.from_json({"vars": 2})


def test_basis_normalization():
    for w in range(1, 5):
        x0w = HomogeneousForm(3, w, {(w, 0, 0): 1})
        assert bw_inner(x0w, x0w) == 1


def test_binary_cubic_distances():
    d = [bw_dist_sq(CUBIC, g) for g in (G1, G2, G3)]
    assert d == [Q(91, 5), 18, 2]
    assert round(float(d[0]), 1) == 18.2
    assert bw_dist_sq(CUBIC, CUBIC) == 0


def test_rank_one_powers():
    assert rank_one_power([2, 1], Q(3, 25), 3) == G1
    assert rank_one_power([1, 1], Q(1, 2), 3) == G2
    assert rank_one_power([1, -1], Q(3, 2), 3) == G3
    assert rank_one_power([0, 1, -1], 4, 2) == HomogeneousForm(3, 2, {(0, 2, 0): 4, (0, 1, 1): -8, (0, 0, 2): 4})
    assert not rank_one_power([1, 2], 0, 3).coeffs
    # the unit-vector version: psi = (sqrt2/2, -sqrt2/2), lambda = 3 sqrt2 gives g3 up to rounding
    g = rank_one_power([sqrt(2) / 2, -sqrt(2) / 2], 3 * sqrt(2), 3).raw().coeffs
    for e, c in G3.raw().coeffs.items():
        assert abs(g[e] - float(c)) < 1e-12


def test_fermat_distance_103():
    f = HomogeneousForm(3, 2, {(2, 0, 0): 1, (0, 2, 0): 10, (0, 1, 1): 2, (0, 0, 2): 8})
    assert bw_dist_sq(f, rank_one_power([0, 1, -1], 4, 2)) == 103


def test_eigen_residual():
    lam, res = eigen_residual(CUBIC, [2 / sqrt(5), 1 / sqrt(5)])
    assert abs(lam - 3 * sqrt(5) / 5) < 1e-12 and res < 1e-12
    for psi, want in (([sqrt(2) / 2, sqrt(2) / 2], sqrt(2)), ([sqrt(2) / 2, -sqrt(2) / 2], 3 * sqrt(2))):
        lam, res = eigen_residual(CUBIC, psi)
        assert abs(lam - want) < 1e-12 and res < 1e-12
    lam, res = eigen_residual(HomogeneousForm(2, 4, {(4, 0): 1}), [1, 0])
    assert lam == 1 and res == 0
    with pytest.raises(InvalidArgument):
        eigen_residual(CUBIC, [1, 1])


def test_closest_rank_one():
    pairs = [Eigenpair((2 / sqrt(5), 1 / sqrt(5)), 3 * sqrt(5) / 5),
             Eigenpair((sqrt(2) / 2, sqrt(2) / 2), sqrt(2)),
             Eigenpair((sqrt(2) / 2, -sqrt(2) / 2), 3 * sqrt(2))]
    best = closest_rank_one(CUBIC, pairs)
    assert abs(best.lam - 3 * sqrt(2)) < 1e-12
    # max |lambda| minimizes the BW distance among the produced pairs
    dists = [float(bw_dist_sq(CUBIC, rank_one_power(p.psi, p.lam, 3))) for p in pairs]
    assert dists.index(min(dists)) == 2 and abs(min(dists) - 2) < 1e-9
    assert closest_rank_one(CUBIC, pairs[:1]) is pairs[0]
    with pytest.raises(NotFound):
        closest_rank_one(CUBIC, [])


rat = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.tuples(st.lists(rat, min_size=n, max_size=n),
                                                      st.lists(rat, min_size=n, max_size=n))),
       st.integers(1, 5))
def test_multiplicativity(vecs, w):
    phi, psi = vecs
    lhs = bw_inner(rank_one_power(phi, 1, w), rank_one_power(psi, 1, w))
    assert lhs == sum(a * b for a, b in zip(phi, psi)) ** w


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=10, max_size=10),
       st.lists(st.integers(-9, 9), min_size=10, max_size=10),
       st.lists(st.integers(-9, 9), min_size=10, max_size=10), st.integers(-5, 5))
def test_symmetry_bilinearity_definiteness(a, b, c, s):
    f, g, h = (form_from_raw_list(3, 3, v) for v in (a, b, c))
    assert bw_inner(f, g) == bw_inner(g, f)
    assert bw_inner(f * s + g, h) == s * bw_inner(f, h) + bw_inner(g, h)
    if f != g:
        assert bw_dist_sq(f, g) > 0
    assert bw_norm_sq(f) >= 0
