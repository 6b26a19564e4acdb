import json
from fractions import Fraction as Q
from math import sqrt

import numpy as np
import pytest

from rrdeg import eigensolve as E
from rrdeg.bw import HomogeneousForm, form_from_raw_list
from rrdeg.errors import DegenerateInput, InvalidArgument

CUBIC = form_from_raw_list(2, 3, [2, -3, 6, -1])
CONIC_1 = form_from_raw_list(3, 2, [42, 280, -120, 267, 420, -63])
CONIC_2 = form_from_raw_list(3, 2, [189, 56, 120, 195, -168, 147])
P1 = (4, 3, 14, -6, -6, -6, -6)
P2 = (2, 9, -20, -6, -12, -12, 6)
FERMAT = HomogeneousForm(3, 3, {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1})
FERMAT_OBJ = HomogeneousForm(3, 2, {(2, 0, 0): 1, (0, 2, 0): 10, (0, 1, 1): 2, (0, 0, 2): 8})
NU2 = E.rational_normal_curve(2)
EUCL3 = E.euclidean_quadric(3)


def proportional(p, q):
    p, q = [Q(x) for x in p], [Q(x) for x in q]
    k = next(i for i, x in enumerate(q) if x)
    return all(a * q[k] == b * p[k] for a, b in zip(p, q)) and p[k] != 0


def test_binary_form_ops():
    t0, t1 = E.identity_map()
    p = (t0 - t1.scale(2)) * (t0 - t1) * (t0 + t1)
    assert p.coeffs == (1, -2, -1, 2)
    assert p.d_t0().coeffs == (3, -4, -1) and p.d_t1().coeffs == (-2, -2, 6)
    assert (t0 ** 3).coeffs == (1, 0, 0, 0)
    assert p(2, 1) == 0
    with pytest.raises(InvalidArgument):
        E.BinaryForm(2, (1, 2))


def test_critical_form_binary_cubic():
    p = E.critical_binary_form(E.identity_map(), CUBIC, E.euclidean_quadric(2))
    assert proportional(p.coeffs, (1, -2, -1, 2))  # (t0 - 2 t1)(t0 - t1)(t0 + t1)
    pts = E.roots_projective(p)
    got = sorted((round(float((pt.coords[1] / pt.coords[0]).real), 9) for pt in pts))
    assert got == [-1.0, 0.5, 1.0]


def test_critical_form_conics_reproduces_printed_sextics():
    assert proportional(E.critical_binary_form(NU2, CONIC_1, EUCL3).coeffs, P1)
    assert proportional(E.critical_binary_form(NU2, CONIC_2, EUCL3).coeffs, P2)


def test_critical_form_degree_and_errors():
    for d in range(1, 5):
        for w in range(1, 5):
            f = E.random_form(np.random.default_rng(d * 10 + w), d + 1, w)
            assert E.critical_binary_form(E.rational_normal_curve(d), f, E.euclidean_quadric(d + 1)).degree == (w + 2) * d - 2
    with pytest.raises(InvalidArgument):
        E.critical_binary_form(NU2, CUBIC, EUCL3)


def test_bw_quadric_factor():
    q = E.diagonal_quadric([1, 2, 1])
    rng = np.random.default_rng(3)
    iso = E.BinaryForm(2, (1, 0, 1))
    for _ in range(10):
        p = E.critical_binary_form(NU2, E.random_form(rng, 3, 2), q)
        assert E.binary_divide(p, iso).degree == 4
    # the printed quartic cofactor for the first conic objective
    c = {"200": 42, "110": 140, "101": -60, "020": 267, "011": 210, "002": -63}
    want = (c["110"], c["020"] - 2 * c["200"] + 2 * c["101"], 3 * (c["011"] - c["110"]),
            2 * c["002"] - c["020"] - 2 * c["101"], -c["011"])
    p = E.critical_binary_form(NU2, CONIC_1, q)
    assert proportional(E.binary_divide(p, iso).coeffs, want)


def test_roots_projective_special_points():
    pts = E.roots_projective(E.BinaryForm(3, (0, 0, 0, 1)))  # t1^3
    assert len(pts) == 1 and pts[0].multiplicity == 3 and np.allclose(pts[0].coords, [1, 0])
    pts = E.roots_projective(E.BinaryForm(2, (1, 0, 0)))  # t0^2
    assert len(pts) == 1 and pts[0].multiplicity == 2 and np.allclose(pts[0].coords, [0, 1])
    with pytest.raises(InvalidArgument):
        E.roots_projective(E.BinaryForm(1, (0, 0)))


def test_sturm_real_count():
    assert E.sturm_real_count(E.BinaryForm(6, P1)) == 2
    assert E.sturm_real_count(E.BinaryForm(6, P2)) == 4
    t0, t1 = E.identity_map()
    assert E.sturm_real_count((t0 * t0 + t1 * t1) * (t0 - t1)) == 1
    assert E.sturm_real_count(t0 * t1) == 2  # [1:0] and [0:1]
    with pytest.raises(InvalidArgument):
        E.sturm_real_count(E.BinaryForm(2, (0, 0, 0)))


@pytest.mark.parametrize("coeffs,printed", [
    (P1, (-0.673903, 1.04536, -0.058973 + 0.730365j, -0.501755 + 1.92718j)),
    (P2, (-6.08441, -0.807225, 0.34297, 2.04914, -0.000239 + 0.932267j)),
])
def test_printed_root_sets(coeffs, printed):
    # the printed values are the ratios t0/t1 of the roots
    pts = E.roots_projective(E.BinaryForm(6, coeffs))
    ratios = np.array([pt.coords[0] / pt.coords[1] for pt in pts])
    assert len(pts) == 6
    for a in printed:
        assert min(abs(ratios - a)) < 1e-5
        assert min(abs(ratios - np.conj(a))) < 1e-5


def _sextic_in_W(rng):
    y3, y4, y5, y6 = (int(v) for v in rng.integers(-20, 21, 4))
    ys = [Q(-(y4 + y6), 3), Q(y3 - 2 * y5, 2), Q(y4 - 8 * y6, 3), y3, y4, y5, y6]
    return E.BinaryForm(6, tuple(ys))


def test_linear_relations_on_random_conic_objectives():
    rng = np.random.default_rng(0)
    for _ in range(50):
        y = E.critical_binary_form(NU2, E.random_form(rng, 3, 2), EUCL3).coeffs
        assert 3 * y[2] - y[4] + 8 * y[6] == 0
        assert 2 * y[1] - y[3] + 2 * y[5] == 0
        assert 3 * y[0] + y[4] + y[6] == 0


def test_real_counts_two_or_four_and_sturm_agrees():
    rng = np.random.default_rng(0)
    seen = set()
    for _ in range(100):
        p = _sextic_in_W(rng)
        if p.is_zero() or E.squarefree(p).degree != 6:
            continue
        n = E.sturm_real_count(p)
        numeric = sum(1 for pt in E.roots_projective(p) if pt.is_real())
        assert n == numeric
        seen.add(n)
    assert seen <= {2, 4} and seen


def test_fermat_example():
    rep = E.eigenpoints_plane_curve(FERMAT, FERMAT_OBJ)
    assert rep.complex_count == 12 and rep.real_count == 4
    assert sum(1 for p in rep.points if abs(p.coords[0]) < 1e-12) == 3
    assert rep.residual_max <= 1e-8 and max(rep.rank_ratios) <= 1e-6
    assert E.count_vs_formula(rep, 12)
    assert E.conjugation_closed([p.coords for p in rep.points])
    best = max(rep.eigenpairs, key=lambda e: abs(e["lambda"]))
    assert abs(best["lambda"] - 8) < 1e-8
    assert np.allclose(np.abs(best["psi"]), [0, sqrt(2) / 2, sqrt(2) / 2], atol=1e-8)


def test_plane_curve_degenerate_objective():
    with pytest.raises(DegenerateInput):
        E.eigenpoints_plane_curve(FERMAT, FERMAT)


def test_conic_as_plane_curve_has_six_points():
    conic = HomogeneousForm(3, 2, {(0, 2, 0): 1, (1, 0, 1): -1})
    rng = np.random.default_rng(5)
    for _ in range(5):
        rep = E.eigenpoints_plane_curve(conic, E.random_form(rng, 3, 2))
        assert rep.complex_count == 6 and rep.real_count in (2, 4)


def test_parametrized_solutions_are_certified():
    rng = np.random.default_rng(11)
    for d, w in ((1, 3), (2, 2), (3, 4)):
        rep = E.verify_rational_normal_curve(d, w, f=E.random_form(rng, d + 1, w))
        assert rep.complex_count == (w + 2) * d - 2
        assert max(rep.rank_ratios) <= 1e-6 and rep.residual_max <= 1e-8
        assert E.conjugation_closed([p.coords for p in rep.points])
        assert rep.extra["sturm_real_count"] == rep.real_count


def test_pn_driver_binary_cubic():
    rep = E.verify_pn(CUBIC)
    assert rep.match
    lams = sorted(abs(e["lambda"]) for e in rep.eigenpairs)
    assert np.allclose(lams, [3 * sqrt(5) / 5, sqrt(2), 3 * sqrt(2)], atol=1e-8)


def test_conic_bw_driver():
    rep = E.verify_conic_bw(seed=7)
    assert rep.match and rep.complex_count == 4 and rep.extra["isotropic_roots_removed"] == 2


def test_report_json_is_deterministic():
    a = json.dumps(E.verify_rational_normal_curve(3, 2, seed=4).to_json(), sort_keys=True)
    b = json.dumps(E.verify_rational_normal_curve(3, 2, seed=4).to_json(), sort_keys=True)
    assert a == b and json.loads(a)["expected_degree"] == "10"
