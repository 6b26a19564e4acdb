from fractions import Fraction as Q

import numpy as np
import pytest

from rrdeg import upoly
from rrdeg.errors import InvalidArgument, NumericFailure


def test_exact_arithmetic():
    p = upoly.mul([Q(-1), Q(1)], [Q(-2), Q(1)])  # (x-1)(x-2)
    assert p == [2, -3, 1]
    q, r = upoly.divmod_poly(upoly.mul(p, [3, 1]), [Q(-1), Q(1)])
    assert r == [] and q == upoly.mul([Q(-2), Q(1)], [3, 1])
    assert upoly.gcd(p, upoly.mul([Q(-1), Q(1)], [Q(5), Q(1)])) == [-1, 1]
    assert upoly.squarefree_part(upoly.mul(p, p)) == [2, -3, 1]
    assert upoly.primitive_integer([Q(1, 2), Q(-3, 4)]) == [2, -3]


def test_sturm_counts():
    assert upoly.sturm_count([2, -3, 1]) == 2
    assert upoly.sturm_count([1, 0, 1]) == 0
    assert upoly.sturm_count(upoly.mul([1, 0, 1], [-1, 1])) == 1
    assert upoly.sturm_count_interval([2, -3, 1], Q(0), Q(3, 2)) == 1
    with pytest.raises(InvalidArgument):
        upoly.sturm_sequence([])


def test_aberth_known_roots():
    z = np.sort_complex(upoly.aberth([-6, 11, -6, 1]))
    assert np.allclose(z, [1, 2, 3], atol=1e-12)
    # a sextic with printed roots
    roots = upoly.aberth([6, -12, -12, -6, -20, 9, 2])
    want = [-6.08441, -0.807225, 0.34297, 2.04914, -0.000239 + 0.932267j, -0.000239 - 0.932267j]
    for w in want:
        assert min(abs(roots - w)) < 1e-5


def test_aberth_random_residuals():
    rng = np.random.default_rng(1)
    for _ in range(50):
        c = rng.integers(-10, 11, size=23).astype(float)
        c[-1] = c[-1] or 1.0
        c[0] = c[0] or 1.0  # keep 0 from being a multiple root
        z = upoly.aberth(c)
        assert len(z) == 22
        scale = np.polyval(np.abs(c[::-1]), np.abs(z))
        assert np.all(np.abs(np.polyval(c[::-1], z)) <= 1e-10 * scale)


def test_aberth_failure_reports_diagnostics():
    with pytest.raises(NumericFailure) as info:
        upoly.aberth([1, 0, 0, 0, 0, 0, 0, 0, 1], max_iter=1, tol=0.0)
    assert info.value.diagnostics["degree"] == 8
