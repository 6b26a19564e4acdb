import json
from fractions import Fraction as Q
from math import prod

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from rrdeg import tensor as T
from rrdeg.eigensolve import conjugation_closed
from rrdeg.errors import InvalidArgument
from rrdeg.formulas import rrdeg_product_lines_bw, span_codim

IDX = T.multi_indices((1, 1))  # (0,0), (0,1), (1,0), (1,1)


def test_index_class_examples():
    assert T.index_class((0, 0), (1, 1), (1, 1)) == ((1, 1), (1, 1))
    assert T.index_class((0, 1), (1, 0), (1, 1)) == ((1, 1), (1, 1))
    assert T.index_class((0, 0), (0, 0), (1, 1)) == ((2, 0), (2, 0))
    assert T.index_class((1, 0), (0, 1), (1, 1)) == T.index_class((0, 1), (1, 0), (1, 1))
    with pytest.raises(InvalidArgument):
        T.index_class((0, 0), (1,))
    with pytest.raises(InvalidArgument):
        T.index_class((0, 2), (0, 0), (1, 1))


def test_partition_is_a_partition():
    for shape in ((1,), (1, 1), (2, 1), (1, 1, 1), (2, 2)):
        D = prod(m + 1 for m in shape)
        parts = T.class_partition(shape)
        pairs = [p for ps in parts.values() for p in ps]
        assert len(pairs) == len(set(pairs)) == D * (D + 1) // 2
        for key, ps in parts.items():
            assert all(T.index_class(i, j, shape) == key for i, j in ps)


def test_projection_p1xp1_class_coefficients():
    # distinct entries so every averaged coefficient is identifiable
    vals = {}
    n = 1
    for a, i in enumerate(IDX):
        for j in IDX[a:]:
            vals[(i, j)] = Q(n)
            n += 1
    H = T.SymMatrix((1, 1), vals)
    c = T.project_sym2(H).coeffs
    h = lambda i, j: H[i, j]
    assert c[((2, 0), (2, 0))] == h((0, 0), (0, 0))
    assert c[((2, 0), (1, 1))] == h((0, 0), (0, 1))
    assert c[((2, 0), (0, 2))] == h((0, 1), (0, 1))
    assert c[((1, 1), (2, 0))] == h((0, 0), (1, 0))
    assert c[((1, 1), (1, 1))] == (h((0, 0), (1, 1)) + h((0, 1), (1, 0))) / 2
    assert c[((1, 1), (0, 2))] == h((0, 1), (1, 1))
    assert c[((0, 2), (2, 0))] == h((1, 0), (1, 0))
    assert c[((0, 2), (1, 1))] == h((1, 0), (1, 1))
    assert c[((0, 2), (0, 2))] == h((1, 1), (1, 1))
    assert len(c) == 9


def test_identity_projection_brute_force():
    for shape in ((1, 1), (2, 1), (1, 1, 1)):
        idx = T.multi_indices(shape)
        H = T.SymMatrix(shape, {(i, i): 1 for i in idx})
        F = T.project_sym2(H)
        # brute force: enumerate all unordered pairs and average per class
        sums, counts = {}, {}
        for a, i in enumerate(idx):
            for j in idx[a:]:
                k = T.index_class(i, j, shape)
                sums[k] = sums.get(k, 0) + (1 if i == j else 0)
                counts[k] = counts.get(k, 0) + 1
        assert F.coeffs == {k: Q(sums[k], counts[k]) for k in sums if sums[k]}


def test_rank_one_projection_is_square_of_multilinear_form():
    shape = (1, 2)
    idx = T.multi_indices(shape)
    rng = np.random.default_rng(2)
    z = {i: int(rng.integers(-5, 6)) for i in idx}
    H = T.SymMatrix(shape, {(i, j): z[i] * z[j] for a, i in enumerate(idx) for j in idx[a:]})
    F = T.project_sym2(H)
    blocks = [sp.symbols("a0:2"), sp.symbols("b0:3")]
    lin = sum(z[i] * blocks[0][i[0]] * blocks[1][i[1]] for i in idx)
    assert T.multiform_as_poly(F, blocks) == sp.Poly(sp.expand(lin ** 2), *blocks[0], *blocks[1], domain="QQ")


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=10, max_size=10))
def test_projection_idempotent_and_span(entries):
    pairs = [(i, j) for a, i in enumerate(IDX) for j in IDX[a:]]
    H = T.SymMatrix((1, 1), dict(zip(pairs, entries)))
    F = T.project_sym2(H)
    lifted = T.lift_sym2(F)
    assert T.span_membership(lifted)
    assert T.project_sym2(lifted) == F
    assert T.span_membership(H) == (H[(0, 0), (1, 1)] == H[(0, 1), (1, 0)])
    quad, blocks = T.quadric_of_matrix(H)
    assert quad == T.multiform_as_poly(F, blocks)


def test_span_condition_count_matches_codim():
    assert T.span_condition_count((1, 1)) == 1 == span_codim([1, 1], [1, 1], 2)
    for k in range(1, 4):
        assert T.span_condition_count((1,) * k) == span_codim([1] * k, [1] * k, 2)


def test_json_round_trips():
    H = T.SymMatrix((1, 1), {((0, 0), (1, 1)): Q(1, 3), ((1, 0), (0, 1)): 2})
    assert T.SymMatrix.from_json(json.dumps(H.to_json())) == H
    F = T.project_sym2(H)
    assert T.MultiForm.from_json(F.to_json()) == F
    with pytest.raises(InvalidArgument):
        T.SymMatrix.from_json({"shape": [1, 1]})
    with pytest.raises(InvalidArgument):
        T.SymMatrix.from_dense((1, 1), [[0, 1, 0, 0], [2, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])


def test_singular_tuple_residual():
    f = T.MultiForm((1, 1), (2, 2), {((2, 0), (2, 0)): 1})
    e0 = [1, 0]
    assert T.singular_tuple_residual(f, [e0, e0], 1) == 0
    assert T.singular_tuple_residual(f, [e0, e0], 2) >= 1
    with pytest.raises(InvalidArgument):
        T.singular_tuple_residual(f, [[1, 1], e0], 1)


def test_segre_2x2_singular_pairs():
    for seed in range(5):
        rep = T.verify_segre_2x2(seed)
        assert rep.complex_count == 8 == rrdeg_product_lines_bw(2, 2)
        assert rep.residual_max <= 1e-8 and rep.symbolic_match and rep.match
        assert conjugation_closed([np.concatenate(p) for p in rep.pairs])
    js = rep.to_json()
    assert js["schema"] == 1 and js["expected_degree"] == "8"
