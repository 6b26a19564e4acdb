"""Projection of symmetric matrices onto multihomogeneous quadrics, and singular tuples.

For V = C^(m_1+1) x ... x C^(m_k+1), a symmetric matrix H indexed by
multi-indices defines the quadric f_H(x_1, .., x_k) = z^T H z with
z = x_1 (x) ... (x) x_k. Two index pairs (i, j) and (i', j') give the same
monomial exactly when, factor by factor, the multisets {i_l, j_l} and
{i'_l, j'_l} agree. Averaging H over these classes gives the coefficients of
f_H in the scaled convention f = sum_a c_a prod_l C(2, a_l) x_l^(a_l).

Only the quadratic case (H in Sym^2 V) is implemented; forms of higher degree
would average over classes of omega-tuples of multi-indices instead of pairs.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy as sp

from . import upoly
from .bw import multinomial
from .eigensolve import BinaryForm, binary_gcd, cluster, roots_projective, projective_distance, _NumPoly, _newton2
from .errors import DegenerateInput, InvalidArgument

MultiIndex = Tuple[int, ...]
ClassKey = Tuple[Tuple[int, ...], ...]
NORMALIZATION_TOL = 1e-8
RESIDUAL_TOL = 1e-8


def _check_shape(shape: Sequence[int]) -> Tuple[int, ...]:
    shape = tuple(int(m) for m in shape)
    if not shape or any(m < 0 for m in shape):
        raise InvalidArgument(f"invalid shape {shape}")
    return shape


def multi_indices(shape: Sequence[int]) -> List[MultiIndex]:
    """I_m in lexicographic order."""
    return list(itertools.product(*(range(m + 1) for m in shape)))


def _check_index(i: Sequence[int], shape: Tuple[int, ...]) -> MultiIndex:
    i = tuple(int(a) for a in i)
    if len(i) != len(shape) or any(not 0 <= a <= m for a, m in zip(i, shape)):
        raise InvalidArgument(f"multi-index {i} out of bounds for shape {shape}")
    return i


def index_class(i: Sequence[int], j: Sequence[int], shape: Optional[Sequence[int]] = None) -> ClassKey:
    """Per-factor content vectors of the pair (i, j): the l-th entry counts the
    occurrences of 0, 1, ..., m_l in (i_l, j_l)."""
    if len(i) != len(j):
        raise InvalidArgument("multi-indices of different lengths")
    if shape is None:
        shape = tuple(max(a, b) for a, b in zip(i, j))
    shape = _check_shape(shape)
    i, j = _check_index(i, shape), _check_index(j, shape)
    key = []
    for a, b, m in zip(i, j, shape):
        v = [0] * (m + 1)
        v[a] += 1
        v[b] += 1
        key.append(tuple(v))
    return tuple(key)


def class_partition(shape: Sequence[int]) -> Dict[ClassKey, List[Tuple[MultiIndex, MultiIndex]]]:
    """All unordered pairs i <= j grouped by class, keys in lexicographic order."""
    shape = _check_shape(shape)
    idx = multi_indices(shape)
    out: Dict[ClassKey, list] = {}
    for a, i in enumerate(idx):
        for j in idx[a:]:
            out.setdefault(index_class(i, j, shape), []).append((i, j))
    return dict(sorted(out.items()))


def span_condition_count(shape: Sequence[int]) -> int:
    """Number of independent equations h_ij = h_i'j' cutting out the span of nu_2(X)."""
    return sum(len(v) - 1 for v in class_partition(shape).values())


@dataclass(frozen=True)
class SymMatrix:
    shape: Tuple[int, ...]
    entries: Dict[Tuple[MultiIndex, MultiIndex], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        shape = _check_shape(self.shape)
        clean = {}
        for (i, j), c in self.entries.items():
            i, j = _check_index(i, shape), _check_index(j, shape)
            if j < i:
                i, j = j, i
            c = Fraction(c) if isinstance(c, (int, Fraction)) else c
            if c != 0:
                clean[(i, j)] = clean.get((i, j), 0) + c
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "entries", clean)

    @property
    def dim(self) -> int:
        return prod(m + 1 for m in self.shape)

    def __getitem__(self, pair) -> Fraction:
        i, j = pair
        i, j = tuple(i), tuple(j)
        return self.entries.get((i, j) if i <= j else (j, i), Fraction(0))

    @classmethod
    def from_dense(cls, shape: Sequence[int], matrix) -> "SymMatrix":
        shape = _check_shape(shape)
        idx = multi_indices(shape)
        if len(matrix) != len(idx) or any(len(r) != len(idx) for r in matrix):
            raise InvalidArgument(f"matrix must be {len(idx)}x{len(idx)}")
        entries = {}
        for a, i in enumerate(idx):
            for b in range(a, len(idx)):
                if matrix[a][b] != matrix[b][a]:
                    raise InvalidArgument("matrix is not symmetric")
                entries[(i, idx[b])] = matrix[a][b]
        return cls(shape, entries)

    def dense(self) -> List[List]:
        idx = multi_indices(self.shape)
        return [[self[i, j] for j in idx] for i in idx]

    def to_json(self) -> dict:
        out = []
        for (i, j) in sorted(self.entries):
            c = self.entries[(i, j)]
            out.append({"i": list(i), "j": list(j), "num": str(c.numerator), "den": str(c.denominator)})
        return {"shape": list(self.shape), "entries": out}

    @classmethod
    def from_json(cls, obj) -> "SymMatrix":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            entries = {(tuple(e["i"]), tuple(e["j"])): Fraction(int(e["num"]), int(e.get("den", "1")))
                       for e in obj["entries"]}
            return cls(tuple(obj["shape"]), entries)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InvalidArgument(f"malformed matrix JSON: {exc}") from exc


@dataclass(frozen=True)
class MultiForm:
    """Multihomogeneous form in the scaled convention: sum_a c_a prod_l C(d_l, a_l) x_l^(a_l)."""

    shape: Tuple[int, ...]
    degrees: Tuple[int, ...]
    coeffs: Dict[ClassKey, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        shape = _check_shape(self.shape)
        degrees = tuple(int(d) for d in self.degrees)
        if len(degrees) != len(shape) or any(d < 0 for d in degrees):
            raise InvalidArgument("degrees must match the shape")
        clean = {}
        for key, c in self.coeffs.items():
            key = tuple(tuple(int(a) for a in blk) for blk in key)
            if len(key) != len(shape) or any(len(b) != m + 1 or sum(b) != d or min(b) < 0
                                             for b, m, d in zip(key, shape, degrees)):
                raise InvalidArgument(f"exponent {key} incompatible with shape {shape}, degrees {degrees}")
            c = Fraction(c) if isinstance(c, (int, Fraction)) else c
            if c != 0:
                clean[key] = c
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "degrees", degrees)
        object.__setattr__(self, "coeffs", clean)

    def raw_coeffs(self) -> Dict[ClassKey, Fraction]:
        return {k: c * prod(multinomial(b) for b in k) for k, c in self.coeffs.items()}

    def __call__(self, *vectors):
        return sum(c * prod(prod(x ** a for x, a in zip(v, b)) for v, b in zip(vectors, k))
                   for k, c in self.raw_coeffs().items())

    def block_gradient(self, l: int, vectors) -> np.ndarray:
        """Gradient with respect to the l-th block of variables, evaluated numerically."""
        vs = [np.asarray(v, dtype=complex) for v in vectors]
        g = np.zeros(self.shape[l] + 1, dtype=complex)
        for k, c in self.raw_coeffs().items():
            rest = prod(complex(np.prod(vs[b] ** np.array(k[b]))) for b in range(len(k)) if b != l)
            blk = k[l]
            for j, a in enumerate(blk):
                if a:
                    e = list(blk)
                    e[j] -= 1
                    g[j] += complex(c) * a * rest * np.prod(vs[l] ** np.array(e))
        return g

    def to_json(self) -> dict:
        out = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            if not isinstance(c, Fraction):
                raise InvalidArgument("only exact forms serialize to JSON")
            out.append({"exp": [list(b) for b in k], "num": str(c.numerator), "den": str(c.denominator)})
        return {"shape": list(self.shape), "degrees": list(self.degrees), "convention": "scaled", "coeffs": out}

    @classmethod
    def from_json(cls, obj) -> "MultiForm":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            coeffs = {tuple(tuple(b) for b in e["exp"]): Fraction(int(e["num"]), int(e.get("den", "1")))
                      for e in obj["coeffs"]}
            return cls(tuple(obj["shape"]), tuple(obj["degrees"]), coeffs)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InvalidArgument(f"malformed multiform JSON: {exc}") from exc


def project_sym2(H: SymMatrix) -> MultiForm:
    """Average the entries of H over each index-pair class."""
    coeffs = {}
    for key, pairs in class_partition(H.shape).items():
        coeffs[key] = sum((H[p] for p in pairs), Fraction(0)) / len(pairs)
    return MultiForm(H.shape, (2,) * len(H.shape), coeffs)


def lift_sym2(F: MultiForm) -> SymMatrix:
    """The class-constant matrix with h_ij = c_(class of (i, j)); a right inverse of the projection."""
    if any(d != 2 for d in F.degrees):
        raise InvalidArgument("only forms of multidegree (2, ..., 2) lift to matrices")
    entries = {}
    for key, pairs in class_partition(F.shape).items():
        c = F.coeffs.get(key, 0)
        for p in pairs:
            entries[p] = c
    return SymMatrix(F.shape, entries)


def span_membership(H: SymMatrix) -> bool:
    """True iff H is constant on every class, i.e. H lies in the span of nu_2 of the Segre."""
    for pairs in class_partition(H.shape).values():
        first = H[pairs[0]]
        if any(H[p] != first for p in pairs[1:]):
            return False
    return True


def quadric_of_matrix(H: SymMatrix):
    """z^T H z with z = x_1 (x) ... (x) x_k, expanded symbolically; returns (poly, variable blocks)."""
    blocks = [sp.symbols(f"x{l}_0:{m + 1}") for l, m in enumerate(H.shape)]
    z = {i: sp.prod([blocks[l][a] for l, a in enumerate(i)]) for i in multi_indices(H.shape)}
    idx = multi_indices(H.shape)
    expr = sum(sp.Rational(H[i, j].numerator, H[i, j].denominator) * z[i] * z[j]
               for i in idx for j in idx if H[i, j])
    gens = [x for b in blocks for x in b]
    return sp.Poly(sp.expand(expr), *gens, domain="QQ") if expr else sp.Poly(0, *gens, domain="QQ"), blocks


def multiform_as_poly(F: MultiForm, blocks) -> sp.Poly:
    gens = [x for b in blocks for x in b]
    expr = 0
    for k, c in F.raw_coeffs().items():
        mon = sp.prod([blocks[l][j] ** a for l, blk in enumerate(k) for j, a in enumerate(blk)])
        expr += sp.Rational(c.numerator, c.denominator) * mon
    return sp.Poly(expr, *gens, domain="QQ")


def singular_tuple_residual(f: MultiForm, vectors: Sequence, sigma) -> float:
    """max_l max-norm of (1/d_l) grad_l f(v) - sigma v_l, for v_l with sum v_lj^2 = 1."""
    if len(vectors) != len(f.shape):
        raise InvalidArgument("need one vector per factor")
    vs = [np.asarray(v, dtype=complex) for v in vectors]
    for v, m in zip(vs, f.shape):
        if v.shape != (m + 1,):
            raise InvalidArgument("vector length does not match the shape")
        if abs(np.sum(v * v) - 1) > NORMALIZATION_TOL:
            raise InvalidArgument("singular tuple vectors must be normalized")
    res = 0.0
    for l, (v, d) in enumerate(zip(vs, f.degrees)):
        r = f.block_gradient(l, vs) / d - sigma * v
        res = max(res, float(np.max(np.abs(r))))
    return res


def matrix_lagrange_residual(H: SymMatrix, vectors: Sequence, sigma) -> float:
    """The same criticality condition evaluated from the dense matrix H on z = v_1 (x) v_2."""
    if len(H.shape) != 2:
        raise InvalidArgument("dense check implemented for two factors")
    v1, v2 = (np.asarray(v, dtype=complex) for v in vectors)
    Hd = np.array([[complex(c) for c in row] for row in H.dense()])
    z = np.kron(v1, v2)
    M = (Hd @ z).reshape(len(v1), len(v2))
    r1 = M @ v2 - sigma * v1
    r2 = M.T @ v1 - sigma * v2
    return float(max(np.max(np.abs(r1)), np.max(np.abs(r2))))


# ---------------------------------------------------------------------------
# singular pairs of a bi-quadratic form on P^1 x P^1

@dataclass
class SingularPairReport:
    pairs: List[Tuple[np.ndarray, np.ndarray]]
    sigmas: List[complex]
    residuals: List[float]
    matrix_residuals: List[float]
    expected_degree: Optional[int] = 8
    seed: Optional[int] = None
    attempts: int = 1
    degenerate: List[str] = field(default_factory=list)
    symbolic_match: Optional[bool] = None

    @property
    def complex_count(self) -> int:
        return len(self.pairs)

    @property
    def real_count(self) -> int:
        return sum(1 for a, b in self.pairs
                   if np.all(np.abs(a.imag) <= 1e-8) and np.all(np.abs(b.imag) <= 1e-8))

    @property
    def residual_max(self) -> float:
        return max(self.residuals + self.matrix_residuals, default=0.0)

    @property
    def match(self) -> Optional[bool]:
        if self.expected_degree is None:
            return None
        return (self.complex_count == self.expected_degree and self.residual_max <= RESIDUAL_TOL
                and not self.degenerate and self.symbolic_match is not False)

    def to_json(self) -> dict:
        def cv(v):
            return [[float(z.real), float(z.imag)] for z in v]

        return {
            "schema": 1,
            "variant": "segre-2x2",
            "seed": self.seed,
            "attempts": self.attempts,
            "complex_count": self.complex_count,
            "real_count": self.real_count,
            "expected_degree": None if self.expected_degree is None else str(self.expected_degree),
            "match": self.match,
            "residual_max": self.residual_max,
            "symbolic_match": self.symbolic_match,
            "degenerate": list(self.degenerate),
            "points": [[cv(a), cv(b)] for a, b in self.pairs],
            "sigmas": [[float(s.real), float(s.imag)] for s in self.sigmas],
        }


def _normalize(v: np.ndarray) -> np.ndarray:
    s = np.sqrt(np.sum(v * v))
    if abs(s) < 1e-12 * max(1.0, float(np.max(np.abs(v)))):
        raise DegenerateInput("singular vector on the isotropic conic")
    y = v / s
    if np.all(np.abs(y.imag) <= 1e-12):
        y = y.real.astype(complex)
    # fix the sign: largest-magnitude coordinate has positive real part
    k = int(np.argmax(np.abs(y)))
    return -y if y[k].real < 0 else y


def _fixed_point_equations(F: MultiForm):
    """E_l = x_l0 d f/d x_l1 - x_l1 d f/d x_l0 for both factors, as exact polynomials."""
    x0, x1, y0, y1 = sp.symbols("x0 x1 y0 y1")
    blocks = [(x0, x1), (y0, y1)]
    f = multiform_as_poly(F, blocks).as_expr()
    E1 = sp.expand(x0 * sp.diff(f, x1) - x1 * sp.diff(f, x0))
    E2 = sp.expand(y0 * sp.diff(f, y1) - y1 * sp.diff(f, y0))
    return (x0, x1, y0, y1), E1, E2


def _binary_in(expr, a, b, degree) -> BinaryForm:
    p = sp.Poly(expr, a, b, domain="QQ") if expr != 0 else None
    co = [Fraction(0)] * (degree + 1)
    if p is not None:
        for (e0, e1), c in p.terms():
            co[e1] += Fraction(int(c.p), int(c.q))
    return BinaryForm(degree, tuple(co))


def singular_pairs_p1p1(F: MultiForm, H: Optional[SymMatrix] = None) -> SingularPairReport:
    """All singular pairs of a form of bidegree (2, 2) on C^2 x C^2.

    ``H`` is the matrix used for the dense criticality check; it defaults to
    the class-constant lift of F.
    """
    if F.shape != (1, 1) or F.degrees != (2, 2):
        raise InvalidArgument("the pair solver handles shape (1, 1) and degrees (2, 2)")
    (x0, x1, y0, y1), E1, E2 = _fixed_point_equations(F)
    s, t = sp.symbols("s t")
    found: List[Tuple[np.ndarray, np.ndarray, int]] = []
    degenerate: List[str] = []

    # boundary charts: x = (0, 1) or y = (0, 1)
    for xfix, yfix, tag in (((0, 1), None, "x"), (None, (0, 1), "y")):
        if xfix is not None:
            e1 = E1.subs({x0: 0, x1: 1})
            e2 = E2.subs({x0: 0, x1: 1})
            a, b = _binary_in(e1, y0, y1, 2), _binary_in(e2, y0, y1, 2)
        else:
            e1 = E1.subs({y0: 0, y1: 1})
            e2 = E2.subs({y0: 0, y1: 1})
            a, b = _binary_in(e1, x0, x1, 2), _binary_in(e2, x0, x1, 2)
        if a.is_zero() and b.is_zero():
            raise DegenerateInput(f"a whole line of solutions with {tag} = [0:1]")
        g = binary_gcd(a, b)
        if g.degree > 0:
            for r in roots_projective(g):
                w = r.coords
                if abs(w[0]) < 1e-14:  # the corner x = y = [0:1], handled below
                    continue
                if xfix is not None:
                    found.append((np.array([0, 1], dtype=complex), w, r.multiplicity))
                else:
                    found.append((w, np.array([0, 1], dtype=complex), r.multiplicity))

    # affine chart x = (1, s), y = (1, t)
    P1 = sp.Poly(E1.subs({x0: 1, x1: s, y0: 1, y1: t}), s, t, domain="QQ")
    P2 = sp.Poly(E2.subs({x0: 1, x1: s, y0: 1, y1: t}), s, t, domain="QQ")
    if P1.is_zero or P2.is_zero:
        raise DegenerateInput("a fixed-point equation vanishes identically")
    u, v = (s, t) if P1.degree(t) > 0 else (t, s)
    P1 = sp.Poly(P1.as_expr(), u, v, domain="QQ")
    P2 = sp.Poly(P2.as_expr(), u, v, domain="QQ")
    R = sp.Poly(sp.resultant(P1.as_expr(), P2.as_expr(), v), u, domain="QQ")
    if R.is_zero:
        raise DegenerateInput("resultant vanishes identically: non-finite solution set")
    n1, n2 = _NumPoly(P1), _NumPoly(P2)
    d1 = [_NumPoly(P1.diff(w)) for w in (u, v)]
    d2 = [_NumPoly(P2.diff(w)) for w in (u, v)]

    def J(z):
        return np.array([[d1[0](z), d1[1](z)], [d2[0](z), d2[1](z)]])

    def restrict(P, a):
        co = [0j] * (P.degree(v) + 1)
        for (e1, e2), c in P.terms():
            co[e2] += complex(c) * a ** e1
        return co

    Rc = [float(c) for c in reversed(R.all_coeffs())]
    scale = max(1.0, max(abs(float(c)) for c in P1.coeffs() + P2.coeffs()))
    if len(Rc) > 1:
        for root, mult in cluster(upoly.aberth(Rc)):
            co = restrict(P1, root)
            if not any(abs(c) > 1e-12 * max(1.0, max(abs(x) for x in co)) for c in co[1:]):
                co = restrict(P2, root)
            if not any(co[1:]):
                degenerate.append(f"no isolated solution above {root}")
                continue
            cands = sorted(upoly.aberth(co), key=lambda w: abs(n1(np.array([root, w]))) + abs(n2(np.array([root, w]))))
            for w in cands[:mult]:
                z = _newton2(n1, n2, J, np.array([root, w], dtype=complex))
                size = max(1.0, float(np.max(np.abs(z))))
                if max(abs(n1(z)), abs(n2(z))) > 1e-6 * scale * size ** 4:
                    continue
                sv, tv = (z[0], z[1]) if u == s else (z[1], z[0])
                found.append((np.array([1, sv]), np.array([1, tv]), 1))

    # the corner x = y = (0, 1)
    corner = [E.subs({x0: 0, x1: 1, y0: 0, y1: 1}) for E in (E1, E2)]
    if all(c == 0 for c in corner):
        found.append((np.array([0, 1], dtype=complex), np.array([0, 1], dtype=complex), 1))

    # dedupe on P^1 x P^1
    merged: List[Tuple[np.ndarray, np.ndarray, int]] = []
    for a, b, m in found:
        for k, (a2, b2, m2) in enumerate(merged):
            if projective_distance(a, a2) <= 1e-7 and projective_distance(b, b2) <= 1e-7:
                merged[k] = (a2, b2, m2 + m)
                break
        else:
            merged.append((a, b, m))

    H = H if H is not None else lift_sym2(F)
    pairs, sigmas, res, mres = [], [], [], []
    for a, b, m in merged:
        if m > 1:
            degenerate.append(f"pair {a.tolist()}, {b.tolist()} has multiplicity {m}")
        try:
            v1, v2 = _normalize(a), _normalize(b)
        except DegenerateInput as exc:
            degenerate.append(str(exc))
            continue
        sigma = complex(F(v1, v2))
        if abs(sigma.imag) <= 1e-12 * max(1.0, abs(sigma)):
            sigma = complex(sigma.real)
        pairs.append((v1, v2))
        sigmas.append(sigma)
        res.append(singular_tuple_residual(F, [v1, v2], sigma) / scale)
        mres.append(matrix_lagrange_residual(H, [v1, v2], sigma) / scale)
    return SingularPairReport(pairs, sigmas, res, mres, degenerate=degenerate)


def random_sym_matrix(rng: np.random.Generator, shape: Sequence[int], bound: int = 10) -> SymMatrix:
    idx = multi_indices(shape)
    entries = {}
    for a, i in enumerate(idx):
        for j in idx[a:]:
            entries[(i, j)] = int(rng.integers(-bound, bound + 1))
    return SymMatrix(tuple(shape), entries)


def verify_segre_2x2(seed: int = 0, H: Optional[SymMatrix] = None, max_resamples: int = 5) -> SingularPairReport:
    """Singular pairs of the projection of a symmetric 4x4 matrix; expected count 8.

    Two independent checks accompany the count: the projection must equal the
    quadric z^T H z symbolically, and every pair must satisfy the criticality
    condition computed from the dense matrix H itself.
    """
    rng = np.random.default_rng(seed)
    report = None
    for attempt in range(1, max_resamples + 2):
        M = H if H is not None else random_sym_matrix(rng, (1, 1))
        F = project_sym2(M)
        quad, blocks = quadric_of_matrix(M)
        symbolic = quad == multiform_as_poly(F, blocks)
        try:
            report = singular_pairs_p1p1(F, M)
        except DegenerateInput as exc:
            report = SingularPairReport([], [], [], [], degenerate=[str(exc)])
        report.symbolic_match = bool(symbolic)
        report.seed = None if H is not None else seed
        report.attempts = attempt
        if report.match or H is not None:
            break
    return report
