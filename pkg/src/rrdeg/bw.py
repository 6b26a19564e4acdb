"""Homogeneous forms and the Bombieri-Weyl inner product.

A form of degree w in n+1 variables is stored as a map from exponent tuples
(|alpha| = w) to coefficients. Two coefficient conventions are supported:

* ``"raw"``:    f = sum_alpha a_alpha x^alpha
* ``"scaled"``: f = sum_alpha multinomial(w, alpha) f_alpha x^alpha

The Bombieri-Weyl inner product is sum multinomial(w, alpha) f_alpha g_alpha
in the scaled convention. Coefficients are Fractions when the input is
rational and floats/complex when they come from a numerical solver.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from numbers import Number
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import InvalidArgument, NotFound

Exponent = Tuple[int, ...]
NORMALIZATION_TOL = 1e-8


def multinomial(alpha: Sequence[int]) -> int:
    return factorial(sum(alpha)) // prod(factorial(a) for a in alpha)


def exponents(nvars: int, degree: int):
    """All exponent tuples of length ``nvars`` summing to ``degree``, lex-descending."""
    if nvars == 1:
        yield (degree,)
        return
    for a in range(degree, -1, -1):
        for rest in exponents(nvars - 1, degree - a):
            yield (a,) + rest


def _exact(c):
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    return c


@dataclass(frozen=True)
class HomogeneousForm:
    num_vars: int
    degree: int
    coeffs: Dict[Exponent, Number]
    convention: str = "raw"

    def __post_init__(self):
        if self.convention not in ("raw", "scaled"):
            raise InvalidArgument(f"unknown convention {self.convention!r}")
        if self.num_vars < 1 or self.degree < 0:
            raise InvalidArgument("need num_vars >= 1 and degree >= 0")
        clean = {}
        for e, c in self.coeffs.items():
            e = tuple(int(x) for x in e)
            if len(e) != self.num_vars or sum(e) != self.degree or min(e) < 0:
                raise InvalidArgument(f"exponent {e} incompatible with {self.num_vars} vars, degree {self.degree}")
            if c != 0:
                clean[e] = _exact(c)
        object.__setattr__(self, "coeffs", clean)

    # conventions --------------------------------------------------------
    def raw(self) -> "HomogeneousForm":
        if self.convention == "raw":
            return self
        return HomogeneousForm(self.num_vars, self.degree,
                               {e: c * multinomial(e) for e, c in self.coeffs.items()}, "raw")

    def scaled(self) -> "HomogeneousForm":
        if self.convention == "scaled":
            return self
        out = {}
        for e, c in self.coeffs.items():
            m = multinomial(e)
            out[e] = c / m if not isinstance(c, Fraction) else c / Fraction(m)
        return HomogeneousForm(self.num_vars, self.degree, out, "scaled")

    def scaled_vector(self) -> List:
        s = self.scaled().coeffs
        return [s.get(e, 0) for e in exponents(self.num_vars, self.degree)]

    # arithmetic (result in the raw convention) --------------------------
    def _same_shape(self, other: "HomogeneousForm"):
        if (self.num_vars, self.degree) != (other.num_vars, other.degree):
            raise InvalidArgument(
                f"shape mismatch: ({self.num_vars}, {self.degree}) vs ({other.num_vars}, {other.degree})")

    def __add__(self, other):
        self._same_shape(other)
        a, b = self.raw().coeffs, other.raw().coeffs
        return HomogeneousForm(self.num_vars, self.degree,
                               {e: a.get(e, 0) + b.get(e, 0) for e in set(a) | set(b)})

    def __neg__(self):
        return HomogeneousForm(self.num_vars, self.degree, {e: -c for e, c in self.coeffs.items()}, self.convention)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        return HomogeneousForm(self.num_vars, self.degree,
                               {e: c * scalar for e, c in self.coeffs.items()}, self.convention)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        return (self.num_vars, self.degree) == (other.num_vars, other.degree) and \
            self.raw().coeffs == other.raw().coeffs

    __hash__ = None

    # evaluation -------------------------------------------------------
    def __call__(self, x):
        x = list(x)
        return sum(c * prod(xi ** a for xi, a in zip(x, e)) for e, c in self.raw().coeffs.items())

    def derivative(self, i: int) -> "HomogeneousForm":
        if self.degree == 0:
            return HomogeneousForm(self.num_vars, 0, {})
        out = {}
        for e, c in self.raw().coeffs.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return HomogeneousForm(self.num_vars, self.degree - 1, out)

    def gradient(self) -> List["HomogeneousForm"]:
        return [self.derivative(i) for i in range(self.num_vars)]

    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs.values())

    # serialization ----------------------------------------------------
    def to_json(self) -> dict:
        entries = []
        for e in exponents(self.num_vars, self.degree):
            c = self.coeffs.get(e)
            if c is None:
                continue
            if not isinstance(c, Fraction):
                raise InvalidArgument("only exact forms serialize to JSON")
            entries.append({"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)})
        return {"vars": self.num_vars, "degree": self.degree, "convention": self.convention, "coeffs": entries}

    @classmethod
    def from_json(cls, obj) -> "HomogeneousForm":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            coeffs = {tuple(t["exp"]): Fraction(int(t["num"]), int(t.get("den", "1"))) for t in obj["coeffs"]}
            return cls(int(obj["vars"]), int(obj["degree"]), coeffs, obj.get("convention", "raw"))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InvalidArgument(f"malformed form JSON: {exc}") from exc


def form_from_raw_list(num_vars: int, degree: int, coeffs: Sequence) -> HomogeneousForm:
    """Build from a coefficient list ordered like :func:`exponents` (raw convention)."""
    exps = list(exponents(num_vars, degree))
    if len(coeffs) != len(exps):
        raise InvalidArgument(f"expected {len(exps)} coefficients, got {len(coeffs)}")
    return HomogeneousForm(num_vars, degree, dict(zip(exps, coeffs)), "raw")


def bw_inner(f: HomogeneousForm, g: HomogeneousForm):
    f._same_shape(g)
    fs, gs = f.scaled().coeffs, g.scaled().coeffs
    return sum((multinomial(e) * c * gs[e] for e, c in fs.items() if e in gs), Fraction(0))


def bw_norm_sq(f: HomogeneousForm):
    return bw_inner(f, f)


def bw_dist_sq(f: HomogeneousForm, g: HomogeneousForm):
    d = f - g
    return bw_inner(d, d)


def rank_one_power(psi: Sequence, lam, omega: int) -> HomogeneousForm:
    """Coefficients of lam * (psi_0 x_0 + ... + psi_n x_n)^omega (raw convention)."""
    psi = [_exact(p) for p in psi]
    if len(psi) < 2:
        raise InvalidArgument("need at least two coordinates")
    lam = _exact(lam)
    out = {}
    for e in exponents(len(psi), omega):
        out[e] = lam * multinomial(e) * prod(p ** a for p, a in zip(psi, e))
    return HomogeneousForm(len(psi), omega, out, "raw")


# ---------------------------------------------------------------------------
# eigenpairs

@dataclass
class Eigenpair:
    psi: Tuple
    lam: complex
    residual: float = 0.0


def euclidean_q(x) -> complex:
    return sum(xi * xi for xi in x)


def normalize(x):
    """Scale x so that sum x_i^2 = 1 (complex bilinear, not Hermitian)."""
    x = np.asarray(x, dtype=complex)
    s = np.sqrt(np.sum(x * x))
    if abs(s) < 1e-300:
        raise InvalidArgument("point lies on the isotropic quadric and cannot be normalized")
    y = x / s
    if np.all(np.abs(y.imag) < 1e-12 * max(1.0, np.max(np.abs(y)))):
        y = y.real
    return y


def evaluate(f: HomogeneousForm, x) -> complex:
    x = np.asarray(x, dtype=complex)
    return sum(complex(c) * np.prod(x ** np.array(e)) for e, c in f.raw().coeffs.items())


def evaluate_gradient(f: HomogeneousForm, x) -> np.ndarray:
    return np.array([evaluate(g, x) for g in f.gradient()], dtype=complex)


def eigen_residual(f: HomogeneousForm, psi) -> Tuple[complex, float]:
    """Return (lambda, residual) with lambda = f(psi) and residual the max-norm of
    grad f(psi) / omega - lambda * psi. ``psi`` must satisfy q(psi) = 1."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (f.num_vars,):
        raise InvalidArgument("point has the wrong number of coordinates")
    if abs(euclidean_q(psi) - 1) > NORMALIZATION_TOL:
        raise InvalidArgument(f"psi is not normalized: q(psi) = {euclidean_q(psi)}")
    lam = evaluate(f, psi)
    r = evaluate_gradient(f, psi) / f.degree - lam * psi
    return _realify(lam), float(np.max(np.abs(r)))


def _realify(z):
    z = complex(z)
    return z.real if abs(z.imag) <= 1e-12 * max(1.0, abs(z)) else z


def closest_rank_one(f: HomogeneousForm, real_eigenpairs: Sequence[Eigenpair]) -> Eigenpair:
    """The real eigenpair of largest |lambda|; its rank-one power is BW-closest to f."""
    if not real_eigenpairs:
        raise NotFound("no real eigenpairs to choose from")

    def key(ep):
        v = np.real(np.asarray(ep.psi, dtype=complex))
        # fix the sign so that the first nonzero coordinate is positive
        nz = np.flatnonzero(np.abs(v) > 1e-12)
        if nz.size and v[nz[0]] < 0:
            v = -v
        return (-abs(ep.lam), tuple(np.round(v, 12)))

    return min(real_eigenpairs, key=key)
