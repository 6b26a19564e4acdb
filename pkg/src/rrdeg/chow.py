"""Truncated integer polynomial rings Z[h_1..h_k]/(h_i^(m_i+1)).

This is the Chow ring of a product of projective spaces P^m_1 x ... x P^m_k.
Elements are sparse maps from exponent tuples to Python ints, truncated on
every multiplication so that no stored exponent exceeds its cap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod
from typing import Dict, Iterable, Sequence, Tuple

from .errors import InvalidArgument

Exponent = Tuple[int, ...]


@dataclass(frozen=True)
class RingDescriptor:
    caps: Tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.caps)

    @property
    def dim(self) -> int:
        return sum(self.caps)

    @property
    def top(self) -> Exponent:
        return self.caps

    def monomials(self) -> Iterable[Exponent]:
        return itertools.product(*(range(c + 1) for c in self.caps))


def ring_create(caps: Sequence[int]) -> RingDescriptor:
    caps = tuple(int(c) for c in caps)
    if not caps:
        raise InvalidArgument("a ring needs at least one variable")
    if any(c < 0 for c in caps):
        raise InvalidArgument(f"caps must be nonnegative, got {caps}")
    return RingDescriptor(caps)


@dataclass(frozen=True)
class ChowElement:
    ring: RingDescriptor
    terms: Dict[Exponent, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for e, c in self.terms.items():
            e = tuple(e)
            if len(e) != self.ring.k:
                raise InvalidArgument(f"exponent {e} does not match ring with k={self.ring.k}")
            if c and all(0 <= a <= m for a, m in zip(e, self.ring.caps)):
                clean[e] = int(c)
        object.__setattr__(self, "terms", clean)

    # constructors -------------------------------------------------------
    @classmethod
    def constant(cls, ring: RingDescriptor, c: int) -> "ChowElement":
        return cls(ring, {(0,) * ring.k: c})

    @classmethod
    def gen(cls, ring: RingDescriptor, i: int) -> "ChowElement":
        """The hyperplane class h_{i+1} (0-based index ``i``)."""
        e = [0] * ring.k
        e[i] = 1
        return cls(ring, {tuple(e): 1})

    @classmethod
    def linear(cls, ring: RingDescriptor, coeffs: Sequence[int]) -> "ChowElement":
        if len(coeffs) != ring.k:
            raise InvalidArgument("need one coefficient per generator")
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * ring.k
            e[i] = 1
            terms[tuple(e)] = c
        return cls(ring, terms)

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "ChowElement"):
        if not isinstance(other, ChowElement) or other.ring != self.ring:
            raise InvalidArgument("operands live in different rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = ChowElement.constant(self.ring, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return ChowElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return ChowElement(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return ChowElement(self.ring, {e: c * other for e, c in self.terms.items()})
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return power(self, e)

    def __eq__(self, other):
        if isinstance(other, int):
            other = ChowElement.constant(self.ring, other)
        return isinstance(other, ChowElement) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def part(self, degree: int) -> "ChowElement":
        """Homogeneous component of total degree ``degree``."""
        return ChowElement(self.ring, {e: c for e, c in self.terms.items() if sum(e) == degree})

    def coefficient(self, exponents: Sequence[int]) -> int:
        return coefficient(self, exponents)

    def top_degree(self) -> int:
        """Coefficient of h_1^m_1 ... h_k^m_k, i.e. the degree of a 0-cycle."""
        return self.terms.get(self.ring.top, 0)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            mon = "*".join(f"h{i + 1}^{a}" if a > 1 else f"h{i + 1}" for i, a in enumerate(e) if a)
            parts.append(f"{self.terms[e]}" + (f"*{mon}" if mon else ""))
        return " + ".join(parts)


def multiply(a: ChowElement, b: ChowElement) -> ChowElement:
    a._check(b)
    caps = a.ring.caps
    out: Dict[Exponent, int] = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if any(x > m for x, m in zip(e, caps)):
                continue
            out[e] = out.get(e, 0) + ca * cb
    return ChowElement(a.ring, out)


def power(a: ChowElement, e: int) -> ChowElement:
    if e < 0:
        raise InvalidArgument("negative exponent")
    result = ChowElement.constant(a.ring, 1)
    base = a
    while e:
        if e & 1:
            result = multiply(result, base)
        e >>= 1
        if e:
            base = multiply(base, base)
    return result


def coefficient(a: ChowElement, exponents: Sequence[int]) -> int:
    e = tuple(exponents)
    if len(e) != a.ring.k or any(x < 0 or x > m for x, m in zip(e, a.ring.caps)):
        raise InvalidArgument(f"exponent {e} outside caps {a.ring.caps}")
    return a.terms.get(e, 0)


def total_chern_ps(m: Sequence[int]) -> ChowElement:
    """Total Chern class prod_i (1 + h_i)^(m_i + 1) of P^m_1 x ... x P^m_k."""
    ring = ring_create(m)
    one = ChowElement.constant(ring, 1)
    c = one
    for i, mi in enumerate(ring.caps):
        c = c * power(one + ChowElement.gen(ring, i), mi + 1)
    return c


def _check_md(m: Sequence[int], d: Sequence[int]):
    if len(m) != len(d):
        raise InvalidArgument(f"m and d have different lengths: {list(m)} vs {list(d)}")
    if not m:
        raise InvalidArgument("empty multidegree")
    if any(x < 0 for x in m) or any(x < 1 for x in d):
        raise InvalidArgument("need m_j >= 0 and d_j >= 1")


def chern_degree_formula(m: Sequence[int], d: Sequence[int], i: int) -> int:
    """Closed combinatorial sum for the degree of c_i * L^(m-i) on a Segre-Veronese."""
    _check_md(m, d)
    dim = sum(m)
    if not 0 <= i <= dim:
        raise InvalidArgument(f"i={i} outside [0, {dim}]")
    total = Fraction(0)
    for alpha in itertools.product(*(range(mj + 1) for mj in m)):
        if sum(alpha) != i:
            continue
        term = Fraction(prod(dj ** (mj - aj) for dj, mj, aj in zip(d, m, alpha)))
        for mj, aj in zip(m, alpha):
            term *= Fraction(comb(mj + 1, aj), factorial(mj - aj))
        total += term
    total *= factorial(dim - i)
    if total.denominator != 1:
        raise InvalidArgument("non-integral Chern degree")  # cannot happen for valid input
    return int(total)


def chern_degree_ring(m: Sequence[int], d: Sequence[int], i: int) -> int:
    """Same degree as :func:`chern_degree_formula`, by multiplying in the Chow ring."""
    _check_md(m, d)
    dim = sum(m)
    if not 0 <= i <= dim:
        raise InvalidArgument(f"i={i} outside [0, {dim}]")
    c = total_chern_ps(m)
    L = ChowElement.linear(c.ring, d)
    return (c.part(i) * power(L, dim - i)).top_degree()


def chern_degree(m: Sequence[int], d: Sequence[int], i: int) -> int:
    """Degree of c_i(X) * L^(m - i) for X the Segre-Veronese nu_d(P^m).

    Evaluated both combinatorially and by ring arithmetic; a disagreement
    means a bug, so it raises.
    """
    a = chern_degree_formula(m, d, i)
    b = chern_degree_ring(m, d, i)
    if a != b:
        from .errors import InternalError

        raise InternalError(f"chern_degree mismatch for m={m} d={d} i={i}: {a} != {b}")
    return a


def segre_veronese_chern_data(m: Sequence[int], d: Sequence[int]) -> list:
    return [chern_degree(m, d, i) for i in range(sum(m) + 1)]
