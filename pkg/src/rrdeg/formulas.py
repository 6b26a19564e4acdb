"""Closed formulas for Rayleigh-Ritz degrees and generic distance degrees.

All results are exact Python ints. Every expression that the literature writes
as a quotient (by omega - 2, d(omega - 2), or h_hat - h) is evaluated through the
equivalent finite sum, so no case split on omega = 2 is needed. The quotient
forms are kept separately (``*_closed``) as independent cross-checks.

Notation: ``omega`` is the degree of the objective polynomial, ``m`` the
dimension of the variety, ``chern_data[i]`` the intersection number
int_X c_i(X) * L^(m - i).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial, prod
from typing import Dict, List, Sequence, Tuple

from . import chow
from .chow import ChowElement, power, ring_create
from .errors import InternalError, InvalidArgument, UnsupportedParameter


def _require(cond: bool, msg: str, exc=InvalidArgument):
    if not cond:
        raise exc(msg)


def _geom(a: int, b: int, n: int) -> int:
    """sum_{j=0}^{n} a^(n-j) b^j, i.e. (a^(n+1) - b^(n+1)) / (a - b) without dividing."""
    return sum(a ** (n - j) * b ** j for j in range(n + 1))


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# Porteous-type formulas

def rrdeg_complete_intersection(n: int, deltas: Sequence[int], omega: int) -> int:
    """Bound (equality for a generic complete intersection) for X in P^n of codim c.

    Assumes the first c equations form a regular sequence; that is not checked.
    """
    c = len(deltas)
    _require(c >= 1, "need at least one equation")
    _require(c <= n, f"codimension {c} exceeds ambient dimension {n}")
    _require(all(dl >= 1 for dl in deltas), "degrees must be >= 1")
    _require(omega >= 1, "omega must be >= 1")
    total = 0
    for idx in _compositions(n - c, c + 1):
        i0, rest = idx[0], idx[1:]
        inner = sum((omega - 1) ** l for l in range(i0 + 1))
        total += inner * prod((dk - 1) ** ik for dk, ik in zip(deltas, rest))
    return prod(deltas) * total


def rrdeg_hypersurface(n: int, delta: int, omega: int) -> int:
    _require(n >= 1 and delta >= 1 and omega >= 1, "need n, delta, omega >= 1")
    return delta * sum(
        sum((omega - 1) ** l for l in range(i + 1)) * (delta - 1) ** (n - 1 - i)
        for i in range(n)
    )


def rrdeg_generic_morphism(m: int, d: int, omega: int) -> int:
    """Image of P^m under n+1 generic forms of degree d (nonsingular image)."""
    _require(m >= 1 and d >= 1, "need m, d >= 1")
    _require(omega >= 2, "the morphism formula needs omega >= 2", UnsupportedParameter)
    return _geom(omega * d - 1, 2 * d - 1, m)


def rrdeg_generic_morphism_closed(m: int, d: int, omega: int) -> int:
    """Same count through the two-branch closed form (exact division checked)."""
    _require(omega >= 2, "the morphism formula needs omega >= 2", UnsupportedParameter)
    if omega == 2:
        return (m + 1) * (2 * d - 1) ** m
    num = (omega * d - 1) ** (m + 1) - (2 * d - 1) ** (m + 1)
    den = d * (omega - 2)
    q, r = divmod(num, den)
    if r:
        raise InternalError(f"inexact division {num}/{den}")
    return q


def gdd_veronese(m: int, d: int, omega: int) -> int:
    """Generic distance degree of the Veronese nu_{omega d}(P^m)."""
    _require(m >= 1 and d >= 1 and omega >= 1, "need m, d, omega >= 1")
    e = omega * d
    num = (2 * e - 1) ** (m + 1) - (e - 1) ** (m + 1)
    q, r = divmod(num, e)
    if r:
        raise InternalError(f"inexact division {num}/{e}")
    return q


# ---------------------------------------------------------------------------
# Chern-class formulas (general position with respect to the isotropic quadric)

def general_position_weight(m: int, i: int, omega: int) -> int:
    return (-1) ** i * _geom(omega, 2, m - i)


def rrdeg_general_position(m: int, omega: int, chern_data: Sequence[int]) -> int:
    _require(omega >= 1, "omega must be >= 1")
    _require(len(chern_data) == m + 1, f"expected {m + 1} Chern degrees, got {len(chern_data)}")
    return sum(general_position_weight(m, i, omega) * int(chern_data[i]) for i in range(m + 1))


def rrdeg_general_position_closed(m: int, omega: int, chern_data: Sequence[int]) -> int:
    """The two closed-form branches (omega = 2 and omega != 2)."""
    _require(len(chern_data) == m + 1, f"expected {m + 1} Chern degrees, got {len(chern_data)}")
    total = 0
    for i in range(m + 1):
        if omega == 2:
            w = (m + 1 - i) * 2 ** (m - i)
        else:
            w, r = divmod(omega ** (m + 1 - i) - 2 ** (m + 1 - i), omega - 2)
            if r:
                raise InternalError("inexact division in closed form")
        total += (-1) ** i * w * int(chern_data[i])
    return total


def rrdeg_general_position_symbolic(m: int) -> Dict[Tuple[int, int], List[int]]:
    """Coefficients of the general-position formula as polynomials in omega.

    Returns ``{(i, m - i): [a_0, a_1, ...]}`` meaning the coefficient of
    c_i * L^(m-i) is sum_k a_k omega^k.
    """
    out = {}
    for i in range(m + 1):
        n = m - i
        coeffs = [0] * (n + 1)
        for j in range(n + 1):
            coeffs[n - j] += (-1) ** i * 2 ** j
        out[(i, n)] = coeffs
    return out


def rrdeg_toric(faces: Sequence[Tuple[int, int]], omega: int) -> int:
    """``faces`` is a list of (codimension, normalized volume) pairs."""
    _require(omega >= 1, "omega must be >= 1")
    faces = [(int(c), int(v)) for c, v in faces]
    _require(bool(faces), "empty face list")
    m = max(c for c, _ in faces)
    _require(all(c >= 0 and v > 0 for c, v in faces), "codims must be >= 0 and volumes > 0")
    _require(sum(1 for c, _ in faces if c == 0) == 1, "need exactly one codimension-0 face")
    data = toric_chern_data(faces)
    return rrdeg_general_position(m, omega, data)


def toric_chern_data(faces: Sequence[Tuple[int, int]]) -> List[int]:
    m = max(c for c, _ in faces)
    data = [0] * (m + 1)
    for c, v in faces:
        data[c] += v
    return data


def cube_faces(k: int) -> List[Tuple[int, int]]:
    """Faces of the k-cube: 2^i C(k, i) faces of codimension i, each of volume (k - i)!."""
    return [(i, factorial(k - i)) for i in range(k + 1) for _ in range(2 ** i * comb(k, i))]


def segre_veronese_degree(m: Sequence[int], d: Sequence[int]) -> int:
    return factorial(sum(m)) // prod(factorial(x) for x in m) * prod(dj ** mj for dj, mj in zip(d, m))


def _check_sv(m, d, omega):
    _require(len(m) == len(d), f"m and d have different lengths: {list(m)} vs {list(d)}")
    _require(len(m) >= 1, "need k >= 1")
    _require(all(x >= 1 for x in m) and all(x >= 1 for x in d), "entries of m and d must be >= 1")
    _require(omega >= 1, "omega must be >= 1")


def rrdeg_segre_veronese_general(m: Sequence[int], d: Sequence[int], omega: int) -> int:
    """Segre-Veronese in general position: double sum over P_{m,i} written out directly."""
    _check_sv(m, d, omega)
    dim = sum(m)
    total = 0
    for i in range(dim + 1):
        total += general_position_weight(dim, i, omega) * chow.chern_degree_formula(m, d, i)
    return total


def rrdeg_segre_veronese_chow(m: Sequence[int], d: Sequence[int], omega: int) -> int:
    """Same value, assembled as one class in the Chow ring and integrated."""
    _check_sv(m, d, omega)
    dim = sum(m)
    c = chow.total_chern_ps(m)
    L = ChowElement.linear(c.ring, d)
    cls = ChowElement.constant(c.ring, 0)
    for i in range(dim + 1):
        cls = cls + general_position_weight(dim, i, omega) * (c.part(i) * power(L, dim - i))
    return cls.top_degree()


def rrdeg_product_lines_general(k: int, omega: int) -> int:
    """(P^1)^k Segre in general position, through the one-parameter closed form."""
    from fractions import Fraction

    _require(k >= 1 and omega >= 1, "need k, omega >= 1")
    s = Fraction(0)
    for i in range(k + 1):
        if omega == 2:
            s += Fraction((-1) ** i * 2 ** k * (k + 1 - i), factorial(i))
        else:
            s += Fraction((-1) ** i * (omega ** (k + 1 - i) * 2 ** i - 2 ** (k + 1)), factorial(i) * (omega - 2))
    s *= factorial(k)
    if s.denominator != 1:
        raise InternalError("non-integral product-of-lines degree")
    return int(s)


# ---------------------------------------------------------------------------
# Bombieri-Weyl quadric (non-transversal) Segre-Veronese formulas

def rrdeg_segre_veronese_bw(m: Sequence[int], d: Sequence[int], omega: int) -> int:
    """Coefficient of h_1^m_1 ... h_k^m_k in prod_i sum_{a+b=m_i} h_hat_i^a h_i^b,
    with h_hat_i = omega * (sum_j d_j h_j) - h_i.
    """
    _check_sv(m, d, omega)
    ring = ring_create(m)
    L = ChowElement.linear(ring, [omega * dj for dj in d])
    prodcls = ChowElement.constant(ring, 1)
    for i, mi in enumerate(m):
        h = ChowElement.gen(ring, i)
        hh = L - h
        factor = ChowElement.constant(ring, 0)
        for a in range(mi + 1):
            factor = factor + power(hh, a) * power(h, mi - a)
        prodcls = prodcls * factor
    return prodcls.top_degree()


def rrdeg_product_lines_bw(k: int, omega: int) -> int:
    _require(k >= 1 and omega >= 1, "need k, omega >= 1")
    return omega ** k * factorial(k)


def rrdeg_matrix_bw(m1: int, m2: int, omega: int) -> int:
    """Segre P^m1 x P^m2 (rank-one matrices) under the Bombieri-Weyl quadric."""
    _require(m1 >= 1 and m2 >= 1 and omega >= 1, "need m1, m2, omega >= 1")
    total = 0
    for i in range(1, min(m1, m2) + 2):
        inner = 0
        for l in range(m1 - i + 2):
            for s in range(m2 - i + 2):
                inner += comb(l + i - 1, l) * comb(s + i - 1, s) * (omega - 1) ** (l + s)
        total += inner * omega ** (2 * (i - 1))
    return total


def rrdeg_matrix_bw_omega2(m1: int, m2: int) -> int:
    return sum(comb(m1 + 1, i) * comb(m2 + 1, i) * 4 ** (i - 1) for i in range(1, min(m1, m2) + 2))


def rrdeg_veronese_bw(m: int, omega: int) -> int:
    """Eigenpoint count of a generic degree-omega form in m+1 variables."""
    return sum((omega - 1) ** i for i in range(m + 1))


# ---------------------------------------------------------------------------
# Generic distance degrees and the decomposition identity

def gdd_chern(m: int, chern_data: Sequence[int]) -> int:
    _require(m >= 0, "m must be >= 0")
    _require(len(chern_data) == m + 1, f"expected {m + 1} Chern degrees, got {len(chern_data)}")
    return sum((-1) ** i * (2 ** (m + 1 - i) - 1) * int(chern_data[i]) for i in range(m + 1))


def hyperplane_section_chern_data(m: int, chern_data: Sequence[int]) -> List[int]:
    """Chern degrees of X cap Q (Q a transversal quadric) from those of X."""
    return [
        2 * sum((-1) ** (i - j) * 2 ** (i - j) * int(chern_data[j]) for j in range(i + 1))
        for i in range(m)
    ]


def rrdeg_decomposition(m: int, omega: int, chern_data: Sequence[int]) -> Tuple[int, int]:
    """Return (gDD(nu_omega X), gDD(nu_omega (X cap Q))) from the Chern degrees of X."""
    scaled = [int(chern_data[i]) * omega ** (m - i) for i in range(m + 1)]
    gdd_x = gdd_chern(m, scaled)
    if m == 0:
        return gdd_x, 0
    sec = hyperplane_section_chern_data(m, chern_data)
    sec_scaled = [sec[i] * omega ** (m - 1 - i) for i in range(m)]
    return gdd_x, gdd_chern(m - 1, sec_scaled)


def rrdeg_decomposition_check(m: Sequence[int], d: Sequence[int], omega: int) -> bool:
    _check_sv(m, d, omega)
    dim = sum(m)
    data = chow.segre_veronese_chern_data(m, d)
    gx, gxq = rrdeg_decomposition(dim, omega, data)
    return gx - (omega - 1) * gxq == rrdeg_general_position(dim, omega, data)


def span_codim(m: Sequence[int], d: Sequence[int], omega: int) -> int:
    _check_sv(m, d, omega)
    n = prod(comb(mi + di, di) for mi, di in zip(m, d))
    return comb(omega - 1 + n, omega) - prod(comb(mi + omega * di, omega * di) for mi, di in zip(m, d))


# ---------------------------------------------------------------------------
# Chern data of other families

def complete_intersection_chern_data(n: int, deltas: Sequence[int]) -> List[int]:
    """int_X c_i L^(m-i) for a smooth complete intersection, c(X) = (1+L)^(n+1) / prod(1 + delta L)."""
    m = n - len(deltas)
    _require(m >= 0, "codimension exceeds ambient dimension")
    # power series of 1/prod(1 + delta L) truncated at degree m
    inv = [1] + [0] * m
    for dl in deltas:
        inv = [sum(inv[j] * (-dl) ** (i - j) for j in range(i + 1)) for i in range(m + 1)]
    ctot = [sum(comb(n + 1, j) * inv[i - j] for j in range(i + 1)) for i in range(m + 1)]
    deg = prod(deltas)
    return [deg * c for c in ctot]


def veronese_chern_data(m: int, d: int) -> List[int]:
    return chow.segre_veronese_chern_data([m], [d])


# ---------------------------------------------------------------------------
# Reports

VARIANTS = (
    "complete-intersection",
    "hypersurface",
    "morphism",
    "general",
    "toric",
    "sv-general",
    "sv-bw",
    "lines-general",
    "lines-bw",
    "matrix-bw",
    "gdd-chern",
    "gdd-veronese",
    "span-codim",
)


@dataclass
class RRReport:
    variant: str
    params: dict
    degree: int
    provenance: str
    cross_checks: List[Tuple[str, int, bool]] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return all(ok for _, _, ok in self.cross_checks)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "variant": self.variant,
            "params": self.params,
            "degree": str(self.degree),
            "provenance": self.provenance,
            "cross_checks": [
                {"formula": name, "value": str(val), "agreed": ok} for name, val, ok in self.cross_checks
            ],
        }


_PROVENANCE = {
    "complete-intersection": "Porteous formula for a codim-c complete intersection in P^n; "
    "an upper bound in general, equality for a generic complete intersection",
    "hypersurface": "generic hypersurface of degree delta in P^n",
    "morphism": "image of P^m under generic degree-d forms (nonsingular image)",
    "general": "nonsingular variety in general position w.r.t. the isotropic quadric, from Chern degrees",
    "toric": "nonsingular toric variety in general position, Chern degrees from face volumes",
    "sv-general": "Segre-Veronese nu_d(P^m) in general position",
    "sv-bw": "Segre-Veronese nu_d(P^m) with the Bombieri-Weyl quadric (coefficient extraction)",
    "lines-general": "(P^1)^k Segre in general position",
    "lines-bw": "(P^1)^k Segre with the Bombieri-Weyl quadric: omega^k k!",
    "matrix-bw": "P^m1 x P^m2 Segre with the Bombieri-Weyl quadric",
    "gdd-chern": "generic distance degree from Chern degrees",
    "gdd-veronese": "generic distance degree of nu_{omega d}(P^m)",
    "span-codim": "codimension of the linear span of nu_omega(nu_d(P^m)) in Sym^omega",
}


def _checks(variant: str, p: dict, value: int) -> List[Tuple[str, int]]:
    """Other formulas whose domain overlaps the query, as (name, value) pairs."""
    out = []
    om = p.get("omega")
    if variant == "complete-intersection":
        n, deltas = p["n"], p["deltas"]
        if len(deltas) == 1:
            out.append(("hypersurface", rrdeg_hypersurface(n, deltas[0], om)))
        out.append(("general-position(CI Chern data)",
                    rrdeg_general_position(n - len(deltas), om, complete_intersection_chern_data(n, deltas))))
    elif variant == "hypersurface":
        n, dl = p["n"], p["delta"]
        out.append(("complete-intersection", rrdeg_complete_intersection(n, [dl], om)))
        out.append(("general-position(CI Chern data)",
                    rrdeg_general_position(n - 1, om, complete_intersection_chern_data(n, [dl]))))
        if n == 2:
            out.append(("plane-curve delta(delta+omega-1)", dl * (dl + om - 1)))
    elif variant == "morphism":
        m, d = p["m"], p["d"]
        out.append(("closed two-branch form", rrdeg_generic_morphism_closed(m, d, om)))
        out.append(("general-position(Veronese Chern data)", rrdeg_general_position(m, om, veronese_chern_data(m, d))))
    elif variant == "general":
        out.append(("closed two-branch form", rrdeg_general_position_closed(p["m"], om, p["chern_data"])))
        gx, gxq = rrdeg_decomposition(p["m"], om, p["chern_data"])
        out.append(("gDD(nu X) - (omega-1) gDD(nu(X cap Q))", gx - (om - 1) * gxq))
    elif variant == "toric":
        data = toric_chern_data(p["faces"])
        out.append(("closed two-branch form", rrdeg_general_position_closed(len(data) - 1, om, data)))
    elif variant == "sv-general":
        m, d = p["m"], p["d"]
        dim = sum(m)
        out.append(("general-position(Chern data)",
                    rrdeg_general_position(dim, om, chow.segre_veronese_chern_data(m, d))))
        out.append(("Chow ring direct", rrdeg_segre_veronese_chow(m, d, om)))
        if all(x == 1 for x in m) and all(x == 1 for x in d):
            out.append(("lines-general closed form", rrdeg_product_lines_general(len(m), om)))
            out.append(("toric cube", rrdeg_toric(cube_faces(len(m)), om)))
        gx, gxq = rrdeg_decomposition(dim, om, chow.segre_veronese_chern_data(m, d))
        out.append(("gDD(nu X) - (omega-1) gDD(nu(X cap Q))", gx - (om - 1) * gxq))
    elif variant == "sv-bw":
        m, d = p["m"], p["d"]
        if all(x == 1 for x in m) and all(x == 1 for x in d):
            out.append(("lines-bw omega^k k!", rrdeg_product_lines_bw(len(m), om)))
        if len(m) == 2 and list(d) == [1, 1]:
            out.append(("matrix-bw", rrdeg_matrix_bw(m[0], m[1], om)))
        if len(m) == 1 and d[0] == 1:
            out.append(("eigenpoints of a generic form", rrdeg_veronese_bw(m[0], om)))
    elif variant == "lines-general":
        k = p["k"]
        out.append(("sv-general", rrdeg_segre_veronese_general([1] * k, [1] * k, om)))
        out.append(("toric cube", rrdeg_toric(cube_faces(k), om)))
    elif variant == "lines-bw":
        k = p["k"]
        out.append(("sv-bw coefficient extraction", rrdeg_segre_veronese_bw([1] * k, [1] * k, om)))
    elif variant == "matrix-bw":
        out.append(("sv-bw coefficient extraction", rrdeg_segre_veronese_bw([p["m1"], p["m2"]], [1, 1], om)))
        if om == 2:
            out.append(("omega=2 binomial form", rrdeg_matrix_bw_omega2(p["m1"], p["m2"])))
    elif variant == "gdd-veronese":
        m, d = p["m"], p["d"]
        out.append(("gDD from Chern data", gdd_chern(m, veronese_chern_data(m, om * d))))
    elif variant == "span-codim":
        m, d = p["m"], p["d"]
        if om == 2 and all(x == 1 for x in m) and all(x == 1 for x in d):
            k = len(m)
            out.append(("2^(k-1)(2^k+1) - 3^k", 2 ** (k - 1) * (2 ** k + 1) - 3 ** k))
    return out


def compute(variant: str, params: dict, cross_check: bool = False) -> RRReport:
    """Dispatch a degree query. ``params`` keys depend on the variant."""
    p = params
    om = p.get("omega")
    if variant == "complete-intersection":
        value = rrdeg_complete_intersection(p["n"], p["deltas"], om)
    elif variant == "hypersurface":
        value = rrdeg_hypersurface(p["n"], p["delta"], om)
    elif variant == "morphism":
        value = rrdeg_generic_morphism(p["m"], p["d"], om)
    elif variant == "general":
        value = rrdeg_general_position(p["m"], om, p["chern_data"])
    elif variant == "toric":
        value = rrdeg_toric(p["faces"], om)
    elif variant == "sv-general":
        value = rrdeg_segre_veronese_general(p["m"], p["d"], om)
    elif variant == "sv-bw":
        value = rrdeg_segre_veronese_bw(p["m"], p["d"], om)
    elif variant == "lines-general":
        value = rrdeg_product_lines_general(p["k"], om)
    elif variant == "lines-bw":
        value = rrdeg_product_lines_bw(p["k"], om)
    elif variant == "matrix-bw":
        value = rrdeg_matrix_bw(p["m1"], p["m2"], om)
    elif variant == "gdd-chern":
        value = gdd_chern(p["m"], p["chern_data"])
    elif variant == "gdd-veronese":
        value = gdd_veronese(p["m"], p["d"], om)
    elif variant == "span-codim":
        value = span_codim(p["m"], p["d"], om)
    else:
        raise InvalidArgument(f"unknown variant {variant!r}; choose from {', '.join(VARIANTS)}")
    checks = []
    if cross_check:
        checks = [(name, v, v == value) for name, v in _checks(variant, p, value)]
    return RRReport(variant, dict(p), value, _PROVENANCE[variant], checks)
