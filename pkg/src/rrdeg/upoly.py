"""Univariate polynomials: exact arithmetic over Q, Sturm counts, Aberth roots.

Exact polynomials are lists of Fractions in ascending order of degree,
``p[i]`` being the coefficient of x^i, with no trailing zeros (the zero
polynomial is ``[]``).
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

import numpy as np

from .errors import InvalidArgument, NumericFailure

Poly = List[Fraction]


def trim(p: Sequence) -> Poly:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Poly) -> int:
    return len(p) - 1


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, [-c for c in q])


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def derivative(p: Poly) -> Poly:
    return trim([i * p[i] for i in range(1, len(p))])


def divmod_poly(p: Poly, q: Poly):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(p)
    dq = degree(q)
    lead = q[-1]
    quo = [Fraction(0)] * max(len(p) - dq, 0)
    while len(p) - 1 >= dq and p:
        k = len(p) - 1 - dq
        c = p[-1] / lead
        quo[k] = c
        for i, b in enumerate(q):
            p[i + k] -= c * b
        p = trim(p)
    return trim(quo), p


def monic(p: Poly) -> Poly:
    return [c / p[-1] for c in p] if p else []


def gcd(p: Poly, q: Poly) -> Poly:
    p, q = trim(p), trim(q)
    while q:
        p, q = q, divmod_poly(p, q)[1]
    return monic(p)


def squarefree_part(p: Poly) -> Poly:
    g = gcd(p, derivative(p))
    return monic(divmod_poly(p, g)[0]) if degree(g) > 0 else monic(p)


def primitive_integer(p: Sequence[Fraction]) -> List[int]:
    """Clear denominators and divide out the content; sign left untouched."""
    from math import gcd as igcd, lcm

    p = [Fraction(c) for c in p]
    den = 1
    for c in p:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = igcd(g, c)
    return [c // g for c in ints] if g else ints


# ---------------------------------------------------------------------------
# Sturm sequences

def sturm_sequence(p: Poly) -> List[Poly]:
    p = trim(p)
    if not p:
        raise InvalidArgument("Sturm sequence of the zero polynomial")
    seq = [p, derivative(p)]
    while seq[-1]:
        r = divmod_poly(seq[-2], seq[-1])[1]
        seq.append([-c for c in r])
    return seq[:-1]


def _sign_changes(signs):
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sturm_count(p: Poly) -> int:
    """Number of distinct real roots of p on the whole real line."""
    seq = sturm_sequence(p)
    at_pos = [_sign(s[-1]) for s in seq]
    at_neg = [_sign(s[-1]) * (-1) ** degree(s) for s in seq]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


def eval_exact(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sturm_count_interval(p: Poly, a: Fraction, b: Fraction) -> int:
    """Distinct real roots in (a, b]; endpoints must not be roots for a clean count."""
    seq = sturm_sequence(p)
    va = _sign_changes([_sign(eval_exact(s, Fraction(a))) for s in seq])
    vb = _sign_changes([_sign(eval_exact(s, Fraction(b))) for s in seq])
    return va - vb


# ---------------------------------------------------------------------------
# Aberth-Ehrlich simultaneous iteration

MAX_ITER = 200
STEP_TOL = 1e-13


def aberth(coeffs, max_iter: int = MAX_ITER, tol: float = STEP_TOL) -> np.ndarray:
    """All complex roots of sum coeffs[i] x^i (ascending order, nonzero leading coefficient).

    Iteration stops when every update is below ``tol`` relative to the root
    magnitude, or when every residual is at rounding level. Raises
    NumericFailure otherwise.
    """
    c = np.asarray([complex(v) for v in coeffs], dtype=complex)
    while c.size and c[-1] == 0:
        c = c[:-1]
    n = c.size - 1
    if n < 1:
        return np.zeros(0, dtype=complex)
    a = c / c[-1]  # monic, ascending
    if n == 1:
        return np.array([-a[0]])
    desc = a[::-1]
    ddesc = np.polyder(desc)
    absdesc = np.abs(desc)

    # Initial guesses on a circle of radius from the Fujiwara bound, rotated off the axes.
    radius = 2 * max(abs(a[n - k]) ** (1.0 / k) for k in range(1, n + 1))
    radius = max(radius, 1e-3)
    inner = min(1.0, radius)
    z = np.array([
        (inner + (radius - inner) * (k % 2) * 0.5) * np.exp(1j * (2 * np.pi * k / n + 0.4))
        for k in range(n)
    ])
    eps = np.finfo(float).eps
    converged = np.zeros(n, dtype=bool)
    for it in range(max_iter):
        pz = np.polyval(desc, z)
        dpz = np.polyval(ddesc, z)
        bound = np.polyval(absdesc, np.abs(z)) * eps * 4 * n
        small = np.abs(pz) <= bound
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dpz != 0, pz / dpz, 0)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0)
            s = np.sum(inv, axis=1)
            w = ratio / (1 - ratio * s)
        w = np.where(small | ~np.isfinite(w), 0, w)
        z = z - w
        converged = small | (np.abs(w) <= tol * np.maximum(1.0, np.abs(z)))
        if converged.all():
            break
    else:
        raise NumericFailure(
            "Aberth iteration did not converge",
            {"degree": n, "iterations": max_iter, "unconverged": int((~converged).sum()),
             "max_residual": float(np.max(np.abs(np.polyval(desc, z))))},
        )
    # one Newton polish step per root, kept only where it lowers the residual
    pz = np.polyval(desc, z)
    dpz = np.polyval(ddesc, z)
    with np.errstate(divide="ignore", invalid="ignore"):
        znew = z - pz / dpz
    better = np.isfinite(znew) & (np.abs(np.polyval(desc, znew)) < np.abs(pz))
    z[better] = znew[better]
    return z
