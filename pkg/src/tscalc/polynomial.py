"""Dense univariate polynomials over Fraction or float coefficients."""

from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest

ROOT_TOL = 1e-12


class Polynomial:
    """Coefficients in ascending degree; trailing zeros are stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls([c])

    @classmethod
    def linear(cls, slope, intercept) -> Polynomial:
        return cls([intercept, slope])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> Polynomial:
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> Polynomial:
        """The antiderivative vanishing at 0."""
        out = [0]
        for k, c in enumerate(self.coeffs):
            out.append(c / (k + 1) if isinstance(c, float) else Fraction(c) / (k + 1))
        return Polynomial(out)

    def integrate(self, lo, hi):
        F = self.antiderivative()
        return F(hi) - F(lo)

    def __add__(self, other):
        other = _as_poly(other)
        return Polynomial(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"


def _as_poly(x) -> Polynomial:
    return x if isinstance(x, Polynomial) else Polynomial.constant(x)


def _bisect(p: Polynomial, lo, hi, tol):
    """Root of ``p`` in [lo, hi] given a strict sign change across the ends."""
    plo = p(lo)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        pm = p(mid)
        if pm == 0:
            return mid
        if (pm > 0) == (plo > 0):
            lo, plo = mid, pm
        else:
            hi = mid
    return (lo + hi) / 2


def _snap_rational(p: Polynomial, r):
    # a nearby small-denominator candidate that is an exact root wins
    if isinstance(r, Fraction):
        cand = r.limit_denominator(10**6)
        if p(cand) == 0:
            return cand
    return r


def real_roots(p: Polynomial, lo, hi, tol: float = ROOT_TOL) -> list:
    """Real roots of ``p`` in the closed interval [lo, hi], ascending.

    Roots are isolated recursively: the roots of ``p'`` split [lo, hi] into
    pieces on which ``p`` is monotone, so each piece holds at most one root,
    found by sign-change bisection down to width ``tol``.  Fraction inputs
    stay Fractions; a bisected root is snapped to an exact rational root
    when one lies close by.  The zero polynomial has no isolated roots and
    yields an empty list.
    """
    if p.degree <= 0 or lo > hi:
        return []
    if p.degree == 1:
        c0, c1 = p.coeffs
        r = -c0 / c1
        return [r] if lo <= r <= hi else []
    nodes = [lo] + real_roots(p.derivative(), lo, hi, tol) + [hi]
    roots = []
    for u, v in zip(nodes, nodes[1:]):
        pu, pv = p(u), p(v)
        if pu == 0:
            roots.append(u)
        elif pv != 0 and (pu > 0) != (pv > 0):
            roots.append(_snap_rational(p, _bisect(p, u, v, tol)))
    if p(hi) == 0:
        roots.append(hi)
    out = []
    for r in roots:
        if not out or r != out[-1]:
            out.append(r)
    return out


def value_range(p: Polynomial, lo, hi):
    """(min, max) of ``p`` over [lo, hi] from endpoints and critical points."""
    candidates = [lo, hi] + real_roots(p.derivative(), lo, hi)
    values = [p(x) for x in candidates]
    return min(values), max(values)
