"""Δ-derivative, Δ-integral and the generalized monomials h_k.

Integrands are piecewise polynomial on every dense piece of a time scale,
so dense parts integrate exactly through antiderivatives and scattered
points contribute ``value * graininess``.  Nothing here does numeric
differencing or quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .polynomial import Polynomial, value_range
from .scalars import Scalar, format_number, parse_number
from .timescale import NotInScale, TimeScale


class FunctionSpecError(ValueError):
    pass


@dataclass(frozen=True)
class FunctionSpec:
    """A symbolically known function: a rational polynomial.

    ``kind`` remembers how it was written (``poly``, ``identity`` or
    ``constant``) so the JSON form round-trips unchanged.
    """

    poly: Polynomial
    kind: str = "poly"

    @classmethod
    def polynomial(cls, coeffs) -> FunctionSpec:
        return cls(Polynomial([Fraction(c) if not isinstance(c, float) else c for c in coeffs]))

    @classmethod
    def identity(cls) -> FunctionSpec:
        return cls(Polynomial([0, 1]), "identity")

    @classmethod
    def constant(cls, c) -> FunctionSpec:
        return cls(Polynomial([Fraction(c)]), "constant")

    def __call__(self, x):
        return self.poly(x)

    @property
    def derivative(self) -> Polynomial:
        return self.poly.derivative()

    def scaled(self, c) -> FunctionSpec:
        return FunctionSpec(self.poly * c)

    @classmethod
    def from_json(cls, doc) -> FunctionSpec:
        if not isinstance(doc, dict) or len(doc) != 1:
            raise FunctionSpecError("FunctionSpec must be {'poly': [...]} or {'builtin': ...}")
        if "poly" in doc:
            coeffs = doc["poly"]
            if not isinstance(coeffs, list):
                raise FunctionSpecError("'poly' must be a list of rational strings")
            try:
                return cls(Polynomial([parse_number(c) for c in coeffs]))
            except (TypeError, ValueError) as err:
                raise FunctionSpecError(str(err)) from err
        if "builtin" in doc:
            b = doc["builtin"]
            if b == "identity":
                return cls.identity()
            if isinstance(b, dict) and set(b) == {"constant"}:
                try:
                    return cls.constant(parse_number(b["constant"]))
                except (TypeError, ValueError) as err:
                    raise FunctionSpecError(str(err)) from err
            raise FunctionSpecError(f"unknown builtin {b!r}")
        raise FunctionSpecError(f"unknown FunctionSpec key {next(iter(doc))!r}")

    def to_json(self) -> dict:
        if self.kind == "identity":
            return {"builtin": "identity"}
        if self.kind == "constant":
            c = self.poly.coeffs[0] if self.poly.coeffs else Fraction(0)
            return {"builtin": {"constant": format_number(c)}}
        return {"poly": [format_number(c) for c in self.poly.coeffs] or ["0"]}


def _poly(f) -> Polynomial:
    return f.poly if isinstance(f, FunctionSpec) else f


# -- integrands ---------------------------------------------------------------

Pieces = list  # of (lo, hi, Polynomial)


@dataclass(frozen=True)
class Integrand:
    """Something that can be Δ-integrated.

    ``at(s, sigma_s)`` gives the value at a point of the scale (``sigma_s``
    is needed for f^σ and f^Δ at scattered points; at dense points it
    equals ``s``).  ``pieces(lo, hi)`` splits a dense segment into
    subsegments carrying one polynomial each.
    """

    at: Callable
    pieces: Callable
    label: str = field(default="", compare=False)

    def breakpoints(self, lo, hi) -> list:
        return [lo] + [p[1] for p in self.pieces(lo, hi)]


def _cut(lo, hi, cuts) -> list:
    pts = [lo] + sorted(c for c in set(cuts) if lo < c < hi) + [hi]
    return list(zip(pts, pts[1:]))


def of(f) -> Integrand:
    """The integrand f(s)."""
    p = _poly(f)
    return Integrand(lambda s, ss: p(s), lambda lo, hi: [(lo, hi, p)], "f")


def sigma_of(f) -> Integrand:
    """The integrand f^σ(s) = f(σ(s)); equal to f on dense pieces."""
    p = _poly(f)
    return Integrand(lambda s, ss: p(ss), lambda lo, hi: [(lo, hi, p)], "f^sigma")


def delta_quotient(p: Polynomial, s, ss):
    """f^Δ(s) given σ(s): difference quotient, or f'(s) when right-dense."""
    if ss == s:
        return p.derivative()(s)
    return (p(ss) - p(s)) / (ss - s)


def delta_of(f) -> Integrand:
    """The integrand f^Δ(s)."""
    p = _poly(f)
    dp = p.derivative()
    return Integrand(lambda s, ss: delta_quotient(p, s, ss), lambda lo, hi: [(lo, hi, dp)], "f^Delta")


def abs_shift(c) -> Integrand:
    """The integrand |s - c|."""
    up = Polynomial([-c, 1])
    down = Polynomial([c, -1])

    def pieces(lo, hi):
        return [(u, v, up if (u + v) / 2 > c else down) for u, v in _cut(lo, hi, [c])]

    return Integrand(lambda s, ss: abs(s - c), pieces, f"|s-{c}|")


def product(A: Integrand, B: Integrand) -> Integrand:
    def pieces(lo, hi):
        pa, pb = A.pieces(lo, hi), B.pieces(lo, hi)
        cuts = [p[1] for p in pa] + [p[1] for p in pb]
        out = []
        for u, v in _cut(lo, hi, cuts):
            m = (u + v) / 2
            qa = next(p for (x, y, p) in pa if x <= m <= y)
            qb = next(p for (x, y, p) in pb if x <= m <= y)
            out.append((u, v, qa * qb))
        return out

    return Integrand(lambda s, ss: A.at(s, ss) * B.at(s, ss), pieces, f"({A.label})*({B.label})")


def scaled(A: Integrand, c) -> Integrand:
    return Integrand(
        lambda s, ss: c * A.at(s, ss),
        lambda lo, hi: [(u, v, p * c) for (u, v, p) in A.pieces(lo, hi)],
        f"{c}*({A.label})",
    )


def _as_integrand(f) -> Integrand:
    if isinstance(f, Integrand):
        return f
    if isinstance(f, (FunctionSpec, Polynomial)):
        return of(f)
    raise TypeError(f"cannot integrate {type(f).__name__}")


# -- derivative and integral -------------------------------------------------


class NotInKappa(ValueError):
    """Δ-derivative requested at a left-scattered maximum."""


def delta_derivative(f, T: TimeScale, t) -> Scalar:
    """f^Δ(t): forward quotient if t is right-scattered, else f'(t)."""
    t = T.member(t)
    if not T.in_kappa(t):
        raise NotInKappa(f"{t} is a left-scattered maximum; f^Delta is undefined there")
    return delta_quotient(_poly(f), t, T.sigma(t))


def delta_integral(f, T: TimeScale, a, b) -> Scalar:
    """∫_a^b f(s) Δs for a, b in T (a > b handled by reversal)."""
    integrand = _as_integrand(f)
    a, b = T.member(a), T.member(b)
    if a == b:
        return T.backend.coerce(0)
    if a > b:
        return -delta_integral(integrand, T, b, a)
    total = T.backend.coerce(0)
    for kind, x, y in T.walk(a, b):
        if kind == "dense":
            for u, v, p in integrand.pieces(x, y):
                total += p.integrate(u, v)
        else:
            total += integrand.at(x, y) * (y - x)
    return total


# -- h_k ----------------------------------------------------------------------


@dataclass(frozen=True)
class HkValue:
    k: int
    t: Scalar
    s: Scalar
    value: Scalar
    method: str


def h_k(T: TimeScale, k: int, t, s) -> HkValue:
    """h_k(t, s) by the defining recursion h_{k+1}(t,s) = ∫_s^t h_k(τ,s) Δτ."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    t, s = T.member(t), T.member(s)
    return HkValue(k, t, s, _hk(T, k, t, s), "recursive")


@lru_cache(maxsize=8192)
def _hk(T: TimeScale, k: int, t, s):
    if k == 0:
        return T.backend.coerce(1)
    if t == s:
        return T.backend.coerce(0)
    return delta_integral(_hk_integrand(T, k - 1, s), T, s, t)


def _hk_integrand(T: TimeScale, k: int, s) -> Integrand:
    """τ ↦ h_k(τ, s) as an integrand."""

    def pieces(lo, hi):
        return [(lo, hi, _hk_poly(T, k, s, lo))]

    return Integrand(lambda x, sx: _hk(T, k, x, s), pieces, f"h_{k}(.,{s})")


@lru_cache(maxsize=8192)
def _hk_poly(T: TimeScale, k: int, s, ref) -> Polynomial:
    """h_k(·, s) on the dense component containing ``ref``, as a polynomial.

    Inside one interval component the Δ-integral is the Riemann integral,
    so h_k(τ,s) = h_k(ref,s) + ∫_ref^τ h_{k-1}(u,s) du there.
    """
    if k == 0:
        return Polynomial.constant(T.backend.coerce(1))
    prev = _hk_poly(T, k - 1, s, ref).antiderivative()
    return prev - prev(ref) + _hk(T, k, ref, s)


def h2_closed_form(family, t, s) -> Scalar:
    """Closed forms of h_2 on the canonical scales, valid for any real t, s.

    ``family`` is ``"reals"``, ``"integers"``, ``("qlattice", q)`` or the
    tuple returned by :attr:`TimeScale.family`.
    """
    name, q = _family(family)
    if name == "reals":
        return (t - s) ** 2 / 2
    if name == "integers":
        return (t - s) * (t - s - 1) / 2
    if name == "qlattice":
        return (t - s) * (t - q * s) / (1 + q)
    raise ValueError(f"unknown family {family!r}")


def _family(family):
    if isinstance(family, str):
        return family, None
    name = family[0]
    q = family[1] if len(family) > 1 else None
    if name == "qlattice" and not q > 1:
        raise ValueError("q-lattice needs q > 1")
    return name, q


# -- ranges of f^Δ -------------------------------------------------------------


def delta_range(f, T: TimeScale, a, b) -> tuple:
    """(inf, sup) of f^Δ over [a, b) ∩ T, the points the kernel integral sees.

    Scattered points contribute their difference quotients exactly; a dense
    piece [u, v] contributes the range of f' over the closed piece (the sup
    over [u, v) equals it by continuity), found from the endpoints and the
    roots of f''.
    """
    p = _poly(f)
    dp = p.derivative()
    a, b = T.member(a), T.member(b)
    if not a < b:
        raise ValueError("delta_range needs a < b")
    lo_vals, hi_vals = [], []
    for kind, x, y in T.walk(a, b):
        if kind == "dense":
            lo, hi = value_range(dp, x, y)
        else:
            lo = hi = delta_quotient(p, x, y)
        lo_vals.append(lo)
        hi_vals.append(hi)
    return min(lo_vals), max(hi_vals)


def interior_delta_range(f, T: TimeScale, a, b) -> tuple | None:
    """(inf, sup) of f^Δ over the open set (a, b) ∩ T, or None if empty.

    This is the literal ``sup_{a<t<b}`` reading.  It differs from
    :func:`delta_range` only when ``a`` is right-scattered.
    """
    p = _poly(f)
    dp = p.derivative()
    a, b = T.member(a), T.member(b)
    lo_vals, hi_vals = [], []
    for kind, x, y in T.walk(a, b):
        if kind == "dense":
            lo, hi = value_range(dp, x, y)
        elif x > a:
            lo = hi = delta_quotient(p, x, y)
        else:
            continue
        lo_vals.append(lo)
        hi_vals.append(hi)
    if not lo_vals:
        return None
    return min(lo_vals), max(hi_vals)
