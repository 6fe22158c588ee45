"""Montgomery kernel, generalized Ostrowski bound, Grüss-type bound.

The bound compares the blend ``(1-λ) f(t) + λ (f(a)+f(b))/2`` with the
Δ-average of f^σ over [a, b].  Its right-hand side is either the direct
kernel integral ``(M/(b-a)) ∫|K(t,s)| Δs`` or the split form built from
four h_2 values at the offsets ``a + λ(b-a)/2`` and ``b - λ(b-a)/2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import calculus
from .calculus import FunctionSpec, Integrand, delta_integral, h2_closed_form, h_k
from .polynomial import Polynomial
from .scalars import Scalar, format_number
from .timescale import NotInScale, TimeScale

DIRECT = "direct-kernel-integral"
FOUR_H2_MEMBERS = "four-h2-members"
FOUR_H2_CLOSED = "four-h2-closed-form"
GRUSS = "gruss"
MODE_ALIASES = {
    "direct": DIRECT,
    DIRECT: DIRECT,
    "four-h2": "four-h2",
    FOUR_H2_MEMBERS: FOUR_H2_MEMBERS,
    FOUR_H2_CLOSED: FOUR_H2_CLOSED,
}
EQUALITY_RTOL = 1e-12


class WindowError(ValueError):
    """t lies outside the admissible window [a + λ(b-a)/2, b - λ(b-a)/2] ∩ T."""


class ModeUnavailable(ValueError):
    """The four-h2 form needs the split points in T or a canonical scale."""


class SharpnessUndefined(ValueError):
    """The sharpness integral's upper limit is not a point of T."""


class HypothesisViolated(ValueError):
    """User-supplied Grüss bounds do not enclose f^Δ."""


@dataclass(frozen=True)
class KernelParams:
    a: Scalar
    b: Scalar
    lam: Scalar
    t: Scalar

    @property
    def offset(self):
        return self.lam * (self.b - self.a) / 2

    @property
    def split_lo(self):
        return self.a + self.offset

    @property
    def split_hi(self):
        return self.b - self.offset


def kernel_params(T: TimeScale, a, b, lam, t) -> KernelParams:
    """Validate (a, b, λ, t) against T and the admissible window for t."""
    be = T.backend
    a, b, t = T.member(a), T.member(b), T.member(t)
    lam = be.coerce(lam)
    if not a < b:
        raise ValueError("need a < b")
    if not 0 <= lam <= 1:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    p = KernelParams(a, b, lam, t)
    if not (be.le(p.split_lo, t) and be.le(t, p.split_hi)):
        raise WindowError(f"t={t} outside window [{p.split_lo}, {p.split_hi}]")
    return p


def kernel_K(p: KernelParams, s) -> Scalar:
    if not p.a <= s <= p.b:
        raise ValueError(f"s={s} outside [{p.a}, {p.b}]")
    return s - p.split_lo if s < p.t else s - p.split_hi


def kernel_integrand(p: KernelParams, absolute: bool = False) -> Integrand:
    """s ↦ K(t, s), or |K(t, s)|, as an integrand on [a, b]."""
    lo_branch = Polynomial([-p.split_lo, 1])
    hi_branch = Polynomial([-p.split_hi, 1])
    cuts = [p.t, p.split_lo, p.split_hi] if absolute else [p.t]

    def at(s, ss):
        k = s - p.split_lo if s < p.t else s - p.split_hi
        return abs(k) if absolute else k

    def pieces(lo, hi):
        out = []
        for u, v in calculus._cut(lo, hi, cuts):
            m = (u + v) / 2
            branch = lo_branch if m < p.t else hi_branch
            if absolute and branch(m) < 0:
                branch = -branch
            out.append((u, v, branch))
        return out

    return Integrand(at, pieces, "|K|" if absolute else "K")


# -- Montgomery identity ----------------------------------------------------


@dataclass(frozen=True)
class MontgomerySides:
    lhs: Scalar
    rhs: Scalar
    residual: Scalar
    mean: Scalar
    kernel_term: Scalar


def blend(f, p: KernelParams):
    return (1 - p.lam) * f(p.t) + p.lam * (f(p.a) + f(p.b)) / 2


def sigma_mean(f, T: TimeScale, a, b):
    """(1/(b-a)) ∫_a^b f^σ(s) Δs."""
    return delta_integral(calculus.sigma_of(f), T, a, b) / (b - a)


def montgomery_sides(f: FunctionSpec, T: TimeScale, p: KernelParams) -> MontgomerySides:
    lhs = blend(f, p)
    mean = sigma_mean(f, T, p.a, p.b)
    ker = delta_integral(calculus.product(kernel_integrand(p), calculus.delta_of(f)), T, p.a, p.b) / (p.b - p.a)
    rhs = mean + ker
    return MontgomerySides(lhs, rhs, lhs - rhs, mean, ker)


# -- M --------------------------------------------------------------------


def m_sup(f, T: TimeScale, a, b, include_left: bool = True) -> Scalar:
    """sup |f^Δ| over the points where the kernel integral samples f^Δ.

    By default that is [a, b) ∩ T.  With ``include_left=False`` the left
    endpoint is dropped, giving the literal open-interval supremum, which
    can undercut |f^Δ(a)| when a is right-scattered and then no longer
    bounds the kernel integral.
    """
    a, b = T.member(a), T.member(b)
    if not a < b:
        raise ValueError("need a < b")
    if include_left:
        lo, hi = calculus.delta_range(f, T, a, b)
    else:
        rng = calculus.interior_delta_range(f, T, a, b)
        if rng is None:
            raise ValueError(f"no points of T strictly between {a} and {b}")
        lo, hi = rng
    return max(abs(lo), abs(hi))


# -- the bound ------------------------------------------------------------


@dataclass
class BoundReport:
    lhs: Scalar
    rhs: Scalar
    M: Scalar
    mode: str
    components: list | None
    sharpness_condition: bool | None
    equality_case: bool
    equality_holds: bool
    backend: str = "rational"
    tolerance: float | None = None
    extra: dict = field(default_factory=dict)

    @property
    def margin(self):
        return self.rhs - self.lhs

    def holds(self) -> bool:
        """Whether the claimed inequality lhs <= rhs survives."""
        tol = self.tolerance or 0
        return self.margin >= -tol

    @property
    def equality_mismatch(self) -> bool:
        """The extremal construction predicts lhs = rhs but they differ."""
        return self.equality_case and not self.equality_holds

    def to_json(self) -> dict:
        doc = {
            "lhs": format_number(self.lhs),
            "rhs": format_number(self.rhs),
            "margin": format_number(self.margin),
            "M": format_number(self.M),
            "mode": self.mode,
            "components": None if self.components is None else [format_number(c) for c in self.components],
            "sharpness_condition": self.sharpness_condition,
            "equality_case": self.equality_case,
            "equality_holds": self.equality_holds,
            "backend": self.backend,
        }
        if self.tolerance is not None:
            doc["tolerance"] = self.tolerance
        if self.extra:
            doc["extra"] = {k: _fmt(v) for k, v in self.extra.items()}
        return doc


def _fmt(v):
    if isinstance(v, (Fraction, float)):
        return format_number(v)
    return v


def is_identity(f) -> bool:
    poly = f.poly if isinstance(f, FunctionSpec) else f
    return poly.coeffs == (0, 1)


def values_equal(T: TimeScale, x, y) -> bool:
    if T.backend.exact:
        return x == y
    return abs(x - y) <= EQUALITY_RTOL * max(1.0, abs(x), abs(y))


def four_h2_terms(T: TimeScale, p: KernelParams, closed: bool):
    lo, hi = p.split_lo, p.split_hi
    pairs = [(p.a, lo), (p.t, lo), (p.t, hi), (p.b, hi)]
    if closed:
        if T.family is None:
            raise ModeUnavailable("closed-form h_2 needs a canonical scale (reals, integers, q-lattice)")
        return [h2_closed_form(T.family, x, y) for x, y in pairs]
    if lo not in T or hi not in T:
        raise ModeUnavailable("split points are not points of T")
    return [h_k(T, 2, x, y).value for x, y in pairs]


def resolve_mode(T: TimeScale, p: KernelParams, mode: str) -> str:
    try:
        mode = MODE_ALIASES[mode]
    except KeyError:
        raise ValueError(f"unknown mode {mode!r}") from None
    if mode != "four-h2":
        return mode
    if p.split_lo in T and p.split_hi in T:
        return FOUR_H2_MEMBERS
    if T.family is not None:
        return FOUR_H2_CLOSED
    raise ModeUnavailable("split points are off-scale and the scale is not canonical")


def ostrowski_bound(f: FunctionSpec, T: TimeScale, p: KernelParams, mode: str = "direct") -> BoundReport:
    mode = resolve_mode(T, p, mode)
    width = p.b - p.a
    lhs = abs(blend(f, p) - sigma_mean(f, T, p.a, p.b))
    M = m_sup(f, T, p.a, p.b)
    if mode == DIRECT:
        components = None
        rhs = M / width * delta_integral(kernel_integrand(p, absolute=True), T, p.a, p.b)
    else:
        components = four_h2_terms(T, p, closed=(mode == FOUR_H2_CLOSED))
        rhs = M / width * sum(components)
    try:
        sharp = sharpness_condition(T, p.a, p.b, p.lam)
    except SharpnessUndefined:
        sharp = None
    return BoundReport(
        lhs=lhs,
        rhs=rhs,
        M=M,
        mode=mode,
        components=components,
        sharpness_condition=sharp,
        equality_case=bool(sharp) and is_identity(f) and T.backend.eq(p.t, p.split_hi),
        equality_holds=values_equal(T, lhs, rhs),
        backend=T.backend.kind,
        tolerance=None if T.backend.exact else T.backend.tolerance,
    )


def sharpness_condition(T: TimeScale, a, b, lam) -> bool:
    """(λ/2) a (b-a) + (λ²/4)(b-a)² <= ∫_a^{a+λ(b-a)/2} s Δs."""
    left, integral = sharpness_sides(T, a, b, lam)
    return left <= integral


def sharpness_sides(T: TimeScale, a, b, lam):
    be = T.backend
    a, b, lam = T.member(a), T.member(b), be.coerce(lam)
    if not a < b:
        raise ValueError("need a < b")
    if not 0 <= lam <= 1:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    left = lam / 2 * a * (b - a) + lam**2 / 4 * (b - a) ** 2
    upper = a + lam * (b - a) / 2
    if lam == 0:
        return left, be.coerce(0)
    if upper not in T:
        raise SharpnessUndefined(f"upper limit {upper} is not a point of T")
    integral = delta_integral(Polynomial([0, 1]), T, a, upper)
    if not be.exact and be.eq(left, integral):
        integral = left
    return left, integral


# -- Grüss-type bound ------------------------------------------------------


def gruss_check(f: FunctionSpec, T: TimeScale, a, b, t, gamma=None, Gamma=None) -> BoundReport:
    """|f(t) - mean - ((f(b)-f(a))/(b-a)²)(h_2(t,a) - h_2(t,b))| <= (b-a)(Γ-γ)/4.

    γ and Γ default to the tight range of f^Δ over [a, b) ∩ T; when given
    they are checked against that range.
    """
    be = T.backend
    a, b, t = T.member(a), T.member(b), T.member(t)
    if not a < b:
        raise ValueError("need a < b")
    if not a <= t <= b:
        raise ValueError(f"t={t} outside [{a}, {b}]")
    lo, hi = calculus.delta_range(f, T, a, b)
    gamma = lo if gamma is None else be.coerce(gamma)
    Gamma = hi if Gamma is None else be.coerce(Gamma)
    if gamma > Gamma:
        raise ValueError(f"gamma={gamma} exceeds Gamma={Gamma}")
    if be.lt(lo, gamma) or be.lt(Gamma, hi):
        raise HypothesisViolated(f"f^Delta ranges over [{lo}, {hi}], not inside [{gamma}, {Gamma}]")
    width = b - a
    h_ta = h_k(T, 2, t, a).value
    h_tb = h_k(T, 2, t, b).value
    lhs = abs(f(t) - sigma_mean(f, T, a, b) - (f(b) - f(a)) / width**2 * (h_ta - h_tb))
    rhs = width * (Gamma - gamma) / 4
    return BoundReport(
        lhs=lhs,
        rhs=rhs,
        M=max(abs(lo), abs(hi)),
        mode=GRUSS,
        components=None,
        sharpness_condition=None,
        equality_case=False,
        equality_holds=values_equal(T, lhs, rhs),
        backend=be.kind,
        tolerance=None if be.exact else be.tolerance,
        extra={"gamma": gamma, "Gamma": Gamma, "t": t},
    )


# -- named special cases ---------------------------------------------------

MIDPOINT_KINDS = {"trapezoid": 1, "simpson": Fraction(1, 3), "averaged": Fraction(1, 2), "midpoint": 0}
FAMILY_KINDS = {"bohner-matthews": 0, "third-family": Fraction(1, 3), "half-family": Fraction(1, 2)}
SPECIAL_KINDS = tuple(MIDPOINT_KINDS) + tuple(FAMILY_KINDS) + ("center-family",)


def special_case_bound(kind: str, f: FunctionSpec, T: TimeScale, a, b, t=None, lam=None, mode: str = "direct") -> BoundReport:
    """Pin (λ, t) for a named rule and delegate to :func:`ostrowski_bound`.

    trapezoid/simpson/averaged/midpoint use t = (a+b)/2, which must be in T.
    The ``*-family`` kinds take t; ``center-family`` takes λ.
    """
    be = T.backend
    a, b = T.member(a), T.member(b)
    mid = (a + b) / 2
    if kind in MIDPOINT_KINDS or kind == "center-family":
        if mid not in T:
            raise NotInScale(f"(a+b)/2 = {mid} is not a point of T")
        t = mid
    if kind in MIDPOINT_KINDS:
        lam = MIDPOINT_KINDS[kind]
    elif kind in FAMILY_KINDS:
        lam = FAMILY_KINDS[kind]
        if t is None:
            raise ValueError(f"{kind} needs t")
    elif kind == "center-family":
        if lam is None:
            raise ValueError("center-family needs lambda")
    else:
        raise ValueError(f"unknown kind {kind!r}")
    p = kernel_params(T, a, b, be.coerce(lam), t)
    report = ostrowski_bound(f, T, p, mode)
    report.extra.update({"kind": kind, "lambda": p.lam, "t": p.t})
    return report


# -- closed forms on the canonical scales ---------------------------------


def reals_bound(M, a, b, lam, t):
    """M [ (b-a)((1-λ)² + λ²)/4 + (t - (a+b)/2)²/(b-a) ] on an interval of R."""
    return M * ((b - a) * ((1 - lam) ** 2 + lam**2) / 4 + (t - (a + b) / 2) ** 2 / (b - a))


def integers_bound(M, n, i, lam):
    """(M/n)(|i - (n+1)/2|² + ((2λ² - 2λ + 1)n² - 1)/4) on {0, ..., n}."""
    return M / n * ((i - Fraction(n + 1, 2)) ** 2 + ((2 * lam**2 - 2 * lam + 1) * n**2 - 1) / 4)


def qlattice_h2_terms(q, m: int, n: int, lam, t) -> list:
    """The four h_2 values of the bound on {q^m, ..., q^n} written out.

    Order matches :func:`four_h2_terms`: h_2(a, lo), h_2(t, lo),
    h_2(t, hi), h_2(b, hi) with a = q^m, b = q^n.
    """
    A, B = q**m, q**n
    half = lam / 2
    return [
        half * (A - B) * (A - (1 - half) * A * q - half * B * q) / (1 + q),
        (t - (1 - half) * A - half * B) * (t - (1 - half) * A * q - half * B * q) / (1 + q),
        (t - (1 - half) * B - half * A) * (t - (1 - half) * B * q - half * A * q) / (1 + q),
        half * (B - A) * (B - (1 - half) * B * q - half * A * q) / (1 + q),
    ]
