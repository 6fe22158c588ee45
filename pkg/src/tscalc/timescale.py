"""Time scales as finite unions of closed intervals and isolated points.

A :class:`TimeScale` is immutable.  It answers membership queries, the
forward/backward jump operators and the graininess functions, classifies
points, and walks ``[a, b] ∩ T`` as a sequence of dense segments and
right-scattered points, which is all the Δ-integral needs.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, NamedTuple, Union

from .scalars import EXACT, FLOAT, RATIONAL, Backend, Scalar, format_number, parse_number


class NotInScale(ValueError):
    """A point was required to belong to the time scale and does not."""


class ScaleSpecError(ValueError):
    """A ScaleSpec document cannot be turned into a time scale."""


@dataclass(frozen=True)
class Interval:
    lo: Scalar
    hi: Scalar

    @property
    def inf(self):
        return self.lo

    @property
    def sup(self):
        return self.hi


@dataclass(frozen=True)
class Point:
    x: Scalar

    @property
    def inf(self):
        return self.x

    @property
    def sup(self):
        return self.x


Component = Union[Interval, Point]


class Jumps(NamedTuple):
    sigma: Scalar
    rho: Scalar
    mu: Scalar
    nu: Scalar


@dataclass(frozen=True)
class Classification:
    right_scattered: bool
    left_scattered: bool
    in_kappa: bool

    @property
    def right_dense(self):
        return not self.right_scattered

    @property
    def left_dense(self):
        return not self.left_scattered

    @property
    def isolated(self):
        return self.right_scattered and self.left_scattered

    @property
    def dense(self):
        return not (self.right_scattered or self.left_scattered)


@dataclass(frozen=True)
class TimeScale:
    components: tuple
    backend: Backend = EXACT

    def __post_init__(self):
        if not self.components:
            raise ScaleSpecError("a time scale must be nonempty")
        for c in self.components:
            if isinstance(c, Interval) and not c.lo < c.hi:
                raise ScaleSpecError(f"interval with lo >= hi: [{c.lo}, {c.hi}]")
        for left, right in zip(self.components, self.components[1:]):
            if not left.sup < right.inf:
                raise ScaleSpecError("components must be disjoint and strictly increasing")

    # -- basic queries ------------------------------------------------------

    @property
    def min(self) -> Scalar:
        return self.components[0].inf

    @property
    def max(self) -> Scalar:
        return self.components[-1].sup

    @cached_property
    def _infs(self):
        return [c.inf for c in self.components]

    @property
    def is_discrete(self) -> bool:
        return all(isinstance(c, Point) for c in self.components)

    @property
    def has_dense_part(self) -> bool:
        return any(isinstance(c, Interval) for c in self.components)

    def points(self) -> list:
        """All isolated points (only meaningful for purely discrete scales)."""
        return [c.x for c in self.components if isinstance(c, Point)]

    def locate(self, x) -> tuple[int, Scalar]:
        """Component index holding ``x`` and the canonical value of ``x``.

        On the float backend a value within tolerance of an isolated point
        or an interval endpoint snaps to it, so later exact comparisons
        against stored values behave.
        """
        x = self.backend.coerce(x)
        be = self.backend
        i = bisect.bisect_right(self._infs, x) - 1
        for j in (i, i + 1, i - 1):
            if not 0 <= j < len(self.components):
                continue
            c = self.components[j]
            if isinstance(c, Point):
                if be.eq(x, c.x):
                    return j, c.x
            else:
                if be.eq(x, c.lo):
                    return j, c.lo
                if be.eq(x, c.hi):
                    return j, c.hi
                if c.lo < x < c.hi:
                    return j, x
        raise NotInScale(f"{x} is not a point of the time scale")

    def __contains__(self, x) -> bool:
        try:
            self.locate(x)
        except NotInScale:
            return False
        return True

    def member(self, x) -> Scalar:
        return self.locate(x)[1]

    # -- jump operators -----------------------------------------------------

    def sigma(self, x) -> Scalar:
        i, x = self.locate(x)
        c = self.components[i]
        if isinstance(c, Interval) and x < c.hi:
            return x
        return self.components[i + 1].inf if i + 1 < len(self.components) else x

    def rho(self, x) -> Scalar:
        i, x = self.locate(x)
        c = self.components[i]
        if isinstance(c, Interval) and x > c.lo:
            return x
        return self.components[i - 1].sup if i > 0 else x

    def mu(self, x) -> Scalar:
        x = self.member(x)
        return self.sigma(x) - x

    def nu(self, x) -> Scalar:
        x = self.member(x)
        return x - self.rho(x)

    def jumps(self, x) -> Jumps:
        x = self.member(x)
        s, r = self.sigma(x), self.rho(x)
        return Jumps(s, r, s - x, x - r)

    def classify(self, x) -> Classification:
        x = self.member(x)
        rs = self.sigma(x) > x
        ls = self.rho(x) < x
        return Classification(rs, ls, in_kappa=not (x == self.max and ls))

    def in_kappa(self, x) -> bool:
        return self.classify(x).in_kappa

    # -- walking [a, b] -----------------------------------------------------

    def walk(self, a, b) -> Iterator[tuple]:
        """Decompose ``[a, b] ∩ T`` for integration, with ``a <= b`` in T.

        Yields ``("dense", lo, hi)`` for each nondegenerate piece of an
        interval component inside [a, b], and ``("scattered", x, sigma_x)``
        for each right-scattered point x in [a, b).
        """
        ia, a = self.locate(a)
        ib, b = self.locate(b)
        if a > b:
            raise ValueError("walk needs a <= b")
        for i in range(ia, ib + 1):
            c = self.components[i]
            nxt = self.components[i + 1].inf if i + 1 < len(self.components) else None
            if isinstance(c, Interval):
                lo, hi = max(c.lo, a), min(c.hi, b)
                if lo < hi:
                    yield ("dense", lo, hi)
                if nxt is not None and c.hi < b:
                    yield ("scattered", c.hi, nxt)
            elif nxt is not None and a <= c.x < b:
                yield ("scattered", c.x, nxt)

    def members_between(self, lo, hi) -> list:
        """Atoms of ``[lo, hi] ∩ T``: isolated members and dense pieces.

        ``lo`` and ``hi`` need not belong to T.  Returns a list of
        ``("point", x)`` and ``("segment", u, v)`` entries; a segment of
        zero length is reported as a point.
        """
        be = self.backend
        out = []
        for c in self.components:
            if isinstance(c, Point):
                if be.le(lo, c.x) and be.le(c.x, hi):
                    out.append(("point", c.x))
            else:
                u = c.lo if be.le(lo, c.lo) else lo
                v = c.hi if be.le(c.hi, hi) else hi
                if u < v:
                    out.append(("segment", u, v))
                elif be.eq(u, v) and be.le(c.lo, u) and be.le(u, c.hi):
                    out.append(("point", self.member(u) if u in self else u))
        return out

    # -- canonical families -------------------------------------------------

    @cached_property
    def family(self):
        """``("reals",)``, ``("integers",)``, ``("qlattice", q)`` or None.

        Detection is structural: a single interval, a run of consecutive
        integers, or a geometric progression ``c, cq, cq^2, ...`` with
        ``c > 0`` and ``q > 1`` (at least three points so q is pinned).
        """
        if len(self.components) == 1 and isinstance(self.components[0], Interval):
            return ("reals",)
        if not self.is_discrete or len(self.components) < 2:
            return None
        pts = self.points()
        if all(float(p).is_integer() for p in pts) and all(
            self.backend.eq(v - u, 1) for u, v in zip(pts, pts[1:])
        ):
            return ("integers",)
        if len(pts) >= 3 and pts[0] > 0:
            q = pts[1] / pts[0]
            if q > 1 and all(self.backend.eq(v, u * q) for u, v in zip(pts, pts[1:])):
                return ("qlattice", q)
        return None

    # -- conversion ---------------------------------------------------------

    def to_backend(self, backend: Backend) -> TimeScale:
        conv = backend.coerce if backend.exact else float
        comps = tuple(
            Interval(conv(c.lo), conv(c.hi)) if isinstance(c, Interval) else Point(conv(c.x))
            for c in self.components
        )
        return TimeScale(comps, backend)

    def to_spec(self) -> dict:
        comps = []
        for c in self.components:
            if isinstance(c, Interval):
                comps.append({"interval": [format_number(c.lo), format_number(c.hi)]})
            else:
                comps.append({"point": format_number(c.x)})
        spec = {"components": comps, "backend": self.backend.kind}
        if not self.backend.exact:
            spec["tolerance"] = self.backend.tolerance
        return spec


def jump_operators(T: TimeScale, t) -> Jumps:
    return T.jumps(t)


def classify_point(T: TimeScale, t) -> Classification:
    return T.classify(t)


# -- building from ScaleSpec documents ---------------------------------------


def _expand(entry: dict, backend: Backend) -> list:
    if not isinstance(entry, dict) or len(entry) != 1:
        raise ScaleSpecError(f"component must be a one-key object, got {entry!r}")
    (key, val), = entry.items()
    num = lambda v: _num(v, backend)  # noqa: E731
    if key == "interval":
        if not isinstance(val, (list, tuple)) or len(val) != 2:
            raise ScaleSpecError("interval needs [lo, hi]")
        lo, hi = num(val[0]), num(val[1])
        if not lo < hi:
            raise ScaleSpecError(f"interval with lo >= hi: [{val[0]}, {val[1]}]")
        return [Interval(lo, hi)]
    if key == "point":
        return [Point(num(val))]
    if key == "integers":
        a, b = _int(val, "a"), _int(val, "b")
        if a > b:
            raise ScaleSpecError("integers family needs a <= b")
        return [Point(backend.coerce(k)) for k in range(a, b + 1)]
    if key == "qlattice":
        q = _num(val.get("q") if isinstance(val, dict) else None, EXACT)
        if q <= 1:
            raise ScaleSpecError("q-lattice needs q > 1")
        m, n = _int(val, "m"), _int(val, "n")
        if m > n:
            raise ScaleSpecError("q-lattice needs m <= n")
        return [Point(backend.coerce(q**k)) for k in range(m, n + 1)]
    raise ScaleSpecError(f"unknown component kind {key!r}")


def _num(v, backend: Backend):
    try:
        return backend.coerce(parse_number(v, exact=backend.exact))
    except (TypeError, ValueError) as err:
        raise ScaleSpecError(str(err)) from err


def _int(val, key):
    if not isinstance(val, dict) or not isinstance(val.get(key), int) or isinstance(val.get(key), bool):
        raise ScaleSpecError(f"family parameter {key!r} must be an integer")
    return val[key]


def _normalize(parts: list, backend: Backend) -> tuple:
    """Sort, merge touching pieces, reject genuine overlaps."""
    parts = sorted(parts, key=lambda c: (c.inf, c.sup))
    out: list = []
    eq = backend.eq
    for c in parts:
        if not out:
            out.append(c)
            continue
        prev = out[-1]
        if backend.lt(prev.sup, c.inf):
            out.append(c)
            continue
        # prev.sup >= c.inf (up to tolerance): only touching is allowed
        if isinstance(prev, Point) and isinstance(c, Point) and eq(prev.x, c.x):
            continue
        if isinstance(prev, Point) and isinstance(c, Interval) and eq(prev.x, c.lo):
            out[-1] = c
            continue
        if isinstance(prev, Interval) and isinstance(c, Point) and eq(c.x, prev.hi):
            continue
        if isinstance(prev, Interval) and isinstance(c, Interval) and eq(prev.hi, c.lo):
            out[-1] = Interval(prev.lo, c.hi)
            continue
        raise ScaleSpecError(f"overlapping components near {c.inf}")
    return tuple(out)


def build_timescale(spec: dict) -> TimeScale:
    """Build a normalized :class:`TimeScale` from a ScaleSpec document.

    >>> build_timescale({"components": [{"qlattice": {"q": "2", "m": 0, "n": 3}}]}).points()
    [Fraction(1, 1), Fraction(2, 1), Fraction(4, 1), Fraction(8, 1)]
    """
    if not isinstance(spec, dict):
        raise ScaleSpecError("ScaleSpec must be a JSON object")
    kind = spec.get("backend", RATIONAL)
    if kind == RATIONAL:
        if "tolerance" in spec:
            raise ScaleSpecError("rational backend takes no tolerance")
        backend = EXACT
    elif kind == FLOAT:
        tol = spec.get("tolerance", 1e-12)
        if not isinstance(tol, (int, float)) or isinstance(tol, bool) or not tol > 0:
            raise ScaleSpecError("float tolerance must be a positive number")
        backend = Backend(FLOAT, float(tol))
    else:
        raise ScaleSpecError(f"unknown backend {kind!r}")
    comps = spec.get("components")
    if not isinstance(comps, list) or not comps:
        raise ScaleSpecError("ScaleSpec needs a nonempty 'components' list")
    parts = [c for entry in comps for c in _expand(entry, backend)]
    return TimeScale(_normalize(parts, backend), backend)


def integers(a: int, b: int, backend: Backend = EXACT) -> TimeScale:
    return build_timescale(_spec([{"integers": {"a": a, "b": b}}], backend))


def qlattice(q, m: int, n: int, backend: Backend = EXACT) -> TimeScale:
    return build_timescale(_spec([{"qlattice": {"q": str(Fraction(q)), "m": m, "n": n}}], backend))


def interval(lo, hi, backend: Backend = EXACT) -> TimeScale:
    return TimeScale((Interval(backend.coerce(lo), backend.coerce(hi)),), backend)


def from_points(points, backend: Backend = EXACT) -> TimeScale:
    parts = [Point(backend.coerce(p)) for p in points]
    return TimeScale(_normalize(parts, backend), backend)


def _spec(comps, backend):
    spec = {"components": comps, "backend": backend.kind}
    if not backend.exact:
        spec["tolerance"] = backend.tolerance
    return spec
