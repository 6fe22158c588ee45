from __future__ import annotations

import os
from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from tscalc.calculus import FunctionSpec
from tscalc.timescale import Interval, Point, TimeScale, from_points, integers, qlattice
from tscalc.scalars import EXACT

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small_rationals = st.fractions(min_value=-6, max_value=6, max_denominator=6)


@st.composite
def polys(draw, max_degree=4):
    coeffs = draw(st.lists(small_rationals, min_size=1, max_size=max_degree + 1))
    return FunctionSpec.polynomial(coeffs)


@st.composite
def discrete_scales(draw):
    kind = draw(st.sampled_from(["integers", "qlattice", "points"]))
    if kind == "integers":
        a = draw(st.integers(-5, 5))
        return integers(a, a + draw(st.integers(2, 10)))
    if kind == "qlattice":
        q = draw(st.sampled_from([Fraction(3, 2), Fraction(2), Fraction(3)]))
        m = draw(st.integers(0, 2))
        return qlattice(q, m, m + draw(st.integers(2, 6)))
    pts = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=3, max_size=9, unique=True))
    return from_points(pts)


@st.composite
def hybrid_scales(draw):
    """An interval with isolated points on either side, possibly a second interval."""
    lo = draw(st.integers(-4, 2))
    width = draw(st.integers(1, 3))
    comps = [Interval(Fraction(lo), Fraction(lo + width))]
    right = lo + width
    for step in draw(st.lists(st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(3, 2)]), min_size=1, max_size=3)):
        right += step
        comps.append(Point(right))
    if draw(st.booleans()):
        comps.insert(0, Point(Fraction(lo - 1)))
    if draw(st.booleans()):
        comps.append(Interval(right + 1, right + 2))
    return TimeScale(tuple(comps), EXACT)


any_scales = st.one_of(discrete_scales(), hybrid_scales())


def sample_points(T):
    """Isolated points plus ends and midpoints of the dense pieces."""
    out = []
    for atom in T.members_between(T.min, T.max):
        if atom[0] == "point":
            out.append(atom[1])
        else:
            u, v = atom[1], atom[2]
            out += [u, (u + v) / 2, v]
    return sorted(set(out))


@st.composite
def member_pairs(draw, scales=any_scales):
    """(T, a, b) with a < b, both in T."""
    T = draw(scales)
    pts = sample_points(T)
    a, b = sorted(draw(st.lists(st.sampled_from(pts), min_size=2, max_size=2, unique=True)))
    return T, a, b


ACCEPTANCE_LINES: dict = {}


def record_criterion(number: int, title: str, passed: bool, detail: str) -> None:
    ACCEPTANCE_LINES[number] = f"criterion {number:>2} [{'PASS' if passed else 'FAIL'}] {title}: {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance gate")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
