"""Number handling for the two backends.

Exact arithmetic uses :class:`fractions.Fraction`; the float backend uses
plain ``float`` together with a declared comparison tolerance.  Python's
numeric tower already gives the mixing rule we want: any operation that
touches a float produces a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[Fraction, float]

RATIONAL = "rational"
FLOAT = "float"
DEFAULT_FLOAT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Backend:
    kind: str = RATIONAL
    tolerance: float = 0.0

    def __post_init__(self):
        if self.kind not in (RATIONAL, FLOAT):
            raise ValueError(f"unknown backend {self.kind!r}")
        if self.kind == RATIONAL and self.tolerance != 0:
            raise ValueError("rational backend carries no tolerance")
        if self.kind == FLOAT and not self.tolerance > 0:
            raise ValueError("float backend needs a strictly positive tolerance")

    @property
    def exact(self) -> bool:
        return self.kind == RATIONAL

    def coerce(self, x) -> Scalar:
        """Bring ``x`` (int, Fraction, float or string) into this backend."""
        if isinstance(x, str):
            x = parse_number(x, exact=self.exact)
        if self.exact:
            if isinstance(x, float):
                raise TypeError(f"float {x!r} given to the rational backend; use a 'p/q' string")
            return Fraction(x)
        return float(x)

    def eq(self, x: Scalar, y: Scalar) -> bool:
        if self.exact:
            return x == y
        return abs(x - y) <= self.tolerance * max(1.0, abs(x), abs(y))

    def le(self, x: Scalar, y: Scalar) -> bool:
        return x <= y or self.eq(x, y)

    def lt(self, x: Scalar, y: Scalar) -> bool:
        return x < y and not self.eq(x, y)


EXACT = Backend()


def float_backend(tolerance: float = DEFAULT_FLOAT_TOLERANCE) -> Backend:
    return Backend(FLOAT, tolerance)


def parse_number(text, exact: bool = True) -> Scalar:
    """Parse ``"p/q"``, ``"0.25"``, ``"3"`` or a JSON number.

    With ``exact`` the result is a Fraction; decimal strings are read
    exactly (``"0.1"`` is 1/10).  JSON floats are refused in exact mode
    because their binary value is almost never what was meant.
    """
    if isinstance(text, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(text, int):
        return Fraction(text) if exact else float(text)
    if isinstance(text, float):
        if exact:
            raise TypeError(f"float {text!r} in exact context; write it as a string")
        return text
    if isinstance(text, Fraction):
        return text if exact else float(text)
    if not isinstance(text, str):
        raise TypeError(f"cannot read a number from {text!r}")
    s = text.strip()
    try:
        value = Fraction(s)
    except (ValueError, ZeroDivisionError) as err:
        if not exact:
            try:
                return float(s)
            except ValueError:
                pass
        raise ValueError(f"not a number: {text!r}") from err
    return value if exact else float(value)


def format_number(x: Scalar):
    """JSON form: rationals as ``"p/q"`` strings, floats as JSON numbers."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return float(x)
