"""Print the concrete cases where literal readings of the classical bounds fail.

1. sup |f^Δ| over the open set (a, b) misses f^Δ(a) when a is right-scattered.
2. The integer closed form with split points off the lattice undercuts lhs.
3. The written-out q-lattice polynomial drifts from its own four h_2 terms.
4. The sharpness condition cannot hold for λ > 0.
"""

from __future__ import annotations

from fractions import Fraction as F

from tscalc import ostrowski
from tscalc.calculus import FunctionSpec, delta_integral
from tscalc.ostrowski import kernel_integrand, kernel_params, m_sup, ostrowski_bound, sharpness_sides
from tscalc.timescale import integers, interval, qlattice


def open_sup() -> None:
    T = integers(0, 2)
    f = FunctionSpec.polynomial([0, 15, -5])
    p = kernel_params(T, 0, 2, 0, 0)
    rep = ostrowski_bound(f, T, p)
    m_open = m_sup(f, T, 0, 2, include_left=False)
    rhs_open = m_open / 2 * delta_integral(kernel_integrand(p, absolute=True), T, 0, 2)
    print(f"[1] Z∩[0,2], f=15t-5t², t=0: lhs {rep.lhs}; open-set M {m_open} gives rhs {rhs_open}; "
          f"[a,b) M {rep.M} gives rhs {rep.rhs}")


def integer_closed_form() -> None:
    T = integers(0, 4)
    f = FunctionSpec.polynomial([0, F(-29, 6), F(23, 4), F(-13, 6), F(1, 4)])  # values 0,-1,0,-1,-2
    p = kernel_params(T, 0, 4, F(1, 4), 2)
    direct = ostrowski_bound(f, T, p)
    closed = ostrowski_bound(f, T, p, ostrowski.FOUR_H2_CLOSED)
    print(f"[2] n=4, λ=1/4, i=2: lhs {direct.lhs}; closed form rhs {closed.rhs} "
          f"(terms {[str(c) for c in closed.components]}); kernel rhs {direct.rhs}")


def qlattice_drift() -> None:
    q, m, n, lam, t = F(2), 0, 4, F(1, 2), F(8)
    A, B = q**m, q**n
    terms = sum(ostrowski.qlattice_h2_terms(q, m, n, lam, t))
    printed = (2 * t**2 - (1 + q) * (A + B) * t + (2 * lam**2 - F(3, 2) * lam + 1) * (A * A * q + B * B * q)
               - lam * (3 - 2 * lam) * A * B * q + lam / 2 * (A - B) ** 2) / (1 + q)
    print(f"[3] q=2, a=1, b=16, λ=1/2, t=8: sum of h_2 terms {terms}, written-out polynomial {printed}, "
          f"difference {terms - printed}")


def sharpness() -> None:
    for T, a, b, lam in [(interval(0, 1), 0, 1, F(1, 2)), (integers(0, 8), 0, 8, F(1, 2)), (qlattice(2, 0, 4), 1, 16, F(2, 15))]:
        left, integral = sharpness_sides(T, a, b, lam)
        print(f"[4] [{a},{b}], λ={lam}: left side {left} vs integral {integral} -> holds {left <= integral}")


if __name__ == "__main__":
    open_sup()
    integer_closed_form()
    qlattice_drift()
    sharpness()
