"""Calculus on finite time scales and generalized Ostrowski-type bounds."""

from __future__ import annotations

from .calculus import FunctionSpec, delta_derivative, delta_integral, h2_closed_form, h_k
from .ostrowski import (
    BoundReport,
    KernelParams,
    gruss_check,
    kernel_params,
    m_sup,
    montgomery_sides,
    ostrowski_bound,
    sharpness_condition,
    special_case_bound,
)
from .scalars import EXACT, Backend, float_backend, format_number, parse_number
from .timescale import TimeScale, build_timescale, from_points, integers, interval, qlattice
from .verifier import SuiteConfig, oracle_integral, run_suite

__all__ = [
    "Backend", "BoundReport", "EXACT", "FunctionSpec", "KernelParams", "SuiteConfig", "TimeScale",
    "build_timescale", "delta_derivative", "delta_integral", "float_backend", "format_number",
    "from_points", "gruss_check", "h2_closed_form", "h_k", "integers", "interval", "kernel_params",
    "m_sup", "montgomery_sides", "oracle_integral", "ostrowski_bound", "parse_number", "qlattice",
    "run_suite", "sharpness_condition", "special_case_bound",
]
__version__ = "0.1.0"
