"""Acceptance gate: eleven criteria, one pass/fail line each.

The lines are printed in the "acceptance gate" section of the pytest
terminal summary (and to stdout with ``-s``).
"""

from __future__ import annotations

import json
import random
import time
from fractions import Fraction as F
from pathlib import Path

import pytest

from tscalc import cli, ostrowski
from tscalc.calculus import FunctionSpec, h2_closed_form, h_k
from tscalc.ostrowski import kernel_params, ostrowski_bound
from tscalc.scalars import float_backend
from tscalc.timescale import integers, interval, qlattice
from tscalc.verifier import DISCRETE_FAMILIES, FAMILIES, SuiteConfig, random_poly, run_suite

from conftest import record_criterion

pytestmark = pytest.mark.acceptance

SEED = 20240601
LAMBDAS = (F(0), F(1, 4), F(1, 3), F(1, 2), F(3, 4), F(1))
HERE = Path(__file__).resolve().parent


def gate(number, title, passed, detail):
    record_criterion(number, title, passed, detail)
    print(f"criterion {number} [{'PASS' if passed else 'FAIL'}] {title}: {detail}")
    assert passed, detail


def timed_suite(name, cases, **kw):
    """Run ``name`` until ``cases`` cases were evaluated (skips do not count)."""
    drawn = cases
    while True:
        start = time.perf_counter()
        result = run_suite(name, SuiteConfig(seed=SEED, cases=drawn, **kw)).suites[0]
        secs = time.perf_counter() - start
        if result.cases >= cases:
            return result, secs
        drawn += cases - result.cases


def test_c01_montgomery_identity():
    r, secs = timed_suite("identity", cases=500, scale_families=DISCRETE_FAMILIES, max_points=64,
                          poly_degree_max=5, lambda_choices=LAMBDAS, uniform_lambda_prob=0)
    ok = r.cases == 500 and not r.violations and r.max_residual == 0 and secs < 10
    gate(1, "Montgomery identity", ok,
         f"{r.cases} rational discrete cases, max residual {r.max_residual}, {len(r.violations)} violations, {secs:.2f}s (< 10s)")


def test_c02_inequality():
    r, secs = timed_suite("inequality", cases=1000, scale_families=FAMILIES, backend="float")
    ok = r.cases == 1000 and not r.violations and r.min_margin >= -1e-9 and secs < 30
    gate(2, "Ostrowski inequality (float, direct)", ok,
         f"{r.cases} mixed cases ({r.skipped} skipped draws), min margin {r.min_margin:.3e} (>= -1e-9), {len(r.violations)} violations, {secs:.2f}s (< 30s)")


def _pairs(rng, pts, count):
    return [(rng.choice(pts), rng.choice(pts)) for _ in range(count)]


def test_c03_h2_closed_forms():
    rng = random.Random(f"acceptance:{SEED}:h2")
    bad = []
    # integers: several slices, 200 pairs
    Z = integers(-7, 25)
    for t, s in _pairs(rng, Z.points(), 200):
        if h_k(Z, 2, t, s).value != h2_closed_form("integers", t, s):
            bad.append(("Z", t, s))
    # q-lattices for each q
    for q in (F(3, 2), F(2), F(3)):
        Q = qlattice(q, 0, 8)
        for t, s in _pairs(rng, Q.points(), 200):
            if h_k(Q, 2, t, s).value != h2_closed_form(("qlattice", q), t, s):
                bad.append(("q", q, t, s))
    # reals, float backend, 200 pairs
    R = interval(-10, 10, float_backend())
    worst = 0.0
    for _ in range(200):
        t, s = rng.uniform(-10, 10), rng.uniform(-10, 10)
        diff = abs(h_k(R, 2, t, s).value - h2_closed_form("reals", t, s))
        worst = max(worst, diff)
    ok = not bad and worst <= 1e-12
    gate(3, "closed-form h2", ok, f"Z and q in {{3/2,2,3}} exact ({len(bad)} mismatches), R max diff {worst:.2e} (<= 1e-12)")


def test_c04_classical_sharpness():
    rng = random.Random(f"acceptance:{SEED}:sharp")
    worst = 0.0
    X = FunctionSpec.identity()
    for _ in range(50):
        a = rng.uniform(-50, 50)
        b = a + rng.uniform(0.01, 100)
        R = interval(a, b, float_backend())
        for t in (a, b):
            rep = ostrowski_bound(X, R, kernel_params(R, a, b, 0, t))
            half = (b - a) / 2
            const = (0.25 + 0.25) * (b - a)
            worst = max(worst, abs(rep.lhs - half), abs(rep.rhs - half), abs(const - half))
    exact = interval(F(-3, 7), F(5, 2))
    r_exact = [ostrowski_bound(X, exact, kernel_params(exact, exact.min, exact.max, 0, t)) for t in (exact.min, exact.max)]
    ok_exact = all(r.lhs == r.rhs == (exact.max - exact.min) / 2 for r in r_exact)
    ok = worst <= 1e-12 and ok_exact
    gate(4, "classical sharpness on R", ok, f"f=x, lambda=0, t in {{a,b}}: max |side - (b-a)/2| {worst:.2e}; rational case exact: {ok_exact}")


def test_c05_worked_discrete_case():
    T = integers(0, 4)
    rep = ostrowski_bound(FunctionSpec.polynomial([0, 0, 1]), T, kernel_params(T, 0, 4, 0, 2))
    ok = (rep.lhs, rep.M, rep.rhs) == (F(7, 2), 7, 7)
    gate(5, "worked integer case", ok, f"lhs {rep.lhs}, M {rep.M}, rhs {rep.rhs} (want 7/2, 7, 7)")


def test_c06_reals_formula():
    rng = random.Random(f"acceptance:{SEED}:reals")
    worst = 0.0
    for _ in range(100):
        a = F(rng.randint(-40, 40), rng.randint(1, 4))
        b = a + F(rng.randint(1, 40), rng.randint(1, 4))
        lam = rng.choice(LAMBDAS) if rng.random() < 0.5 else F(rng.randint(0, 1000), 1000)
        lo, hi = a + lam * (b - a) / 2, b - lam * (b - a) / 2
        t = lo + (hi - lo) * F(rng.randint(0, 64), 64)
        f = random_poly(rng, 5)
        R = interval(a, b)
        rep = ostrowski_bound(f, R, kernel_params(R, a, b, lam, t))
        worst = max(worst, abs(rep.rhs - ostrowski.reals_bound(rep.M, a, b, lam, t)))
    ok = worst <= 1e-12
    gate(6, "closed form on R", ok, f"100 cases, max |engine - formula| {float(worst):.2e} (<= 1e-12)")


def test_c07_integers_formula():
    rng = random.Random(f"acceptance:{SEED}:integers")
    done, bad = 0, 0
    while done < 100:
        n = rng.randint(1, 40)
        lam = rng.choice(LAMBDAS[1:]) if rng.random() < 0.8 else F(rng.randint(0, n), n)
        if (lam * n / 2).denominator != 1:
            continue
        lo, hi = lam * n / 2, n - lam * n / 2
        i = rng.randint(int(lo), int(hi))
        T = integers(0, n)
        f = random_poly(rng, 5)
        rep = ostrowski_bound(f, T, kernel_params(T, 0, n, lam, i), "four-h2")
        bad += rep.rhs != ostrowski.integers_bound(rep.M, n, i, lam)
        done += 1
    gate(7, "closed form on Z (n*lambda even)", bad == 0, f"{done} cases, {bad} mismatches, exact")


def test_c08_mode_agreement():
    r, _ = timed_suite("mode-agreement", cases=200, scale_families=DISCRETE_FAMILIES)
    ok = r.cases == 200 and not r.violations and r.max_residual == 0
    gate(8, "direct vs four-h2 agreement", ok, f"{r.cases} discrete cases, max |difference| {r.max_residual}, {len(r.violations)} violations")


def test_c09_calculus_rules():
    r, _ = timed_suite("calculus-rules", cases=300, scale_families=DISCRETE_FAMILIES)
    ok = r.cases == 300 and not r.violations and r.max_residual == 0
    gate(9, "integration rules and sigma identity", ok, f"{r.cases} rational discrete cases, max residual {r.max_residual}, {len(r.violations)} violations")


def test_c10_gruss():
    r, _ = timed_suite("gruss", cases=500, scale_families=DISCRETE_FAMILIES)
    ok = r.cases == 500 and not r.violations and r.min_margin >= -1e-9 and r.max_residual == 0
    gate(10, "Gruss-type bound", ok,
         f"{r.cases} discrete cases, min margin {r.min_margin}, identity lhs max {r.max_residual}, {len(r.violations)} violations")


def test_c11_cli_contract(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(HERE)
    golden = HERE / "golden"
    table = json.loads((golden / "commands.json").read_text())
    problems = []
    covered = set()
    for name, argv in table.items():
        out = tmp_path / name
        if cli.main(argv + ["-o", str(out)]) != 0 or out.read_bytes() != (golden / name).read_bytes():
            problems.append(f"golden {name}")
        covered.add(argv[0])
        if name.endswith(".json"):
            again = tmp_path / f"again-{name}"
            if cli.main(["verify", str(golden / name), "-o", str(again)]) != 0 or again.read_bytes() != out.read_bytes():
                problems.append(f"round trip {name}")
    missing = set(cli.RUNNERS) - covered
    if missing:
        problems.append(f"no golden for {sorted(missing)}")
    doc = json.loads((golden / "bound_z4.json").read_text())
    doc["rhs"], doc["margin"] = "3", "-1/2"
    corrupt = tmp_path / "corrupt.json"
    corrupt.write_text(json.dumps(doc, indent=2) + "\n")
    if cli.main(["verify", str(corrupt)]) != 1:
        problems.append("corrupted bound did not exit 1")
    if cli.main(["bound", "--scale", "fixtures/overlapping.json", "--fn", "fixtures/square.json", "--t", "1"]) != 2:
        problems.append("malformed spec did not exit 2")
    capsys.readouterr()
    gate(11, "CLI contract", not problems,
         f"{len(table)} golden files over {len(covered)} commands, corrupted bound exit 1, malformed spec exit 2"
         + (f"; problems: {problems}" if problems else ""))
