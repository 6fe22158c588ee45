"""Randomized cases, an independent integration oracle, and property suites.

Every case is a pure function of ``(seed, index)`` so a suite can be
re-run, split, or replayed from a single violation record.
"""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import calculus, ostrowski
from .calculus import FunctionSpec, Integrand, delta_integral, h2_closed_form, h_k
from .polynomial import Polynomial
from .scalars import EXACT, FLOAT, RATIONAL, Backend, format_number, parse_number
from .timescale import Interval, Point, TimeScale, _normalize, build_timescale

FAMILIES = ("integer-slice", "q-lattice", "hybrid-discrete", "real-interval", "hybrid")
DISCRETE_FAMILIES = ("integer-slice", "q-lattice", "hybrid-discrete")
CANONICAL_FAMILIES = ("integer-slice", "q-lattice", "real-interval")
LAMBDA_CHOICES = (
    Fraction(0), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(3, 4), Fraction(1),
)
Q_CHOICES = (Fraction(3, 2), Fraction(2), Fraction(3))
SUITES = ("identity", "inequality", "calculus-rules", "closed-forms", "sharpness", "gruss", "mode-agreement")
MAX_REDRAWS = 20


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    cases: int = 100
    scale_families: tuple = FAMILIES
    max_points: int = 64
    poly_degree_max: int = 5
    backend: str = RATIONAL
    tol_identity: float = 1e-10
    tol_inequality: float = 1e-9
    tol_closed_form: float = 1e-12
    float_tolerance: float = 1e-12
    lambda_choices: tuple = LAMBDA_CHOICES
    uniform_lambda_prob: float = 0.25
    normalize_float: bool = True

    def __post_init__(self):
        if self.cases <= 0:
            raise ValueError("cases must be positive")
        if not self.scale_families:
            raise ValueError("scale_families is empty")
        unknown = set(self.scale_families) - set(FAMILIES)
        if unknown:
            raise ValueError(f"unknown scale families {sorted(unknown)}")
        if self.max_points < 3:
            raise ValueError("max_points must be at least 3")
        if self.poly_degree_max < 0:
            raise ValueError("poly_degree_max must be nonnegative")
        if self.backend not in (RATIONAL, FLOAT):
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.backend == FLOAT and min(self.tol_identity, self.tol_inequality, self.tol_closed_form) <= 0:
            raise ValueError("float tolerances must be positive")

    @property
    def scale_backend(self) -> Backend:
        return EXACT if self.backend == RATIONAL else Backend(FLOAT, self.float_tolerance)

    def to_json(self) -> dict:
        doc = asdict(self)
        doc["scale_families"] = list(self.scale_families)
        doc["lambda_choices"] = [str(x) for x in self.lambda_choices]
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> SuiteConfig:
        doc = dict(doc)
        doc["scale_families"] = tuple(doc["scale_families"])
        doc["lambda_choices"] = tuple(Fraction(x) for x in doc["lambda_choices"])
        return cls(**doc)


# -- cases -----------------------------------------------------------------


@dataclass
class Case:
    index: int
    family: str
    scale: TimeScale
    fn: FunctionSpec
    a: object
    b: object
    lam: object
    t: object

    @property
    def params(self) -> ostrowski.KernelParams:
        return ostrowski.kernel_params(self.scale, self.a, self.b, self.lam, self.t)

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "family": self.family,
            "scale": self.scale.to_spec(),
            "fn": self.fn.to_json(),
            "a": format_number(self.a),
            "b": format_number(self.b),
            "lambda": format_number(self.lam),
            "t": format_number(self.t),
        }

    @classmethod
    def from_json(cls, doc: dict) -> Case:
        T = build_timescale(doc["scale"])
        num = lambda v: T.backend.coerce(parse_number(v, exact=T.backend.exact))  # noqa: E731
        return cls(
            doc["index"], doc["family"], T, FunctionSpec.from_json(doc["fn"]),
            num(doc["a"]), num(doc["b"]), num(doc["lambda"]), num(doc["t"]),
        )


def case_rng(seed: int, index: int, salt: str = "") -> random.Random:
    # str seeds go through sha512, so this is stable across runs and platforms
    return random.Random(f"tscalc:{seed}:{index}:{salt}")


def _rat(rng, lo, hi, den_max=4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den_max))


def _grid(rng, u, v, k_max=8) -> Fraction:
    k = rng.randint(1, k_max)
    return u + (v - u) * Fraction(rng.randint(0, k), k)


def random_scale(rng, family: str, max_points: int) -> TimeScale:
    """An exact-rational scale of the given family."""
    if family == "integer-slice":
        start = rng.randint(-10, 10)
        n = rng.randint(3, max_points)
        return TimeScale(tuple(Point(Fraction(start + k)) for k in range(n)))
    if family == "q-lattice":
        q = rng.choice(Q_CHOICES)
        m = rng.randint(0, 3)
        n = rng.randint(m + 2, m + min(8, max_points - 1))
        return TimeScale(tuple(Point(q**k) for k in range(m, n + 1)))
    if family == "hybrid-discrete":
        x = _rat(rng, -20, 20)
        pts = [x]
        for _ in range(rng.randint(3, max_points) - 1):
            x += Fraction(rng.randint(1, 8), rng.randint(1, 4))
            pts.append(x)
        return TimeScale(tuple(Point(p) for p in pts))
    if family == "real-interval":
        lo = _rat(rng, -20, 20)
        return TimeScale((Interval(lo, lo + Fraction(rng.randint(1, 24), rng.randint(1, 4))),))
    if family == "hybrid":
        n_comp = rng.randint(2, min(6, max_points))
        kinds = [rng.choice("IP") for _ in range(n_comp)]
        kinds[rng.randrange(n_comp)] = "I"
        if "P" not in kinds:
            kinds[(kinds.index("I") + 1) % n_comp] = "P"
        x = _rat(rng, -10, 10)
        comps = []
        for kind in kinds:
            if kind == "I":
                hi = x + Fraction(rng.randint(1, 8), rng.randint(1, 4))
                comps.append(Interval(x, hi))
                x = hi
            else:
                comps.append(Point(x))
            x += Fraction(rng.randint(1, 6), rng.randint(1, 3))
        return TimeScale(tuple(comps))
    raise ValueError(f"unknown family {family!r}")


def random_member(rng, T: TimeScale):
    c = rng.choice(T.components)
    if isinstance(c, Point):
        return c.x
    return _grid(rng, c.lo, c.hi)


def _nondegenerate(T: TimeScale, a, b) -> bool:
    if not a < b:
        return False
    n_points = 0
    for kind, *_ in T.walk(a, b):
        if kind == "dense":
            return True
        n_points += 1
    return n_points >= 2  # two right-scattered points in [a, b) plus b itself


def random_poly(rng, degree_max: int) -> FunctionSpec:
    d = rng.randint(0, degree_max)
    return FunctionSpec.polynomial([Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(d + 1)])


def random_lambda(rng, config: SuiteConfig) -> Fraction:
    if rng.random() < config.uniform_lambda_prob:
        return Fraction(rng.randint(0, 10**6), 10**6)
    return rng.choice(config.lambda_choices)


def _pick_window_point(rng, T: TimeScale, lo, hi):
    atoms = T.members_between(lo, hi)
    if not atoms:
        return None
    atom = rng.choice(atoms)
    if atom[0] == "point":
        return atom[1]
    return _grid(rng, atom[1], atom[2])


def generate_case(seed: int, index: int, config: SuiteConfig, families=None) -> Case | None:
    """Draw case ``index`` of the stream ``seed``; None if it had to be skipped.

    The scale is drawn exactly and converted at the end when the config
    asks for the float backend, so both backends see the same geometry.
    """
    families = tuple(families or config.scale_families)
    if not families:
        raise ValueError("no scale families to draw from")
    rng = case_rng(seed, index)
    family = rng.choice(families)
    T = random_scale(rng, family, config.max_points)
    if rng.random() < 0.4:
        a, b = T.min, T.max
    else:
        for _ in range(MAX_REDRAWS):
            a, b = sorted((random_member(rng, T), random_member(rng, T)))
            if _nondegenerate(T, a, b):
                break
        else:
            a, b = T.min, T.max
    f = random_poly(rng, config.poly_degree_max)
    for _ in range(MAX_REDRAWS):
        lam = random_lambda(rng, config)
        offset = lam * (b - a) / 2
        t = _pick_window_point(rng, T, a + offset, b - offset)
        if t is not None:
            break
    else:
        return None
    if config.backend == FLOAT and config.normalize_float:
        f = f.scaled(_unit_scale(f, T, a, b))
    case = Case(index, family, T, f, a, b, lam, t)
    if config.backend == FLOAT:
        case = to_float(case, config.float_tolerance)
    return case


def _unit_scale(f: FunctionSpec, T: TimeScale, a, b) -> Fraction:
    """Power of two 2^-k with 2^k >= max |f| over the atoms of [a, b].

    Both sides of every bound are homogeneous in f, so this changes no
    verdict; it only keeps absolute float tolerances meaningful.
    """
    xs = [a, b]
    for atom in T.members_between(a, b):
        xs += list(atom[1:])
    peak = max(abs(f(x)) for x in xs)
    k = max(0, math.ceil(math.log2(peak))) if peak > 0 else 0
    return Fraction(1, 2**k)


def to_float(case: Case, tolerance: float) -> Case:
    be = Backend(FLOAT, tolerance)
    T = case.scale.to_backend(be)
    return Case(case.index, case.family, T, case.fn, T.member(float(case.a)), T.member(float(case.b)),
                float(case.lam), T.member(float(case.t)))


# -- the oracle ------------------------------------------------------------


def oracle_integral(f, T: TimeScale, a, b, tol: float = 1e-10, max_level: int = 14):
    """Δ-integral by a route that shares nothing with :func:`delta_integral`.

    The scale is flattened into an explicit sorted list of atoms (isolated
    points and interval endpoints) and walked left to right: a gap between
    consecutive atoms is either a dense span, integrated by midpoint sums
    on 2^k cells with Richardson extrapolation until two levels agree, or
    a jump, contributing value times gap length.
    """
    integrand = f if isinstance(f, Integrand) else calculus.of(f)
    a, b = T.member(a), T.member(b)
    zero = T.backend.coerce(0)
    if a == b:
        return zero
    if a > b:
        return -oracle_integral(integrand, T, b, a, tol, max_level)
    atoms, dense = [], set()
    for c in T.components:
        if isinstance(c, Point):
            atoms.append(c.x)
        else:
            atoms += [c.lo, c.hi]
            dense.add((c.lo, c.hi))
    total = zero
    for x, y in zip(atoms, atoms[1:]):
        if (x, y) in dense:
            u, v = max(x, a), min(y, b)
            if u < v:
                cuts = integrand.breakpoints(u, v)
                for p, q in zip(cuts, cuts[1:]):
                    total += _romberg_midpoint(integrand, p, q, tol, max_level, T.backend.exact)
        elif a <= x < b:
            total += integrand.at(x, y) * (y - x)
    return total


def _romberg_midpoint(f: Integrand, u, v, tol, max_level, exact):
    width = v - u
    half = Fraction(1, 2) if exact else 0.5
    rows = []
    for k in range(max_level + 1):
        n = 2**k
        h = width / n
        m = h * sum(f.at(x, x) for x in (u + (i + half) * h for i in range(n)))
        row = [m]
        for j in range(1, k + 1):
            row.append(row[j - 1] + (row[j - 1] - rows[-1][j - 1]) / (4**j - 1))
        if rows:
            diff = abs(row[-1] - rows[-1][-1])
            if (exact and diff == 0 and k >= 3) or (not exact and diff <= tol * max(1.0, abs(row[-1]))):
                return row[-1]
        rows.append(row)
    return rows[-1][-1]


# -- suite machinery ----------------------------------------------------------


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    skipped: int = 0
    violations: list = field(default_factory=list)
    max_residual: object = None
    min_margin: object = None
    notes: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "pass" if not self.violations else "fail"

    def observe(self, residual=None, margin=None):
        if residual is not None and (self.max_residual is None or residual > self.max_residual):
            self.max_residual = residual
        if margin is not None and (self.min_margin is None or margin < self.min_margin):
            self.min_margin = margin

    def to_json(self) -> dict:
        fmt = lambda v: None if v is None else format_number(v)  # noqa: E731
        return {
            "name": self.name,
            "cases": self.cases,
            "skipped": self.skipped,
            "violations": self.violations,
            "max_residual": fmt(self.max_residual),
            "min_margin": fmt(self.min_margin),
            "notes": {k: (fmt(v) if isinstance(v, (Fraction, float)) else v) for k, v in self.notes.items()},
            "verdict": self.verdict,
        }


@dataclass
class SuiteReport:
    seed: int
    config: SuiteConfig
    suites: list

    @property
    def verdict(self) -> str:
        return "pass" if all(s.verdict == "pass" for s in self.suites) else "fail"

    def to_json(self) -> dict:
        return {
            "schema": "tscalc/suite-report/1",
            "seed": self.seed,
            "backend": self.config.backend,
            **({"tolerance": self.config.float_tolerance} if self.config.backend == FLOAT else {}),
            "config": self.config.to_json(),
            "suites": [s.to_json() for s in self.suites],
            "verdict": self.verdict,
        }


@dataclass
class Outcome:
    residual: object = None
    margin: object = None
    violation: str | None = None
    skipped: bool = False
    notes: dict = field(default_factory=dict)


def _num(T: TimeScale, v):
    return T.backend.coerce(parse_number(v, exact=T.backend.exact))


def _close(T: TimeScale, x, y, tol, scale=1):
    if T.backend.exact:
        return x == y
    return abs(x - y) <= tol * max(1.0, abs(scale))


# Each suite is a pair: prepare(case, rng, config) -> JSON params,
# evaluate(case, params, config) -> Outcome.  Violation records keep both.


def _prep_none(case, rng, config):
    return {}


def _eval_identity(case: Case, params, config) -> Outcome:
    sides = ostrowski.montgomery_sides(case.fn, case.scale, case.params)
    r = abs(sides.residual)
    scale = max(abs(sides.lhs), abs(sides.mean), abs(sides.kernel_term))
    bad = not _close(case.scale, sides.lhs, sides.rhs, config.tol_identity, scale)
    return Outcome(residual=r, violation=f"residual {sides.residual}" if bad else None)


def _eval_inequality(case: Case, params, config) -> Outcome:
    rep = ostrowski.ostrowski_bound(case.fn, case.scale, case.params, "direct")
    tol = 0 if case.scale.backend.exact else config.tol_inequality
    bad = rep.margin < -tol
    return Outcome(margin=rep.margin, violation=f"lhs {rep.lhs} > rhs {rep.rhs}" if bad else None)


def _prep_rules(case: Case, rng, config):
    T = case.scale
    g = random_poly(rng, config.poly_degree_max)
    alpha, beta = _rat(rng, -9, 9, 5), _rat(rng, -9, 9, 5)
    c = random_member(rng, T)
    a, b = (case.a, case.b) if rng.random() < 0.5 else (case.b, case.a)
    fmt = format_number
    conv = (lambda x: x) if T.backend.exact else float
    return {"g": g.to_json(), "alpha": str(alpha), "beta": str(beta),
            "a": fmt(conv(a)), "b": fmt(conv(b)), "c": fmt(conv(c))}


def calculus_rule_residuals(f: FunctionSpec, g: FunctionSpec, T: TimeScale, a, b, c, alpha, beta) -> dict:
    """Left minus right for each Δ-integral rule, plus the σ-integral identity."""
    I = lambda h, lo=a, hi=b: delta_integral(h, T, lo, hi)  # noqa: E731
    comb = FunctionSpec(f.poly * alpha + g.poly * beta)
    fg = f.poly * g.poly
    ident = Polynomial([0, 1])
    return {
        "linearity": I(comb) - (alpha * I(f) + beta * I(g)),
        "reversal": I(f) + I(f, b, a),
        "additivity": I(f) - (I(f, a, c) + I(f, c, b)),
        "by-parts": I(calculus.product(calculus.of(f), calculus.delta_of(g)))
        - (fg(b) - fg(a) - I(calculus.product(calculus.delta_of(f), calculus.sigma_of(g)))),
        "zero-length": I(f, a, a),
        "sigma-identity": I(calculus.sigma_of(ident)) - (b**2 - a**2 - I(ident)),
    }


def _eval_rules(case: Case, params, config) -> Outcome:
    T = case.scale
    g = FunctionSpec.from_json(params["g"])
    alpha, beta = Fraction(params["alpha"]), Fraction(params["beta"])
    if not T.backend.exact:
        alpha, beta = float(alpha), float(beta)
    a, b, c = (_num(T, params[k]) for k in ("a", "b", "c"))
    res = calculus_rule_residuals(case.fn, g, T, a, b, c, alpha, beta)
    worst = max(abs(v) for v in res.values())
    scale = max(1, *(abs(f) for f in (case.fn(a), case.fn(b), g(a), g(b))), abs(b) ** 2)
    failed = [k for k, v in res.items() if not _close(T, v, 0, config.tol_identity, scale)]
    return Outcome(residual=worst, violation=f"rules failed: {failed}" if failed else None)


def _prep_closed(case: Case, rng, config):
    T = case.scale
    members = [random_member(rng, T) for _ in range(10)]
    conv = (lambda x: x) if T.backend.exact else float
    return {"pairs": [[format_number(conv(x)), format_number(conv(y))] for x, y in zip(members[::2], members[1::2])]}


def _exponent(q, x) -> int:
    k = round(math.log(float(x)) / math.log(float(q)))
    if q**k != x:
        raise ValueError(f"{x} is not a power of {q}")
    return k


def _eval_closed(case: Case, params, config) -> Outcome:
    T = case.scale
    fam = T.family
    if fam is None or case.family == "hybrid-discrete":
        return Outcome(skipped=True)
    tol = config.tol_closed_form
    worst = 0
    problems = []
    notes = {}
    for x, y in params["pairs"]:
        x, y = _num(T, x), _num(T, y)
        rec = h_k(T, 2, x, y).value
        closed = h2_closed_form(fam, x, y)
        worst = max(worst, abs(rec - closed))
        if not _close(T, rec, closed, tol, max(abs(rec), abs(closed))):
            problems.append(f"h2({x},{y}) recursion {rec} != closed {closed}")
    p = case.params
    if fam[0] == "reals":
        rep = ostrowski.ostrowski_bound(case.fn, T, p, "direct")
        expected = ostrowski.reals_bound(rep.M, p.a, p.b, p.lam, p.t)
        worst = max(worst, abs(rep.rhs - expected))
        if not _close(T, rep.rhs, expected, tol, expected):
            problems.append(f"reals formula {expected} != engine {rep.rhs}")
    elif fam[0] == "integers":
        n, i = p.b - p.a, p.t - p.a
        half = p.lam * n / 2
        if T.backend.exact and half.denominator == 1:
            rep = ostrowski.ostrowski_bound(case.fn, T, p, "four-h2")
            expected = ostrowski.integers_bound(rep.M, n, i, p.lam)
            worst = max(worst, abs(rep.rhs - expected))
            if rep.rhs != expected:
                problems.append(f"integers formula {expected} != engine {rep.rhs}")
        elif T.backend.exact:
            direct = ostrowski.ostrowski_bound(case.fn, T, p, "direct")
            closed = ostrowski.ostrowski_bound(case.fn, T, p, ostrowski.FOUR_H2_CLOSED)
            # measured, not asserted: the extended binomial may undercut the kernel integral
            notes["closed_minus_direct"] = closed.rhs - direct.rhs
    elif fam[0] == "qlattice" and T.backend.exact:
        q = fam[1]
        m, n = _exponent(q, p.a), _exponent(q, p.b)
        printed = ostrowski.qlattice_h2_terms(q, m, n, p.lam, p.t)
        engine = ostrowski.four_h2_terms(T, p, closed=True)
        worst = max([worst] + [abs(u - v) for u, v in zip(printed, engine)])
        if printed != engine:
            problems.append(f"q-lattice terms {printed} != {engine}")
    return Outcome(residual=worst, violation="; ".join(problems) or None, notes=notes)


def _eval_sharpness(case: Case, params, config) -> Outcome:
    T, p = case.scale, case.params
    ident = FunctionSpec.identity()
    if p.split_hi not in T:
        return Outcome(skipped=True)
    try:
        holds = ostrowski.sharpness_condition(T, p.a, p.b, p.lam)
    except ostrowski.SharpnessUndefined:
        return Outcome(skipped=True)
    if not holds:
        return Outcome(notes={"condition_false": 1})
    targets = [p.split_hi] + ([p.a] if p.lam == 0 else [])
    worst, bad = 0, []
    for t in targets:
        rep = ostrowski.ostrowski_bound(ident, T, ostrowski.kernel_params(T, p.a, p.b, p.lam, t))
        worst = max(worst, abs(rep.lhs - rep.rhs))
        if not rep.equality_holds or (t == p.split_hi and not rep.equality_case):
            bad.append(f"t={t}: lhs {rep.lhs} != rhs {rep.rhs}")
    return Outcome(residual=worst, violation="; ".join(bad) or None, notes={"condition_true": 1})


def _eval_gruss(case: Case, params, config) -> Outcome:
    T, p = case.scale, case.params
    rep = ostrowski.gruss_check(case.fn, T, p.a, p.b, p.t)
    tol = 0 if T.backend.exact else config.tol_inequality
    problems = []
    if rep.margin < -tol:
        problems.append(f"lhs {rep.lhs} > rhs {rep.rhs}")
    ident = ostrowski.gruss_check(FunctionSpec.identity(), T, p.a, p.b, p.t)
    if not _close(T, ident.lhs, 0, config.tol_identity, p.b):
        problems.append(f"identity lhs {ident.lhs} != 0")
    return Outcome(margin=rep.margin, residual=ident.lhs, violation="; ".join(problems) or None)


def with_split_points(T: TimeScale, p: ostrowski.KernelParams) -> TimeScale:
    extra = [Point(x) for x in (p.split_lo, p.split_hi) if x not in T]
    if not extra:
        return T
    return TimeScale(_normalize(list(T.components) + extra, T.backend), T.backend)


def _eval_modes(case: Case, params, config) -> Outcome:
    p = case.params
    T = with_split_points(case.scale, p)
    p = ostrowski.kernel_params(T, p.a, p.b, p.lam, p.t)
    direct = ostrowski.ostrowski_bound(case.fn, T, p, "direct")
    split = ostrowski.ostrowski_bound(case.fn, T, p, ostrowski.FOUR_H2_MEMBERS)
    d = abs(direct.rhs - split.rhs)
    bad = not _close(T, direct.rhs, split.rhs, config.tol_closed_form, direct.rhs)
    return Outcome(residual=d, violation=f"direct {direct.rhs} != four-h2 {split.rhs}" if bad else None)


SUITE_TABLE = {
    "identity": (_prep_none, _eval_identity, None),
    "inequality": (_prep_none, _eval_inequality, None),
    "calculus-rules": (_prep_rules, _eval_rules, None),
    "closed-forms": (_prep_closed, _eval_closed, CANONICAL_FAMILIES),
    "sharpness": (_prep_none, _eval_sharpness, None),
    "gruss": (_prep_none, _eval_gruss, None),
    "mode-agreement": (_prep_none, _eval_modes, None),
}


def _families_for(name: str, config: SuiteConfig):
    allowed = SUITE_TABLE[name][2]
    fams = tuple(f for f in config.scale_families if allowed is None or f in allowed)
    if not fams:
        raise ValueError(f"suite {name!r} has no usable families in {config.scale_families}")
    return fams


def run_case(name: str, index: int, config: SuiteConfig):
    """(case, params, outcome) for one index, or (None, None, skipped)."""
    prepare, evaluate, _ = SUITE_TABLE[name]
    case = generate_case(config.seed, index, config, _families_for(name, config))
    if case is None:
        return None, None, Outcome(skipped=True)
    params = prepare(case, case_rng(config.seed, index, name), config)
    return case, params, evaluate(case, params, config)


def run_suite(name: str, config: SuiteConfig) -> SuiteReport:
    if name not in SUITE_TABLE:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SuiteReport(config.seed, config, [_run_one(name, config)])


def run_suites(names, config: SuiteConfig) -> SuiteReport:
    for name in names:
        if name not in SUITE_TABLE:
            raise ValueError(f"unknown suite {name!r}")
    return SuiteReport(config.seed, config, [_run_one(n, config) for n in names])


def _run_one(name: str, config: SuiteConfig) -> SuiteResult:
    result = SuiteResult(name)
    for index in range(config.cases):
        case, params, out = run_case(name, index, config)
        if out.skipped:
            result.skipped += 1
            continue
        result.cases += 1
        result.observe(out.residual, out.margin)
        for k, v in out.notes.items():
            if k == "closed_minus_direct":
                prev = result.notes.get("min_closed_minus_direct")
                result.notes["min_closed_minus_direct"] = v if prev is None else min(prev, v)
            else:
                result.notes[k] = result.notes.get(k, 0) + v
        if out.violation:
            result.violations.append(
                {"index": index, "case": case.to_json(), "params": params, "detail": out.violation}
            )
    return result


def replay(name: str, record: dict, config: SuiteConfig | None = None) -> Outcome:
    """Re-evaluate a violation record from its embedded inputs alone."""
    config = config or SuiteConfig()
    case = Case.from_json(record["case"])
    return SUITE_TABLE[name][1](case, record.get("params", {}), config)
