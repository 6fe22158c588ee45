"""Command line: single evaluations, property suites, report verification.

Exit codes: 0 success, 1 a mathematical claim failed (or a report did not
reproduce), 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import ostrowski, verifier
from .calculus import FunctionSpec, FunctionSpecError, h2_closed_form, h_k
from .scalars import FLOAT, RATIONAL, Backend, format_number, parse_number
from .timescale import NotInScale, ScaleSpecError, TimeScale, build_timescale

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2
COMMANDS = ("bound", "identity", "h2", "sharpness", "gruss", "suite", "verify")
KINDS = ostrowski.SPECIAL_KINDS

CSV_HEADERS = {
    "bound": ["command", "backend", "mode", "lhs", "rhs", "margin", "M",
              "h2_1", "h2_2", "h2_3", "h2_4", "sharpness_condition", "equality_case", "equality_holds"],
    "identity": ["command", "backend", "lhs", "rhs", "residual", "mean", "kernel_term", "holds"],
    "h2": ["command", "backend", "k", "t", "s", "recursive", "closed_form", "family", "agree"],
    "sharpness": ["command", "backend", "a", "b", "lambda", "lhs", "integral", "result"],
    "suite": ["command", "backend", "seed", "suite", "cases", "skipped", "violations",
              "max_residual", "min_margin", "verdict"],
}
CSV_HEADERS["gruss"] = CSV_HEADERS["bound"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class CommandRequest:
    command: str
    inputs: dict = field(default_factory=dict)
    output: str | None = None
    format: str = "json"


# -- argument parsing --------------------------------------------------------


def _lambda(text: str) -> str:
    try:
        value = parse_number(text)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"lambda must lie in [0, 1], got {text}")
    return text


def _number(text: str) -> str:
    try:
        parse_number(text, exact=False)
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tscalc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, scale=True, fn=False):
        if scale:
            p.add_argument("--scale", required=True, help="ScaleSpec JSON file or inline document")
            p.add_argument("--backend", choices=[RATIONAL, FLOAT], help="convert the scale to this backend")
        if fn:
            p.add_argument("--fn", required=True, help="FunctionSpec JSON file or inline document")
        p.add_argument("-o", "--output", help="write the report here instead of stdout")
        p.add_argument("--format", choices=["json", "csv"], default="json")

    def ab(p):
        p.add_argument("--a", type=_number, help="left end (default: min of the scale)")
        p.add_argument("--b", type=_number, help="right end (default: max of the scale)")

    p = sub.add_parser("bound", help="generalized Ostrowski bound")
    common(p, fn=True)
    ab(p)
    p.add_argument("--lambda", dest="lam", type=_lambda)
    p.add_argument("--t", type=_number)
    p.add_argument("--mode", choices=["direct", "four-h2", ostrowski.FOUR_H2_CLOSED], default="direct")
    p.add_argument("--kind", choices=KINDS)

    p = sub.add_parser("identity", help="both sides of the generalized Montgomery identity")
    common(p, fn=True)
    ab(p)
    p.add_argument("--lambda", dest="lam", type=_lambda, default="0")
    p.add_argument("--t", type=_number, required=True)

    p = sub.add_parser("h2", help="h_k(t, s) by recursion and (k=2) closed form")
    common(p)
    p.add_argument("--t", type=_number, required=True)
    p.add_argument("--s", type=_number, required=True)
    p.add_argument("--k", type=int, default=2)

    p = sub.add_parser("sharpness", help="evaluate the sharpness condition")
    common(p)
    ab(p)
    p.add_argument("--lambda", dest="lam", type=_lambda, required=True)

    p = sub.add_parser("gruss", help="Ostrowski-Gruss type bound")
    common(p, fn=True)
    ab(p)
    p.add_argument("--t", type=_number, required=True)
    p.add_argument("--gamma", type=_number)
    p.add_argument("--Gamma", type=_number)

    p = sub.add_parser("suite", help="run a randomized property suite")
    common(p, scale=False)
    p.add_argument("--name", required=True, choices=list(verifier.SUITES) + ["all"])
    p.add_argument("--seed", type=int, default=None, help="default: $TSCALC_SEED or 0")
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--backend", choices=[RATIONAL, FLOAT], default=RATIONAL)
    p.add_argument("--families", help="comma-separated subset of " + ",".join(verifier.FAMILIES))

    p = sub.add_parser("verify", help="re-execute a report from its embedded inputs")
    p.add_argument("report")
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    return parser


def _load_doc(text: str, what: str):
    try:
        if text.lstrip().startswith("{"):
            return json.loads(text)
        return json.loads(Path(text).read_text())
    except OSError as err:
        raise UsageError(f"cannot read {what} {text!r}: {err.strerror}") from None
    except json.JSONDecodeError as err:
        raise UsageError(f"{what} is not valid JSON: {err}") from None


def parse_request(argv) -> CommandRequest:
    """Turn argv into a validated :class:`CommandRequest` or raise UsageError."""
    args = build_parser().parse_args(argv)
    cmd = args.command
    req = CommandRequest(cmd, output=args.output, format=args.format)
    if cmd == "verify":
        doc = _load_doc(args.report, "report")
        if not isinstance(doc, dict) or doc.get("command") not in COMMANDS[:-1] or "inputs" not in doc:
            raise UsageError("report lacks 'command'/'inputs'")
        req.inputs = {"report": doc}
        return req
    if cmd == "suite":
        seed = args.seed
        if seed is None:
            env = os.environ.get("TSCALC_SEED", "0")
            try:
                seed = int(env)
            except ValueError:
                raise UsageError(f"TSCALC_SEED is not an integer: {env!r}") from None
        if args.cases <= 0:
            raise UsageError("--cases must be positive")
        fams = tuple(args.families.split(",")) if args.families else verifier.FAMILIES
        bad = set(fams) - set(verifier.FAMILIES)
        if bad:
            raise UsageError(f"unknown families: {', '.join(sorted(bad))}")
        config = verifier.SuiteConfig(seed=seed, cases=args.cases, scale_families=fams, backend=args.backend)
        req.inputs = {"name": args.name, "config": config.to_json()}
        return req

    scale_doc = _load_doc(args.scale, "scale")
    if args.backend:
        scale_doc = dict(scale_doc, backend=args.backend)
        if args.backend == RATIONAL:
            scale_doc.pop("tolerance", None)
    inputs = {"scale": scale_doc}
    if hasattr(args, "fn"):
        inputs["fn"] = _load_doc(args.fn, "function")
    for key in ("a", "b", "t", "s", "gamma", "Gamma"):
        if getattr(args, key, None) is not None:
            inputs[key] = getattr(args, key)
    if getattr(args, "lam", None) is not None:
        inputs["lambda"] = args.lam
    if cmd == "h2":
        if args.k < 0:
            raise UsageError("--k must be nonnegative")
        inputs["k"] = args.k
    if cmd == "bound":
        inputs["mode"] = args.mode
        if args.kind:
            inputs["kind"] = args.kind
            pinned_t = args.kind in ostrowski.MIDPOINT_KINDS or args.kind == "center-family"
            pinned_lam = args.kind != "center-family"
            if pinned_t and args.t is not None:
                raise UsageError(f"--kind {args.kind} fixes t; drop --t")
            if pinned_lam and args.lam is not None:
                raise UsageError(f"--kind {args.kind} fixes lambda; drop --lambda")
            if args.kind in ostrowski.FAMILY_KINDS and args.t is None:
                raise UsageError(f"--kind {args.kind} needs --t")
            if args.kind == "center-family" and args.lam is None:
                raise UsageError("--kind center-family needs --lambda")
        elif args.t is None:
            raise UsageError("bound needs --t (or a --kind that fixes it)")
    req.inputs = inputs
    return req


# -- execution -------------------------------------------------------------------


def _scale(inputs) -> TimeScale:
    return build_timescale(inputs["scale"])


def _num(T: TimeScale, v):
    return T.backend.coerce(parse_number(v, exact=T.backend.exact))


def _ends(T: TimeScale, inputs):
    a = _num(T, inputs["a"]) if "a" in inputs else T.min
    b = _num(T, inputs["b"]) if "b" in inputs else T.max
    return T.member(a), T.member(b)


def _header(command: str, inputs: dict) -> dict:
    return {"schema": f"tscalc/{command}-report/1", "command": command, "inputs": inputs}


def _tol(T: TimeScale) -> dict:
    return {} if T.backend.exact else {"tolerance": T.backend.tolerance}


def run_bound(inputs: dict):
    T = _scale(inputs)
    f = FunctionSpec.from_json(inputs["fn"])
    a, b = _ends(T, inputs)
    kind = inputs.get("kind")
    lam = _num(T, inputs["lambda"]) if "lambda" in inputs else None
    t = T.member(_num(T, inputs["t"])) if "t" in inputs else None
    if kind:
        rep = ostrowski.special_case_bound(kind, f, T, a, b, t=t, lam=lam, mode=inputs["mode"])
    else:
        p = ostrowski.kernel_params(T, a, b, lam if lam is not None else 0, t)
        rep = ostrowski.ostrowski_bound(f, T, p, inputs["mode"])
    canon = {"scale": T.to_spec(), "fn": f.to_json(), "a": format_number(a), "b": format_number(b)}
    for key in ("lambda", "t"):
        if key in inputs:
            canon[key] = format_number(_num(T, inputs[key]))
    canon["mode"] = inputs["mode"]
    if kind:
        canon["kind"] = kind
    doc = _header("bound", canon)
    doc.update(rep.to_json())
    return doc, EXIT_OK if rep.holds() and not rep.equality_mismatch else EXIT_VIOLATION


def run_identity(inputs: dict):
    T = _scale(inputs)
    f = FunctionSpec.from_json(inputs["fn"])
    a, b = _ends(T, inputs)
    p = ostrowski.kernel_params(T, a, b, _num(T, inputs.get("lambda", "0")), _num(T, inputs["t"]))
    sides = ostrowski.montgomery_sides(f, T, p)
    if T.backend.exact:
        holds = sides.residual == 0
    else:
        scale = max(1.0, abs(sides.lhs), abs(sides.mean), abs(sides.kernel_term))
        holds = abs(sides.residual) <= verifier.SuiteConfig().tol_identity * scale
    canon = {"scale": T.to_spec(), "fn": f.to_json(), "a": format_number(p.a), "b": format_number(p.b),
             "lambda": format_number(p.lam), "t": format_number(p.t)}
    doc = _header("identity", canon)
    doc.update({
        "lhs": format_number(sides.lhs), "rhs": format_number(sides.rhs),
        "residual": format_number(sides.residual), "mean": format_number(sides.mean),
        "kernel_term": format_number(sides.kernel_term), "holds": holds,
        "backend": T.backend.kind, **_tol(T),
    })
    return doc, EXIT_OK if holds else EXIT_VIOLATION


def run_h2(inputs: dict):
    T = _scale(inputs)
    t, s, k = _num(T, inputs["t"]), _num(T, inputs["s"]), inputs.get("k", 2)
    recursive = closed = None
    if t in T and s in T:
        t, s = T.member(t), T.member(s)
        recursive = h_k(T, k, t, s).value
    if k == 2 and T.family is not None:
        closed = h2_closed_form(T.family, t, s)
    if recursive is None and closed is None:
        raise NotInScale("t, s are not both in the scale and the scale has no closed form")
    agree = None
    if recursive is not None and closed is not None:
        agree = ostrowski.values_equal(T, recursive, closed)
    canon = {"scale": T.to_spec(), "t": format_number(t), "s": format_number(s), "k": k}
    doc = _header("h2", canon)
    doc.update({
        "k": k, "t": format_number(t), "s": format_number(s),
        "recursive": None if recursive is None else format_number(recursive),
        "closed_form": None if closed is None else format_number(closed),
        "family": None if T.family is None else T.family[0],
        "agree": agree, "backend": T.backend.kind, **_tol(T),
    })
    return doc, EXIT_VIOLATION if agree is False else EXIT_OK


def run_sharpness(inputs: dict):
    T = _scale(inputs)
    a, b = _ends(T, inputs)
    lam = _num(T, inputs["lambda"])
    left, integral = ostrowski.sharpness_sides(T, a, b, lam)
    canon = {"scale": T.to_spec(), "a": format_number(a), "b": format_number(b), "lambda": format_number(lam)}
    doc = _header("sharpness", canon)
    doc.update({
        "a": format_number(a), "b": format_number(b), "lambda": format_number(lam),
        "lhs": format_number(left), "integral": format_number(integral),
        "result": left <= integral, "backend": T.backend.kind, **_tol(T),
    })
    return doc, EXIT_OK


def run_gruss(inputs: dict):
    T = _scale(inputs)
    f = FunctionSpec.from_json(inputs["fn"])
    a, b = _ends(T, inputs)
    t = _num(T, inputs["t"])
    g = _num(T, inputs["gamma"]) if "gamma" in inputs else None
    G = _num(T, inputs["Gamma"]) if "Gamma" in inputs else None
    rep = ostrowski.gruss_check(f, T, a, b, t, g, G)
    canon = {"scale": T.to_spec(), "fn": f.to_json(), "a": format_number(a), "b": format_number(b),
             "t": format_number(T.member(t))}
    for key, v in (("gamma", g), ("Gamma", G)):
        if v is not None:
            canon[key] = format_number(v)
    doc = _header("gruss", canon)
    doc.update(rep.to_json())
    return doc, EXIT_OK if rep.holds() else EXIT_VIOLATION


def run_suite_command(inputs: dict):
    config = verifier.SuiteConfig.from_json(inputs["config"])
    names = verifier.SUITES if inputs["name"] == "all" else (inputs["name"],)
    report = verifier.run_suites(names, config)
    doc = _header("suite", {"name": inputs["name"], "config": config.to_json()})
    doc.update(report.to_json())
    doc["schema"] = "tscalc/suite-report/1"
    return doc, EXIT_OK if report.verdict == "pass" else EXIT_VIOLATION


RUNNERS = {
    "bound": run_bound,
    "identity": run_identity,
    "h2": run_h2,
    "sharpness": run_sharpness,
    "gruss": run_gruss,
    "suite": run_suite_command,
}

INPUT_ERRORS = (
    ScaleSpecError, FunctionSpecError, NotInScale, ostrowski.WindowError, ostrowski.ModeUnavailable,
    ostrowski.SharpnessUndefined, ostrowski.HypothesisViolated, ValueError, TypeError, KeyError,
)


def evaluate(request: CommandRequest):
    """(document, exit code) for a request, without writing anything."""
    if request.command == "verify":
        recorded = request.inputs["report"]
        fresh, code = RUNNERS[recorded["command"]](recorded["inputs"])
        if fresh != recorded:
            return fresh, EXIT_VIOLATION
        return fresh, code
    return RUNNERS[request.command](request.inputs)


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    command = doc["command"]
    header = CSV_HEADERS[command]
    rows = []
    if command == "suite":
        for s in doc["suites"]:
            rows.append({"command": command, "backend": doc["backend"], "seed": doc["seed"], "suite": s["name"],
                         "cases": s["cases"], "skipped": s["skipped"], "violations": len(s["violations"]),
                         "max_residual": s["max_residual"], "min_margin": s["min_margin"], "verdict": s["verdict"]})
    else:
        row = {k: doc.get(k) for k in header}
        if command in ("bound", "gruss"):
            comps = doc.get("components") or [None] * 4
            for i, c in enumerate(comps, 1):
                row[f"h2_{i}"] = c
        rows.append(row)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _cell(v) for k, v in row.items()})
    return buf.getvalue()


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return v


def write_atomic(path: str, text: str) -> None:
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def execute(request: CommandRequest) -> int:
    try:
        doc, code = evaluate(request)
    except INPUT_ERRORS as err:
        print(f"tscalc {request.command}: {err}", file=sys.stderr)
        return EXIT_INPUT
    text = render(doc, request.format)
    if request.output:
        try:
            write_atomic(request.output, text)
        except OSError as err:
            print(f"tscalc: cannot write {request.output}: {err.strerror}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.write(text)
    if code == EXIT_VIOLATION and request.command == "verify":
        print("tscalc verify: report does not reproduce from its inputs", file=sys.stderr)
    return code


def main(argv=None) -> int:
    try:
        request = parse_request(sys.argv[1:] if argv is None else argv)
    except UsageError as err:
        print(err, file=sys.stderr)
        return EXIT_INPUT
    return execute(request)


if __name__ == "__main__":
    sys.exit(main())
