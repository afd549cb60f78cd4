"""Command-line interface: ``polycenters analyze | portrait | construct | verify-paper``.

Exit codes: 0 success, 1 usage or input error, 2 failed mathematical audit.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import paperchecks
from ._mp import MP
from .analysis import SCHEMA, AnalysisOptions, analyze
from .classification import DET_TOL, TRACE_TOL, poincare_hopf_audit
from .constructors import (
    EXAMPLE_IDS,
    extremal_hamiltonian,
    normalized_extremal,
    paper_example,
    remark31_system,
)
from .critical_points import DEFAULT_BOUND, PlanarField
from .errors import ParseError, PolycentersError, UnknownExample
from .hamiltonian import HamiltonianWitness, field_of, hamiltonian_of, is_hamiltonian
from .polynomial import format_poly, from_json_terms, parse_poly, to_json_terms
from .portrait import PortraitSpec, build_portrait, to_svg

EXIT_OK, EXIT_INPUT, EXIT_AUDIT = 0, 1, 2
FAMILIES = ("extremal", "normalized", "product")


class InputError(Exception):
    """Bad command-line input; reported with exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _glue_expressions(argv: list[str]) -> list[str]:
    """Allow ``--dx -y``: expressions may start with a minus sign."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--dx", "--dy"):
            val = next(it, None)
            out.append(tok if val is None else f"{tok}={val}")
        else:
            out.append(tok)
    return out


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


# -- field input ----------------------------------------------------------------------

def _int_args(text: str, count: int, family: str) -> list[int]:
    try:
        vals = [int(v) for v in text.split(",")]
    except ValueError:
        raise InputError(f"{family}: expected {count} comma-separated integers, got {text!r}") from None
    if len(vals) != count:
        raise InputError(f"{family}: expected {count} comma-separated integers, got {text!r}")
    return vals


def construct_field(spec: str) -> tuple[PlanarField, HamiltonianWitness | None]:
    """Field for ``family:args``, e.g. ``extremal:3,2``, ``normalized:3,2``, ``product:5,3``."""
    family, sep, args = spec.partition(":")
    if not sep or family not in FAMILIES:
        raise InputError(f"--construct expects one of {', '.join(f + ':...' for f in FAMILIES)}, got {spec!r}")
    a, b = _int_args(args, 2, family)
    if family == "extremal":
        F, w = extremal_hamiltonian(a, b)
        return F, w
    if family == "normalized":
        N = normalized_extremal(a, b)
        return field_of(N.H), HamiltonianWitness(N.H, True)
    return remark31_system(a, b), None


def _field_from_json(path: str) -> PlanarField:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    if "dx" in data and "dy" in data:
        return PlanarField(parse_poly(str(data["dx"])), parse_poly(str(data["dy"])))
    if "f" in data and "g" in data:
        return PlanarField(from_json_terms(data["f"]), from_json_terms(data["g"]))
    raise InputError(f"{path}: needs keys 'dx' and 'dy' (expressions) or 'f' and 'g' (term lists)")


def read_field(args) -> PlanarField:
    sources = [s for s in ("dx", "example", "construct", "file") if getattr(args, s, None) is not None]
    if len(sources) != 1:
        raise InputError("give exactly one of --dx/--dy, --example, --construct or --file")
    if args.dx is not None:
        if args.dy is None:
            raise InputError("--dx needs --dy")
        return PlanarField(_parse("--dx", args.dx), _parse("--dy", args.dy))
    if args.example is not None:
        return paper_example(args.example)
    if args.construct is not None:
        return construct_field(args.construct)[0]
    return _field_from_json(args.file)


def _parse(flag: str, text: str):
    try:
        return parse_poly(text)
    except ParseError as exc:
        raise InputError(f"{flag}: {exc}") from None


def _add_input(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("field input (choose one)")
    g.add_argument("--dx", help="expression for dx/dt, e.g. \"x*(1 - x^2 - 3*y^2)\"")
    g.add_argument("--dy", help="expression for dy/dt")
    g.add_argument("--example", help=f"built-in example: {', '.join(EXAMPLE_IDS)}")
    g.add_argument("--construct", metavar="FAMILY:ARGS",
                   help="extremal:n,r | normalized:n,r | product:n,m")
    g.add_argument("--file", help="JSON file with 'dx'/'dy' expressions or 'f'/'g' term lists")


def _add_numerics(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("numerics")
    g.add_argument("--bound", type=float, default=DEFAULT_BOUND,
                   help=f"ignore critical points with |x| or |y| above this (default {DEFAULT_BOUND:g})")
    g.add_argument("--det-tol", type=float, default=DET_TOL,
                   help=f"relative tolerance for a singular Jacobian (default {DET_TOL:g})")
    g.add_argument("--trace-tol", type=float, default=TRACE_TOL,
                   help=f"relative tolerance for zero trace (default {TRACE_TOL:g})")
    g.add_argument("--dps", type=int, default=None,
                   help=f"working precision in decimal digits (default {MP.dps}, env POLYCENTERS_DPS)")


def _options(args) -> AnalysisOptions:
    if args.dps is not None:
        if args.dps < 20:
            raise InputError("--dps must be at least 20")
        MP.dps = args.dps
    for name in ("bound", "det_tol", "trace_tol"):
        if getattr(args, name) <= 0:
            raise InputError(f"--{name.replace('_', '-')} must be positive")
    return AnalysisOptions(bound=args.bound, det_tol=args.det_tol, trace_tol=args.trace_tol)


# -- commands -----------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    F = read_field(args)
    report = analyze(F, _options(args))
    if args.summary:
        print(report.summary())
    else:
        print(_dump(report.to_json()))
    return EXIT_OK if report.audits_pass else EXIT_AUDIT


def cmd_portrait(args) -> int:
    F = read_field(args)
    options = _options(args)
    report = analyze(F, options)
    spec = PortraitSpec(
        field=report.reduced,
        report=report.indices,
        disk_radius_px=args.size,
        orbits_per_center=args.orbits_per_center,
        separatrix_offset=args.separatrix_offset,
        tol=args.tol,
        t_span=args.t_span,
        axes=True if report.kolmogorov else None,
        title=args.title or f"dx/dt = {format_poly(F.f)}, dy/dt = {format_poly(F.g)}",
    )
    data = build_portrait(spec)
    svg = to_svg(data, spec.disk_radius_px, spec.title)
    try:
        Path(args.output).write_text(svg)
    except OSError as exc:
        raise InputError(f"cannot write {args.output}: {exc.strerror}") from None
    print(f"wrote {args.output}: {len(data.orbits)} orbits, {len(data.separatrices)} separatrices; "
          f"{report.summary()}")
    return EXIT_OK


def cmd_construct(args) -> int:
    if args.family == "example":
        if len(args.args) != 1:
            raise InputError("construct example NAME")
        F, H = paper_example(args.args[0]), None
        if is_hamiltonian(F):
            H = hamiltonian_of(F).H
    else:
        if len(args.args) != 2:
            raise InputError(f"construct {args.family} needs two integers")
        F, w = construct_field(f"{args.family}:{','.join(args.args)}")
        H = w.H if w is not None else None
    out = {
        "schema": SCHEMA,
        "dx": format_poly(F.f),
        "dy": format_poly(F.g),
        "f": to_json_terms(F.f),
        "g": to_json_terms(F.g),
    }
    if H is not None:
        out["H"] = format_poly(H)
    print(_dump(out))
    return EXIT_OK


def _select(criteria: list[str] | None) -> list[int]:
    if not criteria:
        return sorted(paperchecks.CHECKS)
    out = []
    for c in criteria:
        if c.isdigit() and int(c) in paperchecks.CHECKS:
            out.append(int(c))
        elif c in paperchecks.KEYS:
            out.append(paperchecks.KEYS[c])
        else:
            keys = ", ".join(f"{n}/{k}" for k, n in sorted(paperchecks.KEYS.items(), key=lambda kv: kv[1]))
            raise InputError(f"unknown criterion {c!r}; choose from {keys}")
    return sorted(set(out))


def _run_check(n: int, args):
    fn = paperchecks.CHECKS[n]
    kwargs = {}
    if n in (1, 2, 7):
        kwargs["quick"] = args.quick
    if n in (2, 4, 5, 7, 9):
        kwargs["seed"] = args.seed
    if args.quick and n in (4, 5):
        kwargs["count"] = paperchecks.QUICK_SWEEP
        if n == 4:
            kwargs["minimum"] = paperchecks.QUICK_MINIMUM
    if args.quick and n == 7:
        kwargs["hk_count"] = kwargs["kolmogorov_count"] = paperchecks.QUICK_SWEEP
    return fn(**kwargs)


def cmd_verify(args) -> int:
    selected = _select(args.criterion)
    results = []
    for n in selected:
        res = _run_check(n, args)
        results.append(res)
        if not args.json:
            print(res.line(), flush=True)
            for f in res.failures[:5]:
                print(f"    {f}")
    ok = all(r.passed for r in results)
    doc = {
        "schema": SCHEMA,
        "seed": args.seed,
        "quick": args.quick,
        "passed": ok,
        "criteria": [r.to_json() for r in results],
    }
    if args.json:
        print(_dump(doc))
    else:
        print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    if args.out:
        _write_outputs(Path(args.out), doc, results)
    return EXIT_OK if ok else EXIT_AUDIT


def _write_outputs(out: Path, doc: dict, results) -> None:
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / "verify.json").write_text(_dump(doc) + "\n")
        rows = ["criterion\tkey\tstatus\tseconds"]
        rows += [f"{r.number}\t{r.key}\t{'PASS' if r.passed else 'FAIL'}\t{r.elapsed:.2f}" for r in results]
        (out / "summary.tsv").write_text("\n".join(rows) + "\n")
        for name, F, witness in (
            ("hk_circle", paper_example("hk_circle"), None),
            ("normalized-3-2", *construct_field("normalized:3,2")),
        ):
            w = witness or hamiltonian_of(F)
            spec = PortraitSpec(F, poincare_hopf_audit(F, w), axes=True, title=name)
            (out / f"{name}.svg").write_text(to_svg(build_portrait(spec), spec.disk_radius_px, name))
    except OSError as exc:
        raise InputError(f"cannot write to {out}: {exc.strerror}") from None


# -- entry point --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="polycenters",
        description="Critical points, centers and phase portraits of planar polynomial vector fields.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify critical points and run the audits")
    _add_input(p)
    _add_numerics(p)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report on stdout (the default)")
    fmt.add_argument("--summary", action="store_true", help="one-line summary instead of JSON")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("portrait", help="render the phase portrait on the Poincare disk as SVG")
    _add_input(p)
    _add_numerics(p)
    p.add_argument("-o", "--output", required=True, help="SVG file to write")
    p.add_argument("--size", type=int, default=400, help="disk radius in pixels (default 400)")
    p.add_argument("--orbits-per-center", type=int, default=4, help="orbits drawn around each center (default 4)")
    p.add_argument("--separatrix-offset", type=float, default=1e-4,
                   help="distance from a saddle where separatrices start (default 1e-4)")
    p.add_argument("--tol", type=float, default=1e-9, help="integration tolerance (default 1e-9)")
    p.add_argument("--t-span", type=float, default=20.0, help="integration time per orbit (default 20)")
    p.add_argument("--title", help="SVG title")
    p.set_defaults(func=cmd_portrait)

    p = sub.add_parser("construct", help="print a constructed field as JSON")
    p.add_argument("family", choices=FAMILIES + ("example",))
    p.add_argument("args", nargs="+", help="n r | n m | example name")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify-paper", help="run the acceptance checks")
    p.add_argument("--quick", action="store_true",
                   help=f"constructions up to n = 4 and sweeps of {paperchecks.QUICK_SWEEP}")
    p.add_argument("--criterion", action="append", metavar="N|KEY",
                   help="run only this criterion (repeatable)")
    p.add_argument("--seed", type=int, default=paperchecks.DEFAULT_SEED,
                   help=f"seed of the random sweeps (default {paperchecks.DEFAULT_SEED})")
    p.add_argument("--json", action="store_true", help="print the JSON document instead of the table")
    p.add_argument("--out", metavar="DIR", help="write verify.json, summary.tsv and two portraits here")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_expressions(argv))
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, ValueError, UnknownExample) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownExample) and exc.args else exc
        print(f"polycenters: error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except PolycentersError as exc:
        print(f"polycenters: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
