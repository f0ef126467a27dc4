"""Command-line front end.

Exit codes: 0 success, 2 usage or domain error, 3 audit verdicts differ
from an ``--expect`` file, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .analytic import AsymptoticModel, ModelKind, asym_log_value, log_s_exact
from .audit import DEFAULT_GRID, Grid, render_report, run_all
from .errors import DomainError
from .evaluate import EVALUATORS, Method, s_direct
from .exactnum import format_rational, parse_rational
from .walks import WalkConfig, estimate_s, estimate_s_rao

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_IO = 0, 2, 3, 4


class _IOFailure(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text}")
    return v


def _pos_int(text: str) -> int:
    v = _nonneg_int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text}")
    return v


def _rational_list(text: str) -> list[Fraction]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("empty list of a values")
    return [_rational(p) for p in parts]


def _g17(x: float) -> str:
    return format(x, ".17g")


def cmd_eval(args) -> int:
    method = Method(args.method)
    value = EVALUATORS[method](args.n, args.a)
    if args.json:
        out = {"n": args.n, "a": format_rational(args.a), "method": method.value,
               "value": format_rational(value)}
        print(json.dumps(out))
    else:
        print(format_rational(value))
    return EXIT_OK


def cmd_table(args) -> int:
    fn = EVALUATORS[Method(args.method)]
    rows = [(n, format_rational(fn(n, args.a))) for n in range(args.n_max + 1)]
    if args.format == "json":
        print(json.dumps([{"n": n, "value": v} for n, v in rows]))
    else:
        lines = ["n,value"] + [f"{n},{v}" for n, v in rows]
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def _write(path: Path, text: str) -> None:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise _IOFailure(f"cannot write {path}: {exc}") from exc


def _load_expectation(path: Path) -> dict[str, str]:
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise _IOFailure(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path} is not valid JSON: {exc}") from exc
    if isinstance(data, dict) and "verdicts" in data:
        return {v["id"]: v["status"] for v in data["verdicts"]}
    if isinstance(data, dict):
        return {str(k): str(v) for k, v in data.items()}
    raise DomainError(f"{path}: expected an object of claim statuses")


def cmd_audit(args) -> int:
    grid = Grid(range(args.n_max + 1), args.a)
    expected = _load_expectation(Path(args.expect)) if args.expect else None
    report = run_all(grid, max_workers=args.workers)
    _write(Path(args.out), render_report(report, "json"))
    if args.markdown:
        _write(Path(args.markdown), render_report(report, "markdown"))
    for v in report.verdicts:
        wit = ""
        if v.witness is not None:
            w = v.witness
            wit = f" n={w.n} a={format_rational(w.a)} lhs={w.lhs} rhs={w.rhs}"
        print(f"{v.claim_id} {v.status.value} cells={v.cells_checked}{wit}")
    if expected is not None:
        actual = report.statuses()
        diff = sorted(set(actual) | set(expected))
        bad = [cid for cid in diff if actual.get(cid) != expected.get(cid)]
        for cid in bad:
            print(f"mismatch {cid}: expected {expected.get(cid)} got {actual.get(cid)}", file=sys.stderr)
        if bad:
            return EXIT_MISMATCH
    return EXIT_OK


def cmd_asym(args) -> int:
    if args.a <= 0:
        raise DomainError("asym needs a > 0")
    if args.n < 1:
        raise DomainError("asym needs n >= 1")
    model = AsymptoticModel(ModelKind(args.model), float(args.a))
    m = asym_log_value(model, args.n)
    e = log_s_exact(args.n, args.a)
    print(f"model_log {_g17(m)}")
    print(f"exact_log {_g17(e)}")
    print(f"difference {_g17(e - m)}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    cfg = WalkConfig(args.n, args.a, args.samples, args.seed, args.chunks)
    est = (estimate_s_rao if args.rao else estimate_s)(cfg)
    exact = s_direct(args.n, args.a)
    diff = est.mean - float(exact)
    if est.std_error > 0:
        z = diff / est.std_error
    else:
        z = 0.0 if diff == 0 else float("inf")
    print(f"estimate {_g17(est.mean)}")
    print(f"std_error {_g17(est.std_error)}")
    print(f"exact {format_rational(exact)}")
    print(f"z {_g17(z)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wcatalan",
        description="Exact evaluation and claim audit for sum_k C(2k,k) C(2(n-k),n-k) a^k.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    methods = [m.value for m in Method]

    p = sub.add_parser("eval", help="evaluate S_n(a) exactly")
    p.add_argument("--n", type=_nonneg_int, required=True)
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--method", choices=methods, default=Method.RECURRENCE.value)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("table", help="tabulate S_0(a) .. S_nmax(a)")
    p.add_argument("--n-max", type=_nonneg_int, required=True)
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--method", choices=methods, default=Method.RECURRENCE.value)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("audit", help="check every registered claim against the direct sum")
    p.add_argument("--n-max", type=_nonneg_int, default=max(DEFAULT_GRID.ns))
    p.add_argument("--a", type=_rational_list, default=list(DEFAULT_GRID.avals),
                   help="comma-separated rationals (default 0,1,-1,2,1/2,-3,7/5)")
    p.add_argument("--out", default="audit_report.json")
    p.add_argument("--markdown", default=None)
    p.add_argument("--expect", default=None, help="JSON file of expected statuses; exit 3 on mismatch")
    p.add_argument("--workers", type=_pos_int, default=1)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("asym", help="compare log S_n(a) with a leading-order model")
    p.add_argument("--n", type=_nonneg_int, required=True)
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--model", choices=[k.value for k in ModelKind], default=ModelKind.SINGULARITY_CORRECTED.value)
    p.set_defaults(func=cmd_asym)

    p = sub.add_parser("simulate", help="Monte Carlo estimate from random-walk returns")
    p.add_argument("--n", type=_nonneg_int, required=True)
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--samples", type=_pos_int, default=100_000)
    p.add_argument("--seed", type=_nonneg_int, default=0)
    p.add_argument("--chunks", type=_pos_int, default=1)
    p.add_argument("--rao", action="store_true", help="randomize K only, use exact return probabilities")
    p.set_defaults(func=cmd_simulate)
    return parser


_NEGATIVE = re.compile(r"^-\d+(/\d+)?(,.*)?$")


def _glue_negatives(argv: list[str]) -> list[str]:
    # argparse takes "-9/4" for an option flag; bind it to the preceding option
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and "=" not in tok and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _glue_negatives(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (DomainError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
