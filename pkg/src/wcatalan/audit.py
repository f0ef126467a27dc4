"""Registry of published claims about S_n(a), each checked against the direct sum.

Every claim is coded as printed, including the ones that turn out to be
wrong; corrected versions live in :mod:`wcatalan.evaluate` and
:mod:`wcatalan.analytic`. A claim is refuted by its smallest failing grid
cell, ordered by ``n`` and then by the distance of ``a`` from 1 (ties by
value), so the reported witness is the simplest one available.

Floating-point claims are only marked as failing when the discrepancy is
larger than ``FLOAT_MARGIN`` times the evaluation tolerance.
"""

from __future__ import annotations

import datetime as _dt
import enum
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from . import __version__
from .analytic import (
    AsymptoticModel,
    ModelKind,
    QuadratureConfig,
    asym_log_value,
    binomial_square_sum,
    log_s_exact,
    saddle_solve,
    t_integral,
)
from .errors import DomainError
from .evaluate import s_direct, s_narayana
from .exactnum import as_rat, binomial, format_rational, pochhammer_half
from .series import PowerSeries, ps_central_binomial, ps_inv_sqrt, ps_mul, ps_scale_arg

__all__ = [
    "Grid",
    "CellResult",
    "Claim",
    "Status",
    "Witness",
    "Verdict",
    "AuditReport",
    "DEFAULT_GRID",
    "REGISTRY",
    "claim_by_id",
    "cell_order",
    "run_claim",
    "run_all",
    "render_report",
    "report_to_dict",
    "report_from_dict",
    "parse_report",
]

FLOAT_MARGIN = 1e6
QUAD_CFG = QuadratureConfig(abs_tol=1e-10)
SADDLE_TOL = 1e-12
LOG_TOL = 1e-12
ASYM_PROBES = (100, 400)


@dataclass(frozen=True)
class Grid:
    ns: tuple[int, ...]
    avals: tuple[Fraction, ...]

    def __init__(self, ns: Iterable[int], avals: Iterable):
        ns = tuple(sorted(set(int(n) for n in ns)))
        avals = tuple(sorted(set(as_rat(a) for a in avals), key=_a_key))
        if any(n < 0 for n in ns):
            raise DomainError("grid n values must be >= 0")
        object.__setattr__(self, "ns", ns)
        object.__setattr__(self, "avals", avals)

    def cells(self) -> list[tuple[int, Fraction]]:
        return [(n, a) for n in self.ns for a in self.avals]

    def __bool__(self) -> bool:
        return bool(self.ns) and bool(self.avals)

    def describe(self) -> dict:
        return {"n": list(self.ns), "a": [format_rational(a) for a in self.avals]}


def _a_key(a: Fraction) -> tuple:
    return (abs(a - 1), a)


def cell_order(cell: tuple[int, Fraction]) -> tuple:
    n, a = cell
    return (n,) + _a_key(a)


DEFAULT_GRID = Grid(range(25), [0, 1, -1, 2, Fraction(1, 2), -3, Fraction(7, 5)])


@dataclass(frozen=True)
class CellResult:
    ok: bool
    lhs: str
    rhs: str


def _exact(lhs: Fraction, rhs: Fraction) -> CellResult:
    return CellResult(lhs == rhs, format_rational(lhs), format_rational(rhs))


def _g17(x: float) -> str:
    return format(x, ".17g")


@dataclass(frozen=True)
class Claim:
    """One printed assertion.

    ``select`` picks the cells the claim speaks about (a claim about a = 1
    ignores the other ``a`` values); ``check`` compares the oracle side
    (``lhs``) with the printed side (``rhs``) at one cell.
    """

    id: str
    description: str
    paper_ref: str
    check: Callable[[int, Fraction], CellResult]
    select: Callable[[Grid], list[tuple[int, Fraction]]] = Grid.cells
    note: Callable[[list[tuple[int, Fraction]]], str | None] | None = None


class Status(str, enum.Enum):
    CONFIRMED = "confirmed"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Witness:
    n: int
    a: Fraction
    lhs: str
    rhs: str


@dataclass(frozen=True)
class Verdict:
    claim_id: str
    status: Status
    witness: Witness | None
    cells_checked: int
    note: str | None = None


@dataclass(frozen=True)
class AuditReport:
    verdicts: tuple[Verdict, ...]
    grid: dict
    version: str = __version__
    timestamp: str = field(default="")

    def verdict(self, claim_id: str) -> Verdict:
        for v in self.verdicts:
            if v.claim_id == claim_id:
                return v
        raise KeyError(claim_id)

    def statuses(self) -> dict[str, str]:
        return {v.claim_id: v.status.value for v in self.verdicts}


# --- the claims -------------------------------------------------------------


def _c1(n, a):
    printed = 4**n * pochhammer_half(n) / math.factorial(n) * _f21_half_one(n, 1 - a)
    return _exact(s_direct(n, a), printed)


def _f21_half_one(n: int, z: Fraction) -> Fraction:
    # 2F1(-n, 1/2; 1; z), summed independently of evaluate.hyp2f1_terminating
    return sum(
        (Fraction((-1) ** k * binomial(n, k)) * pochhammer_half(k) / math.factorial(k) * z**k
         for k in range(n + 1)),
        Fraction(0),
    )


def _only(a_value) -> Callable[[Grid], list]:
    a_value = Fraction(a_value)
    return lambda g: [(n, a_value) for n in g.ns]


def _c2(n, a):
    return _exact(s_direct(n, 1), Fraction(binomial(2 * n, n)))


def _c3(n, a):
    m, odd = divmod(n, 2)
    printed = Fraction(0) if odd else Fraction(binomial(2 * m, m) * 4**m)
    return _exact(s_direct(n, -1), printed)


def _c4(n, a):
    printed = sum(
        (binomial(2 * m, m) * binomial(2 * (n - 2 * m), n - 2 * m) * (a + 1) ** (n - 2 * m) * (-4 * a) ** m
         for m in range(n // 2 + 1)),
        Fraction(0),
    )
    return _exact(s_direct(n, a), printed)


def _c5(n, a):
    # summed over k from ceil(n/2) to n, as in the coefficient extraction
    printed = sum(
        (binomial(2 * k, k) * binomial(k, n - k) * (a + 1) ** (2 * k - n) * (-4 * a) ** (n - k)
         for k in range((n + 1) // 2, n + 1)),
        Fraction(0),
    )
    return _exact(s_direct(n, a), printed)


def _c6(n, a):
    if n == 0:
        return _exact(s_direct(0, a), Fraction(1))
    if n == 1:
        return _exact(s_direct(1, a), 2 * (1 + a))
    # (m+2) S_{m+1} = 2(2m+1)(1+a) S_m - 4 m a S_{m-1}, applied with m = n-1
    m = n - 1
    printed = (2 * (2 * m + 1) * (1 + a) * s_direct(m, a) - 4 * m * a * s_direct(m - 1, a)) / (m + 2)
    return _exact(s_direct(n, a), printed)


def _c6_note(cells) -> str:
    return "initial conditions S_0 = 1, S_1 = 2(1+a) hold; the three-term step fails"


def _c7(n, a):
    return _exact(s_direct(n, 0), Fraction(binomial(2 * n, n)))


def _c8(n, a):
    return _exact(s_direct(n, a), a**n * s_direct(n, 1 / a))


def _float_cell(exact: float, claimed: float, tol: float, scale: float = 1.0) -> CellResult:
    ok = abs(exact - claimed) <= FLOAT_MARGIN * tol * max(1.0, abs(scale))
    return CellResult(ok, _g17(exact), _g17(claimed))


def _c9(n, a):
    s = s_direct(n, a)
    return _float_cell(float(s), t_integral(n, a, QUAD_CFG), QUAD_CFG.abs_tol, float(s))


def _c9_note(cells) -> str:
    hits = 0
    for n, a in cells:
        b = binomial_square_sum(n, a)
        if abs(t_integral(n, a, QUAD_CFG) - float(b)) <= 1e-9 * max(1.0, float(b)):
            hits += 1
    return f"the integral equals sum_k C(n,k)^2 a^k on {hits}/{len(cells)} cells"


def _c10(n, a):
    model = AsymptoticModel(ModelKind.PAPER_THEOREM31, float(a))
    d_here = log_s_exact(n, a) - asym_log_value(model, n)
    d_next = log_s_exact(4 * n, a) - asym_log_value(model, 4 * n)
    # an asymptotic equivalence needs the log-ratio to shrink towards 0
    converging = abs(d_next) < abs(d_here) or abs(d_here) <= FLOAT_MARGIN * LOG_TOL
    return CellResult(converging, _g17(log_s_exact(n, a)), _g17(asym_log_value(model, n)))


def _c10_select(g: Grid):
    return [(n, a) for n in ASYM_PROBES for a in g.avals if a > 0]


def _c11(n, a):
    numeric = saddle_solve(float(a), SADDLE_TOL)
    printed = 1 / (1 + math.sqrt(a)) ** 2
    return _float_cell(numeric, printed, SADDLE_TOL)


def _c11_select(g: Grid):
    # the saddle point does not depend on n
    return [(0, a) for a in g.avals if a > 0]


def _c12(n, a):
    return _exact(s_direct(n, a), s_narayana(n, a))


@lru_cache(maxsize=64)
def _green_product(a: Fraction, order: int) -> tuple[PowerSeries, PowerSeries]:
    g = ps_central_binomial(order)
    prod = ps_mul(g, ps_scale_arg(g, a))
    quad = PowerSeries([1, -4 * (1 + a), 16 * a], order=order)
    return prod, ps_inv_sqrt(quad)


def _c13(n, a):
    # order large enough for every n the grid can ask for
    order = max(25, n + 1)
    prod, inv = _green_product(a, order)
    oracle = s_direct(n, a)
    return CellResult(prod[n] == oracle and inv[n] == oracle, format_rational(oracle), format_rational(prod[n]))


def _nonzero(g: Grid):
    return [c for c in g.cells() if c[1] != 0]


def _nonneg(g: Grid):
    return [c for c in g.cells() if c[1] >= 0]


REGISTRY: tuple[Claim, ...] = (
    Claim("C1", "closed form 4^n (1/2)_n/n! 2F1(-n,1/2;1;1-a)",
          r"Sec. 2.1: S_n(a) = 4^n \frac{(1/2)_n}{n!} \, {}_2F_1\!\left(-n,\tfrac{1}{2};1;\,1-a\right)",
          _c1),
    Claim("C2", "S_n(1) = C(2n,n)",
          r"Sec. 2.2: S_n(1) = \binom{2n}{n}", _c2, _only(1)),
    Claim("C3", "S_2m(-1) = C(2m,m) 4^m and S_n(-1) = 0 for odd n",
          r"Sec. 2.2: S_{2m}(-1) = \binom{2m}{m} 4^m; which vanishes for odd $n$", _c3, _only(-1)),
    Claim("C4", "displayed identity with C(2m,m) C(2(n-2m),n-2m) weights",
          r"Theorem 2.1: \binom{2m}{m} \binom{2(n-2m)}{n-2m} (a+1)^{n-2m} (-4a)^m", _c4),
    Claim("C5", "coefficient extraction sum_k C(2k,k) C(k,n-k) (a+1)^(2k-n) (-4a)^(n-k)",
          r"Theorem 2.1 proof, eq. (17): \binom{2k}{k} \binom{k}{n-k} (a+1)^{2k-n} (-4a)^{n-k}", _c5),
    Claim("C6", "three-term recurrence (n+2) S_{n+1} = 2(2n+1)(1+a) S_n - 4 n a S_{n-1}",
          r"Theorem 4.1: (n+2)\, S_{n+1}(a) = 2(2n+1)(1+a)\, S_n(a) - 4n a\, S_{n-1}(a)",
          _c6, Grid.cells, _c6_note),
    Claim("C7", "S_n(0) = C(2n,n)",
          r"Sec. 4.2: yielding $S_n(0)=\binom{2n}{n}$", _c7, _only(0)),
    Claim("C8", "S_n(a) = a^n S_n(1/a)",
          r"Proposition 6.1: S_n(a) is essentially self-reciprocal", _c8, _nonzero),
    Claim("C9", "S_n(a) = (1/pi) int_0^pi (1+a+2 sqrt(a) cos t)^n dt",
          r"Proposition 6.2: S_n(a) = \frac{1}{\pi} \int_{0}^{\pi} \big(1+a+2\sqrt{a}\cos\theta\big)^n \, d\theta",
          _c9, _nonneg, _c9_note),
    Claim("C10", "S_n(a) ~ (1+sqrt a)^(2n) / (sqrt(pi n) a^(1/4))",
          r"Theorem 3.1: S_n(a)\sim \frac{(1+\sqrt{a})^{2n}}{\sqrt{\pi n}\,a^{1/4}}",
          _c10, _c10_select),
    Claim("C11", "saddle point x* = 1/(1+sqrt a)^2",
          r"Sec. 3.5: x_*=\frac{1}{(1+\sqrt{a})^2}", _c11, _c11_select),
    Claim("C12", "Narayana-refined triple sum equals S_n(a), with N(0,0) = 1 for empty paths",
          r"Sec. 5.2: \sum_{k=0}^{n} \sum_{i=1}^{k} \sum_{j=1}^{n-k} (k+1)(n-k+1)\, N(k,i)\, N(n-k,j)\, a^k",
          _c12),
    Claim("C13", "sum_n S_n(a) x^n = G(x) G(ax) with G(x) = 1/sqrt(1-4x)",
          r"Sec. 3.4: \sum_{n\ge0} S_n(a) x^n = G(x)\,G(ax)", _c13),
)


def claim_by_id(claim_id: str) -> Claim:
    for c in REGISTRY:
        if c.id == claim_id:
            return c
    raise KeyError(claim_id)


# --- running ----------------------------------------------------------------


def run_claim(claim: Claim, grid: Grid) -> Verdict:
    """Check ``claim`` on every applicable cell of ``grid``.

    A cell whose check raises is counted as inconclusive instead of
    aborting the run.
    """
    if not grid:
        raise DomainError("audit grid is empty")
    cells = sorted(claim.select(grid), key=cell_order)
    witness = None
    inconclusive = 0
    for n, a in cells:
        try:
            res = claim.check(n, a)
        except (ArithmeticError, ValueError):
            inconclusive += 1
            continue
        if not res.ok and witness is None:
            witness = Witness(n, a, res.lhs, res.rhs)
    if witness is not None:
        status = Status.REFUTED
    elif inconclusive or not cells:
        status = Status.INCONCLUSIVE
    else:
        status = Status.CONFIRMED
    note = claim.note(cells) if claim.note else None
    return Verdict(claim.id, status, witness, len(cells), note)


def run_all(
    grid: Grid = DEFAULT_GRID,
    registry: Sequence[Claim] = REGISTRY,
    *,
    max_workers: int | None = None,
    timestamp: str | None = None,
) -> AuditReport:
    if not registry:
        raise DomainError("claim registry is empty")
    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            verdicts = list(pool.map(lambda c: run_claim(c, grid), registry))
    else:
        verdicts = [run_claim(c, grid) for c in registry]
    if timestamp is None:
        timestamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return AuditReport(tuple(verdicts), grid.describe(), __version__, timestamp)


# --- serialization ----------------------------------------------------------


def _witness_dict(w: Witness | None):
    if w is None:
        return None
    return {"n": w.n, "a": format_rational(w.a), "lhs": w.lhs, "rhs": w.rhs}


def report_to_dict(report: AuditReport) -> dict:
    return {
        "version": report.version,
        "timestamp": report.timestamp,
        "grid": report.grid,
        "verdicts": [
            {
                "id": v.claim_id,
                "status": v.status.value,
                "witness": _witness_dict(v.witness),
                "cells": v.cells_checked,
                "note": v.note,
            }
            for v in report.verdicts
        ],
    }


def report_from_dict(data: dict) -> AuditReport:
    verdicts = []
    for v in data["verdicts"]:
        w = v.get("witness")
        witness = None if w is None else Witness(int(w["n"]), as_rat(w["a"]), w["lhs"], w["rhs"])
        verdicts.append(Verdict(v["id"], Status(v["status"]), witness, int(v["cells"]), v.get("note")))
    return AuditReport(tuple(verdicts), data["grid"], data["version"], data.get("timestamp", ""))


def parse_report(text: str) -> AuditReport:
    return report_from_dict(json.loads(text))


def _markdown(report: AuditReport) -> str:
    lines = [
        "# Audit report",
        "",
        f"- version: {report.version}",
        f"- timestamp: {report.timestamp}",
        f"- grid n: {', '.join(str(n) for n in report.grid['n'])}",
        f"- grid a: {', '.join(report.grid['a'])}",
        "",
        "| id | status | cells | witness | lhs | rhs | note |",
        "|----|--------|-------|---------|-----|-----|------|",
    ]
    for v in report.verdicts:
        if v.witness is None:
            wit, lhs, rhs = "", "", ""
        else:
            wit = f"n={v.witness.n}, a={format_rational(v.witness.a)}"
            lhs, rhs = v.witness.lhs, v.witness.rhs
        lines.append(
            f"| {v.claim_id} | {v.status.value} | {v.cells_checked} | {wit} | {lhs} | {rhs} | {v.note or ''} |"
        )
    return "\n".join(lines) + "\n"


def render_report(report: AuditReport, format: str = "json") -> str:
    if format == "json":
        return json.dumps(report_to_dict(report), indent=2) + "\n"
    if format == "markdown":
        return _markdown(report)
    raise ValueError(f"unknown report format {format!r}")
