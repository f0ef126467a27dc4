"""Floating-point companions to the exact evaluators.

Covers the cosine integral T_n(a) = (1/pi) int_0^pi (1 + a + 2 sqrt(a) cos t)^n dt
and its exact counterpart sum_k C(n,k)^2 a^k, Legendre polynomials, the
leading-order asymptotic models for S_n(a), and the saddle-point equation
of the Cauchy coefficient integral.

Note that T_n(a) is *not* S_n(a): T_1(1) = 2 while S_1(1) = 4.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath

from .errors import ConvergenceError, DomainError
from .evaluate import s_recurrence
from .exactnum import as_rat, binomial

__all__ = [
    "QuadratureConfig",
    "ModelKind",
    "AsymptoticModel",
    "composite_simpson",
    "t_integral",
    "binomial_square_sum",
    "legendre_pn",
    "central_binom_quadrature",
    "asym_log_value",
    "log_s_exact",
    "phi",
    "phi_prime",
    "saddle_solve",
    "saddle_closed_form",
]


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    max_panel_doublings: int = 20
    # guard digits on top of the integrand's magnitude
    guard_digits: int = 25

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError("abs_tol must be positive")
        if not 0 <= self.max_panel_doublings <= 24:
            raise DomainError("max_panel_doublings must be in [0, 24]")


def composite_simpson(
    f: Callable,
    lo: float,
    hi: float,
    tol: float,
    cfg: QuadratureConfig,
    *,
    min_panels: int = 2,
    magnitude: float = 1.0,
) -> mpmath.mpf:
    """Composite Simpson with panel doubling.

    Stops once two successive estimates differ by less than ``tol`` and the
    panel count has reached ``min_panels``. Evaluation happens in mpmath at
    enough digits that ``tol`` stays meaningful for integrands as large as
    ``magnitude``; ``f`` receives and returns mpf values.
    """
    digits = cfg.guard_digits + max(0, int(math.log10(max(magnitude, 1.0))) + 1)
    digits += max(0, int(-math.log10(tol)))
    with mpmath.workdps(digits):
        a, b = mpmath.mpf(lo), mpmath.mpf(hi)

        def simpson(m: int) -> mpmath.mpf:
            h = (b - a) / m
            odd = mpmath.fsum(f(a + (2 * j + 1) * h) for j in range(m // 2))
            even = mpmath.fsum(f(a + 2 * j * h) for j in range(1, m // 2))
            return h / 3 * (f(a) + f(b) + 4 * odd + 2 * even)

        m = 2
        prev = simpson(m)
        for _ in range(cfg.max_panel_doublings):
            m *= 2
            cur = simpson(m)
            if m >= min_panels and abs(cur - prev) < tol:
                return +cur
            prev = cur
    raise ConvergenceError(
        f"Simpson did not settle to {tol:g} within {cfg.max_panel_doublings} doublings"
    )


def t_integral(n: int, a, cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """(1/pi) int_0^pi (1 + a + 2 sqrt(a) cos t)^n dt by composite Simpson."""
    if n < 0:
        raise DomainError("n must be >= 0")
    if a < 0:
        raise DomainError("t_integral needs a >= 0")
    if n == 0:
        return 1.0
    if isinstance(a, (int, Fraction)):
        num, den = Fraction(a).numerator, Fraction(a).denominator
    else:
        num, den = a, 1

    def integrand(t):
        av = mpmath.mpf(num) / den
        return (1 + av + 2 * mpmath.sqrt(av) * mpmath.cos(t)) ** n

    peak = (1 + float(a) + 2 * math.sqrt(float(a))) ** n
    # degree-n trig polynomial: Simpson is exact once panels exceed n
    val = composite_simpson(
        integrand, 0.0, math.pi, cfg.abs_tol * math.pi, cfg,
        min_panels=n + 1, magnitude=peak,
    )
    return float(val / mpmath.pi)


def binomial_square_sum(n: int, a) -> Fraction:
    """sum_{k=0}^{n} C(n,k)^2 a^k, the exact value of :func:`t_integral`."""
    if n < 0:
        raise DomainError("n must be >= 0")
    a = as_rat(a)
    p, q = a.numerator, a.denominator
    total = sum(binomial(n, k) ** 2 * p**k * q ** (n - k) for k in range(n + 1))
    return Fraction(total, q**n)


def legendre_pn(n: int, x: float) -> float:
    """P_n(x) by Bonnet's recurrence."""
    if n < 0:
        raise DomainError("n must be >= 0")
    p0, p1 = 1.0, float(x)
    if n == 0:
        return p0
    for m in range(1, n):
        p0, p1 = p1, ((2 * m + 1) * x * p1 - m * p0) / (m + 1)
    return p1


def central_binom_quadrature(k: int, cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """(1/pi) int_0^pi (2 cos t)^(2k) dt; tolerance is relative to C(2k,k)."""
    if not 0 <= k <= 30:
        raise DomainError("central_binom_quadrature needs 0 <= k <= 30")
    if k == 0:
        return 1.0
    scale = float(binomial(2 * k, k))
    val = composite_simpson(
        lambda t: (2 * mpmath.cos(t)) ** (2 * k), 0.0, math.pi,
        cfg.abs_tol * scale * math.pi, cfg,
        min_panels=2 * k + 1, magnitude=4.0**k,
    )
    return float(val / mpmath.pi)


class ModelKind(str, enum.Enum):
    PAPER_THEOREM31 = "paper"
    SINGULARITY_CORRECTED = "singularity"


@dataclass(frozen=True)
class AsymptoticModel:
    """Leading-order model S_n(a) ~ const * n^(-1/2) * growth_base^n."""

    kind: ModelKind
    a: float
    rho: float = field(init=False)
    growth_base: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind(self.kind))
        if not self.a > 0:
            raise DomainError("asymptotic models need a > 0")
        if self.kind is ModelKind.PAPER_THEOREM31:
            g = (1 + math.sqrt(self.a)) ** 2
            rho = 1 / g
        else:
            rho = 0.25 if self.a <= 1 else 1 / (4 * self.a)
            g = 1 / rho
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "growth_base", g)


def asym_log_value(model: AsymptoticModel, n: int) -> float:
    """Natural log of the model's prediction for S_n(a)."""
    if n < 1:
        raise DomainError("asymptotic models need n >= 1")
    a = model.a
    if model.kind is ModelKind.PAPER_THEOREM31:
        return 2 * n * math.log1p(math.sqrt(a)) - 0.5 * math.log(math.pi * n) - 0.25 * math.log(a)
    if a < 1:
        return n * math.log(4) - 0.5 * math.log(math.pi * n * (1 - a))
    if a == 1:
        # F(x) = 1/(1-4x) exactly
        return n * math.log(4)
    return n * math.log(4 * a) - 0.5 * math.log(math.pi * n) + 0.5 * math.log(a / (a - 1))


def log_s_exact(n: int, a) -> float:
    """log S_n(a) from the exact value; safe for values far beyond float range."""
    v = s_recurrence(n, a)
    if v <= 0:
        raise DomainError(f"S_{n}({a}) = {v} is not positive")
    # math.log accepts arbitrarily large ints
    return math.log(v.numerator) - math.log(v.denominator)


def _phi_domain(x: float, a: float) -> None:
    if not a > 0:
        raise DomainError("phi needs a > 0")
    if not 0 < x < min(0.25, 1 / (4 * a)):
        raise DomainError(f"x = {x} outside (0, min(1/4, 1/(4a)))")


def phi(x: float, a: float) -> float:
    _phi_domain(x, a)
    return -math.log(x) - 0.5 * math.log1p(-4 * x) - 0.5 * math.log1p(-4 * a * x)


def phi_prime(x: float, a: float) -> float:
    _phi_domain(x, a)
    return -1 / x + 2 / (1 - 4 * x) + 2 * a / (1 - 4 * a * x)


def saddle_solve(a: float, tol: float = 1e-12) -> float:
    """Root of phi_prime on (0, min(1/4, 1/(4a))) by bisection."""
    if not a > 0:
        raise DomainError("saddle_solve needs a > 0")
    right = min(0.25, 1 / (4 * a))
    lo, hi = right * 1e-12, math.nextafter(right, 0.0)
    if not (phi_prime(lo, a) < 0 < phi_prime(hi, a)):
        raise ConvergenceError("phi_prime has no sign change on the bracket")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if phi_prime(mid, a) < 0:
            lo = mid
        else:
            hi = mid
    # one interpolation step inside the final bracket
    flo, fhi = phi_prime(lo, a), phi_prime(hi, a)
    x = lo - flo * (hi - lo) / (fhi - flo)
    return x if lo <= x <= hi else 0.5 * (lo + hi)


def saddle_closed_form(a: float) -> float:
    """Smaller root of 32 a x^2 - 6 (1+a) x + 1 = 0, equivalent to phi_prime = 0."""
    if not a > 0:
        raise DomainError("a must be > 0")
    disc = 36 * (1 + a) ** 2 - 128 * a
    # rationalized form avoids cancellation
    return 2 / (6 * (1 + a) + math.sqrt(disc))
