"""Truncated dense power series with exact rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError
from .exactnum import as_rat, central_binomial

__all__ = [
    "PowerSeries",
    "ps_central_binomial",
    "ps_scale_arg",
    "ps_mul",
    "ps_inv_sqrt",
    "ps_coeff",
    "ps_polynomial",
]


@dataclass(frozen=True)
class PowerSeries:
    """``coeffs[k]`` is the coefficient of x^k; everything from x^order on is unknown."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = tuple(as_rat(c) for c in coeffs)
        if order is not None:
            if order < 0:
                raise DomainError("order must be >= 0")
            cs = (cs + (Fraction(0),) * order)[:order]
        object.__setattr__(self, "coeffs", cs)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        return ps_mul(self, other)

    def __repr__(self) -> str:
        body = ", ".join(str(c) for c in self.coeffs)
        return f"PowerSeries([{body}] + O(x^{self.order}))"


def ps_polynomial(coeffs: Sequence, order: int) -> PowerSeries:
    """A polynomial viewed as a series truncated at O(x^order)."""
    return PowerSeries(coeffs, order=order)


def ps_central_binomial(order: int) -> PowerSeries:
    """1/sqrt(1-4x) = sum C(2k,k) x^k."""
    if order < 0:
        raise DomainError("order must be >= 0")
    return PowerSeries(central_binomial(k) for k in range(order))


def ps_scale_arg(s: PowerSeries, a) -> PowerSeries:
    """Substitute x -> a x."""
    a = as_rat(a)
    out = []
    p = Fraction(1)
    for c in s.coeffs:
        out.append(c * p)
        p *= a
    return PowerSeries(out)


def ps_mul(p: PowerSeries, q: PowerSeries) -> PowerSeries:
    """Cauchy product truncated to the smaller of the two orders."""
    order = min(p.order, q.order)
    pc, qc = p.coeffs, q.coeffs
    # skip zero coefficients of p; the polynomial inputs here are sparse
    nz = [(i, c) for i, c in enumerate(pc[:order]) if c]
    out = [Fraction(0)] * order
    for i, c in nz:
        for j in range(order - i):
            out[i + j] += c * qc[j]
    return PowerSeries(out)


def _inv_sqrt_recurrence(p: PowerSeries) -> PowerSeries:
    # s = p^(-1/2) satisfies 2 p s' + p' s = 0, so for N >= 1
    #   s_N = -1/(2N) * sum_{i=1}^{N} (2N - i) p_i s_{N-i}
    n = p.order
    pc = p.coeffs
    nz = [(i, c) for i, c in enumerate(pc) if i and c]
    s = [Fraction(0)] * n
    if n:
        s[0] = Fraction(1)
    for N in range(1, n):
        acc = Fraction(0)
        for i, c in nz:
            if i > N:
                break
            acc += (2 * N - i) * c * s[N - i]
        s[N] = -acc / (2 * N)
    return PowerSeries(s)


def _inv_sqrt_newton(p: PowerSeries) -> PowerSeries:
    # s <- s + s (1 - p s^2) / 2, doubling the number of correct terms
    n = p.order
    if n == 0:
        return PowerSeries([])
    s = PowerSeries([1])
    m = 1
    while m < n:
        m = min(2 * m, n)
        sm = PowerSeries(s.coeffs, order=m)
        pm = PowerSeries(p.coeffs[:m], order=m)
        err = ps_mul(pm, ps_mul(sm, sm))
        resid = PowerSeries([(1 if k == 0 else 0) - c for k, c in enumerate(err.coeffs)])
        corr = ps_mul(sm, resid)
        s = PowerSeries(a + b / 2 for a, b in zip(sm.coeffs, corr.coeffs))
    return s


def ps_inv_sqrt(p: PowerSeries, method: str = "recurrence") -> PowerSeries:
    """Series s with s*s*p = 1 + O(x^order(p)); requires p[0] == 1.

    ``method`` is ``"recurrence"`` (coefficient recurrence from the ODE
    2 p s' + p' s = 0) or ``"newton"`` (Newton iteration with precision
    doubling). Both are exact.
    """
    if p.order and p.coeffs[0] != 1:
        raise DomainError(f"ps_inv_sqrt needs constant term 1, got {p.coeffs[0]}")
    if method == "recurrence":
        return _inv_sqrt_recurrence(p)
    if method == "newton":
        return _inv_sqrt_newton(p)
    raise ValueError(f"unknown method {method!r}")


def ps_coeff(p: PowerSeries, n: int) -> Fraction:
    if n < 0 or n >= p.order:
        raise IndexError(f"coefficient x^{n} is beyond O(x^{p.order})")
    return p.coeffs[n]
