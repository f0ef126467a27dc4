"""Exact evaluators for the weighted Catalan convolution

    S_n(a) = sum_{k=0}^{n} C(2k,k) C(2(n-k),n-k) a^k.

:func:`s_direct` is the reference: every other route is required to agree
with it exactly. The remaining evaluators each follow an independent
formula (Catalan weights, a three-term recurrence, a terminating 2F1,
a binomial re-expansion of the generating function, a Narayana refinement,
and power series inversion).

Rational ``a = p/q`` is handled by scaling with ``q**n`` so the inner loops
run on integers; results are returned as ``Fraction``.
"""

from __future__ import annotations

import enum
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .errors import DomainError
from .exactnum import as_rat, binomial, catalan, narayana
from .series import PowerSeries, ps_coeff, ps_inv_sqrt

__all__ = [
    "Method",
    "EvalRequest",
    "EvalResult",
    "evaluate",
    "s_direct",
    "s_weighted_catalan",
    "s_recurrence",
    "hyp2f1_terminating",
    "s_hypergeometric",
    "s_identity_proof_form",
    "s_narayana",
    "s_series",
    "dyck_enumerate",
    "peak_histogram",
    "reciprocity_check",
    "DYCK_MAX_K",
    "NARAYANA_MAX_N",
]

DYCK_MAX_K = 12
# the Narayana route is a literal triple sum, cubic in n
NARAYANA_MAX_N = 200


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")


def _split(a) -> tuple[int, int]:
    a = as_rat(a)
    return a.numerator, a.denominator


def s_direct(n: int, a) -> Fraction:
    """The defining convolution, summed term by term."""
    _check_n(n)
    p, q = _split(a)
    # q^n S_n = sum_k C(2k,k) C(2(n-k),n-k) p^k q^(n-k)
    total = 0
    for k in range(n + 1):
        total += binomial(2 * k, k) * binomial(2 * (n - k), n - k) * p**k * q ** (n - k)
    return Fraction(total, q**n)


def s_weighted_catalan(n: int, a) -> Fraction:
    _check_n(n)
    p, q = _split(a)
    total = 0
    for k in range(n + 1):
        total += (k + 1) * (n - k + 1) * catalan(k) * catalan(n - k) * p**k * q ** (n - k)
    return Fraction(total, q**n)


def s_recurrence(n: int, a) -> Fraction:
    """Fast path: (m+1) S_{m+1} = 2(2m+1)(1+a) S_m - 16 m a S_{m-1}.

    Starts from S_0 = 1, S_1 = 2(1+a). Linear number of big-integer
    operations, so this is the route used for large ``n``.
    """
    _check_n(n)
    p, q = _split(a)
    # T_m = q^m S_m is an integer and obeys
    # (m+1) T_{m+1} = 2(2m+1)(p+q) T_m - 16 m p q T_{m-1}
    prev, cur = 1, 2 * (p + q)
    if n == 0:
        return Fraction(1)
    s = p + q
    pq16 = 16 * p * q
    for m in range(1, n):
        nxt, r = divmod(2 * (2 * m + 1) * s * cur - pq16 * m * prev, m + 1)
        assert r == 0
        prev, cur = cur, nxt
    return Fraction(cur, q**n)


def hyp2f1_terminating(n: int, b, c, z) -> Fraction:
    """2F1(-n, b; c; z) as the finite sum of its n+1 terms."""
    _check_n(n)
    b, c, z = as_rat(b), as_rat(c), as_rat(z)
    if c <= 0 and c.denominator == 1 and -c <= n - 1:
        raise DomainError(f"2F1 has a pole: c = {c} with n = {n}")
    term = Fraction(1)
    total = Fraction(1)
    for k in range(n):
        term = term * (k - n) * (b + k) * z / ((c + k) * (k + 1))
        if not term:
            break
        total += term
    return total


def s_hypergeometric(n: int, a) -> Fraction:
    """4^n 2F1(-n, 1/2; 1; 1-a)."""
    _check_n(n)
    a = as_rat(a)
    return 4**n * hyp2f1_terminating(n, Fraction(1, 2), 1, 1 - a)


def s_identity_proof_form(n: int, a) -> Fraction:
    """sum_{m<=n/2} C(2(n-m),n-m) C(n-m,m) (a+1)^(n-2m) (-4a)^m.

    Comes from expanding 1/sqrt(1 - 4(a+1)x + 16 a x^2) binomially in
    u = 4(a+1)x - 16 a x^2.
    """
    _check_n(n)
    p, q = _split(a)
    # scale by q^n: (a+1)^(n-2m) (-4a)^m q^n = (p+q)^(n-2m) (-4p)^m q^m
    total = 0
    for m in range(n // 2 + 1):
        total += (
            binomial(2 * (n - m), n - m)
            * binomial(n - m, m)
            * (p + q) ** (n - 2 * m)
            * (-4 * p) ** m
            * q**m
        )
    return Fraction(total, q**n)


def _narayana0(k: int, i: int) -> int:
    # the empty path has no peaks and counts once: N(0, 0) = 1
    if k == 0:
        return 1 if i == 0 else 0
    return narayana(k, i)


def _peak_range(k: int) -> range:
    return range(0, 1) if k == 0 else range(1, k + 1)


def s_narayana(n: int, a) -> Fraction:
    """Triple sum over path pairs refined by peak counts.

    Boundary convention: a path of semilength 0 contributes a single
    factor N(0, 0) = 1, otherwise the k = 0 and k = n terms would vanish
    and S_0 would be 0 instead of 1.
    """
    _check_n(n)
    if n > NARAYANA_MAX_N:
        raise DomainError(f"narayana route is limited to n <= {NARAYANA_MAX_N}")
    p, q = _split(a)
    total = 0
    for k in range(n + 1):
        w = (k + 1) * (n - k + 1) * p**k * q ** (n - k)
        for i in _peak_range(k):
            nki = _narayana0(k, i)
            for j in _peak_range(n - k):
                total += w * nki * _narayana0(n - k, j)
    return Fraction(total, q**n)


def s_series(n: int, a) -> Fraction:
    """Coefficient of x^n in 1/sqrt(1 - 4(1+a)x + 16 a x^2)."""
    _check_n(n)
    a = as_rat(a)
    quad = PowerSeries([1, -4 * (1 + a), 16 * a], order=n + 1)
    return ps_coeff(ps_inv_sqrt(quad), n)


def _dyck(k: int) -> Iterator[tuple[int, ...]]:
    path: list[int] = []

    def rec(ups: int, height: int) -> Iterator[tuple[int, ...]]:
        downs = len(path) - ups
        if ups == k and downs == k:
            yield tuple(path)
            return
        if ups < k:
            path.append(1)
            yield from rec(ups + 1, height + 1)
            path.pop()
        if height > 0:
            path.append(-1)
            yield from rec(ups, height - 1)
            path.pop()

    yield from rec(0, 0)


def _peaks(path: tuple[int, ...]) -> int:
    return sum(1 for s, t in zip(path, path[1:]) if s == 1 and t == -1)


def dyck_enumerate(k: int) -> list[tuple[tuple[int, ...], int]]:
    """Every Dyck path of semilength ``k`` with its peak count, by brute force."""
    _check_n(k)
    if k > DYCK_MAX_K:
        raise DomainError(f"exhaustive enumeration is limited to k <= {DYCK_MAX_K}")
    return [(path, _peaks(path)) for path in _dyck(k)]


def peak_histogram(k: int) -> dict[int, int]:
    return dict(sorted(Counter(pk for _, pk in dyck_enumerate(k)).items()))


def reciprocity_check(n: int, a) -> tuple[Fraction, Fraction]:
    """(S_n(a), a^n S_n(1/a)); the two agree by reversing the summation index."""
    _check_n(n)
    a = as_rat(a)
    if a == 0:
        raise DomainError("reciprocity needs a != 0")
    return s_direct(n, a), a**n * s_direct(n, 1 / a)


class Method(str, enum.Enum):
    DIRECT = "direct"
    WEIGHTED_CATALAN = "weighted-catalan"
    RECURRENCE = "recurrence"
    HYPERGEOMETRIC = "hyper"
    IDENTITY_PROOF_FORM = "identity"
    NARAYANA = "narayana"
    SERIES = "series"


EVALUATORS: dict[Method, Callable[[int, Fraction], Fraction]] = {
    Method.DIRECT: s_direct,
    Method.WEIGHTED_CATALAN: s_weighted_catalan,
    Method.RECURRENCE: s_recurrence,
    Method.HYPERGEOMETRIC: s_hypergeometric,
    Method.IDENTITY_PROOF_FORM: s_identity_proof_form,
    Method.NARAYANA: s_narayana,
    Method.SERIES: s_series,
}


@dataclass(frozen=True)
class EvalRequest:
    n: int
    a: Fraction
    method: Method = Method.RECURRENCE

    def __post_init__(self):
        _check_n(self.n)
        object.__setattr__(self, "a", as_rat(self.a))
        object.__setattr__(self, "method", Method(self.method))


@dataclass(frozen=True)
class EvalResult:
    value: Fraction
    method: Method
    n: int
    a: Fraction
    elapsed: float = field(compare=False)


def evaluate(request: EvalRequest) -> EvalResult:
    fn = EVALUATORS[request.method]
    t0 = time.perf_counter()
    value = fn(request.n, request.a)
    return EvalResult(value, request.method, request.n, request.a, time.perf_counter() - t0)
