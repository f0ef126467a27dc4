"""Exact integers, rationals and the small combinatorial numbers built on them.

Python's ``int`` is already arbitrary precision and ``fractions.Fraction``
keeps every result in lowest terms with a positive denominator, so ``Int``
and ``Rat`` are plain aliases rather than wrapper classes.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError

Int = int
Rat = Fraction

__all__ = [
    "Int",
    "Rat",
    "as_rat",
    "parse_rational",
    "format_rational",
    "binomial",
    "catalan",
    "narayana",
    "pochhammer_half",
    "pochhammer",
    "central_binomial",
]

_RATIONAL_RE = re.compile(r"^([+-]?)(\d+)(?:/(\d+))?$")


def as_rat(value) -> Fraction:
    """Coerce an int, Fraction or rational literal to a Fraction.

    Floats are refused: a float ``a`` would silently turn exact identities
    into approximate ones.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"3"``, ``"-3"``, ``"7/5"``, ``"-4/9"``; reject decimals and ``x/0``."""
    m = _RATIONAL_RE.match(text.strip()) if text else None
    if m is None:
        raise DomainError(f"not a rational literal: {text!r}")
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise DomainError(f"zero denominator in {text!r}")
    value = Fraction(int(num), int(den) if den else 1)
    return -value if sign == "-" else value


def format_rational(x: Fraction) -> str:
    """Render as ``"p"`` when integral, else ``"p/q"``."""
    return str(Fraction(x))


@lru_cache(maxsize=8192)
def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside ``0 <= k <= n``."""
    if n < 0:
        raise DomainError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def central_binomial(k: int) -> int:
    return binomial(2 * k, k)


def catalan(n: int) -> int:
    if n < 0:
        raise DomainError(f"catalan needs n >= 0, got {n}")
    c, r = divmod(binomial(2 * n, n), n + 1)
    assert r == 0
    return c


def narayana(k: int, i: int) -> int:
    """Number of Dyck paths of semilength ``k`` with exactly ``i`` peaks.

    Uses N(k, i) = C(k, i) C(k, i-1) / k, which the tests check against
    exhaustive path enumeration.
    """
    if k < 1:
        raise DomainError(f"narayana needs k >= 1, got {k}")
    if i < 1 or i > k:
        return 0
    q, r = divmod(binomial(k, i) * binomial(k, i - 1), k)
    assert r == 0
    return q


def pochhammer(x: Fraction, n: int) -> Fraction:
    """Rising factorial x (x+1) ... (x+n-1)."""
    if n < 0:
        raise DomainError(f"pochhammer needs n >= 0, got {n}")
    x = as_rat(x)
    out = Fraction(1)
    for j in range(n):
        out *= x + j
    return out


def pochhammer_half(n: int) -> Fraction:
    # (1/2)_n = (2n-1)!! / 2^n
    if n < 0:
        raise DomainError(f"pochhammer_half needs n >= 0, got {n}")
    num = 1
    for j in range(1, 2 * n, 2):
        num *= j
    return Fraction(num, 1 << n)
