"""Exact rational scalars.

All quantities in the package (measures, heights, weights, right-hand
sides) are exact rationals so that every identity can be tested as exact
equality.  gmpy2's mpq is used when available for speed; fractions.Fraction
is a drop-in fallback.  Values of either type interoperate freely.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError

try:
    from gmpy2 import mpq as _mpq

    def rat(p, q=1):
        """Exact rational p/q.  Accepts ints, rationals, and "p/q" strings."""
        if isinstance(p, str):
            return _mpq(p) if q == 1 else _mpq(int(p), q)
        return _mpq(p, q)

except ImportError:  # pragma: no cover - exercised only without gmpy2
    def rat(p, q=1):
        if isinstance(p, str):
            return Fraction(p) if q == 1 else Fraction(int(p), q)
        return Fraction(p, q)


R0 = rat(0)
R1 = rat(1)


def parse_rat(text):
    """Parse "p/q" or "p" (also plain ints) into an exact rational."""
    if isinstance(text, int):
        return rat(text)
    if isinstance(text, str):
        s = text.strip()
        if "/" in s:
            p, q = s.split("/", 1)
            return rat(int(p), int(q))
        return rat(int(s))
    raise TypeError(f"cannot parse rational from {text!r}")


def fmt_rat(x):
    """Render a rational as "p/q", or "p" when the denominator is 1."""
    n, d = x.numerator, x.denominator
    return str(n) if d == 1 else f"{n}/{d}"


def is_integral(x):
    return x.denominator == 1


def rfloor(x):
    return rat(math.floor(x))


def rfrac(x):
    """Fractional part x - floor(x), in [0, 1)."""
    return x - rfloor(x)


def sqrt_bounds(x, digits=40):
    """Rational lo <= sqrt(x) <= hi with hi - lo <= 10**-digits.

    Pure integer computation: sqrt(p/q) = sqrt(p*q)/q, bracketed by
    isqrt at a scaled precision.
    """
    if x < 0:
        raise DomainError(f"square root of negative rational {x}")
    p, q = x.numerator, x.denominator
    scale = 10 ** digits
    n = p * q * scale * scale
    s = math.isqrt(n)
    lo = rat(s, q * scale)
    hi = lo if s * s == n else rat(s + 1, q * scale)
    return lo, hi


def sqrt_approx(x, digits=40):
    """Rational approximation of sqrt(x), accurate to 10**-digits."""
    lo, _hi = sqrt_bounds(x, digits)
    return lo
