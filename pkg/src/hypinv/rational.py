"""Exact rationals, primality, p-adic valuations and projective-line values.

Field elements are `fractions.Fraction` throughout (always reduced, positive
denominator).  Valuations are plain Python integers, with ``math.inf``
standing in for the valuation of zero.  All pairing-type quantities are kept
in "nu units", i.e. as rational multiples of the log of the residue size;
scaling by an actual real logarithm happens only at the CLI boundary.
"""

from __future__ import annotations

import math
from fractions import Fraction


class _ProjectiveInfinity:
    """The point at infinity on the projective line (singleton ``INF``)."""

    __slots__ = ()

    def __repr__(self):
        return "inf"


INF = _ProjectiveInfinity()

#: Witness bases making Miller-Rabin deterministic below 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3317044064679887385961981


def is_prime(n):
    """Deterministic primality test for integers up to ~3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:  # pragma: no cover - desk-scale primes only
        raise ValueError("integer too large for deterministic primality test")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(p):
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"not a prime: {p!r}")


def require_odd_prime(p):
    require_prime(p)
    if p == 2:
        raise ValueError("characteristic 2 excluded")


def _int_val(n, p):
    # p-adic order of a nonzero integer
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def val(q, p):
    """p-adic order of the rational ``q``; ``math.inf`` iff q = 0."""
    require_prime(p)
    q = Fraction(q)
    if q == 0:
        return math.inf
    return _int_val(q.numerator, p) - _int_val(q.denominator, p)


def log_abs(q, p):
    """-val(q, p): the log of |q|_p in units of one (caller scales by log p)."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("log of zero")
    return -val(q, p)


def parse_rat(s):
    """Parse "n/d" or "n" into a reduced Fraction."""
    return Fraction(str(s).strip())


def format_rat(q):
    """Serialize a Fraction as "n/d", or "n" when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_point(s):
    """Parse a projective-line value: "inf" or a rational string."""
    s = str(s).strip()
    if s.lower() == "inf":
        return INF
    return parse_rat(s)


def format_point(x):
    return "inf" if x is INF else format_rat(x)


def is_finite(x):
    return x is not INF


def mobius(x, a, b, c, d):
    """Apply the fractional-linear map t -> (a*t + b)/(c*t + d) to ``x``.

    ``x`` may be ``INF``; the result is ``INF`` when the denominator
    vanishes.  The coefficients must have a*d - b*c != 0.
    """
    a, b, c, d = (Fraction(t) for t in (a, b, c, d))
    if a * d - b * c == 0:
        raise ValueError("degenerate fractional-linear map")
    if x is INF:
        return INF if c == 0 else a / c
    x = Fraction(x)
    den = c * x + d
    if den == 0:
        return INF
    return (a * x + b) / den
