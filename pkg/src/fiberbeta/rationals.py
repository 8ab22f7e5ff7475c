"""Exact rational scalars.

Every quantity in the production path is an exact rational; floats are
confined to test oracles and final report rendering.  Arithmetic is backed
by gmpy2.mpq when available (GMP-normalized fractions keep the 450-component
runs fast) and falls back to fractions.Fraction otherwise.  Both backends
are always stored in lowest terms with positive denominator and interoperate
freely, so callers only ever go through :func:`rat`.
"""

from __future__ import annotations

import numbers
import re
from fractions import Fraction

from .errors import ExactnessError, MalformedInput

try:
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _mpq = Fraction

#: Type used in annotations; values satisfy numbers.Rational.
Rat = numbers.Rational

_RAT_RE = re.compile(r"^[+-]?\d+(/[+-]?\d+)?$")

ZERO = _mpq(0)
ONE = _mpq(1)


def rat(value, denominator=None) -> Rat:
    """Build an exact rational from ints, rationals, or 'n/d' strings.

    Floats are rejected: silent binary-to-rational conversion is exactly
    the kind of precision leak this package exists to prevent.
    """
    if denominator is not None:
        if denominator == 0:
            raise MalformedInput("zero denominator")
        return _mpq(rat(value)) / _mpq(rat(denominator))
    if isinstance(value, bool):
        raise MalformedInput("boolean is not a rational")
    if isinstance(value, numbers.Rational):
        return _mpq(value.numerator, value.denominator)
    if isinstance(value, float):
        raise ExactnessError(f"float literal {value!r} rejected; use 'n/d'")
    if isinstance(value, str):
        text = value.strip()
        if not _RAT_RE.match(text):
            raise ExactnessError(f"not an exact rational literal: {value!r}")
        num, _, den = text.partition("/")
        d = int(den) if den else 1
        if d == 0:
            raise MalformedInput(f"zero denominator in {value!r}")
        return _mpq(int(num), d)
    raise MalformedInput(f"cannot interpret {value!r} as a rational")


def format_rat(x: Rat) -> str:
    """Canonical text form: plain integer when the denominator is 1."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def to_fraction(x: Rat) -> Fraction:
    return Fraction(x.numerator, x.denominator)
