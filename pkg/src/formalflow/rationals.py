"""Exact rational arithmetic used everywhere in the algebra core.

``rat`` is the rational constructor; gmpy2.mpq when available (much faster
for the long degree recursions), fractions.Fraction otherwise.  Both types
interoperate with ints and with each other, so the rest of the code never
cares which one is active.
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as rat  # type: ignore
except ImportError:  # pragma: no cover
    rat = Fraction

RZERO = rat(0)
RONE = rat(1)


def rat_from_string(text):
    """Parse 'p' or 'p/q' into an exact rational."""
    s = text.strip()
    if "/" in s:
        num, den = s.split("/")
        return rat(int(num), int(den))
    return rat(int(s))


def rat_str(q) -> str:
    """Canonical string for a rational: 'p' or 'p/q' with q > 0."""
    f = Fraction(int(q.numerator), int(q.denominator))
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def binomial(n: int, k: int) -> int:
    import math

    return math.comb(n, k)
