"""The exact coefficient ring Q[A][w, w^-1].

A Scalar is a sparse Laurent polynomial in the frequency symbol ``w`` (the
forcing frequency, only ever printed as ``w``; inverse powers as ``w^-1``)
whose coefficients are polynomials in the external amplitude parameter ``A``
with exact rational coefficients.  All series coefficients, polynomial
vector-field coefficients and oscillatory coefficients in this package are
built over this ring; no floating point enters the algebra core.

Terms are stored as ``{(a_pow, w_pow): rational}`` with zero coefficients
dropped, so equality is structural.
"""

from __future__ import annotations

from .errors import SpecParseError
from .rationals import RONE, RZERO, rat, rat_from_string, rat_str


class Scalar:
    """Immutable element of Q[A][w, w^-1]."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        data = {}
        if terms:
            for key, coef in terms.items():
                if coef != 0:
                    data[key] = data.get(key, RZERO) + coef
        self.terms = {k: v for k, v in data.items() if v != 0}
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rational(q) -> "Scalar":
        q = rat(q) if not isinstance(q, int) else rat(q)
        return Scalar({(0, 0): q}) if q != 0 else SCALAR_ZERO

    @staticmethod
    def monomial(q, a_pow: int = 0, w_pow: int = 0) -> "Scalar":
        return Scalar({(a_pow, w_pow): rat(q)})

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(k == (0, 0) for k in self.terms)

    def as_rational(self):
        """The rational value of a constant Scalar (raises if A or w appear)."""
        if not self.terms:
            return RZERO
        if not self.is_rational():
            raise ValueError(f"scalar {self} is not a plain rational")
        return self.terms[(0, 0)]

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "Scalar") -> "Scalar":
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for key, coef in other.terms.items():
            acc = out.get(key, RZERO) + coef
            if acc == 0:
                out.pop(key, None)
            else:
                out[key] = acc
        res = Scalar.__new__(Scalar)
        res.terms = out
        res._hash = None
        return res

    def __neg__(self) -> "Scalar":
        res = Scalar.__new__(Scalar)
        res.terms = {k: -v for k, v in self.terms.items()}
        res._hash = None
        return res

    def __sub__(self, other: "Scalar") -> "Scalar":
        return self + (-other)

    def __mul__(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            # rational or int multiplier
            q = rat(other)
            if q == 0:
                return SCALAR_ZERO
            res = Scalar.__new__(Scalar)
            res.terms = {k: v * q for k, v in self.terms.items()}
            res._hash = None
            return res
        if not self.terms or not other.terms:
            return SCALAR_ZERO
        out = {}
        for (a1, w1), c1 in self.terms.items():
            for (a2, w2), c2 in other.terms.items():
                key = (a1 + a2, w1 + w2)
                acc = out.get(key, RZERO) + c1 * c2
                if acc == 0:
                    out.pop(key, None)
                else:
                    out[key] = acc
        res = Scalar.__new__(Scalar)
        res.terms = out
        res._hash = None
        return res

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Scalar) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- structure ------------------------------------------------------

    def w_shift(self, power: int) -> "Scalar":
        """Multiply by w**power."""
        res = Scalar.__new__(Scalar)
        res.terms = {(a, w + power): c for (a, w), c in self.terms.items()}
        res._hash = None
        return res

    def coordinates(self):
        """Iterate ((a_pow, w_pow), rational) pairs; used to flatten linear algebra over Q."""
        return self.terms.items()

    def evaluate(self, a_value: float, w_value: float) -> float:
        total = 0.0
        for (ap, wp), coef in self.terms.items():
            total += float(coef) * (a_value**ap) * (w_value**wp)
        return total

    # -- formatting -------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (ap, wp) in sorted(self.terms):
            coef = self.terms[(ap, wp)]
            factors = []
            if ap:
                factors.append("A" if ap == 1 else f"A^{ap}")
            if wp:
                factors.append("w" if wp == 1 else f"w^{wp}")
            if not factors or coef != 1:
                if coef == -1 and factors:
                    factors.insert(0, "-1")
                else:
                    factors.insert(0, rat_str(coef))
            parts.append("*".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self) -> str:
        return f"Scalar({self})"

    @staticmethod
    def parse(text: str) -> "Scalar":
        """Parse strings like '-1/2*w^-2', '3/4', 'A', '2*A^2*w'."""
        s = text.replace(" ", "")
        if not s:
            raise SpecParseError("empty scalar string")
        total = SCALAR_ZERO
        i, sign = 0, 1
        term, terms = "", []
        # split on top-level + and - (no parentheses in scalar syntax)
        while i < len(s):
            ch = s[i]
            if ch in "+-" and i > 0 and s[i - 1] not in "^+-*/":
                terms.append(term)
                term = ch if ch == "-" else ""
            else:
                term += ch
            i += 1
        terms.append(term)
        for t in terms:
            if not t:
                continue
            total = total + _parse_scalar_term(t)
        del sign
        return total


def _parse_scalar_term(term: str) -> Scalar:
    q = RONE
    a_pow = 0
    w_pow = 0
    if term.startswith("-"):
        q = -q
        term = term[1:]
    if not term:
        raise SpecParseError("dangling sign in scalar")
    for factor in term.split("*"):
        if not factor:
            raise SpecParseError(f"empty factor in scalar term {term!r}")
        base, _, exp = factor.partition("^")
        power = int(exp) if exp else 1
        if base == "A":
            a_pow += power
        elif base == "w":
            w_pow += power
        else:
            if exp:
                raise SpecParseError(f"cannot raise rational {base!r} to a power here")
            q = q * rat_from_string(base)
    return Scalar.monomial(q, a_pow, w_pow)


SCALAR_ZERO = Scalar()
SCALAR_ONE = Scalar.from_rational(1)


def scalar(q) -> Scalar:
    """Shorthand: rational (or int, or 'p/q' string) to Scalar."""
    if isinstance(q, Scalar):
        return q
    if isinstance(q, str):
        return Scalar.parse(q)
    return Scalar.from_rational(q)
