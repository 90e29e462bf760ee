"""Time-dependent coefficients: Q[A][w,w^-1]-combinations of t^m * trig(k*w*t).

An OscCoef is a finite sum of terms  q * t^m * cos(k*w*t)  or
q * t^m * sin(k*w*t)  with q a Scalar, integer m >= 0 and integer harmonic
k >= 0.  The constant-in-trig part is stored under k = 0 with cos;
sin(0*w*t) terms are forbidden.  Products are canonicalized eagerly with the
product-to-sum identities, so the representation stays in this linear trig
basis and structural equality is meaningful.

This ring hosts every time-dependent coefficient in the averaging pipeline:
forcing curves, Chen-series coefficients (which may pick up secular t^m
factors), and the periodic change-of-variables coefficients (which never do).
"""

from __future__ import annotations

from .errors import NonzeroMeanError, SecularTermError
from .rationals import rat
from .scalars import SCALAR_ONE, SCALAR_ZERO, Scalar, scalar

COS = 0
SIN = 1


class OscCoef:
    """Immutable oscillatory coefficient; terms: {(m, k, fn): Scalar}."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        data = {}
        if terms:
            for key, coef in terms.items():
                if coef.is_zero():
                    continue
                m, k, fn = key
                if k < 0 or m < 0:
                    raise ValueError(f"bad term key {key}")
                if k == 0 and fn == SIN:
                    continue
                prev = data.get(key)
                data[key] = coef if prev is None else prev + coef
        self.terms = {k: v for k, v in data.items() if not v.is_zero()}
        self._hash = None

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_scalar(c) -> "OscCoef":
        c = scalar(c)
        return OscCoef({(0, 0, COS): c})

    @staticmethod
    def trig(k: int, fn: int, coef=SCALAR_ONE) -> "OscCoef":
        """coef * cos(k w t) or coef * sin(k w t)."""
        return OscCoef({(0, int(k), fn): scalar(coef)})

    @staticmethod
    def cosine(k: int, coef=SCALAR_ONE) -> "OscCoef":
        return OscCoef.trig(k, COS, coef)

    @staticmethod
    def sine(k: int, coef=SCALAR_ONE) -> "OscCoef":
        return OscCoef.trig(k, SIN, coef)

    @staticmethod
    def t_power(m: int, coef=SCALAR_ONE) -> "OscCoef":
        return OscCoef({(m, 0, COS): scalar(coef)})

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_periodic(self) -> bool:
        """True when no secular t^m (m > 0) factor is present."""
        return all(m == 0 for (m, _, _) in self.terms)

    def max_harmonic(self) -> int:
        return max((k for (_, k, _) in self.terms), default=0)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "OscCoef") -> "OscCoef":
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for key, coef in other.terms.items():
            acc = out.get(key)
            acc = coef if acc is None else acc + coef
            if acc.is_zero():
                out.pop(key, None)
            else:
                out[key] = acc
        res = OscCoef.__new__(OscCoef)
        res.terms = out
        res._hash = None
        return res

    def __neg__(self) -> "OscCoef":
        res = OscCoef.__new__(OscCoef)
        res.terms = {k: -v for k, v in self.terms.items()}
        res._hash = None
        return res

    def __sub__(self, other: "OscCoef") -> "OscCoef":
        return self + (-other)

    def scale(self, c) -> "OscCoef":
        """Multiply by a Scalar (or rational)."""
        c = scalar(c)
        if c.is_zero() or not self.terms:
            return OSC_ZERO
        res = OscCoef.__new__(OscCoef)
        res.terms = {k: v * c for k, v in self.terms.items()}
        res._hash = None
        return res

    def __mul__(self, other: "OscCoef") -> "OscCoef":
        if not isinstance(other, OscCoef):
            return self.scale(other)
        if not self.terms or not other.terms:
            return OSC_ZERO
        half = rat(1, 2)
        acc = {}

        def put(m, k, fn, coef):
            if coef.is_zero():
                return
            if k < 0:
                k = -k
                if fn == SIN:
                    coef = -coef
            if k == 0 and fn == SIN:
                return
            key = (m, k, fn)
            prev = acc.get(key)
            tot = coef if prev is None else prev + coef
            if tot.is_zero():
                acc.pop(key, None)
            else:
                acc[key] = tot

        for (m1, k1, f1), c1 in self.terms.items():
            for (m2, k2, f2), c2 in other.terms.items():
                m = m1 + m2
                c = c1 * c2
                if k1 == 0 and f1 == COS:
                    put(m, k2, f2, c)
                    continue
                if k2 == 0 and f2 == COS:
                    put(m, k1, f1, c)
                    continue
                ch = c * half
                if f1 == COS and f2 == COS:
                    put(m, k1 - k2, COS, ch)
                    put(m, k1 + k2, COS, ch)
                elif f1 == SIN and f2 == SIN:
                    put(m, k1 - k2, COS, ch)
                    put(m, k1 + k2, COS, -ch)
                elif f1 == SIN and f2 == COS:
                    put(m, k1 + k2, SIN, ch)
                    put(m, k1 - k2, SIN, ch)
                else:  # cos * sin
                    put(m, k1 + k2, SIN, ch)
                    put(m, k2 - k1, SIN, ch)
        return OscCoef(acc)

    def __eq__(self, other) -> bool:
        return isinstance(other, OscCoef) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- calculus -----------------------------------------------------------

    def d_dt(self) -> "OscCoef":
        """Exact t-derivative (introduces a factor w on trig terms)."""
        acc = {}

        def put(key, coef):
            if coef.is_zero():
                return
            prev = acc.get(key)
            tot = coef if prev is None else prev + coef
            if tot.is_zero():
                acc.pop(key, None)
            else:
                acc[key] = tot

        for (m, k, fn), c in self.terms.items():
            if m > 0:
                put((m - 1, k, fn), c * rat(m))
            if k > 0:
                cw = c.w_shift(1) * rat(k)
                if fn == COS:
                    put((m, k, SIN), -cw)
                else:
                    put((m, k, COS), cw)
        return OscCoef(acc)

    def antiderivative(self) -> "OscCoef":
        """An antiderivative (integration constant not fixed)."""
        total = OSC_ZERO
        for (m, k, fn), c in self.terms.items():
            total = total + _antiderivative_term(m, k, fn).scale(c)
        return total

    def integrate_from_zero(self) -> "OscCoef":
        """The antiderivative vanishing at t = 0."""
        anti = self.antiderivative()
        return anti - OscCoef.from_scalar(anti.value_at_zero())

    def value_at_zero(self) -> Scalar:
        total = SCALAR_ZERO
        for (m, k, fn), c in self.terms.items():
            if m == 0 and fn == COS:
                total = total + c
        return total

    def mean(self) -> Scalar:
        """Average over one 2*pi/w period; input must be periodic (m = 0)."""
        if not self.is_periodic():
            raise SecularTermError(f"mean of non-periodic coefficient {self}")
        return self.terms.get((0, 0, COS), SCALAR_ZERO)

    def periodic_primitive(self) -> "OscCoef":
        """The unique zero-mean antiderivative of a zero-mean periodic input."""
        if not self.is_periodic():
            raise SecularTermError(f"periodic primitive of {self}")
        if not self.mean().is_zero():
            raise NonzeroMeanError(f"nonzero mean in {self}")
        acc = {}
        for (m, k, fn), c in self.terms.items():
            cw = c.w_shift(-1) * rat(1, k)
            if fn == COS:
                acc[(0, k, SIN)] = acc.get((0, k, SIN), SCALAR_ZERO) + cw
            else:
                acc[(0, k, COS)] = acc.get((0, k, COS), SCALAR_ZERO) - cw
        return OscCoef(acc)

    # -- evaluation / formatting -------------------------------------------

    def evaluate(self, t: float, w_value: float, a_value: float = 0.0) -> float:
        import math

        total = 0.0
        for (m, k, fn), c in self.terms.items():
            trig = math.cos(k * w_value * t) if fn == COS else math.sin(k * w_value * t)
            total += c.evaluate(a_value, w_value) * (t**m) * trig
        return total

    def constant_part(self) -> Scalar:
        """The Scalar of the t-free, trig-free term."""
        return self.terms.get((0, 0, COS), SCALAR_ZERO)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (m, k, fn) in sorted(self.terms):
            c = self.terms[(m, k, fn)]
            cs = str(c)
            if ("+" in cs[1:]) or (" - " in cs):
                cs = f"({cs})"
            factors = [cs]
            if m:
                factors.append("t" if m == 1 else f"t^{m}")
            if k:
                name = "cos" if fn == COS else "sin"
                arg = "w*t" if k == 1 else f"{k}*w*t"
                factors.append(f"{name}({arg})")
            if len(factors) > 1 and factors[0] == "1":
                factors = factors[1:]
            elif len(factors) > 1 and factors[0] == "-1":
                factors = ["-" + factors[1]] + factors[2:]
            parts.append("*".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self) -> str:
        return f"OscCoef({self})"


def _antiderivative_term(m: int, k: int, fn: int) -> OscCoef:
    """Antiderivative of t^m cos(k w t) / t^m sin(k w t), coefficient 1."""
    if k == 0:
        return OscCoef.t_power(m + 1, Scalar.monomial(rat(1, m + 1)))
    inv_kw = Scalar.monomial(rat(1, k), 0, -1)
    if fn == COS:
        lead = OscCoef({(m, k, SIN): inv_kw})
        if m == 0:
            return lead
        rec = _antiderivative_term(m - 1, k, SIN)
        return lead - rec.scale(inv_kw * rat(m))
    lead = OscCoef({(m, k, COS): -inv_kw})
    if m == 0:
        return lead
    rec = _antiderivative_term(m - 1, k, COS)
    return lead + rec.scale(inv_kw * rat(m))


OSC_ZERO = OscCoef()
OSC_ONE = OscCoef.from_scalar(SCALAR_ONE)


def osc_mean(c: OscCoef) -> Scalar:
    return c.mean()


def periodic_primitive(c: OscCoef) -> OscCoef:
    return c.periodic_primitive()


def osc_str_table(mapping, key_str=str):
    """Deterministic (key, str) rows for serialization."""
    return [(key_str(k), str(v)) for k, v in sorted(mapping.items(), key=lambda kv: key_str(kv[0]))]
