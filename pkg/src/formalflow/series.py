"""Graded formal series over a pluggable basis and coefficient ring.

A Series is a sparse map from basis indices to exact ring elements, truncated
at an explicit order N.  The dual product ``star`` is driven by a MuTable
(structure constants of the associative product the series live in), and the
character / infinitesimal-character predicates are driven by an EtaTable
(structure constants of the commutative product of the underlying Hopf
algebra).  Concrete bases -- words, decorated forests, multi-indices over an
abstract graded Lie algebra -- plug in through the small GradedBasis
interface.

Series values are immutable after construction; tables are read-only once
built, so everything here is safe for concurrent use on disjoint inputs.
"""

from __future__ import annotations

from .errors import BasisMismatchError, RingMismatchError, UnitCoefficientError
from .oscillatory import OSC_ONE, OSC_ZERO, OscCoef
from .rationals import RONE, RZERO, rat
from .scalars import SCALAR_ONE, SCALAR_ZERO, Scalar


class Ring:
    """Coefficient-ring adapter: zero/one plus conversion from rationals."""

    name = "ring"
    zero = None
    one = None

    def from_rational(self, q):
        raise NotImplementedError

    def is_zero(self, c) -> bool:
        return c == self.zero

    def coef_str(self, c) -> str:
        return str(c)


class RationalRing(Ring):
    name = "Q"
    zero = RZERO
    one = RONE

    def from_rational(self, q):
        return rat(q)

    def coef_str(self, c) -> str:
        from .rationals import rat_str

        return rat_str(c)


class ScalarRing(Ring):
    name = "Q[A][w,w^-1]"
    zero = SCALAR_ZERO
    one = SCALAR_ONE

    def from_rational(self, q):
        return Scalar.from_rational(q)

    def is_zero(self, c) -> bool:
        return c.is_zero()


class OscRing(Ring):
    name = "OscCoef"
    zero = OSC_ZERO
    one = OSC_ONE

    def from_rational(self, q):
        return OscCoef.from_scalar(Scalar.from_rational(q))

    def is_zero(self, c) -> bool:
        return c.is_zero()


QQ = RationalRing()
SCALARS = ScalarRing()
OSC = OscRing()


class GradedBasis:
    """An indexed graded family of basis symbols.

    Concrete bases provide the degree map, the unique degree-0 unit index, a
    canonical index string, and (when finite per degree) enumeration of the
    index set of each degree.
    """

    name = "basis"

    def degree(self, index) -> int:
        raise NotImplementedError

    def unit(self):
        raise NotImplementedError

    def indices_of_degree(self, n: int):
        raise NotImplementedError

    def index_str(self, index) -> str:
        raise NotImplementedError

    def indices_up_to(self, n: int):
        for d in range(n + 1):
            yield from self.indices_of_degree(d)


class MuTable:
    """Structure constants of the associative star product.

    ``products(j1, j2)`` yields (j, coefficient) pairs such that
    Z_{j1} * Z_{j2} = sum_j coeff * Z_j.  Implementations may be lazy
    (concatenation of words) or table-backed (from structure constants).
    """

    def products(self, j1, j2):
        raise NotImplementedError


class EtaTable:
    """Structure constants of the commutative product of the Hopf algebra.

    ``dual_product(j1, j2)`` yields (j, coefficient) pairs with
    u_{j1} u_{j2} = sum_j coeff * u_j; dually these are the coefficients of
    Z_{j1} (x) Z_{j2} in the cocommutative coproduct of Z_j.
    """

    def dual_product(self, j1, j2):
        raise NotImplementedError


class Series:
    """Sparse graded series with explicit truncation order.

    Stored coefficients never exceed the truncation order and are never zero,
    so equality is structural.  Instances are immutable.
    """

    __slots__ = ("basis", "ring", "order", "coeffs")

    def __init__(self, basis: GradedBasis, ring: Ring, order: int, coeffs=None):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        data = {}
        if coeffs:
            for idx, c in coeffs.items():
                if basis.degree(idx) > order or ring.is_zero(c):
                    continue
                data[idx] = c
        self.basis = basis
        self.ring = ring
        self.order = order
        self.coeffs = data

    # -- accessors -------------------------------------------------------

    def coeff(self, index):
        return self.coeffs.get(index, self.ring.zero)

    def items(self):
        return self.coeffs.items()

    def support(self):
        return self.coeffs.keys()

    def unit_coeff(self):
        """Counit evaluation: the stored coefficient at the unit index."""
        return self.coeff(self.basis.unit())

    def homogeneous_part(self, n: int) -> "Series":
        part = {j: c for j, c in self.coeffs.items() if self.basis.degree(j) == n}
        return Series(self.basis, self.ring, self.order, part)

    def truncate(self, order: int) -> "Series":
        if order >= self.order:
            return self
        return Series(self.basis, self.ring, order, self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    # -- linear structure ----------------------------------------------------

    def __add__(self, other: "Series") -> "Series":
        _check_compatible(self, other)
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for j, c in other.coeffs.items():
            acc = out.get(j)
            out[j] = c if acc is None else acc + c
        return Series(self.basis, self.ring, order, out)

    def __neg__(self) -> "Series":
        return Series(self.basis, self.ring, self.order, {j: -c for j, c in self.coeffs.items()})

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def scale(self, c) -> "Series":
        return Series(self.basis, self.ring, self.order, {j: c * v for j, v in self.coeffs.items()})

    def map_coeffs(self, fn) -> "Series":
        return Series(self.basis, self.ring, self.order, {j: fn(c) for j, c in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Series)
            and self.basis is other.basis
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        inner = ", ".join(
            f"{self.basis.index_str(j)}: {self.ring.coef_str(c)}" for j, c in sorted(
                self.coeffs.items(), key=lambda kv: (self.basis.degree(kv[0]), self.basis.index_str(kv[0]))
            )
        )
        return f"Series[N={self.order}]({inner})"

    def records(self):
        """Serialization rows: (degree, canonical index string, coefficient string)."""
        rows = []
        for j, c in self.coeffs.items():
            rows.append((self.basis.degree(j), self.basis.index_str(j), self.ring.coef_str(c)))
        rows.sort(key=lambda r: (r[0], r[1]))
        return rows


def unit_series(basis: GradedBasis, ring: Ring, order: int) -> Series:
    return Series(basis, ring, order, {basis.unit(): ring.one})


def _check_compatible(s1: Series, s2: Series):
    if s1.basis is not s2.basis:
        raise BasisMismatchError(f"{s1.basis.name} vs {s2.basis.name}")
    if s1.ring is not s2.ring:
        raise RingMismatchError(f"{s1.ring.name} vs {s2.ring.name}")


def star(s1: Series, s2: Series, mu: MuTable) -> Series:
    """The dual product: <s, u_j> = sum mu^j_{j1,j2} <s1,u_{j1}> <s2,u_{j2}>."""
    _check_compatible(s1, s2)
    order = min(s1.order, s2.order)
    basis, ring = s1.basis, s1.ring
    out = {}
    for j1, c1 in s1.coeffs.items():
        d1 = basis.degree(j1)
        if d1 > order:
            continue
        for j2, c2 in s2.coeffs.items():
            if d1 + basis.degree(j2) > order:
                continue
            c12 = c1 * c2
            for j, m in mu.products(j1, j2):
                # mu structure constants are plain rationals
                term = c12 if m == 1 else ring.from_rational(m) * c12
                acc = out.get(j)
                out[j] = term if acc is None else acc + term
    return Series(basis, ring, order, out)


def star_power(s: Series, k: int, mu: MuTable) -> Series:
    out = unit_series(s.basis, s.ring, s.order)
    for _ in range(k):
        out = star(out, s, mu)
    return out


def exp_series(beta: Series, mu: MuTable) -> Series:
    """exp with respect to star: 1 + beta + beta*beta/2 + ...

    Requires a vanishing coefficient at the unit index; the result is a
    character whenever beta is an infinitesimal character.
    """
    ring = beta.ring
    if not ring.is_zero(beta.unit_coeff()):
        raise UnitCoefficientError("exp_series needs zero coefficient at the unit")
    out = unit_series(beta.basis, ring, beta.order)
    term = unit_series(beta.basis, ring, beta.order)
    for k in range(1, beta.order + 1):
        term = star(term, beta, mu).scale(ring.from_rational(rat(1, k)))
        if term.is_zero():
            break
        out = out + term
    return out


def log_series(gamma: Series, mu: MuTable) -> Series:
    """log with respect to star: (g-1) - (g-1)^2/2 + ...

    Requires unit coefficient exactly 1; inverse of exp_series to order N.
    """
    ring = gamma.ring
    if gamma.unit_coeff() != ring.one:
        raise UnitCoefficientError("log_series needs unit coefficient 1")
    rest = Series(
        gamma.basis,
        ring,
        gamma.order,
        {j: c for j, c in gamma.coeffs.items() if j != gamma.basis.unit()},
    )
    out = Series(gamma.basis, ring, gamma.order, {})
    power = unit_series(gamma.basis, ring, gamma.order)
    for k in range(1, gamma.order + 1):
        power = star(power, rest, mu)
        if power.is_zero():
            break
        sign = rat(1, k) if k % 2 == 1 else rat(-1, k)
        out = out + power.scale(ring.from_rational(sign))
    return out


def star_inverse(gamma: Series, mu: MuTable) -> Series:
    """Inverse of a unit-coefficient-1 series: 1 + sum (-1)^k (g-1)^k."""
    ring = gamma.ring
    if gamma.unit_coeff() != ring.one:
        raise UnitCoefficientError("star_inverse needs unit coefficient 1")
    rest = Series(
        gamma.basis,
        ring,
        gamma.order,
        {j: c for j, c in gamma.coeffs.items() if j != gamma.basis.unit()},
    )
    out = unit_series(gamma.basis, ring, gamma.order)
    power = unit_series(gamma.basis, ring, gamma.order)
    for k in range(1, gamma.order + 1):
        power = star(power, rest, mu)
        if power.is_zero():
            break
        out = out + power.scale(ring.from_rational(rat((-1) ** k)))
    return out


def is_character(s: Series, eta: EtaTable, order=None) -> bool:
    """Multiplicativity <s, u_j1 u_j2> = <s,u_j1><s,u_j2> up to total degree N."""
    n = s.order if order is None else order
    if s.unit_coeff() != s.ring.one:
        return False
    return _predicate(s, eta, n, lambda c1, c2, e1, e2: c1 * c2)


def is_infinitesimal(s: Series, eta: EtaTable, order=None) -> bool:
    """The epsilon-derivation identity up to total degree N."""
    n = s.order if order is None else order
    if not s.ring.is_zero(s.unit_coeff()):
        return False

    def rhs(c1, c2, e1, e2):
        # <s,u_j1> eps(u_j2) + eps(u_j1) <s,u_j2>
        total = s.ring.zero
        if e2:
            total = total + c1
        if e1:
            total = total + c2
        return total

    return _predicate(s, eta, n, rhs)


def _predicate(s: Series, eta: EtaTable, n: int, rhs) -> bool:
    basis, ring = s.basis, s.ring
    unit = basis.unit()
    for d1 in range(0, n + 1):
        for j1 in basis.indices_of_degree(d1):
            for d2 in range(0, n - d1 + 1):
                for j2 in basis.indices_of_degree(d2):
                    lhs = ring.zero
                    for j, q in eta.dual_product(j1, j2):
                        c = s.coeffs.get(j)
                        if c is None:
                            continue
                        lhs = lhs + (c if q == 1 else ring.from_rational(q) * c)
                    want = rhs(s.coeff(j1), s.coeff(j2), j1 == unit, j2 == unit)
                    if not ring.is_zero(lhs - want):
                        return False
    return True


class Character:
    """A series together with the degree to which multiplicativity was certified."""

    __slots__ = ("series", "certified")

    def __init__(self, series: Series, certified: int):
        self.series = series
        self.certified = certified

    def __repr__(self):
        return f"Character(certified={self.certified}, {self.series!r})"


class InfinitesimalCharacter:
    """A series together with the degree to which the derivation law was certified."""

    __slots__ = ("series", "certified")

    def __init__(self, series: Series, certified: int):
        self.series = series
        self.certified = certified

    def __repr__(self):
        return f"InfinitesimalCharacter(certified={self.certified}, {self.series!r})"
