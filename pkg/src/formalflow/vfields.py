"""Polynomial vector fields, differential operators and the transfer morphism.

Everything is exact: polynomial coefficients live in Q[A][w,w^-1] (Scalar),
monomials are exponent tuples over the declared state variables.  The module
provides

  * derivations (first-order operators) attached to polynomial fields and
    their commutators,
  * the morphism from words (operator compositions F_{a1}...F_{am}), from
    decorated trees (elementary differentials) and from dual-basis
    multi-indices (scaled operator products) into differential operators,
  * exact kernel quotients of morphism images,
  * the graded Lie algebra generated by monomial vector fields with a
    bookkeeping grading.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import DegreeCapError, DimensionMismatchError
from .linalg import RationalReducer
from .rationals import RZERO, rat
from .scalars import SCALAR_ONE, Scalar, scalar
from .trees import DecoratedTree

# -- polynomials ---------------------------------------------------------------


class VarSpace:
    """Named state variables of a fixed dimension."""

    __slots__ = ("names", "dim")

    def __init__(self, names):
        self.names = tuple(names)
        self.dim = len(self.names)

    def zero_exps(self):
        return (0,) * self.dim

    def var_index(self, name: str) -> int:
        return self.names.index(name)

    def __repr__(self):
        return f"VarSpace({','.join(self.names)})"


class Poly:
    """Sparse multivariate polynomial: {exponent tuple: Scalar}."""

    __slots__ = ("space", "terms")

    def __init__(self, space: VarSpace, terms=None):
        data = {}
        if terms:
            for exps, c in terms.items():
                if c.is_zero():
                    continue
                prev = data.get(exps)
                acc = c if prev is None else prev + c
                if acc.is_zero():
                    data.pop(exps, None)
                else:
                    data[exps] = acc
        self.space = space
        self.terms = data

    @staticmethod
    def constant(space: VarSpace, c) -> "Poly":
        c = scalar(c)
        return Poly(space, {space.zero_exps(): c})

    @staticmethod
    def variable(space: VarSpace, name: str) -> "Poly":
        exps = [0] * space.dim
        exps[space.var_index(name)] = 1
        return Poly(space, {tuple(exps): SCALAR_ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            prev = out.get(e)
            acc = c if prev is None else prev + c
            if acc.is_zero():
                out.pop(e, None)
            else:
                out[e] = acc
        res = Poly.__new__(Poly)
        res.space = self.space
        res.terms = out
        return res

    def __neg__(self) -> "Poly":
        res = Poly.__new__(Poly)
        res.space = self.space
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                prev = out.get(e)
                acc = c if prev is None else prev + c
                if acc.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = acc
        res = Poly.__new__(Poly)
        res.space = self.space
        res.terms = out
        return res

    def scale(self, c) -> "Poly":
        c = scalar(c)
        if c.is_zero():
            return Poly(self.space)
        res = Poly.__new__(Poly)
        res.space = self.space
        res.terms = {e: v * c for e, v in self.terms.items()}
        return res

    def diff(self, var: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            k = e[var]
            if k == 0:
                continue
            e2 = e[:var] + (k - 1,) + e[var + 1 :]
            out[e2] = c * rat(k)
        return Poly(self.space, out)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.space.names == other.space.names and self.terms == other.terms

    def __hash__(self):
        return hash((self.space.names, frozenset(self.terms.items())))

    def _check(self, other: "Poly"):
        if self.space.names != other.space.names:
            raise DimensionMismatchError(f"{self.space} vs {other.space}")

    def evaluate(self, point, a_value=0.0, w_value=1.0) -> float:
        total = 0.0
        for e, c in self.terms.items():
            m = 1.0
            for x, p in zip(point, e):
                if p:
                    m *= x**p
            total += c.evaluate(a_value, w_value) * m
        return total

    def substitute(self, values) -> Scalar:
        """Exact evaluation at Scalar values per variable."""
        total = Scalar()
        for e, c in self.terms.items():
            term = c
            for v, p in zip(values, e):
                for _ in range(p):
                    term = term * v
            total = total + term
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda t: (sum(t), t)):
            c = self.terms[e]
            cs = str(c)
            if ("+" in cs[1:]) or (" - " in cs):
                cs = f"({cs})"
            factors = []
            for name, p in zip(self.space.names, e):
                if p == 1:
                    factors.append(name)
                elif p > 1:
                    factors.append(f"{name}^{p}")
            if not factors or cs not in ("1", "-1"):
                factors.insert(0, cs)
            elif cs == "-1":
                factors[0] = "-" + factors[0]
            parts.append("*".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"Poly({self})"


class PolyVectorField:
    """D-tuple of polynomial components over a shared variable space."""

    __slots__ = ("space", "components")

    def __init__(self, space: VarSpace, components):
        components = tuple(components)
        if len(components) != space.dim:
            raise DimensionMismatchError(f"{len(components)} components for {space}")
        self.space = space
        self.components = components

    @staticmethod
    def zero(space: VarSpace) -> "PolyVectorField":
        return PolyVectorField(space, [Poly(space) for _ in range(space.dim)])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __add__(self, other: "PolyVectorField") -> "PolyVectorField":
        return PolyVectorField(self.space, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "PolyVectorField") -> "PolyVectorField":
        return PolyVectorField(self.space, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self) -> "PolyVectorField":
        return PolyVectorField(self.space, [-a for a in self.components])

    def scale(self, c) -> "PolyVectorField":
        return PolyVectorField(self.space, [a.scale(c) for a in self.components])

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyVectorField) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def apply_to(self, chi: Poly) -> Poly:
        """The derivation: sum_j f^j d(chi)/dx_j, exact."""
        if chi.space.names != self.space.names:
            raise DimensionMismatchError("observable over different variables")
        out = Poly(self.space)
        for j, fj in enumerate(self.components):
            if fj.is_zero():
                continue
            d = chi.diff(j)
            if not d.is_zero():
                out = out + fj * d
        return out

    def evaluate(self, point, a_value=0.0, w_value=1.0):
        return [c.evaluate(point, a_value, w_value) for c in self.components]

    def __str__(self):
        parts = []
        for name, comp in zip(self.space.names, self.components):
            if not comp.is_zero():
                parts.append(f"({comp})*d_{name}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"PolyVectorField({self})"


def derivation_apply(field: PolyVectorField, chi: Poly) -> Poly:
    return field.apply_to(chi)


def vf_bracket(f: PolyVectorField, g: PolyVectorField) -> PolyVectorField:
    """Commutator as a vector field: components (f.grad) g^i - (g.grad) f^i."""
    if f.space.names != g.space.names:
        raise DimensionMismatchError("bracket of fields over different variables")
    comps = [f.apply_to(gi) - g.apply_to(fi) for fi, gi in zip(f.components, g.components)]
    return PolyVectorField(f.space, comps)


# -- differential operators ----------------------------------------------------


class DiffOperator:
    """Finite sum of (polynomial coefficient) x (multi-derivative d^alpha).

    Stored as {alpha exponent tuple: Poly}; alpha = all zeros is the
    multiplication-by-polynomial part.
    """

    __slots__ = ("space", "terms")

    def __init__(self, space: VarSpace, terms=None):
        data = {}
        if terms:
            for alpha, p in terms.items():
                if p.is_zero():
                    continue
                prev = data.get(alpha)
                acc = p if prev is None else prev + p
                if acc.is_zero():
                    data.pop(alpha, None)
                else:
                    data[alpha] = acc
        self.space = space
        self.terms = data

    @staticmethod
    def identity(space: VarSpace) -> "DiffOperator":
        return DiffOperator(space, {space.zero_exps(): Poly.constant(space, 1)})

    @staticmethod
    def from_field(field: PolyVectorField) -> "DiffOperator":
        space = field.space
        terms = {}
        for j, fj in enumerate(field.components):
            if fj.is_zero():
                continue
            alpha = [0] * space.dim
            alpha[j] = 1
            terms[tuple(alpha)] = fj
        return DiffOperator(space, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        out = dict(self.terms)
        for a, p in other.terms.items():
            prev = out.get(a)
            acc = p if prev is None else prev + p
            if acc.is_zero():
                out.pop(a, None)
            else:
                out[a] = acc
        return DiffOperator(self.space, out)

    def __sub__(self, other: "DiffOperator") -> "DiffOperator":
        return self + other.scale(Scalar.from_rational(-1))

    def scale(self, c) -> "DiffOperator":
        return DiffOperator(self.space, {a: p.scale(c) for a, p in self.terms.items()})

    def apply_to(self, chi: Poly) -> Poly:
        out = Poly(self.space)
        for alpha, p in self.terms.items():
            d = chi
            for var, k in enumerate(alpha):
                for _ in range(k):
                    d = d.diff(var)
                    if d.is_zero():
                        break
            if not d.is_zero():
                out = out + p * d
        return out

    def compose(self, other: "DiffOperator") -> "DiffOperator":
        """self after other as operators: (self.compose(other))(chi) = self(other(chi))."""
        out = {}
        for alpha, p in self.terms.items():
            for beta, q in other.terms.items():
                # p d^alpha (q d^beta .) : Leibniz over alpha
                for gamma, coef in _leibniz_splits(alpha):
                    dq = q
                    for var, k in enumerate(gamma):
                        for _ in range(k):
                            dq = dq.diff(var)
                            if dq.is_zero():
                                break
                        if dq.is_zero():
                            break
                    if dq.is_zero():
                        continue
                    rest = tuple(a - g + b for a, g, b in zip(alpha, gamma, beta))
                    term = (p * dq).scale(coef)
                    prev = out.get(rest)
                    acc = term if prev is None else prev + term
                    if acc.is_zero():
                        out.pop(rest, None)
                    else:
                        out[rest] = acc
        return DiffOperator(self.space, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, DiffOperator) and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for alpha in sorted(self.terms):
            der = "".join(
                f"d_{name}" + (f"^{k}" if k > 1 else "")
                for name, k in zip(self.space.names, alpha)
                if k
            )
            parts.append(f"({self.terms[alpha]}){der or ''}")
        return " + ".join(parts)

    def __repr__(self):
        return f"DiffOperator({self})"


@lru_cache(maxsize=None)
def _leibniz_splits(alpha: tuple):
    """(gamma, multinomial coefficient) pairs with gamma <= alpha componentwise."""
    out = [((), 1)]
    for a in alpha:
        nxt = []
        for gamma, coef in out:
            for g in range(a + 1):
                from math import comb

                nxt.append((gamma + (g,), coef * comb(a, g)))
        out = nxt
    return tuple((g, rat(c)) for g, c in out)


# -- the transfer morphism -------------------------------------------------------


class VectorFieldMorphism:
    """Assignment of generator indices to polynomial vector fields.

    Words map to operator compositions (right-to-left application:
    psi(xy) applied to chi is psi(x)(psi(y)(chi))); decorated trees map to
    elementary differentials; dual-basis multi-indices map through the
    triangular recursion of the scaled basis of the enveloping algebra.
    """

    def __init__(self, space: VarSpace, assignment):
        self.space = space
        self.assignment = dict(assignment)
        self._word_ops = {}
        self._tree_fields = {}

    def field(self, index) -> PolyVectorField:
        try:
            return self.assignment[index]
        except KeyError:
            raise KeyError(f"no field assigned to generator {index!r}") from None

    def coordinate(self, i: int) -> Poly:
        return Poly.variable(self.space, self.space.names[i])

    # words ------------------------------------------------------------------

    def word_operator(self, word: str) -> DiffOperator:
        if word in self._word_ops:
            return self._word_ops[word]
        if word == "":
            op = DiffOperator.identity(self.space)
        else:
            head = DiffOperator.from_field(self.field(word[0]))
            op = head.compose(self.word_operator(word[1:]))
        self._word_ops[word] = op
        return op

    def word_basis_function(self, word: str) -> PolyVectorField:
        """f_w: i-th component is psi(w) applied to the i-th coordinate."""
        op = self.word_operator(word)
        comps = [op.apply_to(self.coordinate(i)) for i in range(self.space.dim)]
        return PolyVectorField(self.space, comps)

    # trees -------------------------------------------------------------------

    def tree_field(self, t: DecoratedTree) -> PolyVectorField:
        """Elementary differential of a decorated tree."""
        hit = self._tree_fields.get(t)
        if hit is not None:
            return hit
        base = self.field(t.letter)
        if not t.children:
            self._tree_fields[t] = base
            return base
        child_fields = [self.tree_field(c) for c in t.children]
        comps = []
        for i in range(self.space.dim):
            comps.append(_multi_derivative(base.components[i], child_fields))
        out = PolyVectorField(self.space, comps)
        self._tree_fields[t] = out
        return out

    def tree_series_field(self, table: dict) -> PolyVectorField:
        """Image of a {tree: coef} combination (coef rational or Scalar)."""
        out = PolyVectorField.zero(self.space)
        for t, c in table.items():
            out = out + self.tree_field(t).scale(scalar_of(c))
        return out

    def forest_operator(self, f: tuple, zj_expansion) -> DiffOperator:
        """psi of the dual-basis element attached to a forest/multi-index.

        ``zj_expansion`` maps the index to [(coef, generator list), ...]
        rows of ordered star products of generators.
        """
        total = DiffOperator(self.space)
        for coef, gens in zj_expansion(f):
            op = DiffOperator.identity(self.space)
            for g in reversed(gens):
                op = DiffOperator.from_field(self.field(g)).compose(op)
            total = total + op.scale(scalar_of(coef))
        return total

    # diagnostics ----------------------------------------------------------------

    def check_homomorphism_pair(self, i1, i2, bracket_table) -> bool:
        """psi([G_i1, G_i2]) == [psi(G_i1), psi(G_i2)] for one generator pair."""
        lhs = PolyVectorField.zero(self.space)
        for i, c in bracket_table.items():
            lhs = lhs + self.field(i).scale(scalar_of(c))
        rhs = vf_bracket(self.field(i1), self.field(i2))
        return lhs == rhs


def scalar_of(c) -> Scalar:
    return c if isinstance(c, Scalar) else Scalar.from_rational(c)


def _multi_derivative(component: Poly, directions) -> Poly:
    """sum over j1..jk of d^k component / dx_{j1}..dx_{jk} * prod_l directions[l]^{j_l}.

    Differentiation order is immaterial for polynomials, so direction fields
    are consumed one at a time, multiplying their components in as we go.
    """
    dim = component.space.dim

    def recurse(poly: Poly, fields) -> Poly:
        if not fields:
            return poly
        head, rest = fields[0], fields[1:]
        acc = Poly(component.space)
        for j in range(dim):
            hj = head.components[j]
            if hj.is_zero():
                continue
            d = poly.diff(j)
            if d.is_zero():
                continue
            acc = acc + recurse(d * hj, rest)
        return acc

    return recurse(component, list(directions))


# -- kernel quotient --------------------------------------------------------------


def field_coordinates(field: PolyVectorField) -> dict:
    """Flatten a vector field into Q-coordinates ((component, exps, a_pow, w_pow) -> rational)."""
    out = {}
    for i, comp in enumerate(field.components):
        for exps, c in comp.terms.items():
            for (ap, wp), q in c.coordinates():
                out[(i, exps, ap, wp)] = q
    return out


def kernel_quotient(images: dict) -> tuple:
    """Exact reduction of morphism images {index: PolyVectorField}.

    Returns (survivors, relations): survivors is the list of indices whose
    images are linearly independent of all earlier ones (input order);
    relations maps each dependent index to {surviving index: rational} with
    image(dep) = sum coeff * image(surv).  Zero-image indices appear with an
    empty relation.
    """
    reducer = RationalReducer()
    survivors = []
    relations = {}
    for index, field in images.items():
        vec = field_coordinates(field)
        pos, expr = reducer.insert(vec)
        if pos is not None:
            survivors.append(index)
        else:
            relations[index] = {survivors[p]: c for p, c in expr.items() if c != 0}
    return survivors, relations


# -- monomial vector-field closure --------------------------------------------------


def monomial_closure(space: VarSpace, generators, max_degree: int, cap: int = 20000):
    """Close degree-1 monomial fields under brackets up to max_degree.

    ``generators``: list of PolyVectorField, each a single-monomial field.
    Returns a MonomialAlgebra with per-degree bases and exact structure
    constants; raises DegreeCapError when the basis grows past ``cap``.
    """
    return MonomialAlgebra(space, generators, max_degree, cap)


class MonomialAlgebra:
    """Graded Lie algebra generated by monomial vector fields.

    Every generator sits in degree 1 (the bookkeeping grading); degree-n
    elements are spanned by iterated brackets, reduced per degree to a
    linearly independent basis.  Indices are (degree, position).
    """

    def __init__(self, space: VarSpace, generators, max_degree: int, cap: int = 20000):
        self.space = space
        self.max_degree = max_degree
        self.basis = {1: []}
        self.reducers = {1: RationalReducer()}
        self.bracket_cache = {}
        self._size = 0
        reducer = self.reducers[1]
        for g in generators:
            vec = field_coordinates(g)
            pos, _ = reducer.insert(vec)
            if pos is None:
                raise ValueError("dependent generator in monomial closure input")
            self.basis[1].append(g)
            self._size += 1
        for n in range(2, max_degree + 1):
            self.basis[n] = []
            self.reducers[n] = RationalReducer()
            for m in range(1, n // 2 + 1):
                for i1, f1 in enumerate(self.basis[m]):
                    for i2, f2 in enumerate(self.basis[n - m]):
                        if n - m == m and i2 <= i1:
                            continue
                        br = vf_bracket(f1, f2)
                        coords = self._reduce_new(n, br)
                        self.bracket_cache[((m, i1), (n - m, i2))] = coords
                        if self._size > cap:
                            raise DegreeCapError(f"monomial closure exceeded cap {cap}")

    def _reduce_new(self, n: int, field: PolyVectorField):
        """Insert a degree-n field, extending the basis when independent.

        Returns {(n, position): rational} coordinates of ``field``.
        """
        vec = field_coordinates(field)
        if not vec:
            return {}
        reducer = self.reducers[n]
        pos, expr = reducer.insert(vec)
        if pos is not None:
            self.basis[n].append(field)
            return {(n, pos): rat(1)}
        return {(n, p): c for p, c in expr.items() if c != 0}

    # -- graded Lie algebra interface ------------------------------------------

    def dimensions(self) -> dict:
        return {n: len(b) for n, b in self.basis.items()}

    def indices(self):
        for n in sorted(self.basis):
            for i in range(len(self.basis[n])):
                yield (n, i)

    def degree(self, index) -> int:
        return index[0]

    def field(self, index) -> PolyVectorField:
        return self.basis[index[0]][index[1]]

    def bracket(self, i1, i2) -> dict:
        """Structure constants [G_i1, G_i2] = sum lambda * G_i as {(deg,pos): rational}."""
        n = i1[0] + i2[0]
        if n > self.max_degree:
            return {}
        key = (i1, i2)
        hit = self.bracket_cache.get(key)
        if hit is not None:
            return hit
        swapped = self.bracket_cache.get((i2, i1))
        if swapped is not None:
            out = {k: -v for k, v in swapped.items()}
            self.bracket_cache[key] = out
            return out
        br = vf_bracket(self.field(i1), self.field(i2))
        coords = self.reducers[n].solve(field_coordinates(br))
        if coords is None:
            raise DegreeCapError(f"bracket left the degree-{n} basis (corrupt closure)")
        out = {(n, p): c for p, c in coords.items() if c != 0}
        self.bracket_cache[key] = out
        return out

    def decompose_degree_one(self, field: PolyVectorField) -> dict:
        """Coordinates of a degree-1 combination in the generator basis."""
        coords = self.reducers[1].solve(field_coordinates(field))
        if coords is None:
            raise ValueError("field is not a combination of the degree-1 generators")
        return {(1, p): c for p, c in coords.items() if c != 0}
