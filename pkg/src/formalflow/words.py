"""The shuffle Hopf algebra of words over a finite alphabet.

Words are plain strings of single-character letters; the empty word is the
unit and serializes as "1".  Concatenation is the star product of the dual,
the shuffle product is the commutative product of the Hopf algebra, and
Lyndon words with standard bracketing provide the canonical basis of the
free Lie algebra.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import BasisMismatchError, NotLieElementError, SpecParseError
from .rationals import RONE, rat
from .series import QQ, EtaTable, GradedBasis, MuTable, Ring, Series


class Alphabet:
    """Ordered finite list of single-character letters."""

    __slots__ = ("letters",)

    def __init__(self, letters):
        letters = tuple(letters)
        if not letters:
            raise ValueError("alphabet must be nonempty")
        if len(set(letters)) != len(letters):
            raise ValueError("alphabet has duplicate letters")
        for a in letters:
            if not (isinstance(a, str) and len(a) == 1):
                raise ValueError(f"letters must be single characters, got {a!r}")
        self.letters = letters

    def __contains__(self, letter):
        return letter in self.letters

    def check_word(self, word: str):
        for ch in word:
            if ch not in self.letters:
                raise BasisMismatchError(f"letter {ch!r} not in alphabet {self.letters}")

    def __repr__(self):
        return f"Alphabet({''.join(self.letters)})"


class WordBasis(GradedBasis):
    name = "words"

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet

    def degree(self, word: str) -> int:
        return len(word)

    def unit(self) -> str:
        return ""

    def indices_of_degree(self, n: int):
        if n == 0:
            yield ""
            return
        for tup in itertools.product(self.alphabet.letters, repeat=n):
            yield "".join(tup)

    def index_str(self, word: str) -> str:
        return word if word else "1"


class ConcatMu(MuTable):
    """mu^w_{w1,w2} = 1 iff w = w1 w2 (concatenation product of the dual)."""

    def products(self, w1: str, w2: str):
        return ((w1 + w2, 1),)


@lru_cache(maxsize=None)
def shuffle_counts(u: str, v: str):
    """dict word -> multiplicity of interleavings of u and v."""
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out = {}
    for w, c in shuffle_counts(u[:-1], v).items():
        key = w + u[-1]
        out[key] = out.get(key, 0) + c
    for w, c in shuffle_counts(u, v[:-1]).items():
        key = w + v[-1]
        out[key] = out.get(key, 0) + c
    return out


class ShuffleEta(EtaTable):
    """Shuffle multiplicities: u_{w1} u_{w2} = sum (interleavings of w1, w2)."""

    def dual_product(self, w1: str, w2: str):
        return shuffle_counts(w1, w2).items()


class WordAlgebra:
    """Alphabet-bound entry point bundling basis, tables and Lyndon machinery."""

    def __init__(self, letters):
        self.alphabet = letters if isinstance(letters, Alphabet) else Alphabet(letters)
        self.basis = WordBasis(self.alphabet)
        self.mu = ConcatMu()
        self.eta = ShuffleEta()

    # -- products ---------------------------------------------------------

    def shuffle(self, w1: str, w2: str) -> Series:
        """Sum over all interleavings, with multiplicities, as a word series."""
        self.alphabet.check_word(w1)
        self.alphabet.check_word(w2)
        counts = shuffle_counts(w1, w2)
        return Series(self.basis, QQ, len(w1) + len(w2), {w: rat(c) for w, c in counts.items()})

    def word_series(self, coeffs, order: int, ring: Ring = QQ) -> Series:
        for w in coeffs:
            self.alphabet.check_word(w)
        return Series(self.basis, ring, order, coeffs)

    # -- Lyndon words and the free Lie algebra ------------------------------

    def lyndon_words(self, max_degree: int):
        """All Lyndon words of degree 1..max_degree (Duval's generation)."""
        letters = sorted(self.alphabet.letters)
        k = len(letters)
        pos = {a: i for i, a in enumerate(letters)}
        out = []
        w = [0]
        while w:
            word = "".join(letters[i] for i in w)
            if len(word) <= max_degree:
                out.append(word)
            m = len(w)
            while len(w) < max_degree:
                w.append(w[-m])
            while w and w[-1] == k - 1:
                w.pop()
            if w:
                w[-1] += 1
        del pos
        return sorted(out, key=lambda s: (len(s), s))

    def is_lyndon(self, word: str) -> bool:
        if not word:
            return False
        return all(word < word[i:] for i in range(1, len(word)))

    def standard_factorization(self, word: str):
        """Lyndon word -> (u, v) with w = uv, v the longest proper Lyndon suffix."""
        if len(word) < 2:
            raise ValueError("single letters have no factorization")
        for i in range(1, len(word)):
            if self.is_lyndon(word[i:]):
                return word[:i], word[i:]
        raise NotLieElementError(f"{word!r} is not a Lyndon word")

    def bracketing(self, word: str):
        """The standard bracketing of a Lyndon word as nested pairs."""
        if len(word) == 1:
            return word
        u, v = self.standard_factorization(word)
        return (self.bracketing(u), self.bracketing(v))

    def expand_bracket(self, expr):
        """Word expansion (dict word -> rational) of a bracket expression.

        ``expr`` is a letter or a nested pair (left, right); brackets expand by
        concatenation: [x, y] = xy - yx.
        """
        if isinstance(expr, str):
            if len(expr) != 1:
                raise SpecParseError(f"not a letter: {expr!r}")
            self.alphabet.check_word(expr)
            return {expr: RONE}
        left = self.expand_bracket(expr[0])
        right = self.expand_bracket(expr[1])
        out = {}
        for wl, cl in left.items():
            for wr, cr in right.items():
                c = cl * cr
                for key, s in ((wl + wr, c), (wr + wl, -c)):
                    acc = out.get(key, 0) + s
                    if acc == 0:
                        out.pop(key, None)
                    else:
                        out[key] = acc
        return out

    def lie_normal_form(self, expr) -> Series:
        """Word expansion of a bracket expression as a rational word series."""
        table = self.expand_bracket(parse_bracket(expr) if isinstance(expr, str) and len(expr) > 1 else expr)
        order = max((len(w) for w in table), default=0)
        return Series(self.basis, QQ, order, table)

    @lru_cache(maxsize=None)
    def _lyndon_expansion(self, word: str):
        return self.expand_bracket(self.bracketing(word))

    def lyndon_coordinates(self, series: Series) -> "LieElement":
        """Coordinates of a Lie-algebra word series in the Lyndon bracket basis.

        Uses the triangularity of standard bracketings (the expansion of the
        bracketing of a Lyndon word is the word itself plus lexicographically
        larger words).  Raises NotLieElementError when the input is not in the
        free Lie algebra.
        """
        ring = series.ring
        coords = {}
        by_degree = {}
        for w, c in series.items():
            by_degree.setdefault(len(w), {})[w] = c
        for n, residual in sorted(by_degree.items()):
            if n == 0:
                if any(not ring.is_zero(c) for c in residual.values()):
                    raise NotLieElementError("degree-0 component present")
                continue
            while residual:
                w = min(residual)
                c = residual.pop(w)
                if ring.is_zero(c):
                    continue
                if not self.is_lyndon(w):
                    raise NotLieElementError(f"leading word {w!r} is not Lyndon")
                coords[w] = c
                for w2, q in self._lyndon_expansion(w).items():
                    if w2 == w:
                        continue
                    delta = c * ring.from_rational(q) if ring is not QQ else c * q
                    acc = residual.get(w2, ring.zero) - delta
                    if ring.is_zero(acc):
                        residual.pop(w2, None)
                    else:
                        residual[w2] = acc
        return LieElement(self, coords, ring)


class LieElement:
    """A free-Lie-algebra element in Lyndon coordinates over a given ring."""

    __slots__ = ("algebra", "coords", "ring")

    def __init__(self, algebra: WordAlgebra, coords, ring: Ring = QQ):
        self.algebra = algebra
        self.ring = ring
        self.coords = {w: c for w, c in coords.items() if not ring.is_zero(c)}
        for w in self.coords:
            if not algebra.is_lyndon(w):
                raise NotLieElementError(f"{w!r} is not a Lyndon word")

    def to_word_series(self, order=None) -> Series:
        n = order if order is not None else max((len(w) for w in self.coords), default=0)
        out = {}
        for w, c in self.coords.items():
            for w2, q in self.algebra._lyndon_expansion(w).items():
                delta = c * self.ring.from_rational(q) if self.ring is not QQ else c * q
                acc = out.get(w2, self.ring.zero) + delta
                out[w2] = acc
        return Series(self.algebra.basis, self.ring, n, out)

    def __eq__(self, other):
        return (
            isinstance(other, LieElement)
            and self.ring is other.ring
            and self.coords == other.coords
        )

    def __repr__(self):
        parts = [
            f"{self.ring.coef_str(c)}*{bracket_str(self.algebra.bracketing(w))}"
            for w, c in sorted(self.coords.items(), key=lambda kv: (len(kv[0]), kv[0]))
        ]
        return " + ".join(parts) if parts else "0"


def bracket_str(expr) -> str:
    if isinstance(expr, str):
        return expr
    return f"[{bracket_str(expr[0])},{bracket_str(expr[1])}]"


def parse_bracket(text: str):
    """Parse '[a,[b,c]]' into nested pairs."""
    s = text.replace(" ", "")
    expr, rest = _parse_bracket_inner(s)
    if rest:
        raise SpecParseError(f"trailing input {rest!r} in bracket expression")
    return expr


def _parse_bracket_inner(s: str):
    if not s:
        raise SpecParseError("empty bracket expression")
    if s[0] != "[":
        return s[0], s[1:]
    left, rest = _parse_bracket_inner(s[1:])
    if not rest.startswith(","):
        raise SpecParseError(f"expected ',' in {s!r}")
    right, rest = _parse_bracket_inner(rest[1:])
    if not rest.startswith("]"):
        raise SpecParseError(f"expected ']' in {s!r}")
    return (left, right), rest[1:]
