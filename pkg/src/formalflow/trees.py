"""Decorated rooted trees and forests.

Trees carry a letter at every vertex and a canonically ordered multiset of
children, so structurally equal trees are pointer-equal (interned).  Grafting
gives the pre-Lie product, its antisymmetrization the graded Lie bracket
whose enveloping algebra is dual to the admissible-cut coproduct on forests.

Conventions, fixed once for the whole package:
  * graft(s, t) attaches the root of s below each vertex of the host t;
  * the Lie bracket of tree series is graft(x, y) - graft(y, x);
  * serialization: "a" one vertex, "d[bc]" bushy, "d[b[c]]" tall, children in
    canonical order; forests join components with "·" and the empty forest
    prints as "1".
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import BasisMismatchError, SpecParseError
from .rationals import rat
from .series import GradedBasis

_TREE_CACHE = {}


class DecoratedTree:
    """Interned decorated rooted tree; compare/hash by identity-backed key."""

    __slots__ = ("letter", "children", "degree", "key", "text")

    def __init__(self, letter, children, degree, key, text):
        self.letter = letter
        self.children = children
        self.degree = degree
        self.key = key
        self.text = text

    def __repr__(self):
        return self.text

    def __lt__(self, other):
        return self.key < other.key

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return hash(self.key)


def tree(letter: str, children=()) -> DecoratedTree:
    """Canonical (interned) tree with the given root letter and children."""
    kids = tuple(sorted(children, key=lambda t: t.key))
    cache_key = (letter, kids)
    hit = _TREE_CACHE.get(cache_key)
    if hit is not None:
        return hit
    degree = 1 + sum(c.degree for c in kids)
    key = (degree, letter, tuple(c.key for c in kids))
    if kids:
        text = letter + "[" + "".join(c.text for c in kids) + "]"
    else:
        text = letter
    node = DecoratedTree(letter, kids, degree, key, text)
    _TREE_CACHE[cache_key] = node
    return node


def leaf(letter: str) -> DecoratedTree:
    return tree(letter, ())


# -- forests ----------------------------------------------------------------


def forest(trees_iter) -> tuple:
    """Canonical forest: trees sorted by key."""
    return tuple(sorted(trees_iter, key=lambda t: t.key))


EMPTY_FOREST = ()


def forest_degree(f: tuple) -> int:
    return sum(t.degree for t in f)


def forest_str(f: tuple) -> str:
    return "·".join(t.text for t in f) if f else "1"


def forest_mul(f1: tuple, f2: tuple) -> tuple:
    return forest(f1 + f2)


# -- enumeration -------------------------------------------------------------


@lru_cache(maxsize=None)
def trees_of_degree(n: int, letters: tuple):
    """All decorated trees with n vertices, canonically sorted."""
    if n <= 0:
        return ()
    out = []
    for root in letters:
        for f in forests_of_degree(n - 1, letters):
            out.append(tree(root, f))
    return tuple(sorted(out, key=lambda t: t.key))


@lru_cache(maxsize=None)
def forests_of_degree(n: int, letters: tuple):
    """All forests (multisets of trees) of total degree n."""
    if n == 0:
        return (EMPTY_FOREST,)
    pool = []
    for d in range(1, n + 1):
        pool.extend(trees_of_degree(d, letters))
    pool.sort(key=lambda t: t.key)
    out = []

    def extend(start, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(pool)):
            t = pool[i]
            if t.degree > remaining:
                continue
            acc.append(t)
            extend(i, remaining - t.degree, acc)
            acc.pop()

    extend(0, n, [])
    return tuple(sorted(out, key=lambda f: tuple(t.key for t in f)))


class ForestBasis(GradedBasis):
    """Forests of decorated rooted trees, indexing the dual monomial basis."""

    name = "forests"

    def __init__(self, letters):
        self.letters = tuple(letters)

    def degree(self, f: tuple) -> int:
        return forest_degree(f)

    def unit(self) -> tuple:
        return EMPTY_FOREST

    def indices_of_degree(self, n: int):
        return forests_of_degree(n, self.letters)

    def index_str(self, f) -> str:
        return forest_str(f)

    def trees_up_to(self, n: int):
        for d in range(1, n + 1):
            yield from trees_of_degree(d, self.letters)

    def check_letters(self, t: DecoratedTree):
        if t.letter not in self.letters:
            raise BasisMismatchError(f"letter {t.letter!r} not in {self.letters}")
        for c in t.children:
            self.check_letters(c)


# -- grafting and the Lie bracket -------------------------------------------


def graft(guest: DecoratedTree, host: DecoratedTree):
    """Sum over vertices v of host of (host with guest attached below v).

    Returns {tree: integer multiplicity}.
    """
    out = {}
    root_attach = tree(host.letter, host.children + (guest,))
    out[root_attach] = out.get(root_attach, 0) + 1
    for i, child in enumerate(host.children):
        rest = host.children[:i] + host.children[i + 1 :]
        for sub, mult in graft(guest, child).items():
            t = tree(host.letter, rest + (sub,))
            out[t] = out.get(t, 0) + mult
    return out


def series_combine(*weighted):
    """Linear combination of {index: coef} dicts given as (coef, dict) pairs."""
    out = {}
    for weight, table in weighted:
        if weight == 0:
            continue
        for idx, c in table.items():
            acc = out.get(idx, 0) + weight * c
            if acc == 0:
                out.pop(idx, None)
            else:
                out[idx] = acc
    return out


def graft_series(x: dict, y: dict) -> dict:
    """Bilinear extension of graft to {tree: coef} dicts."""
    out = {}
    for tx, cx in x.items():
        for ty, cy in y.items():
            c = cx * cy
            for t, mult in graft(tx, ty).items():
                acc = out.get(t, 0) + c * mult
                if acc == 0:
                    out.pop(t, None)
                else:
                    out[t] = acc
    return out


def gl_bracket(x: dict, y: dict) -> dict:
    """[x, y] = graft(x, y) - graft(y, x) on {tree: coef} dicts."""
    return series_combine((1, graft_series(x, y)), (-1, graft_series(y, x)))


# -- admissible-cut coproduct -------------------------------------------------


@lru_cache(maxsize=None)
def tree_coproduct(t: DecoratedTree):
    """Root-keeping admissible cuts of a tree.

    Returns {(pruned_forest, (rooted_tree,)): multiplicity}.  Every cut leaves
    a single tree containing the root; the empty cut ((), (t,)) is included,
    the total cut (t, ()) is not (it belongs to the forest-level coproduct).
    Each child edge is either severed whole or cut recursively.
    """
    child_options = []
    for c in t.children:
        opts = [(((c,), ()), 1)]
        for cut, mult in tree_coproduct(c).items():
            opts.append((cut, mult))
        child_options.append(opts)
    acc = {}
    for combo in itertools.product(*child_options):
        pruned = []
        kept = []
        mult = 1
        for (p, r), m in combo:
            pruned.extend(p)
            kept.extend(r)
            mult *= m
        rooted = tree(t.letter, kept)
        key = (forest(pruned), (rooted,))
        acc[key] = acc.get(key, 0) + mult
    return acc


def ck_coproduct(f: tuple):
    """Connes-Kreimer coproduct of a forest: {(left_forest, right_forest): int}.

    Multiplicative over forest components; includes the group-like ends
    (1 (x) f and f (x) 1 appear via empty/total cuts).
    """
    out = {(EMPTY_FOREST, EMPTY_FOREST): 1}
    for t in f:
        piece = dict(tree_coproduct(t))
        # include the total cut (everything pruned): forest t (x) 1
        key = ((t,), EMPTY_FOREST)
        piece[key] = piece.get(key, 0) + 1
        nxt = {}
        for (l1, r1), m1 in out.items():
            for (l2, r2), m2 in piece.items():
                key = (forest_mul(l1, l2), forest_mul(r1, r2))
                nxt[key] = nxt.get(key, 0) + m1 * m2
        out = nxt
    return out


def tree_reduced_coproduct(t: DecoratedTree):
    """All proper admissible cuts of a tree: {(pruned_forest, rooted_tree): int}."""
    out = {}
    for (p, r), mult in tree_coproduct(t).items():
        if not p:
            continue  # empty cut
        out[(p, r[0])] = mult
    # the total cut (p = whole tree, rooted part empty) is not produced by
    # tree_coproduct, which always keeps the root; nothing to strip here
    return out


def tree_delta_hat(t: DecoratedTree):
    """Single-edge splittings: {(subtree, rest_tree): multiplicity}.

    This is the projection of the reduced coproduct onto tree (x) tree and
    the dual of the grafting pre-Lie product.
    """
    out = {}
    for (p, r), mult in tree_reduced_coproduct(t).items():
        if len(p) == 1:
            key = (p[0], r)
            out[key] = out.get(key, 0) + mult
    return out


def tree_root_cut(t: DecoratedTree):
    """The single cut severing all root edges: (children forest, root letter leaf)."""
    return forest(t.children), leaf(t.letter)


# -- Grossman-Larson structure constants ------------------------------------


def gl_structure_constants(letters, max_degree: int):
    """lambda^t_{t1,t2} tables for the tree Lie algebra up to max_degree.

    Returns {(t1, t2): {t: rational}} for trees with deg t1 + deg t2 <= cap.
    """
    table = {}
    all_trees = []
    for d in range(1, max_degree):
        all_trees.extend(trees_of_degree(d, tuple(letters)))
    for t1 in all_trees:
        for t2 in all_trees:
            if t1.degree + t2.degree > max_degree:
                continue
            br = gl_bracket({t1: rat(1)}, {t2: rat(1)})
            if br:
                table[(t1, t2)] = br
    return table


# -- parsing -----------------------------------------------------------------


def parse_tree(text: str) -> DecoratedTree:
    node, rest = _parse_tree_inner(text.strip())
    if rest:
        raise SpecParseError(f"trailing input {rest!r} after tree")
    return node


def _parse_tree_inner(s: str):
    if not s:
        raise SpecParseError("empty tree string")
    letter = s[0]
    rest = s[1:]
    if rest.startswith("["):
        rest = rest[1:]
        children = []
        while not rest.startswith("]"):
            child, rest = _parse_tree_inner(rest)
            children.append(child)
            if not rest:
                raise SpecParseError("unterminated '[' in tree string")
        return tree(letter, children), rest[1:]
    return leaf(letter), rest


def parse_forest(text: str) -> tuple:
    s = text.strip()
    if s == "1":
        return EMPTY_FOREST
    return forest(parse_tree(part) for part in s.split("·"))
