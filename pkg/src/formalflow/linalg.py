"""Exact sparse linear algebra over the rationals.

Vectors are dicts {coordinate: rational} with sortable, hashable coordinate
keys.  The incremental reducer keeps an echelon basis and can express each
new vector exactly in terms of the independent vectors inserted so far; it
backs basis extraction for the monomial vector-field closure, kernel
quotients of morphism images, and the small change-of-basis solves.
"""

from __future__ import annotations

from .rationals import RZERO, rat


def vec_add(a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    for k, v in b.items():
        acc = out.get(k, RZERO) + scale * v
        if acc == 0:
            out.pop(k, None)
        else:
            out[k] = acc
    return out


def vec_scale(a: dict, scale) -> dict:
    if scale == 0:
        return {}
    return {k: scale * v for k, v in a.items()}


class RationalReducer:
    """Incremental exact echelon form with expression tracking.

    insert(v) reduces v against the current rows.  If a nonzero residual
    remains the vector becomes basis member number len(basis)-1 and
    (index, None) is returned; otherwise (None, coords) is returned with
    coords expressing v as a combination of previously inserted independent
    vectors ({basis_position: rational}).
    """

    def __init__(self):
        self.rows = []  # echelon rows: (pivot_key, row_dict, expr_dict)
        self.count = 0  # number of independent vectors inserted

    def _reduce(self, vec: dict):
        v = dict(vec)
        expr = {}
        for pivot, row, row_expr in self.rows:
            c = v.get(pivot)
            if not c:
                continue
            v = vec_add(v, row, -c)
            expr = vec_add(expr, row_expr, c)
        return v, expr

    def insert(self, vec: dict):
        v, expr = self._reduce(vec)
        if not v:
            return None, expr
        pivot = min(v)
        inv = rat(1) / rat(v[pivot])
        row = vec_scale(v, inv)
        index = self.count
        # expression of the normalized row in terms of independent inserts:
        # row = inv * (vec - sum expr_i * basis_i)
        row_expr = vec_scale(expr, -inv)
        row_expr[index] = inv
        self.rows.append((pivot, row, row_expr))
        self.count += 1
        return index, None

    def solve(self, vec: dict):
        """Coordinates of vec over the independent inserted vectors, or None."""
        v, expr = self._reduce(vec)
        if v:
            return None
        return expr

    def rank(self) -> int:
        return self.count


def solve_linear_system(columns, target):
    """Solve sum_i x_i * columns[i] = target exactly.

    ``columns`` is a list of sparse dict vectors, ``target`` a dict vector.
    Returns {i: rational} for a particular solution with free variables set
    to zero (columns are pivoted greedily in the given order), or None when
    the system is inconsistent.
    """
    reducer = RationalReducer()
    position_of = {}
    for i, col in enumerate(columns):
        idx, _ = reducer.insert(col)
        if idx is not None:
            position_of[idx] = i
    coords = reducer.solve(target)
    if coords is None:
        return None
    return {position_of[pos]: c for pos, c in coords.items() if c != 0}
