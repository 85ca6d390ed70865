"""Exact reduced row echelon form over the rationals or a prime field.

Matrices are lists of lists of field scalars: Fraction for the rationals,
plain ints in 0..p-1 for GF(p).  RREF is canonical: pivot entries are 1,
pivot columns are otherwise zero, pivot columns strictly increase, zero rows
are dropped.
"""
from __future__ import annotations

from fractions import Fraction


class QQ:
    """Rational field operations."""

    name = "rationals"

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def of(x):
        return Fraction(x)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def inv(a):
        return 1 / a

    @staticmethod
    def neg(a):
        return -a


class GFp:
    """Prime field operations, scalars normalized to 0..p-1."""

    def __init__(self, p):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"prime:{p}"
        self.zero = 0
        self.one = 1 % p

    def of(self, x):
        f = Fraction(x)
        return f.numerator * pow(f.denominator, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def neg(self, a):
        return (-a) % self.p


def rref(rows, ncols, field):
    """Canonical RREF.  Returns (rows, pivot_columns); input rows are not mutated."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(mat)):
            if mat[i][c] != field.zero:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = field.inv(mat[r][c])
        if mat[r][c] != field.one:
            mat[r] = [field.mul(inv, v) for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != field.zero:
                f = mat[i][c]
                row_r = mat[r]
                mat[i] = [field.sub(v, field.mul(f, w)) for v, w in zip(mat[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows, ncols, field):
    return len(rref(rows, ncols, field)[0])


def reduce_vector(rref_rows, pivots, vec, field):
    """Reduce vec against an RREF basis; returns (coefficients, residual).

    vec == sum(coefficients[i] * rref_rows[i]) + residual, and residual is
    zero on every pivot column.
    """
    v = list(vec)
    coeffs = []
    for row, c in zip(rref_rows, pivots):
        f = v[c]
        coeffs.append(f)
        if f != field.zero:
            v = [field.sub(a, field.mul(f, b)) for a, b in zip(v, row)]
    return coeffs, v


def in_row_space(rref_rows, pivots, vec, field):
    _, residual = reduce_vector(rref_rows, pivots, vec, field)
    return all(x == field.zero for x in residual)


def rref_with_transform(rows, ncols, field):
    """RREF plus the transform matrix T with R = T * rows.

    Rows whose data part becomes zero are dropped along with their transform;
    only spanning information is kept.
    """
    m = len(rows)
    aug = []
    for i, r in enumerate(rows):
        extra = [field.zero] * m
        extra[i] = field.one
        aug.append(list(r) + extra)
    red, pivots = rref(aug, ncols, field)
    return [r[:ncols] for r in red], pivots, [r[ncols:] for r in red]


def express_in_basis(basis_rref, basis_pivots, basis_transform, vec, field):
    """Coefficients of vec over the original basis rows, or None if outside the span."""
    w, residual = reduce_vector(basis_rref, basis_pivots, vec, field)
    if any(x != field.zero for x in residual):
        return None
    m = len(basis_transform[0]) if basis_transform else 0
    out = [field.zero] * m
    for wr, trow in zip(w, basis_transform):
        if wr != field.zero:
            for j, t in enumerate(trow):
                if t != field.zero:
                    out[j] = field.add(out[j], field.mul(wr, t))
    return out
