"""Exact linear algebra over the rationals.

Dense kernels and row reductions used by the graded-basis and torsion
computations.  Elimination runs fraction-free on integer rows (content is
stripped as it grows) and converts to rationals only at the end, which is
considerably faster than Fraction arithmetic throughout.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _to_int_rows(rows):
    out = []
    for row in rows:
        den = 1
        for c in row:
            if type(c) is Fraction:
                den = den * c.denominator // gcd(den, c.denominator)
        irow = [int(c * den) if type(c) is Fraction else c * den for c in row]
        out.append(irow)
    return out


def _strip_row(row):
    g = 0
    for c in row:
        if c:
            g = gcd(g, c)
            if g == 1:
                return row
    if g > 1:
        for i, c in enumerate(row):
            row[i] = c // g
    return row


def _echelon_int(rows, ncols):
    """In-place fraction-free forward elimination; returns pivot columns."""
    pivots = []
    prow = 0
    nrows = len(rows)
    for col in range(ncols):
        piv = None
        for r in range(prow, nrows):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            continue
        rows[prow], rows[piv] = rows[piv], rows[prow]
        p = rows[prow][col]
        lead = rows[prow]
        for r in range(prow + 1, nrows):
            v = rows[r][col]
            if not v:
                continue
            g = gcd(p, v)
            a, b = p // g, v // g
            row = rows[r]
            for c2 in range(col, ncols):
                row[c2] = a * row[c2] - b * lead[c2]
            _strip_row(row)
        pivots.append(col)
        prow += 1
        if prow == nrows:
            break
    del rows[prow:]
    return pivots


def rref(rows, ncols):
    """Canonical reduced row echelon form over the rationals.

    Returns (rref_rows, pivots) where each row is a list of Fractions with a
    leading 1 at its pivot column and zeros above and below every pivot.
    """
    work = _to_int_rows(rows)
    pivots = _echelon_int(work, ncols)
    # back-eliminate, still over the integers
    for i in range(len(pivots) - 1, -1, -1):
        col = pivots[i]
        p = work[i][col]
        for r in range(i):
            v = work[r][col]
            if not v:
                continue
            g = gcd(p, v)
            a, b = p // g, v // g
            row = work[r]
            lead = work[i]
            for c2 in range(ncols):
                row[c2] = a * row[c2] - b * lead[c2]
            _strip_row(row)
    out = []
    for i, col in enumerate(pivots):
        p = work[i][col]
        out.append([Fraction(c, p) for c in work[i]])
    return out, pivots


def rank(rows, ncols):
    work = _to_int_rows(rows)
    return len(_echelon_int(work, ncols))


def residual(vec, rref_rows, pivots):
    """Reduce a vector against canonical rref rows; zero iff it lies in
    their row space."""
    v = [Fraction(c) if type(c) is not Fraction else c for c in vec]
    for row, col in zip(rref_rows, pivots):
        c = v[col]
        if c:
            for j, r in enumerate(row):
                if r:
                    v[j] -= c * r
    return v


def invert(matrix):
    """Inverse of a square rational matrix, or None if singular."""
    n = len(matrix)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return [row[n:] for row in red[:n]]


def kernel_basis(rows, ncols):
    """Canonical basis of the right kernel {x : A x = 0}.

    One basis vector per free column f: entry 1 at f, minus the rref entry
    at each pivot column.  A zero-row matrix yields the standard basis.
    """
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, col in zip(red, pivots):
            if row[f]:
                v[col] = -row[f]
        basis.append(v)
    return basis
