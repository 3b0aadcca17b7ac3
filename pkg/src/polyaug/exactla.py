"""Dense exact matrices: field ranks, Smith normal form, power series.

Everything is exact: integers are arbitrary precision, field work uses
Fractions or reduced residues.  Sizes are desk scale (a few thousand rows at
most), so the algorithms favour clarity: ordinary Gaussian elimination over
fields and gcd-pivoting for the Smith form.
"""

from __future__ import annotations

from .fields import QQ, ZZ
from .spans import ZLattice, _xgcd, make_span


class ExactMatrix:
    """Dense row-major matrix over one scalar domain (ZZ, QQ or GF(p))."""

    def __init__(self, rows, domain):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged rows")
        self.domain = domain
        self.rows = [[domain.of(x) for x in r] for r in self.rows]

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols} over {self.domain})"


def rank_over_field(m: ExactMatrix):
    """Row rank over QQ or F_p, plus an echelonized basis of the row space.

    Integer matrices are rejected: torsion is invisible to a field rank, use
    smith_invariants instead.
    """
    if not getattr(m.domain, "is_field", False):
        raise TypeError("rank_over_field needs a field; use smith_invariants over ZZ")
    span = make_span(m.domain, m.ncols)
    for r in m.rows:
        span.insert({c: x for c, x in enumerate(r) if x})
    basis = [[row.get(c, 0) for c in range(m.ncols)] for row in span.row_list()]
    return span.rank, basis


def subspace_membership(basis, v, field) -> bool:
    """Does ``v`` lie in the span of the given rows (over ``field``)?"""
    width = len(v)
    if any(len(r) != width for r in basis):
        raise ValueError("length mismatch")
    span = make_span(field, width)
    for r in basis:
        span.insert({c: x for c, x in enumerate(r) if x})
    return span.contains({c: x for c, x in enumerate(v) if x})


def smith_invariants(m: ExactMatrix) -> list[int]:
    """Nonzero Smith invariants d_1 | d_2 | ... of an integer matrix."""
    if m.domain is not ZZ:
        raise TypeError("smith_invariants needs integer scalars")
    a = [row[:] for row in m.rows]
    return smith_invariants_raw(a)


def smith_invariants_raw(a: list[list[int]]) -> list[int]:
    a = [list(map(int, row)) for row in a]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    diag = []
    top = 0
    while True:
        pos = None
        best = None
        for i in range(top, nr):
            for j in range(top, nc):
                x = abs(a[i][j])
                if x and (best is None or x < best):
                    best, pos = x, (i, j)
        if pos is None:
            break
        i0, j0 = pos
        a[top], a[i0] = a[i0], a[top]
        for row in a:
            row[top], row[j0] = row[j0], row[top]
        while True:
            # clear column `top` by gcd steps
            for i in range(top + 1, nr):
                if a[i][top]:
                    _row_gcd_step(a, top, i)
            # clear row `top`
            for j in range(top + 1, nc):
                if a[top][j]:
                    _col_gcd_step(a, top, j)
            if all(a[i][top] == 0 for i in range(top + 1, nr)) and \
               all(a[top][j] == 0 for j in range(top + 1, nc)):
                break
        pivot = a[top][top]
        # pivot must divide the remaining block; merge an offender and retry
        offender = None
        for i in range(top + 1, nr):
            for j in range(top + 1, nc):
                if a[i][j] % pivot:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(nc):
                a[top][j] += a[offender][j]
            continue
        diag.append(abs(pivot))
        top += 1
        if top >= nr or top >= nc:
            break
    return diag


def _row_gcd_step(a, r0, r1):
    """Zero a[r1][c] (c = r0) using a unimodular transform of rows r0, r1."""
    c = r0
    x, y = a[r0][c], a[r1][c]
    if y % x == 0:
        q = y // x
        a[r1] = [v - q * u for u, v in zip(a[r0], a[r1])]
        return
    g, s, t = _xgcd(x, y)
    u, v = x // g, y // g
    row0 = [s * p + t * q for p, q in zip(a[r0], a[r1])]
    row1 = [-v * p + u * q for p, q in zip(a[r0], a[r1])]
    a[r0], a[r1] = row0, row1


def _col_gcd_step(a, c0, c1):
    r = c0
    x, y = a[r][c0], a[r][c1]
    if y % x == 0:
        q = y // x
        for row in a:
            row[c1] -= q * row[c0]
        return
    g, s, t = _xgcd(x, y)
    u, v = x // g, y // g
    for row in a:
        p, q = row[c0], row[c1]
        row[c0] = s * p + t * q
        row[c1] = -v * p + u * q


def quotient_invariants(outer: ZLattice, inner: ZLattice) -> list[int]:
    """Invariant factors of outer/inner for nested integer lattices.

    Entries > 1 are torsion, each 0 is a free Z summand; trivial factors are
    dropped, so the trivial quotient gives [].
    """
    basis = outer.row_list()
    if not basis:
        return []
    coeff_rows = []
    for row in inner.row_list():
        x = outer.express(row)
        if x is None:
            raise ValueError("inner lattice is not contained in outer")
        coeff_rows.append(x)
    r = outer.rank
    if not coeff_rows:
        return [0] * r
    diag = smith_invariants_raw(coeff_rows)
    out = [d for d in diag if d > 1]
    out += [0] * (r - len(diag))
    return out


# -- integer power series ----------------------------------------------------

def series_one(cap: int) -> list[int]:
    return [1] + [0] * cap


def series_mul_cyclotomic(coeffs: list[int], i: int) -> list[int]:
    """Multiply a truncated series by (1 - t^i)."""
    out = coeffs[:]
    for d in range(len(out) - 1, i - 1, -1):
        out[d] -= coeffs[d - i]
    return out


def series_div_cyclotomic(coeffs: list[int], i: int) -> list[int]:
    """Divide a truncated series by (1 - t^i)."""
    out = coeffs[:]
    for d in range(i, len(out)):
        out[d] += out[d - i]
    return out


def series_expand(factors, cap: int) -> list[int]:
    """Coefficients through degree ``cap`` of prod_i (1 - t^i)^(-e_i).

    ``factors`` is an iterable of (degree i >= 1, exponent e_i); positive
    exponents are denominator factors, negative ones polynomial numerators.
    """
    if cap < 0:
        raise ValueError("cap must be >= 0")
    out = series_one(cap)
    for i, e in factors:
        if i < 1:
            raise ValueError("factor degree must be >= 1")
        for _ in range(abs(e)):
            out = series_div_cyclotomic(out, i) if e > 0 else \
                series_mul_cyclotomic(out, i)
    return out
