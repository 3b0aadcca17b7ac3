"""Incremental echelon bases ("spans") over exact scalars.

A span accumulates vectors and maintains an echelon basis so that rank,
membership and residual (the canonical normal form modulo the span) stay
cheap.  The backends share one protocol:

* ``SparseSpan``  - sparse dict rows with exact field arithmetic; pivot =
  smallest column, rows monic, echelon but not back-eliminated (this keeps
  structured inputs sparse; residuals are canonical regardless).
* ``Bit2Span``    - F_2 rows packed into Python ints; XOR is the row op.
* ``FpSpan``      - dense int64 numpy rows mod p driven by the elimination
  kernel (compiled when available, pure fallback otherwise); these rows are
  kept fully reduced so the kernel reduces in a single pass.
* ``IntQSpan``    - rational spans of integer vectors without fractions
  (cross-multiplying elimination, primitive stored rows).
* ``ZLattice``    - integer row lattices with gcd pivoting and exact solve.

Vectors are sparse mappings ``{column: coefficient}``; ``Bit2Span`` also
accepts preassembled bit masks.  Columns at or beyond ``main_cols`` are never
chosen as pivots, which is how nullspace computations track combinations
through augmented columns.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

from . import kernels
from .fields import GF, QQ


class SparseSpan:
    def __init__(self, field, ncols: int, main_cols: int | None = None):
        self.field = field
        self.ncols = ncols
        self.main_cols = ncols if main_cols is None else main_cols
        self.rows: dict[int, dict] = {}  # pivot column -> monic sparse row

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self):
        return sorted(self.rows)

    def residual(self, vec) -> dict:
        """Canonical normal form modulo the span: eliminate pivot columns in
        ascending order (rows stay in echelon form, not fully reduced, so
        the loop cascades but each step moves the frontier right)."""
        f = self.field
        v = {c: f.of(x) for c, x in vec.items() if f.of(x) != f.zero}
        while True:
            hit = [c for c in v if c in self.rows]
            if not hit:
                return v
            piv = min(hit)
            coeff = v[piv]
            for c, x in self.rows[piv].items():
                nv = f.sub(v.get(c, f.zero), f.mul(coeff, x))
                if nv == f.zero:
                    v.pop(c, None)
                else:
                    v[c] = nv

    def insert(self, vec) -> bool:
        f = self.field
        v = self.residual(vec)
        main = {c for c in v if c < self.main_cols}
        if not main:
            return False
        piv = min(main)
        inv = f.inv(v[piv])
        self.rows[piv] = {c: f.mul(inv, x) for c, x in v.items()}
        return True

    def insert_aug(self, vec):
        """Insert; if the main part reduces to zero return the residual
        (its augmented columns carry the nullspace combination)."""
        f = self.field
        v = self.residual(vec)
        if any(c < self.main_cols for c in v):
            self.insert(v)
            return None
        return v

    def contains(self, vec) -> bool:
        return not self.residual(vec)

    def row_list(self):
        return [dict(self.rows[c]) for c in sorted(self.rows)]


class Bit2Span:
    """F_2 span; a row is an int whose bit c is the coefficient of column c.
    Rows are kept in echelon form keyed by their lowest set bit."""

    def __init__(self, ncols: int, main_cols: int | None = None):
        self.ncols = ncols
        self.main_cols = ncols if main_cols is None else main_cols
        self._main_mask = (1 << self.main_cols) - 1
        self._piv_mask = 0
        self.rows: dict[int, int] = {}  # lsb mask -> row bits

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self):
        return [m.bit_length() - 1 for m in sorted(self.rows)]

    @staticmethod
    def to_bits(vec) -> int:
        if isinstance(vec, int):
            return vec
        b = 0
        for c, x in vec.items():
            if int(x) % 2:
                b |= 1 << c
        return b

    def _reduce(self, b: int) -> int:
        # eliminate the lowest pivot bit present; XOR only introduces
        # higher bits, so the frontier moves left to right
        while True:
            cand = b & self._piv_mask
            if not cand:
                return b
            b ^= self.rows[cand & -cand]

    @staticmethod
    def _bits_to_dict(bits: int) -> dict:
        out, c = {}, 0
        while bits:
            if bits & 1:
                out[c] = 1
            bits >>= 1
            c += 1
        return out

    def _store(self, b: int):
        lsb = b & -b
        self.rows[lsb] = b
        self._piv_mask |= lsb

    def residual(self, vec) -> dict:
        return self._bits_to_dict(self._reduce(self.to_bits(vec)))

    def insert(self, vec) -> bool:
        b = self._reduce(self.to_bits(vec))
        if not (b & self._main_mask):
            return False
        self._store(b)
        return True

    def insert_aug(self, vec):
        b = self._reduce(self.to_bits(vec))
        if b & self._main_mask:
            self._store(b)
            return None
        return self._bits_to_dict(b)

    def contains(self, vec) -> bool:
        return self._reduce(self.to_bits(vec)) == 0

    def row_list(self):
        return [self._bits_to_dict(self.rows[m]) for m in sorted(self.rows)]


class FpSpan:
    def __init__(self, p: int, ncols: int, main_cols: int | None = None,
                 pure: bool = False):
        self.p = p
        self.field = GF(p)
        self.ncols = ncols
        self.main_cols = ncols if main_cols is None else main_cols
        self._impl = kernels.get_impl(pure=pure)
        cap = min(64, ncols + 1)
        self.basis = np.zeros((cap, ncols), dtype=np.int64)
        self.pivs = np.zeros(cap, dtype=np.int64)
        self.nrows = 0

    @property
    def rank(self) -> int:
        return self.nrows

    def pivots(self):
        return [int(c) for c in self.pivs[: self.nrows]]

    def _as_row(self, vec) -> np.ndarray:
        if isinstance(vec, np.ndarray):
            return vec.astype(np.int64, copy=True) % self.p
        row = np.zeros(self.ncols, dtype=np.int64)
        for c, x in vec.items():
            row[c] = int(x) % self.p
        return row

    def _grow(self):
        if self.nrows + 1 >= self.basis.shape[0]:
            cap = min(2 * self.basis.shape[0], self.ncols + 1)
            nb = np.zeros((cap, self.ncols), dtype=np.int64)
            nb[: self.nrows] = self.basis[: self.nrows]
            np_ = np.zeros(cap, dtype=np.int64)
            np_[: self.nrows] = self.pivs[: self.nrows]
            self.basis, self.pivs = nb, np_

    def insert(self, vec) -> bool:
        row = self._as_row(vec)
        piv = self._impl.reduce_row(self.basis, self.pivs, self.nrows, row, self.p)
        if piv < 0 or piv >= self.main_cols:
            return False
        self._grow()
        self.nrows = self._impl.insert_row(self.basis, self.pivs, self.nrows,
                                           row, piv, self.p)
        return True

    def insert_aug(self, vec):
        row = self._as_row(vec)
        piv = self._impl.reduce_row(self.basis, self.pivs, self.nrows, row, self.p)
        if 0 <= piv < self.main_cols:
            self._grow()
            self.nrows = self._impl.insert_row(self.basis, self.pivs, self.nrows,
                                               row, piv, self.p)
            return None
        return {int(c): int(row[c]) for c in row.nonzero()[0]}

    def residual(self, vec) -> dict:
        row = self._as_row(vec)
        self._impl.reduce_row(self.basis, self.pivs, self.nrows, row, self.p)
        return {int(c): int(row[c]) for c in row.nonzero()[0]}

    def contains(self, vec) -> bool:
        return not self.residual(vec)

    def row_list(self):
        out = []
        for i in range(self.nrows):
            r = self.basis[i]
            out.append({int(c): int(r[c]) for c in r.nonzero()[0]})
        return out


class IntQSpan:
    """Rational span of integer vectors, kept fraction-free.

    Rows are primitive integer sparse dicts in echelon form; elimination
    cross-multiplies, so only machine integers (and gcds) appear.  The exact
    rational residual is recovered at the end by dividing out the
    accumulated multiplier."""

    def __init__(self, ncols: int, main_cols: int | None = None):
        self.ncols = ncols
        self.main_cols = ncols if main_cols is None else main_cols
        self.rows: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self):
        return sorted(self.rows)

    @staticmethod
    def _to_int_vec(vec) -> tuple[dict, int]:
        """Clear denominators; returns (integer vector, denominator)."""
        den = 1
        for x in vec.values():
            d = getattr(x, "denominator", 1)
            den = den * d // gcd(den, d)
        out = {}
        for c, x in vec.items():
            v = int(x * den)
            if v:
                out[c] = v
        return out, den

    def _reduce(self, vec) -> tuple[dict, int]:
        v, den = self._to_int_vec(vec)
        mult = 1
        while True:
            hit = [c for c in v if c in self.rows]
            if not hit:
                return v, mult * den
            piv = min(hit)
            row = self.rows[piv]
            a, b = row[piv], v[piv]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            mult *= fa
            nv = {}
            for c in set(v) | set(row):
                x = fa * v.get(c, 0) - fb * row.get(c, 0)
                if x:
                    nv[c] = x
            v = nv

    def insert(self, vec) -> bool:
        v, _ = self._reduce(vec)
        main = [c for c in v if c < self.main_cols]
        if not main:
            return False
        g = 0
        for x in v.values():
            g = gcd(g, x)
        if v[min(main)] < 0:
            g = -g
        self.rows[min(main)] = {c: x // g for c, x in v.items()}
        return True

    def insert_aug(self, vec):
        v, mult = self._reduce(vec)
        if any(c < self.main_cols for c in v):
            self.insert(v)
            return None
        return {c: Fraction(x, mult) for c, x in v.items()}

    def residual(self, vec) -> dict:
        v, mult = self._reduce(vec)
        return {c: Fraction(x, mult) for c, x in v.items()}

    def contains(self, vec) -> bool:
        return not self._reduce(vec)[0]

    def row_list(self):
        return [dict(self.rows[c]) for c in sorted(self.rows)]


def make_span(field, ncols: int, main_cols: int | None = None):
    """Pick the best backend for a field: bitsets for F_2, the dense kernel
    for other primes, sparse exact rows for the rationals."""
    if field is QQ or not getattr(field, "is_field", False):
        if field is not QQ:
            raise ValueError("spans require a field (QQ or GF(p))")
        return SparseSpan(QQ, ncols, main_cols)
    if field.char == 2:
        return Bit2Span(ncols, main_cols)
    return FpSpan(field.char, ncols, main_cols)


def make_ideal_span(field, ncols: int):
    """Span backend for bulk ideal work: fraction-free over the rationals,
    otherwise as make_span."""
    if field is QQ:
        return IntQSpan(ncols)
    return make_span(field, ncols)


def spans_equal(a, b) -> bool:
    """Exact subspace equality: equal ranks plus one-sided containment."""
    if a.rank != b.rank:
        return False
    return all(b.contains(row) for row in a.row_list())


def nullspace(rows, ncols: int, field):
    """Combinations c with sum_i c_i rows_i = 0.

    ``rows`` is a list of sparse vectors of width ``ncols``.  Returns a list of
    sparse combination vectors (length = len(rows) coordinates), one per
    nullspace basis element.
    """
    span = make_span(field, ncols + len(rows), main_cols=ncols)
    combos = []
    for i, r in enumerate(rows):
        if isinstance(span, Bit2Span):
            v = Bit2Span.to_bits(r) | (1 << (ncols + i))
        else:
            v = dict(r)
            v[ncols + i] = 1
        res = span.insert_aug(v)
        if res is not None:
            combos.append({c - ncols: x for c, x in res.items()})
    return combos


class ZLattice:
    """Integer row-echelon lattice basis with gcd pivoting.

    Rows are dense integer lists; the leading entry of each pivot row is
    positive and earlier columns are zero.  ``express`` solves exactly over
    the integers, so sublattice quotients can be presented by an integer
    coefficient matrix.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, list[int]] = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self):
        return sorted(self.rows)

    @staticmethod
    def _leading(v):
        for c, x in enumerate(v):
            if x:
                return c
        return -1

    def insert(self, vec) -> bool:
        v = [int(x) for x in vec]
        if len(v) != self.ncols:
            raise ValueError("length mismatch")
        changed = False
        while True:
            c = self._leading(v)
            if c < 0:
                return changed
            row = self.rows.get(c)
            if row is None:
                if v[c] < 0:
                    v = [-x for x in v]
                self.rows[c] = v
                return True
            a, b = row[c], v[c]
            if b % a == 0:
                q = b // a
                v = [x - q * y for x, y in zip(v, row)]
            else:
                g, s, t = _xgcd(a, b)
                new_row = [s * x + t * y for x, y in zip(row, v)]
                v = [(a // g) * y - (b // g) * x for x, y in zip(row, v)]
                self.rows[c] = new_row
                changed = True

    def extend(self, vecs) -> bool:
        changed = False
        for v in vecs:
            changed |= self.insert(v)
        return changed

    def row_list(self):
        return [list(self.rows[c]) for c in sorted(self.rows)]

    def express(self, vec):
        """Integer coordinates of ``vec`` in this basis, or None."""
        v = [int(x) for x in vec]
        coeffs = {}
        for c in sorted(self.rows):
            if v[c]:
                row = self.rows[c]
                if v[c] % row[c]:
                    return None
                q = v[c] // row[c]
                coeffs[c] = q
                v = [x - q * y for x, y in zip(v, row)]
        if any(v):
            return None
        order = sorted(self.rows)
        return [coeffs.get(c, 0) for c in order]

    def contains(self, vec) -> bool:
        return self.express(vec) is not None


def _xgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t
