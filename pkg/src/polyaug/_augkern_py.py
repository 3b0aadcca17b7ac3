"""Pure-Python fallback for the mod-p elimination kernel.

Same contract as the compiled ``_augkern`` module, operating on numpy arrays
via plain Python loops over row slices.  Correct but noticeably slower; the
benchmark in benchmarks/bench_kernel.py compares the two.
"""

from __future__ import annotations


def reduce_row(basis, pivs, nrows, row, p):
    for i in range(nrows):
        c = int(row[pivs[i]]) % p
        if c != 0:
            row -= c * basis[i]
            row %= p
    nz = row.nonzero()[0]
    return int(nz[0]) if len(nz) else -1


def insert_row(basis, pivs, nrows, row, pivot, p):
    inv = pow(int(row[pivot]) % p, p - 2, p)
    row *= inv
    row %= p
    for i in range(nrows):
        c = int(basis[i, pivot]) % p
        if c != 0:
            basis[i] -= c * row
            basis[i] %= p
    pos = nrows
    for i in range(nrows):
        if pivs[i] > pivot:
            pos = i
            break
    if pos < nrows:
        basis[pos + 1:nrows + 1] = basis[pos:nrows].copy()
        pivs[pos + 1:nrows + 1] = pivs[pos:nrows].copy()
    basis[pos] = row
    pivs[pos] = pivot
    return nrows + 1
